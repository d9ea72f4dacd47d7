#pragma once

#include "mgeo/mappings.hpp"

namespace mgeo::testing {

inline Vec tv1(double a) {
    Vec v(1);
    v << a;
    return v;
}

inline Vec tv2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

inline Vec tv3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

inline Region line_region(double lo, double hi, int n, bool closed_box = true) {
    const Space e1 = Space::euclidean(1);
    std::vector<Vec> samples;
    for (int i = 0; i < n; ++i) samples.push_back(tv1(lo + (hi - lo) * i / (n - 1)));
    return make_region(e1, samples, MembershipSpec::box(tv1(lo), tv1(hi), !closed_box),
                       {tv1(lo), tv1(hi)}, true, true);
}

/// Arm tips of the two-arm star: e = (1, 0) and u on the unit circle with
/// ||e - u|| = 1/3.
inline std::pair<Vec, Vec> star_arms() {
    const Vec e = tv2(1.0, 0.0);
    const double u1 = 17.0 / 18.0;
    return {e, tv2(u1, std::sqrt(1.0 - u1 * u1))};
}

/// X = [0, e] cup [0, u], sampled with per_arm points on each arm
/// (the origin listed once), star-shaped about the origin.
inline Region two_arm_star(int per_arm) {
    const Space e2 = Space::euclidean(2);
    const auto [e, u] = star_arms();
    std::vector<Vec> samples;
    for (int i = 0; i < per_arm; ++i)
        samples.push_back(static_cast<double>(i) / (per_arm - 1) * e);
    for (int i = 0; i < per_arm; ++i)
        samples.push_back(static_cast<double>(i + 1) / per_arm * u);
    MembershipSpec spec = MembershipSpec::union_of(
        {MembershipSpec::segment_tube(tv2(0, 0), e, 1e-9),
         MembershipSpec::segment_tube(tv2(0, 0), u, 1e-9)});
    return make_region(e2, samples, spec, {tv2(0, 0)}, false, true);
}

/// The piecewise mapping on the two-arm star: zero on the u-arm,
/// z -> (max(z1 - 1/3, 0) / 2, 0) on the e-arm.
inline std::function<Vec(const Vec&)> star_mapping_formula() {
    return [](const Vec& z) -> Vec {
        Vec out(2);
        if (z[1] > 1e-12) {
            out << 0.0, 0.0;
        } else {
            out << 0.5 * std::max(z[0] - 1.0 / 3.0, 0.0), 0.0;
        }
        return out;
    };
}

}  // namespace mgeo::testing
