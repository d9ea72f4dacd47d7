#include "mgeo/regions.hpp"

#include <algorithm>

namespace mgeo {

MembershipSpec MembershipSpec::all() { return MembershipSpec{}; }

MembershipSpec MembershipSpec::ball(const Vec& center, double radius, bool open) {
    MembershipSpec s;
    s.kind = Kind::Ball;
    s.center = center;
    s.radius = radius;
    s.open = open;
    return s;
}

MembershipSpec MembershipSpec::box(const Vec& lo, const Vec& hi, bool open) {
    MembershipSpec s;
    s.kind = Kind::Box;
    s.lo = lo;
    s.hi = hi;
    s.open = open;
    return s;
}

MembershipSpec MembershipSpec::segment_tube(const Vec& a, const Vec& b, double tol) {
    MembershipSpec s;
    s.kind = Kind::SegmentTube;
    s.seg_a = a;
    s.seg_b = b;
    s.tol = tol;
    return s;
}

MembershipSpec MembershipSpec::union_of(std::vector<MembershipSpec> parts) {
    MembershipSpec s;
    s.kind = Kind::Union;
    s.parts = std::move(parts);
    return s;
}

bool MembershipSpec::contains(const Space& space, const Vec& x) const {
    switch (kind) {
        case Kind::All:
            return point_on_chart(space, x);
        case Kind::Ball: {
            const double d = distance(space, x, center);
            return open ? d < radius : d <= radius;
        }
        case Kind::Box: {
            for (int i = 0; i < x.size(); ++i) {
                if (open ? (x[i] <= lo[i] || x[i] >= hi[i])
                         : (x[i] < lo[i] || x[i] > hi[i]))
                    return false;
            }
            return true;
        }
        case Kind::SegmentTube: {
            // coarse scan then ternary refinement of t -> d(x, seg(t));
            // the profile is convex near its minimum on every kind
            const Segment seg = make_segment(space, seg_a, seg_b);
            constexpr int n = 64;
            double best = std::numeric_limits<double>::infinity();
            int best_i = 0;
            for (int i = 0; i <= n; ++i) {
                const double d = distance(space, x, seg.eval(static_cast<double>(i) / n));
                if (d < best) {
                    best = d;
                    best_i = i;
                }
            }
            double lo = std::max(0.0, (best_i - 1.0) / n);
            double hi = std::min(1.0, (best_i + 1.0) / n);
            for (int it = 0; it < 100; ++it) {
                const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                if (distance(space, x, seg.eval(m1)) <= distance(space, x, seg.eval(m2)))
                    hi = m2;
                else
                    lo = m1;
            }
            best = std::min(best, distance(space, x, seg.eval(0.5 * (lo + hi))));
            return best <= tol;
        }
        case Kind::Union:
            return std::any_of(parts.begin(), parts.end(), [&](const auto& p) {
                return p.contains(space, x);
            });
    }
    return false;
}

bool Region::near_sample(const Vec& x, double tol) const {
    return std::any_of(samples.begin(), samples.end(), [&](const Vec& s) {
        return distance(space, x, s) <= tol;
    });
}

Region make_region(const Space& space, std::vector<Vec> samples, MembershipSpec spec,
                   std::vector<Vec> star_centers, bool convex, bool star_shaped) {
    Region r;
    r.space = space;
    r.samples = std::move(samples);
    r.membership_spec = spec;
    r.membership = [space, spec](const Vec& x) { return spec.contains(space, x); };
    r.star_centers = std::move(star_centers);
    r.convex = convex;
    r.star_shaped = star_shaped;
    return r;
}

namespace {

void check_star_property(const Region& region, const std::vector<Vec>& centers,
                         int grid) {
    const double D = region.space.uniqueness_diameter();
    for (const Vec& c : centers) {
        for (const Vec& x : region.samples) {
            if (distance(region.space, x, c) >= D) continue;
            for (int i = 0; i <= grid; ++i) {
                const double t = static_cast<double>(i) / grid;
                const Vec p = geodesic_point(region.space, x, c, t);
                if (!region.contains(p))
                    throw StarViolation("segment toward a star center leaves the region");
            }
        }
    }
}

}  // namespace

void validate_region(const Region& region, int grid) {
    for (const Vec& s : region.samples) {
        if (!region.contains(s))
            throw Error("region sample fails its own membership predicate");
    }
    if (region.star_shaped) check_star_property(region, region.star_centers, grid);
    if (region.convex) check_star_property(region, region.samples, grid);
}

double dist_to_region(const Vec& x, const Region& E) {
    if (E.samples.empty()) throw EmptyRegion("region has no samples");
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& s : E.samples) best = std::min(best, distance(E.space, x, s));
    return best;
}

Vec annulus_interior_witness(const Region& E, double r, const Vec& x, double eps) {
    if (!(eps > 0.0) || !(eps < r)) throw Error("need 0 < eps < r");
    const double d = dist_to_region(x, E);
    if (std::abs(d - r) > kTolMetric)
        throw Error("x must lie at distance r from E");
    for (const Vec& x0 : E.samples) {
        const double rho = distance(E.space, x, x0);
        if (rho >= r && rho < r + eps / 2.0) {
            const Vec w = geodesic_point(E.space, x, x0, eps / rho);
            if (dist_to_region(w, E) < r) return w;
        }
    }
    throw NoWitness("no sample x0 with r <= rho(x, x0) < r + eps/2 works");
}

bool segment_in_set(const Segment& seg, const std::function<bool(const Vec&)>& pred,
                    int grid) {
    for (int i = 0; i <= grid; ++i) {
        if (!pred(seg.eval(static_cast<double>(i) / grid))) return false;
    }
    return true;
}

SegmentFamilyG enumerate_family_G(const Region& C_X, const Region& U) {
    if (!(C_X.space == U.space)) throw SpaceMismatch("C_X and U live in different spaces");
    const Space& space = C_X.space;
    const double D = space.uniqueness_diameter();

    auto in_both = [&](const Vec& p) { return C_X.contains(p) && U.contains(p); };

    SegmentFamilyG family;
    for (const Vec& x0 : C_X.star_centers) {
        for (const Vec& w0 : C_X.samples) {
            if (!U.contains(w0)) continue;
            const double rho = distance(space, w0, x0);
            if (rho >= D || rho < kTolStructural) continue;

            // largest prefix of [w0, x0] staying inside U (63 interior probes)
            constexpr int probes = 64;
            double t_max = 0.0;
            for (int i = 1; i <= probes; ++i) {
                const double t = static_cast<double>(i) / probes;
                if (!U.contains(geodesic_point(space, w0, x0, t))) break;
                t_max = t;
            }
            if (t_max <= 0.0) continue;

            for (const double c : {0.25, 0.5, 0.75}) {
                const double t1 = t_max * c;
                if (t1 <= 0.0 || t1 >= 1.0) continue;
                const Vec w1 = geodesic_point(space, w0, x0, t1);
                if (distance(space, w0, w1) < kTolStructural) continue;
                Segment seg = make_segment(space, w0, w1);
                if (!segment_in_set(seg, in_both)) continue;
                family.segments.push_back({std::move(seg), x0});
            }
        }
    }
    if (family.segments.empty())
        throw EmptyFamily("no segment of the family passed the membership checks");
    return family;
}

}  // namespace mgeo
