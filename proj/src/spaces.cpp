#include "mgeo/spaces.hpp"

#include <algorithm>

namespace mgeo {

namespace {

// Minkowski form on the (s1, s2, t) chart, signature (+, +, -).
double mink(const Vec& u, const Vec& v) {
    return u[0] * v[0] + u[1] * v[1] - u[2] * v[2];
}

double clamp1(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

const char* to_string(SpaceKind kind) noexcept {
    switch (kind) {
        case SpaceKind::Euclidean: return "euclidean";
        case SpaceKind::SupNorm: return "sup_norm";
        case SpaceKind::Sphere: return "sphere";
        case SpaceKind::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

Space Space::sphere(double kappa) {
    if (!(kappa > 0.0)) throw ChartViolation("sphere requires kappa > 0");
    return {SpaceKind::Sphere, 3, kappa};
}

Space Space::hyperbolic(double kappa) {
    if (!(kappa < 0.0)) throw ChartViolation("hyperbolic requires kappa < 0");
    return {SpaceKind::Hyperbolic, 3, kappa};
}

double Space::radius() const {
    switch (kind) {
        case SpaceKind::Sphere: return 1.0 / std::sqrt(kappa);
        case SpaceKind::Hyperbolic: return 1.0 / std::sqrt(-kappa);
        default: return 0.0;
    }
}

Space model_space(double kappa) {
    if (kappa > 0.0) return Space::sphere(kappa);
    if (kappa < 0.0) return Space::hyperbolic(kappa);
    return Space::euclidean(2);
}

bool point_on_chart(const Space& space, const Vec& x, double tol) {
    if (x.size() != space.dimension) return false;
    if (!x.allFinite()) return false;
    switch (space.kind) {
        case SpaceKind::Euclidean:
        case SpaceKind::SupNorm:
            return true;
        case SpaceKind::Sphere: {
            const double R = space.radius();
            return std::abs(x.norm() - R) <= tol * std::max(1.0, R);
        }
        case SpaceKind::Hyperbolic: {
            const double R = space.radius();
            return x[2] > 0.0 &&
                   std::abs(mink(x, x) + R * R) <= tol * std::max(1.0, R * R);
        }
    }
    return false;
}

void require_on_chart(const Space& space, const Vec& x) {
    if (!point_on_chart(space, x))
        throw ChartViolation("point violates the " +
                             std::string(to_string(space.kind)) + " chart");
}

Vec project_to_chart(const Space& space, const Vec& x) {
    switch (space.kind) {
        case SpaceKind::Euclidean:
        case SpaceKind::SupNorm:
            return x;
        case SpaceKind::Sphere:
            return x * (space.radius() / x.norm());
        case SpaceKind::Hyperbolic: {
            Vec y = x;
            const double R = space.radius();
            y[2] = std::sqrt(R * R + y[0] * y[0] + y[1] * y[1]);
            return y;
        }
    }
    return x;
}

double distance(const Space& space, const Vec& x, const Vec& y) {
    require_on_chart(space, x);
    require_on_chart(space, y);
    switch (space.kind) {
        case SpaceKind::Euclidean:
            return (x - y).norm();
        case SpaceKind::SupNorm:
            return (x - y).lpNorm<Eigen::Infinity>();
        case SpaceKind::Sphere: {
            const double R = space.radius();
            const Eigen::Vector3d u = x.head<3>() / R, v = y.head<3>() / R;
            // atan2 form is stable near both coincident and antipodal pairs
            const double angle = std::atan2(u.cross(v).norm(), u.dot(v));
            return R * angle;
        }
        case SpaceKind::Hyperbolic: {
            const double R = space.radius();
            // acosh(1 + u) = asinh(sqrt(u(u+2))) with u from the difference
            // vector, stable for nearby points
            const Vec d = x - y;
            const double u = std::max(0.0, mink(d, d) / (2.0 * R * R));
            return R * std::asinh(std::sqrt(u * (u + 2.0)));
        }
    }
    return 0.0;
}

Vec geodesic_point(const Space& space, const Vec& x, const Vec& y, double t) {
    if (t < -kTolStructural || t > 1.0 + kTolStructural)
        throw Error("geodesic parameter outside [0,1]");
    t = std::clamp(t, 0.0, 1.0);
    const double rho = distance(space, x, y);
    const double D = space.uniqueness_diameter();
    if (rho >= D - kTolStructural)
        throw SegmentNotUnique("endpoints at or beyond the uniqueness diameter");
    if (t == 0.0) return x;
    if (t == 1.0) return y;
    switch (space.kind) {
        case SpaceKind::Euclidean:
        case SpaceKind::SupNorm:
            return (1.0 - t) * x + t * y;
        case SpaceKind::Sphere: {
            const double R = space.radius();
            const double omega = rho / R;
            if (omega < 1e-14) return x;
            const double s = std::sin(omega);
            Vec z = (std::sin((1.0 - t) * omega) * x + std::sin(t * omega) * y) / s;
            return project_to_chart(space, z);
        }
        case SpaceKind::Hyperbolic: {
            const double R = space.radius();
            const double theta = rho / R;
            if (theta < 1e-14) return x;
            const double s = std::sinh(theta);
            Vec z = (std::sinh((1.0 - t) * theta) * x + std::sinh(t * theta) * y) / s;
            return project_to_chart(space, z);
        }
    }
    return x;
}

Segment make_segment(const Space& space, const Vec& a, const Vec& b) {
    require_on_chart(space, a);
    require_on_chart(space, b);
    const double len = distance(space, a, b);
    if (len >= space.uniqueness_diameter() - kTolStructural)
        throw SegmentNotUnique("segment endpoints beyond the uniqueness diameter");
    return Segment{space, a, b, len};
}

double spherical_angle(double a, double b, double c) {
    const double sasb = std::sin(a) * std::sin(b);
    if (sasb < 1e-14) throw DegenerateTriangle("sin a * sin b below 1e-14");
    const double cosC = (std::cos(c) - std::cos(a) * std::cos(b)) / sasb;
    return std::acos(clamp1(cosC));
}

double spherical_angle_haversine(double a, double b, double c) {
    const double sasb = std::sin(a) * std::sin(b);
    if (sasb < 1e-14) throw DegenerateTriangle("sin a * sin b below 1e-14");
    const double havC = (haversine(c) - haversine(a - b)) / sasb;
    return 2.0 * std::asin(clamp1(std::sqrt(std::max(0.0, havC))));
}

ComparisonTriangle build_comparison_triangle(const Space& space, const Vec& x1,
                                             const Vec& x2, const Vec& x3,
                                             double kappa) {
    const std::array<Vec, 3> src = {x1, x2, x3};
    std::array<double, 3> len{};
    for (int k = 0; k < 3; ++k)
        len[k] = distance(space, src[k], src[(k + 1) % 3]);

    for (int k = 0; k < 3; ++k) {
        if (len[k] > len[(k + 1) % 3] + len[(k + 2) % 3] + kTolStructural)
            throw SideInequalityViolated("side lengths violate the triangle inequality");
    }

    const Space model = model_space(kappa);
    if (kappa > 0.0) {
        const double D = M_PI / std::sqrt(kappa);
        if (len[0] + len[1] + len[2] >= 2.0 * D)
            throw PerimeterTooLarge("perimeter must be smaller than 2 D_kappa");
    }

    std::array<Vec, 3> mv;
    const double l01 = len[0], l12 = len[1], l20 = len[2];
    if (kappa == 0.0) {
        mv[0] = Eigen::Vector2d(0.0, 0.0);
        mv[1] = Eigen::Vector2d(l01, 0.0);
        if (l01 < kTolStructural) {
            mv[2] = Eigen::Vector2d(l20, 0.0);
        } else {
            const double px = (l01 * l01 + l20 * l20 - l12 * l12) / (2.0 * l01);
            const double py = std::sqrt(std::max(0.0, l20 * l20 - px * px));
            mv[2] = Eigen::Vector2d(px, py);
        }
    } else if (kappa > 0.0) {
        const double R = model.radius();
        const double a01 = l01 / R, a12 = l12 / R, a20 = l20 / R;
        mv[0] = R * Eigen::Vector3d(0.0, 0.0, 1.0);
        mv[1] = R * Eigen::Vector3d(std::sin(a01), 0.0, std::cos(a01));
        if (std::sin(a01) * std::sin(a20) < 1e-14) {
            mv[2] = R * Eigen::Vector3d(std::sin(a20), 0.0, std::cos(a20));
        } else {
            const double A = spherical_angle(a01, a20, a12);
            mv[2] = R * Eigen::Vector3d(std::sin(a20) * std::cos(A),
                                        std::sin(a20) * std::sin(A), std::cos(a20));
        }
    } else {
        const double R = model.radius();
        const double a01 = l01 / R, a12 = l12 / R, a20 = l20 / R;
        mv[0] = R * Eigen::Vector3d(0.0, 0.0, 1.0);
        mv[1] = R * Eigen::Vector3d(std::sinh(a01), 0.0, std::cosh(a01));
        if (std::sinh(a01) * std::sinh(a20) < 1e-14) {
            mv[2] = R * Eigen::Vector3d(std::sinh(a20), 0.0, std::cosh(a20));
        } else {
            const double cosA = (std::cosh(a01) * std::cosh(a20) - std::cosh(a12)) /
                                (std::sinh(a01) * std::sinh(a20));
            const double A = std::acos(clamp1(cosA));
            mv[2] = R * Eigen::Vector3d(std::sinh(a20) * std::cos(A),
                                        std::sinh(a20) * std::sin(A), std::cosh(a20));
        }
        for (auto& v : mv) v = project_to_chart(model, v);
    }

    ComparisonTriangle tri{space, src, model, mv, len};
    for (int k = 0; k < 3; ++k) {
        const double got = distance(model, mv[k], mv[(k + 1) % 3]);
        if (std::abs(got - len[k]) > kTolMetric * std::max(1.0, len[k]))
            throw Error("comparison triangle failed to realize a side length");
    }
    return tri;
}

CatCheckReport check_cat_inequality(const Space& space,
                                    const std::array<Vec, 3>& vertices,
                                    double kappa, int sample_count) {
    const ComparisonTriangle tri =
        build_comparison_triangle(space, vertices[0], vertices[1], vertices[2], kappa);

    // grid resolution per side pair; six unordered side combinations
    const int m = std::max(2, static_cast<int>(std::ceil(std::sqrt(sample_count / 6.0))));
    CatCheckReport report;
    report.max_violation = -std::numeric_limits<double>::infinity();

    auto side_point = [&](int k, double s, bool model) -> Vec {
        const Space& sp = model ? tri.model : tri.source_space;
        const Vec& p = model ? tri.model_vertices[k] : tri.source_vertices[k];
        const Vec& q = model ? tri.model_vertices[(k + 1) % 3]
                             : tri.source_vertices[(k + 1) % 3];
        if (distance(sp, p, q) < kTolStructural) return p;
        return geodesic_point(sp, p, q, s);
    };

    for (int k1 = 0; k1 < 3; ++k1) {
        for (int k2 = k1; k2 < 3; ++k2) {
            for (int i = 0; i < m; ++i) {
                const double s = static_cast<double>(i) / (m - 1);
                const Vec px = side_point(k1, s, false);
                const Vec pm = side_point(k1, s, true);
                for (int j = 0; j < m; ++j) {
                    const double t = static_cast<double>(j) / (m - 1);
                    const Vec qx = side_point(k2, t, false);
                    const Vec qm = side_point(k2, t, true);
                    const double v = distance(space, px, qx) -
                                     distance(tri.model, pm, qm);
                    report.max_violation = std::max(report.max_violation, v);
                    ++report.pairs_checked;
                }
            }
        }
    }
    return report;
}

Vec tangent_direction(const Space& space, const Vec& x, double angle) {
    switch (space.kind) {
        case SpaceKind::Euclidean:
        case SpaceKind::SupNorm: {
            Vec v = Vec::Zero(space.dimension);
            v[0] = std::cos(angle);
            if (space.dimension > 1) v[1] = std::sin(angle);
            return v;
        }
        case SpaceKind::Sphere: {
            const Eigen::Vector3d n = x.head<3>().normalized();
            // orthonormal tangent basis at x
            Eigen::Vector3d ref = std::abs(n[0]) < 0.9 ? Eigen::Vector3d::UnitX()
                                                       : Eigen::Vector3d::UnitY();
            const Eigen::Vector3d e1 = (ref - ref.dot(n) * n).normalized();
            const Eigen::Vector3d e2 = n.cross(e1);
            Vec v(3);
            v = std::cos(angle) * e1 + std::sin(angle) * e2;
            return v;
        }
        case SpaceKind::Hyperbolic: {
            // Minkowski-orthogonal basis at x: candidates from the spatial
            // axes, completed by the sheet equation and Gram-Schmidt
            const double R = space.radius();
            Vec e1(3), e2(3);
            e1 << x[2] / R, 0.0, x[0] / R;           // mink(e1, x) = 0
            const double n1 = std::sqrt(std::max(1e-300, mink(e1, e1)));
            e1 /= n1;
            e2 << 0.0, 1.0, 0.0;
            Vec tmp = e2;
            tmp -= mink(e2, e1) * e1;                // Minkowski Gram-Schmidt
            tmp += mink(e2, x / R) * (x / R);        // sign: mink(x,x) = -R^2
            const double n2 = std::sqrt(std::max(1e-300, mink(tmp, tmp)));
            e2 = tmp / n2;
            return std::cos(angle) * e1 + std::sin(angle) * e2;
        }
    }
    return Vec::Zero(space.dimension);
}

Vec exp_map(const Space& space, const Vec& center, const Vec& unit_dir, double dist) {
    switch (space.kind) {
        case SpaceKind::Euclidean:
        case SpaceKind::SupNorm:
            return center + dist * unit_dir;
        case SpaceKind::Sphere: {
            const double R = space.radius();
            const double a = dist / R;
            Vec z = std::cos(a) * center + R * std::sin(a) * unit_dir;
            return project_to_chart(space, z);
        }
        case SpaceKind::Hyperbolic: {
            const double R = space.radius();
            const double a = dist / R;
            Vec z = std::cosh(a) * center + R * std::sinh(a) * unit_dir;
            return project_to_chart(space, z);
        }
    }
    return center;
}

Vec random_point(const Space& space, Rng& rng, double box) {
    switch (space.kind) {
        case SpaceKind::Euclidean:
        case SpaceKind::SupNorm: {
            Vec v(space.dimension);
            for (int i = 0; i < space.dimension; ++i) v[i] = rng.uniform(-box, box);
            return v;
        }
        case SpaceKind::Sphere:
            return rng.unit_vector(3) * space.radius();
        case SpaceKind::Hyperbolic: {
            Vec v(3);
            v[0] = rng.uniform(-box, box);
            v[1] = rng.uniform(-box, box);
            v[2] = 0.0;
            return project_to_chart(space, v);
        }
    }
    return Vec::Zero(space.dimension);
}

Vec random_in_ball(const Space& space, const Vec& center, double radius, Rng& rng) {
    if (space.kind == SpaceKind::Euclidean || space.kind == SpaceKind::SupNorm) {
        const int n = space.dimension;
        const double r = radius * std::pow(rng.uniform(), 1.0 / n);
        return center + r * rng.unit_vector(n);
    }
    // curved charts are 2-dimensional manifolds
    const double r = radius * std::sqrt(rng.uniform());
    const double angle = rng.uniform(0.0, 2.0 * M_PI);
    return exp_map(space, center, tangent_direction(space, center, angle), r);
}

std::vector<Vec> ball_grid(const Space& space, const Vec& center, double radius,
                           int count) {
    // sunflower spread: radius ~ sqrt(k), golden-angle azimuth
    std::vector<Vec> pts;
    pts.reserve(count);
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    const int n = space.dimension;
    const bool flat =
        space.kind == SpaceKind::Euclidean || space.kind == SpaceKind::SupNorm;
    for (int k = 0; k < count; ++k) {
        const double frac = (k + 0.5) / count;
        const double r = radius * (flat && n == 1 ? frac : std::sqrt(frac));
        const double angle = golden * k;
        if (flat && n == 1) {
            Vec p = center;
            p[0] += (k % 2 == 0 ? r : -r);
            pts.push_back(p);
        } else {
            pts.push_back(exp_map(space, center,
                                  tangent_direction(space, center, angle), r));
        }
    }
    return pts;
}

DeltaEstimateReport estimate_delta(const Space& space, const Vec& x, const Vec& y,
                                   double sigma, std::uint64_t seed) {
    require_on_chart(space, x);
    require_on_chart(space, y);
    if (!(sigma > 0.0)) throw Error("estimate_delta requires sigma > 0");
    const double rho_xy = distance(space, x, y);
    const double D = space.uniqueness_diameter();
    if (rho_xy >= D) throw SegmentNotUnique("rho(x, y) must be below D_X");

    const bool coincident = rho_xy < kTolStructural;
    // On the sphere with x = y the proof gives the stronger factor 1.
    const double bound =
        (coincident && space.kind == SpaceKind::Sphere) ? 1.0 : 1.0 + sigma;

    double delta = std::min(1.0, std::isfinite(D) ? D / 4.0 : 1.0);
    if (std::isfinite(D)) delta = std::min(delta, (D - rho_xy) / 2.0);

    constexpr int kGridZ = 32, kGridT = 16, kRandom = 500;

    DeltaEstimateReport report;
    report.x = x;
    report.y = y;
    report.sigma = sigma;

    while (delta > 1e-12) {
        double worst = 0.0;
        long checked = 0;
        bool ok = true;
        Rng rng(seed);

        const Vec peak = coincident ? x : y;
        auto check_triple = [&](const Vec& z, const Vec& w, double t) {
            const double rho_zw = distance(space, z, w);
            if (rho_zw < 1e-12) return true;
            Vec zt, wt;
            try {
                zt = geodesic_point(space, z, peak, t);
                wt = geodesic_point(space, w, peak, t);
            } catch (const SegmentNotUnique&) {
                return false;
            }
            const double ratio = distance(space, zt, wt) / rho_zw;
            worst = std::max(worst, ratio);
            ++checked;
            return ratio <= bound;
        };

        const std::vector<Vec> zs = ball_grid(space, x, delta * 0.999, kGridZ);
        for (int i = 0; i < kGridZ && ok; ++i) {
            for (int j = 0; j < kGridZ && ok; ++j) {
                if (i == j) continue;
                for (int k = 0; k < kGridT && ok; ++k) {
                    const double t = delta * k / kGridT;
                    ok = check_triple(zs[i], zs[j], std::min(t, 1.0));
                }
            }
        }
        for (int k = 0; k < kRandom && ok; ++k) {
            const Vec z = random_in_ball(space, x, delta * 0.999, rng);
            const Vec w = random_in_ball(space, x, delta * 0.999, rng);
            const double t = std::min(rng.uniform(0.0, delta), 1.0);
            ok = check_triple(z, w, t);
        }

        if (ok) {
            report.delta = delta;
            report.samples_checked = checked;
            report.worst_ratio = worst;
            return report;
        }
        delta *= 0.5;
    }
    throw NoDeltaFound("halving reached 1e-12 without a certified delta");
}

}  // namespace mgeo
