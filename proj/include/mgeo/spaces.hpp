#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mgeo/errors.hpp"
#include "mgeo/rng.hpp"

namespace mgeo {

using Vec = Eigen::VectorXd;

// Tolerance ladder used throughout: structural identities, closed-form
// metric identities, and numeric/trigonometric chains.
inline constexpr double kTolStructural = 1e-12;
inline constexpr double kTolMetric = 1e-9;
inline constexpr double kTolNumeric = 1e-6;

enum class SpaceKind { Euclidean, SupNorm, Sphere, Hyperbolic };

const char* to_string(SpaceKind kind) noexcept;

/// A geodesic model space together with the chart its points live in.
///
/// Kinds and charts:
///  - Euclidean(n): R^n with the L2 metric.
///  - SupNorm(n):   R^n with the Chebyshev metric; segments are the
///                  linear ones (a canonical choice, they are metric
///                  segments for the sup norm).
///  - Sphere(k>0):  ambient 3-vectors of norm 1/sqrt(k); path metric.
///  - Hyperbolic(k<0): hyperboloid sheet in Minkowski 3-space scaled by
///                  1/sqrt(-k); chart coordinates (s1, s2, t) with
///                  s1^2 + s2^2 - t^2 = -1/k and t > 0.
struct Space {
    SpaceKind kind = SpaceKind::Euclidean;
    int dimension = 2;     // ambient chart dimension
    double kappa = 0.0;

    static Space euclidean(int n) { return {SpaceKind::Euclidean, n, 0.0}; }
    static Space sup_norm(int n) { return {SpaceKind::SupNorm, n, 0.0}; }
    static Space sphere(double kappa);
    static Space hyperbolic(double kappa);

    /// Curvature radius 1/sqrt(|kappa|) for the curved kinds.
    double radius() const;

    /// Uniqueness diameter D_X: pi/sqrt(kappa) on the sphere, infinity
    /// otherwise.
    double uniqueness_diameter() const {
        return kind == SpaceKind::Sphere ? M_PI * radius()
                                         : std::numeric_limits<double>::infinity();
    }

    bool operator==(const Space& other) const {
        return kind == other.kind && dimension == other.dimension &&
               kappa == other.kappa;
    }
};

/// Model space M_kappa of the CAT comparison machinery: sphere for
/// kappa > 0, Euclidean plane for kappa = 0, hyperbolic plane for
/// kappa < 0.
Space model_space(double kappa);

/// True when the coordinates satisfy the space's chart constraint
/// within `tol`.
bool point_on_chart(const Space& space, const Vec& x, double tol = kTolMetric);

/// Throws ChartViolation when point_on_chart fails.
void require_on_chart(const Space& space, const Vec& x);

/// Re-projects slightly-off coordinates back onto the chart (norm for
/// the sphere, sheet equation for the hyperboloid). No-op for the flat
/// kinds.
Vec project_to_chart(const Space& space, const Vec& x);

/// Geodesic distance between two chart points.
double distance(const Space& space, const Vec& x, const Vec& y);

/// The point (1-t)x (+) ty: the unique point z on [x, y] with
/// rho(z, x) = t rho(x, y). Requires rho(x, y) < D_X; on the sphere,
/// antipodal inputs raise SegmentNotUnique.
Vec geodesic_point(const Space& space, const Vec& x, const Vec& y, double t);

/// A metric segment [a, b] with its isometric parameterization.
struct Segment {
    Space space;
    Vec a, b;
    double length = 0.0;

    Vec eval(double t) const { return geodesic_point(space, a, b, t); }
};

/// Builds the segment, checking chart membership and uniqueness.
Segment make_segment(const Space& space, const Vec& a, const Vec& b);

/// Angle C opposite the side of length c in a spherical triangle on the
/// unit sphere, from the spherical law of cosines.
double spherical_angle(double a, double b, double c);

/// Same angle from the law of haversines, hav c = hav(a-b) + sin a sin b hav C.
/// Kept separate so the two routes can be compared.
double spherical_angle_haversine(double a, double b, double c);

inline double haversine(double theta) {
    const double s = std::sin(0.5 * theta);
    return s * s;
}

/// A geodesic triangle in X together with its comparison triangle in
/// the model space M_kappa, canonically placed: first vertex at the
/// origin/pole, second on the positive first-axis geodesic, third in
/// the upper half.
struct ComparisonTriangle {
    Space source_space;
    std::array<Vec, 3> source_vertices;
    Space model;
    std::array<Vec, 3> model_vertices;
    std::array<double, 3> side_lengths;  // [0]=d(v0,v1), [1]=d(v1,v2), [2]=d(v2,v0)
};

ComparisonTriangle build_comparison_triangle(const Space& space, const Vec& x1,
                                             const Vec& x2, const Vec& x3,
                                             double kappa);

struct CatCheckReport {
    double max_violation = 0.0;   // max of rho_X(x,y) - d_kappa(xbar,ybar)
    int pairs_checked = 0;
};

/// Samples comparison-point pairs on the triangle sides and reports the
/// worst violation of the CAT(kappa) comparison inequality.
CatCheckReport check_cat_inequality(const Space& space,
                                    const std::array<Vec, 3>& vertices,
                                    double kappa, int sample_count);

struct DeltaEstimateReport {
    Vec x, y;
    double sigma = 0.0;
    double delta = 0.0;
    long samples_checked = 0;
    double worst_ratio = 0.0;
};

/// Certifies a delta for the temperate-curvature condition
///   rho((1-t)z (+) ty, (1-t)w (+) ty) <= (1+sigma) rho(z,w)
/// on a sampled (z, w, t) grid with z, w in B(x, delta), t in [0, delta),
/// halving delta until the check passes. When x = y on the sphere the
/// stronger bound with factor 1 is asserted instead.
DeltaEstimateReport estimate_delta(const Space& space, const Vec& x, const Vec& y,
                                   double sigma, std::uint64_t seed = 2026);

// Sampling helpers shared by the property suites.

/// A random chart point; flat kinds draw coordinates from [-box, box].
Vec random_point(const Space& space, Rng& rng, double box = 2.0);

/// A random point of B(center, radius) via the exponential map.
Vec random_in_ball(const Space& space, const Vec& center, double radius, Rng& rng);

/// Deterministic spread of `count` points of B(center, radius)
/// (sunflower layout in the tangent plane).
std::vector<Vec> ball_grid(const Space& space, const Vec& center, double radius,
                           int count);

/// exp_center(dist * dir) for a unit tangent direction.
Vec exp_map(const Space& space, const Vec& center, const Vec& unit_dir, double dist);

/// A unit tangent vector at x determined by an angle parameter (flat
/// kinds and the 2-d curved charts).
Vec tangent_direction(const Space& space, const Vec& x, double angle);

}  // namespace mgeo
