#pragma once

#include <optional>
#include <vector>

#include "mgeo/regions.hpp"

namespace mgeo {

/// A finite point cloud standing in for a nonempty closed bounded subset
/// of C; the compact proxy on which the Pompeiu-Hausdorff computations
/// are exact. Members are deduplicated within 1e-12.
struct HyperPoint {
    Space space;
    std::vector<Vec> members;
};

/// Builds a hyperpoint, deduplicating members; when a region is given its
/// membership is enforced.
HyperPoint make_hyperpoint(const Space& space, std::vector<Vec> members,
                           const Region* within = nullptr);

double diameter(const HyperPoint& A);

/// Pompeiu-Hausdorff metric: max of the two directed sup-inf distances.
double hausdorff_distance(const HyperPoint& A, const HyperPoint& B);

/// (1-lambda) A (+) lambda {c}: memberwise geodesic combination toward c.
/// When a region is given, every segment [a, c] is membership-checked on
/// a 64-point grid (StarViolation on failure).
HyperPoint set_convex_combination(const HyperPoint& A, const Vec& c, double lambda,
                                  const Region* within = nullptr);

/// {(1-lambda) c (+) lambda e : e in E}: the singleton-to-set combination
/// used by the second hyperbolicity case.
HyperPoint combine_singleton_with_set(const Vec& c, const HyperPoint& E,
                                      double lambda);

/// Minkowski-style combination (1-lambda) A (+) lambda B of the Banach
/// remark: all pairwise combinations; Euclidean kinds only.
HyperPoint minkowski_combination(const HyperPoint& A, const HyperPoint& B,
                                 double lambda);

/// The segment [A, {c}] in the hyperspace.
struct HyperSegment {
    HyperPoint A;
    Vec c;

    HyperPoint eval(double lambda) const {
        return set_convex_combination(A, c, lambda);
    }
};

struct HyperReport {
    double max_deviation = 0.0;
    int pairs_checked = 0;
};

/// Max deviation of |h(eval(l), eval(m)) - |l - m| h(A, {c})| over the
/// grid; the isometry certificate for hyperspace segments.
HyperReport verify_hypersegment_isometry(const HyperPoint& A, const Vec& c,
                                         const std::vector<double>& lambda_grid);

/// Max violation of h((1-l)A (+) lE, (1-l)B (+) lE) <= (1-l) h(A, B) over
/// the grid. E singleton handles arbitrary A, B; non-singleton E requires
/// A, B singletons (the two cases of the hyperbolicity lemma).
HyperReport verify_hyperbolic_inequality_singleton(
    const HyperPoint& A, const HyperPoint& B, const HyperPoint& E,
    const std::vector<double>& lambda_grid);

/// star(B(C)) = the singletons over star(C); each returned singleton is
/// exercised against the panel of hyperpoints via set_convex_combination.
std::vector<HyperPoint> star_of_hyperspace(const Region& C,
                                           const std::vector<HyperPoint>& panel,
                                           int lambda_grid = 9);

}  // namespace mgeo
