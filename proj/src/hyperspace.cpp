#include "mgeo/hyperspace.hpp"

#include <algorithm>

namespace mgeo {

HyperPoint make_hyperpoint(const Space& space, std::vector<Vec> members,
                           const Region* within) {
    if (members.empty()) throw Error("hyperpoint needs at least one member");
    HyperPoint A;
    A.space = space;
    for (Vec& m : members) {
        require_on_chart(space, m);
        if (within && !within->contains(m))
            throw StarViolation("member outside the carrier region");
        const bool dup = std::any_of(A.members.begin(), A.members.end(),
                                     [&](const Vec& q) {
                                         return distance(space, q, m) <= kTolStructural;
                                     });
        if (!dup) A.members.push_back(std::move(m));
    }
    return A;
}

double diameter(const HyperPoint& A) {
    double d = 0.0;
    for (std::size_t i = 0; i < A.members.size(); ++i)
        for (std::size_t j = i + 1; j < A.members.size(); ++j)
            d = std::max(d, distance(A.space, A.members[i], A.members[j]));
    return d;
}

namespace {

double directed(const HyperPoint& A, const HyperPoint& B) {
    double sup = 0.0;
    for (const Vec& a : A.members) {
        double inf = std::numeric_limits<double>::infinity();
        for (const Vec& b : B.members)
            inf = std::min(inf, distance(A.space, a, b));
        sup = std::max(sup, inf);
    }
    return sup;
}

}  // namespace

double hausdorff_distance(const HyperPoint& A, const HyperPoint& B) {
    if (!(A.space == B.space)) throw SpaceMismatch("hyperpoints in different spaces");
    return std::max(directed(A, B), directed(B, A));
}

HyperPoint set_convex_combination(const HyperPoint& A, const Vec& c, double lambda,
                                  const Region* within) {
    require_on_chart(A.space, c);
    const double D = A.space.uniqueness_diameter();
    std::vector<Vec> out;
    out.reserve(A.members.size());
    for (const Vec& a : A.members) {
        if (distance(A.space, a, c) >= D)
            throw SegmentNotUnique("member beyond the uniqueness diameter of c");
        if (within) {
            const Segment seg = make_segment(A.space, a, c);
            if (!segment_in_set(seg, [&](const Vec& p) { return within->contains(p); }))
                throw StarViolation("segment [a, c] leaves the carrier region");
        }
        out.push_back(geodesic_point(A.space, a, c, lambda));
    }
    return make_hyperpoint(A.space, std::move(out));
}

HyperPoint combine_singleton_with_set(const Vec& c, const HyperPoint& E,
                                      double lambda) {
    std::vector<Vec> out;
    out.reserve(E.members.size());
    for (const Vec& e : E.members)
        out.push_back(geodesic_point(E.space, c, e, lambda));
    return make_hyperpoint(E.space, std::move(out));
}

HyperPoint minkowski_combination(const HyperPoint& A, const HyperPoint& B,
                                 double lambda) {
    if (!(A.space == B.space)) throw SpaceMismatch("hyperpoints in different spaces");
    if (A.space.kind != SpaceKind::Euclidean)
        throw Error("the two-set combination is defined on euclidean kinds only");
    std::vector<Vec> out;
    out.reserve(A.members.size() * B.members.size());
    for (const Vec& a : A.members)
        for (const Vec& b : B.members) out.push_back((1.0 - lambda) * a + lambda * b);
    return make_hyperpoint(A.space, std::move(out));
}

HyperReport verify_hypersegment_isometry(const HyperPoint& A, const Vec& c,
                                         const std::vector<double>& lambda_grid) {
    const HyperPoint singleton = make_hyperpoint(A.space, {c});
    const double base = hausdorff_distance(A, singleton);
    std::vector<HyperPoint> evals;
    evals.reserve(lambda_grid.size());
    for (const double l : lambda_grid)
        evals.push_back(set_convex_combination(A, c, l));

    HyperReport report;
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        for (std::size_t j = i; j < lambda_grid.size(); ++j) {
            const double want = std::abs(lambda_grid[i] - lambda_grid[j]) * base;
            const double got = hausdorff_distance(evals[i], evals[j]);
            report.max_deviation = std::max(report.max_deviation, std::abs(got - want));
            ++report.pairs_checked;
        }
    }
    return report;
}

HyperReport verify_hyperbolic_inequality_singleton(
    const HyperPoint& A, const HyperPoint& B, const HyperPoint& E,
    const std::vector<double>& lambda_grid) {
    HyperReport report;
    const bool singleton_E = E.members.size() == 1;
    if (!singleton_E && (A.members.size() != 1 || B.members.size() != 1))
        throw Error("non-singleton E requires singleton A and B");

    const double base = hausdorff_distance(A, B);
    for (const double l : lambda_grid) {
        HyperPoint left =
            singleton_E ? set_convex_combination(A, E.members[0], l)
                        : combine_singleton_with_set(A.members[0], E, l);
        HyperPoint right =
            singleton_E ? set_convex_combination(B, E.members[0], l)
                        : combine_singleton_with_set(B.members[0], E, l);
        const double got = hausdorff_distance(left, right);
        const double bound = (1.0 - l) * base;
        report.max_deviation = std::max(report.max_deviation, got - bound);
        ++report.pairs_checked;
    }
    return report;
}

std::vector<HyperPoint> star_of_hyperspace(const Region& C,
                                           const std::vector<HyperPoint>& panel,
                                           int lambda_grid) {
    std::vector<HyperPoint> singletons;
    for (const Vec& c : C.star_centers) {
        for (const HyperPoint& A : panel) {
            for (int k = 0; k <= lambda_grid; ++k) {
                const double l = static_cast<double>(k) / lambda_grid;
                // throws StarViolation when [a, c] leaves C
                set_convex_combination(A, c, l, &C);
            }
        }
        singletons.push_back(make_hyperpoint(C.space, {c}));
    }
    return singletons;
}

}  // namespace mgeo
