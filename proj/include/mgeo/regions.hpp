#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "mgeo/spaces.hpp"

namespace mgeo {

/// JSON-expressible membership predicates: balls (open or closed),
/// boxes, segment tubes and unions of the former. Regions built in code
/// may carry an arbitrary std::function instead.
struct MembershipSpec {
    enum class Kind { All, Ball, Box, SegmentTube, Union };
    Kind kind = Kind::All;
    Vec center;              // Ball
    double radius = 0.0;     // Ball
    bool open = true;        // Ball / Box
    Vec lo, hi;              // Box
    Vec seg_a, seg_b;        // SegmentTube
    double tol = 0.0;        // SegmentTube
    std::vector<MembershipSpec> parts;  // Union

    static MembershipSpec all();
    static MembershipSpec ball(const Vec& center, double radius, bool open = true);
    static MembershipSpec box(const Vec& lo, const Vec& hi, bool open = false);
    static MembershipSpec segment_tube(const Vec& a, const Vec& b, double tol);
    static MembershipSpec union_of(std::vector<MembershipSpec> parts);

    bool contains(const Space& space, const Vec& x) const;
};

/// A finite sampled stand-in for a subset of a space: sample cloud,
/// membership predicate, star centers and the convex/star-shaped flags.
struct Region {
    Space space;
    std::vector<Vec> samples;
    std::function<bool(const Vec&)> membership;
    std::vector<Vec> star_centers;
    bool convex = false;
    bool star_shaped = false;
    std::optional<MembershipSpec> membership_spec;  // set when JSON-expressible

    bool contains(const Vec& x) const {
        return membership ? membership(x) : near_sample(x);
    }

    bool near_sample(const Vec& x, double tol = kTolMetric) const;
};

/// Region with membership compiled from a spec.
Region make_region(const Space& space, std::vector<Vec> samples, MembershipSpec spec,
                   std::vector<Vec> star_centers = {}, bool convex = false,
                   bool star_shaped = false);

/// Sanity checks for the declared flags: every sample passes membership,
/// every star center star-shapes the samples on a 64-point grid, and
/// convexity implies the star property with samples as centers.
/// Throws StarViolation / Error on failure.
void validate_region(const Region& region, int grid = 64);

/// min over E.samples of rho(x, s); finite-sample semantics.
double dist_to_region(const Vec& x, const Region& E);

/// A point of clB(x, eps) that lies strictly inside B(E, r), built from a
/// sample x0 of E with r <= rho(x, x0) < r + eps/2 by sliding x toward x0.
Vec annulus_interior_witness(const Region& E, double r, const Vec& x, double eps);

/// One segment of the family G: a subsegment [w0, w1] of [w0, x0] for a
/// star center x0, contained in C_X and U.
struct FamilySegment {
    Segment segment;   // [w0, w1]
    Vec star_center;   // x0
};

struct SegmentFamilyG {
    std::vector<FamilySegment> segments;
};

/// Enumerates the finite selection of family-G segments: for every star
/// center x0 and sample w0 of U cap C_X cap B(x0, D_X), subsegments of
/// [w0, x0] with w1 at {1/4, 1/2, 3/4} of the portion inside U, filtered
/// by a 64-point membership grid in C_X cap U.
SegmentFamilyG enumerate_family_G(const Region& C_X, const Region& U);

/// True when all `grid` points of the segment pass the predicate.
bool segment_in_set(const Segment& seg, const std::function<bool(const Vec&)>& pred,
                    int grid = 64);

}  // namespace mgeo
