#include <doctest.h>

#include "mgeo/regions.hpp"

using namespace mgeo;

namespace {

Vec v1(double a) {
    Vec v(1);
    v << a;
    return v;
}

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec v3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

Region line_region(double lo, double hi, int n) {
    const Space e1 = Space::euclidean(1);
    std::vector<Vec> samples;
    for (int i = 0; i < n; ++i)
        samples.push_back(v1(lo + (hi - lo) * i / (n - 1)));
    Region r = make_region(e1, samples, MembershipSpec::box(v1(lo), v1(hi)),
                           {v1(lo), v1(hi)}, true, true);
    return r;
}

// the two-arm star of the pointwise-vs-global example: A = [0, e],
// B = [0, u] with u on the unit circle at distance 1/3 from e
std::pair<Vec, Vec> star_arms() {
    const Vec e = v2(1.0, 0.0);
    const double u1 = 17.0 / 18.0;
    const Vec u = v2(u1, std::sqrt(1.0 - u1 * u1));
    return {e, u};
}

Region two_arm_star(int per_arm) {
    const Space e2 = Space::euclidean(2);
    const auto [e, u] = star_arms();
    std::vector<Vec> samples;
    for (int i = 0; i < per_arm; ++i) {
        const double t = static_cast<double>(i) / (per_arm - 1);
        samples.push_back(t * e);
    }
    for (int i = 1; i < per_arm; ++i) {
        const double t = static_cast<double>(i) / (per_arm - 1);
        samples.push_back(t * u);
    }
    MembershipSpec spec = MembershipSpec::union_of(
        {MembershipSpec::segment_tube(v2(0, 0), e, 1e-9),
         MembershipSpec::segment_tube(v2(0, 0), u, 1e-9)});
    return make_region(e2, samples, spec, {v2(0, 0)}, false, true);
}

}  // namespace

TEST_CASE("dist_to_region basics and the exhaustive oracle") {
    const Space e1 = Space::euclidean(1);
    Region E = make_region(e1, {v1(0), v1(1), v1(2)}, MembershipSpec::all());
    CHECK(dist_to_region(v1(1), E) == 0.0);
    CHECK(dist_to_region(v1(5), E) == doctest::Approx(3.0).epsilon(1e-15));

    Rng rng(31);
    const Space e2 = Space::euclidean(2);
    std::vector<Vec> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(random_point(e2, rng));
    Region F = make_region(e2, pts, MembershipSpec::all());
    for (int k = 0; k < 100; ++k) {
        const Vec x = random_point(e2, rng);
        double brute = std::numeric_limits<double>::infinity();
        for (const Vec& p : pts) brute = std::min(brute, (x - p).norm());
        CHECK(dist_to_region(x, F) == doctest::Approx(brute).epsilon(1e-15));
    }

    Region empty = make_region(e1, {}, MembershipSpec::all());
    CHECK_THROWS_AS(dist_to_region(v1(0), empty), EmptyRegion);
}

TEST_CASE("annulus_interior_witness on the line and the plane") {
    const Space e1 = Space::euclidean(1);
    Region E = make_region(e1, {v1(0)}, MembershipSpec::all());
    const Vec w = annulus_interior_witness(E, 1.0, v1(1.0), 0.5);
    CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dist_to_region(w, E) < 1.0);

    const Space e2 = Space::euclidean(2);
    Region E2 = make_region(e2, {v2(0, 0)}, MembershipSpec::all());
    const Vec w2 = annulus_interior_witness(E2, 1.0, v2(1, 0), 0.25);
    CHECK((w2 - v2(0.75, 0.0)).norm() < 1e-12);
    CHECK(dist_to_region(w2, E2) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("annulus_interior_witness on the sphere") {
    const Space sph = Space::sphere(1.0);
    Region E = make_region(sph, {v3(0, 0, 1)}, MembershipSpec::all());
    const Vec x = v3(1, 0, 0);  // equator, distance pi/2 from the pole
    const Vec w = annulus_interior_witness(E, M_PI_2, x, 0.3);
    CHECK(dist_to_region(w, E) == doctest::Approx(M_PI_2 - 0.3).epsilon(1e-6));
    CHECK(distance(sph, x, w) <= 0.3 + 1e-12);
}

TEST_CASE("annulus witness requires x at distance r") {
    const Space e1 = Space::euclidean(1);
    Region E = make_region(e1, {v1(0)}, MembershipSpec::all());
    CHECK_THROWS(annulus_interior_witness(E, 1.0, v1(2.0), 0.5));
}

TEST_CASE("enumerate_family_G on a convex disc") {
    const Space e2 = Space::euclidean(2);
    std::vector<Vec> samples;
    Rng rng(41);
    for (int k = 0; k < 60; ++k) samples.push_back(random_in_ball(e2, v2(0, 0), 0.95, rng));
    samples.push_back(v2(0, 0));
    Region disc = make_region(e2, samples, MembershipSpec::ball(v2(0, 0), 1.0, true),
                              {v2(0, 0)}, true, true);
    const SegmentFamilyG family = enumerate_family_G(disc, disc);
    CHECK(!family.segments.empty());
    for (const FamilySegment& fs : family.segments) {
        CHECK(segment_in_set(fs.segment, [&](const Vec& p) { return disc.contains(p); }));
        const double to_center = distance(e2, fs.segment.a, fs.star_center);
        const double w1_dist = distance(e2, fs.segment.a, fs.segment.b);
        CHECK(w1_dist > 0.0);
        CHECK(w1_dist < to_center);  // w1 strictly between w0 and x0
    }
}

TEST_CASE("enumerate_family_G on the two-arm star") {
    Region star = two_arm_star(50);
    validate_region(star);
    const Space e2 = star.space;
    Region all = make_region(e2, star.samples, MembershipSpec::all());
    const SegmentFamilyG family = enumerate_family_G(star, all);
    CHECK(!family.segments.empty());
    // every emitted segment points along an arm toward the origin
    for (const FamilySegment& fs : family.segments) {
        CHECK((fs.star_center - v2(0, 0)).norm() < 1e-12);
        CHECK(segment_in_set(fs.segment, [&](const Vec& p) { return star.contains(p); }));
    }
}

TEST_CASE("enumerate_family_G: disjoint U gives EmptyFamily") {
    Region line = line_region(0.0, 1.0, 11);
    Region far = make_region(line.space, {v1(5.0)},
                             MembershipSpec::ball(v1(5.0), 0.5, true));
    CHECK_THROWS_AS(enumerate_family_G(line, far), EmptyFamily);
}

TEST_CASE("validate_region: convexity implies the star property") {
    Region line = line_region(0.0, 1.0, 21);
    CHECK_NOTHROW(validate_region(line));

    // a deliberately wrong flag: the two-point region is not convex under
    // a membership that excludes the middle
    const Space e1 = Space::euclidean(1);
    Region bad = make_region(
        e1, {v1(0.0), v1(1.0)},
        MembershipSpec::union_of({MembershipSpec::ball(v1(0.0), 0.1, false),
                                  MembershipSpec::ball(v1(1.0), 0.1, false)}),
        {}, true, false);
    CHECK_THROWS_AS(validate_region(bad), StarViolation);
}

TEST_CASE("membership catalog: ball, box, segment tube, union") {
    const Space e2 = Space::euclidean(2);
    const MembershipSpec ball = MembershipSpec::ball(v2(0, 0), 1.0, true);
    CHECK(ball.contains(e2, v2(0.5, 0)));
    CHECK(!ball.contains(e2, v2(1.0, 0)));  // open
    const MembershipSpec cball = MembershipSpec::ball(v2(0, 0), 1.0, false);
    CHECK(cball.contains(e2, v2(1.0, 0)));

    const MembershipSpec box = MembershipSpec::box(v2(-1, -1), v2(1, 1));
    CHECK(box.contains(e2, v2(1, 1)));
    CHECK(!box.contains(e2, v2(1.1, 0)));

    const auto [e, u] = star_arms();
    const MembershipSpec tube = MembershipSpec::segment_tube(v2(0, 0), e, 1e-9);
    CHECK(tube.contains(e2, v2(0.37, 0)));
    CHECK(!tube.contains(e2, v2(0.37, 0.01)));
}
