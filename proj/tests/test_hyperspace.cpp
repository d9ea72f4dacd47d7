#include <doctest.h>

#include "mgeo/hyperspace.hpp"
#include "test_helpers.hpp"

using namespace mgeo;
using namespace mgeo::testing;

namespace {

const Space e2 = Space::euclidean(2);

HyperPoint cloud(std::vector<Vec> pts) { return make_hyperpoint(e2, std::move(pts)); }

// independent double-loop oracle for the Pompeiu-Hausdorff metric
double hausdorff_oracle(const HyperPoint& A, const HyperPoint& B) {
    double sup_ab = 0.0, sup_ba = 0.0;
    for (const Vec& a : A.members) {
        double inf = std::numeric_limits<double>::infinity();
        for (const Vec& b : B.members) inf = std::min(inf, (a - b).norm());
        sup_ab = std::max(sup_ab, inf);
    }
    for (const Vec& b : B.members) {
        double inf = std::numeric_limits<double>::infinity();
        for (const Vec& a : A.members) inf = std::min(inf, (a - b).norm());
        sup_ba = std::max(sup_ba, inf);
    }
    return std::max(sup_ab, sup_ba);
}

}  // namespace

TEST_CASE("hausdorff_distance: golden square pair and the oracle") {
    const HyperPoint A = cloud({tv2(-1, -1), tv2(-1, 1)});
    const HyperPoint B = cloud({tv2(1, -1), tv2(1, 1)});
    CHECK(hausdorff_distance(A, B) == 2.0);
    CHECK(hausdorff_distance(A, A) == 0.0);

    Rng rng(111);
    for (int k = 0; k < 100; ++k) {
        std::vector<Vec> pa, pb;
        const int na = 1 + static_cast<int>(rng.index(8));
        const int nb = 1 + static_cast<int>(rng.index(8));
        for (int i = 0; i < na; ++i) pa.push_back(random_point(e2, rng));
        for (int i = 0; i < nb; ++i) pb.push_back(random_point(e2, rng));
        const HyperPoint X = cloud(pa), Y = cloud(pb);
        CHECK(hausdorff_distance(X, Y) == hausdorff_oracle(X, Y));
    }
}

TEST_CASE("hyperpoints deduplicate members and reject space mismatches") {
    const HyperPoint A = cloud({tv2(0, 0), tv2(0, 0), tv2(1, 0)});
    CHECK(A.members.size() == 2);

    const HyperPoint S = make_hyperpoint(Space::euclidean(3), {tv3(0, 0, 0)});
    CHECK_THROWS_AS(hausdorff_distance(A, S), SpaceMismatch);
}

TEST_CASE("set_convex_combination: endpoint cases and the sqrt-2 counterexample") {
    const HyperPoint A = cloud({tv2(-1, -1), tv2(-1, 1)});
    const HyperPoint B = cloud({tv2(1, -1), tv2(1, 1)});
    const Vec c = tv2(0.2, -0.3);

    const HyperPoint at0 = set_convex_combination(A, c, 0.0);
    CHECK(hausdorff_distance(at0, A) == 0.0);
    const HyperPoint at1 = set_convex_combination(A, c, 1.0);
    CHECK(at1.members.size() == 1);
    CHECK((at1.members[0] - c).norm() == 0.0);

    // the Minkowski-style midpoint of the two squares' sides is the
    // three-point set {(0,-1),(0,0),(0,1)}, at Hausdorff distance sqrt 2
    // from A even though h(A,B)/2 = 1
    const HyperPoint mid = minkowski_combination(A, B, 0.5);
    REQUIRE(mid.members.size() == 3);
    CHECK(hausdorff_distance(mid, A) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(hausdorff_distance(mid, A) != 0.5 * hausdorff_distance(A, B));

    // diameter contraction of the singleton combination
    Rng rng(112);
    for (int k = 0; k < 50; ++k) {
        std::vector<Vec> pts;
        for (int i = 0; i < 5; ++i) pts.push_back(random_point(e2, rng, 1.0));
        const HyperPoint X = cloud(pts);
        const double l = rng.uniform();
        CHECK(diameter(set_convex_combination(X, c, l)) <=
              (1.0 - l) * diameter(X) + 1e-9);
    }
}

TEST_CASE("verify_hypersegment_isometry: endpoints, singletons, random clouds") {
    const HyperPoint A = cloud({tv2(-1, -1), tv2(-1, 1)});
    const Vec c = tv2(0, 0);
    const HyperPoint singleton_c = cloud({c});

    const HyperReport ends = verify_hypersegment_isometry(A, c, {0.0, 1.0});
    CHECK(ends.max_deviation <= 1e-12);

    const HyperPoint single = cloud({tv2(0.7, -0.4)});
    const HyperReport srep = verify_hypersegment_isometry(single, c, {0.0, 0.5, 1.0});
    CHECK(srep.max_deviation <= 1e-12);

    Rng rng(113);
    std::vector<double> grid;
    for (int i = 0; i < 33; ++i) grid.push_back(i / 32.0);
    for (int k = 0; k < 50; ++k) {
        std::vector<Vec> pts;
        const int n = 1 + static_cast<int>(rng.index(6));
        for (int i = 0; i < n; ++i)
            pts.push_back(random_in_ball(e2, tv2(0, 0), 1.0, rng));
        const HyperReport rep = verify_hypersegment_isometry(cloud(pts), c, grid);
        CHECK(rep.max_deviation <= 1e-9);
    }
}

TEST_CASE("verify_hyperbolic_inequality_singleton: degenerate and random cases") {
    const HyperPoint A = cloud({tv2(0.3, 0.1), tv2(-0.2, 0.4)});
    const HyperPoint E = cloud({tv2(0, 0)});

    const HyperReport same = verify_hyperbolic_inequality_singleton(A, A, E, {0.3, 0.7});
    CHECK(same.max_deviation <= 1e-12);

    const HyperPoint B = cloud({tv2(-0.5, -0.5)});
    const HyperReport at1 = verify_hyperbolic_inequality_singleton(A, B, E, {1.0});
    CHECK(at1.max_deviation <= 1e-12);

    Rng rng(114);
    std::vector<double> grid;
    for (int i = 0; i < 17; ++i) grid.push_back(i / 16.0);
    for (int k = 0; k < 50; ++k) {
        std::vector<Vec> pa, pb;
        for (int i = 0; i < 1 + static_cast<int>(rng.index(5)); ++i)
            pa.push_back(random_in_ball(e2, tv2(0, 0), 1.0, rng));
        for (int i = 0; i < 1 + static_cast<int>(rng.index(5)); ++i)
            pb.push_back(random_in_ball(e2, tv2(0, 0), 1.0, rng));
        const HyperReport rep =
            verify_hyperbolic_inequality_singleton(cloud(pa), cloud(pb), E, grid);
        CHECK(rep.max_deviation <= 1e-9);

        // the singleton-A,B case against a random set E
        const HyperPoint c1 = cloud({random_in_ball(e2, tv2(0, 0), 1.0, rng)});
        const HyperPoint c2 = cloud({random_in_ball(e2, tv2(0, 0), 1.0, rng)});
        const HyperReport rep2 =
            verify_hyperbolic_inequality_singleton(c1, c2, cloud(pa), grid);
        CHECK(rep2.max_deviation <= 1e-9);
    }

    CHECK_THROWS(verify_hyperbolic_inequality_singleton(A, A, A, {0.5}));
}

TEST_CASE("star_of_hyperspace: disc, two-arm star, empty centers") {
    Rng rng(115);

    // convex disc with several listed centers: all pass
    std::vector<Vec> samples;
    for (int i = 0; i < 16; ++i)
        samples.push_back(random_in_ball(e2, tv2(0, 0), 0.9, rng));
    Region disc = make_region(e2, samples, MembershipSpec::ball(tv2(0, 0), 1.0, false),
                              {tv2(0, 0), tv2(0.1, 0.1)}, true, true);
    std::vector<HyperPoint> panel;
    for (int k = 0; k < 4; ++k) {
        std::vector<Vec> pts;
        for (int i = 0; i < 3; ++i)
            pts.push_back(random_in_ball(e2, tv2(0, 0), 0.9, rng));
        panel.push_back(cloud(pts));
    }
    const auto disc_star = star_of_hyperspace(disc, panel);
    CHECK(disc_star.size() == 2);
    for (const HyperPoint& s : disc_star) CHECK(s.members.size() == 1);

    // two-arm star: only the origin is a center, and arm panels work
    Region star = two_arm_star(20);
    std::vector<HyperPoint> arm_panel;
    arm_panel.push_back(cloud({star.samples[3], star.samples[25]}));
    const auto star_star = star_of_hyperspace(star, arm_panel);
    CHECK(star_star.size() == 1);
    CHECK((star_star[0].members[0] - tv2(0, 0)).norm() == 0.0);

    Region no_centers = make_region(e2, samples,
                                    MembershipSpec::ball(tv2(0, 0), 1.0, false));
    CHECK(star_of_hyperspace(no_centers, panel).empty());
}

TEST_CASE("star_of_hyperspace flags combinations leaving the region") {
    // a center listed for a region that is not actually star-shaped
    // around it: the panel check must throw
    Region bad = make_region(
        e2, {tv2(0.9, 0.0), tv2(-0.9, 0.0)},
        MembershipSpec::union_of({MembershipSpec::ball(tv2(0.9, 0.0), 0.2, false),
                                  MembershipSpec::ball(tv2(-0.9, 0.0), 0.2, false)}),
        {tv2(0.9, 0.0)}, false, false);
    std::vector<HyperPoint> panel = {cloud({tv2(-0.9, 0.0)})};
    CHECK_THROWS_AS(star_of_hyperspace(bad, panel), StarViolation);
}

TEST_CASE("property: hausdorff metric axioms and contraction toward singletons") {
    Rng rng(116);
    for (int k = 0; k < 200; ++k) {
        std::vector<Vec> pa, pb, pc;
        for (int i = 0; i < 1 + static_cast<int>(rng.index(8)); ++i)
            pa.push_back(random_point(e2, rng, 1.0));
        for (int i = 0; i < 1 + static_cast<int>(rng.index(8)); ++i)
            pb.push_back(random_point(e2, rng, 1.0));
        for (int i = 0; i < 1 + static_cast<int>(rng.index(8)); ++i)
            pc.push_back(random_point(e2, rng, 1.0));
        const HyperPoint A = cloud(pa), B = cloud(pb), C = cloud(pc);
        CHECK(hausdorff_distance(A, B) ==
              doctest::Approx(hausdorff_distance(B, A)).epsilon(1e-15));
        CHECK(hausdorff_distance(A, C) <=
              hausdorff_distance(A, B) + hausdorff_distance(B, C) + 1e-9);

        const Vec c = random_point(e2, rng, 1.0);
        const HyperPoint singleton = cloud({c});
        const double base = hausdorff_distance(A, singleton);
        const double l = rng.uniform();
        const HyperPoint moved = set_convex_combination(A, c, l);
        CHECK(hausdorff_distance(moved, singleton) ==
              doctest::Approx((1.0 - l) * base).epsilon(1e-9));
        // admissibility at the finite-cloud scale: still a finite cloud
        CHECK(moved.members.size() <= A.members.size());
        CHECK(!moved.members.empty());
    }
}
