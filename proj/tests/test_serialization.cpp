#include <doctest.h>

#include "mgeo/serialization.hpp"
#include "mgeo/suites.hpp"
#include "test_helpers.hpp"

using namespace mgeo;
using namespace mgeo::testing;

TEST_CASE("space and point wire formats round-trip") {
    for (const Space& sp : {Space::euclidean(3), Space::sup_norm(2),
                            Space::sphere(2.0), Space::hyperbolic(-0.5)}) {
        const Space back = space_from_json(to_json(sp));
        CHECK(back == sp);
    }
    const Vec v = tv3(0.25, -1.5, 3.0);
    CHECK((vec_from_json(to_json(v)) - v).norm() == 0.0);

    CHECK_THROWS_AS(space_from_json(json{{"kind", "weird"}}), ConfigInvalid);
}

TEST_CASE("region wire format keeps samples, flags and membership") {
    Region r = line_region(0.0, 1.0, 9);
    const json j = to_json(r);
    CHECK(j.at("flags").at("convex").get<bool>());
    Region back = region_from_json(j);
    CHECK(back.samples.size() == r.samples.size());
    CHECK(back.convex);
    CHECK(back.star_shaped);
    CHECK(back.star_centers.size() == 2);
    CHECK(back.contains(tv1(0.5)));
    CHECK(!back.contains(tv1(1.5)));

    Region star = two_arm_star(12);
    Region star_back = region_from_json(to_json(star));
    for (const Vec& s : star.samples) CHECK(star_back.contains(s));
    CHECK(!star_back.contains(tv2(0.5, 0.5)));
}

TEST_CASE("mapping tables round-trip against a shared context") {
    Region domain = line_region(0.0, 1.0, 7);
    Region range = line_region(0.0, 1.0, 7);
    ContextPtr ctx = make_context(std::move(domain), std::move(range), tv1(0.0));
    SampledMapping f = make_sampled(ctx, std::function<Vec(const Vec&)>(
                                             [](const Vec& x) -> Vec { return 0.5 * x; }));
    const SampledMapping back = mapping_from_json(mapping_to_json(f), ctx);
    CHECK(metric_d_infinity(f, back) == 0.0);

    json broken = mapping_to_json(f);
    broken["entries"].erase(3);
    CHECK_THROWS_AS(mapping_from_json(broken, ctx), ConfigInvalid);
}

TEST_CASE("mapping payloads reconstruct their context when none is shared") {
    Region domain = line_region(0.0, 1.0, 7);
    Region range = line_region(0.0, 1.0, 7);
    ContextPtr ctx = make_context(std::move(domain), std::move(range), tv1(0.0));
    SampledMapping f = make_sampled(ctx, std::function<Vec(const Vec&)>(
                                             [](const Vec& x) -> Vec { return 0.25 * x; }));
    const json j = mapping_to_json(f);
    CHECK(j.contains("context"));
    const SampledMapping back = mapping_from_json(j);
    REQUIRE(back.context->domain.samples.size() == 7);
    for (std::size_t i = 0; i < back.values.size(); ++i)
        CHECK((back.values[i] - f.values[i]).norm() == 0.0);
}

TEST_CASE("extension parameters round-trip and evaluate identically") {
    Region domain = line_region(0.0, 1.0, 15);
    Region range = line_region(0.0, 1.0, 9);
    ContextPtr ctx = make_context(std::move(domain), std::move(range), tv1(0.0));
    SampledMapping f = make_sampled(
        ctx, std::function<Vec(const Vec&)>([](const Vec& x) -> Vec {
            return tv1(std::min(0.8 * x[0], 0.3));
        }));
    const ExtendedMapping F = mcshane_weighted_extend(f);
    const ExtendedMapping back = extension_from_json(extension_to_json(F));
    Rng rng(121);
    for (int k = 0; k < 50; ++k) {
        const Vec y = tv1(rng.uniform(-0.5, 1.5));
        CHECK((F.evaluate(y) - back.evaluate(y)).lpNorm<Eigen::Infinity>() == 0.0);
    }

    // a Kuratowski embedding round-trips too
    Region d2 = line_region(0.0, 1.0, 8);
    const Space e2 = Space::euclidean(2);
    std::vector<Vec> lm = {tv2(0, 0), tv2(1, 0), tv2(0, 1)};
    EmbeddingContext emb = make_embedding(e2, lm, 0);
    std::vector<Vec> vals;
    for (const Vec& z : d2.samples) vals.push_back(tv2(0.4 * z[0], 0.2));
    const ExtendedMapping K =
        mcshane_weighted_extend(d2.space, d2.samples, vals, emb);
    const ExtendedMapping K_back = extension_from_json(extension_to_json(K));
    CHECK((K.evaluate(tv1(0.37)) - K_back.evaluate(tv1(0.37)))
              .lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("porosity suite accepts a fully configured workbench") {
    const Space e1 = Space::euclidean(1);
    Region domain = line_region(0.0, 1.0, 101);
    domain.star_centers = {tv1(1.0)};
    Vec center = tv1(0.5);
    std::vector<Vec> u_samples;
    for (int i = 0; i < 21; ++i) u_samples.push_back(tv1(0.1 + 0.8 * i / 20.0));
    Region U = make_region(e1, u_samples, MembershipSpec::ball(center, 0.45, true));

    json config = {
        {"schema_version", 1},
        {"suite", "porosity"},
        {"seed", 7},
        {"parameters",
         {{"cell", {{"a", 0.5}, {"b", 0.505}, {"p", 2}}},
          {"trials", 5},
          {"grids", {{"segment", 48}, {"steep_candidates", 64}}},
          {"domain", to_json(domain)},
          {"U", to_json(U)},
          {"formula", {{"kind", "affine"}, {"scale", 0.5}}},
          {"constant",
           {{"sigma", 0.2}, {"eps", 0.05}, {"trials", 5}, {"value", 0.3}}}}}};
    const SuiteResult result = run_suite(config);
    CHECK(result.all_passed);
}

TEST_CASE("hyperpoint wire format") {
    const Space e2 = Space::euclidean(2);
    const HyperPoint A = make_hyperpoint(e2, {tv2(0, 0), tv2(1, 1)});
    const HyperPoint back = hyperpoint_from_json(to_json(A));
    CHECK(back.members.size() == 2);
    CHECK(hausdorff_distance(A, back) == 0.0);
}

TEST_CASE("formula catalog: affine, constant, clamp, min, compose, geodesic") {
    const Space e1 = Space::euclidean(1);

    auto affine = compile_formula(e1, json{{"kind", "affine"}, {"scale", 0.5}});
    CHECK(affine(tv1(0.8))[0] == doctest::Approx(0.4).epsilon(1e-15));

    auto constant =
        compile_formula(e1, json{{"kind", "constant"}, {"value", {0.3}}});
    CHECK(constant(tv1(99.0))[0] == doctest::Approx(0.3).epsilon(1e-15));

    auto clamped = compile_formula(
        e1, json{{"kind", "clamp"}, {"lo", {0.0}}, {"hi", {1.0}},
                 {"inner", json{{"kind", "affine"}, {"scale", 2.0}}}});
    CHECK(clamped(tv1(0.7))[0] == doctest::Approx(1.0).epsilon(1e-15));

    // min(t, 0.3): the plateau mapping of the steep-point tests
    auto plateau = compile_formula(
        e1, json{{"kind", "min"},
                 {"terms",
                  {json{{"kind", "affine"}, {"scale", 1.0}},
                   json{{"kind", "constant"}, {"value", {0.3}}}}}});
    CHECK(plateau(tv1(0.1))[0] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(plateau(tv1(0.9))[0] == doctest::Approx(0.3).epsilon(1e-15));

    auto composed = compile_formula(
        e1, json{{"kind", "compose"},
                 {"outer", json{{"kind", "affine"}, {"scale", 0.5}}},
                 {"inner", json{{"kind", "affine"}, {"scale", 0.5}}}});
    CHECK(composed(tv1(1.0))[0] == doctest::Approx(0.25).epsilon(1e-15));

    const Space sph = Space::sphere(1.0);
    auto toward_pole = compile_formula(
        sph, json{{"kind", "geodesic"}, {"target", {0.0, 0.0, 1.0}}, {"lambda", 0.5}});
    const Vec moved = toward_pole(tv3(1, 0, 0));
    CHECK(distance(sph, moved, tv3(0, 0, 1)) == doctest::Approx(M_PI_4).epsilon(1e-12));

    CHECK_THROWS_AS(compile_formula(e1, json{{"kind", "nope"}}), ConfigInvalid);
}

TEST_CASE("run_suite validates configs before doing any work") {
    CHECK_THROWS_AS(run_suite(json::array()), ConfigInvalid);
    CHECK_THROWS_AS(run_suite(json{{"suite", "porosity"}}), ConfigInvalid);
    CHECK_THROWS_AS(run_suite(json{{"schema_version", 1}, {"suite", "bogus"}}),
                    ConfigInvalid);
    CHECK_THROWS_AS(run_suite(json{{"schema_version", 1},
                                   {"suite", "porosity"},
                                   {"seed", "forty-two"}}),
                    ConfigInvalid);
    CHECK_THROWS_AS(run_suite(json{{"schema_version", 1},
                                   {"suite", "porosity"},
                                   {"parameters", 7}}),
                    ConfigInvalid);
}

TEST_CASE("suite reports: determinism and the pass flag") {
    json config = default_config("hyperspace");
    config["parameters"]["random_checks"] = 10;
    const SuiteResult a = run_suite(config);
    const SuiteResult b = run_suite(config);
    CHECK(a.all_passed);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.csv == b.csv);

    json other = config;
    other["seed"] = 43;
    const SuiteResult c = run_suite(other);
    CHECK(c.all_passed);
    CHECK(c.report.dump() != a.report.dump());

    const std::string text = format_report(a.report);
    CHECK(text.find("overall: PASS") != std::string::npos);
    CHECK(text.find("golden_square_example") != std::string::npos);
}

TEST_CASE("format_report marks failures and names failing trials") {
    const json report = {
        {"schema_version", 1},
        {"suite", "porosity"},
        {"seed", 42},
        {"passed", false},
        {"certificates",
         {{{"name", "ball_exclusion"},
           {"passed", false},
           {"values",
            {{"threshold", 0.51}, {"failing_trials", {3, 17}}}}}}}};
    const std::string text = format_report(report);
    CHECK(text.find("overall: FAIL") != std::string::npos);
    CHECK(text.find("[FAIL] ball_exclusion") != std::string::npos);
    CHECK(text.find("failing trials: [3,17]") != std::string::npos);
}

TEST_CASE("default configs exist for every suite") {
    for (const std::string& name : suite_names()) {
        const json cfg = default_config(name);
        CHECK(cfg.at("schema_version") == 1);
        CHECK(cfg.at("suite") == name);
        CHECK(cfg.contains("parameters"));
    }
}
