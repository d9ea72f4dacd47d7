// Acceptance runner: executes every top-level criterion at its stated
// tolerance and runtime budget, printing one PASS/FAIL line per
// criterion. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <string>

#include "mgeo/hyperspace.hpp"
#include "mgeo/suites.hpp"

using namespace mgeo;

namespace {

int failures = 0;

class Criterion {
public:
    Criterion(int index, std::string title, double budget_seconds)
        : index_(index), title_(std::move(title)), budget_(budget_seconds),
          start_(std::chrono::steady_clock::now()) {}

    void check(bool ok, const std::string& detail) {
        if (!ok) reasons_ += (reasons_.empty() ? "" : "; ") + detail;
        passed_ = passed_ && ok;
    }

    void finish() {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                .count();
        if (elapsed >= budget_)
            check(false, "runtime " + std::to_string(elapsed) + "s over budget");
        std::printf("%s criterion %d: %s (%.2fs)%s%s\n",
                    passed_ ? "PASS" : "FAIL", index_, title_.c_str(), elapsed,
                    reasons_.empty() ? "" : " -- ", reasons_.c_str());
        if (!passed_) ++failures;
    }

private:
    int index_;
    std::string title_;
    double budget_;
    std::chrono::steady_clock::time_point start_;
    bool passed_ = true;
    std::string reasons_;
};

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

json find_cert(const json& report, const std::string& name) {
    for (const auto& cert : report.at("certificates"))
        if (cert.at("name") == name) return cert;
    return json{{"name", name}, {"passed", false}, {"values", json::object()}};
}

// 1. hyperspace golden values on C = [-1,1]^2
void criterion_1() {
    Criterion c(1, "hyperspace golden values h(A,B)=2, h(mid,A)=sqrt 2", 1.0);
    const Space e2 = Space::euclidean(2);
    const HyperPoint A = make_hyperpoint(e2, {v2(-1, -1), v2(-1, 1)});
    const HyperPoint B = make_hyperpoint(e2, {v2(1, -1), v2(1, 1)});
    const double hAB = hausdorff_distance(A, B);
    c.check(hAB == 2.0, "h(A,B) = " + std::to_string(hAB) + " != 2 exactly");
    const HyperPoint mid = minkowski_combination(A, B, 0.5);
    const double hMidA = hausdorff_distance(mid, A);
    c.check(std::abs(hMidA - std::sqrt(2.0)) <= 1e-12,
            "h(mid,A) off sqrt(2) by " + std::to_string(hMidA - std::sqrt(2.0)));
    c.finish();
}

// 2. pointwise-vs-global reproduction on the 200-point two-arm star
void criterion_2() {
    Criterion c(2, "two-arm star: pointwise lip <= 0.52, global >= 0.98 at (e,u)",
                1.0);
    Region star = make_two_arm_star(100);
    c.check(star.samples.size() == 200, "sampling is not 200 points");
    Region range = star;
    ContextPtr ctx = make_context(std::move(star), std::move(range), Vec::Zero(2));
    SampledMapping f = make_sampled(ctx, star_gap_formula());
    const LipschitzReport rep = lipschitz_constants(f, default_radii(ctx->domain));
    double max_pointwise = 0.0;
    for (const double v : rep.lip_at_rmin) max_pointwise = std::max(max_pointwise, v);
    c.check(max_pointwise <= 0.52,
            "pointwise lip " + std::to_string(max_pointwise) + " > 0.52");
    c.check(rep.global_lip >= 0.98,
            "global lip " + std::to_string(rep.global_lip) + " < 0.98");
    const auto [e, u] = star_arm_tips();
    const double witness = distance(ctx->range.space, f.formula(e), f.formula(u)) /
                           distance(ctx->domain.space, e, u);
    c.check(witness >= 0.98, "witness pair (e,u) quotient " +
                                 std::to_string(witness) + " < 0.98");
    c.finish();
}

// 3. segment isometry per kind: 1000 random quadruples each
void criterion_3() {
    Criterion c(3, "segment isometry: 1e-9 flat kinds, 1e-6 curved kinds", 5.0);
    Rng rng(42);
    for (const auto& [name, sp, tol] :
         {std::tuple<std::string, Space, double>{"euclidean", Space::euclidean(2), 1e-9},
          {"sup_norm", Space::sup_norm(3), 1e-9},
          {"sphere", Space::sphere(1.0), 1e-6},
          {"hyperbolic", Space::hyperbolic(-1.0), 1e-6}}) {
        const double D = sp.uniqueness_diameter();
        double worst = 0.0;
        int done = 0;
        while (done < 1000) {
            const Vec x = random_point(sp, rng), y = random_point(sp, rng);
            const double rho = distance(sp, x, y);
            if (rho >= D - 1e-6) continue;
            const double s = rng.uniform(), t = rng.uniform();
            worst = std::max(worst, std::abs(distance(sp, geodesic_point(sp, x, y, s),
                                                      geodesic_point(sp, x, y, t)) -
                                             std::abs(s - t) * rho));
            ++done;
        }
        c.check(worst <= tol,
                name + " deviation " + std::to_string(worst) + " > tolerance");
    }
    c.finish();
}

// 4. the extension lemma on 20 random piecewise-linear sources
void criterion_4() {
    Criterion c(4, "weighted extension: agree 1e-9, global 1, local 0.75 at N=5",
                30.0);
    const json report = run_suite(default_config("extension")).report;
    const json cert = find_cert(report, "weighted_extension_lemma");
    const json& vals = cert.at("values");
    c.check(cert.at("passed").get<bool>(), "extension certificate failed");
    c.check(vals.at("N").get<long>() == 5, "N != 5 for q'/q = 1.5");
    c.check(vals.at("max_agreement_error").get<double>() <= 1e-9,
            "agreement above 1e-9");
    c.check(vals.at("max_global_quotient").get<double>() <= 1.0 + 1e-9,
            "global quotient above 1 + 1e-9");
    c.check(vals.at("max_local_quotient").get<double>() <= 0.75 + 1e-9,
            "local quotient above 0.75 + 1e-9");
    c.finish();
}

// 5 + 6 + 9. porosity witness, constant witness and determinism
void criteria_5_6_9() {
    json config = default_config("porosity");

    Criterion c5(5, "porosity witness: sigma=0.16, threshold 0.51, 100 trials",
                 60.0);
    const SuiteResult first = run_suite(config);
    {
        const json feas = find_cert(first.report, "cell_feasibility").at("values");
        c5.check(feas.at("b_minus_a").get<double>() <
                     feas.at("bound").get<double>(),
                 "feasibility arithmetic failed");
        c5.check(std::abs(feas.at("sigma").get<double>() - 0.16) <= 1e-12,
                 "sigma != 0.16");
        const json witness = find_cert(first.report, "witness_G_conditions");
        c5.check(witness.at("passed").get<bool>(), "witness conditions failed");
        const json& wv = witness.at("values");
        c5.check(std::abs(wv.at("steepness_bound").get<double>() - 0.52) <= 1e-12,
                 "steepness bound != a(1+sigma/4) = 0.52");
        c5.check(wv.at("steepness").get<double>() > 0.52, "steepness <= 0.52");
        const json excl = find_cert(first.report, "ball_exclusion");
        c5.check(excl.at("passed").get<bool>(), "ball exclusion failed");
        const json& ev = excl.at("values");
        c5.check(std::abs(ev.at("threshold").get<double>() - 0.51) <= 1e-12,
                 "threshold != a(1+sigma/8) = 0.51");
        c5.check(ev.at("threshold").get<double>() > 0.505, "threshold <= b");
        c5.check(ev.at("trials").get<int>() == 100, "not 100 trials");
        c5.check(ev.at("min_restricted_lip").get<double>() > 0.505,
                 "a trial fell to restricted lip <= b");
    }
    c5.finish();

    Criterion c6(6, "constant-mapping witness: displacement sigma*eps/2, 100 trials",
                 10.0);
    {
        const json cw = find_cert(first.report, "constant_mapping_witness");
        c6.check(cw.at("passed").get<bool>(), "constant witness failed");
        const json& cv = cw.at("values");
        c6.check(std::abs(cv.at("displacement").get<double>() -
                          cv.at("expected_displacement").get<double>()) <= 1e-9,
                 "displacement not sigma*eps/2 within 1e-9");
        c6.check(cv.at("failing_trials").empty(), "some trial was constant");
        c6.check(cv.at("min_trial_displacement").get<double>() > 0.0,
                 "a trial collapsed to constant");
    }
    c6.finish();

    Criterion c9(9, "determinism: two porosity runs at seed 42 byte-identical",
                 130.0);
    const SuiteResult second = run_suite(config);
    c9.check(first.report.dump(2) == second.report.dump(2),
             "report payloads differ");
    c9.check(first.csv == second.csv, "CSV payloads differ");
    c9.finish();
}

// 7. CAT and temperate-curvature suite
void criterion_7() {
    Criterion c(7, "CAT comparisons 1e-6 and certified deltas on the sphere",
                60.0);
    const json report = run_suite(default_config("catcheck")).report;
    const json self_cmp = find_cert(report, "cat_sphere_self_comparison");
    c.check(self_cmp.at("passed").get<bool>() &&
                self_cmp.at("values").at("max_violation").get<double>() <= 1e-6,
            "sphere self-comparison violation above 1e-6");
    const json flat = find_cert(report, "cat_euclidean_into_sphere");
    c.check(flat.at("passed").get<bool>() &&
                flat.at("values").at("max_violation").get<double>() <= 1e-6,
            "euclidean-into-M_1 violation above 1e-6");
    const json delta = find_cert(report, "temperate_delta_sphere");
    c.check(delta.at("passed").get<bool>(), "a random pair failed to certify");
    c.check(delta.at("values").at("pairs").get<int>() == 20, "not 20 pairs");
    const json coincident = find_cert(report, "temperate_delta_coincident");
    c.check(coincident.at("passed").get<bool>() &&
                coincident.at("values").at("worst_ratio").get<double>() <= 1.0,
            "coincident-pair ratio above 1");
    c.finish();
}

// 8. oracle equivalence: Hausdorff double loop and componentwise identity
void criterion_8() {
    Criterion c(8, "oracle equivalence: Hausdorff and componentwise identities",
                10.0);
    const Space e2 = Space::euclidean(2);
    Rng rng(8);
    bool exact = true;
    for (int k = 0; k < 500; ++k) {
        std::vector<Vec> pa, pb;
        for (int i = 0; i < 1 + static_cast<int>(rng.index(8)); ++i)
            pa.push_back(random_point(e2, rng));
        for (int i = 0; i < 1 + static_cast<int>(rng.index(8)); ++i)
            pb.push_back(random_point(e2, rng));
        const HyperPoint A = make_hyperpoint(e2, pa);
        const HyperPoint B = make_hyperpoint(e2, pb);

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
        exact = exact && hausdorff_distance(A, B) == std::max(sup_ab, sup_ba);
    }
    c.check(exact, "Hausdorff disagreed with the double-loop oracle");

    const Space e1 = Space::euclidean(1);
    std::vector<Vec> samples;
    for (int i = 0; i < 40; ++i) samples.push_back(v1(i / 39.0));
    double worst_gap = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<std::vector<double>> comps(2 + rng.index(5));
        for (auto& comp : comps) {
            double val = rng.uniform(-1, 1), slope = rng.uniform(-1, 1);
            double prev = samples[0][0];
            for (const Vec& x : samples) {
                if (rng.uniform() < 0.2) slope = rng.uniform(-1, 1);
                val += slope * (x[0] - prev);
                prev = x[0];
                comp.push_back(val);
            }
        }
        const ComponentLipReport r = componentwise_lip_identity(e1, samples, comps);
        worst_gap = std::max({worst_gap, r.global_gap, r.max_lip_hat_gap});
    }
    c.check(worst_gap <= 1e-9, "componentwise identity gap " +
                                   std::to_string(worst_gap) + " > 1e-9");
    c.finish();
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criteria_5_6_9();
    criterion_7();
    criterion_8();
    if (failures == 0) std::printf("all acceptance criteria passed\n");
    return failures;
}
