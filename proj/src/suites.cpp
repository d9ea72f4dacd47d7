#include "mgeo/suites.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mgeo/extension.hpp"
#include "mgeo/hyperspace.hpp"

namespace mgeo {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvBuilder {
public:
    CsvBuilder() { rows_ << "section,index,metric,value,passed\n"; }

    void row(const std::string& section, long index, const std::string& metric,
             double value, bool passed) {
        rows_ << section << ',' << index << ',' << metric << ','
              << format_double(value) << ',' << (passed ? 1 : 0) << '\n';
    }

    std::string str() const { return rows_.str(); }

private:
    std::ostringstream rows_;
};

json cert_json(const Certificate& c) {
    return json{{"name", c.name}, {"passed", c.passed}, {"values", c.values}};
}

SuiteResult assemble(const std::string& suite, std::uint64_t seed,
                     const json& parameters, const std::vector<Certificate>& certs,
                     const CsvBuilder& csv) {
    SuiteResult result;
    json list = json::array();
    result.all_passed = true;
    for (const Certificate& c : certs) {
        list.push_back(cert_json(c));
        result.all_passed = result.all_passed && c.passed;
    }
    result.report = json{{"schema_version", 1},
                         {"suite", suite},
                         {"seed", seed},
                         {"parameters", parameters},
                         {"certificates", list},
                         {"passed", result.all_passed}};
    result.csv = csv.str();
    return result;
}

Region interval_region(double lo, double hi, int n, std::vector<Vec> centers) {
    const Space e1 = Space::euclidean(1);
    std::vector<Vec> samples;
    for (int i = 0; i < n; ++i) {
        Vec v(1);
        v << lo + (hi - lo) * i / (n - 1);
        samples.push_back(v);
    }
    Vec lo_v(1), hi_v(1);
    lo_v << lo;
    hi_v << hi;
    return make_region(e1, std::move(samples), MembershipSpec::box(lo_v, hi_v),
                       std::move(centers), true, true);
}

}  // namespace

std::pair<Vec, Vec> star_arm_tips() {
    Vec e(2), u(2);
    e << 1.0, 0.0;
    const double u1 = 17.0 / 18.0;
    u << u1, std::sqrt(1.0 - u1 * u1);
    return {e, u};
}

Region make_two_arm_star(int per_arm) {
    const Space e2 = Space::euclidean(2);
    const auto [e, u] = star_arm_tips();
    std::vector<Vec> samples;
    for (int i = 0; i < per_arm; ++i)
        samples.push_back(static_cast<double>(i) / (per_arm - 1) * e);
    for (int i = 0; i < per_arm; ++i)
        samples.push_back(static_cast<double>(i + 1) / per_arm * u);
    Vec origin = Vec::Zero(2);
    MembershipSpec spec = MembershipSpec::union_of(
        {MembershipSpec::segment_tube(origin, e, 1e-9),
         MembershipSpec::segment_tube(origin, u, 1e-9)});
    return make_region(e2, std::move(samples), std::move(spec), {origin}, false, true);
}

std::function<Vec(const Vec&)> star_gap_formula() {
    return [](const Vec& z) -> Vec {
        Vec out(2);
        if (z[1] > 1e-12) {
            out << 0.0, 0.0;
        } else {
            out << 0.5 * std::max(z[0] - 1.0 / 3.0, 0.0), 0.0;
        }
        return out;
    };
}

namespace {

// Deepest-clearance pick: the family segment whose endpoints admit the
// largest dyadic ball of U-membership probes, so the (r, eps) halving
// keeps room away from the boundary of U. Ties break to the lowest index.
FamilySegment pick_gamma(const SegmentFamilyG& family, const Region& U) {
    const Space& X = U.space;
    auto clearance = [&](const Vec& p) {
        double radius = std::isfinite(X.uniqueness_diameter())
                            ? X.uniqueness_diameter() / 4.0
                            : 1.0;
        for (int k = 0; k < 13; ++k) {
            bool ok = true;
            for (const Vec& probe : ball_grid(X, p, radius, 16)) {
                if (!U.contains(probe)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return radius;
            radius *= 0.5;
        }
        return 0.0;
    };
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < family.segments.size(); ++i) {
        const Segment& seg = family.segments[i].segment;
        const double c = std::min(clearance(seg.a), clearance(seg.b));
        if (c > best + 1e-15) {
            best = c;
            best_i = i;
        }
    }
    return family.segments[best_i];
}

}  // namespace

PorosityLab make_porosity_lab(int domain_samples, int range_samples) {
    PorosityLab lab;
    Vec zero(1), one(1), center(1);
    zero << 0.0;
    one << 1.0;
    center << 0.5;

    Region domain = interval_region(0.0, 1.0, domain_samples, {one});
    Region range = interval_region(0.0, 1.0, range_samples, {zero, one});
    lab.context = make_context(std::move(domain), std::move(range), zero);

    std::vector<Vec> u_samples;
    for (int i = 0; i < 89; ++i) {
        Vec v(1);
        v << 0.06 + 0.88 * i / 88.0;
        u_samples.push_back(v);
    }
    lab.U = make_region(Space::euclidean(1), std::move(u_samples),
                        MembershipSpec::ball(center, 0.45, true));

    lab.f = make_sampled(lab.context, std::function<Vec(const Vec&)>(
                                          [](const Vec& x) -> Vec { return 0.5 * x; }));
    validate_mapping(lab.f);
    lab.F = mcshane_weighted_extend(lab.f);
    lab.family = enumerate_family_G(lab.context->domain, lab.U);
    lab.gamma = pick_gamma(lab.family, lab.U);
    return lab;
}

// ---------------------------------------------------------------------------
// spaces suite

namespace {

std::vector<Certificate> run_spaces(const json& params, std::uint64_t seed,
                                    CsvBuilder& csv) {
    const int trials = params.value("trials", 1000);
    const double box = params.value("box", 2.0);
    std::vector<Certificate> certs;

    const std::vector<std::pair<std::string, Space>> kinds = {
        {"euclidean", Space::euclidean(2)},
        {"sup_norm", Space::sup_norm(3)},
        {"sphere", Space::sphere(1.0)},
        {"hyperbolic", Space::hyperbolic(-1.0)},
    };

    for (const auto& [name, sp] : kinds) {
        Rng rng(seed);
        const bool curved =
            sp.kind == SpaceKind::Sphere || sp.kind == SpaceKind::Hyperbolic;
        const double iso_tol = curved ? 1e-6 : 1e-9;
        const double D = sp.uniqueness_diameter();

        double worst_triangle = 0.0, worst_iso = 0.0;
        for (int k = 0; k < trials; ++k) {
            const Vec a = random_point(sp, rng, box), b = random_point(sp, rng, box),
                      c = random_point(sp, rng, box);
            const double slack =
                distance(sp, a, b) + distance(sp, b, c) - distance(sp, a, c);
            worst_triangle = std::max(worst_triangle, -slack);
            csv.row("triangle_" + name, k, "violation", std::max(0.0, -slack),
                    -slack <= 1e-9);
        }
        int done = 0;
        while (done < trials) {
            const Vec x = random_point(sp, rng, box), y = random_point(sp, rng, box);
            const double rho = distance(sp, x, y);
            if (rho >= D - 1e-6) continue;
            const double s = rng.uniform(), t = rng.uniform();
            const double dev = std::abs(distance(sp, geodesic_point(sp, x, y, s),
                                                 geodesic_point(sp, x, y, t)) -
                                        std::abs(s - t) * rho);
            worst_iso = std::max(worst_iso, dev);
            csv.row("isometry_" + name, done, "deviation", dev, dev <= iso_tol);
            ++done;
        }
        certs.push_back({"triangle_inequality_" + name, worst_triangle <= 1e-9,
                         json{{"max_violation", worst_triangle}, {"tolerance", 1e-9}}});
        certs.push_back({"segment_isometry_" + name, worst_iso <= iso_tol,
                         json{{"max_deviation", worst_iso}, {"tolerance", iso_tol}}});

        if (sp.kind == SpaceKind::Euclidean || sp.kind == SpaceKind::Hyperbolic) {
            double worst_hyp = 0.0;
            for (int k = 0; k < trials; ++k) {
                const Vec x = random_point(sp, rng, box), y = random_point(sp, rng, box),
                          z = random_point(sp, rng, box), w = random_point(sp, rng, box);
                const double t = rng.uniform();
                const double lhs = distance(sp, geodesic_point(sp, x, y, t),
                                            geodesic_point(sp, w, z, t));
                const double rhs =
                    (1.0 - t) * distance(sp, x, w) + t * distance(sp, y, z);
                worst_hyp = std::max(worst_hyp, lhs - rhs);
                csv.row("hyperbolic_inequality_" + name, k, "violation",
                        std::max(0.0, lhs - rhs), lhs - rhs <= 1e-9);
            }
            certs.push_back({"hyperbolic_inequality_" + name, worst_hyp <= 1e-9,
                             json{{"max_violation", worst_hyp}, {"tolerance", 1e-9}}});
        }
    }
    return certs;
}

// ---------------------------------------------------------------------------
// catcheck suite

std::vector<Certificate> run_catcheck(const json& params, std::uint64_t seed,
                                      CsvBuilder& csv) {
    const int triangles = params.value("triangles", 100);
    const int delta_pairs = params.value("delta_pairs", 20);
    const double sigma = params.value("sigma", 0.1);
    std::vector<Certificate> certs;
    const Space sph = Space::sphere(1.0);
    const Space e2 = Space::euclidean(2);

    {
        Rng rng(seed);
        double worst = -1.0;
        int done = 0;
        while (done < triangles) {
            const Vec a = random_point(sph, rng), b = random_point(sph, rng),
                      c = random_point(sph, rng);
            const double ab = distance(sph, a, b), bc = distance(sph, b, c),
                         ca = distance(sph, c, a);
            if (ab + bc + ca >= 2 * M_PI - 0.2) continue;
            if (std::max({ab, bc, ca}) > M_PI - 0.2) continue;
            const CatCheckReport rep = check_cat_inequality(sph, {a, b, c}, 1.0, 600);
            worst = std::max(worst, rep.max_violation);
            csv.row("cat_sphere_self", done, "max_violation", rep.max_violation,
                    rep.max_violation <= 1e-6);
            ++done;
        }
        certs.push_back({"cat_sphere_self_comparison", worst <= 1e-6,
                         json{{"max_violation", worst},
                              {"tolerance", 1e-6},
                              {"triangles", triangles}}});
    }
    {
        Rng rng(seed + 1);
        double worst = -1.0;
        for (int k = 0; k < triangles; ++k) {
            const Vec a = random_point(e2, rng, 0.8), b = random_point(e2, rng, 0.8),
                      c = random_point(e2, rng, 0.8);
            const CatCheckReport rep = check_cat_inequality(e2, {a, b, c}, 1.0, 600);
            worst = std::max(worst, rep.max_violation);
            csv.row("cat_euclidean_into_sphere", k, "max_violation", rep.max_violation,
                    rep.max_violation <= 1e-6);
        }
        certs.push_back({"cat_euclidean_into_sphere", worst <= 1e-6,
                         json{{"max_violation", worst}, {"tolerance", 1e-6}}});
    }
    {
        Rng rng(seed + 2);
        bool all_ok = true;
        double worst_ratio = 0.0;
        int done = 0;
        while (done < delta_pairs) {
            const Vec x = random_point(sph, rng), y = random_point(sph, rng);
            if (distance(sph, x, y) >= M_PI - 0.1) continue;
            const DeltaEstimateReport rep =
                estimate_delta(sph, x, y, sigma, seed + done);
            all_ok = all_ok && rep.delta > 0.0 && rep.worst_ratio <= 1.0 + sigma;
            worst_ratio = std::max(worst_ratio, rep.worst_ratio);
            csv.row("delta_sphere", done, "delta", rep.delta, rep.delta > 0.0);
            csv.row("delta_sphere", done, "worst_ratio", rep.worst_ratio,
                    rep.worst_ratio <= 1.0 + sigma);
            ++done;
        }
        certs.push_back({"temperate_delta_sphere", all_ok,
                         json{{"pairs", delta_pairs},
                              {"sigma", sigma},
                              {"worst_ratio", worst_ratio}}});

        Vec pole(3);
        pole << 0.0, 0.0, 1.0;
        const DeltaEstimateReport rep = estimate_delta(sph, pole, pole, sigma, seed);
        certs.push_back({"temperate_delta_coincident", rep.worst_ratio <= 1.0,
                         json{{"worst_ratio", rep.worst_ratio},
                              {"delta", rep.delta},
                              {"bound", 1.0}}});
        csv.row("delta_sphere_coincident", 0, "worst_ratio", rep.worst_ratio,
                rep.worst_ratio <= 1.0);
    }
    return certs;
}

// ---------------------------------------------------------------------------
// extension suite

std::vector<Certificate> run_extension(const json& params, std::uint64_t seed,
                                       CsvBuilder& csv) {
    const int sources = params.value("sources", 20);
    const double q = params.value("q", 0.5);
    const double q_prime = params.value("q_prime", 0.75);
    const double u0_pos = params.value("u0", 0.5);
    const double r = params.value("r", 0.4);
    const int E_size = params.value("source_samples", 120);
    const int pair_count = params.value("pairs", 10000);
    const int star_per_arm = params.value("star_points_per_arm", 100);

    std::vector<Certificate> certs;
    const Space e1 = Space::euclidean(1);
    const ExtensionLocality loc = locality_radius(q, q_prime);
    Vec u0(1);
    u0 << u0_pos;
    const double s_radius = loc.s(r);

    std::vector<Vec> E;
    for (int i = 0; i < E_size; ++i) {
        Vec v(1);
        v << 2.0 * i / (E_size - 1);
        E.push_back(v);
    }

    Rng rng(seed);
    double worst_agree = 0.0, worst_global = 0.0, worst_local = 0.0;
    bool all_ok = true;
    for (int src = 0; src < sources; ++src) {
        // random piecewise-linear source, gentle near u0, steeper far out
        constexpr int cells = 16;
        std::array<double, cells> slopes{};
        for (int c = 0; c < cells; ++c) {
            const double mid = (c + 0.5) * 2.0 / cells;
            const bool near = std::abs(mid - u0_pos) <= r + 0.15;
            slopes[c] = near ? rng.uniform(-0.45, 0.45) : rng.uniform(-0.95, 0.95);
        }
        auto eval_raw = [&](double x) {
            double val = 0.3, pos = 0.0;
            for (int c = 0; c < cells; ++c) {
                const double hi = (c + 1) * 2.0 / cells;
                const double seg = std::min(x, hi) - pos;
                if (seg <= 0) break;
                val += slopes[c] * seg;
                pos = hi;
            }
            return val;
        };
        std::vector<Vec> values;
        for (const Vec& z : E) {
            Vec v(1);
            v << eval_raw(z[0]);
            values.push_back(v);
        }

        // enforce the hypothesis LipHat(f, z) <= q on E cap B(u0, r) by
        // shrinking about the value at u0
        const double f_u0 = eval_raw(u0_pos);
        for (int attempt = 0; attempt < 60; ++attempt) {
            double hat = 0.0;
            for (std::size_t i = 0; i < E.size(); ++i) {
                if (std::abs(E[i][0] - u0_pos) >= r) continue;
                for (std::size_t j = 0; j < E.size(); ++j) {
                    if (j == i) continue;
                    hat = std::max(hat, std::abs(values[j][0] - values[i][0]) /
                                            std::abs(E[j][0] - E[i][0]));
                }
            }
            if (hat <= q * 0.999) break;
            const double scale = q * 0.99 / hat;
            for (Vec& v : values) v[0] = f_u0 + (v[0] - f_u0) * scale;
        }

        const ExtendedMapping F =
            mcshane_weighted_extend(e1, E, values, make_identity_embedding(e1));

        double agree = 0.0;
        for (std::size_t i = 0; i < E.size(); ++i)
            agree = std::max(
                agree, (F.evaluate(E[i]) - values[i]).lpNorm<Eigen::Infinity>());
        double global_q = 0.0;
        for (int k = 0; k < pair_count; ++k) {
            Vec y1(1), y2(1);
            y1 << rng.uniform(0.0, 2.0);
            y2 << rng.uniform(0.0, 2.0);
            const double d = std::abs(y1[0] - y2[0]);
            if (d < 1e-12) continue;
            global_q = std::max(global_q, (F.evaluate(y1) - F.evaluate(y2))
                                                  .lpNorm<Eigen::Infinity>() /
                                              d);
        }
        std::vector<std::pair<Vec, Vec>> local_pairs;
        for (int k = 0; k < pair_count; ++k) {
            Vec y1(1), y2(1);
            y1 << u0_pos + s_radius * 0.999 * rng.uniform(-1, 1);
            y2 << u0_pos + s_radius * 0.999 * rng.uniform(-1, 1);
            local_pairs.emplace_back(y1, y2);
        }
        const LocalContractionReport lrep =
            certify_local_contraction(F, loc, u0, r, local_pairs);

        const bool ok = agree <= 1e-9 && global_q <= 1.0 + 1e-9 &&
                        lrep.max_quotient <= q_prime + 1e-9;
        all_ok = all_ok && ok;
        worst_agree = std::max(worst_agree, agree);
        worst_global = std::max(worst_global, global_q);
        worst_local = std::max(worst_local, lrep.max_quotient);
        csv.row("extension_sources", src, "agreement", agree, agree <= 1e-9);
        csv.row("extension_sources", src, "global_quotient", global_q,
                global_q <= 1.0 + 1e-9);
        csv.row("extension_sources", src, "local_quotient", lrep.max_quotient,
                lrep.max_quotient <= q_prime + 1e-9);
    }
    certs.push_back({"weighted_extension_lemma", all_ok,
                     json{{"sources", sources},
                          {"q", q},
                          {"q_prime", q_prime},
                          {"N", loc.N},
                          {"s", s_radius},
                          {"max_agreement_error", worst_agree},
                          {"max_global_quotient", worst_global},
                          {"max_local_quotient", worst_local}}});

    // pointwise-vs-global gap on the two-arm star
    {
        Region star = make_two_arm_star(star_per_arm);
        Region range = star;
        ContextPtr ctx =
            make_context(std::move(star), std::move(range), Vec::Zero(2));
        SampledMapping f = make_sampled(ctx, star_gap_formula());
        const LipschitzReport rep =
            lipschitz_constants(f, default_radii(ctx->domain));
        double max_pointwise = 0.0;
        for (std::size_t i = 0; i < rep.lip_at_rmin.size(); ++i) {
            max_pointwise = std::max(max_pointwise, rep.lip_at_rmin[i]);
            csv.row("star_pointwise", static_cast<long>(i), "lip_at_rmin",
                    rep.lip_at_rmin[i], rep.lip_at_rmin[i] <= 0.52);
        }
        const auto [e, u] = star_arm_tips();
        const double witness_q =
            distance(ctx->range.space, f.formula(e), f.formula(u)) /
            distance(ctx->domain.space, e, u);
        const bool ok =
            max_pointwise <= 0.52 && rep.global_lip >= 0.98 && witness_q >= 0.98;
        certs.push_back({"star_pointwise_vs_global", ok,
                         json{{"samples", ctx->domain.samples.size()},
                              {"max_pointwise", max_pointwise},
                              {"global_lip", rep.global_lip},
                              {"witness_pair_quotient", witness_q}}});
    }
    return certs;
}

// ---------------------------------------------------------------------------
// porosity suite

std::vector<Certificate> run_porosity(const json& params, std::uint64_t seed,
                                      CsvBuilder& csv) {
    json cell_cfg = params.value("cell", json::object());
    const double a = cell_cfg.value("a", params.value("a", 0.5));
    const double b = cell_cfg.value("b", params.value("b", 0.505));
    const int p = cell_cfg.value("p", params.value("p", 2));
    const int trials = params.value("trials", 100);
    const json grids = params.value("grids", json::object());
    const int segment_grid = grids.value("segment", 64);

    std::vector<Certificate> certs;
    PorosityLab lab;
    if (params.contains("domain")) {
        // fully configured workbench: regions, base point and formula all
        // come from the config
        Region domain = region_from_json(params.at("domain"));
        Region range = params.contains("range")
                           ? region_from_json(params.at("range"))
                           : domain;
        const Vec theta = params.contains("theta")
                              ? vec_from_json(params.at("theta"))
                              : domain.samples.at(0);
        const Space domain_space = domain.space;
        lab.context = make_context(std::move(domain), std::move(range), theta);
        lab.U = region_from_json(params.at("U"));
        lab.f = make_sampled(lab.context,
                             compile_formula(domain_space, params.at("formula")));
        lab.F = mcshane_weighted_extend(lab.f);
        lab.family = enumerate_family_G(lab.context->domain, lab.U);
        lab.gamma = pick_gamma(lab.family, lab.U);
    } else {
        lab = make_porosity_lab(params.value("domain_samples", 401),
                                params.value("range_samples", 201));
    }

    const PorosityCell pinned{a, b, p};
    certs.push_back(
        {"cell_feasibility", pinned.feasible_for_witness(),
         json{{"a", a},
              {"b", b},
              {"p", p},
              {"b_minus_a", b - a},
              {"bound", a / (48.0 * (p - 1))},
              {"sigma", pinned.sigma()},
              {"one_plus_3sigma_times", (1 + 3 * pinned.sigma()) * (1.0 - 1.0 / p)}}});

    // classification demo: the boundary mapping lands in a straddling cell
    const PorosityCell straddle{a - 0.004, b - 0.001, p};
    const ClassifyOutcome outcome =
        classify_cell(lab.f, lab.U, lab.family, {straddle, pinned}, segment_grid);
    certs.push_back({"classification",
                     outcome.tag == ClassifyOutcome::Tag::Cell &&
                         outcome.cell_index == 0,
                     json{{"sup_family_lip", outcome.sup_family_lip},
                          {"extension_estimate", outcome.extension_estimate},
                          {"cell_index", outcome.cell_index}}});

    BuildPlanOptions plan_options;
    plan_options.steep_candidates = grids.value("steep_candidates", 128);
    const PerturbationPlan plan =
        build_plan(lab.f, lab.F, pinned, lab.U, lab.gamma, plan_options);
    certs.push_back({"plan_constants", plan.eps > 0 && plan.r > 0 && plan.s > 0,
                     json{{"sigma", plan.sigma},
                          {"r0", plan.r0},
                          {"r", plan.r},
                          {"eps0", plan.eps0},
                          {"eps", plan.eps},
                          {"s", plan.s},
                          {"u0", to_json(plan.u0)},
                          {"x0", to_json(plan.x0)},
                          {"rho_u0_x0", plan.rho_u0_target}}});

    const BetaCertificate beta = certify_beta(plan);
    certs.push_back({"beta_conditions", beta.passed,
                     json{{"membership_ok", beta.membership_ok},
                          {"max_displacement", beta.max_displacement},
                          {"eps", plan.eps},
                          {"sampled_lip", beta.sampled_lip},
                          {"lip_bound", beta.lip_bound}}});

    const GWitness witness = build_witness_G(plan);
    certs.push_back(
        {"witness_G_conditions",
         witness.membership_ok && witness.max_dist_linf <= plan.eps + 1e-9 &&
             witness.max_dist_range <= plan.eps + 1e-9 &&
             witness.sampled_lip_g <= 1.0 + 1e-9 && witness.probe_in_gamma &&
             witness.steepness > witness.steepness_bound,
         json{{"membership_ok", witness.membership_ok},
              {"max_dist_linf", witness.max_dist_linf},
              {"max_dist_range", witness.max_dist_range},
              {"sampled_lip_G", witness.sampled_lip_g},
              {"probe_in_gamma", witness.probe_in_gamma},
              {"steepness", witness.steepness},
              {"steepness_bound", witness.steepness_bound}}});

    const WitnessCertificate excl =
        certify_ball_exclusion(witness, plan, trials, seed, segment_grid);
    json failing = json::array();
    for (std::size_t i = 0; i < excl.trial_lips.size(); ++i) {
        const bool ok = excl.trial_lips[i] > b;
        if (!ok) failing.push_back(i);
        csv.row("ball_exclusion", static_cast<long>(i), "restricted_lip",
                excl.trial_lips[i], ok);
        csv.row("ball_exclusion", static_cast<long>(i), "endpoint_quotient",
                excl.trial_endpoint_quotients[i],
                excl.trial_endpoint_quotients[i] >= excl.steepness_bound - 1e-6);
    }
    certs.push_back({"ball_exclusion", excl.passed,
                     json{{"radius", excl.excluded_ball_radius},
                          {"threshold", excl.steepness_bound},
                          {"b", b},
                          {"trials", excl.trials},
                          {"min_restricted_lip", excl.min_observed_restricted_lip},
                          {"min_endpoint_quotient", excl.min_endpoint_quotient},
                          {"failing_trials", failing}}});

    // the constant-mapping witness on the same workbench
    {
        const json cp = params.value("constant", json::object());
        ConstantWitnessParams cwp;
        cwp.sigma = cp.value("sigma", 0.2);
        cwp.eps = cp.value("eps", 0.1);
        cwp.trials = cp.value("trials", 100);
        cwp.seed = seed + 1;
        Vec c(1);
        c << cp.value("value", 0.3);
        SampledMapping f0 = make_sampled(
            lab.context,
            std::function<Vec(const Vec&)>([c](const Vec&) { return c; }));
        const ExtendedMapping F0 = mcshane_weighted_extend(f0);
        const auto [g0, cert] =
            constant_mapping_witness(f0, lab.U, F0, std::nullopt, cwp);
        json cfailing = json::array();
        for (std::size_t i = 0; i < cert.trial_displacements.size(); ++i) {
            const bool ok =
                cert.trial_displacements[i] >= cert.nonconstant_threshold - 1e-9;
            if (!ok) cfailing.push_back(i);
            csv.row("constant_witness", static_cast<long>(i), "displacement",
                    cert.trial_displacements[i], ok);
        }
        certs.push_back({"constant_mapping_witness", cert.passed,
                         json{{"sigma", cert.sigma},
                              {"eps", cert.eps},
                              {"eps0", cert.eps0},
                              {"r", cert.r},
                              {"displacement", cert.displacement},
                              {"expected_displacement", cert.expected_displacement},
                              {"trial_radius", cert.trial_radius},
                              {"nonconstant_threshold", cert.nonconstant_threshold},
                              {"min_trial_displacement", cert.min_trial_displacement},
                              {"failing_trials", cfailing}}});
    }
    return certs;
}

// ---------------------------------------------------------------------------
// hyperspace suite

std::vector<Certificate> run_hyperspace(const json& params, std::uint64_t seed,
                                        CsvBuilder& csv) {
    const int random_checks = params.value("random_checks", 50);
    const int grid_n = params.value("grid", 33);
    std::vector<Certificate> certs;
    const Space e2 = Space::euclidean(2);

    std::vector<double> grid;
    for (int i = 0; i < grid_n; ++i)
        grid.push_back(static_cast<double>(i) / (grid_n - 1));

    auto vec2 = [](double x, double y) {
        Vec v(2);
        v << x, y;
        return v;
    };

    // golden values on C = [-1, 1]^2
    {
        const HyperPoint A = make_hyperpoint(e2, {vec2(-1, -1), vec2(-1, 1)});
        const HyperPoint B = make_hyperpoint(e2, {vec2(1, -1), vec2(1, 1)});
        const double hAB = hausdorff_distance(A, B);
        const HyperPoint mid = minkowski_combination(A, B, 0.5);
        const double hMidA = hausdorff_distance(mid, A);
        const double sqrt2 = std::sqrt(2.0);
        const bool ok = hAB == 2.0 && std::abs(hMidA - sqrt2) <= 1e-12 &&
                        mid.members.size() == 3;
        certs.push_back({"golden_square_example", ok,
                         json{{"h_A_B", hAB},
                              {"h_mid_A", hMidA},
                              {"expected_h_mid_A", sqrt2},
                              {"midpoint_size", mid.members.size()}}});
        // the required negative check: the two-set combination is NOT an
        // isometric segment, its deviation from (1/2) h(A,B) is large
        const double gap = std::abs(hMidA - 0.5 * hAB);
        certs.push_back({"two_set_combination_not_isometric", gap > 0.4,
                         json{{"deviation", gap}, {"expected", sqrt2 - 1.0}}});
        csv.row("golden", 0, "h_A_B", hAB, hAB == 2.0);
        csv.row("golden", 1, "h_mid_A", hMidA, std::abs(hMidA - sqrt2) <= 1e-12);
    }

    Rng rng(seed);
    auto random_cloud = [&](int max_members) {
        const int m = 1 + static_cast<int>(rng.index(max_members));
        std::vector<Vec> pts;
        for (int i = 0; i < m; ++i)
            pts.push_back(random_in_ball(e2, Vec::Zero(2), 1.0, rng));
        return make_hyperpoint(e2, std::move(pts));
    };

    {
        double worst = 0.0;
        for (int k = 0; k < random_checks; ++k) {
            const HyperPoint A = random_cloud(6);
            const HyperReport rep =
                verify_hypersegment_isometry(A, Vec::Zero(2), grid);
            worst = std::max(worst, rep.max_deviation);
            csv.row("segment_isometry", k, "max_deviation", rep.max_deviation,
                    rep.max_deviation <= 1e-9);
        }
        certs.push_back({"hypersegment_isometry", worst <= 1e-9,
                         json{{"max_deviation", worst}, {"tolerance", 1e-9}}});
    }
    {
        double worst = 0.0;
        for (int k = 0; k < random_checks; ++k) {
            const HyperPoint A = random_cloud(5), B = random_cloud(5);
            const HyperPoint E = make_hyperpoint(e2, {Vec::Zero(2)});
            const HyperReport rep =
                verify_hyperbolic_inequality_singleton(A, B, E, grid);
            worst = std::max(worst, rep.max_deviation);
            csv.row("hyperbolic_inequality_singleton_E", k, "max_violation",
                    rep.max_deviation, rep.max_deviation <= 1e-9);

            const HyperPoint c1 =
                make_hyperpoint(e2, {random_in_ball(e2, Vec::Zero(2), 1.0, rng)});
            const HyperPoint c2 =
                make_hyperpoint(e2, {random_in_ball(e2, Vec::Zero(2), 1.0, rng)});
            const HyperPoint E2 = random_cloud(5);
            const HyperReport rep2 =
                verify_hyperbolic_inequality_singleton(c1, c2, E2, grid);
            worst = std::max(worst, rep2.max_deviation);
            csv.row("hyperbolic_inequality_singleton_AB", k, "max_violation",
                    rep2.max_deviation, rep2.max_deviation <= 1e-9);
        }
        certs.push_back({"hyperbolic_inequality", worst <= 1e-9,
                         json{{"max_violation", worst}, {"tolerance", 1e-9}}});
    }
    {
        // metric axioms and the contraction identity toward singletons
        double worst_tri = 0.0, worst_contract = 0.0;
        for (int k = 0; k < random_checks; ++k) {
            const HyperPoint A = random_cloud(8), B = random_cloud(8),
                             C = random_cloud(8);
            const double slack = hausdorff_distance(A, C) -
                                 hausdorff_distance(A, B) - hausdorff_distance(B, C);
            worst_tri = std::max(worst_tri, slack);
            const Vec c = random_in_ball(e2, Vec::Zero(2), 1.0, rng);
            const HyperPoint singleton = make_hyperpoint(e2, {c});
            const double base = hausdorff_distance(A, singleton);
            for (const double l : {0.25, 0.5, 0.75}) {
                const double got =
                    hausdorff_distance(set_convex_combination(A, c, l), singleton);
                worst_contract =
                    std::max(worst_contract, std::abs(got - (1.0 - l) * base));
            }
            csv.row("metric_axioms", k, "triangle_slack", std::max(0.0, slack),
                    slack <= 1e-9);
        }
        certs.push_back({"hausdorff_metric_axioms", worst_tri <= 1e-9,
                         json{{"max_violation", worst_tri}, {"tolerance", 1e-9}}});
        certs.push_back({"contraction_toward_singleton", worst_contract <= 1e-9,
                         json{{"max_deviation", worst_contract}, {"tolerance", 1e-9}}});
    }
    {
        // star(B(C)) on the unit disc: singletons over the listed centers
        std::vector<Vec> samples;
        for (int i = 0; i < 24; ++i)
            samples.push_back(random_in_ball(e2, Vec::Zero(2), 0.98, rng));
        Region disc =
            make_region(e2, samples, MembershipSpec::ball(Vec::Zero(2), 1.0, true),
                        {Vec::Zero(2)}, true, true);
        std::vector<HyperPoint> panel;
        for (int k = 0; k < 6; ++k) panel.push_back(random_cloud(4));
        const std::vector<HyperPoint> star = star_of_hyperspace(disc, panel);
        certs.push_back(
            {"hyperspace_star",
             star.size() == 1 && star[0].members.size() == 1,
             json{{"centers", star.size()}}});
    }
    return certs;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::string> suite_names() {
    return {"spaces", "extension", "porosity", "hyperspace", "catcheck"};
}

json default_config(const std::string& suite) {
    json params = json::object();
    if (suite == "spaces") params = {{"trials", 1000}, {"box", 2.0}};
    if (suite == "catcheck")
        params = {{"triangles", 100}, {"delta_pairs", 20}, {"sigma", 0.1}};
    if (suite == "extension")
        params = {{"sources", 20},     {"q", 0.5},
                  {"q_prime", 0.75},   {"u0", 0.5},
                  {"r", 0.4},          {"source_samples", 120},
                  {"pairs", 10000},    {"star_points_per_arm", 100}};
    if (suite == "porosity")
        params = {{"cell", {{"a", 0.5}, {"b", 0.505}, {"p", 2}}},
                  {"trials", 100},
                  {"domain_samples", 401},
                  {"range_samples", 201},
                  {"grids", {{"segment", 64}, {"steep_candidates", 128}}},
                  {"constant",
                   {{"sigma", 0.2}, {"eps", 0.1}, {"trials", 100}, {"value", 0.3}}}};
    if (suite == "hyperspace") params = {{"random_checks", 50}, {"grid", 33}};
    return json{{"schema_version", 1},
                {"suite", suite},
                {"seed", 42},
                {"parameters", params}};
}

SuiteResult run_suite(const json& config) {
    if (!config.is_object()) throw ConfigInvalid("config must be a JSON object");
    if (config.value("schema_version", -1) != 1)
        throw ConfigInvalid("schema_version must be 1");
    if (!config.contains("suite") || !config.at("suite").is_string())
        throw ConfigInvalid("config needs a 'suite' string");
    const std::string suite = config.at("suite").get<std::string>();
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw ConfigInvalid("unknown suite '" + suite + "'");
    if (config.contains("seed") && !config.at("seed").is_number_integer())
        throw ConfigInvalid("seed must be an integer");
    const std::uint64_t seed = config.value("seed", 42);
    json params = config.value("parameters", json::object());
    if (!params.is_object()) throw ConfigInvalid("parameters must be an object");

    CsvBuilder csv;
    std::vector<Certificate> certs;
    if (suite == "spaces") certs = run_spaces(params, seed, csv);
    if (suite == "catcheck") certs = run_catcheck(params, seed, csv);
    if (suite == "extension") certs = run_extension(params, seed, csv);
    if (suite == "porosity") certs = run_porosity(params, seed, csv);
    if (suite == "hyperspace") certs = run_hyperspace(params, seed, csv);
    return assemble(suite, seed, params, certs, csv);
}

void write_outputs(const SuiteResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir + "/report.json");
        out << result.report.dump(2) << '\n';
    }
    {
        std::ofstream out(out_dir + "/details.csv");
        out << result.csv;
    }
}

std::string format_report(const json& report) {
    std::ostringstream out;
    out << "suite: " << report.value("suite", std::string("?"))
        << "  seed: " << report.value("seed", 0)
        << "  overall: " << (report.value("passed", false) ? "PASS" : "FAIL")
        << "\n";
    for (const auto& cert : report.value("certificates", json::array())) {
        out << "  [" << (cert.value("passed", false) ? "PASS" : "FAIL") << "] "
            << cert.value("name", std::string("?"));
        const json values = cert.value("values", json::object());
        bool first = true;
        for (const auto& [key, val] : values.items()) {
            if (key == "failing_trials") continue;
            out << (first ? "  (" : ", ") << key << "=" << val.dump();
            first = false;
        }
        if (!first) out << ")";
        if (values.contains("failing_trials") && !values["failing_trials"].empty())
            out << "  failing trials: " << values["failing_trials"].dump();
        out << "\n";
    }
    return out.str();
}

}  // namespace mgeo
