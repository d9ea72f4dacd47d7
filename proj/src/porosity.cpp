#include "mgeo/porosity.hpp"

#include <algorithm>
#include <cmath>

namespace mgeo {

namespace {

// Points of U used for the sampled lip(F|U) estimate: the extension's
// source points plus U's own samples, membership-filtered.
std::vector<Vec> points_in_U(const ExtendedMapping& F, const Region& U) {
    std::vector<Vec> pts;
    for (const Vec& z : F.source_points)
        if (U.contains(z)) pts.push_back(z);
    for (const Vec& z : U.samples)
        if (U.contains(z)) pts.push_back(z);
    return pts;
}

}  // namespace

double extension_lip_on(const ExtendedMapping& F, const Region& U) {
    const std::vector<Vec> pts = points_in_U(F, U);
    std::vector<Vec> vals;
    vals.reserve(pts.size());
    for (const Vec& p : pts) vals.push_back(F.evaluate(p));
    double sup = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d = distance(F.domain_space, pts[i], pts[j]);
            if (d < kTolStructural) continue;
            sup = std::max(sup, (vals[i] - vals[j]).lpNorm<Eigen::Infinity>() / d);
        }
    }
    return sup;
}

ClassifyOutcome classify_cell(const SampledMapping& f, const Region& U,
                              const SegmentFamilyG& family,
                              const std::vector<PorosityCell>& cells, int grid_n) {
    for (const PorosityCell& cell : cells) {
        if (!(0.0 < cell.a && cell.a < cell.b && cell.b < 1.0 && cell.p >= 2))
            throw Error("malformed porosity cell");
        if (!cell.feasible_for_witness())
            throw Error("cell violates the witness feasibility condition");
    }

    ClassifyOutcome out;
    out.sup_family_lip = sup_family_lip(f, family, grid_n);
    const ExtendedMapping F = mcshane_weighted_extend(f);
    out.extension_estimate = extension_lip_on(F, U);

    if (out.sup_family_lip <= kTolStructural) {
        out.tag = out.extension_estimate < 1.0 - kTolMetric ? ClassifyOutcome::Tag::QZero
                                                            : ClassifyOutcome::Tag::NotInQ;
        return out;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const PorosityCell& cell = cells[i];
        // boundary comparisons at the metric tolerance: the sampled
        // envelope estimate carries O(1e-14) arithmetic noise
        if (cell.a < out.sup_family_lip && out.sup_family_lip <= cell.b &&
            out.extension_estimate <= 1.0 - 1.0 / cell.p + kTolMetric) {
            out.tag = ClassifyOutcome::Tag::Cell;
            out.cell_index = i;
            return out;
        }
    }
    out.tag = ClassifyOutcome::Tag::NotInQ;
    return out;
}

namespace {

// McShane extension of the arc-length parameter of [u0, x0], clamped to
// the segment range: a 1-Lipschitz retraction parameter with q(u0) = 0.
std::function<double(const Vec&)> make_arc_q(const Space& space, const Vec& u0,
                                             const Vec& x0, double rho) {
    constexpr int m = 256;
    auto grid = std::make_shared<std::vector<Vec>>();
    grid->reserve(m + 1);
    for (int k = 0; k <= m; ++k)
        grid->push_back(geodesic_point(space, u0, x0, static_cast<double>(k) / m));
    return [space, grid, rho](const Vec& x) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < grid->size(); ++k) {
            const double tau = rho * static_cast<double>(k) / (grid->size() - 1);
            best = std::min(best, tau + distance(space, (*grid)[k], x));
        }
        return std::clamp(best, 0.0, rho);
    };
}

bool ball_inside(const Space& space, const Vec& u0, double radius, const Region& U,
                 const Vec& x0, double D, int probes) {
    for (const Vec& p : ball_grid(space, u0, radius, probes)) {
        if (!U.contains(p)) return false;
        if (std::isfinite(D) && distance(space, p, x0) >= D) return false;
    }
    for (const Vec& p : U.samples) {
        // region samples that fall inside the ball must satisfy both checks
        if (distance(space, p, u0) < radius) {
            if (!U.contains(p)) return false;
            if (std::isfinite(D) && distance(space, p, x0) >= D) return false;
        }
    }
    return true;
}

}  // namespace

PerturbationPlan build_plan(const SampledMapping& f, const ExtendedMapping& F,
                            const PorosityCell& cell, const Region& U,
                            const FamilySegment& gamma, const BuildPlanOptions& options) {
    if (!cell.feasible_for_witness())
        throw PlanInfeasible("cell fails b - a < a / (48 (p - 1))");

    PerturbationPlan plan;
    plan.side = PerturbSide::Domain;
    plan.f = f;
    plan.F = F;
    plan.gamma = gamma.segment;
    plan.x0 = gamma.star_center;
    plan.theta = f.context->theta;
    plan.cell = cell;
    plan.sigma = cell.sigma();
    // guaranteed by the feasibility condition; kept as a hard check
    if ((1.0 + 3.0 * plan.sigma) * (1.0 - 1.0 / cell.p) > 1.0 + kTolStructural)
        throw PlanInfeasible("(1 + 3 sigma)(1 - 1/p) exceeds 1");

    const Space& X = f.context->domain.space;
    const double rl = restricted_lip(f, gamma.segment, 64);
    if (!(rl > cell.a - options.steep_tol && rl <= cell.b + options.steep_tol))
        throw PlanInfeasible("restricted lip on Gamma falls outside (a, b]");

    // steep point on (w0, w1), quotients toward the star center
    const Segment toward_center = make_segment(X, gamma.segment.a, plan.x0);
    const double gamma_fraction =
        gamma.segment.length / std::max(toward_center.length, kTolStructural);
    std::vector<double> t_grid = options.t_grid;
    if (t_grid.empty())
        t_grid = {1e-5, 3e-5, 1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
    plan.u0 = steep_point_search(f, toward_center, cell.a, t_grid,
                                 options.steep_candidates, options.steep_tol,
                                 std::min(1.0, gamma_fraction * 0.9));

    plan.rho_u0_target = distance(X, plan.u0, plan.x0);
    const DeltaEstimateReport delta =
        estimate_delta(X, plan.u0, plan.x0, plan.sigma);
    plan.r0 = std::min({plan.rho_u0_target, delta.delta,
                        plan.rho_u0_target * delta.delta});

    const double D = X.uniqueness_diameter();
    plan.r = plan.r0 / 2.0;
    int step = 0;
    while (step < options.max_halvings &&
           !ball_inside(X, plan.u0, 3.0 * plan.r, U, plan.x0, D, options.ball_probes)) {
        plan.r /= 2.0;
        ++step;
    }
    if (step >= options.max_halvings)
        throw PlanInfeasible("no r with B(u0, 3r) inside U and B(x0, D_X)");

    const double rho_u0_w1 = distance(X, plan.u0, gamma.segment.b);
    plan.eps0 = 0.999 * std::min({plan.sigma * plan.r / 2.0,
                                  plan.rho_u0_target / 2.0, 1.0, rho_u0_w1 / 2.0});
    if (!(plan.eps0 > 0.0)) throw PlanInfeasible("eps0 collapsed to zero");
    plan.eps = plan.eps0 / 2.0;
    plan.s = plan.eps / plan.rho_u0_target;

    const double r = plan.r;
    const Vec u0 = plan.u0;
    const double sigma = plan.sigma;
    const double rho1 = plan.rho_u0_target;
    const double eps = plan.eps;
    const Space space = X;

    plan.psi = [space, u0, r](const Vec& x) {
        const double d = distance(space, x, u0);
        if (d >= r) return 0.0;
        return 1.0 - (2.0 / r) * std::max(d - r / 2.0, 0.0);
    };
    plan.phi = [eps, sigma](double t) { return std::min(std::abs(t), eps / sigma); };
    plan.arc_q = make_arc_q(space, u0, plan.x0, rho1);
    const auto psi = plan.psi;
    const auto phi = plan.phi;
    const auto arc_q = plan.arc_q;
    plan.lambda = [psi, phi, arc_q, sigma, rho1](const Vec& x) {
        return sigma / (2.0 * rho1) * psi(x) * phi(arc_q(x));
    };

    if (std::abs(plan.lambda(plan.u0)) > kTolStructural)
        throw PlanInfeasible("lambda(u0) failed to vanish");
    return plan;
}

Vec perturb_beta(const PerturbationPlan& plan, const Vec& x) {
    const double lam = plan.lambda(x);
    if (plan.side == PerturbSide::Domain) {
        if (lam <= 0.0) return x;
        return geodesic_point(plan.f.context->domain.space, x, plan.x0, lam);
    }
    // range side: slide the mapped value toward the target inside B(u0, r)
    const Space& X = plan.f.context->domain.space;
    const Space& Y = plan.f.context->range.space;
    const Vec fx = plan.f.evaluate(x);
    if (distance(X, x, plan.u0) >= plan.r || lam <= 0.0) return fx;
    return geodesic_point(Y, fx, plan.x0, lam);
}

BetaCertificate certify_beta(const PerturbationPlan& plan) {
    const Region& domain = plan.f.context->domain;
    const Region& range = plan.f.context->range;
    const Space& X = domain.space;
    const bool domain_side = plan.side == PerturbSide::Domain;
    const Space& Z = domain_side ? X : range.space;
    const Region& CZ = domain_side ? domain : range;

    BetaCertificate cert;
    std::vector<Vec> pre, post;
    for (const Vec& x : domain.samples) {
        Vec bx = perturb_beta(plan, x);
        const Vec px = domain_side ? x : plan.f.evaluate(x);
        if (!CZ.contains(bx)) cert.membership_ok = false;
        cert.max_displacement =
            std::max(cert.max_displacement, distance(Z, bx, px));
        pre.push_back(x);
        post.push_back(std::move(bx));
    }
    double lip_pi_ball = domain_side ? 1.0 : 0.0;
    for (std::size_t i = 0; i < pre.size(); ++i) {
        for (std::size_t j = i + 1; j < pre.size(); ++j) {
            const double d = distance(X, pre[i], pre[j]);
            if (d < kTolStructural) continue;
            cert.sampled_lip =
                std::max(cert.sampled_lip, distance(Z, post[i], post[j]) / d);
            if (!domain_side && distance(X, pre[i], plan.u0) < plan.r &&
                distance(X, pre[j], plan.u0) < plan.r) {
                lip_pi_ball = std::max(
                    lip_pi_ball,
                    distance(Z, plan.f.values[i], plan.f.values[j]) / d);
            }
        }
    }
    cert.lip_bound =
        std::max(1.0, (1.0 + plan.sigma) * lip_pi_ball + 2.0 * plan.sigma);
    cert.passed = cert.membership_ok &&
                  cert.max_displacement <= plan.eps + kTolMetric &&
                  cert.sampled_lip <= cert.lip_bound + kTolMetric;
    return cert;
}

GWitness build_witness_G(const PerturbationPlan& plan) {
    const Region& domain = plan.f.context->domain;
    const Region& range = plan.f.context->range;
    const Space& X = domain.space;
    const Space& Y = range.space;

    GWitness w;
    w.steepness_bound = plan.cell.a * (1.0 + plan.sigma / 4.0);

    // g captures the plan by value so it stays valid past this scope
    PerturbationPlan plan_copy = plan;
    w.g = make_sampled(plan.f.context,
                       std::function<Vec(const Vec&)>(
                           [plan_copy](const Vec& x) {
                               return plan_copy.f.evaluate(perturb_beta(plan_copy, x));
                           }));

    // (i) membership and (ii) epsilon-closeness, range and sup-norm routes
    w.membership_ok = true;
    std::vector<Vec> G_vals;
    G_vals.reserve(domain.samples.size());
    for (std::size_t i = 0; i < domain.samples.size(); ++i) {
        const Vec& x = domain.samples[i];
        const Vec gx = w.g.values[i];
        if (!range.contains(gx)) w.membership_ok = false;
        w.max_dist_range =
            std::max(w.max_dist_range, distance(Y, plan.f.values[i], gx));
        const Vec Gx = plan.F.evaluate(perturb_beta(plan, x));
        const Vec Fx = plan.F.evaluate(x);
        w.max_dist_linf =
            std::max(w.max_dist_linf, (Gx - Fx).lpNorm<Eigen::Infinity>());
        G_vals.push_back(Gx);
    }

    // (iii) sampled nonexpansiveness of g and of G = F o beta
    for (std::size_t i = 0; i < domain.samples.size(); ++i) {
        for (std::size_t j = i + 1; j < domain.samples.size(); ++j) {
            const double d = distance(X, domain.samples[i], domain.samples[j]);
            if (d < kTolStructural) continue;
            const double qr = distance(Y, w.g.values[i], w.g.values[j]) / d;
            const double ql = (G_vals[i] - G_vals[j]).lpNorm<Eigen::Infinity>() / d;
            w.sampled_lip_g = std::max({w.sampled_lip_g, qr, ql});
        }
    }

    // (iv) the amplified difference quotient at the probe
    w.probe = geodesic_point(X, plan.u0, plan.x0, plan.s);
    const double along = distance(X, plan.gamma.a, w.probe) +
                         distance(X, w.probe, plan.gamma.b);
    w.probe_in_gamma = std::abs(along - plan.gamma.length) <= kTolMetric;
    const Vec g_probe = w.g.formula(w.probe);
    const Vec g_u0 = w.g.formula(plan.u0);
    w.steepness = distance(Y, g_probe, g_u0) / (plan.s * plan.rho_u0_target);
    if (!(w.steepness > w.steepness_bound))
        throw SteepnessFailed("condition (iv) quotient did not exceed a (1 + sigma/4); grids may be too coarse for eps0");
    return w;
}

namespace {

struct TrialSet {
    std::vector<Vec> points;        // segment grid first, then context points
    std::vector<double> theta_dist;
    std::vector<Vec> g_values;
    int segment_points = 0;
};

TrialSet make_trial_set(const SampledMapping& g, const Vec& seg_a, const Vec& seg_b,
                        int segment_grid, std::size_t max_context_points) {
    const Region& domain = g.context->domain;
    const Space& X = domain.space;
    TrialSet ts;
    ts.segment_points = segment_grid;
    const Segment seg = make_segment(X, seg_a, seg_b);
    for (int k = 0; k < segment_grid; ++k)
        ts.points.push_back(seg.eval(static_cast<double>(k) / (segment_grid - 1)));
    const std::size_t stride =
        std::max<std::size_t>(1, domain.samples.size() / max_context_points);
    for (std::size_t i = 0; i < domain.samples.size(); i += stride)
        ts.points.push_back(domain.samples[i]);
    for (const Vec& x : ts.points) {
        ts.theta_dist.push_back(distance(X, x, g.context->theta));
        ts.g_values.push_back(g.evaluate(x));
    }
    return ts;
}

// Random perturbation of g on the trial set inside the d_theta ball of
// the given radius, projected back to sampled nonexpansiveness by
// shrinking per-point displacements toward g.
std::vector<Vec> perturbed_trial(const SampledMapping& g, const TrialSet& ts,
                                 double radius, Rng& rng, int max_rounds = 100) {
    const Region& domain = g.context->domain;
    const Region& range = g.context->range;
    const Space& X = domain.space;
    const Space& Y = range.space;
    const std::size_t n = ts.points.size();

    std::vector<Vec> targets(n);
    std::vector<double> mags(n), alphas(n, 1.0), rho_target(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& gi = ts.g_values[i];
        Vec target = gi;
        double rho = 0.0;
        for (int attempt = 0; attempt < 10; ++attempt) {
            const Vec& cand = range.samples[rng.index(range.samples.size())];
            rho = distance(Y, gi, cand);
            if (rho > kTolStructural) {
                target = cand;
                break;
            }
        }
        targets[i] = target;
        rho_target[i] = rho;
        mags[i] = rng.uniform(0.0, 0.95 * radius * (1.0 + ts.theta_dist[i]));
        if (rho <= kTolStructural) mags[i] = 0.0;
    }

    std::vector<Vec> h(n);
    auto displace = [&](std::size_t i) {
        const double m = alphas[i] * mags[i];
        if (m <= 0.0 || rho_target[i] <= kTolStructural) {
            h[i] = ts.g_values[i];
            return;
        }
        const double t = std::min(1.0, m / rho_target[i]);
        h[i] = geodesic_point(Y, ts.g_values[i], targets[i], t);
        if (!range.contains(h[i])) {
            alphas[i] = 0.0;
            h[i] = ts.g_values[i];
        }
    };
    for (std::size_t i = 0; i < n; ++i) displace(i);

    Eigen::MatrixXd dist_x(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        dist_x(i, i) = 0.0;
        for (std::size_t j = i + 1; j < n; ++j)
            dist_x(i, j) = dist_x(j, i) = distance(X, ts.points[i], ts.points[j]);
    }

    for (int round = 0; round < max_rounds; ++round) {
        bool violated = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (dist_x(i, j) < kTolStructural) continue;
                if (distance(Y, h[i], h[j]) > dist_x(i, j) + kTolStructural) {
                    alphas[i] *= 0.6;
                    alphas[j] *= 0.6;
                    displace(i);
                    displace(j);
                    violated = true;
                }
            }
        }
        if (!violated) return h;
    }
    throw TrialProjectionFailed("pairwise averaging toward g did not restore nonexpansiveness");
}

double table_restricted_lip(const Space& X, const Space& Y, const TrialSet& ts,
                            const std::vector<Vec>& h) {
    double sup = 0.0;
    for (int i = 0; i < ts.segment_points; ++i) {
        for (int j = i + 1; j < ts.segment_points; ++j) {
            const double d = distance(X, ts.points[i], ts.points[j]);
            if (d < kTolStructural) continue;
            sup = std::max(sup, distance(Y, h[i], h[j]) / d);
        }
    }
    return sup;
}

double trial_d_theta(const Space& Y, const TrialSet& ts, const std::vector<Vec>& h) {
    double sup = 0.0;
    for (std::size_t i = 0; i < ts.points.size(); ++i)
        sup = std::max(sup, distance(Y, h[i], ts.g_values[i]) /
                                (1.0 + ts.theta_dist[i]));
    return sup;
}

}  // namespace

WitnessCertificate certify_ball_exclusion(const GWitness& witness,
                                          const PerturbationPlan& plan, int trials,
                                          std::uint64_t rng_seed, int segment_grid) {
    const Space& X = plan.f.context->domain.space;
    const Space& Y = plan.f.context->range.space;

    WitnessCertificate cert;
    cert.excluded_ball_radius =
        plan.cell.a * plan.sigma * plan.eps /
        (32.0 * (1.0 + distance(X, plan.u0, plan.theta)));
    cert.steepness_bound = plan.cell.a * (1.0 + plan.sigma / 8.0);
    cert.trials = trials;
    cert.min_observed_restricted_lip = std::numeric_limits<double>::infinity();

    const TrialSet ts = make_trial_set(witness.g, plan.u0, witness.probe,
                                       segment_grid, 160);
    const double probe_gap = plan.s * plan.rho_u0_target;
    cert.min_endpoint_quotient = std::numeric_limits<double>::infinity();
    Rng rng(rng_seed);
    for (int trial = 0; trial < trials; ++trial) {
        const std::vector<Vec> h =
            perturbed_trial(witness.g, ts, cert.excluded_ball_radius, rng);
        if (trial_d_theta(Y, ts, h) > cert.excluded_ball_radius + kTolStructural)
            throw TrialProjectionFailed("trial left the excluded d_theta ball");
        const double lip = table_restricted_lip(X, Y, ts, h);
        // the proof's own pair: quotient across [u0, probe] end to end
        const double endpoint =
            distance(Y, h[0], h[ts.segment_points - 1]) / probe_gap;
        cert.trial_lips.push_back(lip);
        cert.trial_endpoint_quotients.push_back(endpoint);
        cert.min_observed_restricted_lip =
            std::min(cert.min_observed_restricted_lip, lip);
        cert.min_endpoint_quotient = std::min(cert.min_endpoint_quotient, endpoint);
    }
    cert.passed = cert.min_observed_restricted_lip > plan.cell.b &&
                  cert.min_observed_restricted_lip >=
                      cert.steepness_bound - kTolNumeric &&
                  cert.min_endpoint_quotient >= cert.steepness_bound - kTolNumeric;
    return cert;
}

std::pair<SampledMapping, ConstantWitnessCertificate> constant_mapping_witness(
    const SampledMapping& f, const Region& U, const ExtendedMapping& F,
    std::optional<Vec> y0_opt, const ConstantWitnessParams& params) {
    const Region& domain = f.context->domain;
    const Region& range = f.context->range;
    const Space& X = domain.space;
    const Space& Y = range.space;
    const double DX = X.uniqueness_diameter();
    const double DY = Y.uniqueness_diameter();

    const SegmentFamilyG family = enumerate_family_G(domain, U);
    if (sup_family_lip(f, family) > kTolMetric)
        throw HypothesisViolated("f is not constant along the family within U");

    const double lip_FU = extension_lip_on(F, U);
    const double sigma = params.sigma;
    if (!(sigma > 0.0 && sigma < 1.0) ||
        (1.0 + sigma) * lip_FU + 2.0 * sigma > 1.0 + kTolStructural)
        throw HypothesisViolated("(1 + sigma) lip(F|U) + 2 sigma must stay below 1");

    // star center whose D_X-ball meets U on the samples
    const Vec* x0 = nullptr;
    for (const Vec& c : domain.star_centers) {
        for (const Vec& s : domain.samples) {
            if (U.contains(s) && distance(X, s, c) < DX) {
                x0 = &c;
                break;
            }
        }
        if (x0) break;
    }
    if (!x0) throw NoTargetPoint("no star center with U cap B(x0, D_X) nonempty");

    auto in_U_prime = [&](const Vec& p) {
        const double d = distance(X, p, *x0);
        return U.contains(p) && d < DX && d > kTolStructural;
    };

    // the lemma allows any u0 in U'; the middle candidate keeps the
    // halving away from the boundary of U
    std::vector<const Vec*> candidates;
    for (const Vec& s : domain.samples)
        if (in_U_prime(s)) candidates.push_back(&s);
    if (candidates.empty()) throw NoTargetPoint("no domain sample in U'");
    const Vec* u0 = candidates[candidates.size() / 2];

    const Vec c_val = f.evaluate(*u0);

    Vec y0;
    if (y0_opt) {
        y0 = *y0_opt;
    } else {
        const bool c_in_star =
            std::any_of(range.star_centers.begin(), range.star_centers.end(),
                        [&](const Vec& sc) {
                            return distance(Y, sc, c_val) <= kTolMetric;
                        });
        bool found = false;
        if (c_in_star) {
            for (const Vec& y : range.samples) {
                const double d = distance(Y, c_val, y);
                if (d > kTolStructural && d < DY / 2.0) {
                    y0 = y;
                    found = true;
                    break;
                }
            }
        } else {
            for (const Vec& y : range.star_centers) {
                const double d = distance(Y, c_val, y);
                if (d > kTolStructural && d < DY) {
                    y0 = y;
                    found = true;
                    break;
                }
            }
        }
        if (!found) throw NoTargetPoint("no admissible y0 among the range samples");
    }

    const double rho_y = distance(Y, c_val, y0);
    if (!(rho_y > 0.0 && rho_y < DY))
        throw NoTargetPoint("y0 must satisfy 0 < rho(f(u0), y0) < D_Y");

    const DeltaEstimateReport delta = estimate_delta(Y, c_val, y0, sigma);
    const double r0 = std::min({rho_y, delta.delta, rho_y * delta.delta});

    const double rho_u0_x0 = distance(X, *u0, *x0);
    double r = std::min(r0, 0.98 * rho_u0_x0) / 2.0;
    int step = 0;
    auto ball_ok = [&](double rr) {
        for (const Vec& p : ball_grid(X, *u0, rr, 64))
            if (!in_U_prime(p)) return false;
        return true;
    };
    while (step < 40 && !ball_ok(r)) {
        r /= 2.0;
        ++step;
    }
    if (step >= 40) throw PlanInfeasible("no r with B(u0, r) inside U'");

    // the lemma's claim: values near u0 stay within D_Y of y0
    for (std::size_t i = 0; i < domain.samples.size(); ++i) {
        if (distance(X, domain.samples[i], *u0) < r &&
            distance(Y, f.values[i], y0) >= DY)
            throw PlanInfeasible("f values near u0 leave B(y0, D_Y)");
    }

    ConstantWitnessCertificate cert;
    cert.u0 = *u0;
    cert.x0 = *x0;
    cert.y0 = y0;
    cert.sigma = sigma;
    cert.r = r;
    cert.r0 = r0;
    cert.eps0 = r;
    cert.eps = params.eps > 0.0 && params.eps < cert.eps0 ? params.eps
                                                          : cert.eps0 / 2.0;
    cert.eps = std::min(cert.eps, 0.49 * rho_u0_x0);
    const double eps = cert.eps;

    const Vec u0v = *u0;
    auto lambda = [sigma, rho_y, eps, u0v, X](const Vec& x) {
        return sigma / (2.0 * rho_y) *
               std::max(eps - distance(X, x, u0v), 0.0);
    };

    PerturbationPlan range_plan;
    range_plan.side = PerturbSide::Range;
    range_plan.f = f;
    range_plan.F = F;
    range_plan.x0 = y0;   // range-side target
    range_plan.u0 = *u0;
    range_plan.theta = f.context->theta;
    range_plan.sigma = sigma;
    range_plan.r0 = r0;
    range_plan.r = r;
    range_plan.eps0 = cert.eps0;
    range_plan.eps = eps;
    range_plan.rho_u0_target = rho_y;
    range_plan.s = eps / rho_y;
    range_plan.lambda = lambda;

    PerturbationPlan plan_copy = range_plan;
    SampledMapping g = make_sampled(
        f.context, std::function<Vec(const Vec&)>([plan_copy](const Vec& x) {
            return perturb_beta(plan_copy, x);
        }));

    const Vec probe = geodesic_point(X, *u0, *x0, eps / rho_u0_x0);
    cert.displacement = distance(Y, g.formula(probe), g.formula(*u0));
    cert.expected_displacement = sigma * eps / 2.0;
    cert.trial_radius =
        sigma * eps /
        (6.0 * (1.0 + distance(X, *u0, f.context->theta) + cert.eps0));
    cert.nonconstant_threshold = sigma * eps / 6.0;

    const TrialSet ts = make_trial_set(g, *u0, probe, 33, 160);
    Rng rng(params.seed);
    cert.trials = params.trials;
    cert.min_trial_displacement = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < params.trials; ++trial) {
        const std::vector<Vec> h = perturbed_trial(g, ts, cert.trial_radius, rng);
        // displacement across [u0, u0 + eps]: endpoints are the segment ends
        const double disp = distance(Y, h[0], h[ts.segment_points - 1]);
        cert.trial_displacements.push_back(disp);
        cert.min_trial_displacement = std::min(cert.min_trial_displacement, disp);
    }

    cert.passed =
        std::abs(cert.displacement - cert.expected_displacement) <= kTolMetric &&
        cert.min_trial_displacement >= cert.nonconstant_threshold - kTolMetric;
    return {std::move(g), cert};
}

}  // namespace mgeo
