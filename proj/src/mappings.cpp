#include "mgeo/mappings.hpp"

#include <algorithm>
#include <cmath>

namespace mgeo {

ContextPtr make_context(Region domain, Region range, Vec theta, MetricKind kind) {
    auto ctx = std::make_shared<MappingContext>();
    ctx->domain = std::move(domain);
    ctx->range = std::move(range);
    ctx->theta = std::move(theta);
    ctx->metric_kind = kind;
    require_on_chart(ctx->domain.space, ctx->theta);
    return ctx;
}

Vec SampledMapping::evaluate(const Vec& x) const {
    if (formula) return formula(x);
    // nearest-sample lookup for table-backed mappings
    const auto& samples = context->domain.samples;
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double d = distance(context->domain.space, x, samples[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return values[best];
}

SampledMapping make_sampled(ContextPtr context, std::function<Vec(const Vec&)> formula) {
    SampledMapping f;
    f.context = std::move(context);
    f.formula = std::move(formula);
    f.values.reserve(f.context->domain.samples.size());
    for (const Vec& x : f.context->domain.samples) f.values.push_back(f.formula(x));
    return f;
}

SampledMapping make_sampled(ContextPtr context, std::vector<Vec> values) {
    if (values.size() != context->domain.samples.size())
        throw Error("value table size differs from the domain sample count");
    SampledMapping f;
    f.context = std::move(context);
    f.values = std::move(values);
    return f;
}

bool sampled_nonexpansive(const SampledMapping& f, double tol) {
    const auto& xs = f.context->domain.samples;
    const Space& dx = f.context->domain.space;
    const Space& dy = f.context->range.space;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (distance(dy, f.values[i], f.values[j]) >
                distance(dx, xs[i], xs[j]) + tol)
                return false;
        }
    }
    return true;
}

void validate_mapping(const SampledMapping& f, bool require_nonexpansive) {
    if (!f.context) throw Error("mapping has no context");
    if (f.values.size() != f.context->domain.samples.size())
        throw Error("value table size differs from the domain sample count");
    for (const Vec& y : f.values) {
        if (!f.context->range.contains(y))
            throw Error("mapping value leaves the range region");
    }
    if (require_nonexpansive && !sampled_nonexpansive(f))
        throw Error("mapping fails the sampled nonexpansiveness bound");
}

void require_same_context(const SampledMapping& f, const SampledMapping& g) {
    if (f.context == g.context) return;
    throw ContextMismatch("mappings do not share a context");
}

double metric_d_theta(const SampledMapping& f, const SampledMapping& g) {
    require_same_context(f, g);
    const auto& ctx = *f.context;
    double sup = 0.0;
    for (std::size_t i = 0; i < ctx.domain.samples.size(); ++i) {
        const double num = distance(ctx.range.space, f.values[i], g.values[i]);
        const double den = 1.0 + distance(ctx.domain.space, ctx.domain.samples[i], ctx.theta);
        sup = std::max(sup, num / den);
    }
    return sup;
}

double metric_d_infinity(const SampledMapping& f, const SampledMapping& g) {
    require_same_context(f, g);
    const auto& ctx = *f.context;
    double sup = 0.0;
    for (std::size_t i = 0; i < ctx.domain.samples.size(); ++i)
        sup = std::max(sup, distance(ctx.range.space, f.values[i], g.values[i]));
    return sup;
}

std::vector<double> default_radii(const Region& domain) {
    double diam = 0.0;
    for (std::size_t i = 0; i < domain.samples.size(); ++i)
        for (std::size_t j = i + 1; j < domain.samples.size(); ++j)
            diam = std::max(diam,
                            distance(domain.space, domain.samples[i], domain.samples[j]));
    if (diam <= 0.0) diam = 1.0;
    std::vector<double> radii;
    for (int k = 0; k <= 10; ++k) radii.push_back(diam * std::pow(0.5, k));
    return radii;
}

LipschitzReport lipschitz_constants(const SampledMapping& f,
                                    const std::vector<double>& radii) {
    const auto& xs = f.context->domain.samples;
    const Space& dx = f.context->domain.space;
    const Space& dy = f.context->range.space;
    const std::size_t n = xs.size();
    if (n < 2) throw TooFewSamples("need at least two domain samples");

    LipschitzReport report;
    report.radii = radii;
    report.pointwise.assign(n, std::vector<double>(radii.size(),
                                                   std::numeric_limits<double>::quiet_NaN()));
    report.lip_at_rmin.assign(n, 0.0);
    report.lip_hat.assign(n, 0.0);

    // pairwise distances once; domains here are small enough for O(n^2)
    Eigen::MatrixXd dist_x(n, n), quot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        dist_x(i, i) = 0.0;
        quot(i, i) = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance(dx, xs[i], xs[j]);
            dist_x(i, j) = dist_x(j, i) = d;
            const double q = d < kTolStructural
                                 ? 0.0
                                 : distance(dy, f.values[i], f.values[j]) / d;
            quot(i, j) = quot(j, i) = q;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dist_x(i, j) < kTolStructural) continue;
            if (quot(i, j) > report.global_lip) {
                report.global_lip = quot(i, j);
                report.witness_pair = {i, j};
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        double hat = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || dist_x(i, j) < kTolStructural) continue;
            hat = std::max(hat, quot(i, j));
        }
        report.lip_hat[i] = hat;

        bool have_rmin = false;
        for (std::size_t k = 0; k < radii.size(); ++k) {
            double lip_r = 0.0;
            bool any = false;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || dist_x(i, j) < kTolStructural) continue;
                if (dist_x(i, j) < radii[k]) {
                    lip_r = std::max(lip_r, quot(i, j));
                    any = true;
                }
            }
            if (any) {
                report.pointwise[i][k] = lip_r;
                report.lip_at_rmin[i] = lip_r;  // overwritten down to the smallest
                have_rmin = true;
            }
        }
        if (!have_rmin) report.lip_at_rmin[i] = 0.0;

        if (report.lip_at_rmin[i] >= kResidualThreshold) report.R_members.push_back(i);
        if (report.lip_hat[i] >= kResidualThreshold) report.R_hat_members.push_back(i);
    }
    return report;
}

double restricted_lip(const SampledMapping& f, const Segment& segment, int grid_n) {
    const Region& domain = f.context->domain;
    std::vector<Vec> pts, vals;
    pts.reserve(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double t = grid_n == 1 ? 0.0 : static_cast<double>(i) / (grid_n - 1);
        Vec p = segment.eval(t);
        if (!domain.contains(p))
            throw SegmentOutsideDomain("segment grid point leaves the domain region");
        vals.push_back(f.evaluate(p));
        pts.push_back(std::move(p));
    }
    const Space& dx = domain.space;
    const Space& dy = f.context->range.space;
    double sup = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d = distance(dx, pts[i], pts[j]);
            if (d < kTolStructural) continue;
            sup = std::max(sup, distance(dy, vals[i], vals[j]) / d);
        }
    }
    return sup;
}

double sup_family_lip(const SampledMapping& f, const SegmentFamilyG& family,
                      int grid_n) {
    double sup = 0.0;
    for (const FamilySegment& fs : family.segments)
        sup = std::max(sup, restricted_lip(f, fs.segment, grid_n));
    return sup;
}

Vec steep_point_search(const SampledMapping& f, const Segment& segment, double L,
                       const std::vector<double>& t_grid, int candidates, double tol,
                       double max_param) {
    const Space& dx = f.context->domain.space;
    const Space& dy = f.context->range.space;
    const Vec& far = segment.b;

    for (int c = 0; c < candidates; ++c) {
        // interior candidates only; the far endpoint gives no direction
        const double s = max_param * (c + 0.5) / candidates;
        const Vec u0 = segment.eval(s);
        const double rho = distance(dx, u0, far);
        if (rho < kTolStructural) continue;
        const Vec fu0 = f.evaluate(u0);
        bool ok = true;
        for (const double t : t_grid) {
            if (t <= 0.0 || t > 1.0) continue;
            const Vec p = geodesic_point(dx, u0, far, t);
            const double q = distance(dy, f.evaluate(p), fu0) / (t * rho);
            if (!(q > L - tol)) {
                ok = false;
                break;
            }
        }
        if (ok) return u0;
    }
    throw NoSteepPoint("no candidate passed every quotient check (grids may be too coarse)");
}

ComponentLipReport componentwise_lip_identity(
    const Space& domain_space, const std::vector<Vec>& domain_samples,
    const std::vector<std::vector<double>>& component_values) {
    const std::size_t n = domain_samples.size();
    const std::size_t m = component_values.size();
    if (n < 2) throw TooFewSamples("need at least two domain samples");
    for (const auto& comp : component_values)
        if (comp.size() != n) throw Error("component table size mismatch");

    double combined = 0.0, by_components = 0.0;
    std::vector<double> hat_combined(n, 0.0), hat_by_components(n, 0.0);

    std::vector<double> comp_global(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance(domain_space, domain_samples[i], domain_samples[j]);
            if (d < kTolStructural) continue;
            double sup_abs = 0.0;
            for (std::size_t w = 0; w < m; ++w) {
                const double a = std::abs(component_values[w][i] - component_values[w][j]);
                sup_abs = std::max(sup_abs, a);
                comp_global[w] = std::max(comp_global[w], a / d);
            }
            const double q = sup_abs / d;
            combined = std::max(combined, q);
            hat_combined[i] = std::max(hat_combined[i], q);
            hat_combined[j] = std::max(hat_combined[j], q);
        }
    }
    by_components = m ? *std::max_element(comp_global.begin(), comp_global.end()) : 0.0;

    for (std::size_t w = 0; w < m; ++w) {
        for (std::size_t i = 0; i < n; ++i) {
            double hat = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const double d =
                    distance(domain_space, domain_samples[i], domain_samples[j]);
                if (d < kTolStructural) continue;
                hat = std::max(hat,
                               std::abs(component_values[w][i] - component_values[w][j]) / d);
            }
            hat_by_components[i] = std::max(hat_by_components[i], hat);
        }
    }

    ComponentLipReport report;
    report.combined_global = combined;
    report.max_component_global = by_components;
    report.global_gap = std::abs(combined - by_components);
    for (std::size_t i = 0; i < n; ++i)
        report.max_lip_hat_gap =
            std::max(report.max_lip_hat_gap,
                     std::abs(hat_combined[i] - hat_by_components[i]));
    return report;
}

Vec iterate_to_fixed_point(const SampledMapping& f, const Vec& x0, int max_iter,
                           double tol) {
    if (!f.formula) throw Error("fixed-point iteration needs a formula-backed mapping");
    const Space& space = f.context->domain.space;
    Vec x = x0;
    for (int k = 0; k < max_iter; ++k) {
        Vec next = f.formula(x);
        if (distance(space, x, next) < tol) return next;
        x = std::move(next);
    }
    throw NoConvergence("no fixed point within max_iter iterations");
}

}  // namespace mgeo
