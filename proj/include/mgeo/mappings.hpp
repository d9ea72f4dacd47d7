#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "mgeo/regions.hpp"

namespace mgeo {

enum class MetricKind { DTheta, DInfinity };

/// Shared data of a mapping space M(C_X, C_Y): domain and range regions,
/// the base point theta of d_theta, and which metric is in force.
struct MappingContext {
    Region domain;   // C_X
    Region range;    // C_Y
    Vec theta;
    MetricKind metric_kind = MetricKind::DTheta;
};

using ContextPtr = std::shared_ptr<const MappingContext>;

ContextPtr make_context(Region domain, Region range, Vec theta,
                        MetricKind kind = MetricKind::DTheta);

/// A mapping known on the domain samples. Table-backed mappings carry
/// only `values` (aligned with the domain sample list); formula-backed
/// ones can be evaluated anywhere. Segment-grid operations need a
/// formula or a densely sampled table (nearest-sample lookup).
struct SampledMapping {
    ContextPtr context;
    std::vector<Vec> values;
    std::function<Vec(const Vec&)> formula;  // optional

    Vec evaluate(const Vec& x) const;
    const Vec& value_at(std::size_t sample_index) const { return values[sample_index]; }
};

SampledMapping make_sampled(ContextPtr context, std::function<Vec(const Vec&)> formula);
SampledMapping make_sampled(ContextPtr context, std::vector<Vec> values);

/// True when rho_Y(f(x), f(y)) <= rho_X(x, y) + tol on all sample pairs.
bool sampled_nonexpansive(const SampledMapping& f, double tol = kTolMetric);

/// Table invariants: values aligned with the domain samples, every value
/// inside the range region, and (optionally) sampled nonexpansiveness.
void validate_mapping(const SampledMapping& f, bool require_nonexpansive = true);

void require_same_context(const SampledMapping& f, const SampledMapping& g);

/// d_theta(f, g) = max over samples of rho_Y(f(x), g(x)) / (1 + rho_X(x, theta)).
double metric_d_theta(const SampledMapping& f, const SampledMapping& g);

/// d_inf(f, g) = max over samples of rho_Y(f(x), g(x)).
double metric_d_infinity(const SampledMapping& f, const SampledMapping& g);

struct LipschitzReport {
    double global_lip = 0.0;
    std::pair<std::size_t, std::size_t> witness_pair{0, 0};
    std::vector<double> radii;
    // pointwise[i][k] = lip(f, x_i, radii[k]); NaN when the ball holds no
    // other sample
    std::vector<std::vector<double>> pointwise;
    std::vector<double> lip_at_rmin;   // smallest radius holding >= 2 samples
    std::vector<double> lip_hat;
    std::vector<std::size_t> R_members;      // lip_at_rmin >= 1 - 1e-3
    std::vector<std::size_t> R_hat_members;  // lip_hat    >= 1 - 1e-3
};

inline constexpr double kResidualThreshold = 1.0 - 1e-3;

/// Default radii grid {1, 1/2, ..., 2^-10} * diam(samples).
std::vector<double> default_radii(const Region& domain);

/// Global and pointwise difference-quotient functionals of f over the
/// domain samples. Ties in the global argmax break toward the lowest
/// lexicographic index pair.
LipschitzReport lipschitz_constants(const SampledMapping& f,
                                    const std::vector<double>& radii);

/// Max difference quotient of f over a grid_n-point parameterization of
/// the segment. The grid must lie in the domain region.
double restricted_lip(const SampledMapping& f, const Segment& segment, int grid_n);

/// sup over the family of restricted_lip(f | Gamma).
double sup_family_lip(const SampledMapping& f, const SegmentFamilyG& family,
                      int grid_n = 64);

/// A point u0 on the segment whose difference quotients toward the far
/// endpoint exceed L (within tol) for every t of t_grid; the finite
/// stand-in for the liminf of the steep-point lemma. Candidates are
/// scanned in increasing parameter order over `candidates` positions in
/// [0, max_param).
Vec steep_point_search(const SampledMapping& f, const Segment& segment, double L,
                       const std::vector<double>& t_grid, int candidates = 128,
                       double tol = 1e-9, double max_param = 1.0);

struct ComponentLipReport {
    double combined_global = 0.0;
    double max_component_global = 0.0;
    double global_gap = 0.0;        // |combined - max over components|
    double max_lip_hat_gap = 0.0;   // worst per-sample gap of the hat identity
};

/// Checks the componentwise identities lip(h) = sup_w lip(h_w) and
/// LipHat(h, x) = sup_w LipHat(h_w, x) for a finite family of real
/// components over shared domain samples.
ComponentLipReport componentwise_lip_identity(
    const Space& domain_space, const std::vector<Vec>& domain_samples,
    const std::vector<std::vector<double>>& component_values);

/// Picard iteration for formula-backed self-mappings; returns the last
/// iterate once successive steps fall below tol, throws NoConvergence
/// after max_iter steps.
Vec iterate_to_fixed_point(const SampledMapping& f, const Vec& x0, int max_iter,
                           double tol);

}  // namespace mgeo
