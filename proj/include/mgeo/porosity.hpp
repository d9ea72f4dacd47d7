#pragma once

#include <optional>

#include "mgeo/extension.hpp"

namespace mgeo {

/// A classification cell Q_{a,b}^p(U): mappings whose family-G restricted
/// Lipschitz supremum lies in (a, b] while some extension contracts on U
/// by at least 1/p.
struct PorosityCell {
    double a = 0.0;
    double b = 0.0;
    int p = 2;

    /// b - a < a / (48 (p - 1)), required before witness construction.
    bool feasible_for_witness() const { return b - a < a / (48.0 * (p - 1)); }

    /// The proof's final choice sigma = 16 (b - a) / a.
    double sigma() const { return 16.0 * (b - a) / a; }
};

struct ClassifyOutcome {
    enum class Tag { Cell, QZero, NotInQ };
    Tag tag = Tag::NotInQ;
    std::size_t cell_index = 0;
    double sup_family_lip = 0.0;
    double extension_estimate = 0.0;
};

/// Sampled estimate of lip(F | U): max sup-norm quotient over point pairs
/// drawn from the extension's source set and U's samples, filtered by U
/// membership.
double extension_lip_on(const ExtendedMapping& F, const Region& U);

/// Places f into the first cell with a < sup <= b and extension estimate
/// <= 1 - 1/p, or tags it QZero (sup = 0) / NotInQ.
ClassifyOutcome classify_cell(const SampledMapping& f, const Region& U,
                              const SegmentFamilyG& family,
                              const std::vector<PorosityCell>& cells,
                              int grid_n = 64);

enum class PerturbSide { Domain, Range };

/// Everything the section-4 perturbation needs: the steep point u0, the
/// constants sigma, r0, r, eps0, eps, s and the cutoff/ramp mappings
/// psi, phi, q, lambda as closures over this data.
struct PerturbationPlan {
    PerturbSide side = PerturbSide::Domain;
    SampledMapping f;
    ExtendedMapping F;
    Segment gamma;        // [w0, w1]
    Vec x0;               // star center (domain side) or y0 target (range side)
    Vec u0;
    Vec theta;
    PorosityCell cell;
    double sigma = 0.0;
    double r0 = 0.0, r = 0.0;
    double eps0 = 0.0, eps = 0.0;
    double s = 0.0;                   // eps / rho(u0, target)
    double rho_u0_target = 0.0;       // rho_X(u0, x0) or rho_Y(f(u0), y0)

    std::function<double(const Vec&)> psi;
    std::function<double(double)> phi;
    std::function<double(const Vec&)> arc_q;   // 1-Lipschitz retraction parameter
    std::function<double(const Vec&)> lambda;
};

struct BuildPlanOptions {
    int steep_candidates = 128;
    std::vector<double> t_grid;       // empty -> log-spaced default
    int ball_probes = 64;
    int max_halvings = 40;
    double steep_tol = 1e-9;
};

/// Runs the section-4 construction for a domain-side cell witness:
/// steep-point search on Gamma with L = a, the r0 bound from the
/// perturbation lemma (via estimate_delta), the (r, eps) feasibility
/// halving, and the psi/phi/q/lambda closures.
PerturbationPlan build_plan(const SampledMapping& f, const ExtendedMapping& F,
                            const PorosityCell& cell, const Region& U,
                            const FamilySegment& gamma,
                            const BuildPlanOptions& options = {});

/// The perturbation beta. Domain side: (1-lambda(x)) x (+) lambda(x) x0.
/// Range side (x in C_X): slides f(x) toward y0 inside B(u0, r), identity
/// outside.
Vec perturb_beta(const PerturbationPlan& plan, const Vec& x);

struct BetaCertificate {
    bool membership_ok = true;
    double max_displacement = 0.0;    // vs eps
    double sampled_lip = 0.0;
    double lip_bound = 0.0;           // max{1, (1+sigma) lip(pi|B) + 2 sigma}
    bool passed = false;
};

/// Checks conditions (i)-(iii) of the perturbation lemma on the domain
/// samples.
BetaCertificate certify_beta(const PerturbationPlan& plan);

struct GWitness {
    SampledMapping g;                 // restriction of G to C_X (formula-backed)
    Vec probe;                        // (1-s) u0 (+) s x0
    bool membership_ok = false;
    double max_dist_linf = 0.0;       // ||F(x) - G(x)||_inf over samples
    double max_dist_range = 0.0;      // rho_Y(f(x), g(x)) over samples
    double sampled_lip_g = 0.0;
    bool probe_in_gamma = false;
    double steepness = 0.0;           // the condition-(iv) quotient
    double steepness_bound = 0.0;     // a (1 + sigma/4)
};

/// Builds G = F o beta and g = G|C_X and certifies conditions (i)-(iv) of
/// the witness lemma. Throws SteepnessFailed when (iv) fails.
GWitness build_witness_G(const PerturbationPlan& plan);

struct WitnessCertificate {
    double excluded_ball_radius = 0.0;  // a sigma eps / (32 (1 + rho(u0, theta)))
    double steepness_bound = 0.0;       // a (1 + sigma/8)
    int trials = 0;
    double min_observed_restricted_lip = 0.0;
    double min_endpoint_quotient = 0.0;  // across [u0, probe] itself
    std::vector<double> trial_lips;
    std::vector<double> trial_endpoint_quotients;
    bool passed = false;
};

/// Samples `trials` nonexpansive mappings inside the excluded d_theta
/// ball around g and certifies that each keeps restricted lip above
/// a (1 + sigma/8) > b on the segment [u0, probe].
WitnessCertificate certify_ball_exclusion(const GWitness& witness,
                                          const PerturbationPlan& plan, int trials,
                                          std::uint64_t rng_seed,
                                          int segment_grid = 64);

struct ConstantWitnessParams {
    double sigma = 0.2;
    double eps = 0.0;       // 0 -> eps0 / 2
    int trials = 100;
    std::uint64_t seed = 0;
};

struct ConstantWitnessCertificate {
    Vec u0, x0, y0;
    double sigma = 0.0, eps = 0.0, eps0 = 0.0, r = 0.0, r0 = 0.0;
    double displacement = 0.0;          // rho(g(u0 + eps), g(u0))
    double expected_displacement = 0.0;  // sigma eps / 2
    double trial_radius = 0.0;  // sigma eps / (6 (1 + rho(u0,theta) + eps0))
    double nonconstant_threshold = 0.0;  // sigma eps / 6
    int trials = 0;
    std::vector<double> trial_displacements;
    double min_trial_displacement = 0.0;
    bool passed = false;
};

/// The constant-mapping perturbation: slides f toward y0 on B(u0, eps)
/// and certifies the displacement identity and that every mapping in the
/// shrunken d_theta ball is non-constant on [u0, u0 + eps].
std::pair<SampledMapping, ConstantWitnessCertificate> constant_mapping_witness(
    const SampledMapping& f, const Region& U, const ExtendedMapping& F,
    std::optional<Vec> y0_opt, const ConstantWitnessParams& params);

}  // namespace mgeo
