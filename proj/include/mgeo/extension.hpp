#pragma once

#include <vector>

#include "mgeo/mappings.hpp"

namespace mgeo {

enum class EmbeddingMode {
    Kuratowski,  // x -> (rho(x, a_i) - rho(a_0, a_i))_i over the landmarks
    Identity,    // the space already carries sup-norm coordinates
};

/// Sup-norm coordinates for a metric space: Kuratowski coordinates over a
/// finite landmark list (isometric on landmark pairs), or the identity
/// when the space is a subset of R or a sup-norm space already.
struct EmbeddingContext {
    Space space;
    EmbeddingMode mode = EmbeddingMode::Kuratowski;
    std::vector<Vec> landmarks;
    int base_index = 0;

    Vec embed(const Vec& x) const;
    int omega_size() const {
        return mode == EmbeddingMode::Identity ? space.dimension
                                               : static_cast<int>(landmarks.size());
    }
    Space target_space() const { return Space::sup_norm(omega_size()); }
};

EmbeddingContext make_embedding(const Space& space, std::vector<Vec> landmarks,
                                int base_index = 0);

/// Identity coordinates; valid when the sup-norm distance of coordinates
/// is the space's metric (sup-norm kinds and the line).
EmbeddingContext make_identity_embedding(const Space& space);

/// Identity when the range metric is the sup-norm of its chart
/// (sup-norm kinds, the euclidean line), Kuratowski over the given
/// landmarks otherwise.
EmbeddingContext natural_embedding(const Space& space, std::vector<Vec> landmarks);

/// The pointwise-weighted McShane extension
///   F_w(y) = min over z in E of f_w(z) + LipHat(f_w, z) d(z, y),
/// stored componentwise over the range landmarks. Immutable, evaluated
/// in O(|E| |Omega|) per point.
struct ExtendedMapping {
    Space domain_space;                 // Z's metric
    std::vector<Vec> source_points;     // E
    Eigen::MatrixXd component_values;   // |E| x |Omega|
    Eigen::MatrixXd lip_hat_weights;    // |E| x |Omega|
    EmbeddingContext range_embedding;

    Vec evaluate(const Vec& y) const;

    /// Envelope restricted to the first `count` source points; the full
    /// extension is evaluate(y) = evaluate_over_prefix(y, |E|).
    Vec evaluate_over_prefix(const Vec& y, std::size_t count) const;
};

/// Extends a sampled 1-Lipschitz mapping from E = domain samples to the
/// whole domain space, componentwise over the range landmarks. Throws
/// SourceNotNonexpansive when the sampled 1-Lipschitz check fails.
ExtendedMapping mcshane_weighted_extend(const SampledMapping& f);

/// Same construction from raw tables, for callers that assemble E and
/// the landmark set themselves.
ExtendedMapping mcshane_weighted_extend(const Space& domain_space,
                                        const std::vector<Vec>& E,
                                        const std::vector<Vec>& f_values,
                                        const EmbeddingContext& range_embedding);

/// Locality constants of the extension lemma: the smallest N > 1 with
/// (N+1)/(N-1) <= q'/q, and the radius s = r/N it prescribes.
struct ExtensionLocality {
    double q = 0.0, q_prime = 0.0;
    long N = 0;
    double s_over_r = 0.0;

    double s(double r) const { return r * s_over_r; }
};

ExtensionLocality locality_radius(double q, double q_prime);

struct LocalContractionReport {
    double max_quotient = 0.0;
    int pairs_checked = 0;
    double s = 0.0;
};

/// Checks lip(F | B(u0, s)) <= q' on sampled pairs, after verifying the
/// lemma's hypothesis LipHat(f, z) <= q for source points in B(u0, r).
LocalContractionReport certify_local_contraction(const ExtendedMapping& F,
                                                 const ExtensionLocality& locality,
                                                 const Vec& u0, double r,
                                                 const std::vector<std::pair<Vec, Vec>>& sample_pairs);

/// LipHat of f (sup-norm over components) at each source point, from the
/// stored componentwise weights.
std::vector<double> source_lip_hat(const ExtendedMapping& F);

}  // namespace mgeo
