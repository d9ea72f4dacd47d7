#include "mgeo/extension.hpp"

#include <algorithm>
#include <cmath>

namespace mgeo {

Vec EmbeddingContext::embed(const Vec& x) const {
    if (mode == EmbeddingMode::Identity) return x;
    const std::size_t m = landmarks.size();
    Vec out(m);
    const Vec& a0 = landmarks[base_index];
    for (std::size_t i = 0; i < m; ++i)
        out[i] = distance(space, x, landmarks[i]) - distance(space, a0, landmarks[i]);
    return out;
}

EmbeddingContext make_embedding(const Space& space, std::vector<Vec> landmarks,
                                int base_index) {
    if (landmarks.empty()) throw EmptyLandmarks("landmark list is empty");
    if (base_index < 0 || base_index >= static_cast<int>(landmarks.size()))
        throw Error("base landmark index out of range");
    return EmbeddingContext{space, EmbeddingMode::Kuratowski, std::move(landmarks),
                            base_index};
}

EmbeddingContext make_identity_embedding(const Space& space) {
    if (space.kind != SpaceKind::SupNorm &&
        !(space.kind == SpaceKind::Euclidean && space.dimension == 1))
        throw Error("identity coordinates need a sup-norm metric");
    return EmbeddingContext{space, EmbeddingMode::Identity, {}, 0};
}

EmbeddingContext natural_embedding(const Space& space, std::vector<Vec> landmarks) {
    if (space.kind == SpaceKind::SupNorm ||
        (space.kind == SpaceKind::Euclidean && space.dimension == 1))
        return make_identity_embedding(space);
    return make_embedding(space, std::move(landmarks), 0);
}

Vec ExtendedMapping::evaluate_over_prefix(const Vec& y, std::size_t count) const {
    const auto n = static_cast<Eigen::Index>(count);
    Eigen::VectorXd d(n);
    for (Eigen::Index z = 0; z < n; ++z)
        d[z] = distance(domain_space, source_points[z], y);
    // per component: min over z of f_w(z) + w(z, w) d(z)
    return (component_values.topRows(n).array() +
            lip_hat_weights.topRows(n).array().colwise() * d.array())
        .colwise()
        .minCoeff();
}

Vec ExtendedMapping::evaluate(const Vec& y) const {
    return evaluate_over_prefix(y, source_points.size());
}

ExtendedMapping mcshane_weighted_extend(const Space& domain_space,
                                        const std::vector<Vec>& E,
                                        const std::vector<Vec>& f_values,
                                        const EmbeddingContext& range_embedding) {
    const std::size_t n = E.size();
    const std::size_t m = range_embedding.omega_size();
    if (n == 0) throw Error("empty source set");
    if (f_values.size() != n) throw Error("value table size mismatch");

    ExtendedMapping F;
    F.domain_space = domain_space;
    F.source_points = E;
    F.range_embedding = range_embedding;
    F.component_values.resize(n, m);
    for (std::size_t z = 0; z < n; ++z)
        F.component_values.row(z) = range_embedding.embed(f_values[z]).transpose();

    Eigen::MatrixXd dist_e(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        dist_e(i, i) = 0.0;
        for (std::size_t j = i + 1; j < n; ++j)
            dist_e(i, j) = dist_e(j, i) = distance(domain_space, E[i], E[j]);
    }

    F.lip_hat_weights = Eigen::MatrixXd::Zero(n, m);
    for (std::size_t z = 0; z < n; ++z) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == z || dist_e(z, j) < kTolStructural) continue;
            const double inv_d = 1.0 / dist_e(z, j);
            for (std::size_t w = 0; w < m; ++w) {
                const double q =
                    std::abs(F.component_values(j, w) - F.component_values(z, w)) * inv_d;
                if (q > F.lip_hat_weights(z, w)) F.lip_hat_weights(z, w) = q;
            }
        }
    }
    return F;
}

ExtendedMapping mcshane_weighted_extend(const SampledMapping& f) {
    if (!sampled_nonexpansive(f))
        throw SourceNotNonexpansive("source mapping fails the sampled 1-Lipschitz check");
    const Region& range = f.context->range;
    const EmbeddingContext emb = natural_embedding(range.space, range.samples);
    return mcshane_weighted_extend(f.context->domain.space,
                                   f.context->domain.samples, f.values, emb);
}

ExtensionLocality locality_radius(double q, double q_prime) {
    if (!(0.0 < q && q < q_prime && q_prime < 1.0))
        throw Error("need 0 < q < q' < 1");
    // (N+1)/(N-1) <= q'/q  <=>  N >= (q'+q)/(q'-q)
    const double exact = (q_prime + q) / (q_prime - q);
    long N = std::max<long>(2, static_cast<long>(std::ceil(exact - 1e-12)));
    ExtensionLocality loc;
    loc.q = q;
    loc.q_prime = q_prime;
    loc.N = N;
    loc.s_over_r = 1.0 / static_cast<double>(N);
    return loc;
}

std::vector<double> source_lip_hat(const ExtendedMapping& F) {
    std::vector<double> hats(F.source_points.size(), 0.0);
    for (std::size_t z = 0; z < F.source_points.size(); ++z)
        hats[z] = F.lip_hat_weights.row(z).maxCoeff();
    return hats;
}

LocalContractionReport certify_local_contraction(
    const ExtendedMapping& F, const ExtensionLocality& locality, const Vec& u0,
    double r, const std::vector<std::pair<Vec, Vec>>& sample_pairs) {
    const std::vector<double> hats = source_lip_hat(F);
    for (std::size_t z = 0; z < F.source_points.size(); ++z) {
        if (distance(F.domain_space, F.source_points[z], u0) < r &&
            hats[z] > locality.q + kTolMetric)
            throw HypothesisViolated("LipHat(f, z) exceeds q inside B(u0, r)");
    }

    LocalContractionReport report;
    report.s = locality.s(r);
    for (const auto& [y1, y2] : sample_pairs) {
        if (distance(F.domain_space, y1, u0) >= report.s) continue;
        if (distance(F.domain_space, y2, u0) >= report.s) continue;
        const double d = distance(F.domain_space, y1, y2);
        if (d < kTolStructural) continue;
        const double q =
            (F.evaluate(y1) - F.evaluate(y2)).lpNorm<Eigen::Infinity>() / d;
        report.max_quotient = std::max(report.max_quotient, q);
        ++report.pairs_checked;
    }
    return report;
}

}  // namespace mgeo
