#include "mgeo/serialization.hpp"

namespace mgeo {

json to_json(const Space& space) {
    return json{{"kind", to_string(space.kind)},
                {"dimension", space.dimension},
                {"kappa", space.kappa}};
}

Space space_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigInvalid("space object needs a 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "euclidean") return Space::euclidean(j.at("dimension").get<int>());
    if (kind == "sup_norm") return Space::sup_norm(j.at("dimension").get<int>());
    if (kind == "sphere") return Space::sphere(j.at("kappa").get<double>());
    if (kind == "hyperbolic") return Space::hyperbolic(j.at("kappa").get<double>());
    throw ConfigInvalid("unknown space kind '" + kind + "'");
}

json to_json(const Vec& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Vec vec_from_json(const json& j) {
    if (!j.is_array()) throw ConfigInvalid("point must be a coordinate array");
    Vec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
    return v;
}

json to_json(const MembershipSpec& spec) {
    switch (spec.kind) {
        case MembershipSpec::Kind::All:
            return json{{"kind", "all"}};
        case MembershipSpec::Kind::Ball:
            return json{{"kind", "ball"},
                        {"center", to_json(spec.center)},
                        {"radius", spec.radius},
                        {"open", spec.open}};
        case MembershipSpec::Kind::Box:
            return json{{"kind", "box"},
                        {"lo", to_json(spec.lo)},
                        {"hi", to_json(spec.hi)},
                        {"open", spec.open}};
        case MembershipSpec::Kind::SegmentTube:
            return json{{"kind", "segment"},
                        {"a", to_json(spec.seg_a)},
                        {"b", to_json(spec.seg_b)},
                        {"tol", spec.tol}};
        case MembershipSpec::Kind::Union: {
            json parts = json::array();
            for (const auto& p : spec.parts) parts.push_back(to_json(p));
            return json{{"kind", "union"}, {"parts", parts}};
        }
    }
    throw ConfigInvalid("unserializable membership spec");
}

MembershipSpec membership_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "all") return MembershipSpec::all();
    if (kind == "ball")
        return MembershipSpec::ball(vec_from_json(j.at("center")),
                                    j.at("radius").get<double>(),
                                    j.value("open", true));
    if (kind == "box")
        return MembershipSpec::box(vec_from_json(j.at("lo")), vec_from_json(j.at("hi")),
                                   j.value("open", false));
    if (kind == "segment")
        return MembershipSpec::segment_tube(vec_from_json(j.at("a")),
                                            vec_from_json(j.at("b")),
                                            j.at("tol").get<double>());
    if (kind == "union") {
        std::vector<MembershipSpec> parts;
        for (const auto& p : j.at("parts")) parts.push_back(membership_from_json(p));
        return MembershipSpec::union_of(std::move(parts));
    }
    throw ConfigInvalid("unknown membership kind '" + kind + "'");
}

json to_json(const Region& region) {
    json samples = json::array();
    for (const Vec& s : region.samples) samples.push_back(to_json(s));
    json centers = json::array();
    for (const Vec& c : region.star_centers) centers.push_back(to_json(c));
    json j{{"space", to_json(region.space)},
           {"samples", samples},
           {"flags", json{{"convex", region.convex}, {"star_shaped", region.star_shaped}}},
           {"star_centers", centers}};
    if (region.membership_spec) j["membership"] = to_json(*region.membership_spec);
    return j;
}

Region region_from_json(const json& j) {
    const Space space = space_from_json(j.at("space"));
    std::vector<Vec> samples;
    for (const auto& s : j.at("samples")) samples.push_back(vec_from_json(s));
    std::vector<Vec> centers;
    if (j.contains("star_centers"))
        for (const auto& c : j.at("star_centers")) centers.push_back(vec_from_json(c));
    MembershipSpec spec = j.contains("membership")
                              ? membership_from_json(j.at("membership"))
                              : MembershipSpec::all();
    const bool convex = j.contains("flags") && j.at("flags").value("convex", false);
    const bool star =
        j.contains("flags") && j.at("flags").value("star_shaped", false);
    return make_region(space, std::move(samples), std::move(spec), std::move(centers),
                       convex, star);
}

json to_json(const HyperPoint& A) {
    json members = json::array();
    for (const Vec& m : A.members) members.push_back(to_json(m));
    return json{{"space", to_json(A.space)}, {"members", members}};
}

HyperPoint hyperpoint_from_json(const json& j) {
    const Space space = space_from_json(j.at("space"));
    std::vector<Vec> members;
    for (const auto& m : j.at("members")) members.push_back(vec_from_json(m));
    return make_hyperpoint(space, std::move(members));
}

json context_to_json(const MappingContext& ctx) {
    return json{{"domain", to_json(ctx.domain)},
                {"range", to_json(ctx.range)},
                {"theta", to_json(ctx.theta)},
                {"metric", ctx.metric_kind == MetricKind::DTheta ? "d_theta"
                                                                 : "d_infinity"}};
}

ContextPtr context_from_json(const json& j) {
    const std::string metric = j.value("metric", "d_theta");
    if (metric != "d_theta" && metric != "d_infinity")
        throw ConfigInvalid("metric must be d_theta or d_infinity");
    return make_context(region_from_json(j.at("domain")),
                        region_from_json(j.at("range")),
                        vec_from_json(j.at("theta")),
                        metric == "d_theta" ? MetricKind::DTheta
                                            : MetricKind::DInfinity);
}

json mapping_to_json(const SampledMapping& f) {
    json entries = json::array();
    for (std::size_t i = 0; i < f.values.size(); ++i)
        entries.push_back(json::array({i, to_json(f.values[i])}));
    return json{{"context", context_to_json(*f.context)}, {"entries", entries}};
}

SampledMapping mapping_from_json(const json& j, ContextPtr context) {
    if (!context) context = context_from_json(j.at("context"));
    std::vector<Vec> values(context->domain.samples.size());
    std::vector<bool> seen(values.size(), false);
    for (const auto& e : j.at("entries")) {
        const auto idx = e.at(0).get<std::size_t>();
        if (idx >= values.size()) throw ConfigInvalid("entry index out of range");
        values[idx] = vec_from_json(e.at(1));
        seen[idx] = true;
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw ConfigInvalid("mapping table misses domain samples");
    return make_sampled(std::move(context), std::move(values));
}

namespace {

json matrix_to_json(const Eigen::MatrixXd& M) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ConfigInvalid("matrix must be a 2-d array");
    Eigen::MatrixXd M(j.size(), j[0].size());
    for (std::size_t r = 0; r < j.size(); ++r)
        for (std::size_t c = 0; c < j[r].size(); ++c)
            M(r, c) = j[r][c].get<double>();
    return M;
}

}  // namespace

json extension_to_json(const ExtendedMapping& F) {
    json sources = json::array();
    for (const Vec& z : F.source_points) sources.push_back(to_json(z));
    json landmarks = json::array();
    for (const Vec& a : F.range_embedding.landmarks) landmarks.push_back(to_json(a));
    return json{{"domain_space", to_json(F.domain_space)},
                {"source_points", sources},
                {"component_values", matrix_to_json(F.component_values)},
                {"lip_hat_weights", matrix_to_json(F.lip_hat_weights)},
                {"embedding",
                 json{{"space", to_json(F.range_embedding.space)},
                      {"mode", F.range_embedding.mode == EmbeddingMode::Identity
                                   ? "identity"
                                   : "kuratowski"},
                      {"landmarks", landmarks},
                      {"base_index", F.range_embedding.base_index}}}};
}

ExtendedMapping extension_from_json(const json& j) {
    ExtendedMapping F;
    F.domain_space = space_from_json(j.at("domain_space"));
    for (const auto& z : j.at("source_points"))
        F.source_points.push_back(vec_from_json(z));
    F.component_values = matrix_from_json(j.at("component_values"));
    F.lip_hat_weights = matrix_from_json(j.at("lip_hat_weights"));
    const json& emb = j.at("embedding");
    const Space emb_space = space_from_json(emb.at("space"));
    if (emb.value("mode", "kuratowski") == "identity") {
        F.range_embedding = make_identity_embedding(emb_space);
    } else {
        std::vector<Vec> landmarks;
        for (const auto& a : emb.at("landmarks")) landmarks.push_back(vec_from_json(a));
        F.range_embedding =
            make_embedding(emb_space, std::move(landmarks), emb.value("base_index", 0));
    }
    if (F.component_values.rows() !=
            static_cast<Eigen::Index>(F.source_points.size()) ||
        F.component_values.cols() != F.range_embedding.omega_size() ||
        F.lip_hat_weights.rows() != F.component_values.rows() ||
        F.lip_hat_weights.cols() != F.component_values.cols())
        throw ConfigInvalid("extension tables have inconsistent shapes");
    return F;
}

std::function<Vec(const Vec&)> compile_formula(const Space& space, const json& spec) {
    if (!spec.is_object() || !spec.contains("kind"))
        throw ConfigInvalid("formula spec needs a 'kind'");
    const std::string kind = spec.at("kind").get<std::string>();

    if (kind == "constant") {
        const Vec value = vec_from_json(spec.at("value"));
        return [value](const Vec&) { return value; };
    }
    if (kind == "affine") {
        const Vec offset = spec.contains("offset") ? vec_from_json(spec.at("offset"))
                                                   : Vec();
        if (spec.contains("scale")) {
            const double scale = spec.at("scale").get<double>();
            return [scale, offset](const Vec& x) -> Vec {
                Vec y = scale * x;
                if (offset.size() == y.size()) y += offset;
                return y;
            };
        }
        const auto rows = spec.at("matrix");
        Eigen::MatrixXd M(rows.size(), rows[0].size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < rows[r].size(); ++c)
                M(r, c) = rows[r][c].get<double>();
        return [M, offset](const Vec& x) -> Vec {
            Vec y = M * x;
            if (offset.size() == y.size()) y += offset;
            return y;
        };
    }
    if (kind == "clamp") {
        const Vec lo = vec_from_json(spec.at("lo"));
        const Vec hi = vec_from_json(spec.at("hi"));
        auto inner = spec.contains("inner") ? compile_formula(space, spec.at("inner"))
                                            : std::function<Vec(const Vec&)>(
                                                  [](const Vec& x) { return x; });
        return [lo, hi, inner](const Vec& x) -> Vec {
            Vec y = inner(x);
            for (int i = 0; i < y.size(); ++i) y[i] = std::clamp(y[i], lo[i], hi[i]);
            return y;
        };
    }
    if (kind == "min" || kind == "max") {
        std::vector<std::function<Vec(const Vec&)>> terms;
        for (const auto& t : spec.at("terms")) terms.push_back(compile_formula(space, t));
        if (terms.empty()) throw ConfigInvalid("min/max needs at least one term");
        const bool is_min = kind == "min";
        return [terms, is_min](const Vec& x) -> Vec {
            Vec y = terms[0](x);
            for (std::size_t k = 1; k < terms.size(); ++k) {
                const Vec z = terms[k](x);
                for (int i = 0; i < y.size(); ++i)
                    y[i] = is_min ? std::min(y[i], z[i]) : std::max(y[i], z[i]);
            }
            return y;
        };
    }
    if (kind == "compose") {
        auto outer = compile_formula(space, spec.at("outer"));
        auto inner = compile_formula(space, spec.at("inner"));
        return [outer, inner](const Vec& x) { return outer(inner(x)); };
    }
    if (kind == "geodesic") {
        const Vec target = vec_from_json(spec.at("target"));
        const double lambda = spec.at("lambda").get<double>();
        const Space sp = space;
        return [sp, target, lambda](const Vec& x) {
            return geodesic_point(sp, x, target, lambda);
        };
    }
    throw ConfigInvalid("unknown formula kind '" + kind + "'");
}

}  // namespace mgeo
