#pragma once

#include <json.hpp>

#include "mgeo/extension.hpp"
#include "mgeo/hyperspace.hpp"
#include "mgeo/mappings.hpp"

namespace mgeo {

using json = nlohmann::json;

json to_json(const Space& space);
Space space_from_json(const json& j);

json to_json(const Vec& v);
Vec vec_from_json(const json& j);

json to_json(const MembershipSpec& spec);
MembershipSpec membership_from_json(const json& j);

/// Region wire format: {space, samples, flags, star_centers[, membership]}.
json to_json(const Region& region);
Region region_from_json(const json& j);

json to_json(const HyperPoint& A);
HyperPoint hyperpoint_from_json(const json& j);

json context_to_json(const MappingContext& ctx);
ContextPtr context_from_json(const json& j);

/// Mapping wire format: {context, entries: [[domain_index, range_point]...]}.
json mapping_to_json(const SampledMapping& f);
/// Reads a mapping against a shared context; when none is supplied the
/// context is reconstructed from the payload.
SampledMapping mapping_from_json(const json& j, ContextPtr context = nullptr);

/// Extension parameters: source table, componentwise values and weights,
/// and the range embedding (mode + landmarks).
json extension_to_json(const ExtendedMapping& F);
ExtendedMapping extension_from_json(const json& j);

/// The formula catalog for formula-backed mappings: affine, constant,
/// clamp, min/max, composition and geodesic combination.
std::function<Vec(const Vec&)> compile_formula(const Space& space, const json& spec);

}  // namespace mgeo
