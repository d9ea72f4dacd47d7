#pragma once

#include <string>
#include <vector>

#include "mgeo/porosity.hpp"
#include "mgeo/serialization.hpp"

namespace mgeo {

/// One named check of a suite run, with its constants echoed for audit.
struct Certificate {
    std::string name;
    bool passed = false;
    json values;
};

struct SuiteResult {
    json report;       // the full report.json payload
    std::string csv;   // details.csv payload (header + per-trial rows)
    bool all_passed = false;
};

std::vector<std::string> suite_names();

/// Default parameter block of a named suite.
json default_config(const std::string& suite);

/// Validates the config (schema_version, suite name, seed, parameters)
/// and runs it. Throws ConfigInvalid on malformed input; never writes
/// files itself.
SuiteResult run_suite(const json& config);

/// Writes report.json and details.csv into the directory (created when
/// missing).
void write_outputs(const SuiteResult& result, const std::string& out_dir);

/// Renders a stored report as a human-readable pass/fail table.
std::string format_report(const json& report);

// Named constructions shared by the suites, the unit tests and the
// acceptance runs.

/// Arm tips of the two-arm star domain: e = (1, 0) and u on the unit
/// circle with ||e - u|| = 1/3.
std::pair<Vec, Vec> star_arm_tips();

/// The star X = [0, e] cup [0, u] sampled with per_arm points per arm,
/// star-shaped about the origin.
Region make_two_arm_star(int per_arm);

/// The mapping with small pointwise constants but global constant >= 1:
/// zero on the u-arm, z -> (max(z1 - 1/3, 0)/2, 0) on the e-arm.
std::function<Vec(const Vec&)> star_gap_formula();

/// The canonical porosity workbench: C_X = C_Y = [0, 1] on the line,
/// theta = 0, U the open ball B(0.5, 0.45), f(x) = x/2, the family-G
/// enumeration and the deepest-clearance segment pick.
struct PorosityLab {
    ContextPtr context;
    Region U;
    SegmentFamilyG family;
    FamilySegment gamma;
    SampledMapping f;
    ExtendedMapping F;
};

PorosityLab make_porosity_lab(int domain_samples = 401, int range_samples = 201);

}  // namespace mgeo
