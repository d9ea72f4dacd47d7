#pragma once

#include <stdexcept>
#include <string>

namespace mgeo {

/// Base class for all library errors. Every failure mode named in the
/// operation contracts derives from this, so callers can catch broadly
/// or per condition.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define MGEO_DEFINE_ERROR(NAME)                                      \
    class NAME : public Error {                                      \
    public:                                                          \
        explicit NAME(const std::string& what = #NAME)               \
            : Error(std::string(#NAME) + ": " + what) {}             \
    }

// spaces
MGEO_DEFINE_ERROR(ChartViolation);
MGEO_DEFINE_ERROR(SegmentNotUnique);
MGEO_DEFINE_ERROR(DegenerateTriangle);
MGEO_DEFINE_ERROR(PerimeterTooLarge);
MGEO_DEFINE_ERROR(SideInequalityViolated);
MGEO_DEFINE_ERROR(NoDeltaFound);
MGEO_DEFINE_ERROR(SpaceMismatch);

// regions
MGEO_DEFINE_ERROR(EmptyRegion);
MGEO_DEFINE_ERROR(NoWitness);
MGEO_DEFINE_ERROR(EmptyFamily);
MGEO_DEFINE_ERROR(StarViolation);

// mappings
MGEO_DEFINE_ERROR(ContextMismatch);
MGEO_DEFINE_ERROR(TooFewSamples);
MGEO_DEFINE_ERROR(SegmentOutsideDomain);
MGEO_DEFINE_ERROR(NoSteepPoint);
MGEO_DEFINE_ERROR(NoConvergence);

// extension
MGEO_DEFINE_ERROR(EmptyLandmarks);
MGEO_DEFINE_ERROR(SourceNotNonexpansive);
MGEO_DEFINE_ERROR(HypothesisViolated);

// porosity
MGEO_DEFINE_ERROR(PlanInfeasible);
MGEO_DEFINE_ERROR(SteepnessFailed);
MGEO_DEFINE_ERROR(TrialProjectionFailed);
MGEO_DEFINE_ERROR(NoTargetPoint);

// harness
MGEO_DEFINE_ERROR(ConfigInvalid);
MGEO_DEFINE_ERROR(FileNotFound);

#undef MGEO_DEFINE_ERROR

}  // namespace mgeo
