#pragma once

#include <string>

#include "mbsense/correlation.hpp"

namespace mbsense {

/// Reference designs the solver is judged against. Both kinds start from the
/// seeded random-phase sequence and receive with the matched filter; the tags
/// keep comparison labels distinct (matched_filter names the reference used
/// in solver comparisons, random_phase_matched the unoptimized curve).
enum class BaselineKind { matched_filter, random_phase_matched };

std::string to_string(BaselineKind kind);
BaselineKind baseline_kind_from_string(const std::string& name);

/// h_m = x_m, so every auto mainlobe equals ||x_m||^2.
FilterBank matched_filter(const TimeWaveformSet& x);

struct BaselineDesign {
  FreqSequenceSet s;
  TimeWaveformSet x;
  FilterBank h;
};

BaselineDesign baseline_design(const ValidatedScenario& scn, BaselineKind kind,
                               std::uint64_t seed);

SidelobeMetrics baseline_metrics(const ValidatedScenario& scn, BaselineKind kind,
                                 std::uint64_t seed);

}  // namespace mbsense
