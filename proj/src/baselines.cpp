#include "mbsense/baselines.hpp"

namespace mbsense {

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::matched_filter: return "matched_filter";
    case BaselineKind::random_phase_matched: return "random_phase_matched";
  }
  throw ContractError("unknown baseline kind");
}

BaselineKind baseline_kind_from_string(const std::string& name) {
  if (name == "matched_filter") return BaselineKind::matched_filter;
  if (name == "random_phase_matched") return BaselineKind::random_phase_matched;
  throw ValidationError("kind", "unknown baseline kind '" + name + "'");
}

FilterBank matched_filter(const TimeWaveformSet& x) { return {x.cols}; }

BaselineDesign baseline_design(const ValidatedScenario& scn, BaselineKind,
                               std::uint64_t seed) {
  BaselineDesign d;
  d.s = random_phase_init(scn, seed);
  d.x = synthesize(d.s);
  d.h = matched_filter(d.x);
  return d;
}

SidelobeMetrics baseline_metrics(const ValidatedScenario& scn, BaselineKind kind,
                                 std::uint64_t seed) {
  BaselineDesign d = baseline_design(scn, kind, seed);
  return metrics(d.x, d.h, scn);
}

}  // namespace mbsense
