#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "mbsense/baselines.hpp"
#include "mbsense/report.hpp"
#include "mbsense/solver.hpp"

namespace mbsense {

/// Strict scenario parse: unknown keys are rejected, `blocked` (index array)
/// and `blocked_range` ([first, last], inclusive) are mutually exclusive.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

/// Applies "key=value" overrides onto scenario fields; unknown keys throw
/// before any computation.
void apply_override(Scenario& s, const std::string& key, const std::string& value);

nlohmann::json scenario_to_json(const Scenario& s);
nlohmann::json metrics_to_json(const SidelobeMetrics& m);
SidelobeMetrics metrics_from_json(const nlohmann::json& j);

nlohmann::json result_to_json(const DesignResult& r, const ValidatedScenario& scn,
                              const std::string& label);

nlohmann::json baseline_to_json(const BaselineDesign& d, const SidelobeMetrics& m,
                                const ValidatedScenario& scn, BaselineKind kind,
                                const std::string& label);

nlohmann::json comparison_to_json(const ComparisonReport& rep);

/// Minimal view of a stored result, enough to drive compare.
struct LoadedResult {
  std::string label;
  int m_bs = 0;
  int n_sub = 0;
  SidelobeMetrics metrics;
};
LoadedResult load_result(const std::filesystem::path& path);

/// Temp-file-then-rename writers so interrupted runs leave no partial files.
void write_text_atomic(const std::string& text, const std::filesystem::path& path);
void write_json_atomic(const nlohmann::json& j, const std::filesystem::path& path);

/// One row per lag: lag, pair, re, im, dB (dB relative to `db_ref`).
void write_profile_csv(const CorrelationProfile& p, int m1, int m2, double db_ref,
                       const std::filesystem::path& path);

/// Parses a profile CSV back into (lag -> value); exact round-trip of re/im.
std::map<int, Complex> read_profile_csv(const std::filesystem::path& path);

/// Writes <label>__m<m1>m<m2>__<auto|cross>.csv for every ordered pair;
/// returns the file names written.
std::vector<std::string> export_profiles(const CorrelationProfile& p,
                                         const std::string& label,
                                         const std::filesystem::path& dir);

}  // namespace mbsense
