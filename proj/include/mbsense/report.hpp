#pragma once

#include <string>
#include <vector>

#include "mbsense/solver.hpp"

namespace mbsense {

struct RunEntry {
  std::string label;
  int m_bs = 0;
  int n_sub = 0;
  SidelobeMetrics metrics;
  std::string profile_ref;  // path or tag of the exported profile, may be empty
};

struct PslDelta {
  std::string label_a;
  std::string label_b;
  // a minus b, dB; empty when either side lacks the profile type
  std::optional<double> auto_db;
  std::optional<double> cross_db;
};

struct ComparisonReport {
  std::vector<RunEntry> entries;
  std::vector<PslDelta> deltas;  // one per unordered label pair
};

/// Pairwise PSL differences across labeled runs; all runs must share (M, N)
/// and labels must be unique.
ComparisonReport compare(const std::vector<RunEntry>& runs);

struct SweepEntry {
  std::string label;  // "mask<k>"
  int mask_size = 0;
  Scenario scenario;
  DesignResult result;
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // ordered by descending |blocked|
  ComparisonReport report;
};

/// Runs solve once per requested mask size (same seed), deriving each mask
/// as a contiguous block from the base scenario's first blocked index.
SweepResult mask_sweep(const Scenario& base, const std::vector<int>& mask_sizes);

}  // namespace mbsense
