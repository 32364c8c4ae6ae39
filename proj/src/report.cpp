#include "mbsense/report.hpp"

#include <algorithm>
#include <set>

namespace mbsense {

namespace {

std::optional<double> delta_of(const std::optional<double>& a,
                               const std::optional<double>& b) {
  if (a && b) return *a - *b;
  return std::nullopt;
}

}  // namespace

ComparisonReport compare(const std::vector<RunEntry>& runs) {
  std::set<std::string> labels;
  for (const auto& run : runs) {
    if (!labels.insert(run.label).second)
      throw ValidationError("label", "duplicate run label '" + run.label + "'");
    if (run.m_bs != runs.front().m_bs || run.n_sub != runs.front().n_sub)
      throw DimensionError("compare: runs must share (M, N)");
  }

  ComparisonReport rep;
  rep.entries = runs;
  for (size_t a = 0; a < runs.size(); ++a) {
    for (size_t b = a + 1; b < runs.size(); ++b) {
      PslDelta d;
      d.label_a = runs[a].label;
      d.label_b = runs[b].label;
      d.auto_db = delta_of(runs[a].metrics.psl_auto_db, runs[b].metrics.psl_auto_db);
      d.cross_db =
          delta_of(runs[a].metrics.psl_cross_db, runs[b].metrics.psl_cross_db);
      rep.deltas.push_back(std::move(d));
    }
  }
  return rep;
}

SweepResult mask_sweep(const Scenario& base, const std::vector<int>& mask_sizes) {
  if (mask_sizes.empty())
    throw ValidationError("masks", "sweep needs at least one mask size");
  for (int size : mask_sizes) {
    if (size < 0 || size >= base.n_sub)
      throw ValidationError("masks", "mask size must lie in [0, n_sub)");
    if (size > 0 && base.blocked.empty())
      throw ValidationError("masks",
                            "base scenario needs a blocked set to anchor nonzero masks");
  }

  std::vector<int> sizes = mask_sizes;
  std::sort(sizes.begin(), sizes.end(), std::greater<int>());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  const int start =
      base.blocked.empty() ? 0 : *std::min_element(base.blocked.begin(), base.blocked.end());

  SweepResult sweep;
  std::vector<RunEntry> entries;
  for (int size : sizes) {
    Scenario scn = base;
    scn.blocked.clear();
    for (int k = 0; k < size; ++k) scn.blocked.push_back(start + k);
    ValidatedScenario vs = validate(scn);

    SweepEntry entry;
    entry.label = "mask" + std::to_string(size);
    entry.mask_size = size;
    entry.scenario = scn;
    entry.result = solve(vs);
    entries.push_back(
        {entry.label, scn.m_bs, scn.n_sub, entry.result.metrics, std::string{}});
    sweep.entries.push_back(std::move(entry));
  }
  sweep.report = compare(entries);
  return sweep;
}

}  // namespace mbsense
