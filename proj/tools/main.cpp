#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "mbsense/io.hpp"

namespace fs = std::filesystem;
using namespace mbsense;

namespace {

std::string fmt_opt_db(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

void print_metrics_row(const std::string& label, const SidelobeMetrics& m) {
  std::printf("%-18s isl_full %.6g  isl_obj %.6g  psl_auto %s dB  psl_cross %s dB  mainlobe %.4f\n",
              label.c_str(), m.isl_full, m.isl_objective,
              fmt_opt_db(m.psl_auto_db).c_str(), fmt_opt_db(m.psl_cross_db).c_str(),
              m.mainlobe_gain);
}

void print_papr(const char* tag, const std::vector<double>& papr, double eta) {
  std::printf("%s", tag);
  for (size_t m = 0; m < papr.size(); ++m)
    std::printf(" BS%zu %.4f%s", m, papr[m], papr[m] <= eta ? "" : " (over)");
  std::printf("  (threshold eta = %.4g)\n", eta);
}

Scenario load_with_overrides(const std::string& path,
                             const std::vector<std::string>& sets,
                             std::optional<std::uint64_t> seed) {
  Scenario s = load_scenario(path);
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ValidationError("set", "override must look like key=value: '" + kv + "'");
    apply_override(s, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (seed) s.seed = *seed;
  return s;
}

int run_validate(const std::string& path) {
  ValidatedScenario scn = validate(load_scenario(path));
  std::printf("valid: M=%d N=%d |blocked|=%d active=%d\n", scn.m_bs(), scn.n_sub(),
              static_cast<int>(scn.blocked().size()), scn.n_active());
  std::printf("gamma=%.6g eta=%.4g i=%d avg_power=%.6g rho_u=%.4g rho_v=%.4g "
              "max_iters=%d tol=%.3g seed=%llu\n",
              scn.gamma(), scn.eta(), scn.mainlobe_halfwidth(), scn.avg_power(),
              scn.rho_u(), scn.rho_v(), scn.max_iters(), scn.tol_primal(),
              static_cast<unsigned long long>(scn.seed()));
  return 0;
}

int run_design(const std::string& path, const std::string& out_dir,
               const std::vector<std::string>& sets, std::optional<std::uint64_t> seed,
               std::string label) {
  Scenario raw = load_with_overrides(path, sets, seed);
  ValidatedScenario scn = validate(raw);
  if (label.empty()) label = fs::path(path).stem().string();

  DesignResult res = solve(scn);

  const fs::path dir(out_dir);
  write_json_atomic(result_to_json(res, scn, label), dir / (label + ".result.json"));
  CorrelationProfile p = profile(res.x, res.h);
  auto files = export_profiles(p, label, dir);

  print_metrics_row(label, res.metrics);
  print_papr("papr(x):", res.metrics.papr_per_bs, scn.eta());
  TimeWaveformSet y = res.y;
  std::vector<double> papr_y(scn.m_bs());
  for (int m = 0; m < scn.m_bs(); ++m)
    papr_y[m] = y.cols.col(m).cwiseAbs2().maxCoeff() / scn.avg_power();
  print_papr("papr(y):", papr_y, scn.eta());
  std::printf("iterations %d  converged %s  res_s %.3g (rel %.3g)  res_z %.3g (rel %.3g)\n",
              res.iterations, res.converged ? "yes" : "no", res.residuals.primal_s,
              res.residuals.primal_s_rel, res.residuals.primal_z,
              res.residuals.primal_z_rel);
  std::printf("wrote %s and %zu profile CSVs to %s\n",
              (label + ".result.json").c_str(), files.size(), out_dir.c_str());
  if (!res.converged)
    std::fprintf(stderr, "warning: solver did not reach tol_primal within max_iters\n");
  return 0;
}

int run_baseline(const std::string& path, const std::string& out_dir,
                 const std::string& kind_name, std::optional<std::uint64_t> seed,
                 std::string label) {
  ValidatedScenario scn = validate(load_scenario(path));
  BaselineKind kind = baseline_kind_from_string(kind_name);
  const std::uint64_t used_seed = seed ? *seed : scn.seed();
  if (label.empty()) label = "baseline-" + kind_name;

  BaselineDesign d = baseline_design(scn, kind, used_seed);
  SidelobeMetrics m = metrics(d.x, d.h, scn);

  const fs::path dir(out_dir);
  write_json_atomic(baseline_to_json(d, m, scn, kind, label),
                    dir / (label + ".baseline.json"));
  auto files = export_profiles(profile(d.x, d.h), label, dir);

  print_metrics_row(label, m);
  print_papr("papr(x):", m.papr_per_bs, scn.eta());
  std::printf("wrote %s and %zu profile CSVs to %s\n",
              (label + ".baseline.json").c_str(), files.size(), out_dir.c_str());
  return 0;
}

int run_compare(const std::vector<std::string>& result_paths, const std::string& out) {
  std::vector<RunEntry> entries;
  for (const auto& p : result_paths) {
    LoadedResult r = load_result(p);
    entries.push_back({r.label, r.m_bs, r.n_sub, r.metrics, p});
  }
  ComparisonReport rep = compare(entries);
  for (const auto& e : rep.entries) print_metrics_row(e.label, e.metrics);
  for (const auto& d : rep.deltas)
    std::printf("delta %s - %s: auto %s dB  cross %s dB\n", d.label_a.c_str(),
                d.label_b.c_str(), fmt_opt_db(d.auto_db).c_str(),
                fmt_opt_db(d.cross_db).c_str());
  if (!out.empty()) write_json_atomic(comparison_to_json(rep), out);
  return 0;
}

int run_sweep(const std::string& path, const std::string& out_dir,
              const std::vector<int>& masks, const std::vector<std::string>& sets,
              std::optional<std::uint64_t> seed) {
  Scenario base = load_with_overrides(path, sets, seed);
  SweepResult sweep = mask_sweep(base, masks);

  const fs::path dir(out_dir);
  for (auto& entry : sweep.entries) {
    ValidatedScenario scn = validate(entry.scenario);
    write_json_atomic(result_to_json(entry.result, scn, entry.label),
                      dir / (entry.label + ".result.json"));
    export_profiles(profile(entry.result.x, entry.result.h), entry.label, dir);
    print_metrics_row(entry.label, entry.result.metrics);
  }
  write_json_atomic(comparison_to_json(sweep.report), dir / "sweep.report.json");
  std::printf("wrote %zu runs and sweep.report.json to %s\n", sweep.entries.size(),
              out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OFDM multi-BS sensing sequence and mismatched-filter designer"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = "out", kind = "matched_filter", label, compare_out;
  std::vector<std::string> sets;
  std::vector<std::string> result_paths;
  std::vector<int> masks;
  std::optional<std::uint64_t> seed;

  auto* validate_cmd = app.add_subcommand("validate", "check a scenario file");
  validate_cmd->add_option("file", scenario_path, "scenario JSON")->required();

  auto* design_cmd = app.add_subcommand("design", "run the joint design");
  design_cmd->add_option("file", scenario_path, "scenario JSON")->required();
  design_cmd->add_option("--out", out_dir, "output directory");
  design_cmd->add_option("--set", sets, "scenario overrides key=value");
  design_cmd->add_option("--seed", seed, "override the scenario seed");
  design_cmd->add_option("--label", label, "label for artifacts");

  auto* baseline_cmd = app.add_subcommand("baseline", "evaluate a reference design");
  baseline_cmd->add_option("file", scenario_path, "scenario JSON")->required();
  baseline_cmd->add_option("--kind", kind,
                           "matched_filter | random_phase_matched");
  baseline_cmd->add_option("--out", out_dir, "output directory");
  baseline_cmd->add_option("--seed", seed, "override the scenario seed");
  baseline_cmd->add_option("--label", label, "label for artifacts");

  auto* compare_cmd = app.add_subcommand("compare", "compare stored results");
  compare_cmd->add_option("results", result_paths, "result JSON files")
      ->required()
      ->expected(-2);
  compare_cmd->add_option("--out", compare_out, "write the comparison JSON here");

  auto* sweep_cmd = app.add_subcommand("sweep", "mask-size sweep");
  sweep_cmd->add_option("file", scenario_path, "scenario JSON")->required();
  sweep_cmd->add_option("--masks", masks, "blocked-set sizes")->required()->delimiter(',');
  sweep_cmd->add_option("--out", out_dir, "output directory");
  sweep_cmd->add_option("--set", sets, "scenario overrides key=value");
  sweep_cmd->add_option("--seed", seed, "override the scenario seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) return run_validate(scenario_path);
    if (design_cmd->parsed())
      return run_design(scenario_path, out_dir, sets, seed, label);
    if (baseline_cmd->parsed())
      return run_baseline(scenario_path, out_dir, kind, seed, label);
    if (compare_cmd->parsed()) return run_compare(result_paths, compare_out);
    if (sweep_cmd->parsed()) return run_sweep(scenario_path, out_dir, masks, sets, seed);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error (validation): %s\n", e.what());
    return 2;
  } catch (const DimensionError& e) {
    std::fprintf(stderr, "error (dimension): %s\n", e.what());
    return 2;
  } catch (const ContractError& e) {
    std::fprintf(stderr, "error (contract): %s\n", e.what());
    return 2;
  } catch (const SingularMatrixError& e) {
    std::fprintf(stderr, "error (solver): %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
