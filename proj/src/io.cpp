#include "mbsense/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mbsense {

namespace {

using nlohmann::json;

const char* const kScenarioKeys[] = {"m_bs",     "n_sub",      "blocked",
                                     "blocked_range", "gamma",  "eta",
                                     "mainlobe_halfwidth", "rho_u", "rho_v",
                                     "max_iters", "tol_primal", "seed",
                                     "require_mask"};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json interleaved(const ComplexVec& v) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    arr.push_back(v(k).real());
    arr.push_back(v(k).imag());
  }
  return arr;
}

json optional_to_json(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

std::optional<double> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("scenario", "top level must be an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : kScenarioKeys) known = known || key == k;
    if (!known) throw ValidationError(key, "unknown scenario key");
  }

  Scenario s;
  try {
    s.m_bs = j.at("m_bs").get<int>();
    s.n_sub = j.at("n_sub").get<int>();
    if (j.contains("blocked") && j.contains("blocked_range"))
      throw ValidationError("blocked", "give either 'blocked' or 'blocked_range', not both");
    if (j.contains("blocked")) s.blocked = j["blocked"].get<std::vector<int>>();
    if (j.contains("blocked_range")) {
      auto range = j["blocked_range"].get<std::vector<int>>();
      if (range.size() != 2)
        throw ValidationError("blocked_range", "expected [first, last]");
      for (int k = range[0]; k <= range[1]; ++k) s.blocked.push_back(k);
    }
    if (j.contains("gamma")) s.gamma = j["gamma"].get<double>();
    if (j.contains("eta")) s.eta = j["eta"].get<double>();
    if (j.contains("mainlobe_halfwidth"))
      s.mainlobe_halfwidth = j["mainlobe_halfwidth"].get<int>();
    if (j.contains("rho_u")) s.rho_u = j["rho_u"].get<double>();
    if (j.contains("rho_v")) s.rho_v = j["rho_v"].get<double>();
    if (j.contains("max_iters")) s.max_iters = j["max_iters"].get<int>();
    if (j.contains("tol_primal")) s.tol_primal = j["tol_primal"].get<double>();
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("require_mask")) s.require_mask = j["require_mask"].get<bool>();
  } catch (const json::exception& e) {
    throw ValidationError("scenario", std::string("malformed value: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("scenario", std::string("invalid JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

void apply_override(Scenario& s, const std::string& key, const std::string& value) {
  try {
    if (key == "m_bs") s.m_bs = std::stoi(value);
    else if (key == "n_sub") s.n_sub = std::stoi(value);
    else if (key == "gamma") s.gamma = std::stod(value);
    else if (key == "eta") s.eta = std::stod(value);
    else if (key == "mainlobe_halfwidth") s.mainlobe_halfwidth = std::stoi(value);
    else if (key == "rho_u") s.rho_u = std::stod(value);
    else if (key == "rho_v") s.rho_v = std::stod(value);
    else if (key == "max_iters") s.max_iters = std::stoi(value);
    else if (key == "tol_primal") s.tol_primal = std::stod(value);
    else if (key == "seed") s.seed = std::stoull(value);
    else if (key == "require_mask") s.require_mask = (value == "true" || value == "1");
    else if (key == "blocked") {
      s.blocked.clear();
      std::stringstream ss(value);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) s.blocked.push_back(std::stoi(tok));
    } else {
      throw ValidationError(key, "unknown override key");
    }
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError(key, "cannot parse override value '" + value + "'");
  } catch (const std::out_of_range&) {
    throw ValidationError(key, "override value out of range: '" + value + "'");
  }
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["m_bs"] = s.m_bs;
  j["n_sub"] = s.n_sub;
  j["blocked"] = s.blocked;
  j["gamma"] = s.gamma;
  j["eta"] = s.eta;
  j["mainlobe_halfwidth"] = s.mainlobe_halfwidth;
  j["rho_u"] = s.rho_u;
  j["rho_v"] = s.rho_v;
  j["max_iters"] = s.max_iters;
  j["tol_primal"] = s.tol_primal;
  j["seed"] = s.seed;
  j["require_mask"] = s.require_mask;
  return j;
}

json metrics_to_json(const SidelobeMetrics& m) {
  json j;
  j["isl_full"] = m.isl_full;
  j["isl_objective"] = m.isl_objective;
  j["psl_auto_db"] = optional_to_json(m.psl_auto_db);
  j["psl_cross_db"] = optional_to_json(m.psl_cross_db);
  j["mainlobe_gain"] = m.mainlobe_gain;
  j["papr_per_bs"] = m.papr_per_bs;
  j["mainlobe_width_3db"] = m.mainlobe_width_3db;
  return j;
}

SidelobeMetrics metrics_from_json(const json& j) {
  SidelobeMetrics m;
  m.isl_full = j.at("isl_full").get<double>();
  m.isl_objective = j.at("isl_objective").get<double>();
  m.psl_auto_db = optional_from_json(j.at("psl_auto_db"));
  m.psl_cross_db = optional_from_json(j.at("psl_cross_db"));
  m.mainlobe_gain = j.at("mainlobe_gain").get<double>();
  m.papr_per_bs = j.at("papr_per_bs").get<std::vector<double>>();
  m.mainlobe_width_3db = j.at("mainlobe_width_3db").get<std::vector<int>>();
  return m;
}

json result_to_json(const DesignResult& r, const ValidatedScenario& scn,
                    const std::string& label) {
  json j;
  j["label"] = label;
  j["scenario"] = scenario_to_json(scn.raw());
  j["derived"] = {{"avg_power", scn.avg_power()},
                  {"n_active", scn.n_active()},
                  {"gamma", scn.gamma()}};
  j["s"] = interleaved(r.s.stacked());
  j["h"] = interleaved(r.h.stacked());
  j["x"] = interleaved(r.x.stacked());
  j["y"] = interleaved(r.y.stacked());
  j["metrics"] = metrics_to_json(r.metrics);
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["residuals"] = {{"primal_s", r.residuals.primal_s},
                    {"primal_z", r.residuals.primal_z},
                    {"primal_s_rel", r.residuals.primal_s_rel},
                    {"primal_z_rel", r.residuals.primal_z_rel}};
  j["y_x_divergence"] = r.y_x_divergence;
  j["regularized_solves"] = r.regularized_solves;
  json hist = json::array();
  for (const auto& rec : r.history)
    hist.push_back({{"iter", rec.iter},
                    {"lagrangian", rec.lagrangian},
                    {"objective", rec.objective},
                    {"res_s", rec.res_s},
                    {"res_z", rec.res_z}});
  j["history"] = hist;
  return j;
}

json baseline_to_json(const BaselineDesign& d, const SidelobeMetrics& m,
                      const ValidatedScenario& scn, BaselineKind kind,
                      const std::string& label) {
  json j;
  j["label"] = label;
  j["kind"] = to_string(kind);
  j["scenario"] = scenario_to_json(scn.raw());
  j["derived"] = {{"avg_power", scn.avg_power()},
                  {"n_active", scn.n_active()},
                  {"gamma", scn.gamma()}};
  j["s"] = interleaved(d.s.stacked());
  j["h"] = interleaved(d.h.stacked());
  j["x"] = interleaved(d.x.stacked());
  j["metrics"] = metrics_to_json(m);
  return j;
}

json comparison_to_json(const ComparisonReport& rep) {
  json entries = json::array();
  for (const auto& e : rep.entries)
    entries.push_back({{"label", e.label},
                       {"m_bs", e.m_bs},
                       {"n_sub", e.n_sub},
                       {"metrics", metrics_to_json(e.metrics)},
                       {"profile_ref", e.profile_ref}});
  json deltas = json::array();
  for (const auto& d : rep.deltas)
    deltas.push_back({{"label_a", d.label_a},
                      {"label_b", d.label_b},
                      {"psl_auto_delta_db", optional_to_json(d.auto_db)},
                      {"psl_cross_delta_db", optional_to_json(d.cross_db)}});
  return {{"entries", entries}, {"deltas", deltas}};
}

LoadedResult load_result(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open result file: " + path.string());
  json j;
  in >> j;
  LoadedResult r;
  r.label = j.at("label").get<std::string>();
  r.m_bs = j.at("scenario").at("m_bs").get<int>();
  r.n_sub = j.at("scenario").at("n_sub").get<int>();
  r.metrics = metrics_from_json(j.at("metrics"));
  return r;
}

void write_text_atomic(const std::string& text, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

void write_json_atomic(const json& j, const std::filesystem::path& path) {
  write_text_atomic(j.dump(2) + "\n", path);
}

void write_profile_csv(const CorrelationProfile& p, int m1, int m2, double db_ref,
                       const std::filesystem::path& path) {
  const int n = p.n_sub();
  std::string text = "lag,pair,re,im,db\n";
  for (int lag = -(n - 1); lag <= n - 1; ++lag) {
    const Complex v = p.value(m1, m2, lag);
    const double db = 20.0 * std::log10(std::abs(v) / db_ref);
    text += std::to_string(lag);
    text += ",m" + std::to_string(m1) + "m" + std::to_string(m2);
    text += "," + format_double(v.real());
    text += "," + format_double(v.imag());
    text += "," + format_double(db);
    text += "\n";
  }
  write_text_atomic(text, path);
}

std::map<int, Complex> read_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile csv: " + path.string());
  std::map<int, Complex> out;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string lag_s, pair_s, re_s, im_s;
    std::getline(ss, lag_s, ',');
    std::getline(ss, pair_s, ',');
    std::getline(ss, re_s, ',');
    std::getline(ss, im_s, ',');
    out[std::stoi(lag_s)] = Complex(std::stod(re_s), std::stod(im_s));
  }
  return out;
}

std::vector<std::string> export_profiles(const CorrelationProfile& p,
                                         const std::string& label,
                                         const std::filesystem::path& dir) {
  double ref = 0.0;
  for (int m = 0; m < p.m_bs(); ++m) ref = std::max(ref, std::abs(p.value(m, m, 0)));
  if (ref <= 0.0)
    throw NormalizationError("export_profiles: zero mainlobe, dB undefined");

  std::vector<std::string> written;
  for (int m1 = 0; m1 < p.m_bs(); ++m1) {
    for (int m2 = 0; m2 < p.m_bs(); ++m2) {
      const std::string kind = (m1 == m2) ? "auto" : "cross";
      const std::string name = label + "__m" + std::to_string(m1) + "m" +
                               std::to_string(m2) + "__" + kind + ".csv";
      write_profile_csv(p, m1, m2, ref, dir / name);
      written.push_back(name);
    }
  }
  return written;
}

}  // namespace mbsense
