#pragma once

#include <cstdint>
#include <vector>

#include "mbsense/linalg.hpp"

namespace mbsense {

/// All problem constants. `gamma <= 0` means "use the default rule"
/// (90% of the per-BS time-domain energy), resolved during validation.
struct Scenario {
  int m_bs = 1;                 // base stations M
  int n_sub = 0;                // subcarriers per BS N
  std::vector<int> blocked;     // 0-based blocked subcarrier indices
  double gamma = 0.0;           // mainlobe-gain threshold (linear amplitude)
  double eta = 1.5;             // PAPR threshold (ratio >= 1)
  int mainlobe_halfwidth = 2;   // lags |l| <= i excluded from the objective
  double rho_u = 1.0;           // penalty weight, waveform split
  double rho_v = 1.0;           // penalty weight, mainlobe split
  int max_iters = 500;
  double tol_primal = 1e-4;
  std::uint64_t seed = 1;
  bool require_mask = false;    // reject an empty blocked set when true
};

/// A Scenario that passed validation, with derived quantities cached:
/// sorted masks, the active set, average power P = |active|/N^2 and the
/// resolved gamma. Constructed only through validate().
class ValidatedScenario {
 public:
  const Scenario& raw() const { return raw_; }
  int m_bs() const { return raw_.m_bs; }
  int n_sub() const { return raw_.n_sub; }
  const std::vector<int>& blocked() const { return blocked_; }
  const std::vector<int>& active() const { return active_; }
  int n_active() const { return static_cast<int>(active_.size()); }
  double gamma() const { return gamma_; }
  double eta() const { return raw_.eta; }
  int mainlobe_halfwidth() const { return raw_.mainlobe_halfwidth; }
  double rho_u() const { return raw_.rho_u; }
  double rho_v() const { return raw_.rho_v; }
  int max_iters() const { return raw_.max_iters; }
  double tol_primal() const { return raw_.tol_primal; }
  std::uint64_t seed() const { return raw_.seed; }
  double avg_power() const { return avg_power_; }  // P

  friend ValidatedScenario validate(const Scenario& s);

 private:
  ValidatedScenario() = default;
  Scenario raw_;
  std::vector<int> blocked_;  // sorted, deduplicated
  std::vector<int> active_;
  double gamma_ = 0.0;
  double avg_power_ = 0.0;
};

/// Checks every Scenario invariant (reporting the offending field by name)
/// and caches derived quantities.
ValidatedScenario validate(const Scenario& s);

/// Per-BS frequency-domain sequences, one column per BS. Valid instances are
/// unit-modulus on the active set and exactly zero on the blocked set.
struct FreqSequenceSet {
  ComplexMat cols;  // N x M

  int n_sub() const { return static_cast<int>(cols.rows()); }
  int m_bs() const { return static_cast<int>(cols.cols()); }
  ComplexVec stacked() const;
};

/// Per-BS time-domain vectors (the synthesized x or the auxiliary y).
struct TimeWaveformSet {
  ComplexMat cols;  // N x M

  int n_sub() const { return static_cast<int>(cols.rows()); }
  int m_bs() const { return static_cast<int>(cols.cols()); }
  ComplexVec stacked() const;
  static TimeWaveformSet from_stacked(const ComplexVec& v, int m_bs);
};

/// Per-BS receive filters.
struct FilterBank {
  ComplexMat cols;  // N x M

  int n_sub() const { return static_cast<int>(cols.rows()); }
  int m_bs() const { return static_cast<int>(cols.cols()); }
  ComplexVec stacked() const;
};

/// Throws unless s satisfies the spectrum constraint for the scenario:
/// exact zeros on blocked carriers, |s|=1 within 1e-12 on active ones.
void check_spectrum_constraint(const FreqSequenceSet& s, const ValidatedScenario& scn);

/// Unit-modulus phases drawn uniformly on [0, 2pi) for every active carrier
/// (zero on blocked), deterministic in the seed. Draw order: BS-major,
/// ascending carrier index.
FreqSequenceSet random_phase_init(const ValidatedScenario& scn, std::uint64_t seed);

/// Per-BS adjoint transform: x_m = F^H s_m.
TimeWaveformSet synthesize(const FreqSequenceSet& s);

/// Adjoint transform applied column-wise to an arbitrary matrix (the linear
/// map behind synthesize, usable on unconstrained inputs).
ComplexMat adjoint_per_column(const ComplexMat& m);

/// Forward transform applied column-wise.
ComplexMat forward_per_column(const ComplexMat& m);

}  // namespace mbsense
