#pragma once

#include <optional>
#include <vector>

#include "mbsense/model.hpp"

namespace mbsense {

/// Cross-correlation r(l) = a^H E_l b = sum_k conj(a(k)) b(k-l) for lags
/// l = -(N-1)..N-1, by direct O(N^2) summation.
ComplexVec xcorr_direct(const ComplexVec& a, const ComplexVec& b);

/// Same quantity via zero-padded transforms, O(N log N); agrees with
/// xcorr_direct within 1e-10 absolute.
ComplexVec xcorr_fast(const ComplexVec& a, const ComplexVec& b);

/// Correlation sequences for every ordered BS pair (m1, m2), each of length
/// 2N-1 over lags -(N-1)..N-1.
class CorrelationProfile {
 public:
  CorrelationProfile(int m_bs, int n_sub);

  int m_bs() const { return m_bs_; }
  int n_sub() const { return n_sub_; }
  int n_lags() const { return 2 * n_sub_ - 1; }
  int lag_min() const { return -(n_sub_ - 1); }

  ComplexVec& at(int m1, int m2);
  const ComplexVec& at(int m1, int m2) const;
  Complex value(int m1, int m2, int lag) const;

 private:
  int m_bs_, n_sub_;
  std::vector<ComplexVec> r_;  // index m1 * M + m2
};

/// All M^2 ordered-pair correlations of waveforms against filters.
CorrelationProfile profile(const TimeWaveformSet& x, const FilterBank& h);

/// Total correlation energy with auto terms counted in both the dedicated
/// auto sum and the all-pairs sum (the literal double-counted form).
double isl_full(const CorrelationProfile& p);

/// Design objective: all-pair correlation energy minus the per-BS
/// autocorrelation energy in the mainlobe region |l| <= halfwidth.
double isl_objective(const CorrelationProfile& p, int mainlobe_halfwidth);

struct SidelobeMetrics {
  double isl_full = 0.0;
  double isl_objective = 0.0;
  // Peak sidelobe levels, dB relative to the largest auto mainlobe across
  // BSs. Auto excludes |l| <= mainlobe halfwidth; cross includes all lags.
  // Empty when no qualifying lag exists (e.g. cross for M = 1).
  std::optional<double> psl_auto_db;
  std::optional<double> psl_cross_db;
  double mainlobe_gain = 0.0;            // min_m |r_mm(0)|
  std::vector<double> papr_per_bs;       // max_n |x_m(n)|^2 / P
  std::vector<int> mainlobe_width_3db;   // contiguous lags within -3 dB of the peak
};

/// Evaluates every metric for a waveform/filter pair under the scenario's
/// halfwidth and derived average power. Throws NormalizationError when the
/// largest auto mainlobe is zero.
SidelobeMetrics metrics(const TimeWaveformSet& x, const FilterBank& h,
                        const ValidatedScenario& scn);

}  // namespace mbsense
