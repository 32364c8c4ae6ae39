#include "mbsense/correlation.hpp"

#include <cmath>

namespace mbsense {

ComplexVec xcorr_direct(const ComplexVec& a, const ComplexVec& b) {
  if (a.size() != b.size())
    throw DimensionError("xcorr_direct: inputs must have equal length");
  const int n = static_cast<int>(a.size());
  ComplexVec r = ComplexVec::Zero(2 * n - 1);
  for (int lag = -(n - 1); lag <= n - 1; ++lag) {
    Complex acc(0.0, 0.0);
    const int k_lo = std::max(0, lag);
    const int k_hi = std::min(n - 1, n - 1 + lag);
    for (int k = k_lo; k <= k_hi; ++k) acc += std::conj(a(k)) * b(k - lag);
    r(lag + n - 1) = acc;
  }
  return r;
}

ComplexVec xcorr_fast(const ComplexVec& a, const ComplexVec& b) {
  if (a.size() != b.size())
    throw DimensionError("xcorr_fast: inputs must have equal length");
  const int n = static_cast<int>(a.size());
  int len = 1;
  while (len < 2 * n - 1) len *= 2;

  ComplexVec pa = ComplexVec::Zero(len), pb = ComplexVec::Zero(len);
  pa.head(n) = a;
  pb.head(n) = b;
  ComplexVec fa = detail::fft(pa, -1);
  ComplexVec fb = detail::fft(pb, -1);
  ComplexVec prod = fa.conjugate().cwiseProduct(fb);
  // c(t) = sum_q conj(a(q-t)) b(q) circularly; r(l) = c(-l mod len).
  ComplexVec c = detail::fft(prod, +1) / static_cast<double>(len);
  ComplexVec r(2 * n - 1);
  for (int lag = -(n - 1); lag <= n - 1; ++lag)
    r(lag + n - 1) = c(((-lag) % len + len) % len);
  return r;
}

CorrelationProfile::CorrelationProfile(int m_bs, int n_sub)
    : m_bs_(m_bs), n_sub_(n_sub), r_(static_cast<size_t>(m_bs) * m_bs) {
  if (m_bs < 1 || n_sub < 1)
    throw DimensionError("CorrelationProfile: dimensions must be positive");
  for (auto& seq : r_) seq = ComplexVec::Zero(2 * n_sub - 1);
}

ComplexVec& CorrelationProfile::at(int m1, int m2) {
  return r_[static_cast<size_t>(m1) * m_bs_ + m2];
}

const ComplexVec& CorrelationProfile::at(int m1, int m2) const {
  return r_[static_cast<size_t>(m1) * m_bs_ + m2];
}

Complex CorrelationProfile::value(int m1, int m2, int lag) const {
  return at(m1, m2)(lag + n_sub_ - 1);
}

CorrelationProfile profile(const TimeWaveformSet& x, const FilterBank& h) {
  if (x.n_sub() != h.n_sub() || x.m_bs() != h.m_bs())
    throw DimensionError("profile: waveform and filter dimensions differ");
  CorrelationProfile p(x.m_bs(), x.n_sub());
  for (int m1 = 0; m1 < x.m_bs(); ++m1)
    for (int m2 = 0; m2 < x.m_bs(); ++m2)
      p.at(m1, m2) = xcorr_fast(x.cols.col(m1), h.cols.col(m2));
  return p;
}

double isl_full(const CorrelationProfile& p) {
  double auto_sum = 0.0, pair_sum = 0.0;
  for (int m = 0; m < p.m_bs(); ++m) auto_sum += p.at(m, m).squaredNorm();
  for (int m1 = 0; m1 < p.m_bs(); ++m1)
    for (int m2 = 0; m2 < p.m_bs(); ++m2) pair_sum += p.at(m1, m2).squaredNorm();
  return auto_sum + pair_sum;
}

double isl_objective(const CorrelationProfile& p, int mainlobe_halfwidth) {
  if (mainlobe_halfwidth >= p.n_sub())
    throw DimensionError("isl_objective: halfwidth must be < N");
  double total = 0.0;
  for (int m1 = 0; m1 < p.m_bs(); ++m1)
    for (int m2 = 0; m2 < p.m_bs(); ++m2) total += p.at(m1, m2).squaredNorm();
  double mainlobe = 0.0;
  for (int m = 0; m < p.m_bs(); ++m)
    for (int lag = -mainlobe_halfwidth; lag <= mainlobe_halfwidth; ++lag)
      mainlobe += std::norm(p.value(m, m, lag));
  return total - mainlobe;
}

SidelobeMetrics metrics(const TimeWaveformSet& x, const FilterBank& h,
                        const ValidatedScenario& scn) {
  if (x.n_sub() != scn.n_sub() || x.m_bs() != scn.m_bs())
    throw DimensionError("metrics: waveform does not match scenario");
  const int m_bs = x.m_bs();
  const int n = x.n_sub();
  const int halfwidth = scn.mainlobe_halfwidth();
  CorrelationProfile p = profile(x, h);

  double ref = 0.0;  // largest auto mainlobe, shared dB reference
  double min_peak = std::numeric_limits<double>::infinity();
  for (int m = 0; m < m_bs; ++m) {
    const double peak = std::abs(p.value(m, m, 0));
    ref = std::max(ref, peak);
    min_peak = std::min(min_peak, peak);
  }
  if (ref <= 0.0)
    throw NormalizationError("metrics: zero mainlobe, dB normalization undefined");

  SidelobeMetrics out;
  out.isl_full = isl_full(p);
  out.isl_objective = isl_objective(p, halfwidth);
  out.mainlobe_gain = min_peak;

  double peak_auto = -1.0, peak_cross = -1.0;
  for (int m1 = 0; m1 < m_bs; ++m1) {
    for (int m2 = 0; m2 < m_bs; ++m2) {
      const ComplexVec& r = p.at(m1, m2);
      for (int lag = -(n - 1); lag <= n - 1; ++lag) {
        if (m1 == m2 && std::abs(lag) <= halfwidth) continue;
        const double mag = std::abs(r(lag + n - 1));
        double& peak = (m1 == m2) ? peak_auto : peak_cross;
        peak = std::max(peak, mag);
      }
    }
  }
  if (peak_auto >= 0.0) out.psl_auto_db = 20.0 * std::log10(peak_auto / ref);
  if (peak_cross >= 0.0) out.psl_cross_db = 20.0 * std::log10(peak_cross / ref);

  out.papr_per_bs.resize(m_bs);
  for (int m = 0; m < m_bs; ++m)
    out.papr_per_bs[m] = x.cols.col(m).cwiseAbs2().maxCoeff() / scn.avg_power();

  // Width of the contiguous run around lag 0 staying within 3 dB of the
  // per-BS peak.
  const double width_thresh = std::pow(10.0, -3.0 / 20.0);
  out.mainlobe_width_3db.resize(m_bs);
  for (int m = 0; m < m_bs; ++m) {
    const ComplexVec& r = p.at(m, m);
    const double peak = std::abs(r(n - 1));
    int width = peak > 0.0 ? 1 : 0;
    for (int lag = 1; lag <= n - 1 && std::abs(r(lag + n - 1)) >= width_thresh * peak;
         ++lag)
      ++width;
    for (int lag = -1; lag >= -(n - 1) && std::abs(r(lag + n - 1)) >= width_thresh * peak;
         --lag)
      ++width;
    out.mainlobe_width_3db[m] = width;
  }
  return out;
}

}  // namespace mbsense
