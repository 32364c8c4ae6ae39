#include "mbsense/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

namespace mbsense {

namespace {

ComplexVec stack_columns(const ComplexMat& m) {
  ComplexVec out(m.rows() * m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    out.segment(c * m.rows(), m.rows()) = m.col(c);
  return out;
}

}  // namespace

ComplexVec FreqSequenceSet::stacked() const { return stack_columns(cols); }
ComplexVec TimeWaveformSet::stacked() const { return stack_columns(cols); }
ComplexVec FilterBank::stacked() const { return stack_columns(cols); }

TimeWaveformSet TimeWaveformSet::from_stacked(const ComplexVec& v, int m_bs) {
  if (m_bs < 1 || v.size() % m_bs != 0)
    throw DimensionError("TimeWaveformSet: stacked length is not a multiple of M");
  const Eigen::Index n = v.size() / m_bs;
  TimeWaveformSet out;
  out.cols.resize(n, m_bs);
  for (int m = 0; m < m_bs; ++m) out.cols.col(m) = v.segment(m * n, n);
  return out;
}

ValidatedScenario validate(const Scenario& s) {
  if (s.m_bs < 1) throw ValidationError("m_bs", "must be >= 1");
  if (s.n_sub < 1) throw ValidationError("n_sub", "must be >= 1");

  std::set<int> mask(s.blocked.begin(), s.blocked.end());
  for (int idx : mask) {
    if (idx < 0 || idx >= s.n_sub)
      throw ValidationError("blocked", "index " + std::to_string(idx) +
                                           " outside [0, " + std::to_string(s.n_sub) + ")");
  }
  if (static_cast<int>(mask.size()) >= s.n_sub)
    throw ValidationError("blocked", "must leave at least one active subcarrier");
  if (s.require_mask && mask.empty())
    throw ValidationError("blocked", "scenario requires a non-empty mask");

  if (!(s.eta >= 1.0)) throw ValidationError("eta", "eta must be >= 1");
  if (s.mainlobe_halfwidth < 0)
    throw ValidationError("mainlobe_halfwidth", "must be >= 0");
  if (s.mainlobe_halfwidth >= s.n_sub)
    throw ValidationError("mainlobe_halfwidth", "must be < n_sub");
  if (!(s.rho_u > 0.0)) throw ValidationError("rho_u", "must be > 0");
  if (!(s.rho_v > 0.0)) throw ValidationError("rho_v", "must be > 0");
  if (s.max_iters < 1) throw ValidationError("max_iters", "must be >= 1");
  if (!(s.tol_primal > 0.0)) throw ValidationError("tol_primal", "must be > 0");

  ValidatedScenario v;
  v.raw_ = s;
  v.blocked_.assign(mask.begin(), mask.end());
  v.active_.reserve(s.n_sub - mask.size());
  for (int n = 0; n < s.n_sub; ++n)
    if (!mask.count(n)) v.active_.push_back(n);

  const double n_active = static_cast<double>(v.active_.size());
  const double n_sub = static_cast<double>(s.n_sub);
  v.avg_power_ = n_active / (n_sub * n_sub);

  // Default mainlobe threshold: 90% of the matched-filter mainlobe energy.
  v.gamma_ = s.gamma > 0.0 ? s.gamma : 0.9 * n_active / n_sub;
  if (!(v.gamma_ > 0.0)) throw ValidationError("gamma", "must be > 0");
  v.raw_.gamma = v.gamma_;
  return v;
}

void check_spectrum_constraint(const FreqSequenceSet& s, const ValidatedScenario& scn) {
  if (s.n_sub() != scn.n_sub() || s.m_bs() != scn.m_bs())
    throw DimensionError("sequence set does not match scenario dimensions");
  for (int m = 0; m < s.m_bs(); ++m) {
    for (int idx : scn.blocked())
      if (s.cols(idx, m) != Complex(0.0, 0.0))
        throw ContractError("sequence has nonzero value on a blocked carrier");
    for (int idx : scn.active())
      if (std::abs(std::abs(s.cols(idx, m)) - 1.0) > 1e-12)
        throw ContractError("sequence is not unit-modulus on an active carrier");
  }
}

FreqSequenceSet random_phase_init(const ValidatedScenario& scn, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  FreqSequenceSet s;
  s.cols = ComplexMat::Zero(scn.n_sub(), scn.m_bs());
  for (int m = 0; m < scn.m_bs(); ++m)
    for (int idx : scn.active()) s.cols(idx, m) = std::polar(1.0, phase(rng));
  return s;
}

ComplexMat adjoint_per_column(const ComplexMat& m) {
  ScaledDft dft(static_cast<int>(m.rows()));
  ComplexMat out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.col(c) = dft.adjoint(m.col(c));
  return out;
}

ComplexMat forward_per_column(const ComplexMat& m) {
  ScaledDft dft(static_cast<int>(m.rows()));
  ComplexMat out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.col(c) = dft.forward(m.col(c));
  return out;
}

TimeWaveformSet synthesize(const FreqSequenceSet& s) {
  return {adjoint_per_column(s.cols)};
}

}  // namespace mbsense
