#include "mbsense/solver.hpp"

#include <cmath>
#include <limits>

namespace mbsense {

namespace {

// (E_l v)(t) = v(t - l), zero-filled outside the window.
ComplexVec shifted(const ComplexVec& v, int lag) {
  const int n = static_cast<int>(v.size());
  ComplexVec out = ComplexVec::Zero(n);
  if (lag >= 0)
    out.tail(n - lag) = v.head(n - lag);
  else
    out.head(n + lag) = v.tail(n + lag);
  return out;
}

// sum_l E_l (sum_m c_m c_m^H) E_l^H over all lags collapses to a Toeplitz
// matrix whose (i, j) entry is the summed autocorrelation at lag j - i.
ComplexMat full_lag_toeplitz(const ComplexMat& cols) {
  const int n = static_cast<int>(cols.rows());
  ComplexVec acorr = ComplexVec::Zero(2 * n - 1);
  for (Eigen::Index m = 0; m < cols.cols(); ++m)
    acorr += xcorr_fast(cols.col(m), cols.col(m));
  ComplexMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = acorr(j - i + n - 1);
  return out;
}

Complex mainlobe_inner(const TimeWaveformSet& y, const FilterBank& h, int m) {
  return y.cols.col(m).dot(h.cols.col(m));  // y_m^H h_m
}

// Scale w so that |w| <= cap holds exactly in floating point.
Complex clip_magnitude_up_to(Complex w, double cap) {
  double mag = std::abs(w);
  if (mag <= cap) return w;
  w *= cap / mag;
  while (std::abs(w) > cap) w *= (1.0 - 4.0 * std::numeric_limits<double>::epsilon());
  return w;
}

// Scale w so that |w| >= floor holds exactly in floating point.
Complex raise_magnitude_to(Complex w, double floor_mag) {
  double mag = std::abs(w);
  if (mag == 0.0) return Complex(floor_mag, 0.0);
  if (mag >= floor_mag) return w;
  w *= floor_mag / mag;
  while (std::abs(w) < floor_mag) w *= (1.0 + 4.0 * std::numeric_limits<double>::epsilon());
  return w;
}

}  // namespace

SolverState init_state(const ValidatedScenario& scn) {
  SolverState st;
  st.s = random_phase_init(scn, scn.seed());
  st.y = synthesize(st.s);
  st.h = FilterBank{st.y.cols};
  st.z.resize(scn.m_bs());
  for (int m = 0; m < scn.m_bs(); ++m) st.z[m] = mainlobe_inner(st.y, st.h, m);
  st.u = ComplexVec::Zero(static_cast<Eigen::Index>(scn.m_bs()) * scn.n_sub());
  st.v.assign(scn.m_bs(), Complex(0.0, 0.0));
  return st;
}

QuadraticSystem assemble_phi(const SolverState& state, const ValidatedScenario& scn) {
  const int n = scn.n_sub();
  const int m_bs = scn.m_bs();
  if (state.h.n_sub() != n || state.h.m_bs() != m_bs || state.y.n_sub() != n)
    throw DimensionError("assemble_phi: state does not match scenario");

  const ComplexMat full_term = full_lag_toeplitz(state.h.cols);
  const ComplexMat w = adjoint_per_column(state.s.cols);

  ComplexMat phi = ComplexMat::Zero(static_cast<Eigen::Index>(m_bs) * n,
                                    static_cast<Eigen::Index>(m_bs) * n);
  ComplexVec b(static_cast<Eigen::Index>(m_bs) * n);
  for (int m = 0; m < m_bs; ++m) {
    ComplexMat block = 2.0 * full_term;
    for (int lag = -scn.mainlobe_halfwidth(); lag <= scn.mainlobe_halfwidth(); ++lag) {
      ComplexVec t = shifted(state.h.cols.col(m), lag);
      block.noalias() -= 2.0 * t * t.adjoint();
    }
    block += scn.rho_u() * ComplexMat::Identity(n, n);
    block.noalias() +=
        scn.rho_v() * state.h.cols.col(m) * state.h.cols.col(m).adjoint();
    phi.block(m * n, m * n, n, n) = block;

    b.segment(m * n, n) =
        scn.rho_u() * (w.col(m) - state.u.segment(m * n, n)) +
        scn.rho_v() * std::conj(state.z[m] + state.v[m]) * state.h.cols.col(m);
  }
  phi = 0.5 * (phi + phi.adjoint()).eval();
  return {HermitianMatrix(std::move(phi)), std::move(b)};
}

QuadraticSystem assemble_psi(const SolverState& state, const ValidatedScenario& scn) {
  const int n = scn.n_sub();
  const int m_bs = scn.m_bs();
  if (state.y.n_sub() != n || state.y.m_bs() != m_bs)
    throw DimensionError("assemble_psi: state does not match scenario");

  const ComplexMat full_term = full_lag_toeplitz(state.y.cols);

  ComplexMat psi = ComplexMat::Zero(static_cast<Eigen::Index>(m_bs) * n,
                                    static_cast<Eigen::Index>(m_bs) * n);
  ComplexVec g(static_cast<Eigen::Index>(m_bs) * n);
  for (int m = 0; m < m_bs; ++m) {
    ComplexMat block = 2.0 * full_term;
    for (int lag = -scn.mainlobe_halfwidth(); lag <= scn.mainlobe_halfwidth(); ++lag) {
      // E_l^H = E_{-l}
      ComplexVec t = shifted(state.y.cols.col(m), -lag);
      block.noalias() -= 2.0 * t * t.adjoint();
    }
    block.noalias() +=
        scn.rho_v() * state.y.cols.col(m) * state.y.cols.col(m).adjoint();
    psi.block(m * n, m * n, n, n) = block;

    g.segment(m * n, n) =
        scn.rho_v() * (state.z[m] + state.v[m]) * state.y.cols.col(m);
  }
  psi = 0.5 * (psi + psi.adjoint()).eval();
  return {HermitianMatrix(std::move(psi)), std::move(g)};
}

void update_y(SolverState& state, const ValidatedScenario& scn) {
  QuadraticSystem sys = assemble_phi(state, scn);
  HpdSolution sol = solve_hpd(sys.matrix, sys.rhs);
  if (sol.regularized) ++state.regularized_solves;

  SolverState trial = state;
  trial.y = TimeWaveformSet::from_stacked(sol.x, scn.m_bs());
  const double before = augmented_lagrangian(trial, scn);

  const double cap = std::sqrt(scn.eta() * scn.avg_power());
  for (Eigen::Index k = 0; k < sol.x.size(); ++k)
    sol.x(k) = clip_magnitude_up_to(sol.x(k), cap);
  state.y = TimeWaveformSet::from_stacked(sol.x, scn.m_bs());

  const double after = augmented_lagrangian(state, scn);
  state.last_projection_increase = std::max(0.0, after - before);
}

void update_h(SolverState& state, const ValidatedScenario& scn) {
  QuadraticSystem sys = assemble_psi(state, scn);
  HpdSolution sol = solve_hpd(sys.matrix, sys.rhs);
  if (sol.regularized) ++state.regularized_solves;
  state.h = FilterBank{TimeWaveformSet::from_stacked(sol.x, scn.m_bs()).cols};
}

void update_s(SolverState& state, const ValidatedScenario& scn) {
  const int n = scn.n_sub();
  ComplexMat shifted_sum = state.y.cols;
  for (int m = 0; m < scn.m_bs(); ++m)
    shifted_sum.col(m) += state.u.segment(m * n, n);
  const ComplexMat f = forward_per_column(shifted_sum);

  state.s.cols = ComplexMat::Zero(n, scn.m_bs());
  for (int m = 0; m < scn.m_bs(); ++m) {
    for (int idx : scn.active()) {
      const Complex fv = f(idx, m);
      state.s.cols(idx, m) =
          fv == Complex(0.0, 0.0) ? Complex(1.0, 0.0) : std::polar(1.0, std::arg(fv));
    }
  }
}

void update_z(SolverState& state, const ValidatedScenario& scn) {
  for (int m = 0; m < scn.m_bs(); ++m) {
    const Complex unprojected = mainlobe_inner(state.y, state.h, m) - state.v[m];
    state.z[m] = raise_magnitude_to(unprojected, scn.gamma());
  }
}

void update_duals(SolverState& state, const ValidatedScenario& scn) {
  const ComplexMat w = adjoint_per_column(state.s.cols);
  const int n = scn.n_sub();
  for (int m = 0; m < scn.m_bs(); ++m) {
    state.u.segment(m * n, n) += state.y.cols.col(m) - w.col(m);
    state.v[m] += state.z[m] - mainlobe_inner(state.y, state.h, m);
  }
}

double augmented_lagrangian(const SolverState& state, const ValidatedScenario& scn) {
  const int halfwidth = scn.mainlobe_halfwidth();
  CorrelationProfile p = profile(state.y, FilterBank{state.h.cols});

  double total = 0.0;
  for (int m1 = 0; m1 < scn.m_bs(); ++m1)
    for (int m2 = 0; m2 < scn.m_bs(); ++m2) total += p.at(m1, m2).squaredNorm();
  double mainlobe = 0.0;
  for (int m = 0; m < scn.m_bs(); ++m)
    for (int lag = -halfwidth; lag <= halfwidth; ++lag)
      mainlobe += std::norm(p.value(m, m, lag));

  const ComplexMat w = adjoint_per_column(state.s.cols);
  double split_s = 0.0;
  const int n = scn.n_sub();
  for (int m = 0; m < scn.m_bs(); ++m)
    split_s +=
        (state.y.cols.col(m) - w.col(m) + state.u.segment(m * n, n)).squaredNorm();

  double split_z = 0.0;
  for (int m = 0; m < scn.m_bs(); ++m)
    split_z += std::norm(state.z[m] - mainlobe_inner(state.y, state.h, m) + state.v[m]);

  return total - mainlobe + 0.5 * scn.rho_u() * split_s + 0.5 * scn.rho_v() * split_z;
}

Residuals compute_residuals(const SolverState& state, const ValidatedScenario& scn) {
  const ComplexMat w = adjoint_per_column(state.s.cols);
  const double mn = static_cast<double>(scn.m_bs()) * scn.n_sub();
  const double diff = (state.y.cols - w).norm();

  Residuals r;
  r.primal_s = diff / std::sqrt(mn);
  r.primal_s_rel = diff / std::max(w.norm(), 1e-300);
  for (int m = 0; m < scn.m_bs(); ++m) {
    const double d = std::abs(state.z[m] - mainlobe_inner(state.y, state.h, m));
    r.primal_z = std::max(r.primal_z, d);
    r.primal_z_rel =
        std::max(r.primal_z_rel, d / std::max(scn.gamma(), std::abs(state.z[m])));
  }
  return r;
}

DesignResult solve(const ValidatedScenario& scn) {
  SolverState st = init_state(scn);

  bool converged = false;
  for (int k = 1; k <= scn.max_iters(); ++k) {
    st.iter = k;
    update_y(st, scn);
    update_h(st, scn);
    update_s(st, scn);
    update_z(st, scn);
    update_duals(st, scn);

    CorrelationProfile p = profile(st.y, st.h);
    Residuals res = compute_residuals(st, scn);
    st.history.push_back({k, augmented_lagrangian(st, scn),
                          isl_objective(p, scn.mainlobe_halfwidth()), res.primal_s,
                          res.primal_z});
    if (res.primal_s < scn.tol_primal() && res.primal_z < scn.tol_primal()) {
      converged = true;
      break;
    }
  }

  DesignResult out;
  out.x = synthesize(st.s);
  out.h = st.h;
  out.s = st.s;
  out.y = st.y;
  out.metrics = metrics(out.x, out.h, scn);
  out.converged = converged;
  out.iterations = st.iter;
  out.residuals = compute_residuals(st, scn);
  out.y_x_divergence = (st.y.cols - out.x.cols).norm();
  out.history = std::move(st.history);
  out.regularized_solves = st.regularized_solves;
  return out;
}

}  // namespace mbsense
