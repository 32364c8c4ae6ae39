#pragma once

#include <utility>

#include "mbsense/correlation.hpp"

namespace mbsense {

struct IterationRecord {
  int iter = 0;
  double lagrangian = 0.0;  // augmented Lagrangian after the iteration
  double objective = 0.0;   // design objective evaluated on (y, h)
  double res_s = 0.0;       // ||y - (I (x) F^H) s|| / sqrt(MN)
  double res_z = 0.0;       // max_m |z_m - y_m^H h_m|
};

/// All primal/auxiliary/dual iterates of the alternating loop.
struct SolverState {
  TimeWaveformSet y;           // auxiliary time-domain iterate
  FilterBank h;
  FreqSequenceSet s;
  std::vector<Complex> z;      // per-BS mainlobe auxiliaries
  ComplexVec u;                // stacked MN dual for the waveform split
  std::vector<Complex> v;      // per-BS duals for the mainlobe split
  int iter = 0;
  std::vector<IterationRecord> history;
  int regularized_solves = 0;  // solve_hpd ridge fallbacks taken so far
  // Augmented-Lagrangian increase caused by the PAPR projection in the
  // latest y update (tracked, not asserted).
  double last_projection_increase = 0.0;
};

/// Starting point: random-phase s, y synthesized from it, matched h = y,
/// z_m = y_m^H h_m, zero duals.
SolverState init_state(const ValidatedScenario& scn);

struct QuadraticSystem {
  HermitianMatrix matrix;
  ComplexVec rhs;
};

/// Normal matrix and right-hand side of the y subproblem: block-diagonal
/// with per-BS blocks
///   2*sum_l E_l H H^H E_l^H - 2*sum_{|l|<=i} (E_l h_m)(E_l h_m)^H
///   + rho_u I + rho_v h_m h_m^H,
/// b_m = rho_u (F^H s_m - u_m) + rho_v conj(z_m + v_m) h_m.
/// The full-lag term collapses to a Toeplitz form built from the summed
/// filter autocorrelations.
QuadraticSystem assemble_phi(const SolverState& state, const ValidatedScenario& scn);

/// Normal matrix and right-hand side of the h subproblem (same structure
/// with shifts transposed and y in place of h); the linear term is
/// g_m = rho_v (z_m + v_m) y_m.
QuadraticSystem assemble_psi(const SolverState& state, const ValidatedScenario& scn);

/// KKT solve of the y subproblem followed by the per-entry power clip
/// |y(n)|^2 <= eta*P (phase preserved; the cap holds exactly on output).
void update_y(SolverState& state, const ValidatedScenario& scn);

/// Unconstrained minimizer of the h subproblem.
void update_h(SolverState& state, const ValidatedScenario& scn);

/// Phase projection: s_m(n) = e^{j arg(f_m(n))} on active carriers with
/// f_m = F (y_m + u_m), zero on blocked; zero f defaults to phase 0.
void update_s(SolverState& state, const ValidatedScenario& scn);

/// z_m = y_m^H h_m - v_m projected onto {|z| >= gamma} (radial, exact).
void update_z(SolverState& state, const ValidatedScenario& scn);

/// u += y - (I (x) F^H) s;  v_m += z_m - y_m^H h_m.
void update_duals(SolverState& state, const ValidatedScenario& scn);

/// Full penalized objective
///   sum_l ||Y^H E_l H||_F^2 - sum_m sum_{|l|<=i} |y_m^H E_l h_m|^2
///   + (rho_u/2) ||y - (I (x) F^H)s + u||^2
///   + (rho_v/2) sum_m |z_m - y_m^H h_m + v_m|^2.
double augmented_lagrangian(const SolverState& state, const ValidatedScenario& scn);

struct Residuals {
  double primal_s = 0.0;      // ||y - (I (x) F^H) s|| / sqrt(MN)
  double primal_z = 0.0;      // max_m |z_m - y_m^H h_m|
  double primal_s_rel = 0.0;  // ||y - (I (x) F^H) s|| / ||(I (x) F^H) s||
  double primal_z_rel = 0.0;  // max_m |z_m - y_m^H h_m| / max(gamma, |z_m|)
};

Residuals compute_residuals(const SolverState& state, const ValidatedScenario& scn);

struct DesignResult {
  TimeWaveformSet x;  // synthesize(s); satisfies the spectrum constraint exactly
  FilterBank h;
  FreqSequenceSet s;
  TimeWaveformSet y;  // final auxiliary waveform; satisfies the PAPR cap exactly
  SidelobeMetrics metrics;
  bool converged = false;
  int iterations = 0;
  Residuals residuals;
  double y_x_divergence = 0.0;  // ||y - x||_2
  std::vector<IterationRecord> history;
  int regularized_solves = 0;
};

/// Runs the alternating loop (y, h, s, z, duals per iteration) until both
/// primal residuals drop below tol_primal or max_iters is reached.
DesignResult solve(const ValidatedScenario& scn);

}  // namespace mbsense
