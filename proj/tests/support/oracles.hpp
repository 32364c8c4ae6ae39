#pragma once

// Test-only reference implementations, kept independent of the library's
// fast paths: dense transform/shift matrices, brute-force summations and
// Wirtinger finite differences.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include "mbsense/solver.hpp"

namespace oracles {

using mbsense::Complex;
using mbsense::ComplexMat;
using mbsense::ComplexVec;

inline ComplexMat dft_matrix(int n) {
  ComplexMat f(n, n);
  for (int k = 0; k < n; ++k)
    for (int q = 0; q < n; ++q)
      f(k, q) = std::polar(1.0 / n, -2.0 * std::numbers::pi * k * q / n);
  return f;
}

// E_l: ones where row - col = l.
inline ComplexMat shift_matrix(int n, int lag) {
  ComplexMat e = ComplexMat::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    const int c = r - lag;
    if (c >= 0 && c < n) e(r, c) = 1.0;
  }
  return e;
}

// r(l) = a^H E_l b evaluated against materialized shift matrices.
inline ComplexVec xcorr_dense(const ComplexVec& a, const ComplexVec& b) {
  const int n = static_cast<int>(a.size());
  ComplexVec r(2 * n - 1);
  for (int lag = -(n - 1); lag <= n - 1; ++lag)
    r(lag + n - 1) = a.adjoint() * shift_matrix(n, lag) * b;
  return r;
}

inline ComplexVec random_complex(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVec v(n);
  for (int k = 0; k < n; ++k) v(k) = Complex(g(rng), g(rng));
  return v;
}

inline ComplexMat random_complex_mat(int rows, int cols, std::mt19937_64& rng) {
  ComplexMat m(rows, cols);
  for (int c = 0; c < cols; ++c) m.col(c) = random_complex(rows, rng);
  return m;
}

// Augmented Lagrangian evaluated term by term with dense shift matrices.
inline double al_dense(const mbsense::SolverState& st,
                       const mbsense::ValidatedScenario& scn) {
  const int n = scn.n_sub();
  const int m_bs = scn.m_bs();
  const ComplexMat& y = st.y.cols;
  const ComplexMat& h = st.h.cols;

  double total = 0.0;
  for (int lag = -(n - 1); lag <= n - 1; ++lag) {
    const ComplexMat e = shift_matrix(n, lag);
    total += (y.adjoint() * e * h).squaredNorm();
  }
  double mainlobe = 0.0;
  for (int m = 0; m < m_bs; ++m)
    for (int lag = -scn.mainlobe_halfwidth(); lag <= scn.mainlobe_halfwidth(); ++lag) {
      const Complex r = y.col(m).adjoint() * shift_matrix(n, lag) * h.col(m);
      mainlobe += std::norm(r);
    }

  const ComplexMat fh = dft_matrix(n).adjoint();
  double split_s = 0.0;
  for (int m = 0; m < m_bs; ++m)
    split_s += (y.col(m) - fh * st.s.cols.col(m) + st.u.segment(m * n, n)).squaredNorm();

  double split_z = 0.0;
  for (int m = 0; m < m_bs; ++m) {
    const Complex inner = y.col(m).dot(h.col(m));
    split_z += std::norm(st.z[m] - inner + st.v[m]);
  }
  return total - mainlobe + 0.5 * scn.rho_u() * split_s + 0.5 * scn.rho_v() * split_z;
}

// Wirtinger gradient d f / d conj(p) by central differences on the real and
// imaginary parts of each coordinate.
inline ComplexVec fd_wirtinger_grad(const std::function<double(const ComplexVec&)>& f,
                                    const ComplexVec& p, double step) {
  ComplexVec g(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    ComplexVec q = p;
    q(k) = p(k) + step;
    const double fp = f(q);
    q(k) = p(k) - step;
    const double fm = f(q);
    q(k) = p(k) + Complex(0.0, step);
    const double fip = f(q);
    q(k) = p(k) - Complex(0.0, step);
    const double fim = f(q);
    const double dre = (fp - fm) / (2.0 * step);
    const double dim = (fip - fim) / (2.0 * step);
    g(k) = Complex(dre, dim) / 2.0;
  }
  return g;
}

// Mixed Wirtinger Hessian d^2 f / (d conj(p_r) d p_c) via 4-point second
// differences; exact (up to rounding) for quadratics, so a large step is fine.
inline ComplexMat fd_wirtinger_hessian(const std::function<double(const ComplexVec&)>& f,
                                       const ComplexVec& p, double step) {
  const Eigen::Index n = p.size();
  ComplexMat hess(n, n);
  const Complex wr[2] = {Complex(1, 0), Complex(0, 1)};
  const Complex wc[2] = {Complex(1, 0), Complex(0, -1)};
  const Complex pert[2] = {Complex(step, 0), Complex(0, step)};
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      Complex acc(0.0, 0.0);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          ComplexVec q = p;
          const auto eval = [&](double sr, double sc) {
            q = p;
            q(r) += sr * pert[a];
            q(c) += sc * pert[b];
            return f(q);
          };
          const double second =
              (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) /
              (4.0 * step * step);
          acc += wr[a] * wc[b] * second;
        }
      }
      hess(r, c) = acc / 4.0;
    }
  }
  return hess;
}

}  // namespace oracles
