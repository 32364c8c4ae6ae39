#pragma once

#include <Eigen/Dense>
#include <complex>

#include "mbsense/errors.hpp"

namespace mbsense {

using ComplexVec = Eigen::VectorXcd;
using ComplexMat = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Square complex matrix checked to equal its conjugate transpose
/// (within 1e-12 relative, Frobenius).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMat m);

  const ComplexMat& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  ComplexMat m_;
};

/// The transform pair used throughout: forward kernel (1/N) e^{-j2\pi kq/N},
/// adjoint its conjugate transpose, so F F^H = I/N.
class ScaledDft {
 public:
  explicit ScaledDft(int n);

  int size() const { return n_; }
  ComplexVec forward(const ComplexVec& v) const;  // F v
  ComplexVec adjoint(const ComplexVec& v) const;  // F^H v

 private:
  int n_;
};

// Convenience wrappers sized from the argument.
ComplexVec dft_forward(const ComplexVec& v);
ComplexVec dft_adjoint(const ComplexVec& v);

struct HpdSolution {
  ComplexVec x;
  bool regularized = false;  // ridge fallback was taken
};

/// Factorize-and-solve for Hermitian positive definite systems. On a failed
/// factorization retries once with ridge A + eps*I, eps = 1e-9*trace(A)/dim
/// (floored to a tiny positive value so an all-zero system still solves),
/// and flags the result. Throws SingularMatrixError if the retry fails too.
HpdSolution solve_hpd(const HermitianMatrix& a, const ComplexVec& b);

namespace detail {
// Unnormalized FFTs used by the transform pair and the fast correlator.
// sign = -1: X(k) = sum_q x(q) e^{-j2pi kq/L};  sign = +1: conjugate kernel.
ComplexVec fft(const ComplexVec& v, int sign);
}  // namespace detail

}  // namespace mbsense
