#include "mbsense/linalg.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace mbsense {

namespace detail {

namespace {

// fftw_execute_dft is thread-safe; plan creation/destruction is not and is
// guarded here. Plans are cached per (length, sign), created with
// FFTW_ESTIMATE (deterministic) and FFTW_UNALIGNED so they can run on any
// caller buffer.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<fftw_complex> in(n), out(n);
    fftw_plan p = fftw_plan_dft_1d(n, in.data(), out.data(), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

}  // namespace

ComplexVec fft(const ComplexVec& v, int sign) {
  const int n = static_cast<int>(v.size());
  if (n == 0) return v;
  ComplexVec out(n);
  fftw_plan plan = PlanCache::instance().get(n, sign);
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(const_cast<Complex*>(v.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace detail

HermitianMatrix::HermitianMatrix(ComplexMat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw ContractError("HermitianMatrix: matrix must be square");
  const double scale = m_.norm();
  const double asym = (m_ - m_.adjoint()).norm();
  if (asym > 1e-12 * std::max(scale, 1e-300))
    throw ContractError("HermitianMatrix: matrix is not Hermitian");
}

ScaledDft::ScaledDft(int n) : n_(n) {
  if (n <= 0) throw DimensionError("ScaledDft: transform length must be positive");
}

ComplexVec ScaledDft::forward(const ComplexVec& v) const {
  if (v.size() != n_)
    throw DimensionError("dft_forward: input length does not match configured N");
  return detail::fft(v, FFTW_FORWARD) / static_cast<double>(n_);
}

ComplexVec ScaledDft::adjoint(const ComplexVec& v) const {
  if (v.size() != n_)
    throw DimensionError("dft_adjoint: input length does not match configured N");
  return detail::fft(v, FFTW_BACKWARD) / static_cast<double>(n_);
}

ComplexVec dft_forward(const ComplexVec& v) {
  return ScaledDft(static_cast<int>(v.size())).forward(v);
}

ComplexVec dft_adjoint(const ComplexVec& v) {
  return ScaledDft(static_cast<int>(v.size())).adjoint(v);
}

HpdSolution solve_hpd(const HermitianMatrix& a, const ComplexVec& b) {
  const Eigen::Index n = a.dim();
  if (b.size() != n)
    throw DimensionError("solve_hpd: right-hand side length does not match matrix");

  Eigen::LLT<ComplexMat> llt(a.mat());
  if (llt.info() == Eigen::Success) return {llt.solve(b), false};

  double eps = 1e-9 * a.mat().trace().real() / static_cast<double>(n);
  if (!(eps > 0.0)) eps = 1e-30;
  ComplexMat ridged = a.mat();
  ridged.diagonal().array() += eps;
  Eigen::LLT<ComplexMat> retry(ridged);
  if (retry.info() != Eigen::Success)
    throw SingularMatrixError("solve_hpd: factorization failed even after ridge");
  return {retry.solve(b), true};
}

}  // namespace mbsense
