#ifndef QCB_MATRIX_HPP
#define QCB_MATRIX_HPP

// Dense Hermitian and density-matrix algebra: validated operator types,
// spectral decompositions with reproducible ordering, trace-norm distances,
// eigenvalue clipping, partial traces and the Jordan decomposition of a
// commuting state pair through orthogonal remainders and a common part.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qcb/errors.hpp"
#include "qcb/rng.hpp"

namespace qcb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;     // max-entry deviation from A = A^dag
inline constexpr double kPsdTol = 1e-10;      // admissible eigenvalue negativity
inline constexpr double kTraceTol = 1e-12;    // admissible trace deviation
inline constexpr double kSupportTol = 1e-12;  // eigenvalue threshold for support/rank
inline constexpr double kCommuteTol = 1e-10;  // Frobenius norm of the commutator

namespace detail {

inline void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw ValidationError(std::string(who) + ": matrix must be square and nonempty");
}

inline double max_hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// lexicographic order on eigenvector columns, used only to break exact ties
inline bool column_lex_less(const Matrix& v, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    const Complex& x = v(r, a);
    const Complex& y = v(r, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace detail

struct EigenSystem {
  RealVector values;  // nonincreasing
  Matrix vectors;     // columns matched to values
};

// Eigendecomposition of a Hermitian matrix with nonincreasing eigenvalues;
// exact ties are broken by eigenvector lexicographic order so repeated runs
// order degenerate subspaces identically.
inline EigenSystem spectral_decompose_raw(const Matrix& a) {
  detail::require_square(a, "spectral_decompose");
  const double defect = detail::max_hermiticity_defect(a);
  if (defect > kHermTol)
    throw ValidationError("spectral_decompose: non-Hermitian input, max entry deviation " +
                          std::to_string(defect));
  Eigen::SelfAdjointEigenSolver<Matrix> solver((a + a.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw ValidationError("spectral_decompose: eigensolver failed to converge");
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  const RealVector& ev = solver.eigenvalues();
  const Matrix& vec = solver.eigenvectors();
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) {
    if (ev(i) != ev(j)) return ev(i) > ev(j);
    return detail::column_lex_less(vec, i, j);
  });
  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = ev(idx[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = vec.col(idx[static_cast<std::size_t>(k)]);
  }
  return out;
}

// Validated Hermitian matrix. Construction symmetrizes the tiny numerical
// skew once the input passes the hermiticity tolerance.
class HermitianMatrix {
public:
  static HermitianMatrix from(Matrix m) {
    detail::require_square(m, "HermitianMatrix");
    const double defect = detail::max_hermiticity_defect(m);
    if (defect > kHermTol)
      throw ValidationError("HermitianMatrix: hermiticity defect " + std::to_string(defect) +
                            " exceeds tolerance");
    Matrix sym = (m + m.adjoint()) / 2.0;
    return HermitianMatrix(std::move(sym));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }
  double trace() const { return m_.trace().real(); }

private:
  explicit HermitianMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

inline EigenSystem spectral_decompose(const HermitianMatrix& a) {
  return spectral_decompose_raw(a.mat());
}

// Positive unit-trace state. Eigenvalues in (-1e-10, 0) are clipped to zero
// and the state renormalized; larger negativity is rejected. An optional
// shared-eigenbasis tag lets commuting pairs carry the basis they were
// constructed in.
class DensityMatrix {
public:
  static DensityMatrix from(Matrix m) {
    HermitianMatrix h = HermitianMatrix::from(std::move(m));
    const double tr = h.trace();
    if (std::abs(tr - 1.0) > kTraceTol)
      throw ValidationError("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
    EigenSystem es = spectral_decompose(h);
    const double min_ev = es.values(es.values.size() - 1);
    if (min_ev < -kPsdTol)
      throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(min_ev));
    if (min_ev < 0.0) {
      RealVector clipped = es.values.cwiseMax(0.0);
      clipped /= clipped.sum();
      Matrix rebuilt =
          es.vectors * clipped.cast<Complex>().asDiagonal() * es.vectors.adjoint();
      return DensityMatrix((rebuilt + rebuilt.adjoint()) / 2.0);
    }
    return DensityMatrix(h.mat() / tr);
  }

  // diagonal state from a probability vector (validated)
  static DensityMatrix diagonal(const std::vector<double>& p) {
    if (p.empty()) throw ValidationError("DensityMatrix::diagonal: empty vector");
    double sum = 0.0;
    for (double x : p) {
      if (x < -kPsdTol)
        throw ValidationError("DensityMatrix::diagonal: negative weight " + std::to_string(x));
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ValidationError("DensityMatrix::diagonal: weights sum to " + std::to_string(sum));
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(p.size()),
                            static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
          std::max(p[i], 0.0) / sum;
    return DensityMatrix(std::move(m));
  }

  // V diag(p) V^dag for a shared eigenbasis V; tags the result with V
  static DensityMatrix diagonal_in_basis(const std::vector<double>& p, const Matrix& basis,
                                         std::shared_ptr<const Matrix> tag = nullptr) {
    DensityMatrix d = diagonal(p);
    if (basis.rows() != d.dim() || basis.cols() != d.dim())
      throw ValidationError("diagonal_in_basis: basis dimension mismatch");
    Matrix m = basis * d.mat() * basis.adjoint();
    DensityMatrix out((m + m.adjoint()) / 2.0);
    out.basis_tag_ = tag ? std::move(tag) : std::make_shared<const Matrix>(basis);
    return out;
  }

  static DensityMatrix pure(const Eigen::VectorXcd& psi) {
    const double n2 = psi.squaredNorm();
    if (n2 <= 0.0) throw ValidationError("DensityMatrix::pure: zero vector");
    Matrix m = psi * psi.adjoint() / n2;
    return DensityMatrix(std::move(m));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }

  // shared-eigenbasis tag for commuting pairs (same pointer = same basis)
  const std::shared_ptr<const Matrix>& basis_tag() const { return basis_tag_; }
  void set_basis_tag(std::shared_ptr<const Matrix> tag) { basis_tag_ = std::move(tag); }

private:
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
  std::shared_ptr<const Matrix> basis_tag_;
  friend class SubHermitian;
};

// Positive operator with trace in [0,1]; holds clipped/capped states.
class SubHermitian {
public:
  static SubHermitian from(Matrix m) {
    HermitianMatrix h = HermitianMatrix::from(std::move(m));
    const double tr = h.trace();
    if (tr < -kTraceTol || tr > 1.0 + kTraceTol)
      throw ValidationError("SubHermitian: trace " + std::to_string(tr) + " outside [0,1]");
    EigenSystem es = spectral_decompose(h);
    if (es.values(es.values.size() - 1) < -kPsdTol)
      throw ValidationError("SubHermitian: negative eigenvalue " +
                            std::to_string(es.values(es.values.size() - 1)));
    return SubHermitian(h.mat(), std::max(tr, 0.0));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }
  double trace() const { return trace_; }

private:
  SubHermitian(Matrix m, double tr) : m_(std::move(m)), trace_(tr) {}
  Matrix m_;
  double trace_ = 0.0;
};

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

// trace norm of a Hermitian matrix: sum of |eigenvalues|
inline double trace_norm(const Matrix& a) {
  EigenSystem es = spectral_decompose_raw(a);
  return es.values.cwiseAbs().sum();
}

inline void require_equal_dims(const DensityMatrix& rho, const DensityMatrix& sigma,
                               const char* who) {
  if (rho.dim() != sigma.dim())
    throw ValidationError(std::string(who) + ": dimension mismatch " +
                          std::to_string(rho.dim()) + " vs " + std::to_string(sigma.dim()));
}

// (1/2)||rho - sigma||_1, in [0,1]
inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_equal_dims(rho, sigma, "trace_distance");
  return 0.5 * trace_norm(rho.mat() - sigma.mat());
}

// Hermitian principal square root (eigenvalues clipped at zero)
inline Matrix operator_sqrt(const Matrix& a) {
  EigenSystem es = spectral_decompose_raw(a);
  RealVector s = es.values.cwiseMax(0.0).cwiseSqrt();
  return es.vectors * s.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

// F(rho,sigma) = ||sqrt(rho) sqrt(sigma)||_1^2, in [0,1]
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_equal_dims(rho, sigma, "fidelity");
  const Matrix sr = operator_sqrt(rho.mat());
  Matrix inner = sr * sigma.mat() * sr;
  EigenSystem es = spectral_decompose_raw((inner + inner.adjoint()) / 2.0);
  double root_sum = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    root_sum += std::sqrt(std::max(es.values(i), 0.0));
  return std::min(root_sum * root_sum, 1.0);
}

// ---------------------------------------------------------------------------
// Eigenvalue clipping (the operators [rho - eps I]_+ and rho ^ eps I)
// ---------------------------------------------------------------------------

// positive part of (a - eps I) in a's eigenbasis
inline Matrix clip_below_raw(const Matrix& a, double eps) {
  if (eps < 0.0) throw ValidationError("clip_below: negative threshold");
  EigenSystem es = spectral_decompose_raw(a);
  RealVector v = (es.values.array() - eps).cwiseMax(0.0);
  return es.vectors * v.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

// a ^ eps I = a - [a - eps I]_+ (eigenvalues min(lambda_i, eps))
inline Matrix cap_at_raw(const Matrix& a, double eps) {
  if (eps < 0.0) throw ValidationError("cap_at: negative threshold");
  EigenSystem es = spectral_decompose_raw(a);
  RealVector v = es.values.cwiseMin(eps).cwiseMax(0.0);
  return es.vectors * v.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

inline SubHermitian clip_below(const DensityMatrix& rho, double eps) {
  if (eps < 0.0 || eps > 1.0) throw ValidationError("clip_below: eps outside [0,1]");
  return SubHermitian::from(clip_below_raw(rho.mat(), eps));
}

inline SubHermitian cap_at(const DensityMatrix& rho, double eps) {
  if (eps < 0.0 || eps > 1.0) throw ValidationError("cap_at: eps outside [0,1]");
  return SubHermitian::from(cap_at_raw(rho.mat(), eps));
}

// ---------------------------------------------------------------------------
// Bipartite helpers
// ---------------------------------------------------------------------------

enum class Subsystem { A, B };

// partial trace of a (dA*dB)x(dA*dB) matrix, basis index = a*dB + b
inline Matrix partial_trace_raw(const Matrix& m, int dA, int dB, Subsystem keep) {
  if (dA < 1 || dB < 1 || m.rows() != static_cast<Eigen::Index>(dA) * dB ||
      m.rows() != m.cols())
    throw ValidationError("partial_trace: dimension " + std::to_string(m.rows()) +
                          " does not factor as " + std::to_string(dA) + "x" +
                          std::to_string(dB));
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dA, dA);
    for (int a = 0; a < dA; ++a)
      for (int a2 = 0; a2 < dA; ++a2)
        for (int b = 0; b < dB; ++b) out(a, a2) += m(a * dB + b, a2 * dB + b);
    return out;
  }
  Matrix out = Matrix::Zero(dB, dB);
  for (int b = 0; b < dB; ++b)
    for (int b2 = 0; b2 < dB; ++b2)
      for (int a = 0; a < dA; ++a) out(b, b2) += m(a * dB + b, a * dB + b2);
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, int dA, int dB, Subsystem keep) {
  return DensityMatrix::from(partial_trace_raw(rho.mat(), dA, dB, keep));
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// ---------------------------------------------------------------------------
// Commutation and the Jordan decomposition
// ---------------------------------------------------------------------------

inline double commutator_norm(const Matrix& a, const Matrix& b) {
  return (a * b - b * a).norm();
}

inline bool commutes(const DensityMatrix& rho, const DensityMatrix& sigma,
                     double tol = kCommuteTol) {
  require_equal_dims(rho, sigma, "commutes");
  return commutator_norm(rho.mat(), sigma.mat()) <= tol;
}

// rank at the support threshold
inline int numerical_rank(const Matrix& a, double tol = kSupportTol) {
  EigenSystem es = spectral_decompose_raw(a);
  int r = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) > tol) ++r;
  return r;
}

inline int numerical_rank(const DensityMatrix& rho, double tol = kSupportTol) {
  return numerical_rank(rho.mat(), tol);
}

// diagonal pinching in a given basis (identity basis by default):
// rho_hat = sum_k <tau_k|rho|tau_k> |tau_k><tau_k|
inline DensityMatrix pinch_diagonal(const DensityMatrix& rho, const Matrix* basis = nullptr) {
  const int d = rho.dim();
  std::vector<double> p(static_cast<std::size_t>(d));
  if (basis == nullptr) {
    for (int k = 0; k < d; ++k) p[static_cast<std::size_t>(k)] = rho.mat()(k, k).real();
    return DensityMatrix::diagonal(p);
  }
  if (basis->rows() != d || basis->cols() != d)
    throw ValidationError("pinch_diagonal: basis dimension mismatch");
  for (int k = 0; k < d; ++k)
    p[static_cast<std::size_t>(k)] =
        (basis->col(k).adjoint() * rho.mat() * basis->col(k))(0).real();
  return DensityMatrix::diagonal_in_basis(p, *basis);
}

struct JordanSplit {
  double epsilon;
  DensityMatrix tau_plus;
  DensityMatrix tau_minus;
  DensityMatrix omega_star;
};

// tau_plus/tau_minus of the general Hermitian split of rho - sigma; valid for
// any pair. The common part omega_star = (rho - eps tau_plus)/(1 - eps) is a
// state only under the commuting hypothesis, so it is not produced here.
struct HermitianJordanParts {
  double epsilon;
  DensityMatrix tau_plus;
  DensityMatrix tau_minus;
};

inline HermitianJordanParts hermitian_jordan_parts(const DensityMatrix& rho,
                                                   const DensityMatrix& sigma) {
  require_equal_dims(rho, sigma, "hermitian_jordan_parts");
  EigenSystem es = spectral_decompose_raw(rho.mat() - sigma.mat());
  const Eigen::Index n = es.values.size();
  double eps = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) eps += std::max(es.values(i), 0.0);
  if (eps < 1e-14) throw DegenerateSplitError("hermitian_jordan_parts: states coincide");
  RealVector plus = es.values.cwiseMax(0.0) / eps;
  RealVector minus = (-es.values).cwiseMax(0.0) / eps;
  Matrix tp = es.vectors * plus.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  Matrix tm = es.vectors * minus.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  return {eps, DensityMatrix::from(std::move(tp)), DensityMatrix::from(std::move(tm))};
}

namespace detail {

// Shared eigenbasis of a commuting pair by perturbed joint diagonalization:
// diagonalize rho + c sigma for a small irrational-ish c and verify that the
// basis diagonalizes both factors.
inline Matrix shared_eigenbasis(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.basis_tag() && rho.basis_tag() == sigma.basis_tag()) return *rho.basis_tag();
  static constexpr double kShifts[] = {0.37195660, 0.20898764, 0.51376452, 0.08414709};
  double best_offdiag = 1e300;
  Matrix best;
  for (double c : kShifts) {
    EigenSystem es = spectral_decompose_raw(rho.mat() + c * sigma.mat());
    const Matrix a = es.vectors.adjoint() * rho.mat() * es.vectors;
    const Matrix b = es.vectors.adjoint() * sigma.mat() * es.vectors;
    double offdiag = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        if (i != j) offdiag = std::max({offdiag, std::abs(a(i, j)), std::abs(b(i, j))});
    if (offdiag < best_offdiag) {
      best_offdiag = offdiag;
      best = es.vectors;
    }
    if (offdiag <= 1e-8) return es.vectors;
  }
  if (best_offdiag > 1e-7)
    throw PreconditionError(
        "shared_eigenbasis: joint diagonalization failed, residual off-diagonal " +
        std::to_string(best_offdiag));
  return best;
}

}  // namespace detail

// Jordan decomposition of a commuting pair: eps = (1/2)||rho - sigma||_1,
// tau_plus = [rho - sigma]_+/eps, tau_minus = [rho - sigma]_-/eps and the
// common part omega_star = (rho - eps tau_plus)/(1 - eps). Use
// hermitian_jordan_parts for pairs outside the commuting hypothesis.
inline JordanSplit jordan_split(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_equal_dims(rho, sigma, "jordan_split");
  const double comm = commutator_norm(rho.mat(), sigma.mat());
  if (comm > kCommuteTol)
    throw PreconditionError("jordan_split: commutator norm " + std::to_string(comm) +
                            " exceeds tolerance; use hermitian_jordan_parts");
  const Matrix basis = detail::shared_eigenbasis(rho, sigma);
  const int d = rho.dim();
  std::vector<double> p(static_cast<std::size_t>(d)), q(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    p[static_cast<std::size_t>(k)] =
        (basis.col(k).adjoint() * rho.mat() * basis.col(k))(0).real();
    q[static_cast<std::size_t>(k)] =
        (basis.col(k).adjoint() * sigma.mat() * basis.col(k))(0).real();
  }
  double eps = 0.0;
  for (int k = 0; k < d; ++k)
    eps += 0.5 * std::abs(p[static_cast<std::size_t>(k)] - q[static_cast<std::size_t>(k)]);
  if (eps < 1e-14) throw DegenerateSplitError("jordan_split: states coincide");
  std::vector<double> tp(static_cast<std::size_t>(d)), tm(static_cast<std::size_t>(d)),
      ws(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const std::size_t i = static_cast<std::size_t>(k);
    tp[i] = std::max(p[i] - q[i], 0.0) / eps;
    tm[i] = std::max(q[i] - p[i], 0.0) / eps;
  }
  if (1.0 - eps < 1e-12) {
    // orthogonal pair: the common part carries zero weight, any state closes
    // the reconstruction identity; the maximally mixed state keeps it defined
    std::fill(ws.begin(), ws.end(), 1.0 / d);
  } else {
    for (int k = 0; k < d; ++k) {
      const std::size_t i = static_cast<std::size_t>(k);
      ws[i] = std::max(std::min(p[i], q[i]), 0.0) / (1.0 - eps);
    }
  }
  auto tag = std::make_shared<const Matrix>(basis);
  return {eps, DensityMatrix::diagonal_in_basis(tp, basis, tag),
          DensityMatrix::diagonal_in_basis(tm, basis, tag),
          DensityMatrix::diagonal_in_basis(ws, basis, tag)};
}

// sorted (nonincreasing) eigenvalues
inline std::vector<double> sorted_spectrum(const DensityMatrix& rho) {
  EigenSystem es = spectral_decompose_raw(rho.mat());
  std::vector<double> v(es.values.data(), es.values.data() + es.values.size());
  return v;
}

// dimension of the minimal subspace containing both supports
inline int joint_support_dim(const DensityMatrix& rho, const DensityMatrix& sigma,
                             double tol = kSupportTol) {
  require_equal_dims(rho, sigma, "joint_support_dim");
  return numerical_rank((rho.mat() + sigma.mat()) / 2.0, tol / 2.0);
}

}  // namespace qcb

#endif  // QCB_MATRIX_HPP
