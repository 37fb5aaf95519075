#ifndef QCB_ENTROPY_HPP
#define QCB_ENTROPY_HPP

// Entropic functionals over validated operators: the von Neumann entropy and
// its homogeneous extension to subnormalized positive operators, the quantum
// relative entropy (with its extension to the positive cone), conditional
// entropy, mutual information and energy moments. Relative entropy signals
// support violations with an IEEE infinity instead of throwing; infinities
// are legitimate outputs here.

#include <cmath>
#include <limits>

#include "qcb/matrix.hpp"
#include "qcb/scalars.hpp"
#include "qcb/spectrum.hpp"

namespace qcb {

inline double kInfiniteDivergence() { return std::numeric_limits<double>::infinity(); }

// S(rho) = Tr eta(rho)
inline double von_neumann_entropy(const DensityMatrix& rho) {
  EigenSystem es = spectral_decompose_raw(rho.mat());
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) s += eta(std::max(es.values(i), 0.0));
  return s;
}

// homogeneous extension S~(A) = sum eta(lambda_i) - eta(Tr A), S~(0) = 0
inline double extended_entropy_raw(const Matrix& a) {
  EigenSystem es = spectral_decompose_raw(a);
  double s = 0.0, tr = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double v = std::max(es.values(i), 0.0);
    if (es.values(i) < -kPsdTol)
      throw ValidationError("extended_entropy: negative eigenvalue " +
                            std::to_string(es.values(i)));
    s += eta(v);
    tr += v;
  }
  if (tr <= 0.0) return 0.0;
  return s - eta(tr);
}

inline double extended_entropy(const SubHermitian& a) { return extended_entropy_raw(a.mat()); }

inline double extended_entropy(const DensityMatrix& rho) {
  return extended_entropy_raw(rho.mat());
}

// Tr rho ln omega through omega's eigenbasis; infinity flag raised when rho
// puts weight outside omega's support (threshold kSupportTol)
namespace detail {
inline bool trace_log_overlap(const Matrix& rho, const Matrix& omega, double* out) {
  EigenSystem es = spectral_decompose_raw(omega);
  double acc = 0.0;
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    const double mu = es.values(j);
    const double w = (es.vectors.col(j).adjoint() * rho * es.vectors.col(j))(0).real();
    if (mu <= kSupportTol) {
      if (w > kSupportTol) return false;  // support violation
      continue;
    }
    acc += w * std::log(mu);
  }
  *out = acc;
  return true;
}

inline double trace_log_self(const Matrix& rho) {
  EigenSystem es = spectral_decompose_raw(rho);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double v = es.values(i);
    if (v > kSupportTol) acc += v * std::log(v);
  }
  return acc;
}
}  // namespace detail

// D(rho || omega) for states; +infinity when supp rho is not contained in
// supp omega
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& omega) {
  require_equal_dims(rho, omega, "relative_entropy");
  double cross = 0.0;
  if (!detail::trace_log_overlap(rho.mat(), omega.mat(), &cross)) return kInfiniteDivergence();
  const double d = detail::trace_log_self(rho.mat()) - cross;
  return d < 0.0 ? 0.0 : d;
}

// Extension of D to the positive cone:
// D(A || B) = Tr A ln A - Tr A ln B + Tr B - Tr A, D(0 || B) = Tr B.
inline double relative_entropy_ext(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("relative_entropy_ext: dimension mismatch");
  const double tra = a.trace().real();
  const double trb = b.trace().real();
  if (tra <= kSupportTol) return trb;
  double cross = 0.0;
  if (!detail::trace_log_overlap(a, b, &cross)) return kInfiniteDivergence();
  return detail::trace_log_self(a) - cross + trb - tra;
}

// S(A|B) = S(rho_AB) - S(rho_B)
inline double conditional_entropy(const DensityMatrix& rho_ab, int dA, int dB) {
  return von_neumann_entropy(rho_ab) -
         von_neumann_entropy(partial_trace(rho_ab, dA, dB, Subsystem::B));
}

// I(A:B) = S(rho_A) + S(rho_B) - S(rho_AB)
inline double mutual_information(const DensityMatrix& rho_ab, int dA, int dB) {
  const double mi = von_neumann_entropy(partial_trace(rho_ab, dA, dB, Subsystem::A)) +
                    von_neumann_entropy(partial_trace(rho_ab, dA, dB, Subsystem::B)) -
                    von_neumann_entropy(rho_ab);
  return mi < 0.0 ? 0.0 : mi;
}

// sum_k h_k^a <tau_k|rho|tau_k> with tau_k the given basis columns (the
// computational basis when basis is null); a = 1 gives the mean energy E_H
inline double energy_moment(const DensityMatrix& rho, const HamiltonianSpectrum& spec,
                            double a = 1.0, const Matrix* basis = nullptr) {
  if (a < 1.0) throw ValidationError("energy_moment: exponent a must be >= 1");
  const int d = rho.dim();
  if (spec.length() < static_cast<std::size_t>(d))
    throw ValidationError("energy_moment: spectrum shorter than state dimension");
  if (basis != nullptr && (basis->rows() != d || basis->cols() != d))
    throw ValidationError("energy_moment: basis dimension mismatch");
  double acc = 0.0;
  for (int k = 0; k < d; ++k) {
    const double h = spec.level(static_cast<std::size_t>(k));
    const double w = basis == nullptr
                         ? rho.mat()(k, k).real()
                         : (basis->col(k).adjoint() * rho.mat() * basis->col(k))(0).real();
    if (h > 0.0) acc += std::pow(h, a) * std::max(w, 0.0);
  }
  return acc;
}

// same moment for a raw positive operator (clipped parts, marginals)
inline double energy_moment_raw(const Matrix& a, const HamiltonianSpectrum& spec,
                                double power = 1.0) {
  if (spec.length() < static_cast<std::size_t>(a.rows()))
    throw ValidationError("energy_moment_raw: spectrum shorter than operator dimension");
  double acc = 0.0;
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const double h = spec.level(static_cast<std::size_t>(k));
    if (h > 0.0) acc += std::pow(h, power) * std::max(a(k, k).real(), 0.0);
  }
  return acc;
}

}  // namespace qcb

#endif  // QCB_ENTROPY_HPP
