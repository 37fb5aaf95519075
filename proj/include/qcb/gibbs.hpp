#ifndef QCB_GIBBS_HPP
#define QCB_GIBBS_HPP

// Gibbs-state thermodynamics over HamiltonianSpectrum: the inverse
// temperature beta_H(E) solving Tr H e^{-beta H} = E Tr e^{-beta H}, the
// partition value Z_H(E), the maximum-entropy function F_H(E), truncated
// operators H_m / H0_m, Gibbs states at a materialized dimension, and the
// composite F over several single-system Hamiltonians.

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "qcb/entropy.hpp"
#include "qcb/errors.hpp"
#include "qcb/matrix.hpp"
#include "qcb/scalars.hpp"
#include "qcb/spectrum.hpp"

namespace qcb {

struct GibbsSolution {
  double E;          // mean energy, equals the request within tolerance
  double beta;       // inverse temperature, > 0
  double Z;          // partition value (may underflow for shifted spectra)
  double log_Z;      // always finite
  double F;          // max entropy at energy E: beta*E + ln Z
  double tail_mass;  // probability mass beyond the materialized prefix
};

namespace detail {

inline double mean_energy(const HamiltonianSpectrum& spec, double beta) {
  const HamiltonianSpectrum::PartitionSums s = spec.partition_sums(beta);
  return spec.min_level() + s.weight1 / s.weight0;
}

}  // namespace detail

// Root of the mean-energy equation by sign-changing bracket (doubling /
// halving from beta = 1; the mean is strictly decreasing in beta) followed by
// bisection. The residual target 1e-12 * max(1, E) leaves margin under the
// 1e-10 accuracy the solution is consumed at.
inline GibbsSolution solve_beta(const HamiltonianSpectrum& spec, double E) {
  const double h0 = spec.min_level();
  if (E <= h0)
    throw RangeError("solve_beta: energy " + std::to_string(E) +
                     " at or below the ground level " + std::to_string(h0));
  if (!spec.infinite()) {
    double arith = 0.0;
    for (std::size_t k = 0; k < spec.length(); ++k) arith += spec.level(k);
    arith /= static_cast<double>(spec.length());
    if (E >= arith)
      throw RangeError("solve_beta: energy " + std::to_string(E) +
                       " not attainable below the uniform mean " + std::to_string(arith) +
                       " of the finite spectrum");
  }
  const double target_tol = 1e-12 * std::max(1.0, E);
  double lo, hi;
  if (detail::mean_energy(spec, 1.0) > E) {
    lo = 1.0;
    hi = 2.0;
    int guard = 0;
    while (detail::mean_energy(spec, hi) > E) {
      lo = hi;
      hi *= 2.0;
      if (++guard > 200)
        throw RangeError("solve_beta: failed to bracket beta from above for E = " +
                         std::to_string(E));
    }
  } else {
    hi = 1.0;
    lo = 0.5;
    int guard = 0;
    while (detail::mean_energy(spec, lo) < E) {
      hi = lo;
      lo *= 0.5;
      if (++guard > 200)
        throw RangeError("solve_beta: failed to bracket beta from below for E = " +
                         std::to_string(E));
    }
  }
  double beta = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    beta = 0.5 * (lo + hi);
    const double m = detail::mean_energy(spec, beta);
    if (std::abs(m - E) <= target_tol) break;
    if (m > E)
      lo = beta;
    else
      hi = beta;
  }
  const HamiltonianSpectrum::PartitionSums s = spec.partition_sums(beta);
  const double log_z = std::log(s.weight0) - beta * h0;
  return {E, beta, std::exp(log_z), log_z, beta * E + log_z, s.tail_mass};
}

// F_H(E): ln(ground multiplicity) at E = h_1, the Gibbs entropy in between,
// and ln(dim) once a finite spectrum's uniform mean is reached (the energy
// constraint is inactive there, so the unconstrained maximum is attained)
inline double F_of_E(const HamiltonianSpectrum& spec, double E) {
  const double h0 = spec.min_level();
  if (E < h0 - 1e-12)
    throw RangeError("F_of_E: energy " + std::to_string(E) + " below the ground level");
  if (E <= h0 + 1e-12) return std::log(static_cast<double>(spec.ground_multiplicity()));
  if (!spec.infinite()) {
    double arith = 0.0;
    for (std::size_t k = 0; k < spec.length(); ++k) arith += spec.level(k);
    arith /= static_cast<double>(spec.length());
    if (E >= arith) return std::log(static_cast<double>(spec.length()));
  }
  return solve_beta(spec, E).F;
}

struct TruncatedHamiltonian {
  HamiltonianSpectrum H_m;   // (h_{m+1}, h_{m+2}, ...)
  HamiltonianSpectrum H0_m;  // (0, h_{m+1}, h_{m+2}, ...)
  std::function<double(double)> a_fn;  // E -> 1 - 1/Z_{H0_m}(E)
};

inline TruncatedHamiltonian truncate_hamiltonian(const HamiltonianSpectrum& spec,
                                                 std::size_t m) {
  HamiltonianSpectrum hm = spec.dropped(m);
  HamiltonianSpectrum h0m = spec.zero_plus_dropped(m);
  auto a_fn = [h0m](double E) {
    if (E < -1e-12) throw RangeError("a_fn: negative energy");
    if (E <= 1e-12) return 1.0 - 1.0 / static_cast<double>(h0m.ground_multiplicity());
    return 1.0 - 1.0 / solve_beta(h0m, E).Z;
  };
  return {std::move(hm), std::move(h0m), std::move(a_fn)};
}

// diag(e^{-beta h_k}/Z) over the leading dim levels; the weight lost to
// renormalization must stay below 1e-10
inline DensityMatrix gibbs_state(const HamiltonianSpectrum& spec, double E, int dim) {
  if (dim < 1 || static_cast<std::size_t>(dim) > spec.length())
    throw ValidationError("gibbs_state: dim " + std::to_string(dim) +
                          " outside the materialized spectrum length");
  const double h0 = spec.min_level();
  std::vector<double> p(static_cast<std::size_t>(dim), 0.0);
  if (E <= h0 + 1e-12) {
    const std::size_t mult = spec.ground_multiplicity();
    if (mult > static_cast<std::size_t>(dim))
      throw ValidationError("gibbs_state: ground multiplicity exceeds dim");
    for (std::size_t k = 0; k < mult; ++k) p[k] = 1.0 / static_cast<double>(mult);
    return DensityMatrix::diagonal(p);
  }
  const GibbsSolution sol = solve_beta(spec, E);
  const double w0 = spec.partition_sums(sol.beta).weight0;
  double renorm = 0.0;
  for (int k = 0; k < dim; ++k) {
    p[static_cast<std::size_t>(k)] =
        std::exp(-sol.beta * (spec.level(static_cast<std::size_t>(k)) - h0)) / w0;
    renorm += p[static_cast<std::size_t>(k)];
  }
  if (1.0 - renorm > 1e-10)
    throw TruncationError("gibbs_state: renormalization " + std::to_string(1.0 - renorm) +
                          " exceeds 1e-10; increase dim");
  for (double& x : p) x /= renorm;
  return DensityMatrix::diagonal(p);
}

// F over a sum of single-system Hamiltonians at total energy E_total: the
// m-fold scaling identity for identical spectra, otherwise concave 1-D
// coordinate ascent over the energy split (pairwise golden-section transfers
// until the sweep gain drops below 1e-8).
inline double F_composite(const std::vector<HamiltonianSpectrum>& specs, double E_total) {
  if (specs.empty()) throw ValidationError("F_composite: empty spectrum list");
  for (const HamiltonianSpectrum& s : specs)
    if (!s.grounded())
      throw ValidationError("F_composite: every component spectrum must be grounded");
  if (E_total < 0.0) throw RangeError("F_composite: negative total energy");
  const std::size_t n = specs.size();
  if (n == 1) return F_of_E(specs[0], E_total);
  bool identical = true;
  for (std::size_t k = 1; k < n && identical; ++k)
    identical = specs[0].same_operator(specs[k]);
  if (identical)
    return static_cast<double>(n) * F_of_E(specs[0], E_total / static_cast<double>(n));

  std::vector<double> e(n, E_total / static_cast<double>(n));
  auto value = [&](std::size_t k, double x) { return F_of_E(specs[k], x); };
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) total += value(k, e[k]);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int sweep = 0; sweep < 200; ++sweep) {
    double gain = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        // transfer t from i to j over [-e[j], e[i]]
        double a = -e[j], b = e[i];
        auto pair_value = [&](double t) { return value(i, e[i] - t) + value(j, e[j] + t); };
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = pair_value(c), fd = pair_value(d);
        for (int it = 0; it < 80 && (b - a) > 1e-12 * std::max(1.0, E_total); ++it) {
          if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = pair_value(c);
          } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = pair_value(d);
          }
        }
        const double t = fc > fd ? c : d;
        const double before = value(i, e[i]) + value(j, e[j]);
        const double after = pair_value(t);
        if (after > before + 1e-12) {
          e[i] -= t;
          e[j] += t;
          gain += after - before;
        }
      }
    }
    if (gain < 1e-8) break;
  }
  total = 0.0;
  for (std::size_t k = 0; k < n; ++k) total += value(k, e[k]);
  return total;
}

}  // namespace qcb

#endif  // QCB_GIBBS_HPP
