#ifndef QCB_SAMPLING_HPP
#define QCB_SAMPLING_HPP

// Deterministic, seeded generation of constrained state pairs and ensembles.
// Every generator validates its own output against the preconditions it
// promises (exact trace distance, partial majorization, energy budget); the
// campaign layer re-checks them independently.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qcb/errors.hpp"
#include "qcb/matrix.hpp"
#include "qcb/qcstate.hpp"
#include "qcb/rng.hpp"
#include "qcb/spectrum.hpp"

namespace qcb {

enum class SampleKind {
  Generic,
  CommutingPair,
  QcPair,
  EnergyConstrained,
  MajorizedPair,
  ExtremalEnergyPair
};

inline const char* to_string(SampleKind k) {
  switch (k) {
    case SampleKind::Generic: return "generic";
    case SampleKind::CommutingPair: return "commuting_pair";
    case SampleKind::QcPair: return "qc_pair";
    case SampleKind::EnergyConstrained: return "energy_constrained";
    case SampleKind::MajorizedPair: return "majorized_pair";
    case SampleKind::ExtremalEnergyPair: return "extremal_energy_pair";
  }
  return "unknown";
}

inline SampleKind sample_kind_from_string(const std::string& s) {
  if (s == "generic") return SampleKind::Generic;
  if (s == "commuting_pair") return SampleKind::CommutingPair;
  if (s == "qc_pair") return SampleKind::QcPair;
  if (s == "energy_constrained") return SampleKind::EnergyConstrained;
  if (s == "majorized_pair") return SampleKind::MajorizedPair;
  if (s == "extremal_energy_pair") return SampleKind::ExtremalEnergyPair;
  throw ValidationError("unknown sample kind: " + s);
}

// ---------------------------------------------------------------------------
// Elementary draws
// ---------------------------------------------------------------------------

inline Matrix ginibre(int rows, int cols, CounterRng& rng) {
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  return g;
}

// Haar-like unitary: QR of a Ginibre matrix with the R diagonal phases fixed
inline Matrix random_unitary(int dim, CounterRng& rng) {
  Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double ad = std::abs(d);
    if (ad > 0.0) q.col(j) *= d / ad;
  }
  return q;
}

inline std::vector<double> random_simplex(int dim, CounterRng& rng) {
  std::vector<double> p(static_cast<std::size_t>(dim));
  double sum = 0.0;
  for (double& x : p) {
    double u = rng.uniform();
    if (u <= 0.0) u = 0x1.0p-53;
    x = -std::log(u);
    sum += x;
  }
  for (double& x : p) x /= sum;
  return p;
}

// Ginibre construction G G^dag / Tr of the requested rank
inline DensityMatrix random_density(int dim, int rank, CounterRng& rng) {
  if (rank < 1 || rank > dim)
    throw ValidationError("random_density: rank " + std::to_string(rank) +
                          " outside [1, dim]");
  const Matrix g = ginibre(dim, rank, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix::from(std::move(m));
}

// ---------------------------------------------------------------------------
// Pair generators
// ---------------------------------------------------------------------------

struct StatePair {
  DensityMatrix rho;
  DensityMatrix sigma;
};

struct CommutingPairSample {
  DensityMatrix rho;
  DensityMatrix sigma;
  std::vector<double> p;  // eigenvalues of rho in the shared basis order
  std::vector<double> q;  // eigenvalues of sigma in the same order
  std::shared_ptr<const Matrix> basis;
};

namespace detail {

// Move exactly eps of probability mass off the largest entries of the sorted
// vector p (entries nonincreasing) by capping from above at a level L and
// refilling from below at a level F <= L. Preserves sortedness, so the result
// is majorized by p. Returns false when infeasible for this p.
inline bool waterlevel_move(const std::vector<double>& p, double eps,
                            std::vector<double>* out) {
  const std::size_t d = p.size();
  const double pmin = p.back();
  auto removed_at = [&](double level) {
    double acc = 0.0;
    for (double x : p) acc += std::max(x - level, 0.0);
    return acc;
  };
  if (removed_at(pmin) < eps - 1e-13) return false;
  double lo = pmin, hi = p.front();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (removed_at(mid) > eps)
      lo = mid;
    else
      hi = mid;
  }
  const double cap = 0.5 * (lo + hi);
  std::vector<double> q(d);
  for (std::size_t i = 0; i < d; ++i) q[i] = std::min(p[i], cap);
  // exact removal: adjust the last capped entry for the bisection residue
  double removed = 0.0;
  for (std::size_t i = 0; i < d; ++i) removed += p[i] - q[i];
  for (std::size_t i = d; i-- > 0;) {
    if (q[i] < p[i]) {
      q[i] += removed - eps;  // positive residue puts mass back
      if (q[i] < 0.0 || q[i] > p[i]) return false;
      break;
    }
  }
  auto added_at = [&](double level) {
    double acc = 0.0;
    for (double x : q) acc += std::max(level - x, 0.0);
    return acc;
  };
  if (added_at(cap) < eps - 1e-13) return false;
  lo = 0.0;
  hi = cap;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (added_at(mid) < eps)
      lo = mid;
    else
      hi = mid;
  }
  const double floor_lvl = 0.5 * (lo + hi);
  std::vector<double> r(d);
  double added = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    r[i] = std::max(q[i], floor_lvl);
    added += r[i] - q[i];
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (r[i] > q[i]) {
      r[i] -= added - eps;
      if (r[i] < q[i] - 1e-15) return false;
      break;
    }
  }
  *out = std::move(r);
  return true;
}

inline double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return 0.5 * acc;
}

inline bool partial_majorization_holds(std::vector<double> p, std::vector<double> q, int m,
                                       double tol = 1e-12) {
  std::sort(p.begin(), p.end(), std::greater<double>());
  std::sort(q.begin(), q.end(), std::greater<double>());
  double sp = 0.0, sq = 0.0;
  for (int r = 0; r + 1 < m; ++r) {
    sp += p[static_cast<std::size_t>(r)];
    sq += q[static_cast<std::size_t>(r)];
    if (sq > sp + tol) return false;
  }
  return true;
}

// random disjoint-role mass move of exactly eps; entries only gain or only
// lose, so the total variation is exact by construction
inline bool random_move(const std::vector<double>& p, double eps, CounterRng& rng,
                        std::vector<double>* out) {
  const std::size_t d = p.size();
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = d; i-- > 1;)
    std::swap(perm[i], perm[rng.uniform_index(i + 1)]);
  const std::size_t nd = 1 + rng.uniform_index(d - 1);
  double removable = 0.0;
  for (std::size_t i = 0; i < nd; ++i) removable += p[perm[i]];
  if (removable < eps + 1e-13) return false;
  std::vector<double> q = p;
  double rem = eps;
  for (int round = 0; round < 3 && rem > 1e-15; ++round) {
    for (std::size_t i = 0; i < nd && rem > 1e-15; ++i) {
      const double cap = q[perm[i]];
      const double take =
          round < 2 ? std::min(cap, rem * rng.uniform(0.3, 1.0)) : std::min(cap, rem);
      q[perm[i]] -= take;
      rem -= take;
    }
  }
  if (rem > 1e-15) return false;
  std::vector<double> w = random_simplex(static_cast<int>(d - nd), rng);
  for (std::size_t i = nd; i < d; ++i) q[perm[i]] += eps * w[i - nd];
  *out = std::move(q);
  return true;
}

}  // namespace detail

// Shared random eigenbasis with eigenvalue vectors at exact total variation
// target_eps. Mass is taken off the largest entries and moved down.
inline CommutingPairSample commuting_pair(int dim, double target_eps, CounterRng rng) {
  if (dim < 2) throw ValidationError("commuting_pair: dim must be >= 2");
  if (target_eps <= 0.0 || target_eps > 1.0)
    throw ValidationError("commuting_pair: target epsilon outside (0,1]");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> p = random_simplex(dim, rng);
    std::sort(p.begin(), p.end(), std::greater<double>());
    std::vector<double> q;
    if (!detail::random_move(p, target_eps, rng, &q) &&
        !detail::waterlevel_move(p, target_eps, &q))
      continue;
    if (std::abs(detail::tv_distance(p, q) - target_eps) > 1e-12) continue;
    const Matrix v = random_unitary(dim, rng);
    auto tag = std::make_shared<const Matrix>(v);
    return {DensityMatrix::diagonal_in_basis(p, v, tag),
            DensityMatrix::diagonal_in_basis(q, v, tag), std::move(p), std::move(q), tag};
  }
  throw GenerationError("commuting_pair: no feasible mass move after 1000 attempts");
}

// Commuting pair whose sorted spectra satisfy m-partial majorization at exact
// total variation target_eps. Random proposals first, then the
// sortedness-preserving water-level move which majorizes fully.
inline CommutingPairSample partial_majorized_pair(int dim, int m, double target_eps,
                                                  CounterRng rng) {
  if (dim < 2) throw ValidationError("partial_majorized_pair: dim must be >= 2");
  if (m < 1 || m > dim) throw ValidationError("partial_majorized_pair: m outside [1,dim]");
  if (target_eps <= 0.0 || target_eps > 1.0)
    throw ValidationError("partial_majorized_pair: target epsilon outside (0,1]");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> p = random_simplex(dim, rng);
    std::sort(p.begin(), p.end(), std::greater<double>());
    std::vector<double> q;
    bool ok = detail::random_move(p, target_eps, rng, &q) &&
              detail::partial_majorization_holds(p, q, m);
    if (!ok) {
      // repair path: the water-level move majorizes fully, hence satisfies
      // every prefix condition
      ok = detail::waterlevel_move(p, target_eps, &q) &&
           detail::partial_majorization_holds(p, q, m);
    }
    if (!ok || std::abs(detail::tv_distance(p, q) - target_eps) > 1e-12) continue;
    const Matrix v = random_unitary(dim, rng);
    auto tag = std::make_shared<const Matrix>(v);
    return {DensityMatrix::diagonal_in_basis(p, v, tag),
            DensityMatrix::diagonal_in_basis(q, v, tag), std::move(p), std::move(q), tag};
  }
  throw GenerationError("partial_majorized_pair: generation failed after 1000 attempts");
}

struct QcPairSample {
  QCState rho;
  QCState sigma;
};

// Two ensembles over a shared classical index with blockwise distance
// (1/2) sum_k ||p_k rho_k - q_k sigma_k||_1 equal to target_eps: a random
// target ensemble is mixed in with the exact scaling that lands on the
// requested distance.
inline QcPairSample qc_pair(int dA, int blocks, double target_eps, CounterRng rng) {
  if (dA < 2) throw ValidationError("qc_pair: dA must be >= 2");
  if (blocks < 1) throw ValidationError("qc_pair: blocks must be >= 1");
  if (target_eps <= 0.0 || target_eps > 1.0)
    throw ValidationError("qc_pair: target epsilon outside (0,1]");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> p = random_simplex(blocks, rng);
    std::vector<double> w = random_simplex(blocks, rng);
    std::vector<DensityMatrix> rho_blocks, target_blocks;
    rho_blocks.reserve(static_cast<std::size_t>(blocks));
    target_blocks.reserve(static_cast<std::size_t>(blocks));
    for (int k = 0; k < blocks; ++k) {
      rho_blocks.push_back(random_density(dA, 1 + static_cast<int>(rng.uniform_index(
                                                      static_cast<std::uint64_t>(dA))),
                                          rng));
      target_blocks.push_back(random_density(dA, 1 + static_cast<int>(rng.uniform_index(
                                                         static_cast<std::uint64_t>(dA))),
                                             rng));
    }
    double t1 = 0.0;
    for (int k = 0; k < blocks; ++k) {
      const std::size_t i = static_cast<std::size_t>(k);
      t1 += 0.5 * trace_norm(p[i] * rho_blocks[i].mat() - w[i] * target_blocks[i].mat());
    }
    if (t1 < target_eps) continue;
    const double alpha = target_eps / t1;
    std::vector<double> q(static_cast<std::size_t>(blocks));
    std::vector<DensityMatrix> sigma_blocks;
    sigma_blocks.reserve(static_cast<std::size_t>(blocks));
    for (int k = 0; k < blocks; ++k) {
      const std::size_t i = static_cast<std::size_t>(k);
      Matrix b = (1.0 - alpha) * p[i] * rho_blocks[i].mat() +
                 alpha * w[i] * target_blocks[i].mat();
      q[i] = b.trace().real();
      sigma_blocks.push_back(DensityMatrix::from(b / q[i]));
    }
    QCState rho(p, std::move(rho_blocks));
    QCState sigma(q, std::move(sigma_blocks));
    if (std::abs(qc_trace_distance(rho, sigma) - target_eps) > 1e-8) continue;
    return {std::move(rho), std::move(sigma)};
  }
  throw GenerationError("qc_pair: generation failed after 1000 attempts");
}

// Random state obeying Tr H rho <= E (equality on request), reached by mixing
// toward the ground or top projector with the closed-form coefficient.
inline DensityMatrix energy_constrained(const HamiltonianSpectrum& spec, double E, int dim,
                                        CounterRng rng, bool exact = false) {
  if (dim < 2) throw ValidationError("energy_constrained: dim must be >= 2");
  if (spec.length() < static_cast<std::size_t>(dim))
    throw ValidationError("energy_constrained: spectrum shorter than dim");
  const double h0 = spec.level(0);
  if (E < h0) throw ValidationError("energy_constrained: energy below the ground level");
  DensityMatrix rho = random_density(dim, dim, rng);
  double e = 0.0;
  for (int k = 0; k < dim; ++k)
    e += spec.level(static_cast<std::size_t>(k)) * rho.mat()(k, k).real();
  if (!exact && e <= E) return rho;
  Matrix target;
  double te;
  if (e > E) {
    target = Matrix::Zero(dim, dim);
    target(0, 0) = 1.0;
    te = h0;
  } else {
    target = Matrix::Zero(dim, dim);
    target(dim - 1, dim - 1) = 1.0;
    te = spec.level(static_cast<std::size_t>(dim - 1));
    if (E > te)
      throw ValidationError("energy_constrained: exact energy above the top level");
  }
  const double t = (e - E) / (e - te);
  Matrix mixed = (1.0 - t) * rho.mat() + t * target;
  return DensityMatrix::from(std::move(mixed));
}

// The optimality-attaining pair of the energy semicontinuity bound:
// rho = |tau_k><tau_k|, sigma = eps |tau_1><tau_1| + (1-eps) rho.
inline StatePair extremal_energy_pair(const HamiltonianSpectrum& spec, int k, double eps) {
  if (k < 1) throw ValidationError("extremal_energy_pair: k must be >= 1");
  if (eps <= 0.0 || eps > 1.0)
    throw ValidationError("extremal_energy_pair: eps outside (0,1]");
  const int dim = std::max(k, 2);
  if (spec.length() < static_cast<std::size_t>(dim))
    throw ValidationError("extremal_energy_pair: spectrum shorter than needed");
  std::vector<double> pr(static_cast<std::size_t>(dim), 0.0);
  pr[static_cast<std::size_t>(k - 1)] = 1.0;
  std::vector<double> ps(static_cast<std::size_t>(dim), 0.0);
  ps[0] += eps;
  ps[static_cast<std::size_t>(k - 1)] += 1.0 - eps;
  return {DensityMatrix::diagonal(pr), DensityMatrix::diagonal(ps)};
}

// Arbitrary (generally non-commuting) pair at exact trace distance
// target_eps: sigma = (1-alpha) rho + alpha W with the scaling solved from
// the mixing linearity of the trace norm.
inline StatePair generic_pair(int dim, double target_eps, CounterRng rng) {
  if (dim < 2) throw ValidationError("generic_pair: dim must be >= 2");
  if (target_eps <= 0.0 || target_eps > 1.0)
    throw ValidationError("generic_pair: target epsilon outside (0,1]");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    DensityMatrix rho = random_density(dim, dim, rng);
    DensityMatrix w = random_density(
        dim, 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(dim))), rng);
    const double full = 0.5 * trace_norm(rho.mat() - w.mat());
    if (full < target_eps) continue;
    const double alpha = target_eps / full;
    Matrix s = (1.0 - alpha) * rho.mat() + alpha * w.mat();
    DensityMatrix sigma = DensityMatrix::from(std::move(s));
    return {std::move(rho), std::move(sigma)};
  }
  throw GenerationError("generic_pair: generation failed after 1000 attempts");
}

}  // namespace qcb

#endif  // QCB_SAMPLING_HPP
