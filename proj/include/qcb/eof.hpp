#ifndef QCB_EOF_HPP
#define QCB_EOF_HPP

// Entanglement of Formation at desk scale: the exact two-qubit value via
// concurrence, and a discrete convex-roof optimizer for small bipartite
// dimensions. The optimizer parametrizes size-K ensembles by K x r isometries
// acting on the eigendecomposition of the state and refines them by pairwise
// Givens rotations; any ensemble it returns certifies an upper bound on the
// discrete roof.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "qcb/entropy.hpp"
#include "qcb/errors.hpp"
#include "qcb/matrix.hpp"
#include "qcb/rng.hpp"
#include "qcb/scalars.hpp"

namespace qcb {

// Exact E_F of a two-qubit state in nats, via the concurrence
// C = max(0, l1 - l2 - l3 - l4) with l_i the decreasing square roots of the
// eigenvalues of rho (Y(x)Y) rho* (Y(x)Y).
inline double wootters_eof(const DensityMatrix& rho) {
  if (rho.dim() != 4)
    throw ValidationError("wootters_eof: requires a two-qubit (4x4) state");
  Matrix yy = Matrix::Zero(4, 4);
  // sigma_y (x) sigma_y in the computational basis
  yy(0, 3) = Complex(-1.0, 0.0);
  yy(1, 2) = Complex(1.0, 0.0);
  yy(2, 1) = Complex(1.0, 0.0);
  yy(3, 0) = Complex(-1.0, 0.0);
  const Matrix rho_tilde = yy * rho.mat().conjugate() * yy;
  const Matrix sr = operator_sqrt(rho.mat());
  Matrix inner = sr * rho_tilde * sr;
  EigenSystem es = spectral_decompose_raw((inner + inner.adjoint()) / 2.0);
  double l[4];
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(es.values(i), 0.0));
  const double c = std::max(0.0, l[0] - l[1] - l[2] - l[3]);
  const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  return binary_entropy(x);
}

// Pure-state ensemble decomposing a target state.
class PureEnsemble {
public:
  PureEnsemble(std::vector<double> weights, Matrix vectors, const Matrix& target)
      : weights_(std::move(weights)), vectors_(std::move(vectors)) {
    if (weights_.empty() ||
        vectors_.cols() != static_cast<Eigen::Index>(weights_.size()))
      throw ValidationError("PureEnsemble: weights/vectors mismatch");
    double sum = 0.0;
    Matrix avg = Matrix::Zero(vectors_.rows(), vectors_.rows());
    for (std::size_t k = 0; k < weights_.size(); ++k) {
      if (weights_[k] < -1e-12) throw ValidationError("PureEnsemble: negative weight");
      sum += weights_[k];
      const double n = vectors_.col(static_cast<Eigen::Index>(k)).norm();
      if (weights_[k] > 1e-12 && std::abs(n - 1.0) > 1e-12)
        throw ValidationError("PureEnsemble: vector norm deviates by " +
                              std::to_string(n - 1.0));
      avg += weights_[k] * vectors_.col(static_cast<Eigen::Index>(k)) *
             vectors_.col(static_cast<Eigen::Index>(k)).adjoint();
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw ValidationError("PureEnsemble: weights sum to " + std::to_string(sum));
    if ((avg - target).cwiseAbs().maxCoeff() > 1e-8)
      throw ValidationError("PureEnsemble: average does not reproduce the target state");
  }

  const std::vector<double>& weights() const { return weights_; }
  const Matrix& vectors() const { return vectors_; }
  int size() const { return static_cast<int>(weights_.size()); }

private:
  std::vector<double> weights_;
  Matrix vectors_;  // columns are the unit vectors
};

struct ConvexRoofResult {
  double value;
  PureEnsemble ensemble;
  bool converged;
  std::vector<double> restart_values;
};

namespace detail {

// marginal entropy of a bipartite pure state |psi> with index a*dB + b
inline double pure_marginal_entropy(const Eigen::VectorXcd& psi, int dA, int dB) {
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      m(psi.data(), dA, dB);
  if (dA == 2 && dB == 2) {
    // closed form via det of the 2x2 amplitude matrix
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = std::max(0.0, 1.0 - 4.0 * std::norm(det));
    const double lam = 0.5 * (1.0 + std::sqrt(disc));
    return eta(lam) + eta(std::max(0.0, 1.0 - lam));
  }
  const int d = std::min(dA, dB);
  Matrix red = dA <= dB ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(red);
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += eta(std::max(solver.eigenvalues()(i), 0.0));
  return s;
}

struct RoofWorkspace {
  Matrix B;       // dAB x r, columns sqrt(mu_i) |e_i>
  Matrix U;       // K x r isometry columns (U^dag U = I_r)
  int dA, dB, K, r;

  // average entropy of the ensemble sqrt(p_k)|psi_k> = B * conj(row_k(U))
  double average_entropy() const {
    double acc = 0.0;
    for (int k = 0; k < K; ++k) {
      const Eigen::VectorXcd phi = B * U.row(k).conjugate().transpose();
      const double p = phi.squaredNorm();
      if (p > 1e-14) acc += p * pure_marginal_entropy(phi / std::sqrt(p), dA, dB);
    }
    return acc;
  }

  // contribution of rows a and b only
  double pair_entropy(int a, int b) const {
    double acc = 0.0;
    for (int k : {a, b}) {
      const Eigen::VectorXcd phi = B * U.row(k).conjugate().transpose();
      const double p = phi.squaredNorm();
      if (p > 1e-14) acc += p * pure_marginal_entropy(phi / std::sqrt(p), dA, dB);
    }
    return acc;
  }
};

// one sweep of pairwise Givens refinements; returns the total improvement
inline double givens_sweep(RoofWorkspace& ws) {
  double improved = 0.0;
  constexpr int kTheta = 7, kPhi = 8;
  for (int a = 0; a < ws.K; ++a) {
    for (int b = a + 1; b < ws.K; ++b) {
      const double base = ws.pair_entropy(a, b);
      const Eigen::RowVectorXcd row_a = ws.U.row(a), row_b = ws.U.row(b);
      double best = base, best_theta = 0.0, best_phi = 0.0;
      auto apply = [&](double theta, double phi) {
        const Complex e(std::cos(phi), std::sin(phi));
        ws.U.row(a) = std::cos(theta) * row_a + e * std::sin(theta) * row_b;
        ws.U.row(b) = -std::conj(e) * std::sin(theta) * row_a + std::cos(theta) * row_b;
      };
      for (int it = 0; it < kTheta; ++it) {
        for (int ip = 0; ip < kPhi; ++ip) {
          const double theta = 3.141592653589793 * (it + 1) / (2.0 * (kTheta + 1));
          const double phi = 6.283185307179586 * ip / kPhi;
          apply(theta, phi);
          const double v = ws.pair_entropy(a, b);
          if (v < best) {
            best = v;
            best_theta = theta;
            best_phi = phi;
          }
        }
      }
      // local polish around the best grid point
      double step_t = 3.141592653589793 / (2.0 * (kTheta + 1));
      double step_p = 6.283185307179586 / kPhi;
      for (int round = 0; round < 12; ++round) {
        bool moved = false;
        for (const auto& cand :
             {std::pair<double, double>{best_theta + step_t, best_phi},
              std::pair<double, double>{best_theta - step_t, best_phi},
              std::pair<double, double>{best_theta, best_phi + step_p},
              std::pair<double, double>{best_theta, best_phi - step_p}}) {
          apply(cand.first, cand.second);
          const double v = ws.pair_entropy(a, b);
          if (v < best - 1e-15) {
            best = v;
            best_theta = cand.first;
            best_phi = cand.second;
            moved = true;
          }
        }
        if (!moved) {
          step_t *= 0.5;
          step_p *= 0.5;
        }
      }
      if (best < base - 1e-15) {
        apply(best_theta, best_phi);
        improved += base - best;
      } else {
        ws.U.row(a) = row_a;
        ws.U.row(b) = row_b;
      }
    }
  }
  return improved;
}

}  // namespace detail

// Discrete convex-roof optimizer. Returns the best ensemble over the given
// restarts; the value is always a certified upper bound on E_F^d. A warning
// flag (converged = false) is set if the last restart exhausted its sweep
// budget while still improving.
inline ConvexRoofResult convex_roof_eof(const DensityMatrix& rho, int dA, int dB,
                                        int K = 0, int restarts = 16,
                                        std::uint64_t seed = 0,
                                        const PureEnsemble* initial = nullptr) {
  if (dA < 2 || dB < 2 || dA > 4 || dB > 4)
    throw ValidationError("convex_roof_eof: subsystem dimensions must be in [2,4]");
  if (rho.dim() != dA * dB)
    throw ValidationError("convex_roof_eof: state dimension does not match dA*dB");
  EigenSystem es = spectral_decompose_raw(rho.mat());
  int r = 0;
  while (r < rho.dim() && es.values(r) > kSupportTol) ++r;
  r = std::max(r, 1);
  if (K == 0) K = std::min(rho.dim() * rho.dim(), std::max(2 * r, 4));
  if (K < r) throw ValidationError("convex_roof_eof: ensemble size below rank");
  if (K > rho.dim() * rho.dim())
    throw ValidationError("convex_roof_eof: ensemble size above d^2 = " +
                          std::to_string(rho.dim() * rho.dim()));

  detail::RoofWorkspace ws;
  ws.dA = dA;
  ws.dB = dB;
  ws.K = K;
  ws.r = r;
  ws.B.resize(rho.dim(), r);
  for (int i = 0; i < r; ++i)
    ws.B.col(i) = std::sqrt(std::max(es.values(i), 0.0)) * es.vectors.col(i);

  // rank-one states need no search
  if (r == 1) {
    Eigen::VectorXcd psi = es.vectors.col(0);
    const double val = detail::pure_marginal_entropy(psi, dA, dB);
    Matrix vec(rho.dim(), 1);
    vec.col(0) = psi;
    return {val, PureEnsemble({1.0}, std::move(vec), rho.mat()), true, {val}};
  }

  CounterRng rng(seed, 0x6F0FULL);
  double best_val = 1e300;
  Matrix best_U;
  bool converged = true;
  std::vector<double> restart_values;

  auto run_from = [&](Matrix u0) {
    ws.U = std::move(u0);
    double total = ws.average_entropy();
    bool done = false;
    for (int sweep = 0; sweep < 60; ++sweep) {
      const double gain = detail::givens_sweep(ws);
      total -= gain;
      if (gain < 1e-7) {
        done = true;
        break;
      }
    }
    total = ws.average_entropy();
    restart_values.push_back(total);
    if (total < best_val) {
      best_val = total;
      best_U = ws.U;
      converged = done;
    }
  };

  // identity start reproduces the eigendecomposition ensemble
  {
    Matrix u0 = Matrix::Zero(K, r);
    for (int i = 0; i < r; ++i) u0(i, i) = 1.0;
    run_from(std::move(u0));
  }
  if (initial != nullptr) {
    // project the supplied ensemble onto an isometry start: rows
    // sqrt(p_k) conj(<e_i|psi_k>) / sqrt(mu_i), then the polar correction
    // (closest isometry), which leaves an exact decomposition untouched
    Matrix u0 = Matrix::Zero(K, r);
    const int kin = std::min(K, initial->size());
    for (int k = 0; k < kin; ++k) {
      for (int i = 0; i < r; ++i) {
        const Complex ov = (es.vectors.col(i).adjoint() *
                            initial->vectors().col(k))(0);
        u0(k, i) = std::sqrt(initial->weights()[static_cast<std::size_t>(k)]) *
                   std::conj(ov) / std::sqrt(std::max(es.values(i), kSupportTol));
      }
    }
    const Matrix gram = u0.adjoint() * u0;
    Eigen::SelfAdjointEigenSolver<Matrix> gs(gram);
    RealVector inv_sqrt = gs.eigenvalues().cwiseMax(1e-14).cwiseInverse().cwiseSqrt();
    Matrix q = u0 * gs.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() *
               gs.eigenvectors().adjoint();
    run_from(std::move(q));
  }
  for (int rs = 1; rs < restarts; ++rs) {
    CounterRng sub = rng.split(static_cast<std::uint64_t>(rs));
    Matrix gauss(K, r);
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < r; ++j) gauss(i, j) = Complex(sub.gaussian(), sub.gaussian());
    Eigen::HouseholderQR<Matrix> qr(gauss);
    Matrix q = qr.householderQ() * Matrix::Identity(K, r);
    run_from(std::move(q));
  }

  // materialize the winning ensemble
  ws.U = best_U;
  std::vector<double> weights;
  std::vector<Eigen::VectorXcd> kept;
  for (int k = 0; k < K; ++k) {
    const Eigen::VectorXcd phi = ws.B * ws.U.row(k).conjugate().transpose();
    const double p = phi.squaredNorm();
    if (p > 1e-12) {
      weights.push_back(p);
      kept.push_back(phi / std::sqrt(p));
    }
  }
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  for (double& w : weights) w /= wsum;
  Matrix vecs(rho.dim(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k)
    vecs.col(static_cast<Eigen::Index>(k)) = kept[k];
  return {best_val, PureEnsemble(weights, std::move(vecs), rho.mat()), converged,
          restart_values};
}

// E_F gap helper used by the bound evaluators: exact two-qubit values, the
// convex-roof estimate elsewhere
inline double eof_value(const DensityMatrix& rho, int dA, int dB, int restarts = 16,
                        std::uint64_t seed = 0) {
  if (dA == 2 && dB == 2) return wootters_eof(rho);
  return convex_roof_eof(rho, dA, dB, 0, restarts, seed).value;
}

}  // namespace qcb

#endif  // QCB_EOF_HPP
