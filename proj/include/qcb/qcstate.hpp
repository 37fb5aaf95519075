#ifndef QCB_QCSTATE_HPP
#define QCB_QCSTATE_HPP

// Quantum-classical states: finite ensembles {p_k, rho_k} on system A indexed
// by a fixed classical basis of B. The full matrix is block diagonal, so the
// conditional entropy reduces to sum_k p_k S(rho_k) and the trace distance to
// the blockwise sum (1/2) sum_k ||p_k rho_k - q_k sigma_k||_1.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qcb/entropy.hpp"
#include "qcb/errors.hpp"
#include "qcb/matrix.hpp"

namespace qcb {

class QCState {
public:
  QCState(std::vector<double> weights, std::vector<DensityMatrix> blocks)
      : weights_(std::move(weights)), blocks_(std::move(blocks)) {
    if (weights_.empty() || weights_.size() != blocks_.size())
      throw ValidationError("QCState: weights and blocks must be nonempty and matched");
    double sum = 0.0;
    for (double w : weights_) {
      if (w < -1e-12) throw ValidationError("QCState: negative weight " + std::to_string(w));
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ValidationError("QCState: weights sum to " + std::to_string(sum));
    const int d = blocks_.front().dim();
    for (const DensityMatrix& b : blocks_)
      if (b.dim() != d) throw ValidationError("QCState: inconsistent block dimensions");
  }

  int dimA() const { return blocks_.front().dim(); }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<DensityMatrix>& blocks() const { return blocks_; }

  // subnormalized block p_k rho_k
  Matrix weighted_block(int k) const {
    return weights_[static_cast<std::size_t>(k)] * blocks_[static_cast<std::size_t>(k)].mat();
  }

  // marginal on A: sum_k p_k rho_k
  DensityMatrix marginal_A() const {
    Matrix m = Matrix::Zero(dimA(), dimA());
    for (int k = 0; k < block_count(); ++k) m += weighted_block(k);
    return DensityMatrix::from(std::move(m));
  }

  // S(A|B) = sum_k p_k S(rho_k)
  double conditional_entropy() const {
    double s = 0.0;
    for (int k = 0; k < block_count(); ++k) {
      const double p = weights_[static_cast<std::size_t>(k)];
      if (p > 0.0) s += p * von_neumann_entropy(blocks_[static_cast<std::size_t>(k)]);
    }
    return s;
  }

  // dense matrix on A (x) B with B the classical index, basis index a*K + k
  DensityMatrix to_density() const {
    const int dA = dimA();
    const int K = block_count();
    Matrix m = Matrix::Zero(dA * K, dA * K);
    for (int k = 0; k < K; ++k) {
      const Matrix blk = weighted_block(k);
      for (int a = 0; a < dA; ++a)
        for (int a2 = 0; a2 < dA; ++a2) m(a * K + k, a2 * K + k) = blk(a, a2);
    }
    return DensityMatrix::from(std::move(m));
  }

private:
  std::vector<double> weights_;
  std::vector<DensityMatrix> blocks_;
};

// (1/2) sum_k ||p_k rho_k - q_k sigma_k||_1 over the shared classical index
inline double qc_trace_distance(const QCState& rho, const QCState& sigma) {
  if (rho.block_count() != sigma.block_count() || rho.dimA() != sigma.dimA())
    throw ValidationError("qc_trace_distance: shape mismatch");
  double acc = 0.0;
  for (int k = 0; k < rho.block_count(); ++k)
    acc += 0.5 * trace_norm(rho.weighted_block(k) - sigma.weighted_block(k));
  return acc;
}

}  // namespace qcb

#endif  // QCB_QCSTATE_HPP
