#ifndef QCB_TESTS_ORACLES_HPP
#define QCB_TESTS_ORACLES_HPP

// Test-only oracles, independent of the library implementation paths they
// check: long-double scalar evaluations, classical vector functionals, a
// componentwise Jordan decomposition and a grid-search energy splitter.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

inline long double eta(long double x) { return x > 0.0L ? -x * std::log(x) : 0.0L; }

inline long double binary_entropy(long double p) { return eta(p) + eta(1.0L - p); }

inline long double g_osc(long double x) {
  return x > 0.0L ? (x + 1.0L) * std::log(x + 1.0L) - x * std::log(x) : 0.0L;
}

inline long double shannon(const std::vector<double>& p) {
  long double s = 0.0L;
  for (double x : p) s += eta(static_cast<long double>(x));
  return s;
}

// homogeneous extension of the entropy of a subnormalized vector
inline long double extended_shannon(const std::vector<double>& p) {
  long double s = 0.0L, tr = 0.0L;
  for (double x : p) {
    s += eta(static_cast<long double>(x));
    tr += static_cast<long double>(x);
  }
  if (tr <= 0.0L) return 0.0L;
  return s - eta(tr);
}

inline long double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) acc += static_cast<long double>(p[i]) * std::log(p[i] / q[i]);
  }
  return acc;
}

inline long double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::fabs(p[i] - q[i]);
  return 0.5L * acc;
}

struct VectorJordan {
  double epsilon;
  std::vector<double> tau_plus;
  std::vector<double> tau_minus;
  std::vector<double> omega_star;
};

// componentwise Jordan decomposition of two probability vectors sharing an
// index set: eps = TV(p,q), tau_+ = [p-q]_+/eps, tau_- = [p-q]_-/eps,
// omega = min(p,q)/(1-eps)
inline VectorJordan vector_jordan(const std::vector<double>& p,
                                  const std::vector<double>& q) {
  VectorJordan out;
  out.epsilon = static_cast<double>(tv_distance(p, q));
  const double eps = out.epsilon;
  out.tau_plus.resize(p.size());
  out.tau_minus.resize(p.size());
  out.omega_star.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.tau_plus[i] = std::max(p[i] - q[i], 0.0) / eps;
    out.tau_minus[i] = std::max(q[i] - p[i], 0.0) / eps;
    out.omega_star[i] = eps < 1.0 ? std::min(p[i], q[i]) / (1.0 - eps) : 0.0;
  }
  return out;
}

// grid-search maximizer of F1(e) + F2(E - e) over e in [0, E]
template <typename F1, typename F2>
double best_split_value(F1&& f1, F2&& f2, double E, int grid = 4000) {
  double best = -1e300;
  for (int i = 0; i <= grid; ++i) {
    const double e = E * i / grid;
    const double v = f1(e) + f2(E - e);
    best = std::max(best, v);
  }
  return best;
}

}  // namespace oracle

#endif  // QCB_TESTS_ORACLES_HPP
