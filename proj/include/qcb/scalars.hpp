#ifndef QCB_SCALARS_HPP
#define QCB_SCALARS_HPP

// Scalar entropy kit: eta, the binary entropy, their nondecreasing envelopes
// and the maximum-entropy function of the quantum oscillator. All logarithms
// are natural; values are in nats.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "qcb/errors.hpp"

namespace qcb {

inline constexpr double kLn2 = 0.6931471805599453;
inline constexpr double kInvE = 0.36787944117144233;

// eta(x) = -x ln x with eta(0) = 0
inline double eta(double x) {
  if (x < 0.0) throw ValidationError("eta: negative argument " + std::to_string(x));
  return x > 0.0 ? -x * std::log(x) : 0.0;
}

// binary entropy h(p) = eta(p) + eta(1-p) on [0,1]
inline double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0)
    throw ValidationError("binary_entropy: argument outside [0,1]: " + std::to_string(p));
  return eta(p) + eta(1.0 - p);
}

// nondecreasing envelope of h: h(x) on [0,1/2], ln 2 on (1/2,1]
inline double h_up(double x) {
  if (x < 0.0 || x > 1.0)
    throw ValidationError("h_up: argument outside [0,1]: " + std::to_string(x));
  return x <= 0.5 ? binary_entropy(x) : kLn2;
}

// nondecreasing envelope of eta: eta(x) on [0,1/e], 1/e on (1/e,1]
inline double eta_up(double x) {
  if (x < 0.0 || x > 1.0)
    throw ValidationError("eta_up: argument outside [0,1]: " + std::to_string(x));
  return x <= kInvE ? eta(x) : kInvE;
}

// g(x) = (x+1)ln(x+1) - x ln x, the maximum entropy of an oscillator at mean
// occupation x; g(0) = 0
inline double g_function(double x) {
  if (x < 0.0) throw ValidationError("g_function: negative argument " + std::to_string(x));
  if (x == 0.0) return 0.0;
  // log1p keeps the x >> 1 regime accurate: g(x) = ln(x+1) + x*log1p(1/x)
  return std::log1p(x) + x * std::log1p(1.0 / x);
}

struct BinaryEntropyFamily {
  double h;
  double h_up;
  double eta;
  double eta_up;
};

inline BinaryEntropyFamily binary_entropy_family(double x) {
  return {binary_entropy(x), h_up(x), eta(x), eta_up(x)};
}

// sup_{t in [0,x]} f(t) for a concave (or unimodal) f: coarse scan to bracket
// the maximizer, then golden-section refinement.
inline double envelope_sup(const std::function<double(double)>& f, double x) {
  if (x < 0.0) throw ValidationError("envelope_sup: negative upper limit");
  if (x == 0.0) return f(0.0);
  constexpr int kGrid = 32;
  double best = f(0.0);
  int best_i = 0;
  for (int i = 1; i <= kGrid; ++i) {
    const double v = f(x * i / kGrid);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double a = x * std::max(0, best_i - 1) / kGrid;
  double b = x * std::min(kGrid, best_i + 1) / kGrid;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, x); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return std::max({best, fc, fd});
}

}  // namespace qcb

#endif  // QCB_SCALARS_HPP
