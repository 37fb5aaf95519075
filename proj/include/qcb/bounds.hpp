#ifndef QCB_BOUNDS_HPP
#define QCB_BOUNDS_HPP

// Evaluators for the continuity bounds, semicontinuity bounds and local lower
// bounds on entropic functionals. Every evaluator returns a BoundEvaluation
// holding the bound value and the measured quantity it has to dominate;
// PASS/FAIL is decided by the caller (campaign layer), never internally.
//
// Slack convention: bound_value is the majorant side of the inequality and
// measured_gap the minorant side, so slack = bound_value - measured_gap >= 0
// means the inequality holds. For local lower bounds the majorant is the
// functional at sigma and the minorant the computed lower bound. Identity
// checks fold the deviation into the gap: measured_gap = bound_value +
// |lhs - rhs|, so slack = -|lhs - rhs|.

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qcb/entropy.hpp"
#include "qcb/eof.hpp"
#include "qcb/errors.hpp"
#include "qcb/gibbs.hpp"
#include "qcb/matrix.hpp"
#include "qcb/qcstate.hpp"
#include "qcb/scalars.hpp"
#include "qcb/spectrum.hpp"

namespace qcb {

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

struct ClassParams {
  double C = 0.0;  // sum of the sandwich constants c_f^- + c_f^+
  double D = 0.0;  // sum of the almost-affinity constants d_f^- + d_f^+
  int m = 1;       // constrained subsystems
  int n = 1;       // total subsystems

  void validate() const {
    if (C < 0.0 || D < 0.0) throw ValidationError("ClassParams: C and D must be >= 0");
    if (m < 1 || n < 1 || m > n) throw ValidationError("ClassParams: need 1 <= m <= n");
  }
};

struct BoundEvaluation {
  std::string bound_id;
  double epsilon = 0.0;
  double bound_value = 0.0;
  double measured_gap = 0.0;
  double slack = 0.0;  // bound_value - measured_gap
  std::uint64_t inputs_digest = 0;

  bool pass(double rel_tol = 1e-9) const {
    return slack >= -rel_tol * std::max(1.0, std::abs(bound_value));
  }
};

namespace detail {

class Digest {
public:
  void add(double x) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    for (int i = 0; i < 8; ++i) {
      h_ ^= (bits >> (8 * i)) & 0xFF;
      h_ *= 0x100000001B3ULL;
    }
  }
  void add(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        add(m(i, j).real());
        add(m(i, j).imag());
      }
  }
  void add(const DensityMatrix& d) { add(d.mat()); }
  std::uint64_t value() const { return h_; }

private:
  std::uint64_t h_ = 0xCBF29CE484222325ULL;
};

inline BoundEvaluation make_eval(std::string id, double eps, double bound, double gap,
                                 std::uint64_t digest) {
  return {std::move(id), eps, bound, gap, bound - gap, digest};
}

inline void require_eps01(double eps, const char* who) {
  if (eps < 0.0 || eps > 1.0)
    throw ValidationError(std::string(who) + ": eps outside [0,1]: " + std::to_string(eps));
}

}  // namespace detail

// Variant of the additive binary-entropy term: the exact h(eps) (caller must
// certify the distance equals eps), the sup over [0,eps] of the whole
// expression, or the plateaued h_up.
enum class HVariant { Exact, EnvelopeSup, HUp };
enum class BoundMode { TwoSided, OneSided };

// ---------------------------------------------------------------------------
// Generic class-parametrized bounds (rank and energy constrained)
// ---------------------------------------------------------------------------

// C eps ln(d_m) + D h-variant(eps). The caller supplies the effective rank
// product d_m: d_m(rho, sigma) in two-sided mode, d_m(rho) or the sharper
// d*_m(rho, sigma) in one-sided mode, and d*(rho, sigma) - 1 when m = n = 1.
inline double generic_rank_bound(const ClassParams& p, double d_m, double eps,
                                 BoundMode /*mode*/, HVariant variant) {
  p.validate();
  detail::require_eps01(eps, "generic_rank_bound");
  if (d_m < 1.0) throw ValidationError("generic_rank_bound: rank product below 1");
  const double ln_d = std::log(d_m);
  switch (variant) {
    case HVariant::Exact:
      return p.C * eps * ln_d + p.D * binary_entropy(eps);
    case HVariant::HUp:
      return p.C * eps * ln_d + p.D * h_up(eps);
    case HVariant::EnvelopeSup:
      return envelope_sup(
          [&](double t) { return p.C * t * ln_d + p.D * binary_entropy(t); }, eps);
  }
  return 0.0;
}

// C eps F_{H_m}(m E / eps) + D h-variant(eps); F_Hm is the composite
// max-entropy function of the constrained subsystems. One-sided refinements
// (E(rho) - E_eps(rho), or E(rho, sigma)) enter through the E argument.
inline double generic_energy_bound(const ClassParams& p,
                                   const std::function<double(double)>& F_Hm, double E,
                                   double eps, BoundMode /*mode*/, HVariant variant) {
  p.validate();
  detail::require_eps01(eps, "generic_energy_bound");
  if (E < 0.0) throw ValidationError("generic_energy_bound: negative energy");
  const double m = static_cast<double>(p.m);
  auto term = [&](double t) { return t > 0.0 ? p.C * t * F_Hm(m * E / t) : 0.0; };
  switch (variant) {
    case HVariant::Exact:
      return term(eps) + p.D * binary_entropy(eps);
    case HVariant::HUp:
      return term(eps) + p.D * h_up(eps);
    case HVariant::EnvelopeSup:
      return envelope_sup([&](double t) { return term(t) + p.D * binary_entropy(t); }, eps);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Von Neumann entropy bounds (rank / energy constrained, truncation, local
// lower bound)
// ---------------------------------------------------------------------------

namespace detail {

inline void require_partial_majorization(const std::vector<double>& rho_sorted,
                                         const std::vector<double>& sigma_sorted, int m) {
  double sr = 0.0, ss = 0.0;
  for (int r = 0; r + 1 < m; ++r) {
    sr += rho_sorted[static_cast<std::size_t>(r)];
    ss += sigma_sorted[static_cast<std::size_t>(r)];
    if (ss > sr + 1e-10)
      throw PreconditionError("partial majorization violated at prefix " +
                              std::to_string(r + 1) + ": " + std::to_string(ss) + " > " +
                              std::to_string(sr));
  }
}

inline double shannon(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p) s += eta(std::max(x, 0.0));
  return s;
}

}  // namespace detail

// Rank-constrained entropy semicontinuity bound under m-partial majorization:
// eps ln(d - m) + h(eps) below the crossover 1 - 1/(d - m + 1), the constant
// ln(d - m + 1) above it. Spectra may be passed in any order.
inline BoundEvaluation entropy_scb_rank(std::vector<double> rho_spectrum,
                                        std::vector<double> sigma_spectrum, int m,
                                        double eps) {
  detail::require_eps01(eps, "entropy_scb_rank");
  std::sort(rho_spectrum.begin(), rho_spectrum.end(), std::greater<double>());
  std::sort(sigma_spectrum.begin(), sigma_spectrum.end(), std::greater<double>());
  int d = 0;
  for (double x : rho_spectrum)
    if (x > kSupportTol) ++d;
  if (m < 1 || m >= d)
    throw ValidationError("entropy_scb_rank: need 1 <= m < rank(rho) = " + std::to_string(d));
  detail::require_partial_majorization(rho_spectrum, sigma_spectrum, m);
  const double crossover = 1.0 - 1.0 / static_cast<double>(d - m + 1);
  const double bound = eps <= crossover
                           ? eps * std::log(static_cast<double>(d - m)) + binary_entropy(eps)
                           : std::log(static_cast<double>(d - m + 1));
  const double gap = detail::shannon(rho_spectrum) - detail::shannon(sigma_spectrum);
  detail::Digest dg;
  for (double x : rho_spectrum) dg.add(x);
  for (double x : sigma_spectrum) dg.add(x);
  dg.add(static_cast<double>(m));
  dg.add(eps);
  return detail::make_eval("thm3a.rank", eps, bound, gap, dg.value());
}

struct EntropyEnergyScb {
  BoundEvaluation main;     // the piecewise bound through F_{H_m} and F_{H0_m}
  BoundEvaluation simple;   // eps F_{H0_m}(E_m/eps) + h_up(eps)
};

// Energy-constrained entropy semicontinuity bound with m-partial
// majorization. The states are given in the Hamiltonian eigenbasis
// coordinates (H diagonal in the computational basis of the matrices).
inline EntropyEnergyScb entropy_scb_energy(const DensityMatrix& rho,
                                           const DensityMatrix& sigma,
                                           const HamiltonianSpectrum& spec, int m,
                                           double eps) {
  detail::require_eps01(eps, "entropy_scb_energy");
  require_equal_dims(rho, sigma, "entropy_scb_energy");
  if (m < 1) throw ValidationError("entropy_scb_energy: m must be >= 1");
  const std::vector<double> lr = sorted_spectrum(rho);
  const std::vector<double> ls = sorted_spectrum(sigma);
  detail::require_partial_majorization(lr, ls, m);
  const double E = energy_moment(rho, spec, 1.0);
  double em = E;
  for (int i = 0; i < m; ++i)
    em -= spec.level(static_cast<std::size_t>(i)) * lr[static_cast<std::size_t>(i)];
  em = std::max(em, 0.0);
  const TruncatedHamiltonian trunc = truncate_hamiltonian(spec, static_cast<std::size_t>(m));
  const double a_threshold = trunc.a_fn(em);
  double bound;
  if (eps <= a_threshold && eps > 0.0)
    bound = eps * F_of_E(trunc.H_m, std::max(em / eps, trunc.H_m.min_level())) +
            binary_entropy(eps);
  else if (eps == 0.0)
    bound = 0.0;
  else
    bound = F_of_E(trunc.H0_m, em);
  const double simple_bound =
      eps > 0.0 ? eps * F_of_E(trunc.H0_m, em / eps) + h_up(eps) : 0.0;
  const double gap = von_neumann_entropy(rho) - von_neumann_entropy(sigma);
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  dg.add(static_cast<double>(m));
  dg.add(eps);
  return {detail::make_eval("thm3b.energy", eps, bound, gap, dg.value()),
          detail::make_eval("thm3b.energy.remark6", eps, simple_bound, gap, dg.value())};
}

// S(rho) - S(sigma) <= S~(rho ^ eps I) + h_up(eps), any pair within eps
inline BoundEvaluation entropy_truncation_scb(const DensityMatrix& rho,
                                              const DensityMatrix& sigma, double eps) {
  detail::require_eps01(eps, "entropy_truncation_scb");
  require_equal_dims(rho, sigma, "entropy_truncation_scb");
  const double bound = extended_entropy(cap_at(rho, eps)) + h_up(eps);
  const double gap = von_neumann_entropy(rho) - von_neumann_entropy(sigma);
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  dg.add(eps);
  return detail::make_eval("prop1.trunc", eps, bound, gap, dg.value());
}

// local lower bound S(sigma) >= S~([rho - eps I]_+) - h_up(eps); the
// evaluation carries S(sigma) as the majorant and the lower bound as the
// minorant
inline BoundEvaluation entropy_llb(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   double eps) {
  detail::require_eps01(eps, "entropy_llb");
  require_equal_dims(rho, sigma, "entropy_llb");
  const double lb = extended_entropy(clip_below(rho, eps)) - h_up(eps);
  const double s_sigma = von_neumann_entropy(sigma);
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  dg.add(eps);
  return detail::make_eval("prop2.llb", eps, s_sigma, lb, dg.value());
}

// ---------------------------------------------------------------------------
// Energy-type functionals
// ---------------------------------------------------------------------------

struct EnergyScb {
  BoundEvaluation refined;  // eps^{1-1/a} (Tr H^a (rho_hat ^ eps I))^{1/a}
  BoundEvaluation simple;   // eps^{1-1/a} (Tr H^a rho)^{1/a}
};

// Semicontinuity bound for E_H under an a-th moment constraint; the state is
// pinched to the Hamiltonian eigenbasis before clipping, which keeps the
// refinement valid for non-commuting pairs.
inline EnergyScb energy_scb(const DensityMatrix& rho, const DensityMatrix& sigma,
                            const HamiltonianSpectrum& spec, double a, double eps) {
  detail::require_eps01(eps, "energy_scb");
  require_equal_dims(rho, sigma, "energy_scb");
  if (a < 1.0) throw ValidationError("energy_scb: a must be >= 1");
  const DensityMatrix pinched = pinch_diagonal(rho);
  double capped_moment = 0.0;
  for (int k = 0; k < rho.dim(); ++k) {
    const double h = spec.level(static_cast<std::size_t>(k));
    if (h > 0.0)
      capped_moment += std::pow(h, a) * std::min(pinched.mat()(k, k).real(), eps);
  }
  const double moment = energy_moment(rho, spec, a);
  const double pref = std::pow(eps, 1.0 - 1.0 / a);
  const double refined = pref * std::pow(capped_moment, 1.0 / a);
  const double simple = pref * std::pow(moment, 1.0 / a);
  const double gap = energy_moment(rho, spec, 1.0) - energy_moment(sigma, spec, 1.0);
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  dg.add(a);
  dg.add(eps);
  return {detail::make_eval("prop3.energy.refined", eps, refined, gap, dg.value()),
          detail::make_eval("prop3.energy.simple", eps, simple, gap, dg.value())};
}

// |E_H(rho) - E_H(sigma)| <= eps^{1-1/a} E^{1/a} on the moment-constrained
// set; E defaults to the larger of the two measured moments
inline BoundEvaluation energy_cb(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 const HamiltonianSpectrum& spec, double a, double eps,
                                 double E = -1.0) {
  detail::require_eps01(eps, "energy_cb");
  require_equal_dims(rho, sigma, "energy_cb");
  if (a < 1.0) throw ValidationError("energy_cb: a must be >= 1");
  if (E < 0.0) E = std::max(energy_moment(rho, spec, a), energy_moment(sigma, spec, a));
  const double bound = std::pow(eps, 1.0 - 1.0 / a) * std::pow(E, 1.0 / a);
  const double gap =
      std::abs(energy_moment(rho, spec, 1.0) - energy_moment(sigma, spec, 1.0));
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  dg.add(a);
  dg.add(eps);
  dg.add(E);
  return detail::make_eval("cor3.energy", eps, bound, gap, dg.value());
}

// ---------------------------------------------------------------------------
// Relative entropy bounds
// ---------------------------------------------------------------------------

struct ReGibbsCb {
  BoundEvaluation main;     // coeff eps^{1-1/a} E^{1/a} + eps F_H((E/eps)^{1/a}) + h_up(eps)
  BoundEvaluation refined;  // the max-over-x form through F_{H_1}
};

namespace detail {

inline double re_refined_tail(const HamiltonianSpectrum& spec, double E, double a,
                              double eps) {
  // max over x in [0, min(eps, E/h_2^a)] of x F_{H_1}((E/x)^{1/a}) + h(x)
  const HamiltonianSpectrum h1 = spec.dropped(1);
  const double h2 = h1.min_level();
  double cap = eps;
  if (h2 > 0.0) cap = std::min(cap, E / std::pow(h2, a));
  if (cap <= 0.0) return binary_entropy(0.0);
  auto f = [&](double x) {
    if (x <= 0.0) return 0.0;
    // the cap keeps (E/x)^{1/a} >= h2 up to roundoff; clamp to the domain edge
    const double arg = std::max(std::pow(E / x, 1.0 / a), h2);
    return x * F_of_E(h1, arg) + binary_entropy(x);
  };
  return envelope_sup(f, cap);
}

}  // namespace detail

// Continuity bound for D(. || omega) with a Gibbs reference
// omega = e^{-beta H}/Z: the moment-constraint coefficient is beta. The
// refined variant replaces eps F_H + h_up with the max-over-x expression
// through the once-truncated operator.
inline ReGibbsCb re_gibbs_cb(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const HamiltonianSpectrum& spec, double beta, double a,
                             double eps, double E = -1.0) {
  detail::require_eps01(eps, "re_gibbs_cb");
  require_equal_dims(rho, sigma, "re_gibbs_cb");
  if (a <= 1.0) throw ValidationError("re_gibbs_cb: a must be > 1");
  if (beta <= 0.0) throw ValidationError("re_gibbs_cb: beta must be positive");
  if (E < 0.0) E = std::max(energy_moment(rho, spec, a), energy_moment(sigma, spec, a));
  const int d = rho.dim();
  // D(. || omega) for the Gibbs reference evaluated analytically through
  // -ln omega = beta H + ln Z, which keeps tiny Gibbs weights on the right
  // side of the support threshold
  double z = 0.0;
  for (int k = 0; k < d; ++k)
    z += std::exp(-beta * spec.level(static_cast<std::size_t>(k)));
  auto rel = [&](const DensityMatrix& st) {
    return beta * energy_moment(st, spec, 1.0) + std::log(z) - von_neumann_entropy(st);
  };
  const double gap = std::abs(rel(rho) - rel(sigma));
  const double moment_term = beta * std::pow(eps, 1.0 - 1.0 / a) * std::pow(E, 1.0 / a);
  const double entropy_term =
      eps > 0.0 ? eps * F_of_E(spec, std::pow(E / eps, 1.0 / a)) + h_up(eps) : 0.0;
  const double refined_tail =
      eps > 0.0 ? detail::re_refined_tail(spec, E, a, eps) : 0.0;
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  dg.add(beta);
  dg.add(a);
  dg.add(eps);
  dg.add(E);
  return {detail::make_eval("cor4.re.gibbs", eps, moment_term + entropy_term, gap,
                            dg.value()),
          detail::make_eval("cor4.re.gibbs.remark8", eps, moment_term + refined_tail, gap,
                            dg.value())};
}

// Continuity bound for D(. || omega) with a general faithful reference: the
// grounded operator is H = c(-ln omega + ln lambda_1 I) and the constraint is
// on its a-th moment.
inline BoundEvaluation re_faithful_cb(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      const DensityMatrix& omega, double c, double a,
                                      double eps) {
  detail::require_eps01(eps, "re_faithful_cb");
  require_equal_dims(rho, sigma, "re_faithful_cb");
  require_equal_dims(rho, omega, "re_faithful_cb");
  if (a <= 1.0) throw ValidationError("re_faithful_cb: a must be > 1");
  if (c <= 0.0) throw ValidationError("re_faithful_cb: c must be positive");
  EigenSystem es = spectral_decompose_raw(omega.mat());
  const double lam1 = es.values(0);
  if (es.values(es.values.size() - 1) <= kSupportTol)
    throw PreconditionError("re_faithful_cb: omega must be faithful (full rank)");
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(omega.dim()));
  for (Eigen::Index j = 0; j < es.values.size(); ++j)
    levels.push_back(c * (std::log(lam1) - std::log(es.values(j))));
  std::sort(levels.begin(), levels.end());
  levels.front() = 0.0;  // exact grounding of the numerically zero bottom level
  const HamiltonianSpectrum spec = HamiltonianSpectrum::explicit_list(levels);
  // a-th moment of H in omega's eigenbasis
  auto moment = [&](const DensityMatrix& st) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < es.values.size(); ++j) {
      const double h = c * (std::log(lam1) - std::log(es.values(j)));
      const double w = (es.vectors.col(j).adjoint() * st.mat() * es.vectors.col(j))(0).real();
      if (h > 0.0) acc += std::pow(h, a) * std::max(w, 0.0);
    }
    return acc;
  };
  const double E = std::max(moment(rho), moment(sigma));
  const double gap =
      std::abs(relative_entropy(rho, omega) - relative_entropy(sigma, omega));
  double bound = (1.0 / c) * std::pow(eps, 1.0 - 1.0 / a) * std::pow(E, 1.0 / a);
  if (eps > 0.0 && E > 0.0)
    bound += eps * F_of_E(spec, std::pow(E / eps, 1.0 / a)) + h_up(eps);
  else if (eps > 0.0)
    bound += h_up(eps);
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  dg.add(omega);
  dg.add(c);
  dg.add(a);
  dg.add(eps);
  return detail::make_eval("prop4.re", eps, bound, gap, dg.value());
}

// Semicontinuity bound for D(. || omega) on the set c rho <= omega:
// (1/c) eta_up(c eps) + h_up(eps), with the exact and envelope variants of
// Remark-form refinements. TwoSided additionally requires c sigma <= omega
// and commuting rho, sigma.
inline BoundEvaluation re_dominated_scb(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const DensityMatrix& omega, double c, double eps,
                                        BoundMode mode = BoundMode::OneSided,
                                        HVariant variant = HVariant::HUp) {
  detail::require_eps01(eps, "re_dominated_scb");
  require_equal_dims(rho, sigma, "re_dominated_scb");
  require_equal_dims(rho, omega, "re_dominated_scb");
  if (c <= 0.0 || c >= 1.0) throw ValidationError("re_dominated_scb: c outside (0,1)");
  EigenSystem dom = spectral_decompose_raw(omega.mat() - c * rho.mat());
  if (dom.values(dom.values.size() - 1) < -kPsdTol)
    throw PreconditionError("re_dominated_scb: c rho <= omega violated by " +
                            std::to_string(dom.values(dom.values.size() - 1)));
  const bool rs_commute = commutator_norm(rho.mat(), sigma.mat()) <= kCommuteTol;
  const bool rw_commute = commutator_norm(rho.mat(), omega.mat()) <= kCommuteTol;
  if (mode == BoundMode::OneSided) {
    if (!rs_commute && !rw_commute)
      throw PreconditionError("re_dominated_scb: requires [rho,sigma]=0 or [rho,omega]=0");
  } else {
    EigenSystem dom2 = spectral_decompose_raw(omega.mat() - c * sigma.mat());
    if (dom2.values(dom2.values.size() - 1) < -kPsdTol)
      throw PreconditionError("re_dominated_scb: c sigma <= omega violated");
    if (!rs_commute)
      throw PreconditionError("re_dominated_scb two-sided: requires [rho,sigma]=0");
  }
  double bound;
  switch (variant) {
    case HVariant::HUp:
      bound = (1.0 / c) * eta_up(c * eps) + h_up(eps);
      break;
    case HVariant::Exact: {
      if (!rs_commute)
        throw PreconditionError("re_dominated_scb exact variant: requires [rho,sigma]=0");
      const double dist = trace_distance(rho, sigma);
      if (std::abs(dist - eps) > 1e-10)
        throw PreconditionError(
            "re_dominated_scb exact variant: trace distance " + std::to_string(dist) +
            " does not equal eps");
      bound = (1.0 / c) * eta(c * eps) + binary_entropy(eps);
      break;
    }
    case HVariant::EnvelopeSup:
      bound = envelope_sup(
          [&](double t) { return (1.0 / c) * eta(c * t) + binary_entropy(t); }, eps);
      break;
    default:
      bound = 0.0;
  }
  const double dr = relative_entropy(rho, omega);
  const double ds = relative_entropy(sigma, omega);
  const double gap = mode == BoundMode::OneSided ? dr - ds : std::abs(dr - ds);
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  dg.add(omega);
  dg.add(c);
  dg.add(eps);
  const char* id = mode == BoundMode::OneSided
                       ? (variant == HVariant::Exact
                              ? "prop5.re.dominated.exact"
                              : (variant == HVariant::EnvelopeSup
                                     ? "prop5.re.dominated.remark9"
                                     : "prop5.re.dominated"))
                       : "cor5.re.dominated.twosided";
  return detail::make_eval(id, eps, bound, gap, dg.value());
}

// ---------------------------------------------------------------------------
// Quantum conditional entropy bounds
// ---------------------------------------------------------------------------

struct RankConstraint {
  int d;
};
struct EnergyConstraint {
  const HamiltonianSpectrum* spec;
  double E;  // negative = measure from the states
};

struct QceCommutingCb {
  BoundEvaluation bound;  // 2 eps ln d + h_up(eps) or 2 eps F_H(E/eps) + h_up(eps)
  // Dominance row for the rank form: the Winter value 2 eps ln dA + g(eps)
  // must majorize this bound evaluated at the same dimension dA (strict for
  // eps > 0 since g > h_up there). Absent for the energy form.
  std::vector<BoundEvaluation> winter_dominance;
};

// Continuity bound for S(A|B) over commuting bipartite pairs.
inline QceCommutingCb qce_commuting_cb(const DensityMatrix& rho, const DensityMatrix& sigma,
                                       int dA, int dB, const RankConstraint* rank,
                                       const EnergyConstraint* energy, double eps) {
  detail::require_eps01(eps, "qce_commuting_cb");
  require_equal_dims(rho, sigma, "qce_commuting_cb");
  if ((rank == nullptr) == (energy == nullptr))
    throw ValidationError("qce_commuting_cb: exactly one constraint required");
  const double comm = commutator_norm(rho.mat(), sigma.mat());
  if (comm > kCommuteTol)
    throw PreconditionError("qce_commuting_cb: states do not commute, norm " +
                            std::to_string(comm));
  const double gap = std::abs(conditional_entropy(rho, dA, dB) -
                              conditional_entropy(sigma, dA, dB));
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  dg.add(eps);
  if (rank != nullptr) {
    const int ra = numerical_rank(partial_trace(rho, dA, dB, Subsystem::A));
    const int sa = numerical_rank(partial_trace(sigma, dA, dB, Subsystem::A));
    if (std::max(ra, sa) > rank->d)
      throw PreconditionError("qce_commuting_cb: marginal rank exceeds constraint");
    const double bound = 2.0 * eps * std::log(static_cast<double>(rank->d)) + h_up(eps);
    const double winter =
        2.0 * eps * std::log(static_cast<double>(dA)) + g_function(eps);
    const double bound_at_dA =
        2.0 * eps * std::log(static_cast<double>(dA)) + h_up(eps);
    return {detail::make_eval("prop6.qce.rank", eps, bound, gap, dg.value()),
            {detail::make_eval("winter.qce.dominance", eps, winter, bound_at_dA,
                               dg.value())}};
  }
  const double ea = energy_moment(partial_trace(rho, dA, dB, Subsystem::A), *energy->spec);
  const double eb = energy_moment(partial_trace(sigma, dA, dB, Subsystem::A), *energy->spec);
  const double E = energy->E >= 0.0 ? energy->E : std::max(ea, eb);
  if (std::max(ea, eb) > E + 1e-9)
    throw PreconditionError("qce_commuting_cb: marginal energy exceeds constraint");
  const double bound =
      (eps > 0.0 ? 2.0 * eps * F_of_E(*energy->spec, E / eps) : 0.0) + h_up(eps);
  return {detail::make_eval("prop6.qce.energy", eps, bound, gap, dg.value()), {}};
}

struct QceQcScb {
  BoundEvaluation refined;  // energy: eps F_H((E - E_{H,eps})/eps) + h_up(eps)
  BoundEvaluation loose;    // rank form, or eps F_H(E/eps) + h_up(eps)
};

// Semicontinuity bounds for the QCE on quantum-classical states; the
// constraint is on rho only.
inline QceQcScb qce_qc_scb(const QCState& rho, const QCState& sigma,
                           const RankConstraint* rank, const EnergyConstraint* energy,
                           double eps) {
  detail::require_eps01(eps, "qce_qc_scb");
  if ((rank == nullptr) == (energy == nullptr))
    throw ValidationError("qce_qc_scb: exactly one constraint required");
  const double gap = rho.conditional_entropy() - sigma.conditional_entropy();
  detail::Digest dg;
  for (int k = 0; k < rho.block_count(); ++k) dg.add(rho.weighted_block(k));
  for (int k = 0; k < sigma.block_count(); ++k) dg.add(sigma.weighted_block(k));
  dg.add(eps);
  if (rank != nullptr) {
    const int ra = numerical_rank(rho.marginal_A());
    if (ra > rank->d)
      throw PreconditionError("qce_qc_scb: rank of rho_A exceeds constraint");
    const double bound = eps * std::log(static_cast<double>(rank->d)) + h_up(eps);
    BoundEvaluation ev = detail::make_eval("prop7.qce.qc.rank", eps, bound, gap, dg.value());
    return {ev, ev};
  }
  const HamiltonianSpectrum& spec = *energy->spec;
  const double E =
      energy->E >= 0.0 ? energy->E : energy_moment(rho.marginal_A(), spec, 1.0);
  double clipped_energy = 0.0;  // E_{H,eps}(rho) = sum_k Tr H [p_k rho_k - eps I]_+
  for (int k = 0; k < rho.block_count(); ++k)
    clipped_energy += energy_moment_raw(clip_below_raw(rho.weighted_block(k), eps), spec);
  const double refined_E = std::max(E - clipped_energy, 0.0);
  const double refined =
      (eps > 0.0 ? eps * F_of_E(spec, refined_E / eps) : 0.0) + h_up(eps);
  const double loose = (eps > 0.0 ? eps * F_of_E(spec, E / eps) : 0.0) + h_up(eps);
  return {detail::make_eval("prop7.qce.qc.energy.refined", eps, refined, gap, dg.value()),
          detail::make_eval("prop7.qce.qc.energy", eps, loose, gap, dg.value())};
}

struct QceQcTruncationAndLlb {
  BoundEvaluation scb;  // S~(A|B)_{rho ^ eps} + h_up(eps) majorizes the gap
  BoundEvaluation llb;  // S(A|B)_sigma majorizes S~(A|B)_{rho (-) eps} - h_up(eps)
};

// Blockwise truncation bound and local lower bound for the QCE on q-c states;
// the homogeneous QCE extension acts blockwise: S~(A|B)_tau = sum_k S~(tau_k).
inline QceQcTruncationAndLlb qce_qc_truncation_and_llb(const QCState& rho,
                                                       const QCState& sigma, double eps) {
  detail::require_eps01(eps, "qce_qc_truncation_and_llb");
  double capped = 0.0, clipped = 0.0;
  for (int k = 0; k < rho.block_count(); ++k) {
    const Matrix wb = rho.weighted_block(k);
    capped += extended_entropy_raw(cap_at_raw(wb, eps));
    clipped += extended_entropy_raw(clip_below_raw(wb, eps));
  }
  const double gap = rho.conditional_entropy() - sigma.conditional_entropy();
  const double scb_bound = capped + h_up(eps);
  const double llb = clipped - h_up(eps);
  const double s_sigma = sigma.conditional_entropy();
  detail::Digest dg;
  for (int k = 0; k < rho.block_count(); ++k) dg.add(rho.weighted_block(k));
  for (int k = 0; k < sigma.block_count(); ++k) dg.add(sigma.weighted_block(k));
  dg.add(eps);
  return {detail::make_eval("prop8.qce.qc.scb", eps, scb_bound, gap, dg.value()),
          detail::make_eval("prop9.qce.qc.llb", eps, s_sigma, llb, dg.value())};
}

// ---------------------------------------------------------------------------
// Entanglement of Formation bounds
// ---------------------------------------------------------------------------

enum class EofDistance { TraceDistance, Fidelity };

// Semicontinuity bound for E_F: delta = sqrt(eps(2-eps)) from the trace
// distance or sqrt(1-F) from the fidelity, then the rank envelope
// {delta ln(rank rho_A) + h(delta)}^up or the energy form
// delta F_H(E/delta) + h_up(delta). The gap defaults to exact two-qubit
// values; callers may pass precomputed E_F values for other dimensions.
inline BoundEvaluation eof_scb(const DensityMatrix& rho, const DensityMatrix& sigma, int dA,
                               int dB, const RankConstraint* rank,
                               const EnergyConstraint* energy, double eps_or_fid,
                               EofDistance kind, double gap_override_rho = -1.0,
                               double gap_override_sigma = -1.0) {
  require_equal_dims(rho, sigma, "eof_scb");
  if ((rank == nullptr) == (energy == nullptr))
    throw ValidationError("eof_scb: exactly one constraint required");
  double delta;
  if (kind == EofDistance::TraceDistance) {
    detail::require_eps01(eps_or_fid, "eof_scb");
    delta = std::sqrt(eps_or_fid * (2.0 - eps_or_fid));
  } else {
    if (eps_or_fid < 0.0 || eps_or_fid > 1.0)
      throw ValidationError("eof_scb: fidelity outside [0,1]");
    delta = std::sqrt(1.0 - eps_or_fid);
  }
  const double ef_rho =
      gap_override_rho >= 0.0 ? gap_override_rho : eof_value(rho, dA, dB);
  const double ef_sigma =
      gap_override_sigma >= 0.0 ? gap_override_sigma : eof_value(sigma, dA, dB);
  const double gap = ef_rho - ef_sigma;
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  dg.add(eps_or_fid);
  dg.add(delta);
  if (rank != nullptr) {
    const int ra = numerical_rank(partial_trace(rho, dA, dB, Subsystem::A));
    if (ra > rank->d) throw PreconditionError("eof_scb: rank of rho_A exceeds constraint");
    const double ln_d = std::log(static_cast<double>(rank->d));
    const double bound = envelope_sup(
        [&](double t) { return t * ln_d + binary_entropy(t); }, std::min(delta, 1.0));
    const char* id = kind == EofDistance::TraceDistance ? "prop10.eof.rank"
                                                        : "prop10.eof.rank.fidelity";
    return detail::make_eval(id, eps_or_fid, bound, gap, dg.value());
  }
  const HamiltonianSpectrum& spec = *energy->spec;
  const double E = energy->E >= 0.0
                       ? energy->E
                       : energy_moment(partial_trace(rho, dA, dB, Subsystem::A), spec);
  const double bound =
      (delta > 0.0 ? delta * F_of_E(spec, E / delta) : 0.0) + h_up(std::min(delta, 1.0));
  const char* id = kind == EofDistance::TraceDistance ? "prop10.eof.energy"
                                                      : "prop10.eof.energy.fidelity";
  return detail::make_eval(id, eps_or_fid, bound, gap, dg.value());
}

// ---------------------------------------------------------------------------
// Preliminary inequalities as evaluations
// ---------------------------------------------------------------------------

// Mirsky: sum_i |lambda_i(rho) - lambda_i(sigma)| <= ||rho - sigma||_1
inline BoundEvaluation mirsky_check(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_equal_dims(rho, sigma, "mirsky_check");
  const std::vector<double> lr = sorted_spectrum(rho);
  const std::vector<double> ls = sorted_spectrum(sigma);
  double eigsum = 0.0;
  for (std::size_t i = 0; i < lr.size(); ++i) eigsum += std::abs(lr[i] - ls[i]);
  const double tn = trace_norm(rho.mat() - sigma.mat());
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  return detail::make_eval("mirsky", 0.5 * tn, tn, eigsum, dg.value());
}

// S(rho) + eps S(tau_-) <= S(sigma) + eps S(tau_+) + h(eps) with the Jordan
// parts of rho - sigma at the exact trace distance
inline BoundEvaluation entropy_split_check(const DensityMatrix& rho,
                                           const DensityMatrix& sigma, bool commuting) {
  double eps, s_plus, s_minus;
  if (commuting) {
    const JordanSplit js = jordan_split(rho, sigma);
    eps = js.epsilon;
    s_plus = von_neumann_entropy(js.tau_plus);
    s_minus = von_neumann_entropy(js.tau_minus);
  } else {
    const HermitianJordanParts parts = hermitian_jordan_parts(rho, sigma);
    eps = parts.epsilon;
    s_plus = von_neumann_entropy(parts.tau_plus);
    s_minus = von_neumann_entropy(parts.tau_minus);
  }
  const double bound = von_neumann_entropy(sigma) + eps * s_plus + binary_entropy(eps);
  const double gap = von_neumann_entropy(rho) + eps * s_minus;
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  return detail::make_eval(commuting ? "eq38.split" : "eq38.split.noncommuting", eps, bound,
                           gap, dg.value());
}

// Fuchs - van de Graaf sandwich rows
inline BoundEvaluation fvdg_lower(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double td = trace_distance(rho, sigma);
  const double f = fidelity(rho, sigma);
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  return detail::make_eval("fvdg.lower", td, td, 1.0 - std::sqrt(f), dg.value());
}

inline BoundEvaluation fvdg_upper(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double td = trace_distance(rho, sigma);
  const double f = fidelity(rho, sigma);
  detail::Digest dg;
  dg.add(rho);
  dg.add(sigma);
  return detail::make_eval("fvdg.upper", td, std::sqrt(std::max(0.0, 1.0 - f)), td,
                           dg.value());
}

// identity evaluation: slack = -|lhs - rhs|
inline BoundEvaluation identity_check(std::string id, double lhs, double rhs,
                                      std::uint64_t digest) {
  return detail::make_eval(std::move(id), 0.0, rhs, rhs + std::abs(lhs - rhs), digest);
}

}  // namespace qcb

#endif  // QCB_BOUNDS_HPP
