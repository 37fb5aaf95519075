#ifndef QCB_CAMPAIGN_HPP
#define QCB_CAMPAIGN_HPP

// Campaign runner: binds the seeded generators to the bound evaluators over
// an epsilon grid, aggregates slack statistics per cell and emits
// machine-readable reports. Sample evaluation fans out across workers with
// per-sample sub-seeds; aggregation is order-independent, so the report does
// not depend on the worker count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qcb/bounds.hpp"
#include "qcb/entropy.hpp"
#include "qcb/eof.hpp"
#include "qcb/errors.hpp"
#include "qcb/gibbs.hpp"
#include "qcb/io.hpp"
#include "qcb/matrix.hpp"
#include "qcb/qcstate.hpp"
#include "qcb/rng.hpp"
#include "qcb/sampling.hpp"
#include "qcb/scalars.hpp"
#include "qcb/version.hpp"

namespace qcb {

struct CampaignConfig {
  std::string bound_id;
  SampleSpec sample;
  int samples = 1000;
  std::vector<double> epsilon_grid = {0.01, 0.1, 0.3, 0.7};
  double tolerance = -1.0;  // negative: use the bound's default
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  int workers = 0;  // 0: QCB_WORKERS env or hardware_concurrency
};

struct CampaignRow {
  double epsilon = 0.0;
  int samples = 0;
  int violations = 0;
  double min_slack = 0.0;
  double median_slack = 0.0;
  double p95_tightness = 0.0;  // 95th percentile of gap/bound
};

struct CampaignReport {
  std::string bound_id;
  std::vector<CampaignRow> rows;
  std::uint64_t seed = 0;
  std::string version;
  std::uint64_t digest = 0;
  double runtime_ms = 0.0;  // volatile, excluded from the digest
  std::string timestamp;    // volatile, excluded from the digest
};

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

using BoundEval = std::function<BoundEvaluation(const SampleSpec&, double, CounterRng&)>;

struct BoundDescriptor {
  std::vector<SampleKind> kinds;  // compatible sampler kinds
  double default_tol = 1e-9;
  BoundEval eval;
};

namespace campaign_detail {

inline HamiltonianSpectrum spec_for(const SampleSpec& s, int min_dim) {
  return s.spectrum.build(static_cast<std::size_t>(std::max(min_dim, 2)));
}

inline StatePair make_pair(const SampleSpec& s, double eps, CounterRng& rng) {
  switch (s.kind) {
    case SampleKind::Generic:
      return generic_pair(s.dim, eps, rng);
    case SampleKind::CommutingPair: {
      CommutingPairSample cp = commuting_pair(s.dim, eps, rng);
      return {std::move(cp.rho), std::move(cp.sigma)};
    }
    case SampleKind::MajorizedPair: {
      CommutingPairSample cp = partial_majorized_pair(s.dim, s.m, eps, rng);
      return {std::move(cp.rho), std::move(cp.sigma)};
    }
    case SampleKind::ExtremalEnergyPair:
      return extremal_energy_pair(spec_for(s, std::max(s.k, 2)), s.k, eps);
    default:
      throw ConfigurationError("sampler kind does not produce a dense state pair");
  }
}

inline int full_rank(const SampleSpec& s) { return s.rank > 0 ? s.rank : s.dim; }

// one independent full-rank state (not a pair)
inline DensityMatrix make_state(const SampleSpec& s, CounterRng& rng) {
  return random_density(s.dim, full_rank(s), rng);
}

inline std::map<std::string, BoundDescriptor> build_registry() {
  std::map<std::string, BoundDescriptor> reg;
  const std::vector<SampleKind> pair_kinds = {SampleKind::Generic, SampleKind::CommutingPair,
                                              SampleKind::MajorizedPair};
  const std::vector<SampleKind> commuting_kinds = {SampleKind::CommutingPair,
                                                   SampleKind::MajorizedPair};

  // --- operator-level inequalities -----------------------------------------
  reg["mirsky"] = {pair_kinds, 1e-9, [](const SampleSpec& s, double eps, CounterRng& rng) {
                     StatePair pr = make_pair(s, eps, rng);
                     return mirsky_check(pr.rho, pr.sigma);
                   }};
  reg["fvdg.lower"] = {pair_kinds, 1e-9,
                       [](const SampleSpec& s, double eps, CounterRng& rng) {
                         StatePair pr = make_pair(s, eps, rng);
                         return fvdg_lower(pr.rho, pr.sigma);
                       }};
  reg["fvdg.upper"] = {pair_kinds, 1e-9,
                       [](const SampleSpec& s, double eps, CounterRng& rng) {
                         StatePair pr = make_pair(s, eps, rng);
                         return fvdg_upper(pr.rho, pr.sigma);
                       }};

  // --- almost-affinity of the basic functionals ----------------------------
  reg["eq2.concavity.upper"] = {
      {SampleKind::Generic}, 1e-9, [](const SampleSpec& s, double, CounterRng& rng) {
        const DensityMatrix rho = make_state(s, rng);
        const DensityMatrix sigma = make_state(s, rng);
        const double p = rng.uniform();
        const DensityMatrix mix =
            DensityMatrix::from(p * rho.mat() + (1.0 - p) * sigma.mat());
        const double bound = p * von_neumann_entropy(rho) +
                             (1.0 - p) * von_neumann_entropy(sigma) + binary_entropy(p);
        detail::Digest dg;
        dg.add(rho);
        dg.add(sigma);
        dg.add(p);
        return detail::make_eval("eq2.concavity.upper", p, bound, von_neumann_entropy(mix),
                                 dg.value());
      }};
  reg["eq2.concavity.lower"] = {
      {SampleKind::Generic}, 1e-9, [](const SampleSpec& s, double, CounterRng& rng) {
        const DensityMatrix rho = make_state(s, rng);
        const DensityMatrix sigma = make_state(s, rng);
        const double p = rng.uniform();
        const DensityMatrix mix =
            DensityMatrix::from(p * rho.mat() + (1.0 - p) * sigma.mat());
        const double avg =
            p * von_neumann_entropy(rho) + (1.0 - p) * von_neumann_entropy(sigma);
        detail::Digest dg;
        dg.add(rho);
        dg.add(sigma);
        dg.add(p);
        return detail::make_eval("eq2.concavity.lower", p, von_neumann_entropy(mix), avg,
                                 dg.value());
      }};
  reg["eq10.qce.convexity"] = {
      {SampleKind::Generic}, 1e-9, [](const SampleSpec& s, double, CounterRng& rng) {
        const int d = s.dA * s.dB;
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        const double p = rng.uniform();
        const DensityMatrix mix =
            DensityMatrix::from(p * rho.mat() + (1.0 - p) * sigma.mat());
        const double bound = p * conditional_entropy(rho, s.dA, s.dB) +
                             (1.0 - p) * conditional_entropy(sigma, s.dA, s.dB) +
                             binary_entropy(p);
        detail::Digest dg;
        dg.add(rho);
        dg.add(sigma);
        dg.add(p);
        return detail::make_eval("eq10.qce.convexity", p, bound,
                                 conditional_entropy(mix, s.dA, s.dB), dg.value());
      }};
  reg["eq14.mi.affinity.lower"] = {
      {SampleKind::Generic}, 1e-9, [](const SampleSpec& s, double, CounterRng& rng) {
        const int d = s.dA * s.dB;
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        const double p = rng.uniform();
        const DensityMatrix mix =
            DensityMatrix::from(p * rho.mat() + (1.0 - p) * sigma.mat());
        const double avg = p * mutual_information(rho, s.dA, s.dB) +
                           (1.0 - p) * mutual_information(sigma, s.dA, s.dB);
        detail::Digest dg;
        dg.add(rho);
        dg.add(sigma);
        dg.add(p);
        return detail::make_eval("eq14.mi.affinity.lower", p,
                                 mutual_information(mix, s.dA, s.dB) + binary_entropy(p),
                                 avg, dg.value());
      }};
  reg["eq15.mi.affinity.upper"] = {
      {SampleKind::Generic}, 1e-9, [](const SampleSpec& s, double, CounterRng& rng) {
        const int d = s.dA * s.dB;
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix sigma = random_density(d, d, rng);
        const double p = rng.uniform();
        const DensityMatrix mix =
            DensityMatrix::from(p * rho.mat() + (1.0 - p) * sigma.mat());
        const double avg = p * mutual_information(rho, s.dA, s.dB) +
                           (1.0 - p) * mutual_information(sigma, s.dA, s.dB);
        detail::Digest dg;
        dg.add(rho);
        dg.add(sigma);
        dg.add(p);
        return detail::make_eval("eq15.mi.affinity.upper", p, avg + binary_entropy(p),
                                 mutual_information(mix, s.dA, s.dB), dg.value());
      }};

  // --- relative-entropy identities on positive operators -------------------
  reg["dmul.identity"] = {
      {SampleKind::Generic}, 1e-9, [](const SampleSpec& s, double, CounterRng& rng) {
        const Matrix a = rng.uniform(0.2, 1.0) * make_state(s, rng).mat();
        const Matrix b = rng.uniform(0.2, 1.0) * random_density(s.dim, s.dim, rng).mat();
        const double c = rng.uniform(0.1, 2.0);
        const double lhs = relative_entropy_ext(c * a, c * b);
        const double rhs = c * relative_entropy_ext(a, b);
        detail::Digest dg;
        dg.add(a);
        dg.add(b);
        dg.add(c);
        return identity_check("dmul.identity", lhs, rhs, dg.value());
      }};
  reg["dcid.identity"] = {
      {SampleKind::Generic}, 1e-9, [](const SampleSpec& s, double, CounterRng& rng) {
        const Matrix a = rng.uniform(0.2, 1.0) * make_state(s, rng).mat();
        const Matrix b = rng.uniform(0.2, 1.0) * random_density(s.dim, s.dim, rng).mat();
        const double c = rng.uniform(0.1, 2.0);
        const double lhs = relative_entropy_ext(a, c * b);
        const double rhs = relative_entropy_ext(a, b) - a.trace().real() * std::log(c) +
                           (c - 1.0) * b.trace().real();
        detail::Digest dg;
        dg.add(a);
        dg.add(b);
        dg.add(c);
        return identity_check("dcid.identity", lhs, rhs, dg.value());
      }};
  reg["reineq"] = {
      {SampleKind::Generic}, 1e-9, [](const SampleSpec& s, double, CounterRng& rng) {
        const Matrix a = rng.uniform(0.2, 1.0) * make_state(s, rng).mat();
        const Matrix b = rng.uniform(0.2, 1.0) * random_density(s.dim, s.dim, rng).mat();
        const Matrix w = rng.uniform(0.05, 0.8) *
                         random_density(s.dim, 1 + static_cast<int>(rng.uniform_index(
                                                      static_cast<std::uint64_t>(s.dim))),
                                        rng)
                             .mat();
        const double lhs = relative_entropy_ext(a, b + w);
        const double rhs = relative_entropy_ext(a, b) + w.trace().real();
        detail::Digest dg;
        dg.add(a);
        dg.add(b);
        dg.add(w);
        return detail::make_eval("reineq", 0.0, rhs, lhs, dg.value());
      }};

  // --- entropy difference through the Jordan parts -------------------------
  reg["eq38.split"] = {commuting_kinds, 1e-9,
                       [](const SampleSpec& s, double eps, CounterRng& rng) {
                         StatePair pr = make_pair(s, eps, rng);
                         return entropy_split_check(pr.rho, pr.sigma, true);
                       }};
  reg["eq38.split.noncommuting"] = {{SampleKind::Generic}, 1e-9,
                                    [](const SampleSpec& s, double eps, CounterRng& rng) {
                                      StatePair pr = generic_pair(s.dim, eps, rng);
                                      return entropy_split_check(pr.rho, pr.sigma, false);
                                    }};

  // --- entropy semicontinuity / lower bounds -------------------------------
  reg["thm3a.rank"] = {{SampleKind::MajorizedPair}, 1e-9,
                       [](const SampleSpec& s, double eps, CounterRng& rng) {
                         CommutingPairSample cp =
                             partial_majorized_pair(s.dim, s.m, eps, rng);
                         return entropy_scb_rank(cp.p, cp.q, s.m, eps);
                       }};
  reg["thm3b.energy"] = {{SampleKind::MajorizedPair}, 1e-9,
                         [](const SampleSpec& s, double eps, CounterRng& rng) {
                           CommutingPairSample cp =
                               partial_majorized_pair(s.dim, s.m, eps, rng);
                           const HamiltonianSpectrum spec = spec_for(s, s.dim);
                           return entropy_scb_energy(cp.rho, cp.sigma, spec, s.m, eps).main;
                         }};
  reg["thm3b.energy.remark6"] = {
      {SampleKind::MajorizedPair}, 1e-9, [](const SampleSpec& s, double eps, CounterRng& rng) {
        CommutingPairSample cp = partial_majorized_pair(s.dim, s.m, eps, rng);
        const HamiltonianSpectrum spec = spec_for(s, s.dim);
        return entropy_scb_energy(cp.rho, cp.sigma, spec, s.m, eps).simple;
      }};
  reg["prop1.trunc"] = {pair_kinds, 1e-9,
                        [](const SampleSpec& s, double eps, CounterRng& rng) {
                          StatePair pr = make_pair(s, eps, rng);
                          return entropy_truncation_scb(pr.rho, pr.sigma, eps);
                        }};
  reg["prop2.llb"] = {pair_kinds, 1e-9,
                      [](const SampleSpec& s, double eps, CounterRng& rng) {
                        StatePair pr = make_pair(s, eps, rng);
                        return entropy_llb(pr.rho, pr.sigma, eps);
                      }};

  // --- energy-type functionals ----------------------------------------------
  const std::vector<SampleKind> energy_pair_kinds = {
      SampleKind::Generic, SampleKind::CommutingPair, SampleKind::ExtremalEnergyPair};
  reg["prop3.energy.refined"] = {
      energy_pair_kinds, 1e-9, [](const SampleSpec& s, double eps, CounterRng& rng) {
        StatePair pr = make_pair(s, eps, rng);
        const HamiltonianSpectrum spec = spec_for(s, std::max(s.dim, s.k));
        return energy_scb(pr.rho, pr.sigma, spec, s.a, eps).refined;
      }};
  reg["prop3.energy.simple"] = {
      energy_pair_kinds, 1e-9, [](const SampleSpec& s, double eps, CounterRng& rng) {
        StatePair pr = make_pair(s, eps, rng);
        const HamiltonianSpectrum spec = spec_for(s, std::max(s.dim, s.k));
        return energy_scb(pr.rho, pr.sigma, spec, s.a, eps).simple;
      }};
  reg["cor3.energy"] = {energy_pair_kinds, 1e-9,
                        [](const SampleSpec& s, double eps, CounterRng& rng) {
                          StatePair pr = make_pair(s, eps, rng);
                          const HamiltonianSpectrum spec = spec_for(s, std::max(s.dim, s.k));
                          return energy_cb(pr.rho, pr.sigma, spec, s.a, eps, s.E);
                        }};

  // --- relative entropy bounds ----------------------------------------------
  reg["prop4.re"] = {pair_kinds, 1e-9,
                     [](const SampleSpec& s, double eps, CounterRng& rng) {
                       StatePair pr = make_pair(s, eps, rng);
                       const DensityMatrix omega = random_density(s.dim, s.dim, rng);
                       return re_faithful_cb(pr.rho, pr.sigma, omega, s.c, s.a, eps);
                     }};
  reg["cor4.re.gibbs"] = {pair_kinds, 1e-9,
                          [](const SampleSpec& s, double eps, CounterRng& rng) {
                            StatePair pr = make_pair(s, eps, rng);
                            const HamiltonianSpectrum spec = spec_for(s, s.dim);
                            return re_gibbs_cb(pr.rho, pr.sigma, spec, s.beta, s.a, eps).main;
                          }};
  reg["cor4.re.gibbs.remark8"] = {
      pair_kinds, 1e-9, [](const SampleSpec& s, double eps, CounterRng& rng) {
        StatePair pr = make_pair(s, eps, rng);
        const HamiltonianSpectrum spec = spec_for(s, s.dim);
        return re_gibbs_cb(pr.rho, pr.sigma, spec, s.beta, s.a, eps).refined;
      }};

  // commuting triple rho, sigma, omega = c rho + (1-c) W in a shared basis
  auto dominated_sample = [](const SampleSpec& s, double eps, CounterRng& rng,
                             bool two_sided) {
    CommutingPairSample cp = commuting_pair(s.dim, eps, rng);
    std::vector<double> w = random_simplex(s.dim, rng);
    std::vector<double> om(static_cast<std::size_t>(s.dim));
    const double c = two_sided ? std::min(s.c, 0.45) : s.c;
    for (int i = 0; i < s.dim; ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      om[k] = two_sided ? c * cp.p[k] + c * cp.q[k] + (1.0 - 2.0 * c) * w[k]
                        : c * cp.p[k] + (1.0 - c) * w[k];
    }
    const Matrix& basis = *cp.basis;
    DensityMatrix omega = DensityMatrix::diagonal_in_basis(om, basis, cp.basis);
    return std::make_tuple(std::move(cp), std::move(omega), c);
  };
  reg["prop5.re.dominated"] = {
      commuting_kinds, 1e-9, [dominated_sample](const SampleSpec& s, double eps,
                                                CounterRng& rng) {
        auto [cp, omega, c] = dominated_sample(s, eps, rng, false);
        return re_dominated_scb(cp.rho, cp.sigma, omega, c, eps, BoundMode::OneSided,
                                HVariant::HUp);
      }};
  reg["prop5.re.dominated.exact"] = {
      commuting_kinds, 1e-9, [dominated_sample](const SampleSpec& s, double eps,
                                                CounterRng& rng) {
        auto [cp, omega, c] = dominated_sample(s, eps, rng, false);
        return re_dominated_scb(cp.rho, cp.sigma, omega, c, eps, BoundMode::OneSided,
                                HVariant::Exact);
      }};
  reg["prop5.re.dominated.remark9"] = {
      commuting_kinds, 1e-9, [dominated_sample](const SampleSpec& s, double eps,
                                                CounterRng& rng) {
        auto [cp, omega, c] = dominated_sample(s, eps, rng, false);
        return re_dominated_scb(cp.rho, cp.sigma, omega, c, eps, BoundMode::OneSided,
                                HVariant::EnvelopeSup);
      }};
  reg["cor5.re.dominated.twosided"] = {
      commuting_kinds, 1e-9, [dominated_sample](const SampleSpec& s, double eps,
                                                CounterRng& rng) {
        auto [cp, omega, c] = dominated_sample(s, eps, rng, true);
        return re_dominated_scb(cp.rho, cp.sigma, omega, c, eps, BoundMode::TwoSided,
                                HVariant::HUp);
      }};

  // --- conditional entropy ---------------------------------------------------
  auto commuting_bipartite = [](const SampleSpec& s, double eps, CounterRng& rng) {
    SampleSpec t = s;
    t.dim = s.dA * s.dB;
    t.kind = SampleKind::CommutingPair;
    return make_pair(t, eps, rng);
  };
  reg["prop6.qce.rank"] = {
      commuting_kinds, 1e-9,
      [commuting_bipartite](const SampleSpec& s, double eps, CounterRng& rng) {
        StatePair pr = commuting_bipartite(s, eps, rng);
        const int d = std::max(
            numerical_rank(partial_trace(pr.rho, s.dA, s.dB, Subsystem::A)),
            numerical_rank(partial_trace(pr.sigma, s.dA, s.dB, Subsystem::A)));
        RankConstraint rank{std::max(d, 1)};
        return qce_commuting_cb(pr.rho, pr.sigma, s.dA, s.dB, &rank, nullptr, eps).bound;
      }};
  reg["winter.qce.dominance"] = {
      commuting_kinds, 1e-9,
      [commuting_bipartite](const SampleSpec& s, double eps, CounterRng& rng) {
        StatePair pr = commuting_bipartite(s, eps, rng);
        RankConstraint rank{s.dA};
        return qce_commuting_cb(pr.rho, pr.sigma, s.dA, s.dB, &rank, nullptr, eps)
            .winter_dominance.front();
      }};
  reg["prop6.qce.energy"] = {
      commuting_kinds, 1e-9,
      [commuting_bipartite](const SampleSpec& s, double eps, CounterRng& rng) {
        StatePair pr = commuting_bipartite(s, eps, rng);
        const HamiltonianSpectrum spec = spec_for(s, s.dA);
        EnergyConstraint en{&spec, s.E};
        return qce_commuting_cb(pr.rho, pr.sigma, s.dA, s.dB, nullptr, &en, eps).bound;
      }};
  reg["prop7.qce.qc.rank"] = {
      {SampleKind::QcPair}, 1e-9, [](const SampleSpec& s, double eps, CounterRng& rng) {
        QcPairSample pr = qc_pair(s.dA, s.blocks, eps, rng);
        RankConstraint rank{std::max(numerical_rank(pr.rho.marginal_A()), 1)};
        return qce_qc_scb(pr.rho, pr.sigma, &rank, nullptr, eps).loose;
      }};
  reg["prop7.qce.qc.energy.refined"] = {
      {SampleKind::QcPair}, 1e-9, [](const SampleSpec& s, double eps, CounterRng& rng) {
        QcPairSample pr = qc_pair(s.dA, s.blocks, eps, rng);
        const HamiltonianSpectrum spec = spec_for(s, s.dA);
        EnergyConstraint en{&spec, s.E};
        return qce_qc_scb(pr.rho, pr.sigma, nullptr, &en, eps).refined;
      }};
  reg["prop7.qce.qc.energy"] = {
      {SampleKind::QcPair}, 1e-9, [](const SampleSpec& s, double eps, CounterRng& rng) {
        QcPairSample pr = qc_pair(s.dA, s.blocks, eps, rng);
        const HamiltonianSpectrum spec = spec_for(s, s.dA);
        EnergyConstraint en{&spec, s.E};
        return qce_qc_scb(pr.rho, pr.sigma, nullptr, &en, eps).loose;
      }};
  reg["prop8.qce.qc.scb"] = {
      {SampleKind::QcPair}, 1e-9, [](const SampleSpec& s, double eps, CounterRng& rng) {
        QcPairSample pr = qc_pair(s.dA, s.blocks, eps, rng);
        return qce_qc_truncation_and_llb(pr.rho, pr.sigma, eps).scb;
      }};
  reg["prop9.qce.qc.llb"] = {
      {SampleKind::QcPair}, 1e-9, [](const SampleSpec& s, double eps, CounterRng& rng) {
        QcPairSample pr = qc_pair(s.dA, s.blocks, eps, rng);
        return qce_qc_truncation_and_llb(pr.rho, pr.sigma, eps).llb;
      }};
  // ensemble restatements of the two bounds above: identical mathematics over
  // explicitly ensemble-shaped samples
  reg["cor6.ensemble.scb"] = reg["prop8.qce.qc.scb"];
  reg["cor7.ensemble.llb"] = reg["prop9.qce.qc.llb"];

  // --- mutual information instances of the generic class bounds -------------
  reg["cor1.mi.rank"] = {
      commuting_kinds, 1e-9,
      [commuting_bipartite](const SampleSpec& s, double eps, CounterRng& rng) {
        StatePair pr = commuting_bipartite(s, eps, rng);
        const int ra = numerical_rank(partial_trace(pr.rho, s.dA, s.dB, Subsystem::A));
        const ClassParams cls{2.0, 2.0, 1, 2};
        const double bound = generic_rank_bound(cls, std::max(ra, 1), eps,
                                                BoundMode::OneSided, HVariant::HUp);
        const double gap = mutual_information(pr.rho, s.dA, s.dB) -
                           mutual_information(pr.sigma, s.dA, s.dB);
        detail::Digest dg;
        dg.add(pr.rho);
        dg.add(pr.sigma);
        dg.add(eps);
        return detail::make_eval("cor1.mi.rank", eps, bound, gap, dg.value());
      }};
  auto cor2_mi = [commuting_bipartite](const SampleSpec& s, double eps, CounterRng& rng,
                                       bool refined) {
    StatePair pr = commuting_bipartite(s, eps, rng);
    const HamiltonianSpectrum spec = spec_for(s, s.dA);
    const double E =
        energy_moment(partial_trace(pr.rho, s.dA, s.dB, Subsystem::A), spec, 1.0);
    double eff = E;
    if (refined) {
      const Matrix clipped = clip_below_raw(pr.rho.mat(), eps);
      eff = std::max(
          E - energy_moment_raw(partial_trace_raw(clipped, s.dA, s.dB, Subsystem::A), spec),
          0.0);
    }
    const ClassParams cls{2.0, 2.0, 1, 2};
    auto handle = [&spec](double x) { return F_of_E(spec, x); };
    const double bound =
        generic_energy_bound(cls, handle, eff, eps, BoundMode::OneSided, HVariant::HUp);
    const double gap = mutual_information(pr.rho, s.dA, s.dB) -
                       mutual_information(pr.sigma, s.dA, s.dB);
    detail::Digest dg;
    dg.add(pr.rho);
    dg.add(pr.sigma);
    dg.add(eps);
    return detail::make_eval(refined ? "cor2.mi.energy.refined" : "cor2.mi.energy", eps,
                             bound, gap, dg.value());
  };
  reg["cor2.mi.energy.refined"] = {commuting_kinds, 1e-9,
                                   [cor2_mi](const SampleSpec& s, double eps,
                                             CounterRng& rng) {
                                     return cor2_mi(s, eps, rng, true);
                                   }};
  reg["cor2.mi.energy"] = {commuting_kinds, 1e-9,
                           [cor2_mi](const SampleSpec& s, double eps, CounterRng& rng) {
                             return cor2_mi(s, eps, rng, false);
                           }};

  // --- entanglement of formation ---------------------------------------------
  auto two_qubit_pair = [](const SampleSpec& s, double eps, CounterRng& rng) {
    SampleSpec t = s;
    t.dim = 4;
    t.kind = s.kind == SampleKind::CommutingPair ? SampleKind::CommutingPair
                                                 : SampleKind::Generic;
    return make_pair(t, eps, rng);
  };
  reg["prop10.eof.rank"] = {
      {SampleKind::Generic, SampleKind::CommutingPair}, 1e-9,
      [two_qubit_pair](const SampleSpec& s, double eps, CounterRng& rng) {
        StatePair pr = two_qubit_pair(s, eps, rng);
        RankConstraint rank{2};
        return eof_scb(pr.rho, pr.sigma, 2, 2, &rank, nullptr, eps,
                       EofDistance::TraceDistance, wootters_eof(pr.rho),
                       wootters_eof(pr.sigma));
      }};
  reg["prop10.eof.rank.fidelity"] = {
      {SampleKind::Generic, SampleKind::CommutingPair}, 1e-9,
      [two_qubit_pair](const SampleSpec& s, double eps, CounterRng& rng) {
        StatePair pr = two_qubit_pair(s, eps, rng);
        RankConstraint rank{2};
        return eof_scb(pr.rho, pr.sigma, 2, 2, &rank, nullptr, fidelity(pr.rho, pr.sigma),
                       EofDistance::Fidelity, wootters_eof(pr.rho), wootters_eof(pr.sigma));
      }};
  reg["prop10.eof.energy"] = {
      {SampleKind::Generic, SampleKind::CommutingPair}, 1e-9,
      [two_qubit_pair](const SampleSpec& s, double eps, CounterRng& rng) {
        StatePair pr = two_qubit_pair(s, eps, rng);
        const HamiltonianSpectrum spec = spec_for(s, 2);
        EnergyConstraint en{&spec, s.E};
        return eof_scb(pr.rho, pr.sigma, 2, 2, nullptr, &en, eps,
                       EofDistance::TraceDistance, wootters_eof(pr.rho),
                       wootters_eof(pr.sigma));
      }};
  reg["prop10.eof.energy.fidelity"] = {
      {SampleKind::Generic, SampleKind::CommutingPair}, 1e-9,
      [two_qubit_pair](const SampleSpec& s, double eps, CounterRng& rng) {
        StatePair pr = two_qubit_pair(s, eps, rng);
        const HamiltonianSpectrum spec = spec_for(s, 2);
        EnergyConstraint en{&spec, s.E};
        return eof_scb(pr.rho, pr.sigma, 2, 2, nullptr, &en, fidelity(pr.rho, pr.sigma),
                       EofDistance::Fidelity, wootters_eof(pr.rho), wootters_eof(pr.sigma));
      }};

  return reg;
}

}  // namespace campaign_detail

inline const std::map<std::string, BoundDescriptor>& bound_registry() {
  static const std::map<std::string, BoundDescriptor> reg =
      campaign_detail::build_registry();
  return reg;
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

namespace campaign_detail {

inline int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QCB_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

inline double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace campaign_detail

inline CampaignReport run_campaign(const CampaignConfig& cfg) {
  const auto& reg = bound_registry();
  const auto it = reg.find(cfg.bound_id);
  if (it == reg.end()) {
    std::string known;
    for (const auto& [id, _] : reg) known += (known.empty() ? "" : ", ") + id;
    throw ConfigurationError("unknown bound id '" + cfg.bound_id + "'; registered: " + known);
  }
  const BoundDescriptor& desc = it->second;
  if (std::find(desc.kinds.begin(), desc.kinds.end(), cfg.sample.kind) ==
      desc.kinds.end()) {
    std::string compat;
    for (SampleKind k : desc.kinds) compat += std::string(compat.empty() ? "" : ", ") +
                                              to_string(k);
    throw ConfigurationError("sampler kind '" + std::string(to_string(cfg.sample.kind)) +
                             "' incompatible with bound '" + cfg.bound_id +
                             "'; compatible kinds: " + compat);
  }
  if (cfg.samples < 1) throw ValidationError("run_campaign: samples must be >= 1");
  for (double e : cfg.epsilon_grid)
    if (e <= 0.0 || e > 1.0)
      throw ValidationError("run_campaign: epsilon grid entries must be in (0,1]");
  const double tol = cfg.tolerance >= 0.0 ? cfg.tolerance : desc.default_tol;

  const auto t0 = std::chrono::steady_clock::now();
  CampaignReport report;
  report.bound_id = cfg.bound_id;
  report.seed = cfg.seed;
  report.version = kVersion;

  const int workers = campaign_detail::worker_count(cfg.workers);
  const CounterRng root(cfg.seed);
  for (std::size_t ei = 0; ei < cfg.epsilon_grid.size(); ++ei) {
    const double eps = cfg.epsilon_grid[ei];
    std::vector<double> slacks(static_cast<std::size_t>(cfg.samples));
    std::vector<double> bounds(static_cast<std::size_t>(cfg.samples));
    std::vector<double> gaps(static_cast<std::size_t>(cfg.samples));
    std::vector<std::string> errors(static_cast<std::size_t>(workers));
    auto work = [&](int w) {
      try {
        for (int i = w; i < cfg.samples; i += workers) {
          CounterRng rng = root.split((static_cast<std::uint64_t>(ei) << 32) |
                                      static_cast<std::uint64_t>(i));
          const BoundEvaluation ev = desc.eval(cfg.sample, eps, rng);
          const std::size_t k = static_cast<std::size_t>(i);
          slacks[k] = ev.slack;
          bounds[k] = ev.bound_value;
          gaps[k] = ev.measured_gap;
        }
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(w)] = e.what();
      }
    };
    if (workers > 1) {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (std::thread& th : pool) th.join();
    } else {
      work(0);
    }
    for (const std::string& e : errors)
      if (!e.empty()) throw GenerationError("campaign cell (eps=" + format_double(eps) +
                                            ") failed: " + e);
    CampaignRow row;
    row.epsilon = eps;
    row.samples = cfg.samples;
    std::vector<double> tightness;
    tightness.reserve(slacks.size());
    row.min_slack = slacks.front();
    for (std::size_t i = 0; i < slacks.size(); ++i) {
      const double scale = std::max(1.0, std::abs(bounds[i]));
      if (slacks[i] < -tol * scale) ++row.violations;
      row.min_slack = std::min(row.min_slack, slacks[i]);
      tightness.push_back(bounds[i] > 1e-300 ? gaps[i] / bounds[i] : 0.0);
    }
    row.median_slack = campaign_detail::percentile(slacks, 0.5);
    row.p95_tightness = campaign_detail::percentile(tightness, 0.95);
    report.rows.push_back(row);
  }

  const auto t1 = std::chrono::steady_clock::now();
  report.runtime_ms =
      std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() / 1000.0;
  {
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%FT%TZ", &tm_utc);
    report.timestamp = buf;
  }
  // digest over the canonical content; volatile fields excluded
  detail::Digest dg;
  dg.add(static_cast<double>(report.seed));
  for (char c : report.bound_id) dg.add(static_cast<double>(c));
  for (char c : report.version) dg.add(static_cast<double>(c));
  for (const CampaignRow& r : report.rows) {
    dg.add(r.epsilon);
    dg.add(static_cast<double>(r.samples));
    dg.add(static_cast<double>(r.violations));
    dg.add(r.min_slack);
    dg.add(r.median_slack);
    dg.add(r.p95_tightness);
  }
  report.digest = dg.value();
  return report;
}

inline int total_violations(const CampaignReport& report) {
  int v = 0;
  for (const CampaignRow& r : report.rows) v += r.violations;
  return v;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

inline Json report_to_json(const CampaignReport& r) {
  Json rows = Json::array();
  for (const CampaignRow& row : r.rows) {
    rows.push_back({{"epsilon", row.epsilon},
                    {"samples", row.samples},
                    {"violations", row.violations},
                    {"min_slack", row.min_slack},
                    {"median_slack", row.median_slack},
                    {"p95_tightness", row.p95_tightness}});
  }
  return Json{{"bound_id", r.bound_id},
              {"rows", rows},
              {"meta",
               {{"seed", r.seed},
                {"version", r.version},
                {"digest", r.digest},
                {"runtime_ms", r.runtime_ms},
                {"timestamp", r.timestamp}}}};
}

inline std::string report_to_csv(const CampaignReport& r) {
  std::string out = "epsilon,samples,violations,min_slack,median_slack,p95_tightness\n";
  for (const CampaignRow& row : r.rows) {
    out += format_double(row.epsilon) + ',' + std::to_string(row.samples) + ',' +
           std::to_string(row.violations) + ',' + format_double(row.min_slack) + ',' +
           format_double(row.median_slack) + ',' + format_double(row.p95_tightness) + '\n';
  }
  return out;
}

inline void emit_report(const CampaignReport& r, const std::string& path,
                        const std::string& format) {
  if (format == "json") {
    save_json(report_to_json(r), path);
  } else if (format == "csv") {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << report_to_csv(r);
    if (!out) throw IoError("write failed: " + path);
  } else {
    throw ValidationError("emit_report: unknown format '" + format + "'");
  }
}

inline CampaignConfig campaign_config_from_json(const Json& j) {
  CampaignConfig cfg;
  cfg.bound_id = j.at("bound_id").get<std::string>();
  if (j.contains("sample")) cfg.sample = sample_spec_from_json(j.at("sample"));
  cfg.samples = j.value("samples", cfg.samples);
  if (j.contains("epsilon_grid"))
    cfg.epsilon_grid = j.at("epsilon_grid").get<std::vector<double>>();
  cfg.tolerance = j.value("tolerance", cfg.tolerance);
  cfg.out = j.value("out", cfg.out);
  cfg.format = j.value("format", cfg.format);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.workers = j.value("workers", cfg.workers);
  return cfg;
}

}  // namespace qcb

#endif  // QCB_CAMPAIGN_HPP
