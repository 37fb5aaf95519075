// Command-line front end: scalar spot evaluation, Gibbs solving, single bound
// evaluations, convex-roof computation and verification campaigns.

#include <cstdio>
#include <exception>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcb/qcb.hpp"

namespace {

using namespace qcb;

int cmd_scalar(double x, const std::string& fn) {
  if (fn == "all" || fn == "h" || fn == "h_up" || fn == "eta" || fn == "eta_up") {
    const BinaryEntropyFamily f = binary_entropy_family(x);
    if (fn == "all" || fn == "h") std::printf("h(%.12g) = %s\n", x, format_double(f.h).c_str());
    if (fn == "all" || fn == "h_up")
      std::printf("h_up(%.12g) = %s\n", x, format_double(f.h_up).c_str());
    if (fn == "all" || fn == "eta")
      std::printf("eta(%.12g) = %s\n", x, format_double(f.eta).c_str());
    if (fn == "all" || fn == "eta_up")
      std::printf("eta_up(%.12g) = %s\n", x, format_double(f.eta_up).c_str());
  }
  if (fn == "all" || fn == "g")
    std::printf("g(%.12g) = %s\n", x, format_double(g_function(x)).c_str());
  return 0;
}

int cmd_gibbs_solve(const std::string& spectrum_path, double energy) {
  const HamiltonianSpectrum spec = load_spectrum(spectrum_path);
  const GibbsSolution sol = solve_beta(spec, energy);
  std::printf("beta      = %s\n", format_double(sol.beta).c_str());
  std::printf("Z         = %s\n", format_double(sol.Z).c_str());
  std::printf("F         = %s\n", format_double(sol.F).c_str());
  std::printf("tail_mass = %s\n", format_double(sol.tail_mass).c_str());
  return 0;
}

struct BoundsEvalArgs {
  std::string bound_id;
  std::string rho_path, sigma_path, omega_path;
  std::string rho_qc_path, sigma_qc_path;
  std::string spectrum_path;
  double epsilon = 0.1;
  double a = 2.0;
  double c = 0.5;
  double beta = kLn2;
  double E = -1.0;
  int m = 1;
  int dA = 0, dB = 0;
  int rank_d = 0;
};

void print_eval(const BoundEvaluation& ev) {
  Json j = {{"bound_id", ev.bound_id},
            {"epsilon", ev.epsilon},
            {"bound_value", ev.bound_value},
            {"measured_gap", ev.measured_gap},
            {"slack", ev.slack},
            {"inputs_digest", ev.inputs_digest},
            {"pass", ev.pass()}};
  std::printf("%s\n", j.dump(2).c_str());
}

int cmd_bounds_eval(const BoundsEvalArgs& args) {
  const std::string& id = args.bound_id;
  auto need = [&](const std::string& path, const char* what) -> std::string {
    if (path.empty())
      throw ValidationError("bound '" + id + "' requires --" + what);
    return path;
  };
  auto spec = [&](int min_len) {
    return args.spectrum_path.empty()
               ? HamiltonianSpectrum::oscillator(
                     std::max<std::size_t>(static_cast<std::size_t>(min_len), 64))
               : load_spectrum(args.spectrum_path, static_cast<std::size_t>(min_len));
  };

  if (id == "prop7.qce.qc.rank" || id == "prop7.qce.qc.energy" ||
      id == "prop7.qce.qc.energy.refined" || id == "prop8.qce.qc.scb" ||
      id == "prop9.qce.qc.llb") {
    const QCState rho = load_qc_state(need(args.rho_qc_path, "rho-qc"));
    const QCState sigma = load_qc_state(need(args.sigma_qc_path, "sigma-qc"));
    if (id == "prop8.qce.qc.scb")
      print_eval(qce_qc_truncation_and_llb(rho, sigma, args.epsilon).scb);
    else if (id == "prop9.qce.qc.llb")
      print_eval(qce_qc_truncation_and_llb(rho, sigma, args.epsilon).llb);
    else if (id == "prop7.qce.qc.rank") {
      RankConstraint rank{args.rank_d > 0 ? args.rank_d
                                          : numerical_rank(rho.marginal_A())};
      print_eval(qce_qc_scb(rho, sigma, &rank, nullptr, args.epsilon).loose);
    } else {
      const HamiltonianSpectrum sp = spec(rho.dimA());
      EnergyConstraint en{&sp, args.E};
      const QceQcScb ev = qce_qc_scb(rho, sigma, nullptr, &en, args.epsilon);
      print_eval(id == "prop7.qce.qc.energy" ? ev.loose : ev.refined);
    }
    return 0;
  }

  const DensityMatrix rho = load_density(need(args.rho_path, "rho"));
  const DensityMatrix sigma = load_density(need(args.sigma_path, "sigma"));

  if (id == "mirsky") {
    print_eval(mirsky_check(rho, sigma));
  } else if (id == "eq38.split") {
    print_eval(entropy_split_check(rho, sigma, true));
  } else if (id == "eq38.split.noncommuting") {
    print_eval(entropy_split_check(rho, sigma, false));
  } else if (id == "thm3a.rank") {
    print_eval(entropy_scb_rank(sorted_spectrum(rho), sorted_spectrum(sigma), args.m,
                                args.epsilon));
  } else if (id == "thm3b.energy" || id == "thm3b.energy.remark6") {
    const EntropyEnergyScb ev =
        entropy_scb_energy(rho, sigma, spec(rho.dim()), args.m, args.epsilon);
    print_eval(id == "thm3b.energy" ? ev.main : ev.simple);
  } else if (id == "prop1.trunc") {
    print_eval(entropy_truncation_scb(rho, sigma, args.epsilon));
  } else if (id == "prop2.llb") {
    print_eval(entropy_llb(rho, sigma, args.epsilon));
  } else if (id == "prop3.energy.refined" || id == "prop3.energy.simple") {
    const EnergyScb ev = energy_scb(rho, sigma, spec(rho.dim()), args.a, args.epsilon);
    print_eval(id == "prop3.energy.refined" ? ev.refined : ev.simple);
  } else if (id == "cor3.energy") {
    print_eval(energy_cb(rho, sigma, spec(rho.dim()), args.a, args.epsilon, args.E));
  } else if (id == "prop4.re") {
    print_eval(re_faithful_cb(rho, sigma, load_density(need(args.omega_path, "omega")),
                              args.c, args.a, args.epsilon));
  } else if (id == "cor4.re.gibbs" || id == "cor4.re.gibbs.remark8") {
    const ReGibbsCb ev =
        re_gibbs_cb(rho, sigma, spec(rho.dim()), args.beta, args.a, args.epsilon, args.E);
    print_eval(id == "cor4.re.gibbs" ? ev.main : ev.refined);
  } else if (id == "prop5.re.dominated" || id == "prop5.re.dominated.exact" ||
             id == "prop5.re.dominated.remark9" || id == "cor5.re.dominated.twosided") {
    const DensityMatrix omega = load_density(need(args.omega_path, "omega"));
    const BoundMode mode = id == "cor5.re.dominated.twosided" ? BoundMode::TwoSided
                                                              : BoundMode::OneSided;
    HVariant variant = HVariant::HUp;
    if (id == "prop5.re.dominated.exact") variant = HVariant::Exact;
    if (id == "prop5.re.dominated.remark9") variant = HVariant::EnvelopeSup;
    print_eval(re_dominated_scb(rho, sigma, omega, args.c, args.epsilon, mode, variant));
  } else if (id == "prop6.qce.rank" || id == "prop6.qce.energy" ||
             id == "winter.qce.dominance") {
    if (args.dA < 2 || args.dB < 2)
      throw ValidationError("bound '" + id + "' requires --dA and --dB");
    if (id == "prop6.qce.energy") {
      const HamiltonianSpectrum sp = spec(args.dA);
      EnergyConstraint en{&sp, args.E};
      print_eval(
          qce_commuting_cb(rho, sigma, args.dA, args.dB, nullptr, &en, args.epsilon)
              .bound);
    } else {
      RankConstraint rank{args.rank_d > 0 ? args.rank_d : args.dA};
      const QceCommutingCb ev =
          qce_commuting_cb(rho, sigma, args.dA, args.dB, &rank, nullptr, args.epsilon);
      print_eval(id == "prop6.qce.rank" ? ev.bound : ev.winter_dominance.front());
    }
  } else if (id == "prop10.eof.rank" || id == "prop10.eof.energy" ||
             id == "prop10.eof.rank.fidelity" || id == "prop10.eof.energy.fidelity") {
    if (args.dA < 2 || args.dB < 2)
      throw ValidationError("bound '" + id + "' requires --dA and --dB");
    const bool fid = id.find("fidelity") != std::string::npos;
    const double arg = fid ? fidelity(rho, sigma) : args.epsilon;
    const EofDistance kind = fid ? EofDistance::Fidelity : EofDistance::TraceDistance;
    if (id.find("energy") != std::string::npos) {
      const HamiltonianSpectrum sp = spec(args.dA);
      EnergyConstraint en{&sp, args.E};
      print_eval(eof_scb(rho, sigma, args.dA, args.dB, nullptr, &en, arg, kind));
    } else {
      RankConstraint rank{args.rank_d > 0 ? args.rank_d : args.dA};
      print_eval(eof_scb(rho, sigma, args.dA, args.dB, &rank, nullptr, arg, kind));
    }
  } else {
    throw ConfigurationError("bounds eval: unsupported bound id '" + id +
                             "' (campaign-only ids run through 'verify run')");
  }
  return 0;
}

int cmd_eof_compute(const std::string& state_path, int restarts, int ensemble_size,
                    std::uint64_t seed, int dA, int dB) {
  const DensityMatrix rho = load_density(state_path);
  if (dA * dB != rho.dim())
    throw ValidationError("eof compute: dA*dB must equal the state dimension " +
                          std::to_string(rho.dim()));
  const ConvexRoofResult res = convex_roof_eof(rho, dA, dB, ensemble_size, restarts, seed);
  std::printf("value         = %s\n", format_double(res.value).c_str());
  if (dA == 2 && dB == 2)
    std::printf("wootters      = %s\n", format_double(wootters_eof(rho)).c_str());
  std::printf("ensemble_size = %d\n", res.ensemble.size());
  std::printf("converged     = %s\n", res.converged ? "true" : "false");
  double worst = res.restart_values.front(), best = res.restart_values.front(), sum = 0.0;
  for (double v : res.restart_values) {
    worst = std::max(worst, v);
    best = std::min(best, v);
    sum += v;
  }
  std::printf("restarts      = %zu (best %s, mean %s, worst %s)\n",
              res.restart_values.size(), format_double(best).c_str(),
              format_double(sum / static_cast<double>(res.restart_values.size())).c_str(),
              format_double(worst).c_str());
  return 0;
}

int cmd_verify_run(const std::string& config_path, std::uint64_t seed, bool seed_set,
                   int samples, const std::string& out, const std::string& format,
                   double tolerance, int workers) {
  const Json root = load_json(config_path);
  std::vector<Json> campaign_jsons;
  if (root.contains("campaigns"))
    for (const Json& j : root.at("campaigns")) campaign_jsons.push_back(j);
  else
    campaign_jsons.push_back(root);
  int violations = 0;
  for (const Json& j : campaign_jsons) {
    CampaignConfig cfg = campaign_config_from_json(j);
    if (seed_set) cfg.seed = seed;
    if (samples > 0) cfg.samples = samples;
    if (!out.empty()) cfg.out = out;
    if (!format.empty()) cfg.format = format;
    if (tolerance >= 0.0) cfg.tolerance = tolerance;
    if (workers > 0) cfg.workers = workers;
    const CampaignReport report = run_campaign(cfg);
    violations += total_violations(report);
    std::printf("%-32s seed=%llu digest=%llu violations=%d runtime=%.1fms\n",
                report.bound_id.c_str(),
                static_cast<unsigned long long>(report.seed),
                static_cast<unsigned long long>(report.digest),
                total_violations(report), report.runtime_ms);
    for (const CampaignRow& row : report.rows)
      std::printf("  eps=%-8g samples=%-6d violations=%-4d min_slack=%-13.6g "
                  "median_slack=%-13.6g p95_tightness=%.6g\n",
                  row.epsilon, row.samples, row.violations, row.min_slack,
                  row.median_slack, row.p95_tightness);
    if (!cfg.out.empty()) emit_report(report, cfg.out, cfg.format);
  }
  return violations > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy continuity bounds: evaluators, thermal solvers and "
               "verification campaigns"};
  app.require_subcommand(1);

  // scalar
  double scalar_x = 0.0;
  std::string scalar_fn = "all";
  CLI::App* scalar = app.add_subcommand("scalar", "evaluate the scalar entropy kit");
  scalar->add_option("--x", scalar_x, "argument")->required();
  scalar->add_option("--fn", scalar_fn, "h|h_up|eta|eta_up|g|all");

  // gibbs solve
  CLI::App* gibbs = app.add_subcommand("gibbs", "Gibbs-state thermodynamics");
  CLI::App* gibbs_solve = gibbs->add_subcommand("solve", "solve the mean-energy equation");
  std::string gibbs_spectrum;
  double gibbs_energy = 1.0;
  gibbs_solve->add_option("--spectrum", gibbs_spectrum, "spectrum json file")->required();
  gibbs_solve->add_option("--energy", gibbs_energy, "target mean energy")->required();

  // bounds eval
  CLI::App* bounds = app.add_subcommand("bounds", "bound evaluators");
  CLI::App* bounds_eval = bounds->add_subcommand("eval", "evaluate one bound on files");
  BoundsEvalArgs beargs;
  bounds_eval->add_option("--bound", beargs.bound_id, "bound identifier")->required();
  bounds_eval->add_option("--rho", beargs.rho_path, "first state (matrix json)");
  bounds_eval->add_option("--sigma", beargs.sigma_path, "second state (matrix json)");
  bounds_eval->add_option("--omega", beargs.omega_path, "reference state (matrix json)");
  bounds_eval->add_option("--rho-qc", beargs.rho_qc_path, "first q-c state (json)");
  bounds_eval->add_option("--sigma-qc", beargs.sigma_qc_path, "second q-c state (json)");
  bounds_eval->add_option("--spectrum", beargs.spectrum_path, "Hamiltonian spectrum json");
  bounds_eval->add_option("--epsilon", beargs.epsilon, "trace-distance radius");
  bounds_eval->add_option("--a", beargs.a, "moment exponent");
  bounds_eval->add_option("--c", beargs.c, "domination constant");
  bounds_eval->add_option("--beta", beargs.beta, "inverse temperature of the reference");
  bounds_eval->add_option("--E", beargs.E, "energy budget (negative: measured)");
  bounds_eval->add_option("--m", beargs.m, "majorization prefix length");
  bounds_eval->add_option("--dA", beargs.dA, "subsystem A dimension");
  bounds_eval->add_option("--dB", beargs.dB, "subsystem B dimension");
  bounds_eval->add_option("--rank", beargs.rank_d, "rank constraint");

  // eof compute
  CLI::App* eof = app.add_subcommand("eof", "entanglement of formation");
  CLI::App* eof_compute = eof->add_subcommand("compute", "discrete convex roof");
  std::string eof_state;
  int eof_restarts = 32, eof_K = 0, eof_dA = 2, eof_dB = 2;
  std::uint64_t eof_seed = 0;
  eof_compute->add_option("--state", eof_state, "state file (matrix json)")->required();
  eof_compute->add_option("--restarts", eof_restarts, "optimizer restarts");
  eof_compute->add_option("--ensemble-size", eof_K, "ensemble size (0 = automatic)");
  eof_compute->add_option("--seed", eof_seed, "seed");
  eof_compute->add_option("--dA", eof_dA, "subsystem A dimension");
  eof_compute->add_option("--dB", eof_dB, "subsystem B dimension");

  // verify run
  CLI::App* verify = app.add_subcommand("verify", "verification campaigns");
  CLI::App* verify_run = verify->add_subcommand("run", "run campaigns from a config");
  std::string v_config, v_out, v_format;
  std::uint64_t v_seed = 0;
  int v_samples = 0, v_workers = 0;
  double v_tol = -1.0;
  verify_run->add_option("--config", v_config, "campaign config json")->required();
  CLI::Option* seed_opt = verify_run->add_option("--seed", v_seed, "seed override");
  verify_run->add_option("--samples", v_samples, "samples override");
  verify_run->add_option("--out", v_out, "report output path override");
  verify_run->add_option("--format", v_format, "json|csv");
  verify_run->add_option("--tolerance", v_tol, "violation tolerance override");
  verify_run->add_option("--workers", v_workers,
                         "worker threads (default: QCB_WORKERS or hardware)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scalar->parsed()) return cmd_scalar(scalar_x, scalar_fn);
    if (gibbs->parsed() && gibbs_solve->parsed())
      return cmd_gibbs_solve(gibbs_spectrum, gibbs_energy);
    if (bounds->parsed() && bounds_eval->parsed()) return cmd_bounds_eval(beargs);
    if (eof->parsed() && eof_compute->parsed())
      return cmd_eof_compute(eof_state, eof_restarts, eof_K, eof_seed, eof_dA, eof_dB);
    if (verify->parsed() && verify_run->parsed())
      return cmd_verify_run(v_config, v_seed, seed_opt->count() > 0, v_samples, v_out,
                            v_format, v_tol, v_workers);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  std::fprintf(stderr, "error: no subcommand executed\n");
  return 2;
}
