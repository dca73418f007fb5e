#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "isac/cli_commands.hpp"

namespace {

using isac::cli::ChannelSelection;

void add_channel_options(CLI::App& cmd, ChannelSelection& sel, bool spec_allowed = true) {
  cmd.add_option("--example", sel.example, "Built-in channel family: lemma1 or becbsc");
  if (spec_allowed)
    cmd.add_option("--spec", sel.spec_path, "Channel description file (JSON)")
        ->check(CLI::ExistingFile);
  cmd.add_option("-q,--q", sel.q, "Pr[S1 = 1]")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--alpha", sel.alpha, "Pr[S2 = 1 | S1 = 1]")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--gamma", sel.gamma, "Erasure probability of the legitimate link (becbsc)")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--beta", sel.beta, "Crossover of the eavesdropper link (becbsc)")
      ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Secrecy-distortion regions, state estimators and channel-ordering checks\n"
      "for discrete memoryless joint-sensing channels"};
  app.require_subcommand(1);

  // --- check ---------------------------------------------------------------
  isac::cli::CheckOptions check;
  CLI::App* c_check =
      app.add_subcommand("check", "Test degraded / reversely degraded / more-capable orderings");
  add_channel_options(*c_check, check.channel);
  c_check->add_option("--resolution", check.resolution,
                      "Input-grid resolution of the more-capable certificate");
  c_check->add_option("--tol", check.tol, "Verdict tolerance");
  c_check->add_option("--threads", check.threads, "Worker threads");

  // --- region --------------------------------------------------------------
  isac::cli::RegionOptions region;
  std::string bound_name = "theorem3";
  bool region_nats = false;
  CLI::App* c_region = app.add_subcommand("region", "Sweep a rate-distortion bound to CSV");
  add_channel_options(*c_region, region.channel);
  c_region->add_option("--bound", bound_name,
                       "inner-PS, outer-PS, theorem1, theorem2, inner-full, outer-full, "
                       "theorem3, theorem4, lemma1 or lemma3");
  c_region->add_option("--px-resolution", region.sweep.px_resolution,
                       "Input-pmf grid resolution");
  c_region->add_option("--r1-resolution", region.sweep.r1_resolution,
                       "R1 samples per grid cell (two-rate bounds)");
  c_region->add_option("--aux-resolution", region.sweep.aux_resolution,
                       "Grid resolution for each row of P(V|X); 1 keeps V = X");
  c_region->add_option("--v-size", region.sweep.v_size, "|V| when sweeping P(V|X); 0 -> |X|");
  c_region->add_option("--u-resolution", region.sweep.u_resolution,
                       "Grid resolution for each row of P(U|V); 1 keeps U constant");
  c_region->add_option("--u-size", region.sweep.u_size, "|U| when sweeping P(U|V)");
  c_region->add_option("--max-points", region.sweep.max_points,
                       "Refuse sweeps beyond this many grid points");
  c_region->add_option("--threads", region.sweep.threads, "Worker threads");
  c_region->add_flag("--nats", region_nats, "Report rates in nats instead of bits");
  c_region->add_option("-o,--output", region.output_path, "CSV output file (default stdout)");

  // --- figure2 -------------------------------------------------------------
  isac::cli::Figure2Options figure2;
  CLI::App* c_fig = app.add_subcommand(
      "figure2", "Joint-design curve vs. time-sharing baseline for the lemma1 family");
  c_fig->add_option("-q,--q", figure2.q, "Pr[S1 = 1]")->check(CLI::Range(0.0, 1.0));
  c_fig->add_option("--alpha", figure2.alpha, "Pr[S2 = 1 | S1 = 1]")
      ->check(CLI::Range(0.0, 1.0));
  c_fig->add_option("--resolution", figure2.resolution, "p-grid resolution of the joint curve");
  c_fig->add_option("--lambdas", figure2.lambda_count, "Time-sharing grid size");
  c_fig->add_option("-o,--output-stem", figure2.output_stem,
                    "Write <stem>_joint.csv and <stem>_separation.csv");

  // --- simulate ------------------------------------------------------------
  isac::cli::SimulateOptions sim;
  bool sim_nats = false;
  CLI::App* c_sim =
      app.add_subcommand("simulate", "Monte-Carlo check of the per-letter estimator distortions");
  add_channel_options(*c_sim, sim.channel);
  c_sim->add_option("-p,--p", sim.p, "Pr[X = 1] (binary inputs)")->check(CLI::Range(0.0, 1.0));
  c_sim->add_option("--px", sim.px, "Explicit input pmf (overrides -p)");
  c_sim->add_option("-n,--samples", sim.n, "Samples per repetition");
  c_sim->add_option("--seed", sim.seed, "Base seed of the run");
  c_sim->add_option("--repetitions", sim.repetitions, "Independent repetitions to pool");
  c_sim->add_option("--threads", sim.threads, "Worker threads");
  c_sim->add_flag("--full-observations", sim.full_observations,
                  "Estimate each state from (X, Y1, Y2) instead of (X, Yj)");
  c_sim->add_flag("--mi", sim.mutual_information,
                  "Also report plug-in vs exact I(X;Y1|S1)");
  c_sim->add_flag("--nats", sim_nats, "Report information in nats instead of bits");

  // --- export --------------------------------------------------------------
  isac::cli::ExportOptions exp;
  CLI::App* c_exp =
      app.add_subcommand("export", "Write a channel as a description file (JSON)");
  add_channel_options(*c_exp, exp.channel);
  c_exp->add_option("-o,--output", exp.output_path, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (*c_check) return isac::cli::run_check(check, std::cout, std::cerr);
  if (*c_region) {
    auto bound = isac::provenance_from_name(bound_name);
    if (!bound) {
      std::cerr << "error: unknown bound '" << bound_name << "'\n";
      return 1;
    }
    region.sweep.bound = *bound;
    region.sweep.base = region_nats ? isac::LogBase::nats : isac::LogBase::bits;
    return isac::cli::run_region(region, std::cout, std::cerr);
  }
  if (*c_fig) return isac::cli::run_figure2(figure2, std::cout, std::cerr);
  if (*c_sim) {
    sim.base = sim_nats ? isac::LogBase::nats : isac::LogBase::bits;
    return isac::cli::run_simulate(sim, std::cout, std::cerr);
  }
  if (*c_exp) return isac::cli::run_export(exp, std::cout, std::cerr);
  return 1;
}
