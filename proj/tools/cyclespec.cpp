// Command-line entry point: graph generation, spectral analysis and figure
// reproduction for cycle-structured random graphs.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cyclespec/commands.hpp"
#include "cyclespec/errors.hpp"

namespace {

using namespace cyclespec;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct MotifFlags {
  std::string config;
  std::size_t nodes = 2000;
  double degree = 20.0;
  std::size_t tau = 3;
  double fraction = 0.5;
  int sign = 1;
  std::uint64_t seed = 1;
};

void add_motif_flags(CLI::App* cmd, MotifFlags& f) {
  cmd->add_option("--config", f.config, "JSON ensemble config (flags given explicitly override it)");
  cmd->add_option("--nodes", f.nodes, "number of nodes N");
  cmd->add_option("--degree", f.degree, "target mean out-degree");
  cmd->add_option("--tau", f.tau, "planted cycle length");
  cmd->add_option("--motif-fraction", f.fraction, "fraction of edges inside planted cycles");
  cmd->add_option("--motif-sign", f.sign, "sign of every planted cycle's weight product (+1/-1)");
  cmd->add_option("--seed", f.seed, "RNG seed");
}

MotifEnsembleConfig resolve_motif(const CLI::App* cmd, const MotifFlags& f) {
  MotifEnsembleConfig cfg{f.nodes, f.degree, f.tau, f.fraction, f.sign, f.seed};
  if (f.config.empty()) return cfg;
  auto from_file = motif_config_from_json(slurp(f.config));
  if (cmd->count("--nodes")) from_file.n_nodes = f.nodes;
  if (cmd->count("--degree")) from_file.avg_degree = f.degree;
  if (cmd->count("--tau")) from_file.tau = f.tau;
  if (cmd->count("--motif-fraction")) from_file.motif_fraction = f.fraction;
  if (cmd->count("--motif-sign")) from_file.motif_sign = f.sign;
  if (cmd->count("--seed")) from_file.seed = f.seed;
  return from_file;
}

void print_manifest_outputs(const RunManifest& m) {
  for (const auto& p : m.outputs) std::cout << "wrote " << p << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclespec: spectra of random graphs with cycles"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a random graph as an edge-list TSV");
  std::string kind;
  MotifFlags gen_motif;
  std::string gen_out;
  gen->add_option("kind", kind, "motif | circulant")->required()->check(CLI::IsMember({"motif", "circulant"}));
  add_motif_flags(gen, gen_motif);
  gen->add_option("--out", gen_out, "output edge-list path")->required();

  // analyze
  auto* analyze = app.add_subcommand("analyze", "rho series, spectrum and summary of an edge list");
  AnalyzeOptions analyze_opts;
  std::string analyze_graph, analyze_out;
  analyze->add_option("graph", analyze_graph, "edge-list TSV")->required();
  analyze->add_option("--lmax", analyze_opts.l_max, "largest walk length");
  analyze->add_option("--out", analyze_out, "output directory")->required();

  // fig2
  auto* fig2 = app.add_subcommand("fig2", "spectrum of a motif graph with its fitted tau-ellipse");
  MotifFlags fig2_motif;
  double slack = 0.02;
  std::string fig2_out;
  add_motif_flags(fig2, fig2_motif);
  fig2->add_option("--slack", slack, "relative slack on the focal distance sum");
  fig2->add_option("--out", fig2_out, "output directory")->required();

  // fig3-fig4
  auto* fig34 = app.add_subcommand("fig3-fig4", "ring structure of signed directed circulants");
  CirculantSweepOptions sweep;
  std::string fig34_out;
  sweep.degrees = {1, 2, 3, 4, 5, 6};
  sweep.master_seed = 1;
  fig34->add_option("--degrees", sweep.degrees, "circulant degrees")->delimiter(',');
  fig34->add_option("--nodes", sweep.n_nodes, "number of nodes N");
  fig34->add_option("--seeds", sweep.seeds, "random sign draws per degree");
  fig34->add_option("--seed", sweep.master_seed, "master seed");
  fig34->add_option("--eps-real", sweep.eps_real, "real-line band half-width (default 1e-3 sqrt(d))");
  fig34->add_option("--min-gap", sweep.min_gap, "ring separation, in units of sqrt(d)");
  fig34->add_option("--out", fig34_out, "output directory")->required();

  // walks
  auto* walks = app.add_subcommand("walks", "closed-walk counts of the unweighted circulant");
  WalkCountOptions walk_opts;
  std::string walks_out;
  walks->add_option("--nodes", walk_opts.n_nodes, "number of nodes N")->required();
  walks->add_option("--degree", walk_opts.degree, "circulant degree d")->required();
  walks->add_option("--lmax", walk_opts.l_max, "largest walk length");
  walks->add_option("--out", walks_out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (gen->parsed()) {
      GenerateOptions opts;
      opts.out = gen_out;
      if (kind == "motif") {
        opts.kind = GraphKind::motif;
        opts.motif = resolve_motif(gen, gen_motif);
      } else {
        opts.kind = GraphKind::circulant;
        if (!gen_motif.config.empty()) {
          opts.circulant = circulant_config_from_json(slurp(gen_motif.config));
        } else {
          opts.circulant = {gen_motif.nodes, static_cast<std::size_t>(gen_motif.degree), gen_motif.seed};
          if (gen_motif.degree != static_cast<double>(opts.circulant.degree))
            throw ConfigError("circulant degree must be an integer");
        }
        if (gen->count("--nodes")) opts.circulant.n_nodes = gen_motif.nodes;
        if (gen->count("--degree")) opts.circulant.degree = static_cast<std::size_t>(gen_motif.degree);
        if (gen->count("--seed")) opts.circulant.seed = gen_motif.seed;
      }
      print_manifest_outputs(cmd_generate(opts));
    } else if (analyze->parsed()) {
      analyze_opts.graph = analyze_graph;
      analyze_opts.out_dir = analyze_out;
      print_manifest_outputs(cmd_analyze(analyze_opts));
    } else if (fig2->parsed()) {
      Fig2Options opts;
      opts.run.motif = resolve_motif(fig2, fig2_motif);
      opts.run.slack = slack;
      opts.out_dir = fig2_out;
      const auto out = cmd_fig2(opts);
      std::printf("tau=%zu rho_tau=%.6f alpha=%.6f beta=%.6f containment=%.4f (slack %.3g)\n",
                  opts.run.motif.tau, out.result.fit.rho_tau, out.result.fit.ellipse.alpha,
                  out.result.fit.ellipse.beta, out.result.containment, slack);
      std::printf("rotation distance: 2pi/tau %.4f, pi/tau %.4f, bootstrap 95%% %.4f\n",
                  out.result.distance_symmetric, out.result.distance_half_step,
                  out.result.bootstrap_threshold);
      print_manifest_outputs(out.manifest);
    } else if (fig34->parsed()) {
      Fig34Options opts{sweep, fig34_out};
      const auto out = cmd_fig3_fig4(opts);
      for (auto d : out.sweep.degrees) {
        std::printf("d=%zu median max|lambda|=%.4f (sqrt(d)=%.4f) rings(first seed)=%zu\n", d,
                    out.sweep.median_spectral_radius(d), max_modulus_prediction(d),
                    out.sweep.trials_for(d).front()->rings.radii.size());
      }
      print_manifest_outputs(out.manifest);
    } else if (walks->parsed()) {
      walk_opts.out = walks_out;
      print_manifest_outputs(cmd_walk_counts(walk_opts));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitOk;
}
