#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclespec/circulant_rings.hpp"
#include "cyclespec/ensembles.hpp"
#include "cyclespec/spectra.hpp"
#include "cyclespec/tau_ellipse.hpp"

namespace cyclespec {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // IO and other runtime failures
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitCapacity = 4,
};
int exit_code_for(const std::exception& e);

// Record of one command invocation. Everything except wall_clock_seconds is
// a deterministic function of the command line.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t master_seed = 0;
  std::string tool_version = kToolVersion;
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0.0;

  nlohmann::json to_json() const;
  void write(const std::filesystem::path& path) const;
};

// ---- generate -------------------------------------------------------------

enum class GraphKind { motif, circulant };

struct GenerateOptions {
  GraphKind kind = GraphKind::motif;
  MotifEnsembleConfig motif;
  CirculantConfig circulant;
  std::filesystem::path out;  // edge-list path; manifest goes to <out>.manifest.json
};

RunManifest cmd_generate(const GenerateOptions& opts);

// ---- analyze --------------------------------------------------------------

struct AnalyzeOptions {
  std::filesystem::path graph;
  std::size_t l_max = 8;
  std::filesystem::path out_dir;
};

// Writes spectrum.csv, rho.csv, summary.json and manifest.json into out_dir.
RunManifest cmd_analyze(const AnalyzeOptions& opts);

// ---- tau-ellipse figure ---------------------------------------------------

struct MotifRunOptions {
  MotifEnsembleConfig motif;
  double slack = 0.02;
  std::size_t bootstrap_resamples = 200;
};

struct MotifRunResult {
  DirectedWeightedGraph graph;
  CycleWeightSeries rho;  // power-trace series up to max(tau, 8)
  Spectrum spectrum;
  TauEllipseFit fit;
  double containment = 0.0;
  double distance_symmetric = 0.0;  // rotation by 2 pi / tau
  double distance_half_step = 0.0;  // rotation by pi / tau
  double bootstrap_threshold = 0.0;
};

// Generates one motif graph and evaluates the tau-ellipse and rotational
// symmetry statistics on its spectrum. The bootstrap seed is derived from
// the ensemble seed.
MotifRunResult run_motif_experiment(const MotifRunOptions& opts);

struct Fig2Options {
  MotifRunOptions run;
  std::size_t boundary_samples = 720;
  std::filesystem::path out_dir;
};

struct Fig2Output {
  RunManifest manifest;
  MotifRunResult result;
};

// SVG scatter with the fitted boundary plus spectrum.csv, rho.csv,
// boundary.csv, fit.json, summary.json and manifest.json.
Fig2Output cmd_fig2(const Fig2Options& opts);

// ---- circulant figures ----------------------------------------------------

struct CirculantTrial {
  std::size_t degree = 0;
  std::uint64_t seed = 0;
  double spectral_radius = 0.0;
  RingProfile rings;
};

struct CirculantSweep {
  std::size_t n_nodes = 0;
  std::vector<std::size_t> degrees;
  std::size_t seeds = 0;
  std::vector<CirculantTrial> trials;       // degree-major, seed-minor
  std::vector<Spectrum> first_seed_spectra;  // one per degree

  std::vector<const CirculantTrial*> trials_for(std::size_t degree) const;
  double median_spectral_radius(std::size_t degree) const;
};

struct CirculantSweepOptions {
  std::vector<std::size_t> degrees;
  std::size_t n_nodes = 2000;
  std::size_t seeds = 10;
  std::uint64_t master_seed = 0;
  double eps_real = 0.0;  // <= 0: 1e-3 * sqrt(d)
  double min_gap = 0.08;
};

// Seed of trial s at degree d is derive_seed(derive_seed(master, d), s).
// Trials run on a worker pool; results are stored in fixed order.
CirculantSweep sweep_circulants(const CirculantSweepOptions& opts);

struct Fig34Options {
  CirculantSweepOptions sweep;
  std::filesystem::path out_dir;
};

struct Fig34Output {
  RunManifest manifest;
  CirculantSweep sweep;
};

// Per-degree spectrum SVG/CSV, ring JSON and "k,detected,predicted" CSV for
// the first seed, a combined radii chart, summary.json and manifest.json.
Fig34Output cmd_fig3_fig4(const Fig34Options& opts);

// ---- walk counts ----------------------------------------------------------

struct WalkCountOptions {
  std::size_t n_nodes = 0;
  std::size_t degree = 1;
  std::size_t l_max = 10;
  std::filesystem::path out;  // CSV "L,count,variance"
};

RunManifest cmd_walk_counts(const WalkCountOptions& opts);

// ---- serialization helpers shared with tests ------------------------------

std::string format_rho_csv(const CycleWeightSeries& s);
std::string format_walk_counts_csv(const ClosedWalkCounts& c);
std::string format_boundary_csv(const TauEllipse& e, std::size_t n_samples);
nlohmann::json fit_to_json(const TauEllipseFit& fit);
nlohmann::json ring_profile_to_json(const RingProfile& p);
std::string format_ring_comparison_csv(const RingProfile& p, std::size_t degree);

}  // namespace cyclespec
