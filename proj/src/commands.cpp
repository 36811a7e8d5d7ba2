#include "cyclespec/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "cyclespec/errors.hpp"
#include "cyclespec/parallel.hpp"
#include "cyclespec/rng.hpp"
#include "cyclespec/svg.hpp"

namespace cyclespec {

namespace fs = std::filesystem;
using nlohmann::json;
using std::numbers::pi;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ContractError*>(&e) ||
      dynamic_cast<const ParseError*>(&e) || dynamic_cast<const RangeError*>(&e))
    return kExitConfig;
  if (dynamic_cast<const NumericalError*>(&e) || dynamic_cast<const FitError*>(&e) ||
      dynamic_cast<const GenerationError*>(&e))
    return kExitNumerical;
  if (dynamic_cast<const CapacityError*>(&e)) return kExitCapacity;
  return kExitFailure;
}

json RunManifest::to_json() const {
  return json{{"command", command},
              {"config", config},
              {"master_seed", master_seed},
              {"tool_version", tool_version},
              {"outputs", outputs},
              {"wall_clock_seconds", wall_clock_seconds}};
}

void RunManifest::write(const fs::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
}

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

fs::path sidecar_manifest(const fs::path& out) {
  fs::path p = out;
  p += ".manifest.json";
  return p;
}

json motif_json(const MotifEnsembleConfig& c) { return json::parse(to_json(c)); }
json circulant_json(const CirculantConfig& c) { return json::parse(to_json(c)); }

std::string complex_plane_svg(const Spectrum& s, const std::string& title,
                              std::span<const Complex> boundary,
                              std::span<const double> circle_radii) {
  const double extent = 1.1 * std::max(s.spectral_radius(), 1e-9);
  SvgPlot plot(-extent, extent, -extent, extent);
  plot.title(title);
  plot.axes("Re", "Im");
  plot.points(s.eigenvalues, "#1f5fbf", 1.6);
  int row = 0;
  plot.legend("eigenvalues", "#1f5fbf", row++);
  if (!boundary.empty()) {
    plot.polyline(boundary, "#d62728", 1.6, true);
    plot.legend("tau-ellipse boundary", "#d62728", row++);
  }
  for (double r : circle_radii) {
    std::vector<Complex> circle;
    for (int j = 0; j < 360; ++j) circle.push_back(std::polar(r, 2.0 * pi * j / 360.0));
    plot.polyline(circle, "#d62728", 0.8, true);
  }
  if (!circle_radii.empty()) plot.legend("predicted radii", "#d62728", row++);
  return plot.str();
}

}  // namespace

std::string format_rho_csv(const CycleWeightSeries& s) {
  std::string out = "L,rho\n";
  for (std::size_t l = 1; l <= s.max_length(); ++l)
    out += std::to_string(l) + "," + g17(s.at(l)) + "\n";
  return out;
}

std::string format_walk_counts_csv(const ClosedWalkCounts& c) {
  std::string out = "L,count,variance\n";
  for (std::size_t l = 1; l <= c.counts.size(); ++l)
    out += std::to_string(l) + "," + c.counts[l - 1].str() + "," + g17(c.variance_estimate[l - 1]) + "\n";
  return out;
}

std::string format_boundary_csv(const TauEllipse& e, std::size_t n_samples) {
  std::string out = "theta,re,im\n";
  const auto pts = boundary_points(e, n_samples);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const double theta = 2.0 * pi * static_cast<double>(j) / static_cast<double>(n_samples);
    out += g17(theta) + "," + g17(pts[j].real()) + "," + g17(pts[j].imag()) + "\n";
  }
  return out;
}

json fit_to_json(const TauEllipseFit& fit) {
  return json{{"tau", fit.ellipse.tau},
              {"alpha", fit.ellipse.alpha},
              {"beta", fit.ellipse.beta},
              {"phase_offset", fit.ellipse.phase_offset},
              {"rho_tau", fit.rho_tau},
              {"alpha_roots", fit.alpha_roots}};
}

json ring_profile_to_json(const RingProfile& p) {
  return json{{"radii", p.radii},
              {"ring_counts", p.ring_counts},
              {"real_line_count", p.real_line_count},
              {"non_ring_count", p.non_ring_count},
              {"gaps", p.gaps},
              {"interior_is_non_ring", p.interior_is_non_ring},
              {"empty", p.empty},
              {"note", p.note}};
}

std::string format_ring_comparison_csv(const RingProfile& p, std::size_t degree) {
  const auto predicted = predicted_radii(degree);
  std::string out = "k,detected,predicted\n";
  const std::size_t rows = std::max(predicted.size(), p.radii.size());
  // Rows align detected and predicted rings from the outermost inwards.
  const std::size_t skip_detected = rows - p.radii.size();
  const std::size_t skip_predicted = rows - predicted.size();
  for (std::size_t row = 0; row < rows; ++row) {
    out += std::to_string(row + 1) + ",";
    if (row >= skip_detected) out += g17(p.radii[row - skip_detected]);
    out += ",";
    if (row >= skip_predicted) out += g17(predicted[row - skip_predicted]);
    out += "\n";
  }
  return out;
}

RunManifest cmd_generate(const GenerateOptions& opts) {
  Stopwatch clock;
  RunManifest m;
  m.command = "generate";
  DirectedWeightedGraph g;
  if (opts.kind == GraphKind::motif) {
    g = generate_motif_graph(opts.motif);
    m.config = {{"kind", "motif"}, {"ensemble", motif_json(opts.motif)}};
    m.master_seed = opts.motif.seed;
  } else {
    g = generate_circulant(opts.circulant);
    m.config = {{"kind", "circulant"}, {"ensemble", circulant_json(opts.circulant)}};
    m.master_seed = opts.circulant.seed;
  }
  if (opts.out.has_parent_path()) ensure_directory(opts.out.parent_path());
  write_edge_list(g, opts.out);
  m.outputs = {opts.out.string(), sidecar_manifest(opts.out).string()};
  m.wall_clock_seconds = clock.seconds();
  m.write(sidecar_manifest(opts.out));
  return m;
}

RunManifest cmd_analyze(const AnalyzeOptions& opts) {
  Stopwatch clock;
  if (opts.l_max < 1) throw ConfigError("lmax must be >= 1");
  const auto g = read_edge_list(opts.graph);
  if (g.n_nodes() > kDefaultDenseLimit) {
    throw CapacityError("graph has " + std::to_string(g.n_nodes()) +
                        " nodes, above the dense limit of " + std::to_string(kDefaultDenseLimit));
  }
  ensure_directory(opts.out_dir);

  const auto rho = rho_power_trace(g, opts.l_max);
  const auto spectrum = compute_spectrum(g);
  const auto moments = rho_eigen_moments(spectrum, opts.l_max);

  json residuals = json::array();
  bool identity_ok = true;
  for (std::size_t l = 1; l <= opts.l_max; ++l) {
    const double r = std::abs(rho.at(l) - moments.at(l));
    residuals.push_back(r);
    identity_ok = identity_ok && r <= 1e-8 * std::max(1.0, absolute_moment(spectrum, l));
  }

  const json summary{{"graph", opts.graph.filename().string()},
                     {"n_nodes", g.n_nodes()},
                     {"n_edges", g.n_edges()},
                     {"l_max", opts.l_max},
                     {"rho", rho.rho},
                     {"rho_eigen_moments", moments.rho},
                     {"moment_trace_residuals", residuals},
                     {"moment_trace_identity_ok", identity_ok},
                     {"spectral_radius", spectrum.spectral_radius()},
                     {"trace_residuals", spectrum.trace_residuals},
                     {"conjugation_symmetric", conjugation_symmetry_check(spectrum)}};

  RunManifest m;
  m.command = "analyze";
  m.config = {{"graph", opts.graph.string()}, {"lmax", opts.l_max}};
  const auto spectrum_path = opts.out_dir / "spectrum.csv";
  const auto rho_path = opts.out_dir / "rho.csv";
  const auto summary_path = opts.out_dir / "summary.json";
  const auto manifest_path = opts.out_dir / "manifest.json";
  write_spectrum_csv(spectrum, spectrum_path);
  write_text(rho_path, format_rho_csv(rho));
  write_text(summary_path, summary.dump(2) + "\n");
  m.outputs = {spectrum_path.string(), rho_path.string(), summary_path.string(),
               manifest_path.string()};
  m.wall_clock_seconds = clock.seconds();
  m.write(manifest_path);
  return m;
}

MotifRunResult run_motif_experiment(const MotifRunOptions& opts) {
  const auto& cfg = opts.motif;
  MotifRunResult r;
  r.graph = generate_motif_graph(cfg);
  r.rho = rho_power_trace(r.graph, std::max<std::size_t>(cfg.tau, 8));
  r.spectrum = compute_spectrum(r.graph);
  r.spectrum.source = {"motif tau=" + std::to_string(cfg.tau), cfg.seed};
  r.fit = fit_from_rho(cfg.tau, r.rho.at(cfg.tau));
  r.containment = containment_fraction(r.spectrum, r.fit.ellipse, opts.slack);
  const double tau = static_cast<double>(cfg.tau);
  r.distance_symmetric = rotation_symmetry_distance(r.spectrum, 2.0 * pi / tau);
  r.distance_half_step = rotation_symmetry_distance(r.spectrum, pi / tau);
  r.bootstrap_threshold = bootstrap_noise_threshold(
      r.spectrum, {opts.bootstrap_resamples, 0.95, derive_seed(cfg.seed, 0xB007)});
  return r;
}

Fig2Output cmd_fig2(const Fig2Options& opts) {
  Stopwatch clock;
  ensure_directory(opts.out_dir);
  Fig2Output out;
  out.result = run_motif_experiment(opts.run);
  const auto& r = out.result;
  const auto& cfg = opts.run.motif;

  const auto boundary = boundary_points(r.fit.ellipse, opts.boundary_samples);
  const std::string stem = "fig2_tau" + std::to_string(cfg.tau);
  const auto svg_path = opts.out_dir / (stem + ".svg");
  const auto spectrum_path = opts.out_dir / "spectrum.csv";
  const auto rho_path = opts.out_dir / "rho.csv";
  const auto boundary_path = opts.out_dir / "boundary.csv";
  const auto fit_path = opts.out_dir / "fit.json";
  const auto summary_path = opts.out_dir / "summary.json";
  const auto manifest_path = opts.out_dir / "manifest.json";

  char title[128];
  std::snprintf(title, sizeof title, "tau=%zu  N=%zu  rho_tau=%.4f  inside=%.4f", cfg.tau,
                cfg.n_nodes, r.fit.rho_tau, r.containment);
  write_text(svg_path, complex_plane_svg(r.spectrum, title, boundary, {}));
  write_spectrum_csv(r.spectrum, spectrum_path);
  write_text(rho_path, format_rho_csv(r.rho));
  write_text(boundary_path, format_boundary_csv(r.fit.ellipse, opts.boundary_samples));
  write_text(fit_path, fit_to_json(r.fit).dump(2) + "\n");
  const json summary{{"tau", cfg.tau},
                     {"n_nodes", cfg.n_nodes},
                     {"n_edges", r.graph.n_edges()},
                     {"planted_cycles", cfg.planted_cycle_count()},
                     {"rho", r.rho.rho},
                     {"fit", fit_to_json(r.fit)},
                     {"slack", opts.run.slack},
                     {"containment_fraction", r.containment},
                     {"spectral_radius", r.spectrum.spectral_radius()},
                     {"rotation_distance_2pi_over_tau", r.distance_symmetric},
                     {"rotation_distance_pi_over_tau", r.distance_half_step},
                     {"bootstrap_threshold_95", r.bootstrap_threshold},
                     {"conjugation_symmetric", conjugation_symmetry_check(r.spectrum)}};
  write_text(summary_path, summary.dump(2) + "\n");

  out.manifest.command = "fig2";
  out.manifest.config = {{"ensemble", motif_json(cfg)},
                         {"slack", opts.run.slack},
                         {"bootstrap_resamples", opts.run.bootstrap_resamples},
                         {"boundary_samples", opts.boundary_samples}};
  out.manifest.master_seed = cfg.seed;
  out.manifest.outputs = {svg_path.string(),   spectrum_path.string(), rho_path.string(),
                          boundary_path.string(), fit_path.string(),   summary_path.string(),
                          manifest_path.string()};
  out.manifest.wall_clock_seconds = clock.seconds();
  out.manifest.write(manifest_path);
  return out;
}

std::vector<const CirculantTrial*> CirculantSweep::trials_for(std::size_t degree) const {
  std::vector<const CirculantTrial*> out;
  for (const auto& t : trials)
    if (t.degree == degree) out.push_back(&t);
  return out;
}

double CirculantSweep::median_spectral_radius(std::size_t degree) const {
  std::vector<double> radii;
  for (const auto* t : trials_for(degree)) radii.push_back(t->spectral_radius);
  if (radii.empty()) throw ContractError("no trials for degree " + std::to_string(degree));
  std::sort(radii.begin(), radii.end());
  const std::size_t n = radii.size();
  return n % 2 == 1 ? radii[n / 2] : 0.5 * (radii[n / 2 - 1] + radii[n / 2]);
}

CirculantSweep sweep_circulants(const CirculantSweepOptions& opts) {
  if (opts.degrees.empty()) throw ConfigError("at least one degree is required");
  if (opts.seeds < 1) throw ConfigError("seeds must be >= 1");
  for (auto d : opts.degrees) CirculantConfig{opts.n_nodes, d, 0}.validate();

  CirculantSweep sweep;
  sweep.n_nodes = opts.n_nodes;
  sweep.degrees = opts.degrees;
  sweep.seeds = opts.seeds;
  const std::size_t total = opts.degrees.size() * opts.seeds;
  sweep.trials.resize(total);
  sweep.first_seed_spectra.resize(opts.degrees.size());

  parallel_for(total, [&](std::size_t i) {
    const std::size_t di = i / opts.seeds;
    const std::size_t s = i % opts.seeds;
    const std::size_t d = opts.degrees[di];
    const std::uint64_t seed = derive_seed(derive_seed(opts.master_seed, d), s);
    auto spectrum = compute_spectrum(generate_circulant({opts.n_nodes, d, seed}));
    spectrum.source = {"circulant d=" + std::to_string(d), seed};
    RingDetectionOptions ring_opts;
    ring_opts.degree = d;
    ring_opts.eps_real = opts.eps_real;
    ring_opts.min_gap = opts.min_gap;
    auto& trial = sweep.trials[i];
    trial.degree = d;
    trial.seed = seed;
    trial.spectral_radius = spectrum.spectral_radius();
    trial.rings = detect_rings(spectrum, ring_opts);
    if (s == 0) sweep.first_seed_spectra[di] = std::move(spectrum);
  });
  return sweep;
}

Fig34Output cmd_fig3_fig4(const Fig34Options& opts) {
  Stopwatch clock;
  ensure_directory(opts.out_dir);
  Fig34Output out;
  out.sweep = sweep_circulants(opts.sweep);
  const auto& sweep = out.sweep;

  std::vector<std::string> outputs;
  json per_degree = json::array();
  std::vector<Complex> detected_points, predicted_points;
  double chart_top = 0.0;

  for (std::size_t di = 0; di < sweep.degrees.size(); ++di) {
    const std::size_t d = sweep.degrees[di];
    const auto trials = sweep.trials_for(d);
    const auto& first = *trials.front();
    const auto predicted = predicted_radii(d);
    const std::string tag = "d" + std::to_string(d);

    const auto svg_path = opts.out_dir / ("spectrum_" + tag + ".svg");
    const auto csv_path = opts.out_dir / ("spectrum_" + tag + ".csv");
    const auto rings_json_path = opts.out_dir / ("rings_" + tag + ".json");
    const auto rings_csv_path = opts.out_dir / ("rings_" + tag + ".csv");
    write_text(svg_path, complex_plane_svg(sweep.first_seed_spectra[di],
                                           "circulant d=" + std::to_string(d) + "  N=" +
                                               std::to_string(sweep.n_nodes),
                                           {}, predicted));
    write_spectrum_csv(sweep.first_seed_spectra[di], csv_path);
    write_text(rings_json_path, ring_profile_to_json(first.rings).dump(2) + "\n");
    write_text(rings_csv_path, format_ring_comparison_csv(first.rings, d));
    for (const auto& p : {svg_path, csv_path, rings_json_path, rings_csv_path})
      outputs.push_back(p.string());

    json seeds = json::array();
    for (const auto* t : trials) {
      seeds.push_back({{"seed", t->seed},
                       {"spectral_radius", t->spectral_radius},
                       {"ring_count", t->rings.radii.size()},
                       {"rings", ring_profile_to_json(t->rings)}});
      for (double r : t->rings.radii) {
        detected_points.emplace_back(static_cast<double>(d), r);
        chart_top = std::max(chart_top, r);
      }
    }
    for (double r : predicted) {
      predicted_points.emplace_back(static_cast<double>(d), r);
      chart_top = std::max(chart_top, r);
    }
    per_degree.push_back({{"degree", d},
                          {"predicted_radii", predicted},
                          {"predicted_max_modulus", max_modulus_prediction(d)},
                          {"median_spectral_radius", sweep.median_spectral_radius(d)},
                          {"expected_ring_count", d == 2 ? std::size_t{1} : (d + 1) / 2},
                          {"trials", seeds}});
  }

  const double x_max = static_cast<double>(*std::max_element(sweep.degrees.begin(), sweep.degrees.end())) + 0.5;
  SvgPlot chart(0.5, x_max, 0.0, 1.1 * std::max(chart_top, 1.0));
  chart.title("ring radii of circulant spectra, N=" + std::to_string(sweep.n_nodes));
  chart.axes("degree d", "radius");
  chart.points(detected_points, "#1f5fbf", 3.0);
  chart.diamonds(predicted_points, "#d62728", 5.0);
  chart.legend("detected", "#1f5fbf", 0);
  chart.legend("predicted", "#d62728", 1);
  const auto chart_path = opts.out_dir / "radii.svg";
  write_text(chart_path, chart.str());
  outputs.push_back(chart_path.string());

  const auto summary_path = opts.out_dir / "summary.json";
  write_text(summary_path, json{{"n_nodes", sweep.n_nodes}, {"seeds", sweep.seeds}, {"degrees", per_degree}}.dump(2) + "\n");
  outputs.push_back(summary_path.string());

  const auto manifest_path = opts.out_dir / "manifest.json";
  outputs.push_back(manifest_path.string());
  out.manifest.command = "fig3-fig4";
  out.manifest.config = {{"degrees", opts.sweep.degrees},
                         {"nodes", opts.sweep.n_nodes},
                         {"seeds", opts.sweep.seeds},
                         {"eps_real", opts.sweep.eps_real},
                         {"min_gap", opts.sweep.min_gap}};
  out.manifest.master_seed = opts.sweep.master_seed;
  out.manifest.outputs = std::move(outputs);
  out.manifest.wall_clock_seconds = clock.seconds();
  out.manifest.write(manifest_path);
  return out;
}

RunManifest cmd_walk_counts(const WalkCountOptions& opts) {
  Stopwatch clock;
  const auto counts = circulant_walk_counts(opts.n_nodes, opts.degree, opts.l_max);
  if (opts.out.has_parent_path()) ensure_directory(opts.out.parent_path());
  write_text(opts.out, format_walk_counts_csv(counts));
  RunManifest m;
  m.command = "walks";
  m.config = {{"nodes", opts.n_nodes}, {"degree", opts.degree}, {"lmax", opts.l_max}};
  m.outputs = {opts.out.string(), sidecar_manifest(opts.out).string()};
  m.wall_clock_seconds = clock.seconds();
  m.write(sidecar_manifest(opts.out));
  return m;
}

}  // namespace cyclespec
