#include "semiclass/cli/run.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <omp.h>
#include <sstream>

#include "config_fields.hpp"
#include "semiclass/algorithms/phase_estimation.hpp"
#include "semiclass/algorithms/spectrum_pipeline.hpp"
#include "semiclass/algorithms/traces_pipeline.hpp"
#include "semiclass/classical/orbits.hpp"
#include "semiclass/quantum/matrix_io.hpp"
#include "semiclass/quantum/quantize.hpp"
#include "semiclass/quantum/spectral.hpp"
#include "semiclass/semiclassics/action_spectrum.hpp"
#include "semiclass/semiclassics/period.hpp"
#include "semiclass/semiclassics/trace_formula.hpp"

namespace semiclass::cli {

using nlohmann::json;
using Complex = std::complex<double>;

namespace {

json header_json(const ExperimentConfig& cfg) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"config_hash", hex64(config_hash(cfg))},
          {"seed", cfg.seed}, {"subcommand", cfg.subcommand}};
}

void csv_header(std::ostream& os, const ExperimentConfig& cfg) {
  os << "# " << kToolName << ' ' << kToolVersion << '\n'
     << "# config_hash " << hex64(config_hash(cfg)) << '\n'
     << "# seed " << cfg.seed << '\n';
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::vector<int> dimensions(const ExperimentConfig& cfg) {
  if (!cfg.Ns.empty()) return cfg.Ns;
  std::vector<int> out;
  const int last = cfg.N_to > 0 ? cfg.N_to : cfg.N;
  if (last < cfg.N) throw Error(ErrorKind::InvalidArgument, "N_to must be >= N");
  for (int n = cfg.N; n <= last; ++n) out.push_back(n);
  return out;
}

// Calibrates the Maslov index when the model has a quantization to calibrate against.
classical::MapModel semiclassical_model(const ExperimentConfig& cfg, json& summary) {
  const classical::MapModel m = build_model(cfg);
  const bool can = m.kind() == classical::MapKind::Baker ||
                   (m.kind() == classical::MapKind::Cat && m.cat_matrix().quantizable());
  if (!can) {
    summary["maslov_per_step"] = nullptr;
    return m;
  }
  const int ref = semiclassics::default_reference_dimension(m);
  const auto cal = semiclassics::calibrate_maslov(m, ref);
  summary["maslov_per_step"] = cal.nu_per_step;
  summary["maslov_reference_N"] = cal.reference_N;
  return m.with_maslov_per_step(cal.nu_per_step);
}

json checkpoints_json(const std::vector<algorithms::Checkpoint>& cps) {
  json a = json::array();
  for (const auto& c : cps) {
    a.push_back({{"step", c.step}, {"passed", c.passed}, {"metric", c.metric}, {"tolerance", c.tolerance},
                 {"detail", c.detail}});
  }
  return a;
}

json amplification_json(const std::vector<qsim::AmplificationLog>& logs) {
  json a = json::array();
  for (const auto& l : logs) {
    a.push_back({{"k", l.iterations}, {"initial_probability", l.initial_probability},
                 {"predicted_probability", l.predicted_probability}, {"measured_probability", l.final_probability}});
  }
  return a;
}

json estimates_json(const std::vector<algorithms::TraceEstimate>& es, bool with_bound) {
  json a = json::array();
  for (const auto& e : es) {
    json j = {{"t", e.t},
              {"estimate_re", e.estimate.real()},
              {"estimate_im", e.estimate.imag()},
              {"oracle_re", e.oracle.real()},
              {"oracle_im", e.oracle.imag()},
              {"defect", e.defect},
              {"exact_zero", e.exact_zero}};
    if (with_bound) j["bound"] = e.bound;
    a.push_back(j);
  }
  return a;
}

// ---- subcommands ---------------------------------------------------------

void cmd_orbits(const ExperimentConfig& cfg, std::ostream& out, json& s) {
  const classical::MapModel model = semiclassical_model(cfg, s);
  auto orbits = classical::enumerate_periodic_orbits(model, cfg.t);
  for (auto& o : orbits) o = classical::orbit_invariants(model, o, cfg.N);
  csv_header(out, cfg);
  classical::write_orbit_csv(out, orbits);
  std::int64_t expected = 0;
  if (model.kind() == classical::MapKind::Cat) {
    expected = std::llabs(2 - model.cat_matrix().pow(cfg.t).trace());
  } else {
    expected = std::int64_t{1} << cfg.t;
  }
  s["orbits"] = orbits.size();
  s["points"] = classical::count_points(orbits);
  s["expected_points"] = expected;
  s["count_matches"] = classical::count_points(orbits) == expected;
}

void cmd_quantize(const ExperimentConfig& cfg, std::ostream& out, json& s) {
  const auto u = quantum::quantize(build_model(cfg), cfg.N);
  quantum::write_matrix(out, u.matrix());
  s["N"] = cfg.N;
  s["unitarity_defect"] = quantum::unitarity_defect(u.matrix());
  s["trace"] = complex_json(u.matrix().trace());
}

void cmd_traces(const ExperimentConfig& cfg, std::ostream& out, json& s) {
  const auto u = quantum::quantize(build_model(cfg), cfg.N);
  const auto series = quantum::trace_powers(u, cfg.t_max);
  csv_header(out, cfg);
  quantum::write_complex_csv(out, "t", 1, series.values);
  double max_abs = 0.0;
  for (auto z : series.values) max_abs = std::max(max_abs, std::abs(z));
  s["N"] = cfg.N;
  s["max_abs_trace"] = max_abs;
  s["bounded_by_N"] = max_abs <= cfg.N + 1e-9;
  if (cfg.N <= quantum::Caps{}.dense_diag) {
    const auto eig = quantum::trace_powers(u, cfg.t_max, quantum::TraceMethod::Eigen);
    double diff = 0.0;
    for (int t = 1; t <= cfg.t_max; ++t) diff = std::max(diff, std::abs(eig.at(t) - series.at(t)));
    s["eigen_path_max_diff"] = diff;
  }
}

void cmd_charpoly(const ExperimentConfig& cfg, std::ostream& out, json& s) {
  const auto u = quantum::quantize(build_model(cfg), cfg.N);
  const auto series = quantum::trace_powers(u, cfg.N);
  const Complex det = quantum::det_minus_u(u);
  quantum::CharPolyOptions opt;
  opt.det_minus_u = det;
  opt.half_traces = cfg.half_traces;
  const auto cp = quantum::char_poly_from_traces(series, cfg.N, opt);
  csv_header(out, cfg);
  quantum::write_complex_csv(out, "k", 0, cp.beta);
  s["N"] = cfg.N;
  s["beta0"] = complex_json(cp.beta.front());
  s["abs_beta_N"] = std::abs(cp.beta.back());
  s["det_minus_u"] = complex_json(det);
  s["completed_by_resurgence"] = cp.completed_by_resurgence;
  s["resurgence_residual"] = cp.resurgence_residual.value_or(0.0);
  quantum::CharPolyOptions half = opt;
  half.half_traces = !cfg.half_traces;
  const auto other = quantum::char_poly_from_traces(series, cfg.N, half);
  double diff = 0.0;
  for (int k = 0; k <= cfg.N; ++k) diff = std::max(diff, std::abs(other.beta[static_cast<std::size_t>(k)] - cp.beta[static_cast<std::size_t>(k)]));
  s["half_vs_full_max_diff"] = diff;
}

void cmd_density(const ExperimentConfig& cfg, std::ostream& out, json& s) {
  if (cfg.grid < 2) throw Error(ErrorKind::InvalidArgument, "grid must be >= 2");
  const auto u = quantum::quantize(build_model(cfg), cfg.N);
  const auto series = quantum::trace_powers(u, cfg.t_max);
  std::vector<double> grid(static_cast<std::size_t>(cfg.grid));
  const double step = 2.0 * std::numbers::pi / cfg.grid;
  for (int i = 0; i < cfg.grid; ++i) grid[static_cast<std::size_t>(i)] = step * i;
  const auto d = quantum::spectral_density(series, grid, cfg.t_max);
  csv_header(out, cfg);
  out << "theta,density\n";
  out.precision(17);
  double integral = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    out << grid[i] << ',' << d[i] << '\n';
    integral += d[i] * step;
  }
  s["N"] = cfg.N;
  s["cutoff"] = cfg.t_max;
  s["integral"] = integral;
}

void cmd_semiclassical(const ExperimentConfig& cfg, std::ostream& out, json& s) {
  const classical::MapModel model = semiclassical_model(cfg, s);
  std::vector<semiclassics::TraceReport> all;
  for (int N : dimensions(cfg)) {
    auto r = semiclassics::compare_traces(model, N, cfg.t_max);
    all.insert(all.end(), r.begin(), r.end());
  }
  csv_header(out, cfg);
  semiclassics::write_trace_reports_csv(out, all);
  double worst = 0.0;
  for (const auto& r : all) worst = std::max(worst, r.abs_defect());
  s["reports"] = all.size();
  s["max_abs_defect"] = worst;
}

void cmd_action_spectrum(const ExperimentConfig& cfg, std::ostream& out, json& s) {
  const classical::MapModel model = semiclassical_model(cfg, s);
  const auto spectrum = semiclassics::action_spectrum(model, cfg.t, cfg.N_max);
  csv_header(out, cfg);
  semiclassics::write_peaks_csv(out, spectrum);
  json actions = json::array();
  double worst = 0.0;
  for (const auto& o : semiclassics::completed_orbits(model, cfg.t, 1)) {
    double best = 1.0;
    for (const auto& p : spectrum.peaks) best = std::min(best, semiclassics::circular_distance(p.frequency, o.S_p));
    worst = std::max(worst, best);
    actions.push_back({{"orbit", o.label()}, {"S_p", o.S_p}, {"nearest_peak_distance", best}});
  }
  json peaks = json::array();
  for (const auto& p : spectrum.peaks) peaks.push_back({{"frequency", p.frequency}, {"weight", p.weight}});
  s["N_max"] = cfg.N_max;
  s["defined_samples"] = spectrum.defined_samples;
  s["peaks"] = peaks;
  s["classical_actions"] = actions;
  s["max_action_distance"] = worst;
}

void cmd_cat_period(const ExperimentConfig& cfg, std::ostream& out, json& s) {
  const classical::CatMatrix m = build_cat_matrix(cfg);
  out << json{{"header", header_json(cfg)}}.dump() << '\n';
  bool ratio_ok = true;
  double worst_residual = 0.0;
  int count = 0;
  for (int N : dimensions(cfg)) {
    const auto rec = semiclassics::period_functions(m, N);
    semiclassics::write_period_jsonl(out, rec);
    const bool ok = rec.n == rec.g || 2 * rec.n == rec.g || rec.n == 2 * rec.g;
    ratio_ok = ratio_ok && ok;
    worst_residual = std::max(worst_residual, rec.lattice_residual);
    if (++count == 1) {
      s["g"] = rec.g;
      s["n"] = rec.n;
      s["phi"] = rec.phi;
    }
  }
  s["records"] = count;
  s["ratio_ok"] = ratio_ok;
  s["max_lattice_residual"] = worst_residual;
}

void cmd_spectrum_from_orbits(const ExperimentConfig& cfg, std::ostream& out, json& s) {
  const classical::MapModel model = semiclassical_model(cfg, s);
  auto run_at = [&](int pb, int ab) {
    algorithms::SpectrumPipelineConfig pc;
    pc.model = model;
    pc.t_max = cfg.t_max;
    pc.N = cfg.N;
    pc.phase_bits = pb;
    pc.amplitude_bits = ab;
    pc.readout = algorithms::parse_readout(cfg.readout);
    pc.shots = cfg.shots;
    pc.seed = cfg.seed;
    return algorithms::run_spectrum_from_orbits(pc);
  };
  auto to_json_result = [](const algorithms::PipelineResult& r, int pb, int ab) {
    double worst = 0.0;
    bool within = true;
    for (const auto& e : r.estimates) {
      worst = std::max(worst, e.defect);
      within = within && e.defect <= e.bound;
    }
    return json{{"phase_bits", pb},
                {"amplitude_bits", ab},
                {"qubits", r.qubits},
                {"constants",
                 {{"lambda", r.constants.lambda},
                  {"Lambda", r.constants.Lambda},
                  {"mu", r.constants.mu},
                  {"kappa", r.constants.kappa},
                  {"full_scale", r.constants.full_scale}}},
                {"estimates", estimates_json(r.estimates, true)},
                {"checkpoints", checkpoints_json(r.checkpoints)},
                {"amplification", amplification_json(r.amplifications)},
                {"residual_d_mass", r.residual_d_mass},
                {"warnings", r.warnings},
                {"max_defect", worst},
                {"within_bound", within}};
  };
  json art = {{"header", header_json(cfg)}, {"N", cfg.N}, {"t_max", cfg.t_max}, {"readout", cfg.readout}};
  art["runs"] = json::array();
  const auto first = run_at(cfg.phase_bits, cfg.amplitude_bits);
  art["runs"].push_back(to_json_result(first, cfg.phase_bits, cfg.amplitude_bits));
  s["max_defect"] = art["runs"][0]["max_defect"];
  s["within_bound"] = art["runs"][0]["within_bound"];
  s["residual_d_mass"] = first.residual_d_mass;
  if (cfg.compare_bits > 0) {
    const auto second = run_at(cfg.compare_bits, cfg.compare_bits);
    art["runs"].push_back(to_json_result(second, cfg.compare_bits, cfg.compare_bits));
    const double a = art["runs"][0]["max_defect"].get<double>();
    const double b = art["runs"][1]["max_defect"].get<double>();
    s["compare_max_defect"] = b;
    s["compare_within_bound"] = art["runs"][1]["within_bound"];
    s["defect_ratio"] = b > 0.0 ? a / b : 0.0;
  }
  out << art.dump(2) << '\n';
}

void cmd_traces_from_quantum(const ExperimentConfig& cfg, std::ostream& out, json& s) {
  const classical::MapModel model = build_model(cfg);
  algorithms::TracesPipelineOptions opt;
  opt.t_max = cfg.t_max;
  opt.readout = algorithms::parse_readout(cfg.readout);
  opt.shots = cfg.shots;
  opt.seed = cfg.seed;
  json art = {{"header", header_json(cfg)}, {"runs", json::array()}};
  double worst = 0.0;
  double min_d0 = 1.0;
  for (int N : dimensions(cfg)) {
    const auto r = algorithms::run_traces_from_quantum(model, N, opt);
    for (const auto& e : r.estimates) worst = std::max(worst, e.defect);
    min_d0 = std::min(min_d0, r.d0_weight);
    art["runs"].push_back({{"N", N},
                           {"register_bits", r.register_bits},
                           {"anchor", r.anchor},
                           {"d0_weight", r.d0_weight},
                           {"estimates", estimates_json(r.estimates, false)},
                           {"checkpoints", checkpoints_json(r.checkpoints)},
                           {"amplification", amplification_json(r.amplifications)}});
  }
  out << art.dump(2) << '\n';
  s["max_defect"] = worst;
  s["min_d0_weight"] = min_d0;
}

void cmd_integrability_probe(const ExperimentConfig& cfg, std::ostream& out, json& s) {
  const classical::MapModel model = build_model(cfg);
  json art = {{"header", header_json(cfg)}, {"runs", json::array()}};
  json verdicts = json::object();
  for (int N : dimensions(cfg)) {
    const auto r = algorithms::integrability_probe(model, N);
    const char* verdict = r.integrable_like ? "integrable-like" : "chaotic-like";
    art["runs"].push_back({{"N", N},
                           {"verdict", verdict},
                           {"rounds", r.rounds},
                           {"best_round", r.best_round},
                           {"best_probability", r.best_probability},
                           {"final_probability", r.final_probability},
                           {"initial_probability", r.initial_probability},
                           {"probabilities", r.probabilities}});
    verdicts[std::to_string(N)] = verdict;
  }
  out << art.dump(2) << '\n';
  s["verdicts"] = verdicts;
}

void cmd_phase_estimation(const ExperimentConfig& cfg, std::ostream& out, json& s) {
  const classical::CatMatrix m = build_cat_matrix(cfg);
  json art = {{"header", header_json(cfg)}, {"runs", json::array()}};
  bool all_match = true;
  for (int N : dimensions(cfg)) {
    algorithms::PhaseEstimationConfig pc;
    pc.M = m;
    pc.N = N;
    pc.bits = cfg.bits;
    if (cfg.input == "random") {
      pc.input = algorithms::InputState::Random;
    } else if (cfg.input == "eigenvector") {
      pc.input = algorithms::InputState::Eigenvector;
    } else {
      throw Error(ErrorKind::InvalidArgument, "input must be random or eigenvector");
    }
    pc.eigen_index = cfg.eigen_index;
    pc.random_inputs = cfg.inputs;
    pc.shots = cfg.shots;
    pc.seed = cfg.seed + static_cast<std::uint64_t>(N);
    const auto r = algorithms::phase_estimation_cat(pc);
    json hist = json::object();
    for (std::size_t i = 0; i < r.counts.size(); ++i)
      if (r.counts[i]) hist[std::to_string(i)] = r.counts[i];
    json run = {{"N", N}, {"bits", cfg.bits}, {"histogram", hist}};
    if (pc.input == algorithms::InputState::Eigenvector) {
      std::size_t mode = 0;
      for (std::size_t i = 1; i < r.counts.size(); ++i)
        if (r.counts[i] > r.counts[mode]) mode = i;
      const double est = 2.0 * std::numbers::pi * static_cast<double>(mode) / static_cast<double>(r.counts.size());
      run["reference_phase"] = r.reference_phase;
      run["estimated_phase"] = est;
    } else {
      const auto pe = algorithms::period_from_phases(r.counts, cfg.bits);
      const auto rec = semiclassics::period_functions(m, N);
      run["n_estimate"] = pe.n;
      run["phi_estimate"] = pe.phi;
      run["n_reference"] = rec.n;
      run["phi_reference"] = rec.phi;
      run["clusters"] = pe.centers.size();
      run["warnings"] = pe.warnings;
      run["match"] = pe.n == rec.n;
      all_match = all_match && pe.n == rec.n;
    }
    art["runs"].push_back(run);
  }
  out << art.dump(2) << '\n';
  s["all_periods_match"] = all_match;
}

using Handler = void (*)(const ExperimentConfig&, std::ostream&, json&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"orbits", cmd_orbits},
      {"quantize", cmd_quantize},
      {"traces", cmd_traces},
      {"charpoly", cmd_charpoly},
      {"density", cmd_density},
      {"semiclassical", cmd_semiclassical},
      {"action-spectrum", cmd_action_spectrum},
      {"cat-period", cmd_cat_period},
      {"spectrum-from-orbits", cmd_spectrum_from_orbits},
      {"traces-from-quantum", cmd_traces_from_quantum},
      {"integrability-probe", cmd_integrability_probe},
      {"phase-estimation", cmd_phase_estimation},
  };
  return h;
}

void apply_thread_env() {
  if (const char* v = std::getenv("SEMICLASS_QC_THREADS")) {
    const int n = std::atoi(v);
    if (n > 0) omp_set_num_threads(n);
  }
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : handlers()) v.push_back(name);
    return v;
  }();
  return names;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Budget:
    case ErrorKind::SizeCap:
      return kBudget;
    case ErrorKind::QuantizationFailure:
    case ErrorKind::Irreversible:
    case ErrorKind::Pipeline:
    case ErrorKind::Inconsistency:
    case ErrorKind::Io:
      return kFailure;
    default:
      return kValidation;
  }
}

int run(const ExperimentConfig& cfg, std::ostream& artifact_out, std::ostream& summary_out, std::ostream& err) {
  const auto it = handlers().find(cfg.subcommand);
  if (it == handlers().end()) {
    err << "unknown subcommand '" << cfg.subcommand << "'\n";
    return kUsage;
  }
  json summary = {{"header", header_json(cfg)}};
  try {
    it->second(cfg, artifact_out, summary);
  } catch (const Error& e) {
    err << e.what() << '\n';
    summary["status"] = "error";
    summary["error"] = e.what();
    summary_out << summary.dump(2) << '\n';
    return exit_code_for(e.kind());
  }
  summary["status"] = "ok";
  summary_out << summary.dump(2) << '\n';
  return kOk;
}

int main_entry(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"Semiclassical trace formulas and simulated quantum algorithms for torus maps"};
  app.set_help_flag("-h,--help");
  std::string sub;
  std::string config_path;
  ExperimentConfig flags;
  app.add_option("subcommand", sub, "one of: orbits, quantize, traces, charpoly, density, semiclassical, "
                                    "action-spectrum, cat-period, spectrum-from-orbits, traces-from-quantum, "
                                    "integrability-probe, phase-estimation");
  app.add_option("--config", config_path, "JSON config file; flags override its fields");
  std::map<std::string, CLI::Option*> opts;
  auto flag_name = [](std::string n) {
    std::replace(n.begin(), n.end(), '_', '-');
    return "--" + n;
  };
#define SEMICLASS_ADD_FLAG(name) opts[#name] = app.add_option(flag_name(#name), flags.name);
  SEMICLASS_CONFIG_FIELDS(SEMICLASS_ADD_FLAG)
#undef SEMICLASS_ADD_FLAG
  opts["Ns"]->delimiter(',');
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }
  if (sub.empty() && config_path.empty()) {
    std::cerr << app.help();
    return kUsage;
  }

  ExperimentConfig cfg;
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) {
      std::cerr << "cannot open config " << config_path << '\n';
      return kValidation;
    }
    try {
      cfg = from_json(json::parse(is));
    } catch (const json::exception& e) {
      std::cerr << "config parse error: " << e.what() << '\n';
      return kValidation;
    } catch (const Error& e) {
      std::cerr << e.what() << '\n';
      return kValidation;
    }
  }
  if (!sub.empty()) cfg.subcommand = sub;
#define SEMICLASS_OVERRIDE(name) \
  if (opts[#name]->count() > 0) cfg.name = flags.name;
  SEMICLASS_CONFIG_FIELDS(SEMICLASS_OVERRIDE)
#undef SEMICLASS_OVERRIDE

  if (handlers().find(cfg.subcommand) == handlers().end()) {
    std::cerr << "unknown subcommand '" << cfg.subcommand << "'\n" << app.help();
    return kUsage;
  }

  std::ofstream file_out;
  std::ofstream summary_file;
  std::ostream* artifact = &std::cout;
  std::ostream* summary = &std::cerr;
  if (!cfg.out.empty()) {
    file_out.open(cfg.out, std::ios::binary);
    if (!file_out) {
      std::cerr << "cannot open " << cfg.out << '\n';
      return kFailure;
    }
    artifact = &file_out;
    summary = &std::cout;
  }
  if (!cfg.summary.empty()) {
    summary_file.open(cfg.summary);
    if (!summary_file) {
      std::cerr << "cannot open " << cfg.summary << '\n';
      return kFailure;
    }
    summary = &summary_file;
  }
  const int code = run(cfg, *artifact, *summary, std::cerr);
  if (code == kOk && cfg.subcommand == "quantize" && !cfg.out.empty()) {
    std::ofstream meta(cfg.out + ".json");
    meta << json{{"header", header_json(cfg)}, {"format", "SCQMAT01"}}.dump(2) << '\n';
  }
  return code;
}

}  // namespace semiclass::cli
