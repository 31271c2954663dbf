// chi2opt command line front end.
//
// Units: SI throughout (omega in rad/s, lengths in m); hbar = 1 in every
// cross-section and squeezing formula. Exit codes: 0 success, 1 validation
// error, 2 numerical error.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chi2opt/constants.hpp"
#include "chi2opt/csv.hpp"
#include "chi2opt/diagrams.hpp"
#include "chi2opt/errors.hpp"
#include "chi2opt/greens.hpp"
#include "chi2opt/media.hpp"
#include "chi2opt/nonlinear.hpp"
#include "chi2opt/scenario.hpp"
#include "chi2opt/squeezing.hpp"

using namespace chi2opt;
using nlohmann::json;

namespace {

std::string csv_line(std::initializer_list<double> vals) {
  std::string line;
  bool first = true;
  for (double v : vals) {
    line += (first ? "" : ",") + format_double(v);
    first = false;
  }
  return line;
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << body;
}

HuttnerBarnettModel load_hb_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  for (const auto& item : doc.items()) {
    static const std::vector<std::string> allowed = {
        "omega0", "beta", "rho", "cutoff", "eta", "coupling"};
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ValidationError(path + ": unknown key '" + item.key() + "'");
    }
  }
  HuttnerBarnettModel m;
  auto need = [&](const char* key) -> double {
    if (!doc.contains(key) || !doc[key].is_number()) {
      throw ValidationError(path + ": missing numeric key '" + std::string(key) + "'");
    }
    return doc[key].get<double>();
  };
  m.omega0 = need("omega0");
  m.beta = need("beta");
  m.rho = need("rho");
  m.omega_cutoff = need("cutoff");
  m.eta = doc.contains("eta") ? need("eta") : 1e-6 * m.omega0;
  if (!doc.contains("coupling")) {
    throw ValidationError(path + ": missing 'coupling' table");
  }
  const json& c = doc["coupling"];
  if (c.contains("constant")) {
    const double f0 = c["constant"].get<double>();
    m.coupling_f = [f0](double) { return f0; };
  } else if (c.contains("file")) {
    const Table t = load_table(c["file"].get<std::string>());
    m.coupling_f = LinearInterpolant(t.x, t.col1);
  } else {
    throw ValidationError(path + ": coupling needs 'constant' or 'file'");
  }
  m.validate();
  return m;
}

int run_epsilon(const std::string& model_path, double g, double w_min,
                double w_max, int points, const std::string& out_path) {
  const HuttnerBarnettModel model = load_hb_model(model_path);
  if (points < 2) throw ValidationError("epsilon: --points must be >= 2");
  if (!(w_min < w_max)) throw ValidationError("epsilon: empty frequency range");
  std::ostringstream body;
  body << "# chi2opt " << kToolVersion
       << " effective permittivity, units=SI,hbar=1\n";
  body << "# columns: omega re_eps im_eps\n";
  for (int i = 0; i < points; ++i) {
    const double w = w_min + (w_max - w_min) * i / (points - 1);
    const Complex eps = effective_epsilon(model, g, w);
    body << csv_line({w, eps.real(), eps.imag()}) << "\n";
  }
  write_text(out_path, body.str());
  return 0;
}

int run_propagator(double omega, double n_re, double n_im, double x_min,
                   double x_max, int points, double y, bool numeric,
                   const std::string& out_path) {
  if (points < 2) throw ValidationError("propagator: --points must be >= 2");
  if (!(x_min < x_max)) throw ValidationError("propagator: empty grid");
  std::ostringstream body;
  body << "# chi2opt " << kToolVersion << " 1D propagator, units=SI,hbar=1\n";
  body << "# columns: omega x y re_G im_G\n";
  if (numeric) {
    const MediumProfile medium =
        MediumProfile::homogeneous(x_min, x_max, Complex(n_re, n_im) *
                                                     Complex(n_re, n_im));
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) {
      grid[i] = x_min + (x_max - x_min) * i / (points - 1);
    }
    const Numeric1DPropagator prop(medium, omega, grid);
    for (double x : grid) {
      const Complex G = prop.evaluate(x, y);
      body << csv_line({omega, x, y, G.real(), G.imag()}) << "\n";
    }
  } else {
    const WaveVectorModel k = WaveVectorModel::constant_index({n_re, n_im});
    for (int i = 0; i < points; ++i) {
      const double x = x_min + (x_max - x_min) * i / (points - 1);
      const Complex G = analytic_1d_propagator(omega, x, y, k);
      body << csv_line({omega, x, y, G.real(), G.imag()}) << "\n";
    }
  }
  write_text(out_path, body.str());
  return 0;
}

int run_spdc(std::pair<double, double> L_range,
             std::pair<double, double> dk_range, int points,
             const std::string& csv_path, const std::string& json_path) {
  if (points < 2) throw ValidationError("spdc: --points must be >= 2");
  std::ostringstream body;
  body << "# chi2opt " << kToolVersion
       << " SPDC phase matching, units=SI,hbar=1\n";
  body << "# columns: L dk P_normalised\n";

  json summary = json::array();
  const int nL = L_range.first == L_range.second ? 1 : points;
  for (int iL = 0; iL < nL; ++iL) {
    const double L =
        nL == 1 ? L_range.first
                : L_range.first +
                      (L_range.second - L_range.first) * iL / (nL - 1);
    std::vector<double> dk(points), P(points);
    double peak = 0.0;
    int peak_idx = 0;
    for (int i = 0; i < points; ++i) {
      dk[i] = dk_range.first +
              (dk_range.second - dk_range.first) * i / (points - 1);
      P[i] = spdc_probability(L, dk[i]);
      if (P[i] > peak) {
        peak = P[i];
        peak_idx = i;
      }
    }
    for (int i = 0; i < points; ++i) {
      body << csv_line({L, dk[i], P[i] / peak}) << "\n";
    }
    // First zeros: walk outwards from the peak to the first local minimum
    // on each side (at L dk = +-2 pi for the sinc^2 law).
    json zeros = json::array();
    for (int dir : {-1, +1}) {
      for (int i = peak_idx + dir; i > 0 && i + 1 < points; i += dir) {
        if (P[i] <= P[i - 1] && P[i] <= P[i + 1]) {
          zeros.push_back(dk[i]);
          break;
        }
      }
    }
    json entry;
    entry["L"] = L;
    entry["peak_dk"] = dk[peak_idx];
    entry["peak_P"] = peak;
    entry["first_zeros_dk"] = zeros;
    summary.push_back(entry);
  }
  write_text(csv_path, body.str());
  if (!json_path.empty()) {
    json root;
    root["tool"] = "chi2opt";
    root["version"] = kToolVersion;
    root["units"] = "SI, hbar = 1";
    root["sweeps"] = summary;
    write_text(json_path, root.dump(2) + "\n");
  }
  return 0;
}

EvaluationContext context_from_scenario(const Scenario& s) {
  EvaluationContext ctx;
  ctx.medium = s.medium();
  ctx.kin = s.kinematics();
  const double L = s.x_end - s.x_start;
  ctx.coordinates["x1"] = {s.kin.omega_s, s.detector_x};
  ctx.coordinates["x2"] = {s.kin.omega_i, s.detector_y};
  ctx.coordinates["x3"] = {s.kin.omega_s, s.detector_x - 3.0 * L};
  ctx.coordinates["x4"] = {s.kin.omega_i, s.detector_y - 3.0 * L};
  return ctx;
}

int run_diagrams(int order, bool list_only, const std::string& scenario_path,
                 const std::string& out_path) {
  std::vector<std::pair<int, int>> shapes;
  if (order == 0) shapes = {{0, 1}};
  else if (order == 1) shapes = {{1, 2}};
  else if (order == 2) shapes = {{2, 2}, {2, 3}, {2, 4}};
  else throw ValidationError("diagrams: --order must be 0, 1, or 2");

  std::vector<Diagram> all;
  for (auto [V, P] : shapes) {
    for (Diagram& d : enumerate_diagrams(V, P)) all.push_back(std::move(d));
  }

  if (list_only) {
    std::ostringstream body;
    for (const Diagram& d : all) body << d.describe() << "\n";
    write_text(out_path, body.str());
    return 0;
  }

  if (scenario_path.empty()) {
    throw ValidationError("diagrams: --evaluate needs a scenario file (or use --list)");
  }
  const Scenario s = parse_scenario_file(scenario_path);
  const EvaluationContext ctx = context_from_scenario(s);

  json arr = json::array();
  for (const Diagram& d : all) {
    json entry;
    entry["topology"] = d.describe();
    entry["sources"] = d.source_labels;
    entry["symmetry_factor"] = symmetry_factor(d);
    if (d.evaluable()) {
      const Complex a = evaluate_amplitude(d, ctx);
      entry["amplitude_re"] = a.real();
      entry["amplitude_im"] = a.imag();
    } else {
      entry["amplitude_re"] = nullptr;
      entry["amplitude_im"] = nullptr;
      entry["note"] = "vacuum loop removed by renormalisation";
    }
    arr.push_back(entry);
  }
  json root;
  root["tool"] = "chi2opt";
  root["version"] = kToolVersion;
  root["units"] = "SI, hbar = 1";
  root["diagrams"] = arr;
  write_text(out_path, root.dump(2) + "\n");
  return 0;
}

int run_squeeze(const std::string& scenario_path, const std::string& csv_path,
                const std::string& out_path) {
  const Scenario s = parse_scenario_file(scenario_path);
  const double L = s.x_end - s.x_start;
  const ThreeWaveKinematics kin = s.kinematics();
  const SqueezingParameter p = squeezing_1d_closed_form(
      s.chi2, s.pump, L, kin, s.detector_x, s.detector_y);
  const double drive = std::abs(s.chi2) * s.pump.amplitude * L;
  const double bound = 4.0 * (kin.k_s * kin.k_i).real();

  json root;
  root["tool"] = "chi2opt";
  root["version"] = kToolVersion;
  root["units"] = "SI, hbar = 1";
  root["s"] = p.s;
  root["theta"] = p.theta;
  root["validity_margin"] = 1.0 - drive / bound;
  write_text(out_path, root.dump(2) + "\n");

  if (!csv_path.empty()) {
    std::ostringstream body;
    body << "# chi2opt " << kToolVersion << " squeezing sweep, units=SI,hbar=1\n";
    body << "# columns: L s\n";
    const int points = 101;
    for (int i = 0; i < points; ++i) {
      const double Li = L * (i + 1) / points;
      const SqueezingParameter pi_ = squeezing_1d_closed_form(
          s.chi2, s.pump, Li, kin, s.detector_x, s.detector_y);
      body << csv_line({Li, pi_.s}) << "\n";
    }
    write_text(csv_path, body.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "chi2opt: dressed 1D photon propagators and chi^(2) conversion "
      "processes.\nUnits: SI (omega in rad/s, x in m); hbar = 1 in "
      "cross-section and squeezing outputs."};
  app.require_subcommand(1);

  // epsilon
  auto* eps_cmd = app.add_subcommand(
      "epsilon", "Effective permittivity of a reservoir-coupled resonance");
  std::string eps_model, eps_out = "-";
  double eps_g = 1.0, eps_wmin = 0.0, eps_wmax = 0.0;
  int eps_points = 101;
  eps_cmd->add_option("--model", eps_model, "model JSON file")->required();
  eps_cmd->add_option("--g", eps_g, "matter-field coupling density g");
  eps_cmd->add_option("--omega-min", eps_wmin, "sweep start, rad/s")->required();
  eps_cmd->add_option("--omega-max", eps_wmax, "sweep stop, rad/s")->required();
  eps_cmd->add_option("--points", eps_points, "sweep points");
  eps_cmd->add_option("-o,--output", eps_out, "output CSV ('-' = stdout)");

  // propagator
  auto* prop_cmd = app.add_subcommand(
      "propagator", "1D photon propagator sweep over detector position");
  double p_omega = 0.0, p_nre = 1.0, p_nim = 0.0, p_xmin = 0.0, p_xmax = 0.0,
         p_y = 0.0;
  int p_points = 201;
  bool p_numeric = false;
  std::string p_out = "-";
  prop_cmd->add_option("--omega", p_omega, "frequency, rad/s")->required();
  prop_cmd->add_option("--n-re", p_nre, "refractive index, real part");
  prop_cmd->add_option("--n-im", p_nim, "refractive index, imaginary part");
  prop_cmd->add_option("--xmin", p_xmin, "grid start, m")->required();
  prop_cmd->add_option("--xmax", p_xmax, "grid stop, m")->required();
  prop_cmd->add_option("--points", p_points, "grid points");
  prop_cmd->add_option("--y", p_y, "source position, m");
  prop_cmd->add_flag("--numeric", p_numeric, "use the layered numeric route");
  prop_cmd->add_option("-o,--output", p_out, "output CSV ('-' = stdout)");

  // spdc
  auto* spdc_cmd =
      app.add_subcommand("spdc", "SPDC sinc^2 phase-matching sweeps");
  std::pair<double, double> spdc_L{1.0, 1.0}, spdc_dk{0.0, 0.0};
  int spdc_points = 401;
  std::string spdc_csv = "-", spdc_json;
  spdc_cmd->add_option("--L-range", spdc_L, "medium length range, m (min max)")
      ->required();
  spdc_cmd->add_option("--dk-range", spdc_dk, "phase mismatch range, 1/m (min max)")
      ->required();
  spdc_cmd->add_option("--points", spdc_points, "points per axis");
  spdc_cmd->add_option("-o,--output", spdc_csv, "output CSV ('-' = stdout)");
  spdc_cmd->add_option("--summary", spdc_json, "JSON summary path");

  // diagrams
  auto* diag_cmd =
      app.add_subcommand("diagrams", "Enumerate and evaluate chi^(2) diagrams");
  int diag_order = 1;
  bool diag_list = false;
  std::string diag_scenario, diag_out = "-";
  diag_cmd->add_option("--order", diag_order, "number of vertices (0, 1, 2)");
  diag_cmd->add_flag("--list", diag_list, "print canonical diagrams as ASCII");
  diag_cmd->add_option("--evaluate", diag_scenario,
                       "scenario file with medium/pump/kinematics/detectors");
  diag_cmd->add_option("-o,--output", diag_out, "output ('-' = stdout)");

  // squeeze
  auto* sq_cmd =
      app.add_subcommand("squeeze", "Squeezing parameter of the SPDC output");
  std::string sq_scenario, sq_csv, sq_out = "-";
  sq_cmd->add_option("scenario", sq_scenario, "scenario file")->required();
  sq_cmd->add_option("--csv", sq_csv, "also write an s(L) CSV sweep here");
  sq_cmd->add_option("-o,--output", sq_out, "output JSON ('-' = stdout)");

  // run
  auto* run_cmd = app.add_subcommand("run", "Execute a scenario file");
  std::string run_scenario_path, run_dir = ".";
  run_cmd->add_option("scenario", run_scenario_path, "scenario file")->required();
  run_cmd->add_option("--output-dir", run_dir, "directory for artifacts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eps_cmd) {
      return run_epsilon(eps_model, eps_g, eps_wmin, eps_wmax, eps_points,
                         eps_out);
    }
    if (*prop_cmd) {
      return run_propagator(p_omega, p_nre, p_nim, p_xmin, p_xmax, p_points,
                            p_y, p_numeric, p_out);
    }
    if (*spdc_cmd) {
      return run_spdc(spdc_L, spdc_dk, spdc_points, spdc_csv, spdc_json);
    }
    if (*diag_cmd) {
      return run_diagrams(diag_order, diag_list, diag_scenario, diag_out);
    }
    if (*sq_cmd) return run_squeeze(sq_scenario, sq_csv, sq_out);
    if (*run_cmd) {
      const Scenario s = parse_scenario_file(run_scenario_path);
      const RunResult r = run_scenario(s, run_dir);
      for (const std::string& a : r.artifacts) std::cout << a << "\n";
      return 0;
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
