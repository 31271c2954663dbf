#include "chi2opt/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "chi2opt/constants.hpp"
#include "chi2opt/errors.hpp"
#include "chi2opt/squeezing.hpp"

namespace chi2opt {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed) {
      if (item.key() == k) { ok = true; break; }
    }
    if (!ok) {
      throw ValidationError("scenario: unknown key '" + where + item.key() + "'");
    }
  }
}

double require_number(const json& obj, const std::string& where,
                      const char* key) {
  if (!obj.contains(key)) {
    throw ValidationError("scenario: missing key '" + where + key + "'");
  }
  if (!obj[key].is_number()) {
    throw ValidationError("scenario: '" + where + key + "' must be a number");
  }
  return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& where, const char* key,
                 double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw ValidationError("scenario: '" + where + key + "' must be a number");
  }
  return obj[key].get<double>();
}

// Resolves a sweep parameter path to a mutable field. "kinematics.delta_k"
// is a virtual path that retunes k_p so that k_p + k_s + k_i hits the value.
void apply_path(Scenario& s, const std::string& path, double value) {
  if (path == "medium.chi2") { s.chi2 = value; return; }
  if (path == "medium.x_start") { s.x_start = value; return; }
  if (path == "medium.x_end") { s.x_end = value; return; }
  if (path == "medium.length") { s.x_end = s.x_start + value; return; }
  if (path == "pump.amplitude") { s.pump.amplitude = value; return; }
  if (path == "pump.phase") { s.pump.phase = value; return; }
  if (path == "pump.omega") { s.pump.omega_p = value; return; }
  if (path == "pump.k") { s.pump.k_p = value; return; }
  if (path == "kinematics.omega_s") { s.kin.omega_s = value; return; }
  if (path == "kinematics.omega_i") { s.kin.omega_i = value; return; }
  if (path == "kinematics.k_s") { s.kin.k_s = value; return; }
  if (path == "kinematics.k_i") { s.kin.k_i = value; return; }
  if (path == "kinematics.delta_k") {
    s.pump.k_p = value - s.kin.k_s - s.kin.k_i;
    return;
  }
  if (path == "detectors.x") { s.detector_x = value; return; }
  if (path == "detectors.y") { s.detector_y = value; return; }
  throw ValidationError("scenario: sweep path '" + path +
                        "' does not resolve to a numeric field");
}

double sweep_value(const SweepSpec& sw, int i) {
  const double t = sw.points == 1 ? 0.0 : double(i) / (sw.points - 1);
  if (sw.log_scale) {
    return sw.start * std::pow(sw.stop / sw.start, t);
  }
  return sw.start + (sw.stop - sw.start) * t;
}

void write_atomic(const fs::path& target, const std::string& bytes) {
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open output file: " + tmp.string());
    out << bytes;
  }
  fs::rename(tmp, target);
}

struct QuantityRow {
  std::vector<double> values;  // quantity columns for one sweep point
};

std::vector<std::string> quantity_columns(const std::string& quantity) {
  if (quantity == "spdc_probability") return {"P"};
  if (quantity == "squeezing") return {"s", "theta"};
  if (quantity == "biphoton") return {"re_X", "im_X"};
  throw ValidationError("scenario: unknown quantity '" + quantity + "'");
}

QuantityRow evaluate_quantity(const Scenario& point,
                              const std::string& quantity) {
  if (quantity == "spdc_probability") {
    const double L = point.x_end - point.x_start;
    const double dk =
        (point.pump.k_p + point.kin.k_s + point.kin.k_i).real();
    return {{spdc_probability(L, dk)}};
  }
  if (quantity == "squeezing") {
    ThreeWaveKinematics kin = point.kinematics();
    const SqueezingParameter p = squeezing_1d_closed_form(
        point.chi2, point.pump, point.x_end - point.x_start, kin,
        point.detector_x, point.detector_y);
    return {{p.s, p.theta}};
  }
  if (quantity == "biphoton") {
    const Complex X = biphoton_1d_analytic(point.medium(), point.kinematics(),
                                           point.detector_x, point.detector_y);
    return {{X.real(), X.imag()}};
  }
  throw ValidationError("scenario: unknown quantity '" + quantity + "'");
}

}  // namespace

Chi2Medium Scenario::medium() const {
  return Chi2Medium::homogeneous(chi2, x_start, x_end);
}

ThreeWaveKinematics Scenario::kinematics() const {
  ThreeWaveKinematics k = kin;
  k.pump = pump;
  return k;
}

Scenario parse_scenario(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario: parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("scenario: document must be an object");
  check_keys(doc, "", {"medium", "pump", "kinematics", "detectors", "sweeps", "outputs"});

  Scenario s;
  s.raw_document = document;

  if (!doc.contains("medium") || !doc["medium"].is_object()) {
    throw ValidationError("scenario: missing 'medium' table");
  }
  const json& med = doc["medium"];
  check_keys(med, "medium.", {"chi2", "x_start", "x_end"});
  s.chi2 = number_or(med, "medium.", "chi2", 0.0);
  s.x_start = number_or(med, "medium.", "x_start", 0.0);
  s.x_end = require_number(med, "medium.", "x_end");
  if (!(s.x_start < s.x_end)) {
    throw ValidationError("scenario: medium.x_start must be < medium.x_end");
  }

  if (!doc.contains("pump") || !doc["pump"].is_object()) {
    throw ValidationError("scenario: missing 'pump' table");
  }
  const json& pump = doc["pump"];
  check_keys(pump, "pump.", {"amplitude", "phase", "omega", "k"});
  s.pump.omega_p = require_number(pump, "pump.", "omega");
  s.pump.amplitude = number_or(pump, "pump.", "amplitude", 1.0);
  s.pump.phase = number_or(pump, "pump.", "phase", 0.0);
  s.pump.k_p = number_or(pump, "pump.", "k", s.pump.omega_p / constants::c0);
  s.pump.validate();

  if (doc.contains("kinematics")) {
    const json& kin = doc["kinematics"];
    check_keys(kin, "kinematics.", {"omega_s", "omega_i", "k_s", "k_i"});
    s.kin.omega_s = number_or(kin, "kinematics.", "omega_s", 0.5 * s.pump.omega_p);
    s.kin.omega_i = number_or(kin, "kinematics.", "omega_i", 0.5 * s.pump.omega_p);
    s.kin.k_s = number_or(kin, "kinematics.", "k_s", -0.5 * s.pump.k_p.real());
    s.kin.k_i = number_or(kin, "kinematics.", "k_i", -0.5 * s.pump.k_p.real());
  } else {
    // degenerate, phase-matched counter-propagating defaults
    s.kin.omega_s = s.kin.omega_i = 0.5 * s.pump.omega_p;
    s.kin.k_s = s.kin.k_i = -0.5 * s.pump.k_p.real();
  }
  s.kin.pump = s.pump;
  s.kin.validate();

  const double L = s.x_end - s.x_start;
  s.detector_x = s.x_start - L;
  s.detector_y = s.x_start - 2.0 * L;
  if (doc.contains("detectors")) {
    const json& det = doc["detectors"];
    check_keys(det, "detectors.", {"x", "y"});
    s.detector_x = number_or(det, "detectors.", "x", s.detector_x);
    s.detector_y = number_or(det, "detectors.", "y", s.detector_y);
  }

  if (doc.contains("sweeps")) {
    if (!doc["sweeps"].is_array()) {
      throw ValidationError("scenario: 'sweeps' must be an array");
    }
    for (const json& sw : doc["sweeps"]) {
      check_keys(sw, "sweeps[].", {"path", "start", "stop", "points", "scale"});
      SweepSpec spec;
      if (!sw.contains("path") || !sw["path"].is_string()) {
        throw ValidationError("scenario: sweeps[].path must be a string");
      }
      spec.path = sw["path"].get<std::string>();
      spec.start = require_number(sw, "sweeps[].", "start");
      spec.stop = require_number(sw, "sweeps[].", "stop");
      spec.points = static_cast<int>(require_number(sw, "sweeps[].", "points"));
      if (spec.points < 2) {
        throw ValidationError("scenario: sweeps[].points must be >= 2");
      }
      if (sw.contains("scale")) {
        const std::string scale = sw["scale"].get<std::string>();
        if (scale == "log") {
          spec.log_scale = true;
          if (spec.start <= 0.0 || spec.stop <= 0.0) {
            throw ValidationError("scenario: log sweep requires positive endpoints");
          }
        } else if (scale != "linear") {
          throw ValidationError("scenario: sweeps[].scale must be linear or log");
        }
      }
      // prove the path resolves before accepting the scenario
      Scenario probe = s;
      apply_path(probe, spec.path, spec.start);
      s.sweeps.push_back(spec);
    }
  }

  if (doc.contains("outputs")) {
    if (!doc["outputs"].is_array()) {
      throw ValidationError("scenario: 'outputs' must be an array");
    }
    for (const json& out : doc["outputs"]) {
      check_keys(out, "outputs[].", {"quantity", "format", "path"});
      OutputSpec spec;
      for (const char* key : {"quantity", "format", "path"}) {
        if (!out.contains(key) || !out[key].is_string()) {
          throw ValidationError(std::string("scenario: outputs[].") + key +
                                " must be a string");
        }
      }
      spec.quantity = out["quantity"].get<std::string>();
      spec.format = out["format"].get<std::string>();
      spec.path = out["path"].get<std::string>();
      quantity_columns(spec.quantity);  // validates the name
      if (spec.format != "csv" && spec.format != "json") {
        throw ValidationError("scenario: outputs[].format must be csv or json");
      }
      s.outputs.push_back(spec);
    }
  }

  return s;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunResult run_scenario(const Scenario& s, const std::string& output_dir) {
  const auto t0 = std::chrono::steady_clock::now();

  // Cartesian product of all sweep axes, row-major in declaration order.
  std::size_t n_points = 1;
  for (const SweepSpec& sw : s.sweeps) n_points *= sw.points;

  auto point_settings = [&](std::size_t flat) {
    std::vector<double> values(s.sweeps.size());
    for (std::size_t a = s.sweeps.size(); a-- > 0;) {
      values[a] = sweep_value(s.sweeps[a], static_cast<int>(flat % s.sweeps[a].points));
      flat /= s.sweeps[a].points;
    }
    return values;
  };

  RunResult result;
  fs::create_directories(output_dir);

  for (const OutputSpec& out : s.outputs) {
    // Worker pool over sweep points; assembly stays ordered by index.
    std::vector<std::vector<double>> sweep_vals(n_points);
    std::vector<QuantityRow> rows(n_points);
    std::vector<std::string> errors(n_points);

    const unsigned n_workers = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()),
        static_cast<unsigned>(std::min<std::size_t>(n_points, 16)));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n_points; i += n_workers) {
          try {
            sweep_vals[i] = point_settings(i);
            Scenario point = s;
            for (std::size_t a = 0; a < s.sweeps.size(); ++a) {
              apply_path(point, s.sweeps[a].path, sweep_vals[i][a]);
            }
            point.kin.pump = point.pump;
            rows[i] = evaluate_quantity(point, out.quantity);
          } catch (const std::exception& e) {
            errors[i] = e.what();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const std::string& e : errors) {
      if (!e.empty()) throw NumericalError("run_scenario: " + e);
    }

    const std::vector<std::string> cols = quantity_columns(out.quantity);
    const fs::path target = fs::path(out.path).is_absolute()
                                ? fs::path(out.path)
                                : fs::path(output_dir) / out.path;
    std::ostringstream body;
    if (out.format == "csv") {
      body << "# chi2opt " << kToolVersion << " quantity=" << out.quantity
           << " units=SI,hbar=1\n";
      body << "# columns:";
      for (const SweepSpec& sw : s.sweeps) body << " " << sw.path;
      for (const std::string& c : cols) body << " " << c;
      body << "\n";
      for (std::size_t i = 0; i < n_points; ++i) {
        bool first = true;
        for (double v : sweep_vals[i]) {
          body << (first ? "" : ",") << format_double(v);
          first = false;
        }
        for (double v : rows[i].values) {
          body << (first ? "" : ",") << format_double(v);
          first = false;
        }
        body << "\n";
      }
    } else {
      json arr = json::array();
      for (std::size_t i = 0; i < n_points; ++i) {
        json rec;
        for (std::size_t a = 0; a < s.sweeps.size(); ++a) {
          rec[s.sweeps[a].path] = sweep_vals[i][a];
        }
        for (std::size_t c = 0; c < cols.size(); ++c) {
          rec[cols[c]] = rows[i].values[c];
        }
        arr.push_back(rec);
      }
      json root;
      root["tool"] = "chi2opt";
      root["version"] = kToolVersion;
      root["quantity"] = out.quantity;
      root["units"] = "SI, hbar = 1";
      root["rows"] = arr;
      body << root.dump(2) << "\n";
    }
    write_atomic(target, body.str());
    result.artifacts.push_back(target.string());
  }

  const auto t1 = std::chrono::steady_clock::now();
  result.wall_time_s = std::chrono::duration<double>(t1 - t0).count();

  json manifest;
  manifest["tool"] = "chi2opt";
  manifest["version"] = kToolVersion;
  manifest["input_hash_fnv1a"] = fnv1a_hex(s.raw_document);
  manifest["units"] = "SI, hbar = 1";
  manifest["wall_time_s"] = result.wall_time_s;
  manifest["artifacts"] = result.artifacts;
  const fs::path manifest_path = fs::path(output_dir) / "run_manifest.json";
  write_atomic(manifest_path, manifest.dump(2) + "\n");
  result.artifacts.push_back(manifest_path.string());

  return result;
}

}  // namespace chi2opt
