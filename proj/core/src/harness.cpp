#include "revival/harness.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace revival {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<const char*, 4> kBasisLabels = {"HH", "HV", "VH", "VV"};

DensityMatrix4 build_state(const ScenarioConfig& cfg, Complex kappa_a,
                           Complex kappa_b) {
  if (cfg.scenario == ScenarioKind::maximal) {
    return state_maximal(KappaParam(kappa_b));
  }
  return state_partial(KappaParam(kappa_a), KappaParam(kappa_b));
}

ordered_json angles_json(const AngleSet& a) {
  return ordered_json{{"theta1_deg", a.theta1_deg},
                      {"theta1p_deg", a.theta1p_deg},
                      {"theta2_deg", a.theta2_deg},
                      {"theta2p_deg", a.theta2p_deg}};
}

ordered_json complex_json(Complex v) {
  return ordered_json{{"re", v.real()}, {"im", v.imag()}};
}

Complex scenario_kappa_b_estimate(const ScenarioConfig& cfg,
                                  const DensityMatrix4& rho) {
  // In both families a single matrix element carries kappa_b: (VV,HH) = kb/2
  // for the maximal state, (HV,HH) = kb/4 for the partial one.
  if (cfg.scenario == ScenarioKind::maximal) {
    return 2.0 * rho(3, 0);
  }
  return 4.0 * rho(1, 0);
}

ordered_json counts_json(const std::vector<CountRecord>& counts) {
  ordered_json arr = ordered_json::array();
  for (const CountRecord& r : counts) {
    const MeasurementSetting& s =
        settings_16()[static_cast<std::size_t>(r.setting_id)];
    arr.push_back(ordered_json{
        {"setting_id", r.setting_id},
        {"analyzer_a", std::string(1, analyzer_label(s.analyzer_a))},
        {"analyzer_b", std::string(1, analyzer_label(s.analyzer_b))},
        {"count", r.count}});
  }
  return arr;
}

}  // namespace

Complex kappa_b_at(const ScenarioConfig& cfg, const Spectrum& s, double x) {
  if (cfg.kernel_strict_literal) {
    return kernel_literal(s, x, cfg.birefringence.delta_n);
  }
  return kernel(s, x);
}

DensityMatrix4 model_state(const ScenarioConfig& cfg, double x) {
  const Spectrum s = resolve_spectrum(cfg);
  const Complex kb = kappa_b_at(cfg, s, x);
  const Complex ka = cfg.scenario == ScenarioKind::partial
                         ? resolve_kappa_a(cfg)
                         : Complex(0.0, 0.0);
  return build_state(cfg, ka, kb);
}

SweepResult run_sweep(const ScenarioConfig& cfg) {
  const Spectrum s = resolve_spectrum(cfg);
  const Complex ka = cfg.scenario == ScenarioKind::partial
                         ? resolve_kappa_a(cfg)
                         : Complex(0.0, 0.0);

  SweepResult result;
  const auto points = static_cast<long long>(
      std::floor((cfg.sweep.x_max - cfg.sweep.x_min) / cfg.sweep.step + 1e-9));
  result.rows.reserve(static_cast<std::size_t>(points) + 1);

  for (long long k = 0; k <= points; ++k) {
    SweepRow row;
    row.x = cfg.sweep.x_min + static_cast<double>(k) * cfg.sweep.step;
    row.kappa_b = kappa_b_at(cfg, s, row.x);
    const DensityMatrix4 state = build_state(cfg, ka, row.kappa_b);
    row.gamma = gamma(state);
    row.concurrence = std::max(0.0, row.gamma);
    if (cfg.scenario == ScenarioKind::partial) {
      row.polarization = degree_of_polarization(state);
    }
    if (cfg.sweep_with_chsh) {
      row.s_chsh = cfg.chsh.optimize
                       ? optimize_chsh_linear(state).s
                       : chsh_s(state, cfg.chsh.angles);
    }
    result.rows.push_back(row);
  }

  result.crossings = find_crossings(
      [&](double x) {
        return gamma(build_state(cfg, ka, kappa_b_at(cfg, s, x)));
      },
      cfg.sweep.x_min, cfg.sweep.x_max, cfg.sweep.step);
  return result;
}

TomographyReport run_tomography(const ScenarioConfig& cfg, double x) {
  const DensityMatrix4 model = model_state(cfg, x);
  const std::vector<CountRecord> counts =
      simulate_counts(model, cfg.tomography.n_per_setting, cfg.tomography.seed,
                      cfg.tomography.noiseless);
  const DensityMatrix4 reconstructed = mle_reconstruct(counts);

  TomographyReport report;
  report.x = x;
  report.n_per_setting = cfg.tomography.n_per_setting;
  report.seed = cfg.tomography.seed;
  report.noiseless = cfg.tomography.noiseless;
  report.fidelity_to_model = fidelity(reconstructed, model);
  report.concurrence_model = concurrence(model);
  report.kappa_b_model = scenario_kappa_b_estimate(cfg, model);
  report.kappa_b_reconstructed = scenario_kappa_b_estimate(cfg, reconstructed);
  report.concurrence_reconstructed = concurrence(reconstructed);
  report.nll = poisson_nll(counts, reconstructed);
  report.counts = counts;
  return report;
}

TomographyReport reconstruct_counts(const std::vector<CountRecord>& counts) {
  const DensityMatrix4 reconstructed = mle_reconstruct(counts);
  TomographyReport report;
  report.concurrence_reconstructed = concurrence(reconstructed);
  report.nll = poisson_nll(counts, reconstructed);
  report.counts = counts;
  return report;
}

ChshReport run_chsh(const ScenarioConfig& cfg, double x) {
  const DensityMatrix4 state = model_state(cfg, x);
  ChshReport report;
  report.x = x;
  report.fixed_angles = cfg.chsh.angles;
  report.s_fixed = chsh_s(state, cfg.chsh.angles);
  report.fixed_violates = report.s_fixed > 2.0;
  if (cfg.chsh.optimize) {
    report.optimum = optimize_chsh_linear(state);
    report.optimum_violates = report.optimum->s > 2.0;
  }
  report.smax_algebraic = horodecki_smax(state);
  return report;
}

// --- serialization --------------------------------------------------------

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", v);
  return buffer;
}

void write_sweep_csv(std::ostream& out, const ScenarioConfig& cfg,
                     const SweepResult& result) {
  out << "x,re_kappa_b,im_kappa_b,abs_kappa_b,gamma,concurrence";
  if (cfg.scenario == ScenarioKind::partial) out << ",polarization";
  if (cfg.sweep_with_chsh) out << ",s_chsh";
  out << "\n";
  for (const SweepRow& row : result.rows) {
    out << format_double(row.x) << ',' << format_double(row.kappa_b.real())
        << ',' << format_double(row.kappa_b.imag()) << ','
        << format_double(std::abs(row.kappa_b)) << ','
        << format_double(row.gamma) << ',' << format_double(row.concurrence);
    if (row.polarization) out << ',' << format_double(*row.polarization);
    if (row.s_chsh) out << ',' << format_double(*row.s_chsh);
    out << "\n";
  }
}

std::string sweep_csv(const ScenarioConfig& cfg, const SweepResult& result) {
  std::ostringstream out;
  write_sweep_csv(out, cfg, result);
  return out.str();
}

std::string crossings_json(const CrossingReport& report) {
  ordered_json arr = ordered_json::array();
  for (const Crossing& c : report.crossings) {
    arr.push_back(ordered_json{
        {"x", c.x},
        {"kind", c.kind == CrossingKind::death ? "death" : "revival"}});
  }
  return ordered_json{{"crossings", arr}}.dump(2) + "\n";
}

std::string state_json(const ScenarioConfig& cfg, double x) {
  const Spectrum s = resolve_spectrum(cfg);
  const Complex kb = kappa_b_at(cfg, s, x);
  const DensityMatrix4 state = model_state(cfg, x);

  ordered_json real_part = ordered_json::array();
  ordered_json imag_part = ordered_json::array();
  for (int i = 0; i < 4; ++i) {
    ordered_json re_row = ordered_json::array();
    ordered_json im_row = ordered_json::array();
    for (int j = 0; j < 4; ++j) {
      re_row.push_back(state(i, j).real());
      im_row.push_back(state(i, j).imag());
    }
    real_part.push_back(re_row);
    imag_part.push_back(im_row);
  }

  ordered_json doc{{"scenario", cfg.name},
                   {"x", x},
                   {"lambda0_nm", cfg.lambda0_nm},
                   {"kappa_b", complex_json(kb)},
                   {"basis", kBasisLabels},
                   {"real", real_part},
                   {"imag", imag_part}};
  return doc.dump(2) + "\n";
}

std::string tomography_json(const TomographyReport& report) {
  ordered_json doc = ordered_json::object();
  if (report.x) doc["x"] = *report.x;
  if (report.n_per_setting) doc["n_per_setting"] = *report.n_per_setting;
  if (report.seed) doc["seed"] = *report.seed;
  doc["noiseless"] = report.noiseless;
  if (report.fidelity_to_model) doc["fidelity_to_model"] = *report.fidelity_to_model;
  if (report.concurrence_model) doc["concurrence_model"] = *report.concurrence_model;
  if (report.kappa_b_model) doc["kappa_b_model"] = complex_json(*report.kappa_b_model);
  if (report.kappa_b_reconstructed) {
    doc["kappa_b_reconstructed"] = complex_json(*report.kappa_b_reconstructed);
    doc["abs_kappa_b_reconstructed"] = std::abs(*report.kappa_b_reconstructed);
  }
  doc["concurrence_reconstructed"] = report.concurrence_reconstructed;
  doc["nll"] = report.nll;
  doc["counts"] = counts_json(report.counts);
  return doc.dump(2) + "\n";
}

std::string chsh_json(const ChshReport& report) {
  ordered_json doc{{"x", report.x},
                   {"fixed_angles", angles_json(report.fixed_angles)},
                   {"s_fixed", report.s_fixed},
                   {"fixed_violates_classical_bound", report.fixed_violates}};
  if (report.optimum) {
    doc["optimized_angles"] = angles_json(report.optimum->angles);
    doc["s_optimized"] = report.optimum->s;
    doc["optimized_violates_classical_bound"] = report.optimum_violates;
  }
  doc["smax_algebraic"] = report.smax_algebraic;
  return doc.dump(2) + "\n";
}

void write_spectrum_table(std::ostream& out, const Spectrum& s) {
  out << "lambda0_nm = " << format_double(s.lambda0_nm()) << "\n";
  out << "A_j, lambda_nm, sigma_nm\n";
  for (const SpectralLine& line : s.lines()) {
    out << format_double(line.amplitude) << ", " << format_double(line.center_nm)
        << ", " << format_double(line.sigma_nm) << "\n";
  }
}

std::string spectrum_table(const Spectrum& s) {
  std::ostringstream out;
  write_spectrum_table(out, s);
  return out.str();
}

Spectrum read_spectrum_table(std::istream& in) {
  std::string line;
  double lambda0 = 0.0;
  bool have_lambda0 = false;
  bool have_header = false;
  std::vector<SpectralLine> lines;

  while (std::getline(in, line)) {
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    std::string content = line;
    content.erase(0, content.find_first_not_of(" \t\r"));
    while (!content.empty() &&
           (content.back() == ' ' || content.back() == '\t' ||
            content.back() == '\r')) {
      content.pop_back();
    }
    if (content.empty()) continue;

    if (!have_lambda0) {
      if (content.rfind("lambda0_nm", 0) != 0) {
        throw ConfigError("spectrum table must start with a lambda0_nm line");
      }
      std::string rest = content.substr(10);
      const auto eq = rest.find('=');
      if (eq != std::string::npos) rest = rest.substr(eq + 1);
      try {
        lambda0 = std::stod(rest);
      } catch (const std::exception&) {
        throw ConfigError("bad lambda0_nm value in spectrum table");
      }
      have_lambda0 = true;
      continue;
    }
    if (!have_header) {
      std::string squashed;
      for (char c : content) {
        if (c != ' ' && c != '\t') squashed.push_back(c);
      }
      if (squashed != "A_j,lambda_nm,sigma_nm") {
        throw ConfigError("spectrum table header must be 'A_j, lambda_nm, sigma_nm'");
      }
      have_header = true;
      continue;
    }

    std::stringstream ss(content);
    std::string field;
    std::array<double, 3> values{};
    int i = 0;
    while (std::getline(ss, field, ',')) {
      if (i >= 3) throw ConfigError("spectrum table row has too many fields");
      try {
        values[static_cast<std::size_t>(i++)] = std::stod(field);
      } catch (const std::exception&) {
        throw ConfigError("bad number '" + field + "' in spectrum table");
      }
    }
    if (i != 3) throw ConfigError("spectrum table row needs three fields");
    lines.push_back({values[0], values[1], values[2]});
  }

  if (!have_lambda0 || !have_header) {
    throw ConfigError("incomplete spectrum table");
  }
  return Spectrum(std::move(lines), lambda0);
}

void write_counts_csv(std::ostream& out, const std::vector<CountRecord>& counts) {
  out << "setting_id,analyzer_a,analyzer_b,count\n";
  for (const CountRecord& r : counts) {
    const MeasurementSetting& s =
        settings_16()[static_cast<std::size_t>(r.setting_id)];
    out << r.setting_id << ',' << analyzer_label(s.analyzer_a) << ','
        << analyzer_label(s.analyzer_b) << ',' << r.count << "\n";
  }
}

std::string counts_csv(const std::vector<CountRecord>& counts) {
  std::ostringstream out;
  write_counts_csv(out, counts);
  return out.str();
}

std::vector<CountRecord> read_counts_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ProtocolError("empty counts file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "setting_id,analyzer_a,analyzer_b,count") {
    throw ProtocolError(
        "counts file header must be 'setting_id,analyzer_a,analyzer_b,count'");
  }

  std::vector<CountRecord> records;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string id_field;
    std::string a_field;
    std::string b_field;
    std::string count_field;
    if (!std::getline(ss, id_field, ',') || !std::getline(ss, a_field, ',') ||
        !std::getline(ss, b_field, ',') || !std::getline(ss, count_field)) {
      throw ProtocolError("malformed counts row '" + line + "'");
    }
    CountRecord r;
    try {
      r.setting_id = std::stoi(id_field);
      r.count = std::stoll(count_field);
    } catch (const std::exception&) {
      throw ProtocolError("malformed counts row '" + line + "'");
    }
    if (r.setting_id < 0 || r.setting_id > 15) {
      throw ProtocolError("setting id out of range in counts file: " + id_field);
    }
    const MeasurementSetting& s =
        settings_16()[static_cast<std::size_t>(r.setting_id)];
    if (a_field.size() != 1 || b_field.size() != 1 ||
        analyzer_from_label(a_field[0]) != s.analyzer_a ||
        analyzer_from_label(b_field[0]) != s.analyzer_b) {
      throw ProtocolError("analyzer labels do not match setting id " +
                          std::to_string(r.setting_id));
    }
    records.push_back(r);
  }
  return records;
}

}  // namespace revival
