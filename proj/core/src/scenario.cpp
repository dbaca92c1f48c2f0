#include "revival/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "revival/harness.hpp"

namespace revival {

namespace {

struct Line {
  int number;
  std::string key;
  std::string value;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& message) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + message);
}

double parse_double(const Line& l, const std::string& origin) {
  try {
    std::size_t used = 0;
    const double v = std::stod(l.value, &used);
    if (trim(l.value.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  fail(origin, l.number, "expected a number for '" + l.key + "', got '" +
                             l.value + "'");
}

long long parse_int(const Line& l, const std::string& origin) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(l.value, &used);
    if (trim(l.value.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  fail(origin, l.number, "expected an integer for '" + l.key + "', got '" +
                             l.value + "'");
}

bool parse_bool(const Line& l, const std::string& origin) {
  if (l.value == "true" || l.value == "1") return true;
  if (l.value == "false" || l.value == "0") return false;
  fail(origin, l.number, "expected true/false for '" + l.key + "', got '" +
                             l.value + "'");
}

SpectralLine parse_line_triple(const Line& l, const std::string& origin) {
  std::array<double, 3> values{};
  std::stringstream ss(l.value);
  std::string field;
  int i = 0;
  while (std::getline(ss, field, ',')) {
    if (i >= 3) fail(origin, l.number, "expected 'A, lambda_nm, sigma_nm'");
    try {
      values[static_cast<std::size_t>(i++)] = std::stod(trim(field));
    } catch (const std::exception&) {
      fail(origin, l.number, "bad number '" + trim(field) + "' in '" + l.key + "'");
    }
  }
  if (i != 3) fail(origin, l.number, "expected 'A, lambda_nm, sigma_nm'");
  return {values[0], values[1], values[2]};
}

}  // namespace

AngleSet default_fixed_angles() {
  return {-86.25, 60.75, -85.5, 76.5};
}

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig cfg;
  cfg.name = name;
  cfg.chsh.angles = default_fixed_angles();

  const auto lines = [](double sigma) {
    return std::vector<SpectralLine>{{0.37, 778.853, sigma},
                                     {0.44, 780.160, sigma},
                                     {0.19, 781.459, sigma}};
  };
  if (name == "fig2a") {
    cfg.scenario = ScenarioKind::maximal;
    cfg.spectrum.inline_lines = Spectrum(lines(0.9), 780.0);
  } else if (name == "fig2b") {
    cfg.scenario = ScenarioKind::partial;
    cfg.spectrum.inline_lines = Spectrum(lines(0.85), 780.0);
    cfg.kappa_a.direct = 0.607;
  } else {
    throw ConfigError("unknown preset '" + name + "' (available: fig2a, fig2b)");
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& origin) {
  ScenarioConfig cfg;
  cfg.chsh.angles = default_fixed_angles();

  std::map<int, std::pair<int, SpectralLine>> inline_lines;  // index -> (line#, value)
  std::istringstream stream(text);
  std::string raw;
  int number = 0;
  while (std::getline(stream, raw)) {
    ++number;
    const auto comment = raw.find('#');
    if (comment != std::string::npos) raw.erase(comment);
    const std::string content = trim(raw);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      fail(origin, number, "expected 'key = value'");
    }
    Line l{number, trim(content.substr(0, eq)), trim(content.substr(eq + 1))};
    if (l.key.empty()) fail(origin, number, "empty key");

    if (l.key == "name") {
      cfg.name = l.value;
    } else if (l.key == "scenario") {
      if (l.value == "maximal") {
        cfg.scenario = ScenarioKind::maximal;
      } else if (l.value == "partial") {
        cfg.scenario = ScenarioKind::partial;
      } else {
        fail(origin, number, "scenario must be 'maximal' or 'partial'");
      }
    } else if (l.key == "lambda0_nm") {
      cfg.lambda0_nm = parse_double(l, origin);
    } else if (l.key.rfind("spectrum.line.", 0) == 0) {
      int index = 0;
      try {
        index = std::stoi(l.key.substr(14));
      } catch (const std::exception&) {
        fail(origin, number, "bad spectrum line index in '" + l.key + "'");
      }
      if (!inline_lines.emplace(index, std::make_pair(number, parse_line_triple(l, origin))).second) {
        fail(origin, number, "duplicate key '" + l.key + "'");
      }
    } else if (l.key == "spectrum.file") {
      cfg.spectrum.file = l.value;
    } else if (l.key == "spectrum.envelope.center_nm") {
      if (!cfg.spectrum.envelope) cfg.spectrum.envelope.emplace();
      cfg.spectrum.envelope->center_nm = parse_double(l, origin);
    } else if (l.key == "spectrum.envelope.sigma_nm") {
      if (!cfg.spectrum.envelope) cfg.spectrum.envelope.emplace();
      cfg.spectrum.envelope->sigma_nm = parse_double(l, origin);
    } else if (l.key == "spectrum.cavity.thickness_nm") {
      if (!cfg.spectrum.cavity) cfg.spectrum.cavity.emplace();
      cfg.spectrum.cavity->optical_thickness_nm = parse_double(l, origin);
    } else if (l.key == "spectrum.cavity.reflectivity") {
      if (!cfg.spectrum.cavity) cfg.spectrum.cavity.emplace();
      cfg.spectrum.cavity->reflectivity = parse_double(l, origin);
    } else if (l.key == "spectrum.max_lines") {
      cfg.spectrum.max_lines = static_cast<int>(parse_int(l, origin));
    } else if (l.key == "kappa_a.value") {
      cfg.kappa_a.direct = parse_double(l, origin);
    } else if (l.key == "kappa_a.envelope.center_nm") {
      if (!cfg.kappa_a.envelope) cfg.kappa_a.envelope.emplace();
      cfg.kappa_a.envelope->center_nm = parse_double(l, origin);
    } else if (l.key == "kappa_a.envelope.sigma_nm") {
      if (!cfg.kappa_a.envelope) cfg.kappa_a.envelope.emplace();
      cfg.kappa_a.envelope->sigma_nm = parse_double(l, origin);
    } else if (l.key == "kappa_a.x") {
      cfg.kappa_a.x_a = parse_double(l, origin);
    } else if (l.key == "sweep.x_min") {
      cfg.sweep.x_min = parse_double(l, origin);
    } else if (l.key == "sweep.x_max") {
      cfg.sweep.x_max = parse_double(l, origin);
    } else if (l.key == "sweep.step") {
      cfg.sweep.step = parse_double(l, origin);
    } else if (l.key == "sweep.with_chsh") {
      cfg.sweep_with_chsh = parse_bool(l, origin);
    } else if (l.key == "tomography.n_per_setting") {
      cfg.tomography.n_per_setting = parse_int(l, origin);
    } else if (l.key == "tomography.seed") {
      cfg.tomography.seed = static_cast<std::uint64_t>(parse_int(l, origin));
    } else if (l.key == "tomography.noiseless") {
      cfg.tomography.noiseless = parse_bool(l, origin);
    } else if (l.key == "chsh.optimize") {
      cfg.chsh.optimize = parse_bool(l, origin);
    } else if (l.key == "chsh.theta1_deg") {
      cfg.chsh.angles.theta1_deg = parse_double(l, origin);
    } else if (l.key == "chsh.theta1p_deg") {
      cfg.chsh.angles.theta1p_deg = parse_double(l, origin);
    } else if (l.key == "chsh.theta2_deg") {
      cfg.chsh.angles.theta2_deg = parse_double(l, origin);
    } else if (l.key == "chsh.theta2p_deg") {
      cfg.chsh.angles.theta2p_deg = parse_double(l, origin);
    } else if (l.key == "kernel.strict_literal") {
      cfg.kernel_strict_literal = parse_bool(l, origin);
    } else if (l.key == "birefringence.delta_n") {
      cfg.birefringence.delta_n = parse_double(l, origin);
    } else if (l.key == "birefringence.n_ordinary") {
      cfg.birefringence.n_ordinary = parse_double(l, origin);
    } else if (l.key == "birefringence.n_extraordinary") {
      cfg.birefringence.n_extraordinary = parse_double(l, origin);
    } else if (l.key == "output.csv") {
      cfg.output_csv = l.value;
    } else if (l.key == "output.json") {
      cfg.output_json = l.value;
    } else {
      fail(origin, number, "unknown key '" + l.key + "'");
    }
  }

  if (!inline_lines.empty()) {
    std::vector<SpectralLine> lines;
    int expected = 0;
    for (const auto& [index, entry] : inline_lines) {
      if (index != expected) {
        fail(origin, entry.first,
             "spectrum line indices must be contiguous from 0; found " +
                 std::to_string(index));
      }
      lines.push_back(entry.second);
      ++expected;
    }
    try {
      cfg.spectrum.inline_lines = Spectrum(std::move(lines), cfg.lambda0_nm);
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ": " + e.what());
    }
  }

  validate(cfg);
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

void validate(const ScenarioConfig& cfg) {
  if (cfg.lambda0_nm <= 0.0) {
    throw ConfigError("lambda0_nm must be positive");
  }

  const int sources = (cfg.spectrum.inline_lines ? 1 : 0) +
                      (cfg.spectrum.file ? 1 : 0) +
                      (cfg.spectrum.envelope || cfg.spectrum.cavity ? 1 : 0);
  if (sources != 1) {
    throw ConfigError(
        "exactly one spectrum source required: inline lines, spectrum.file, or "
        "envelope + cavity");
  }
  if ((cfg.spectrum.envelope != std::nullopt) !=
      (cfg.spectrum.cavity != std::nullopt)) {
    throw ConfigError("spectrum composition needs both envelope and cavity");
  }
  if (cfg.spectrum.envelope && cfg.spectrum.max_lines < 1) {
    throw ConfigError("spectrum.max_lines must be at least 1");
  }

  const bool has_direct = cfg.kappa_a.direct.has_value();
  const bool has_envelope =
      cfg.kappa_a.envelope.has_value() || cfg.kappa_a.x_a.has_value();
  if (cfg.scenario == ScenarioKind::partial) {
    if (has_direct == has_envelope) {
      throw ConfigError(
          "partial scenario needs exactly one kappa_a source (kappa_a.value or "
          "kappa_a.envelope.* with kappa_a.x)");
    }
    if (has_envelope &&
        (!cfg.kappa_a.envelope || !cfg.kappa_a.x_a)) {
      throw ConfigError("kappa_a.envelope.* and kappa_a.x must appear together");
    }
    if (has_direct &&
        (*cfg.kappa_a.direct < 0.0 || *cfg.kappa_a.direct > 1.0)) {
      throw ConfigError("kappa_a.value must lie in [0, 1]");
    }
  } else if (has_direct || has_envelope) {
    throw ConfigError("kappa_a.* applies only to the partial scenario");
  }

  if (cfg.sweep.step <= 0.0) {
    throw ConfigError("sweep.step must be positive");
  }
  if (cfg.sweep.x_min > cfg.sweep.x_max) {
    throw ConfigError("sweep.x_min must not exceed sweep.x_max");
  }
  if (cfg.tomography.n_per_setting < 1) {
    throw ConfigError("tomography.n_per_setting must be at least 1");
  }
  if (cfg.kernel_strict_literal && cfg.birefringence.delta_n <= 0.0) {
    throw ConfigError("strict-literal kernel needs birefringence.delta_n > 0");
  }
  if (cfg.birefringence.n_ordinary && cfg.birefringence.n_extraordinary) {
    const double difference =
        *cfg.birefringence.n_ordinary - *cfg.birefringence.n_extraordinary;
    if (std::abs(difference - cfg.birefringence.delta_n) > 1e-12) {
      throw ConfigError("birefringence.delta_n must equal n_ordinary - n_extraordinary");
    }
  }
}

Spectrum resolve_spectrum(const ScenarioConfig& cfg) {
  if (cfg.spectrum.inline_lines) {
    return *cfg.spectrum.inline_lines;
  }
  if (cfg.spectrum.file) {
    std::ifstream in(*cfg.spectrum.file);
    if (!in) {
      throw IoError("cannot open spectrum file '" + *cfg.spectrum.file + "'");
    }
    return read_spectrum_table(in);
  }
  return compose_filtered_spectrum(*cfg.spectrum.envelope, *cfg.spectrum.cavity,
                                   cfg.spectrum.max_lines);
}

Complex resolve_kappa_a(const ScenarioConfig& cfg) {
  if (cfg.scenario != ScenarioKind::partial) {
    throw ConfigError("kappa_a is only defined for the partial scenario");
  }
  if (cfg.kappa_a.direct) {
    return Complex(*cfg.kappa_a.direct, 0.0);
  }
  return kernel_gaussian(*cfg.kappa_a.envelope, *cfg.kappa_a.x_a, cfg.lambda0_nm);
}

}  // namespace revival
