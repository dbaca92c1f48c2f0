#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "revival/bell.hpp"
#include "revival/spectrum.hpp"

namespace revival {

enum class ScenarioKind { maximal, partial };

/// How the mode-b spectrum is obtained.
struct SpectrumSource {
  std::optional<Spectrum> inline_lines;
  std::optional<std::string> file;
  std::optional<GaussianEnvelope> envelope;
  std::optional<FPCavity> cavity;
  int max_lines = 3;
};

/// How kappa_a is obtained in the partial scenario: either a direct value or
/// the mode-a filter envelope evaluated at delay x_a.
struct KappaASource {
  std::optional<double> direct;
  std::optional<GaussianEnvelope> envelope;
  std::optional<double> x_a;
};

struct SweepRange {
  double x_min = 0.0;
  double x_max = 800.0;
  double step = 1.0;
};

struct TomographyOptions {
  long long n_per_setting = 100000;
  std::uint64_t seed = 1;
  bool noiseless = false;
};

struct ChshOptions {
  bool optimize = true;
  AngleSet angles;  // defaults to the fixed analyzer angles of the presets
};

struct ScenarioConfig {
  std::string name = "custom";
  ScenarioKind scenario = ScenarioKind::maximal;
  double lambda0_nm = 780.0;
  SpectrumSource spectrum;
  KappaASource kappa_a;
  SweepRange sweep;
  bool sweep_with_chsh = false;
  TomographyOptions tomography;
  ChshOptions chsh;
  BirefringenceRecord birefringence{0.01, std::nullopt, std::nullopt};
  bool kernel_strict_literal = false;
  std::optional<std::string> output_csv;
  std::optional<std::string> output_json;
};

/// Fixed analyzer angles used when a config does not override them.
AngleSet default_fixed_angles();

/// Frozen fitted scenarios: "fig2a" (maximally entangled input, line widths
/// 0.9 nm) and "fig2b" (partial input, kappa_a = 0.607, widths 0.85 nm).
ScenarioConfig preset(const std::string& name);

/// Parses the flat key = value config format; '#' starts a comment. Unknown
/// keys and malformed values raise ConfigError with the offending line.
ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& origin = "<config>");

/// parse_config_text over the contents of a file.
ScenarioConfig load_config_file(const std::string& path);

/// Cross-field validation; called by the parsers and the preset factory.
void validate(const ScenarioConfig& cfg);

/// Materializes the configured spectrum (inline lines, a spectrum file, or
/// an envelope+cavity composition).
Spectrum resolve_spectrum(const ScenarioConfig& cfg);

/// Kappa_a of a partial scenario: the direct value, or the envelope kernel
/// magnitude at x_a.
Complex resolve_kappa_a(const ScenarioConfig& cfg);

}  // namespace revival
