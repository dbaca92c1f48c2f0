#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "revival/channels.hpp"
#include "revival/entanglement.hpp"
#include "revival/scenario.hpp"
#include "revival/tomography.hpp"

namespace revival {

/// One sweep grid point. polarization is filled for the partial scenario,
/// s_chsh only when the sweep asks for it.
struct SweepRow {
  double x = 0.0;
  Complex kappa_b;
  double gamma = 0.0;
  double concurrence = 0.0;
  std::optional<double> polarization;
  std::optional<double> s_chsh;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  CrossingReport crossings;
};

/// Model fields are absent when reconstructing externally supplied counts.
struct TomographyReport {
  std::optional<double> x;
  std::optional<long long> n_per_setting;
  std::optional<std::uint64_t> seed;
  bool noiseless = false;
  std::optional<double> fidelity_to_model;
  std::optional<double> concurrence_model;
  std::optional<Complex> kappa_b_model;
  std::optional<Complex> kappa_b_reconstructed;
  double concurrence_reconstructed = 0.0;
  double nll = 0.0;
  std::vector<CountRecord> counts;
};

struct ChshReport {
  double x = 0.0;
  AngleSet fixed_angles;
  double s_fixed = 0.0;
  bool fixed_violates = false;
  std::optional<ChshOptimum> optimum;
  bool optimum_violates = false;
  double smax_algebraic = 0.0;
};

/// Decoherence kernel of the resolved spectrum at x, honoring the
/// strict-literal switch.
Complex kappa_b_at(const ScenarioConfig& cfg, const Spectrum& s, double x);

/// The model state of the scenario at evolution parameter x.
DensityMatrix4 model_state(const ScenarioConfig& cfg, double x);

/// Evaluates kappa_b, Gamma, C (and P for the partial scenario) on the sweep
/// grid and appends the sign-change report of Gamma over the same range.
SweepResult run_sweep(const ScenarioConfig& cfg);

/// Simulates counts at the model state for x, reconstructs by maximum
/// likelihood and reports fidelity plus reconstructed quantities.
TomographyReport run_tomography(const ScenarioConfig& cfg, double x);

/// Reconstruction report for externally supplied counts (no model state).
TomographyReport reconstruct_counts(const std::vector<CountRecord>& counts);

/// CHSH S at the configured fixed angles, the linear-analyzer optimum when
/// requested, and the algebraic maximum.
ChshReport run_chsh(const ScenarioConfig& cfg, double x);

// --- serialization -------------------------------------------------------

/// Doubles are emitted with 9 significant digits in CSV and spectrum tables.
std::string format_double(double v);

void write_sweep_csv(std::ostream& out, const ScenarioConfig& cfg,
                     const SweepResult& result);
std::string sweep_csv(const ScenarioConfig& cfg, const SweepResult& result);

std::string crossings_json(const CrossingReport& report);

/// Density-matrix JSON: basis order and the real and imaginary parts.
std::string state_json(const ScenarioConfig& cfg, double x);

std::string tomography_json(const TomographyReport& report);
std::string chsh_json(const ChshReport& report);

/// Plain-text spectrum table: a lambda0_nm scalar line, the header
/// "A_j, lambda_nm, sigma_nm", then one line per component.
void write_spectrum_table(std::ostream& out, const Spectrum& s);
std::string spectrum_table(const Spectrum& s);
Spectrum read_spectrum_table(std::istream& in);

/// Counts CSV with header setting_id,analyzer_a,analyzer_b,count.
void write_counts_csv(std::ostream& out, const std::vector<CountRecord>& counts);
std::string counts_csv(const std::vector<CountRecord>& counts);
std::vector<CountRecord> read_counts_csv(std::istream& in);

}  // namespace revival
