#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "revival/harness.hpp"

using namespace revival;

namespace {

std::string fig2a_like_config() {
  return R"(# mode-b fit, maximal input
scenario = maximal
lambda0_nm = 780
spectrum.line.0 = 0.37, 778.853, 0.9
spectrum.line.1 = 0.44, 780.160, 0.9
spectrum.line.2 = 0.19, 781.459, 0.9
sweep.x_min = 0
sweep.x_max = 10
sweep.step = 1
)";
}

}  // namespace

TEST_CASE("presets freeze the fitted parameters") {
  const ScenarioConfig a = preset("fig2a");
  REQUIRE(a.spectrum.inline_lines.has_value());
  const auto& lines = a.spectrum.inline_lines->lines();
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].amplitude == 0.37);
  CHECK(lines[0].center_nm == 778.853);
  CHECK(lines[0].sigma_nm == 0.9);
  CHECK(lines[1].amplitude == 0.44);
  CHECK(lines[1].center_nm == 780.160);
  CHECK(lines[2].amplitude == 0.19);
  CHECK(lines[2].center_nm == 781.459);
  CHECK(a.scenario == ScenarioKind::maximal);
  CHECK(a.lambda0_nm == 780.0);
  CHECK(a.birefringence.delta_n == 0.01);

  const ScenarioConfig b = preset("fig2b");
  CHECK(b.scenario == ScenarioKind::partial);
  CHECK(b.kappa_a.direct == 0.607);
  CHECK(b.spectrum.inline_lines->lines()[0].sigma_nm == 0.85);

  CHECK_THROWS_AS(preset("fig2c"), ConfigError);
}

TEST_CASE("config text round-trips through the parser") {
  const ScenarioConfig cfg = parse_config_text(fig2a_like_config(), "inline");
  CHECK(cfg.scenario == ScenarioKind::maximal);
  REQUIRE(cfg.spectrum.inline_lines.has_value());
  CHECK(cfg.spectrum.inline_lines->lines().size() == 3);
  CHECK(cfg.sweep.x_max == 10.0);
}

TEST_CASE("parser reports the offending line") {
  const std::string bad = "scenario = maximal\nbogus_key = 1\n";
  try {
    parse_config_text(bad, "test.cfg");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string message = e.what();
    CHECK(message.find("test.cfg:2") != std::string::npos);
    CHECK(message.find("bogus_key") != std::string::npos);
  }
}

TEST_CASE("parser rejects malformed structure") {
  CHECK_THROWS_AS(parse_config_text("scenario maximal\n", "t"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("scenario = sideways\n", "t"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("sweep.step = fast\n", "t"), ConfigError);
}

TEST_CASE("validation catches inconsistent configs") {
  // No spectrum at all.
  CHECK_THROWS_AS(parse_config_text("scenario = maximal\n", "t"), ConfigError);
  // Two spectrum sources.
  CHECK_THROWS_AS(
      parse_config_text("spectrum.line.0 = 1.0, 780, 1\n"
                        "spectrum.file = other.txt\n",
                        "t"),
      ConfigError);
  // Partial scenario without kappa_a.
  CHECK_THROWS_AS(
      parse_config_text("scenario = partial\nspectrum.line.0 = 1.0, 780, 1\n",
                        "t"),
      ConfigError);
  // kappa_a on the maximal scenario.
  CHECK_THROWS_AS(
      parse_config_text("scenario = maximal\nkappa_a.value = 0.5\n"
                        "spectrum.line.0 = 1.0, 780, 1\n",
                        "t"),
      ConfigError);
  // Gapped line indices.
  CHECK_THROWS_AS(
      parse_config_text("spectrum.line.0 = 0.5, 780, 1\n"
                        "spectrum.line.2 = 0.5, 781, 1\n",
                        "t"),
      ConfigError);
  // Bad sweep.
  CHECK_THROWS_AS(
      parse_config_text("spectrum.line.0 = 1.0, 780, 1\nsweep.step = 0\n", "t"),
      ConfigError);
}

TEST_CASE("recorded birefringence indices must match delta_n") {
  CHECK_NOTHROW(parse_config_text(
      "spectrum.line.0 = 1.0, 780, 1\n"
      "birefringence.delta_n = 0.01\n"
      "birefringence.n_ordinary = 1.5443\n"
      "birefringence.n_extraordinary = 1.5343\n",
      "t"));
  CHECK_THROWS_AS(parse_config_text(
                      "spectrum.line.0 = 1.0, 780, 1\n"
                      "birefringence.delta_n = 0.02\n"
                      "birefringence.n_ordinary = 1.5443\n"
                      "birefringence.n_extraordinary = 1.5343\n",
                      "t"),
                  ConfigError);
}

TEST_CASE("kappa_a can come from the mode-a envelope") {
  const ScenarioConfig cfg = parse_config_text(
      "scenario = partial\n"
      "spectrum.line.0 = 1.0, 780, 0.9\n"
      "kappa_a.envelope.center_nm = 780\n"
      "kappa_a.envelope.sigma_nm = 3.0\n"
      "kappa_a.x = 117\n",
      "t");
  CHECK(std::abs(std::abs(resolve_kappa_a(cfg)) - 0.607) <= 0.005);
}

TEST_CASE("run_sweep starts at full coherence") {
  ScenarioConfig cfg = preset("fig2a");
  cfg.sweep = {0.0, 10.0, 1.0};
  const SweepResult result = run_sweep(cfg);
  REQUIRE(result.rows.size() == 11);
  CHECK(std::abs(result.rows[0].kappa_b - Complex(1.0, 0.0)) <= 1e-9);
  CHECK(result.rows[0].concurrence == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(!result.rows[0].polarization.has_value());
}

TEST_CASE("a degenerate sweep yields a single row") {
  ScenarioConfig cfg = preset("fig2a");
  cfg.sweep = {0.0, 0.0, 1.0};
  const SweepResult result = run_sweep(cfg);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].x == 0.0);
  CHECK(result.rows[0].concurrence == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(result.crossings.crossings.empty());
}

TEST_CASE("partial sweeps carry the polarization column") {
  ScenarioConfig cfg = preset("fig2b");
  cfg.sweep = {0.0, 5.0, 1.0};
  const SweepResult result = run_sweep(cfg);
  REQUIRE(result.rows.size() == 6);
  REQUIRE(result.rows[0].polarization.has_value());
  CHECK(*result.rows[0].polarization == doctest::Approx(1.0).epsilon(1e-9));
  const std::string csv = sweep_csv(cfg, result);
  CHECK(csv.rfind("x,re_kappa_b,im_kappa_b,abs_kappa_b,gamma,concurrence,"
                  "polarization\n",
                  0) == 0);
}

TEST_CASE("sweep rows satisfy the clamp invariant") {
  ScenarioConfig cfg = preset("fig2b");
  cfg.sweep = {0.0, 300.0, 5.0};
  const SweepResult result = run_sweep(cfg);
  for (const SweepRow& row : result.rows) {
    CHECK(std::abs(row.kappa_b) <= 1.0 + 1e-12);
    CHECK(row.concurrence == std::max(0.0, row.gamma));
  }
}

TEST_CASE("format_double uses nine significant digits") {
  CHECK(format_double(1.0 / 3.0) == "0.333333333");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.354) == "-0.354");
}

TEST_CASE("sweep CSV is byte-stable across runs") {
  ScenarioConfig cfg = preset("fig2b");
  cfg.sweep = {0.0, 50.0, 1.0};
  const std::string first = sweep_csv(cfg, run_sweep(cfg));
  const std::string second = sweep_csv(cfg, run_sweep(cfg));
  CHECK(first == second);
}

TEST_CASE("state JSON carries the expected off-diagonal magnitudes") {
  const ScenarioConfig cfg = preset("fig2a");
  const auto at = [&](double x) {
    const nlohmann::json doc = nlohmann::json::parse(state_json(cfg, x));
    const double re = doc["real"][0][3].get<double>();
    const double im = doc["imag"][0][3].get<double>();
    return std::hypot(re, im);
  };
  CHECK(at(0.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(at(243.0) <= 0.06);
  CHECK(std::abs(at(560.0) - 0.177) <= 0.01);
}

TEST_CASE("spectrum tables round-trip") {
  const ScenarioConfig cfg = preset("fig2a");
  const Spectrum original = resolve_spectrum(cfg);
  const std::string table = spectrum_table(original);
  CHECK(table.rfind("lambda0_nm = 780\n", 0) == 0);
  CHECK(table.find("A_j, lambda_nm, sigma_nm\n") != std::string::npos);

  std::istringstream in(table);
  const Spectrum parsed = read_spectrum_table(in);
  CHECK(parsed.lambda0_nm() == original.lambda0_nm());
  REQUIRE(parsed.lines().size() == original.lines().size());
  for (std::size_t i = 0; i < parsed.lines().size(); ++i) {
    CHECK(parsed.lines()[i].amplitude ==
          doctest::Approx(original.lines()[i].amplitude).epsilon(1e-9));
    CHECK(parsed.lines()[i].center_nm ==
          doctest::Approx(original.lines()[i].center_nm).epsilon(1e-9));
  }

  std::istringstream missing_header("lambda0_nm = 780\n0.5, 780, 1\n");
  CHECK_THROWS_AS(read_spectrum_table(missing_header), ConfigError);
}

TEST_CASE("counts CSV round-trips and validates") {
  const auto counts = simulate_counts(bell_phi_plus(), 5000, 9, false);
  const std::string csv = counts_csv(counts);
  CHECK(csv.rfind("setting_id,analyzer_a,analyzer_b,count\n", 0) == 0);

  std::istringstream in(csv);
  const auto parsed = read_counts_csv(in);
  REQUIRE(parsed.size() == counts.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].setting_id == counts[i].setting_id);
    CHECK(parsed[i].count == counts[i].count);
  }

  std::istringstream bad_header("id,a,b,count\n0,H,H,10\n");
  CHECK_THROWS_AS(read_counts_csv(bad_header), ProtocolError);
  std::istringstream bad_labels(
      "setting_id,analyzer_a,analyzer_b,count\n0,H,V,10\n");
  CHECK_THROWS_AS(read_counts_csv(bad_labels), ProtocolError);
}

TEST_CASE("tomography run is self-consistent at the revival point") {
  ScenarioConfig cfg = preset("fig2a");
  cfg.tomography.n_per_setting = 1000000;
  cfg.tomography.noiseless = true;
  const TomographyReport report = run_tomography(cfg, 560.0);
  REQUIRE(report.fidelity_to_model.has_value());
  CHECK(*report.fidelity_to_model >= 0.9999);
  CHECK(std::abs(report.concurrence_reconstructed - *report.concurrence_model) <=
        0.005);
  // The model concurrence itself sits at the fitted revival value.
  CHECK(std::abs(*report.concurrence_model - 0.354) <= 0.02);
}

TEST_CASE("tomography JSON is reproducible for a fixed seed") {
  ScenarioConfig cfg = preset("fig2a");
  cfg.tomography.n_per_setting = 20000;
  cfg.tomography.seed = 42;
  const std::string first = tomography_json(run_tomography(cfg, 560.0));
  const std::string second = tomography_json(run_tomography(cfg, 560.0));
  CHECK(first == second);
}

TEST_CASE("reconstruction from zero counts is a protocol error") {
  std::vector<CountRecord> zeros;
  for (int id = 0; id < 16; ++id) zeros.push_back({id, 0});
  CHECK_THROWS_AS(reconstruct_counts(zeros), ProtocolError);
}

TEST_CASE("chsh report brackets the revived state") {
  const ScenarioConfig cfg = preset("fig2a");
  const ChshReport report = run_chsh(cfg, 560.0);
  CHECK(report.s_fixed == doctest::Approx(1.7772561510).epsilon(1e-6));
  CHECK_FALSE(report.fixed_violates);
  REQUIRE(report.optimum.has_value());
  CHECK(report.optimum->s == doctest::Approx(2.0581764509).epsilon(1e-4));
  CHECK(report.optimum_violates);
  CHECK(report.smax_algebraic == doctest::Approx(2.1134967343).epsilon(1e-6));

  const nlohmann::json doc = nlohmann::json::parse(chsh_json(report));
  CHECK(doc["fixed_angles"]["theta1_deg"].get<double>() == -86.25);
  CHECK(doc["s_optimized"].get<double>() > 2.0);
}

TEST_CASE("model_state of the partial scenario at x = 0") {
  const ScenarioConfig cfg = preset("fig2b");
  const DensityMatrix4 state = model_state(cfg, 0.0);
  const DensityMatrix4 expected =
      state_partial(KappaParam(0.607), KappaParam(1.0));
  CHECK((state.matrix() - expected.matrix()).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("strict-literal kernel mode is wired through the config") {
  ScenarioConfig cfg = preset("fig2a");
  cfg.kernel_strict_literal = true;
  const Spectrum s = resolve_spectrum(cfg);
  // With delta_n = 0.01 the x = 243 point has barely decohered.
  CHECK(std::abs(kappa_b_at(cfg, s, 243.0)) >= 0.99);
}
