// Command-line front end: sweep, state, tomography, chsh and spectrum
// subcommands over a config file or a named preset.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "revival/harness.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset_name;
  std::string out_path;
  std::optional<std::int64_t> seed;
  double x = 0.0;
};

void add_common(CLI::App* cmd, CommonArgs* args, bool with_x) {
  cmd->add_option("--config", args->config_path, "Path to a config file");
  cmd->add_option("--preset", args->preset_name, "Preset name (fig2a or fig2b)");
  cmd->add_option("--out", args->out_path,
                  "Output path (stdout when omitted)");
  cmd->add_option("--seed", args->seed, "Override tomography.seed");
  if (with_x) {
    cmd->add_option("--x", args->x, "Evolution parameter in lambda0 units")
        ->required();
  }
}

revival::ScenarioConfig resolve_config(const CommonArgs& args) {
  if (args.config_path.empty() == args.preset_name.empty()) {
    throw revival::ConfigError("exactly one of --config or --preset is required");
  }
  revival::ScenarioConfig cfg = args.config_path.empty()
                                    ? revival::preset(args.preset_name)
                                    : revival::load_config_file(args.config_path);
  if (args.seed) {
    cfg.tomography.seed = static_cast<std::uint64_t>(*args.seed);
  }
  return cfg;
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw revival::IoError("cannot open output file '" + out_path + "'");
  }
  out << payload;
  if (!out) {
    throw revival::IoError("write failed for '" + out_path + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulates two-photon entanglement collapse and revival in a "
      "non-Markovian dephasing channel"};
  app.require_subcommand(1);

  CommonArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Evaluate kappa_b, Gamma, C (and P) over the sweep grid");
  add_common(sweep, &sweep_args, /*with_x=*/false);
  std::string report_path;
  sweep->add_option("--report", report_path,
                    "Where to write the crossing report JSON (stdout when "
                    "omitted)");

  CommonArgs state_args;
  CLI::App* state = app.add_subcommand(
      "state", "Dump the model density matrix at --x as JSON");
  add_common(state, &state_args, /*with_x=*/true);

  CommonArgs tomo_args;
  CLI::App* tomo = app.add_subcommand(
      "tomography", "Simulate 16-setting counts at --x and reconstruct");
  add_common(tomo, &tomo_args, /*with_x=*/false);
  std::optional<double> tomo_x;
  tomo->add_option("--x", tomo_x, "Evolution parameter in lambda0 units");
  std::optional<std::int64_t> tomo_n;
  tomo->add_option("--n", tomo_n, "Override tomography.n_per_setting");
  bool tomo_noiseless = false;
  tomo->add_flag("--noiseless", tomo_noiseless,
                 "Use expected counts instead of Poisson draws");
  std::string counts_in;
  tomo->add_option("--counts", counts_in,
                   "Reconstruct from an existing counts CSV instead of "
                   "simulating");
  std::string counts_out;
  tomo->add_option("--dump-counts", counts_out,
                   "Also write the simulated counts CSV here");

  CommonArgs chsh_args;
  CLI::App* chsh = app.add_subcommand(
      "chsh", "CHSH S at fixed angles, the linear optimum and the algebraic "
              "maximum at --x");
  add_common(chsh, &chsh_args, /*with_x=*/true);

  CommonArgs spectrum_args;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Emit the resolved mode-b spectrum as a plain-text table");
  add_common(spectrum, &spectrum_args, /*with_x=*/false);

  try {
    app.parse(argc, argv);

    if (*sweep) {
      const revival::ScenarioConfig cfg = resolve_config(sweep_args);
      const revival::SweepResult result = revival::run_sweep(cfg);
      const std::string out_path =
          !sweep_args.out_path.empty()
              ? sweep_args.out_path
              : cfg.output_csv.value_or(std::string{});
      emit(revival::sweep_csv(cfg, result), out_path);
      emit(revival::crossings_json(result.crossings), report_path);
    } else if (*state) {
      const revival::ScenarioConfig cfg = resolve_config(state_args);
      emit(revival::state_json(cfg, state_args.x),
           !state_args.out_path.empty()
               ? state_args.out_path
               : cfg.output_json.value_or(std::string{}));
    } else if (*tomo) {
      revival::ScenarioConfig cfg = resolve_config(tomo_args);
      if (tomo_n) cfg.tomography.n_per_setting = *tomo_n;
      if (tomo_noiseless) cfg.tomography.noiseless = true;

      revival::TomographyReport report;
      if (!counts_in.empty()) {
        std::ifstream in(counts_in);
        if (!in) {
          throw revival::IoError("cannot open counts file '" + counts_in + "'");
        }
        report = revival::reconstruct_counts(revival::read_counts_csv(in));
      } else {
        if (!tomo_x) {
          throw revival::ConfigError(
              "tomography needs --x (or --counts for reconstruction only)");
        }
        report = revival::run_tomography(cfg, *tomo_x);
        if (!counts_out.empty()) {
          emit(revival::counts_csv(report.counts), counts_out);
        }
      }
      emit(revival::tomography_json(report),
           !tomo_args.out_path.empty()
               ? tomo_args.out_path
               : cfg.output_json.value_or(std::string{}));
    } else if (*chsh) {
      const revival::ScenarioConfig cfg = resolve_config(chsh_args);
      emit(revival::chsh_json(revival::run_chsh(cfg, chsh_args.x)),
           !chsh_args.out_path.empty()
               ? chsh_args.out_path
               : cfg.output_json.value_or(std::string{}));
    } else if (*spectrum) {
      const revival::ScenarioConfig cfg = resolve_config(spectrum_args);
      emit(revival::spectrum_table(revival::resolve_spectrum(cfg)),
           spectrum_args.out_path);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const revival::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const revival::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const revival::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
