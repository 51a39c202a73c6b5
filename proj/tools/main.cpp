#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "specenh/commands.hpp"
#include "specenh/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spectral line sharpening by regularized deconvolution"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_option("--seed", seed, "noise seed (overrides the config)");

  auto* synth =
      app.add_subcommand("synth", "synthesize a broadened line spectrum")
          ->fallthrough();
  auto* enhance =
      app.add_subcommand("enhance", "deconvolve a spectrum and report on it")
          ->fallthrough();
  auto* experiment =
      app.add_subcommand("experiment", "run a packaged study")->fallthrough();
  std::string study;
  experiment->add_option("name", study, "fig1, fig2, fig3, or rates")
      ->required();
  auto* bound =
      app.add_subcommand("bound", "tabulate error bounds over noise levels")
          ->fallthrough();
  auto* fit = app.add_subcommand("fit", "fit line locations and intensities")
                  ->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const specenh::json config = config_path.empty()
                                     ? specenh::json::object()
                                     : specenh::load_json(config_path);
    if (synth->parsed()) {
      specenh::cmd_synth(config, out_dir, seed);
    } else if (enhance->parsed()) {
      std::cout << specenh::cmd_enhance(config, out_dir, seed).dump(2) << "\n";
    } else if (experiment->parsed()) {
      specenh::cmd_experiment(study, out_dir, seed);
    } else if (bound->parsed()) {
      specenh::cmd_bound(config, out_dir);
    } else if (fit->parsed()) {
      std::cout << specenh::cmd_fit(config, out_dir).dump(2) << "\n";
    }
    return 0;
  } catch (const specenh::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const specenh::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const specenh::UnsupportedFormError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
