// tameforge: run one construction, verify it and write a JSON report.
// Exit codes: 0 all checks pass, 1 construction error or failed check,
// 2 configuration error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tameforge/runner.hpp"

namespace {

int config_error(const std::string& what) {
  std::cerr << "tameforge: " << what << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tame discrete sets: constructions and verification reports"};
  app.set_version_flag("--version", tameforge::kVersion);
  app.require_subcommand(1);

  tameforge::RunConfig cfg;
  std::string out;
  std::string variety_path;

  for (const std::string& name : tameforge::run_commands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--k", cfg.k, "Size parameter K (lattice side, sequence length, prime cutoff)");
    sub->add_option("--seed", cfg.seed, "Seed for every random choice")->capture_default_str();
    sub->add_option("--injection", cfg.injection, "identity | random | comma-separated list")
        ->capture_default_str();
    sub->add_option("--range", cfg.range, "Codomain {1..range} of a random injection");
    sub->add_option("--tol", cfg.tol, "Residual tolerance (overrides TAMEFORGE_TOL)");
    sub->add_option("--mode", cfg.mode, "corrected | paper")->capture_default_str();
    sub->add_option("--m", cfg.m, "Gizatullin exponent m");
    sub->add_option("--n", cfg.n, "Half dimension n of C^{2n}");
    sub->add_option("--points", cfg.points, "Number of points");
    sub->add_option("--eps", cfg.eps, "First-stage epsilon")->capture_default_str();
    sub->add_option("--growth", cfg.growth, "Epsilon decay factor")->capture_default_str();
    sub->add_option("--preset", cfg.preset, "Named variety")->capture_default_str();
    sub->add_option("--variety", variety_path, "JSON file {n, a, b} replacing the preset");
    sub->add_option("--out", out, "Report path (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (!variety_path.empty()) {
      std::ifstream in(variety_path);
      if (!in) return config_error("cannot read " + variety_path);
      cfg.variety = nlohmann::json::parse(in, nullptr, false);
      if (cfg.variety->is_discarded()) return config_error(variety_path + " is not JSON");
    }
    const tameforge::RunResult result = tameforge::run(cfg, tameforge::tolerance_from_env());
    const std::string text = result.report.dump(2) + "\n";
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out);
      if (!(f << text)) return config_error("cannot write " + out);
    }
    return result.exit_code;
  } catch (const tameforge::ConfigError& e) {
    return config_error(e.what());
  }
}
