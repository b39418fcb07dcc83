// Command-line driver for the driven-dissipative simulator: runs the
// lattice-evolution, current-sweep, thermal-preparation and noise-fit
// experiments from a config file, plus the acceptance verification suite.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "dissim/harness/config.hpp"
#include "dissim/harness/experiments.hpp"
#include "dissim/harness/verify.hpp"
#include "dissim/types.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  long seed = -1;
  long shots = -1;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "experiment config file")->required();
  sub->add_option("--out", args.out_dir, "output directory (overrides [run] out)");
  sub->add_option("--seed", args.seed, "RNG seed (overrides [run] seed)");
  sub->add_option("--shots", args.shots, "shots per point, 0 = exact (overrides [run] shots)");
}

dissim::RunOptions resolve_options(const dissim::Config& cfg, const CommonArgs& args) {
  dissim::RunOptions opt = dissim::run_options_from_config(cfg);
  if (!args.out_dir.empty()) opt.out_dir = args.out_dir;
  if (args.seed >= 0) opt.seed = static_cast<std::uint64_t>(args.seed);
  if (args.shots >= 0) opt.shots = args.shots;
  return opt;
}

int run_experiment(const CommonArgs& args,
                   dissim::FileSet (*fn)(const dissim::Config&, const dissim::RunOptions&)) {
  const dissim::Config cfg = dissim::Config::parse_file(args.config_path);
  const dissim::RunOptions opt = resolve_options(cfg, args);
  const dissim::FileSet files = fn(cfg, opt);
  dissim::write_files(files, opt.out_dir);
  std::cout << "wrote " << files.size() << " file(s) to " << opt.out_dir << "\n";
  if (files.count("summary.txt")) std::cout << files.at("summary.txt");
  return 0;
}

int run_verify(const CommonArgs& args) {
  dissim::VerifyOptions vopt;
  std::string out_dir = "out/verify";
  if (!args.config_path.empty()) {
    const dissim::Config cfg = dissim::Config::parse_file(args.config_path);
    vopt.seed = static_cast<std::uint64_t>(cfg.get_int_or("verify", "seed", 12345));
    vopt.tolerance_scale = cfg.get_double_or("verify", "tolerance_scale", 1.0);
    out_dir = cfg.get_string_or("run", "out", out_dir);
  }
  if (args.seed >= 0) vopt.seed = static_cast<std::uint64_t>(args.seed);
  if (!args.out_dir.empty()) out_dir = args.out_dir;

  const auto results = dissim::run_acceptance(vopt);
  for (const auto& r : results)
    std::printf("%-32s %s  measured=%.6g tolerance=%.6g  %s\n", r.id.c_str(),
                r.pass ? "PASS" : "FAIL", r.measured, r.tolerance, r.note.c_str());

  std::filesystem::create_directories(out_dir);
  std::ofstream report(std::filesystem::path(out_dir) / "report.csv", std::ios::binary);
  report << dissim::format_report(results);
  std::cout << "report written to " << out_dir << "/report.csv\n";
  return dissim::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"driven-dissipative lattice and Hubbard-atom simulator"};
  app.require_subcommand(1);

  CommonArgs lattice_args, sweep_args, hubbard_args, fit_args, verify_args;
  CLI::App* lattice =
      app.add_subcommand("lattice-evolve", "Kraus-map time evolution of one driven mode");
  add_common(lattice, lattice_args);
  CLI::App* sweep = app.add_subcommand("current-sweep", "DC current vs field strength");
  add_common(sweep, sweep_args);
  CLI::App* hubbard =
      app.add_subcommand("hubbard-thermal", "dissipative thermal-state preparation");
  add_common(hubbard, hubbard_args);
  CLI::App* fit = app.add_subcommand("noise-fit", "least-squares noise-parameter recovery");
  add_common(fit, fit_args);
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--config", verify_args.config_path, "verify config file");
  verify->add_option("--out", verify_args.out_dir, "report directory");
  verify->add_option("--seed", verify_args.seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (lattice->parsed()) return run_experiment(lattice_args, dissim::run_lattice_evolve);
    if (sweep->parsed()) return run_experiment(sweep_args, dissim::run_current_sweep);
    if (hubbard->parsed()) return run_experiment(hubbard_args, dissim::run_hubbard_thermal);
    if (fit->parsed()) return run_experiment(fit_args, dissim::run_noise_fit);
    if (verify->parsed()) return run_verify(verify_args);
  } catch (const dissim::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
