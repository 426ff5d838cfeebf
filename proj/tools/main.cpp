#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "vqcd/detector.hpp"

namespace {

// Opens the stream source ("-" means stdin) with the right mode.
std::istream* open_source(const std::string& path, std::ifstream& file,
                          bool binary) {
  if (path == "-") return &std::cin;
  file.open(path, binary ? std::ios::binary : std::ios::in);
  if (!file) {
    std::cerr << "cannot open " << path << '\n';
    return nullptr;
  }
  return &file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sequential change detection for streams of n x p data matrices via "
      "the max k-NN correlation summary statistic"};
  app.require_subcommand(1);

  // density
  auto* density = app.add_subcommand(
      "density", "Dump the summary-statistic density as CSV");
  std::size_t d_n = 10, d_p = 100, d_delta = 1, d_grid = 1000;
  std::vector<double> d_j{1.0};
  density->add_option("--n", d_n, "rows per block")->required();
  density->add_option("--p", d_p, "columns per block")->required();
  density->add_option("--delta", d_delta, "neighbor order");
  density->add_option("--j", d_j, "J values (repeatable)");
  density->add_option("--grid", d_grid, "grid points over (0,1]");

  // detect
  auto* detect = app.add_subcommand(
      "detect", "Run the GLR detector over a block stream");
  std::string det_source = "-";
  vqcd::cli::DetectOptions det_opts;
  double det_beta = 0.0, det_a = 0.0;
  bool det_binary = false;
  detect->add_option("source", det_source, "stream file or - for stdin");
  detect->add_option("--delta", det_opts.delta, "neighbor order");
  detect->add_option("--epsilon", det_opts.epsilon, "minimum |J-1|");
  auto* beta_opt =
      detect->add_option("--beta", det_beta, "MTFA target; sets A = log beta");
  auto* a_opt = detect->add_option("--threshold", det_a, "threshold A");
  beta_opt->excludes(a_opt);
  detect->add_option("--window", det_opts.window,
                     "candidate change-point window (0 = auto)");
  detect->add_flag("--two-sided", det_opts.two_sided,
                   "also test the decreasing branch J <= 1 - epsilon");
  detect->add_flag("--binary", det_binary, "binary stream format");

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Run a Monte Carlo scenario file, CSV to stdout");
  std::string sim_scenario;
  bool sim_fast = false;
  simulate->add_option("scenario", sim_scenario, "scenario file")->required();
  simulate->add_flag("--fast-path", sim_fast,
                     "sample V directly from the model density");

  // estimate-j
  auto* estimate = app.add_subcommand(
      "estimate-j", "Maximum likelihood estimate of J from a block stream");
  std::string est_source = "-";
  std::size_t est_delta = 1;
  bool est_binary = false;
  estimate->add_option("source", est_source, "stream file or - for stdin");
  estimate->add_option("--delta", est_delta, "neighbor order");
  estimate->add_flag("--binary", est_binary, "binary stream format");

  CLI11_PARSE(app, argc, argv);

  if (density->parsed())
    return vqcd::cli::cmd_density(d_n, d_p, d_delta, d_j, d_grid, std::cout,
                                  std::cerr);

  if (detect->parsed()) {
    if (beta_opt->count() == 0 && a_opt->count() == 0) {
      std::cerr << "detect: exactly one of --beta / --threshold is required\n";
      return vqcd::cli::kExitInputError;
    }
    try {
      det_opts.threshold_a = beta_opt->count()
                                 ? vqcd::calibrate_threshold(det_beta)
                                 : det_a;
    } catch (const std::exception& e) {
      std::cerr << "detect: " << e.what() << '\n';
      return vqcd::cli::kExitInputError;
    }
    det_opts.format = det_binary ? vqcd::cli::StreamFormat::kBinary
                                 : vqcd::cli::StreamFormat::kText;
    std::ifstream file;
    std::istream* in = open_source(det_source, file, det_binary);
    if (!in) return vqcd::cli::kExitInputError;
    return vqcd::cli::cmd_detect(*in, det_opts, std::cout, std::cerr);
  }

  if (simulate->parsed())
    return vqcd::cli::cmd_simulate(sim_scenario, sim_fast, std::cout,
                                   std::cerr);

  if (estimate->parsed()) {
    std::ifstream file;
    std::istream* in = open_source(est_source, file, est_binary);
    if (!in) return vqcd::cli::kExitInputError;
    return vqcd::cli::cmd_estimate_j(*in, est_delta,
                                     est_binary
                                         ? vqcd::cli::StreamFormat::kBinary
                                         : vqcd::cli::StreamFormat::kText,
                                     std::cout, std::cerr);
  }
  return vqcd::cli::kExitInputError;
}
