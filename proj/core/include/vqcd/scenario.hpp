#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace vqcd {

/// Simulation campaign description, parsed from a line-oriented
/// "key = value" file. Keys: id, n, p, k, dof, delta, gamma, epsilon,
/// beta or A (comma-separated lists), j, paths, delay_paths, mtfa_paths,
/// window, seed, horizon. '#' starts a comment.
struct Scenario {
  std::string id = "scenario";
  std::size_t n = 10;
  std::size_t p = 100;
  std::size_t k = 5;
  std::size_t dof = 0;  // 0 -> k + 2
  std::size_t delta = 1;
  double epsilon = 1.5;
  std::vector<double> thresholds;  // A values (log beta already applied)
  double j_fastpath = 0.0;         // post-change J for --fast-path runs
  std::size_t delay_paths = 500;
  std::size_t mtfa_paths = 1500;
  std::size_t window = 0;  // 0 -> ceil(4 A / I(1+epsilon)) per threshold
  bool seed_set = false;
  std::uint64_t seed = 0;
  std::size_t horizon = 1'000'000;
};

/// Throws std::runtime_error naming unknown keys or bad values.
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_file(const std::string& path);

/// Runs delay and MTFA trials for every threshold and writes CSV rows
///   scenario_id,A,mean_delay,se_delay,mtfa,se_mtfa,j_hat,censored_count
/// (header first). fast_path samples V directly from f_V instead of
/// generating matrices; it requires the scenario's j key.
void run_scenario(const Scenario& s, bool fast_path, std::ostream& out);

}  // namespace vqcd
