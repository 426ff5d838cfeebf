#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "stream_io.hpp"

namespace vqcd::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNoDetection = 3;

/// density: CSV of (rho, f_V(rho; J) per J) on a uniform grid over (0,1].
int cmd_density(std::size_t n, std::size_t p, std::size_t delta,
                const std::vector<double>& j_list, std::size_t grid_size,
                std::ostream& out, std::ostream& err);

struct DetectOptions {
  std::size_t delta = 1;
  double epsilon = 1.5;
  double threshold_a = 0.0;
  std::size_t window = 0;  // 0 -> default_window
  bool two_sided = false;
  StreamFormat format = StreamFormat::kText;
};

/// detect: GLR rule over a block stream; prints per-block progress and a
/// verdict on stop. Returns kExitOk on detection, kExitNoDetection when
/// the stream ends first, kExitInputError on parse/dimension errors.
int cmd_detect(std::istream& in, const DetectOptions& opts, std::ostream& out,
               std::ostream& err);

/// simulate: run a scenario file, CSV to out.
int cmd_simulate(const std::string& scenario_path, bool fast_path,
                 std::ostream& out, std::ostream& err);

/// estimate-j: MLE of J over all blocks of a stream.
int cmd_estimate_j(std::istream& in, std::size_t delta, StreamFormat format,
                   std::ostream& out, std::ostream& err);

}  // namespace vqcd::cli
