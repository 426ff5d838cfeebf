#pragma once

#include <cstddef>
#include <deque>
#include <limits>
#include <span>
#include <vector>

#include "vqcd/corrstats.hpp"
#include "vqcd/vdensity.hpp"

namespace vqcd {

enum class Sidedness { kIncreaseOnly, kTwoSided };

/// Configuration of the GLR stopping rule: minimum change magnitude
/// epsilon (|J - 1| >= epsilon), log-likelihood threshold A, candidate
/// change-point window, and sidedness.
struct GlrConfig {
  double epsilon = 1.5;
  double threshold_a = 0.0;
  std::size_t window = kUnboundedWindow;
  Sidedness sidedness = Sidedness::kIncreaseOnly;

  static constexpr std::size_t kUnboundedWindow =
      std::numeric_limits<std::size_t>::max();

  void validate() const;
};

/// A = log(beta) calibrates the rule so the mean time to false alarm is
/// at least beta asymptotically. Requires beta >= 1.
double calibrate_threshold(double beta);

/// Recommended window for the window-limited rule:
/// ceil(4 log(beta) / I(1 + epsilon)).
std::size_t default_window(double beta, double epsilon);

/// Score of one candidate post-change segment.
struct SegmentScore {
  double score = 0.0;
  double j_hat = 1.0;       // clamped MLE for the segment
  bool degenerate = false;  // sum W = 0, score is the large-finite sentinel
};

// Sentinel score for sum W = 0 segments (all V = 1); forces a stop
// without propagating infinities.
inline constexpr double kDegenerateScore = 1e6;

/// sup over admissible J of sum_i [log J - W_i (J - 1)] for one segment.
/// The unconstrained maximizer is Jhat = m' / sum W; increase-only clamps
/// to max(1 + epsilon, Jhat), two-sided also tries the decreasing branch
/// min(1 - epsilon, Jhat) (empty when epsilon >= 1) and keeps the larger.
SegmentScore segment_score(std::span<const double> w_values, double epsilon,
                           Sidedness sidedness);

/// Buffered per-sample W statistics and the running GLR maximum.
struct DetectorState {
  std::size_t m = 0;             // samples seen
  std::deque<double> w_buffer;   // W for candidate change points in window
  double current_stat = -std::numeric_limits<double>::infinity();
  bool stopped = false;
  std::size_t best_start = 0;    // 1-based index of the argmax segment
  double best_j = 1.0;
};

/// Diagnostic output at stopping.
struct Verdict {
  std::size_t stopping_time = 0;
  std::size_t change_point_estimate = 0;
  double j_estimate = 1.0;
};

/// One step of the window-limited GLR rule: append W = w_transform(v),
/// rescan the retained window with prefix sums (O(window)), stop when the
/// max segment score exceeds threshold_a.
void glr_step(DetectorState& state, const SummaryValue& v,
              const GlrConfig& config, const ModelParams& params);

/// Convenience wrapper over glr_step for a whole V stream.
class GlrDetector {
 public:
  GlrDetector(GlrConfig config, const ModelParams& params)
      : config_(config), params_(&params) {
    config_.validate();
  }

  /// Feeds one summary value; returns true once stopped.
  bool step(double v) {
    glr_step(state_, SummaryValue{v, params_->delta}, config_, *params_);
    return state_.stopped;
  }

  const DetectorState& state() const { return state_; }

  Verdict verdict() const {
    return Verdict{state_.m, state_.best_start, state_.best_j};
  }

 private:
  GlrConfig config_;
  const ModelParams* params_;
  DetectorState state_;
};

/// CuSum baseline with known post-change J1: S_m = max(0, S_{m-1}) +
/// log J1 - W_m (J1 - 1), stop at first S_m > a. Returns stopping_time = 0
/// if the stream ends without a stop.
Verdict cusum_known_j(std::span<const double> v_stream, double j1,
                      const ModelParams& params, double a);

}  // namespace vqcd
