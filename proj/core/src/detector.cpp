#include "vqcd/detector.hpp"

#include <cmath>
#include <stdexcept>

namespace vqcd {

void GlrConfig::validate() const {
  if (epsilon <= 0.0) throw std::invalid_argument("GlrConfig: epsilon <= 0");
  if (!std::isfinite(threshold_a))
    throw std::invalid_argument("GlrConfig: threshold_a not finite");
  if (window < 1) throw std::invalid_argument("GlrConfig: window < 1");
}

double calibrate_threshold(double beta) {
  if (beta < 1.0) throw std::invalid_argument("calibrate_threshold: beta < 1");
  return std::log(beta);
}

std::size_t default_window(double beta, double epsilon) {
  const double w = std::ceil(4.0 * calibrate_threshold(beta) /
                             kl_divergence(1.0 + epsilon));
  return std::max<std::size_t>(1, static_cast<std::size_t>(w));
}

namespace {

// Segment log-likelihood at a fixed J: m' log J - (J - 1) sum W.
double score_at(double j, double m, double sum_w) {
  return m * std::log(j) - (j - 1.0) * sum_w;
}

SegmentScore score_from_sums(double m, double sum_w, double epsilon,
                             Sidedness sidedness) {
  if (sum_w <= 0.0)
    return SegmentScore{kDegenerateScore, 1.0 + epsilon, true};
  const double j_unclamped = m / sum_w;
  const double j_up = std::max(1.0 + epsilon, j_unclamped);
  SegmentScore best{score_at(j_up, m, sum_w), j_up, false};
  if (sidedness == Sidedness::kTwoSided && epsilon < 1.0) {
    const double j_dn = std::min(1.0 - epsilon, j_unclamped);
    const double s_dn = score_at(j_dn, m, sum_w);
    if (s_dn > best.score) best = SegmentScore{s_dn, j_dn, false};
  }
  return best;
}

}  // namespace

SegmentScore segment_score(std::span<const double> w_values, double epsilon,
                           Sidedness sidedness) {
  if (w_values.empty())
    throw std::invalid_argument("segment_score: empty segment");
  double sum_w = 0.0;
  for (double w : w_values) {
    if (w < 0.0) throw std::invalid_argument("segment_score: negative W");
    sum_w += w;
  }
  return score_from_sums(static_cast<double>(w_values.size()), sum_w, epsilon,
                         sidedness);
}

void glr_step(DetectorState& state, const SummaryValue& v,
              const GlrConfig& config, const ModelParams& params) {
  if (state.stopped) throw std::logic_error("glr_step: detector already stopped");
  ++state.m;
  state.w_buffer.push_back(w_transform(v.v, params));
  if (config.window != GlrConfig::kUnboundedWindow &&
      state.w_buffer.size() > config.window)
    state.w_buffer.pop_front();

  // Suffix sums over the retained window; each candidate segment
  // [l, m] is scored in O(1).
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_start = 0;
  double best_j = 1.0;
  double sum_w = 0.0;
  double count = 0.0;
  const std::size_t buf = state.w_buffer.size();
  for (std::size_t back = 0; back < buf; ++back) {
    sum_w += state.w_buffer[buf - 1 - back];
    count += 1.0;
    const SegmentScore s =
        score_from_sums(count, sum_w, config.epsilon, config.sidedness);
    if (s.score > best) {
      best = s.score;
      best_start = state.m - back;  // 1-based stream index of segment start
      best_j = s.j_hat;
    }
  }
  state.current_stat = best;
  state.best_start = best_start;
  state.best_j = best_j;
  if (best > config.threshold_a) state.stopped = true;
}

Verdict cusum_known_j(std::span<const double> v_stream, double j1,
                      const ModelParams& params, double a) {
  if (j1 <= 0.0 || j1 == 1.0)
    throw std::invalid_argument("cusum_known_j: need J1 > 0, J1 != 1");
  const double log_j1 = std::log(j1);
  double s = 0.0;
  std::size_t restart = 1;
  for (std::size_t m = 0; m < v_stream.size(); ++m) {
    if (s < 0.0) {
      s = 0.0;
      restart = m + 1;
    }
    s += log_j1 - w_transform(v_stream[m], params) * (j1 - 1.0);
    if (s > a) return Verdict{m + 1, restart, j1};
  }
  return Verdict{0, 0, j1};
}

}  // namespace vqcd
