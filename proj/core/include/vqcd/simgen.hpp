#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "vqcd/corrstats.hpp"
#include "vqcd/detector.hpp"
#include "vqcd/vdensity.hpp"

namespace vqcd {

/// Covariance of the rows of a generated block: diagonal, identity with a
/// Wishart-perturbed top-left block, or an explicit matrix.
struct CovarianceSpec {
  enum class Kind { kDiagonal, kBlockWishart, kExplicit };

  Kind kind = Kind::kDiagonal;
  std::size_t p = 0;
  std::vector<double> diag_values;          // diagonal kind
  std::size_t block_size = 0;               // block-wishart kind
  std::size_t wishart_dof = 0;              //   "
  std::vector<double> matrix;               // explicit kind, p*p row-major

  /// Lower Cholesky factor of the realized covariance (p*p row-major,
  /// upper part zero). Throws std::runtime_error if not positive definite.
  /// Memoized; call once before sharing the spec across threads.
  const std::vector<double>& cholesky() const;

  static CovarianceSpec identity(std::size_t p);
  static CovarianceSpec diagonal(std::vector<double> variances);

 private:
  std::vector<double> compute_cholesky() const;
  mutable std::vector<double> chol_cache_;
};

/// Sigma_1 = I_p with the top-left k×k block replaced by W/dof,
/// W ~ Wishart(I_k, dof) drawn by Bartlett decomposition. Normalizing by
/// dof keeps the diagonal near 1. Requires dof >= k.
CovarianceSpec sample_wishart_block_cov(std::size_t p, std::size_t k,
                                        std::size_t dof, std::mt19937_64& rng);

/// Change-point scenario: Gaussian n×p blocks with covariance pre before
/// time gamma and post from gamma on. mean_policy (optional) supplies the
/// per-block mean vector; correlation is location-invariant, so it may
/// vary arbitrarily with m.
struct ChangeModel {
  static constexpr std::size_t kNeverChanges =
      std::numeric_limits<std::size_t>::max();

  std::size_t gamma = 1;
  std::size_t n = 0;
  std::size_t p = 0;
  CovarianceSpec pre;
  CovarianceSpec post;
  std::function<std::vector<double>(std::size_t m)> mean_policy;  // may be null
  std::uint64_t seed = 0;
};

/// Monte Carlo estimate with its standard error. censored counts paths
/// that hit the hard horizon without stopping; when censored > 0 the
/// estimate is a lower bound.
struct McResult {
  std::size_t paths = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double threshold_a = 0.0;
  std::size_t censored = 0;
};

/// n i.i.d. Gaussian rows with the model's covariance at time m. Uses the
/// stream keyed by (model.seed via rng construction outside); the caller
/// passes the stream so paths stay independent.
DataBlock generate_block(const ChangeModel& model, std::size_t m,
                         std::mt19937_64& rng);

inline constexpr std::size_t kDefaultHorizon = 1'000'000;

/// Mean detection delay with gamma = 1: full pipeline
/// generate_block -> summary_statistic -> glr_step per path.
McResult run_delay_trial(const ChangeModel& model, const GlrConfig& config,
                         const ModelParams& params, std::size_t paths,
                         std::size_t horizon = kDefaultHorizon);

/// Mean time to false alarm with gamma = infinity (pre-change law
/// throughout). Horizon-censored paths are counted, not dropped.
McResult run_mtfa_trial(const ChangeModel& model, const GlrConfig& config,
                        const ModelParams& params, std::size_t paths,
                        std::size_t horizon = kDefaultHorizon);

/// Fast-path variants: V drawn directly from f_V(.; J), skipping matrix
/// generation. Delay uses post-change J from time 1; MTFA uses J = 1.
McResult run_delay_trial_fastpath(double j_post, const GlrConfig& config,
                                  const ModelParams& params, std::size_t paths,
                                  std::uint64_t seed,
                                  std::size_t horizon = kDefaultHorizon);
McResult run_mtfa_trial_fastpath(const GlrConfig& config,
                                 const ModelParams& params, std::size_t paths,
                                 std::uint64_t seed,
                                 std::size_t horizon = kDefaultHorizon);

}  // namespace vqcd
