#include "vqcd/simgen.hpp"

#include <cmath>
#include <stdexcept>

#include "vqcd/rng.hpp"

namespace vqcd {

namespace {

// In-place lower Cholesky of a dense p×p row-major SPD matrix.
std::vector<double> dense_cholesky(std::vector<double> a, std::size_t p) {
  for (std::size_t j = 0; j < p; ++j) {
    double d = a[j * p + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * p + k] * a[j * p + k];
    if (d <= 0.0)
      throw std::runtime_error("cholesky: matrix not positive definite");
    const double ljj = std::sqrt(d);
    a[j * p + j] = ljj;
    for (std::size_t i = j + 1; i < p; ++i) {
      double s = a[i * p + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * p + k] * a[j * p + k];
      a[i * p + j] = s / ljj;
    }
    for (std::size_t k = j + 1; k < p; ++k) a[j * p + k] = 0.0;
  }
  return a;
}

}  // namespace

const std::vector<double>& CovarianceSpec::cholesky() const {
  if (!chol_cache_.empty()) return chol_cache_;
  chol_cache_ = compute_cholesky();
  return chol_cache_;
}

std::vector<double> CovarianceSpec::compute_cholesky() const {
  switch (kind) {
    case Kind::kDiagonal: {
      if (diag_values.size() != p)
        throw std::invalid_argument("CovarianceSpec: diag size != p");
      std::vector<double> l(p * p, 0.0);
      for (std::size_t i = 0; i < p; ++i) {
        if (diag_values[i] <= 0.0)
          throw std::runtime_error("CovarianceSpec: nonpositive variance");
        l[i * p + i] = std::sqrt(diag_values[i]);
      }
      return l;
    }
    case Kind::kExplicit:
    case Kind::kBlockWishart: {
      if (matrix.size() != p * p)
        throw std::invalid_argument("CovarianceSpec: matrix size != p*p");
      return dense_cholesky(matrix, p);
    }
  }
  throw std::logic_error("CovarianceSpec: bad kind");
}

CovarianceSpec CovarianceSpec::identity(std::size_t p) {
  CovarianceSpec s;
  s.kind = Kind::kDiagonal;
  s.p = p;
  s.diag_values.assign(p, 1.0);
  return s;
}

CovarianceSpec CovarianceSpec::diagonal(std::vector<double> variances) {
  CovarianceSpec s;
  s.kind = Kind::kDiagonal;
  s.p = variances.size();
  s.diag_values = std::move(variances);
  return s;
}

CovarianceSpec sample_wishart_block_cov(std::size_t p, std::size_t k,
                                        std::size_t dof,
                                        std::mt19937_64& rng) {
  if (k < 1 || k > p)
    throw std::invalid_argument("sample_wishart_block_cov: need 1 <= k <= p");
  if (dof < k)
    throw std::invalid_argument("sample_wishart_block_cov: need dof >= k");

  // Bartlett: W = A A^T with A lower triangular, A_ii ~ chi(dof - i),
  // A_ij ~ N(0,1) below the diagonal. Scale matrix is I_k.
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> a(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    std::chi_squared_distribution<double> chi2(static_cast<double>(dof - i));
    a[i * k + i] = std::sqrt(chi2(rng));
    for (std::size_t j = 0; j < i; ++j) a[i * k + j] = normal(rng);
  }

  CovarianceSpec s;
  s.kind = CovarianceSpec::Kind::kBlockWishart;
  s.p = p;
  s.block_size = k;
  s.wishart_dof = dof;
  s.matrix.assign(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) s.matrix[i * p + i] = 1.0;
  const double inv_dof = 1.0 / static_cast<double>(dof);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double w = 0.0;
      for (std::size_t l = 0; l <= std::min(i, j); ++l)
        w += a[i * k + l] * a[j * k + l];
      s.matrix[i * p + j] = w * inv_dof;
    }
  return s;
}

DataBlock generate_block(const ChangeModel& model, std::size_t m,
                         std::mt19937_64& rng) {
  const CovarianceSpec& cov = (m >= model.gamma) ? model.post : model.pre;
  const std::size_t n = model.n, p = model.p;
  if (cov.p != p) throw std::invalid_argument("generate_block: p mismatch");

  std::vector<double> mean;
  if (model.mean_policy) {
    mean = model.mean_policy(m);
    if (mean.size() != p)
      throw std::invalid_argument("generate_block: mean_policy size != p");
  }

  DataBlock block;
  block.n = n;
  block.p = p;
  block.values.assign(n * p, 0.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> z(p);

  if (cov.kind == CovarianceSpec::Kind::kDiagonal) {
    for (std::size_t row = 0; row < n; ++row)
      for (std::size_t j = 0; j < p; ++j)
        block(row, j) = std::sqrt(cov.diag_values[j]) * normal(rng) +
                        (mean.empty() ? 0.0 : mean[j]);
    return block;
  }

  const std::vector<double>& l = cov.cholesky();
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t j = 0; j < p; ++j) z[j] = normal(rng);
    for (std::size_t i = 0; i < p; ++i) {
      double x = mean.empty() ? 0.0 : mean[i];
      for (std::size_t j = 0; j <= i; ++j) x += l[i * p + j] * z[j];
      block(row, i) = x;
    }
  }
  return block;
}

namespace {

struct PathOutcome {
  double stop_time = 0.0;
  bool censored = false;
};

McResult aggregate(const std::vector<PathOutcome>& outcomes, double offset,
                   double threshold_a) {
  McResult out;
  out.paths = outcomes.size();
  out.threshold_a = threshold_a;
  double sum = 0.0;
  for (const auto& o : outcomes) {
    sum += o.stop_time - offset;
    if (o.censored) ++out.censored;
  }
  out.estimate = sum / static_cast<double>(outcomes.size());
  if (outcomes.size() > 1) {
    double ss = 0.0;
    for (const auto& o : outcomes) {
      const double d = (o.stop_time - offset) - out.estimate;
      ss += d * d;
    }
    out.std_error = std::sqrt(ss / static_cast<double>(outcomes.size() - 1)) /
                    std::sqrt(static_cast<double>(outcomes.size()));
  } else {
    out.std_error = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

// Runs one detector path over V values produced by `next_v(m)`.
template <typename NextV>
PathOutcome run_path(NextV&& next_v, const GlrConfig& config,
                     const ModelParams& params, std::size_t horizon) {
  GlrDetector det(config, params);
  for (std::size_t m = 1; m <= horizon; ++m)
    if (det.step(next_v(m))) return PathOutcome{static_cast<double>(m), false};
  return PathOutcome{static_cast<double>(horizon), true};
}

McResult run_pipeline_trial(const ChangeModel& model, const GlrConfig& config,
                            const ModelParams& params, std::size_t paths,
                            std::size_t horizon, double offset) {
  std::vector<PathOutcome> outcomes(paths);
  for (std::size_t path = 0; path < paths; ++path) {
    auto next_v = [&](std::size_t m) {
      auto rng = rng::make_stream(model.seed, path, m);
      return summary_statistic(generate_block(model, m, rng), params.delta).v;
    };
    outcomes[path] = run_path(next_v, config, params, horizon);
  }
  return aggregate(outcomes, offset, config.threshold_a);
}

}  // namespace

McResult run_delay_trial(const ChangeModel& model, const GlrConfig& config,
                         const ModelParams& params, std::size_t paths,
                         std::size_t horizon) {
  if (model.gamma != 1)
    throw std::invalid_argument("run_delay_trial: need gamma = 1");
  return run_pipeline_trial(model, config, params, paths, horizon, 1.0);
}

McResult run_mtfa_trial(const ChangeModel& model, const GlrConfig& config,
                        const ModelParams& params, std::size_t paths,
                        std::size_t horizon) {
  if (model.gamma != ChangeModel::kNeverChanges)
    throw std::invalid_argument("run_mtfa_trial: need gamma = infinity");
  return run_pipeline_trial(model, config, params, paths, horizon, 0.0);
}

McResult run_delay_trial_fastpath(double j_post, const GlrConfig& config,
                                  const ModelParams& params, std::size_t paths,
                                  std::uint64_t seed, std::size_t horizon) {
  std::vector<PathOutcome> outcomes(paths);
  for (std::size_t path = 0; path < paths; ++path) {
    auto rng = rng::make_stream(seed, path);
    auto next_v = [&](std::size_t) { return sample_v(params, j_post, rng); };
    outcomes[path] = run_path(next_v, config, params, horizon);
  }
  return aggregate(outcomes, 1.0, config.threshold_a);
}

McResult run_mtfa_trial_fastpath(const GlrConfig& config,
                                 const ModelParams& params, std::size_t paths,
                                 std::uint64_t seed, std::size_t horizon) {
  std::vector<PathOutcome> outcomes(paths);
  for (std::size_t path = 0; path < paths; ++path) {
    auto rng = rng::make_stream(seed, path);
    auto next_v = [&](std::size_t) { return sample_v(params, 1.0, rng); };
    outcomes[path] = run_path(next_v, config, params, horizon);
  }
  return aggregate(outcomes, 0.0, config.threshold_a);
}

}  // namespace vqcd
