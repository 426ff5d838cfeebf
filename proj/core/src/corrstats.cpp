#include "vqcd/corrstats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace vqcd {

void DataBlock::validate() const {
  if (n < 3) throw std::invalid_argument("DataBlock: need n >= 3 rows");
  if (p < 2) throw std::invalid_argument("DataBlock: need p >= 2 columns");
  if (values.size() != n * p)
    throw std::invalid_argument("DataBlock: values size != n*p");
  for (double x : values)
    if (!std::isfinite(x))
      throw std::invalid_argument("DataBlock: non-finite entry");
}

CorrelationMatrix sample_correlation(const DataBlock& block) {
  block.validate();
  const std::size_t n = block.n, p = block.p;

  // Center each column, track raw and centered sums of squares so a
  // constant column is caught even when rounding leaves tiny residuals.
  std::vector<double> dev(n * p);
  std::vector<double> inv_norm(p);
  for (std::size_t j = 0; j < p; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += block(i, j);
    mean /= static_cast<double>(n);
    double ss_dev = 0.0, ss_raw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = block(i, j);
      const double d = x - mean;
      dev[i * p + j] = d;
      ss_dev += d * d;
      ss_raw += x * x;
    }
    if (ss_dev <= ss_raw * 1e-20) throw DegenerateColumnError(j);
    inv_norm[j] = 1.0 / std::sqrt(ss_dev);
  }

  CorrelationMatrix r;
  r.p = p;
  r.entries.assign(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    r.entries[i * p + i] = 1.0;
    for (std::size_t j = i + 1; j < p; ++j) {
      double dot = 0.0;
      for (std::size_t row = 0; row < n; ++row)
        dot += dev[row * p + i] * dev[row * p + j];
      // group the norms so the result is exactly symmetric in (i, j)
      const double rij = dot * (inv_norm[i] * inv_norm[j]);
      r.entries[i * p + j] = rij;
      r.entries[j * p + i] = rij;
    }
  }
  return r;
}

double knn_corr_distance(const CorrelationMatrix& r, std::size_t k,
                         std::size_t i) {
  const std::size_t p = r.p;
  if (i >= p) throw std::invalid_argument("knn_corr_distance: bad column");
  if (k < 1 || k > p - 1)
    throw std::invalid_argument("knn_corr_distance: need 1 <= k <= p-1");
  std::vector<double> mags;
  mags.reserve(p - 1);
  for (std::size_t j = 0; j < p; ++j)
    if (j != i) mags.push_back(std::fabs(r(i, j)));
  std::nth_element(mags.begin(), mags.begin() + (k - 1), mags.end(),
                   std::greater<>());
  return mags[k - 1];
}

SummaryValue summary_statistic(const CorrelationMatrix& r, std::size_t delta) {
  const std::size_t p = r.p;
  if (delta < 1 || delta > p - 1)
    throw std::invalid_argument("summary_statistic: need 1 <= delta <= p-1");
  double v = 0.0;
  if (delta == 1) {
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j)
        v = std::max(v, std::fabs(r(i, j)));
  } else {
    for (std::size_t i = 0; i < p; ++i)
      v = std::max(v, knn_corr_distance(r, delta, i));
  }
  return SummaryValue{v, delta};
}

SummaryValue summary_statistic(const DataBlock& block, std::size_t delta) {
  return summary_statistic(sample_correlation(block), delta);
}

DegreeProfile degree_profile(const CorrelationMatrix& r, std::size_t delta,
                             double rho) {
  const std::size_t p = r.p;
  if (delta < 1 || delta > p - 1)
    throw std::invalid_argument("degree_profile: need 1 <= delta <= p-1");
  if (rho < 0.0 || rho > 1.0)
    throw std::invalid_argument("degree_profile: need rho in [0,1]");
  DegreeProfile out;
  out.rho = rho;
  out.delta = delta;
  out.degrees.assign(p, 0);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (std::fabs(r(i, j)) >= rho) {
        ++out.degrees[i];
        ++out.degrees[j];
      }
  for (std::size_t i = 0; i < p; ++i)
    if (out.degrees[i] >= delta) ++out.hub_count;
  return out;
}

}  // namespace vqcd
