#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vqcd {

/// One n×p observation matrix from the stream. Rows are i.i.d. samples
/// of a p-vector; entries are stored row-major.
struct DataBlock {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<double> values;  // n*p, row-major

  double operator()(std::size_t row, std::size_t col) const {
    return values[row * p + col];
  }
  double& operator()(std::size_t row, std::size_t col) {
    return values[row * p + col];
  }

  /// Throws std::invalid_argument if n < 3, p < 2, size mismatch, or any
  /// entry is non-finite.
  void validate() const;
};

/// Symmetric p×p sample correlation matrix with unit diagonal.
struct CorrelationMatrix {
  std::size_t p = 0;
  std::vector<double> entries;  // p*p, row-major, symmetric

  double operator()(std::size_t i, std::size_t j) const {
    return entries[i * p + j];
  }
};

/// Degrees and hub count of the thresholded correlation graph.
struct DegreeProfile {
  double rho = 0.0;
  std::size_t delta = 1;
  std::vector<std::size_t> degrees;  // degrees[i] = #{ j != i : |R_ij| >= rho }
  std::size_t hub_count = 0;         // #{ i : degrees[i] >= delta }
};

/// The scalar summary statistic V_delta in [0,1] plus the delta used.
struct SummaryValue {
  double v = 0.0;
  std::size_t delta = 1;
};

/// A column with zero sample variance after centering; correlation is
/// undefined for it.
class DegenerateColumnError : public std::runtime_error {
 public:
  explicit DegenerateColumnError(std::size_t column)
      : std::runtime_error("column " + std::to_string(column) +
                           " has zero sample variance"),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Pearson correlation matrix of the columns of `block`. Single centering
/// pass, then normalized inner products; the covariance matrix is never
/// formed. Throws DegenerateColumnError for a zero-variance column.
CorrelationMatrix sample_correlation(const DataBlock& block);

/// k-th largest |R_ij| over j != i (partial selection, no full sort).
/// Requires 1 <= k <= p-1.
double knn_corr_distance(const CorrelationMatrix& r, std::size_t k,
                         std::size_t i);

/// V_delta = max_i of the delta-th nearest-neighbor correlation magnitude.
/// For delta = 1 this is the largest off-diagonal |R_ij|.
SummaryValue summary_statistic(const DataBlock& block, std::size_t delta);

/// Same statistic computed from an already-built correlation matrix.
SummaryValue summary_statistic(const CorrelationMatrix& r, std::size_t delta);

/// Vertex degrees of the correlation graph at threshold rho (ties count
/// as edges) and the count of hubs of degree >= delta.
DegreeProfile degree_profile(const CorrelationMatrix& r, std::size_t delta,
                             double rho);

}  // namespace vqcd
