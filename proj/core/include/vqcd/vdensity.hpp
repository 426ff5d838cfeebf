#pragma once

#include <cstddef>
#include <random>
#include <span>

namespace vqcd {

/// Fixed constants of the limiting distribution of the summary statistic
/// for a given (n, p, delta). The single free parameter J lives outside.
///
/// a_n = 2 B((n-2)/2, 1/2), C = p * binom(p-1, delta) * a_n^delta,
/// phi = 2 when delta = 1 and 1 otherwise. C is kept in log space; p up
/// to ~1e4 and delta up to 5 stay finite.
struct ModelParams {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t delta = 1;
  double a_n = 0.0;
  double log_c = 0.0;   // log C
  double c = 0.0;       // exp(log_c); may be inf for extreme (p, delta)
  double phi = 2.0;
  double t0 = 0.0;      // T(0) = a_n / 4
  double w_max = 0.0;   // Lambda(0)/phi, the upper support point of W

  ModelParams(std::size_t n, std::size_t p, std::size_t delta);
};

/// Positive shape parameter of the exponential family; 1 under diagonal
/// (and approximately 1 under block-sparse) dispersion.
struct ShapeParam {
  double j = 1.0;
};

/// T(rho) = integral over [rho,1] of (1-u^2)^((n-4)/2) du, evaluated
/// through the regularized incomplete beta function. Strictly decreasing,
/// T(1) = 0, T(0) = a_n/4. Requires n >= 3.
double t_integral(double rho, std::size_t n);

/// Inverse of t_integral in rho for w in [0, T(0)]; bracketed
/// bisection/Newton on the monotone T, |error| <= 1e-12.
double t_inverse(double w, std::size_t n);

/// P_0(rho) = a_n * T(rho).
double p0(double rho, std::size_t n);

/// Lambda(rho) = C * T(rho)^delta, assembled in log space.
double lambda_of_rho(double rho, const ModelParams& params);

/// P(V <= rho) = exp(-Lambda(rho) * J / phi). Includes the atom at 0:
/// cdf_v(0) = exp(-Lambda(0) J / phi) > 0.
double cdf_v(double rho, const ModelParams& params, double j);

/// Log density of the continuous component on (0,1]. Throws
/// std::domain_error at rho = 0 (the atom) and for rho = 1 with n = 3
/// (divergent integrand).
double log_pdf_v(double rho, const ModelParams& params, double j);

/// W = Lambda(rho)/phi. If V ~ f_V(.; J) then W is Exponential(rate J)
/// truncated to [0, w_max]; this is the detector's working statistic.
double w_transform(double rho, const ModelParams& params);

/// Inverse-transform draw from the V distribution, atom at 0 included.
double sample_v(const ModelParams& params, double j, std::mt19937_64& rng);

/// Rate MLE of J on the W-transformed samples: m / sum W. Throws
/// std::domain_error when every sample has W = 0 (all rho = 1).
ShapeParam mle_j(std::span<const double> samples, const ModelParams& params);

/// KL divergence I(J) between f_V(.; J) and f_V(.; 1): log J + 1/J - 1.
double kl_divergence(double j);

}  // namespace vqcd
