#include "vqcd/vdensity.hpp"

#include <cmath>
#include <stdexcept>

#include "vqcd/special.hpp"

namespace vqcd {

namespace {

void check_n(std::size_t n) {
  if (n < 3) throw std::invalid_argument("need n >= 3");
}

double log_binom(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

ModelParams::ModelParams(std::size_t n_, std::size_t p_, std::size_t delta_)
    : n(n_), p(p_), delta(delta_) {
  check_n(n);
  if (p < 2) throw std::invalid_argument("ModelParams: need p >= 2");
  if (delta < 1 || delta > p - 1)
    throw std::invalid_argument("ModelParams: need 1 <= delta <= p-1");
  const double half_nm2 = 0.5 * static_cast<double>(n - 2);
  a_n = 2.0 * std::exp(special::log_beta(half_nm2, 0.5));
  log_c = std::log(static_cast<double>(p)) + log_binom(p - 1, delta) +
          static_cast<double>(delta) * std::log(a_n);
  c = std::exp(log_c);
  phi = (delta == 1) ? 2.0 : 1.0;
  t0 = a_n / 4.0;
  w_max = std::exp(log_c + static_cast<double>(delta) * std::log(t0)) / phi;
}

double t_integral(double rho, std::size_t n) {
  check_n(n);
  if (rho < 0.0 || rho > 1.0)
    throw std::invalid_argument("t_integral: need rho in [0,1]");
  if (rho == 1.0) return 0.0;
  // Substituting t = u^2:
  //   T(rho) = (1/2) B(1/2, (n-2)/2) * I_{1-rho^2}((n-2)/2, 1/2).
  // The complement form stays accurate as rho -> 1, the regime the
  // detector lives in.
  const double b = 0.5 * static_cast<double>(n - 2);
  const double x = (1.0 - rho) * (1.0 + rho);
  return 0.5 * std::exp(special::log_beta(0.5, b)) *
         special::reg_inc_beta(x, b, 0.5);
}

double t_inverse(double w, std::size_t n) {
  check_n(n);
  const double t_top = t_integral(0.0, n);
  if (w < 0.0 || w > t_top * (1.0 + 1e-12))
    throw std::out_of_range("t_inverse: w outside [0, T(0)]");
  if (w <= 0.0) return 1.0;
  if (w >= t_top) return 0.0;

  // Bisection to a coarse bracket, then safeguarded Newton with
  // T'(rho) = -(1-rho^2)^((n-4)/2).
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 20; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (t_integral(mid, n) > w)
      lo = mid;
    else
      hi = mid;
  }
  const double expo = 0.5 * (static_cast<double>(n) - 4.0);
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    const double f = t_integral(x, n) - w;
    if (f > 0.0)
      lo = x;
    else
      hi = x;
    const double deriv = -std::pow((1.0 - x) * (1.0 + x), expo);
    double next = x - f / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) < 1e-13) return next;
    x = next;
  }
  return x;
}

double p0(double rho, std::size_t n) {
  check_n(n);
  const double half_nm2 = 0.5 * static_cast<double>(n - 2);
  const double a_n = 2.0 * std::exp(special::log_beta(half_nm2, 0.5));
  return a_n * t_integral(rho, n);
}

double lambda_of_rho(double rho, const ModelParams& params) {
  const double t = t_integral(rho, params.n);
  if (t == 0.0) return 0.0;
  return std::exp(params.log_c +
                  static_cast<double>(params.delta) * std::log(t));
}

double cdf_v(double rho, const ModelParams& params, double j) {
  if (j <= 0.0) throw std::invalid_argument("cdf_v: need J > 0");
  return std::exp(-lambda_of_rho(rho, params) * j / params.phi);
}

double log_pdf_v(double rho, const ModelParams& params, double j) {
  if (j <= 0.0) throw std::invalid_argument("log_pdf_v: need J > 0");
  if (rho <= 0.0)
    throw std::domain_error("log_pdf_v: rho = 0 is the atom, not a density point");
  if (rho > 1.0) throw std::invalid_argument("log_pdf_v: need rho <= 1");
  if (rho == 1.0 && params.n == 3)
    throw std::domain_error("log_pdf_v: integrand diverges at rho = 1 for n = 3");
  const double d = static_cast<double>(params.delta);
  const double t = t_integral(rho, params.n);
  // (1-rho)(1+rho) form: 1-rho is exact for rho in [0.5,1], so no
  // cancellation where the density concentrates. -inf at rho = 1.
  const double log_one_minus_rho2 = std::log(1.0 - rho) + std::log1p(rho);
  double out = params.log_c + std::log(d) - std::log(params.phi) +
               0.5 * (static_cast<double>(params.n) - 4.0) * log_one_minus_rho2 +
               std::log(j) - w_transform(rho, params) * j;
  if (params.delta > 1) out += (d - 1.0) * std::log(t);
  return out;
}

double w_transform(double rho, const ModelParams& params) {
  return lambda_of_rho(rho, params) / params.phi;
}

double sample_v(const ModelParams& params, double j, std::mt19937_64& rng) {
  if (j <= 0.0) throw std::invalid_argument("sample_v: need J > 0");
  std::exponential_distribution<double> exp_dist(j);
  const double e = exp_dist(rng);
  if (e > params.w_max) return 0.0;  // the atom
  if (e <= 0.0) return 1.0;
  // Unwind W = C T^delta / phi for the T target, in log space.
  const double log_t = (std::log(e) + std::log(params.phi) - params.log_c) /
                       static_cast<double>(params.delta);
  return t_inverse(std::exp(log_t), params.n);
}

ShapeParam mle_j(std::span<const double> samples, const ModelParams& params) {
  if (samples.empty()) throw std::invalid_argument("mle_j: no samples");
  double sum_w = 0.0;
  for (double v : samples) sum_w += w_transform(v, params);
  if (sum_w <= 0.0)
    throw std::domain_error("mle_j: all samples at rho = 1, estimate infinite");
  return ShapeParam{static_cast<double>(samples.size()) / sum_w};
}

double kl_divergence(double j) {
  if (j <= 0.0) throw std::invalid_argument("kl_divergence: need J > 0");
  return std::log(j) + 1.0 / j - 1.0;
}

}  // namespace vqcd
