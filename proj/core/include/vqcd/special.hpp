#pragma once

namespace vqcd::special {

/// log B(a, b) via lgamma.
double log_beta(double a, double b);

/// Regularized incomplete beta function I_x(a, b), x in [0,1], a,b > 0.
/// Modified Lentz continued fraction; picks the branch that converges fast
/// and uses the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) otherwise.
double reg_inc_beta(double x, double a, double b);

}  // namespace vqcd::special
