#ifndef ADVISORY_SPECIAL_FUNCTIONS_HPP
#define ADVISORY_SPECIAL_FUNCTIONS_HPP

namespace advisory::sf {

// ln Gamma(x), x > 0. Lanczos approximation (g = 7, 9 coefficients),
// relative error below 1e-13 on [0.5, 200].
double ln_gamma(double x);

// Regularized incomplete beta I_x(a, b), a,b > 0, x in [0,1].
// Continued fraction (modified Lentz), switching to the complement
// branch when x > (a+1)/(a+b+2).
double reg_inc_beta(double a, double b, double x);

// Student-t CDF and its inverse; df > 0, non-integer df accepted.
double t_cdf(double t, double df);
double t_inv(double p, double df); // p in (0, 1)

// F distribution CDF and inverse; d1, d2 > 0.
double f_cdf(double f, double d1, double d2);
double f_inv(double p, double d1, double d2); // p in [0, 1)

} // namespace advisory::sf

#endif
