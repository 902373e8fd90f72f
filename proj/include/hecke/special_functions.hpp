#ifndef HECKE_SPECIAL_FUNCTIONS_HPP
#define HECKE_SPECIAL_FUNCTIONS_HPP

#include <complex>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/fit.hpp"

namespace hecke {

using Cplx = std::complex<double>;

struct SpecFunOptions {
  int min_terms = 20;       // Euler-Maclaurin head length floor
  int bernoulli_terms = 12; // correction terms (B_2 .. B_24)
  bool compensated = false; // Kahan-compensated head summation
};

// log Gamma via a fixed Lanczos approximation (g = 7, 9 terms) with
// reflection for Re z < 1/2.  The imaginary part may differ from the
// principal branch by a multiple of 2 pi; exp(log_gamma(z)) is exact.
Cplx log_gamma(Cplx z);
Cplx gamma_fn(Cplx z);

// Hurwitz zeta sum_{n>=0} (n+a)^{-s}, continued to all s != 1 by
// Euler-Maclaurin with N >= max(min_terms, 2|Im s|) head terms.
Cplx hurwitz_zeta(Cplx s, double a, const SpecFunOptions& opts = {});

enum class PeriodicZetaMethod { Auto, Direct, Continuation };

// Periodic zeta F(lambda, sigma) = sum_{n>=1} exp(2 pi i n lambda) n^{-sigma}.
// lambda is reduced mod 1.  Direct route: Euler-Maclaurin applied to the
// twisted series with an incomplete-gamma tail integral (valid Re sigma > 0).
// Continuation route: the Jonquiere-Hurwitz formula for lambda in (0,1);
// lambda = 0 falls back to the Hurwitz continuation of the Riemann zeta.
Cplx periodic_zeta(double lambda, Cplx sigma,
                   PeriodicZetaMethod method = PeriodicZetaMethod::Auto,
                   const SpecFunOptions& opts = {});

// Point query carrier for the periodic zeta; reduces lambda at construction.
struct PeriodicZetaQuery {
  double lambda = 0.0;
  Cplx sigma;
  PeriodicZetaMethod method = PeriodicZetaMethod::Auto;

  PeriodicZetaQuery(double lambda_, Cplx sigma_,
                    PeriodicZetaMethod method_ = PeriodicZetaMethod::Auto);
  bool at_pole() const;  // lambda = 0 pole marker at sigma = 1
  Cplx evaluate(const SpecFunOptions& opts = {}) const;
};

// Lerch zeta H(z, s, lambda) = sum_{n>=1} exp(2 pi i n lambda) (n+z)^{-s},
// |z| < 1, via the Taylor expansion in z with periodic-zeta coefficients.
Cplx lerch(Cplx z, Cplx s, double lambda, const SpecFunOptions& opts = {});

struct LerchGrowthRow {
  double t = 0.0;
  double abs_h = 0.0;
};

struct LerchGrowthScan {
  std::vector<LerchGrowthRow> rows;
  std::vector<double> window_t;    // dyadic window centers
  std::vector<double> window_max;  // per-window maxima of |H|
  LineFit fit;                     // log|H| max vs log t
  double alpha_hat = 0.0;
  int skipped_poles = 0;
};

// Measures |H(z, sigma + i t, lambda)| on a grid of |t| >= 1 and fits the
// polynomial growth exponent over dyadic-window maxima.
LerchGrowthScan lerch_growth_scan(double lambda, double sigma, Cplx z,
                                  const std::vector<double>& t_grid,
                                  const SpecFunOptions& opts = {});

// Rising factorial (x)_j by direct recursion.
Cplx pochhammer(Cplx x, int j);

// exp(e * log(base)) for base > 0.
Cplx cpow_pos(double base, Cplx e);

}  // namespace hecke

#endif  // HECKE_SPECIAL_FUNCTIONS_HPP
