#ifndef HECKE_SELBERG_ZETA_HPP
#define HECKE_SELBERG_ZETA_HPP

#include <optional>
#include <vector>

#include "hecke/fit.hpp"
#include "hecke/transfer_operator.hpp"

namespace hecke {

struct ZetaQuery {
  double w;
  UnitaryRep rep;
  Cplx s;
  std::optional<int> max_degree;     // override the adaptive M
  std::optional<double> disk_radius; // override the default R
  SpecFunOptions specfun;

  ZetaQuery(double w_, UnitaryRep rep_, Cplx s_) : w(w_), rep(std::move(rep_)), s(s_) {}
};

// Default degree growth: M = max(40, ceil(6 sqrt|Im s|) + 40).
int adaptive_degree(Cplx s);

struct ZetaValue {
  Cplx value;        // det(1 - A) at degree M + 20
  int degree_used;   // M + 20
  bool converged;    // |det_M - det_{M+20}| <= 1e-8 scale
  double m_gap;      // the measured degree-convergence gap
};

// Twisted Selberg zeta value as the Fredholm determinant, with the
// degree-convergence flag from recomputation at M + 20.
ZetaValue zeta_eval(const ZetaQuery& q);

struct EulerProductResult {
  Cplx value;
  std::size_t classes_used = 0;
  double ell_max = 0.0;
  int k_max = 0;
  double tail_heuristic = 0.0;  // estimated magnitude of the omitted log-factors
};

// Truncated Euler product over primitive classes with ell <= ell_max and
// k <= k_max.  Convergence region: Re s > delta (checked against delta_hint
// or a freshly computed value).
EulerProductResult euler_product(const ZetaQuery& q, double ell_max, int k_max,
                                 std::optional<double> delta_hint = std::nullopt);

// Relative gap |Z_ind - Z_triv Z_sign| / |Z_triv Z_sign| of the index-2
// factorization at the given point.
double factorization_check(double w, Cplx s, std::optional<int> max_degree = std::nullopt,
                           std::optional<double> disk_radius = std::nullopt);

struct GrowthScanRow {
  double t = 0.0;
  double sigma = 0.0;
  Cplx z;
  double log_abs_z = 0.0;
  int degree_used = 0;
  bool converged = false;
  bool skipped = false;  // pole-adjacent
};

struct GrowthScanResult {
  double sigma = 0.0;
  double delta = 0.0;  // dimension used for the reference fits
  std::vector<GrowthScanRow> rows;
  std::vector<double> window_t;       // dyadic window centers
  std::vector<double> window_max;     // window maxima of log|Z|
  LineFit envelope_fit;               // log(window max log|Z|) vs log t
  double beta_hat = 0.0;
  int windows_skipped = 0;            // windows with nonpositive max log|Z|
  // refined model log|Z| ~ c t^delta (log t)^{2-delta}
  double refined_coeff = 0.0;
  double refined_rms_residual = 0.0;
};

GrowthScanResult growth_scan(double w, const UnitaryRep& rep, double sigma, double t_min,
                             double t_max, int steps, double delta, int workers = 1);

}  // namespace hecke

#endif  // HECKE_SELBERG_ZETA_HPP
