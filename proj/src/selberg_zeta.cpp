#include "hecke/selberg_zeta.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "hecke/parallel.hpp"
#include "hecke/resonances.hpp"
#include "hecke/words.hpp"

namespace hecke {

int adaptive_degree(Cplx s) {
  return std::max(40, static_cast<int>(std::ceil(6.0 * std::sqrt(std::abs(s.imag())))) + 40);
}

namespace {

DiscretizationParams params_for(const ZetaQuery& q, int degree) {
  DiscretizationParams p(q.w, q.rep, degree, q.disk_radius.value_or(0.0));
  p.specfun = q.specfun;
  return p;
}

}  // namespace

ZetaValue zeta_eval(const ZetaQuery& q) {
  const int m = q.max_degree.value_or(adaptive_degree(q.s));
  const Cplx d1 = fredholm_det(q.s, params_for(q, m));
  const Cplx d2 = fredholm_det(q.s, params_for(q, m + 20));
  ZetaValue out;
  out.value = d2;
  out.degree_used = m + 20;
  out.m_gap = std::abs(d1 - d2);
  out.converged = out.m_gap <= 1e-8 * std::max(1.0, std::abs(d2));
  return out;
}

EulerProductResult euler_product(const ZetaQuery& q, double ell_max, int k_max,
                                 std::optional<double> delta_hint) {
  if (ell_max <= 0.0) throw param_error("euler_product: ell_max must be positive");
  if (k_max < 0) throw param_error("euler_product: k_max must be >= 0");
  const double delta = delta_hint ? *delta_hint : compute_delta(q.w, 1e-8).delta;
  if (q.s.real() <= delta + 0.05)
    throw regime_error("euler_product: requires Re s > delta + 0.05 (delta = " +
                       std::to_string(delta) + ")");

  const auto classes = enumerate_primitive_classes(q.w, ell_max);
  // log det(1_V - rho(gamma) e^{-(s+k) l}) accumulated over classes and k.
  Cplx log_prod{0.0, 0.0};
  const int d = q.rep.dim();
  for (const auto& cls : classes) {
    const CMatrix rho = evaluate_rep(q.rep, cls.word);
    for (int k = 0; k <= k_max; ++k) {
      const Cplx factor = std::exp(-(q.s + static_cast<double>(k)) * cls.length);
      const CMatrix mat = CMatrix::Identity(d, d) - factor * rho;
      log_prod += std::log(mat.partialPivLu().determinant());
    }
  }

  EulerProductResult out;
  out.value = std::exp(log_prod);
  out.classes_used = classes.size();
  out.ell_max = ell_max;
  out.k_max = k_max;
  // Omitted-length heuristic from the prime geodesic growth e^{delta l}/(delta l):
  // sum_{l > L} d e^{-Re s l} dN(l) ~ d e^{-(Re s - delta) L} / ((Re s - delta) L).
  const double gap_exp = q.s.real() - delta;
  out.tail_heuristic = d * std::exp(-gap_exp * ell_max) / (gap_exp * ell_max) +
                       d * classes.size() *
                           std::exp(-(q.s.real() + k_max + 1) * 2.0 * std::acosh(q.w / 2.0));
  return out;
}

double factorization_check(double w, Cplx s, std::optional<int> max_degree,
                           std::optional<double> disk_radius) {
  const int m = max_degree.value_or(adaptive_degree(s));
  const double r = disk_radius.value_or(0.0);

  DiscretizationParams p_ind(w, UnitaryRep::induced_index2(), m, r);
  DiscretizationParams p_triv(w, UnitaryRep::trivial(), m, r);
  DiscretizationParams p_sign(w, UnitaryRep::sign(), m, r);
  const Cplx z_ind = fredholm_det(s, p_ind);
  const Cplx z_triv = fredholm_det(s, p_triv);
  const Cplx z_sign = fredholm_det(s, p_sign);
  const Cplx prod = z_triv * z_sign;
  return std::abs(z_ind - prod) / std::abs(prod);
}

GrowthScanResult growth_scan(double w, const UnitaryRep& rep, double sigma, double t_min,
                             double t_max, int steps, double delta, int workers) {
  if (t_min < 1.0) throw param_error("growth_scan: t_min must be >= 1");
  if (t_max <= t_min) throw param_error("growth_scan: t_max must exceed t_min");
  if (steps < 4) throw param_error("growth_scan: need at least 4 grid points");

  GrowthScanResult out;
  out.sigma = sigma;
  out.delta = delta;
  out.rows.resize(steps);

  parallel_for(steps, workers, [&](std::size_t i) {
    const double t =
        t_min * std::pow(t_max / t_min, static_cast<double>(i) / (steps - 1));
    GrowthScanRow row;
    row.t = t;
    row.sigma = sigma;
    try {
      ZetaQuery q(w, rep, Cplx(sigma, t));
      const ZetaValue zv = zeta_eval(q);
      row.z = zv.value;
      row.log_abs_z = std::log(std::abs(zv.value));
      row.degree_used = zv.degree_used;
      row.converged = zv.converged;
    } catch (const pole_error&) {
      row.skipped = true;
    }
    out.rows[i] = row;
  });

  // dyadic windows [t_min 2^k, t_min 2^{k+1})
  std::vector<double> wmax, wt;
  for (const auto& row : out.rows) {
    if (row.skipped) continue;
    const int k = static_cast<int>(std::floor(std::log2(row.t / t_min) + 1e-12));
    if (static_cast<int>(wmax.size()) <= k) {
      wmax.resize(k + 1, -1e300);
      wt.resize(k + 1, 0.0);
    }
    wmax[k] = std::max(wmax[k], row.log_abs_z);
    wt[k] = t_min * std::pow(2.0, k + 0.5);
  }
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < wmax.size(); ++k) {
    if (wt[k] == 0.0) continue;
    if (wmax[k] <= 0.0) {
      ++out.windows_skipped;  // log of a nonpositive envelope value
      continue;
    }
    out.window_t.push_back(wt[k]);
    out.window_max.push_back(wmax[k]);
    xs.push_back(std::log(wt[k]));
    ys.push_back(std::log(wmax[k]));
  }
  if (xs.size() >= 3) {
    out.envelope_fit = fit_line(xs, ys);
    out.beta_hat = out.envelope_fit.slope;
  } else {
    out.beta_hat = 0.0;  // bounded envelope; reported via windows_skipped
  }

  // refined one-parameter fit log|Z| ~ c t^delta (log t)^{2-delta} on window maxima
  if (!out.window_t.empty()) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < out.window_t.size(); ++i) {
      const double model = std::pow(out.window_t[i], delta) *
                           std::pow(std::log(out.window_t[i]), 2.0 - delta);
      num += model * out.window_max[i];
      den += model * model;
    }
    out.refined_coeff = den > 0.0 ? num / den : 0.0;
    double ss = 0.0;
    for (std::size_t i = 0; i < out.window_t.size(); ++i) {
      const double model = out.refined_coeff * std::pow(out.window_t[i], delta) *
                           std::pow(std::log(out.window_t[i]), 2.0 - delta);
      ss += std::pow(out.window_max[i] - model, 2);
    }
    out.refined_rms_residual = std::sqrt(ss / out.window_t.size());
  }
  return out;
}

}  // namespace hecke
