#include "hecke/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hecke {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Cplx kI{0.0, 1.0};

// B_{2k} / (2k)! for k = 1..12, computed from the exact rationals.
const double kBernoulliOverFact[13] = {
    0.0,
    (1.0 / 6.0) / 2.0,
    (-1.0 / 30.0) / 24.0,
    (1.0 / 42.0) / 720.0,
    (-1.0 / 30.0) / 40320.0,
    (5.0 / 66.0) / 3628800.0,
    (-691.0 / 2730.0) / 479001600.0,
    (7.0 / 6.0) / 87178291200.0,
    (-3617.0 / 510.0) / 20922789888000.0,
    (43867.0 / 798.0) / 6402373705728000.0,
    (-174611.0 / 330.0) / 2432902008176640000.0,
    (854513.0 / 138.0) / 1.1240007277776077e21,
    (-236364091.0 / 2730.0) / 6.204484017332394e23,
};

struct KahanSum {
  Cplx s{0.0, 0.0};
  Cplx c{0.0, 0.0};
  void add(Cplx x) {
    const Cplx y = x - c;
    const Cplx t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

double binom_d(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// log sin(pi z), branch only determined mod 2 pi i.
Cplx log_sin_pi(Cplx z) {
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  // sin(pi z) = -exp(-i pi z)/(2i) * (1 - exp(2 i pi z)); |exp(2 i pi z)| <= 1 here.
  return -kI * kPi * z + std::log(1.0 - std::exp(kTwoPi * kI * z)) -
         std::log(2.0 * kI) + kI * kPi;
}

// exp(x) - 1 without cancellation for small |x|.
Cplx cexpm1(Cplx x) {
  const double er = std::expm1(x.real());
  const double s = std::sin(x.imag());
  const double c2 = -2.0 * std::pow(std::sin(x.imag() / 2.0), 2);  // cos(im) - 1
  return Cplx(er * (1.0 + c2) + c2, (er + 1.0) * s);
}

Cplx lanczos_log_gamma_halfplane(Cplx z) {
  // g = 7, 9-term coefficient set.
  static const double c[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
  };
  const Cplx zm1 = z - 1.0;
  Cplx acc = c[0];
  for (int k = 1; k < 9; ++k) acc += c[k] / (zm1 + static_cast<double>(k));
  const Cplx t = zm1 + 7.5;
  return 0.5 * std::log(kTwoPi) + (zm1 + 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

Cplx log_gamma(Cplx z) {
  if (z.real() >= 0.5) return lanczos_log_gamma_halfplane(z);
  // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
  if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
    throw pole_error("log_gamma: nonpositive integer argument");
  return std::log(Cplx(kPi)) - log_sin_pi(z) - lanczos_log_gamma_halfplane(1.0 - z);
}

Cplx gamma_fn(Cplx z) { return std::exp(log_gamma(z)); }

Cplx pochhammer(Cplx x, int j) {
  Cplx p{1.0, 0.0};
  for (int i = 0; i < j; ++i) p *= x + static_cast<double>(i);
  return p;
}

Cplx cpow_pos(double base, Cplx e) {
  if (base <= 0.0) throw param_error("cpow_pos: base must be positive");
  return std::exp(e * std::log(base));
}

namespace {

// Shared Euler-Maclaurin core.  With regularized = true the simple pole is
// subtracted: returns zeta(s, a) - 1/(s - 1), analytic at s = 1.
Cplx hurwitz_em(Cplx s, double a, const SpecFunOptions& opts, bool regularized) {
  if (a <= 0.0) throw param_error("hurwitz_zeta: shift a must be positive");
  if (!regularized && std::abs(s - Cplx(1.0)) < 1e-13)
    throw pole_error("hurwitz_zeta: pole at s = 1");

  const int kmax = std::clamp(opts.bernoulli_terms, 1, 12);
  long long n_head = std::max<long long>(opts.min_terms,
                                         static_cast<long long>(std::ceil(2.0 * std::abs(s.imag()))));
  for (int attempt = 0; attempt < 5; ++attempt) {
    KahanSum head;
    Cplx plain{0.0, 0.0};
    for (long long n = 0; n < n_head; ++n) {
      const Cplx term = std::exp(-s * std::log(a + static_cast<double>(n)));
      if (opts.compensated)
        head.add(term);
      else
        plain += term;
    }
    Cplx sum = opts.compensated ? head.s : plain;

    const double p = a + static_cast<double>(n_head);
    const Cplx p_minus_s = std::exp(-s * std::log(p));  // p^{-s}
    if (regularized) {
      // p^{1-s}/(s-1) - 1/(s-1) = -expm1((1-s) log p)/(1-s)
      const Cplx one_minus_s = 1.0 - s;
      if (std::abs(one_minus_s) < 1e-14)
        sum += std::log(p);  // limit of the difference quotient
      else
        sum += -cexpm1(one_minus_s * std::log(p)) / one_minus_s;
    } else {
      sum += p_minus_s * p / (s - 1.0);  // integral term p^{1-s}/(s-1)
    }
    sum += 0.5 * p_minus_s;

    // Correction terms C_{2k} (s)_{2k-1} p^{-s-2k+1}.
    Cplx poch = s;                       // (s)_1
    Cplx p_pow = p_minus_s / p;          // p^{-s-1}
    const double inv_p2 = 1.0 / (p * p);
    double prev_mag = 0.0, last_mag = 0.0;
    for (int k = 1; k <= kmax; ++k) {
      const Cplx term = kBernoulliOverFact[k] * poch * p_pow;
      sum += term;
      prev_mag = last_mag;
      last_mag = std::abs(term);
      if (k < kmax) {
        poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        p_pow *= inv_p2;
      }
    }
    // Geometric extrapolation of the truncated correction tail.
    const double ratio = prev_mag > 0.0 ? std::min(last_mag / prev_mag, 0.95) : 0.0;
    const double tail_est = last_mag * ratio / (1.0 - ratio);
    if (last_mag == 0.0 || tail_est <= std::max(5e-15 * std::abs(sum), 1e-17)) return sum;
    n_head *= 2;
  }
  throw numeric_error("hurwitz_zeta: Euler-Maclaurin failed to settle");
}

}  // namespace

Cplx hurwitz_zeta(Cplx s, double a, const SpecFunOptions& opts) {
  return hurwitz_em(s, a, opts, false);
}

namespace {

// Continued fraction H(a, z) with Gamma(a, z) = exp(-z) z^a H(a, z)
// (modified Lentz).  Valid away from the negative real z-axis.
Cplx incomplete_gamma_cf(Cplx a, Cplx z) {
  const double tiny = 1e-300;
  Cplx b = z + 1.0 - a;
  Cplx c = 1.0 / tiny;
  Cplx d = 1.0 / b;
  Cplx h = d;
  for (int i = 1; i <= 20000; ++i) {
    const Cplx an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const Cplx del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 3e-16) return h;
  }
  throw numeric_error("incomplete_gamma_cf: continued fraction did not converge");
}

// Euler-Maclaurin evaluation of sum_{n>=1} exp(2 pi i n lambda) n^{-sigma}
// for lambda in (0, 1/2].  The tail integral is
//   int_N^inf x^{-sigma} e^{i beta x} dx = N^{1-sigma} e^{i beta N} H(1-sigma, -i beta N).
Cplx twisted_euler_maclaurin(double lambda, Cplx sigma, const SpecFunOptions& opts) {
  const double beta = kTwoPi * lambda;
  const int kmax = std::clamp(opts.bernoulli_terms, 1, 12);
  long long n_tail = std::max<long long>(
      {static_cast<long long>(opts.min_terms) + 4,
       static_cast<long long>(std::ceil(2.0 * std::abs(sigma.imag()))),
       static_cast<long long>(std::ceil(3.0 / lambda))});

  for (int attempt = 0; attempt < 8; ++attempt) {
    const double nn = static_cast<double>(n_tail);
    KahanSum head;
    Cplx plain{0.0, 0.0};
    for (long long n = 1; n < n_tail; ++n) {
      const double frac = n * lambda - std::floor(n * lambda);
      const Cplx term = std::polar(1.0, kTwoPi * frac) *
                        std::exp(-sigma * std::log(static_cast<double>(n)));
      if (opts.compensated)
        head.add(term);
      else
        plain += term;
    }
    Cplx sum = opts.compensated ? head.s : plain;

    Cplx tail_ok{0.0, 0.0};
    bool cf_failed = false;
    try {
      const Cplx z = -kI * beta * nn;
      const Cplx phase = std::polar(1.0, beta * nn);
      tail_ok = std::exp((1.0 - sigma) * std::log(nn)) * phase *
                incomplete_gamma_cf(1.0 - sigma, z);
    } catch (const numeric_error&) {
      cf_failed = true;
    }
    if (!cf_failed) {
      sum += tail_ok;

      const Cplx e_ibn = std::polar(1.0, kTwoPi * (nn * lambda - std::floor(nn * lambda)));
      const Cplx n_minus_sigma = std::exp(-sigma * std::log(nn));
      sum += 0.5 * e_ibn * n_minus_sigma;

      // - sum_k C_{2k} f^{(2k-1)}(N), f(x) = e^{i beta x} x^{-sigma}:
      // f^{(m)}(N) = e^{i beta N} sum_j C(m,j) (i beta)^{m-j} (-1)^j (sigma)_j N^{-sigma-j}.
      std::vector<Cplx> poch_table(2 * kmax);
      {
        Cplx p{1.0, 0.0};
        for (int j = 0; j < 2 * kmax; ++j) {
          poch_table[j] = p;  // (sigma)_j
          p *= sigma + static_cast<double>(j);
        }
      }
      double prev_mag = 0.0, last_mag = 0.0;
      for (int k = 1; k <= kmax; ++k) {
        const int m = 2 * k - 1;
        Cplx deriv{0.0, 0.0};
        Cplx ib_pow = std::pow(kI * beta, m);  // (i beta)^m
        double n_pow = 1.0;                    // N^{-j} accumulator
        for (int j = 0; j <= m && j < 2 * kmax; ++j) {
          const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
          deriv += binom_d(m, j) * ib_pow * sgn * poch_table[j] * n_pow;
          ib_pow /= kI * beta;
          n_pow /= nn;
        }
        deriv *= e_ibn * n_minus_sigma;
        const Cplx term = kBernoulliOverFact[k] * deriv;
        sum -= term;
        prev_mag = last_mag;
        last_mag = std::abs(term);
      }
      // The correction terms decay geometrically with ratio ~ lambda^2;
      // extrapolate the truncated tail and accept once it is negligible.
      const double ratio = prev_mag > 0.0 ? std::min(last_mag / prev_mag, 0.95) : 0.0;
      const double tail_est = last_mag * ratio / (1.0 - ratio);
      if (last_mag == 0.0 || tail_est <= std::max(1e-13 * std::abs(sum), 1e-16))
        return sum;
    }
    n_tail *= 2;
  }
  throw numeric_error("periodic_zeta: twisted Euler-Maclaurin failed to settle");
}

Cplx jonquiere_continuation(double lambda, Cplx sigma, const SpecFunOptions& opts) {
  // F(lambda, sigma) = Gamma(1-sigma) (2 pi)^{sigma-1}
  //   [ e^{i pi (1-sigma)/2} zeta(1-sigma, lambda)
  //   + e^{-i pi (1-sigma)/2} zeta(1-sigma, 1-lambda) ].
  const Cplx one_minus = 1.0 - sigma;
  const Cplx lg = log_gamma(one_minus);
  const Cplx base = lg + (sigma - 1.0) * std::log(kTwoPi);
  const Cplx rot = kI * kPi * one_minus * 0.5;

  if (std::abs(sigma) < 0.05) {
    // The Hurwitz poles at 1 - sigma = 1 cancel between the two terms;
    // evaluate the bracket with the pole subtracted:
    //   -2 sin(pi sigma / 2)/sigma + e^{i rot} zreg(lambda) + e^{-i rot} zreg(1-lambda)
    // with zreg(a) = zeta(1-sigma, a) - 1/(-sigma).
    const Cplx za = hurwitz_em(one_minus, lambda, opts, true);
    const Cplx zb = hurwitz_em(one_minus, 1.0 - lambda, opts, true);
    Cplx sin_ratio;
    if (std::abs(sigma) < 1e-30)
      sin_ratio = kPi / 2.0;
    else
      sin_ratio = std::sin(kPi * sigma / 2.0) / sigma;
    const Cplx bracket = -2.0 * sin_ratio + std::exp(rot) * za + std::exp(-rot) * zb;
    return std::exp(base) * bracket;
  }

  const Cplx za = hurwitz_zeta(one_minus, lambda, opts);
  const Cplx zb = hurwitz_zeta(one_minus, 1.0 - lambda, opts);
  return std::exp(base + rot) * za + std::exp(base - rot) * zb;
}

// Riemann zeta continued to all sigma != 1; the reflection branch keeps the
// Euler-Maclaurin sum away from the cancellation-heavy far-left region.
Cplx riemann_zeta(Cplx sigma, const SpecFunOptions& opts) {
  if (std::abs(sigma - Cplx(1.0)) < 1e-13)
    throw pole_error("periodic_zeta: pole at sigma = 1 for lambda = 0");
  if (sigma.real() >= -0.5) return hurwitz_em(sigma, 1.0, opts, false);
  // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s), assembled in
  // log space so the Gamma decay and sine growth cancel before exp.
  const Cplx log_chi = sigma * std::log(2.0) + (sigma - 1.0) * std::log(kPi) +
                       log_sin_pi(sigma / 2.0) + log_gamma(1.0 - sigma);
  return std::exp(log_chi) * hurwitz_em(1.0 - sigma, 1.0, opts, false);
}

double reduce_lambda(double lambda) {
  double l = lambda - std::floor(lambda);
  if (l >= 1.0) l -= 1.0;
  if (l < 0.0) l += 1.0;
  if (l < 1e-12 || l > 1.0 - 1e-12) l = 0.0;
  return l;
}

}  // namespace

Cplx periodic_zeta(double lambda, Cplx sigma, PeriodicZetaMethod method,
                   const SpecFunOptions& opts) {
  const double l = reduce_lambda(lambda);
  if (l == 0.0) return riemann_zeta(sigma, opts);

  auto direct = [&](double lam, Cplx sg) -> Cplx {
    if (sg.real() <= 0.05)
      throw regime_error("periodic_zeta: direct summation needs Re sigma > 0");
    if (lam > 0.5) return std::conj(twisted_euler_maclaurin(1.0 - lam, std::conj(sg), opts));
    return twisted_euler_maclaurin(lam, sg, opts);
  };

  switch (method) {
    case PeriodicZetaMethod::Direct:
      return direct(l, sigma);
    case PeriodicZetaMethod::Continuation:
      return jonquiere_continuation(l, sigma, opts);
    case PeriodicZetaMethod::Auto:
    default: {
      if (sigma.real() > 1.5) return direct(l, sigma);
      // Near positive integers the Jonquiere formula is an indeterminate
      // Gamma-pole times bracket-zero product; use the series route there.
      const double nearest = std::round(sigma.real());
      if (nearest >= 1.0 && std::abs(sigma - Cplx(nearest)) < 0.05) return direct(l, sigma);
      return jonquiere_continuation(l, sigma, opts);
    }
  }
}

PeriodicZetaQuery::PeriodicZetaQuery(double lambda_, Cplx sigma_, PeriodicZetaMethod method_)
    : lambda(reduce_lambda(lambda_)), sigma(sigma_), method(method_) {}

bool PeriodicZetaQuery::at_pole() const {
  return lambda == 0.0 && std::abs(sigma - Cplx(1.0)) < 1e-13;
}

Cplx PeriodicZetaQuery::evaluate(const SpecFunOptions& opts) const {
  return periodic_zeta(lambda, sigma, method, opts);
}

Cplx lerch(Cplx z, Cplx s, double lambda, const SpecFunOptions& opts) {
  if (std::abs(z) >= 1.0)
    throw param_error("lerch: |z| < 1 required (Taylor radius)");
  if (std::abs(z) == 0.0) return periodic_zeta(lambda, s, PeriodicZetaMethod::Auto, opts);

  Cplx sum{0.0, 0.0};
  Cplx coeff{1.0, 0.0};  // (s)_j / j! * (-z)^j
  const double az = std::abs(z);
  for (int j = 0; j < 4000; ++j) {
    const Cplx f = periodic_zeta(lambda, s + static_cast<double>(j),
                                 PeriodicZetaMethod::Auto, opts);
    const Cplx term = coeff * f;
    sum += term;
    const double ratio = az * (std::abs(s) + j + 1) / (j + 1);
    if (ratio < 0.9) {
      const double tail_bound = 2.0 * std::abs(term) * ratio / (1.0 - ratio);
      if (tail_bound <= 1e-14 * (std::abs(sum) + 1e-300)) return sum;
    }
    coeff *= (s + static_cast<double>(j)) * (-z) / static_cast<double>(j + 1);
  }
  throw numeric_error("lerch: Taylor series did not converge");
}

LerchGrowthScan lerch_growth_scan(double lambda, double sigma, Cplx z,
                                  const std::vector<double>& t_grid,
                                  const SpecFunOptions& opts) {
  LerchGrowthScan scan;
  for (double t : t_grid) {
    if (std::abs(t) < 1.0) throw param_error("lerch_growth_scan: grid requires |t| >= 1");
    try {
      const double v = std::abs(lerch(z, Cplx(sigma, t), lambda, opts));
      scan.rows.push_back({t, v});
    } catch (const pole_error&) {
      ++scan.skipped_poles;
    }
  }
  if (scan.rows.size() < 4)
    throw param_error("lerch_growth_scan: not enough usable grid points");

  // Dyadic windows [t0 2^k, t0 2^{k+1}) anchored at the smallest |t|.
  const double t0 = std::abs(scan.rows.front().t);
  std::vector<double> wmax;
  std::vector<double> wt;
  for (const auto& row : scan.rows) {
    const double at = std::abs(row.t);
    const int k = static_cast<int>(std::floor(std::log2(at / t0) + 1e-12));
    if (static_cast<int>(wmax.size()) <= k) {
      wmax.resize(k + 1, 0.0);
      wt.resize(k + 1, 0.0);
    }
    if (row.abs_h > wmax[k]) wmax[k] = row.abs_h;
    wt[k] = t0 * std::pow(2.0, k + 0.5);
  }
  for (std::size_t k = 0; k < wmax.size(); ++k) {
    if (wmax[k] > 0.0) {
      scan.window_t.push_back(wt[k]);
      scan.window_max.push_back(wmax[k]);
    }
  }
  scan.fit = fit_loglog(scan.window_t, scan.window_max);
  scan.alpha_hat = scan.fit.slope;
  return scan;
}

}  // namespace hecke
