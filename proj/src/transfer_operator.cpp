#include "hecke/transfer_operator.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <map>
#include <numbers>

namespace hecke {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPoleGuard = 1e-8;

// F(lambda, 2s + q) for q = 0..qmax, one row per distinct lambda key.
struct ZetaTable {
  std::vector<std::vector<Cplx>> by_lambda;  // values per lambda key
  std::vector<int> pos_key;                  // component -> key of lambda_k
  std::vector<int> neg_key;                  // component -> key of 1 - lambda_k
};

double reduce01(double x) {
  double r = x - std::floor(x);
  if (r < 1e-12 || r > 1.0 - 1e-12) r = 0.0;
  return r;
}

ZetaTable build_zeta_table(Cplx s, const DiscretizationParams& p, int qmax) {
  const auto& lambdas = p.rep.lambdas();
  ZetaTable table;
  std::map<long long, int> keys;  // lambda quantized to 1e-15 -> key
  auto key_of = [&](double lam) {
    const long long q = static_cast<long long>(std::llround(lam * 1e15));
    auto it = keys.find(q);
    if (it != keys.end()) return it->second;
    const int k = static_cast<int>(table.by_lambda.size());
    keys.emplace(q, k);
    table.by_lambda.emplace_back();
    auto& row = table.by_lambda.back();
    row.resize(qmax + 1);
    for (int j = 0; j <= qmax; ++j)
      row[j] = periodic_zeta(lam, 2.0 * s + static_cast<double>(j),
                             PeriodicZetaMethod::Auto, p.specfun);
    return k;
  };
  for (double lam : lambdas) {
    const double l = reduce01(lam);
    if (l == 0.0) {
      // pole set of the untwisted component: 2s + q = 1
      for (int q = 0; q <= qmax; ++q)
        if (std::abs(2.0 * s + static_cast<double>(q) - 1.0) < kPoleGuard)
          throw pole_error("transfer operator: 2s+m+j = 1 at m+j = " + std::to_string(q) +
                           " on an untwisted component");
    }
    table.pos_key.push_back(key_of(l));
    table.neg_key.push_back(key_of(l == 0.0 ? 0.0 : 1.0 - l));
  }
  return table;
}

void check_pole_free(Cplx s, const DiscretizationParams& p, int qmax) {
  for (double lam : p.rep.lambdas()) {
    if (reduce01(lam) != 0.0) continue;
    for (int q = 0; q <= qmax; ++q)
      if (std::abs(2.0 * s + static_cast<double>(q) - 1.0) < kPoleGuard)
        throw pole_error("transfer operator: 2s+m+j = 1 at m+j = " + std::to_string(q));
  }
}

TransferMatrix make_tm(Cplx s, const DiscretizationParams& p, BranchTag branch,
                       BasisTag basis) {
  TransferMatrix tm;
  tm.s = s;
  tm.w = p.w;
  tm.disk_radius = p.disk_radius;
  tm.max_degree = p.max_degree;
  tm.rep_dim = p.rep.dim();
  tm.rep_id = p.rep.id();
  tm.basis = basis;
  tm.branch = branch;
  return tm;
}

// Assemble from per-component coefficient tables fpos[q], fneg[q]:
// entry = S_hat_{k,l} (2s+m)_j/j! w^{-(2s+m+j)} [ (-1)^{m+j} fpos + fneg ].
CMatrix assemble(Cplx s, const DiscretizationParams& p, BranchTag branch,
                 const std::vector<const Cplx*>& fpos,
                 const std::vector<const Cplx*>& fneg) {
  const int d = p.rep.dim();
  const int m_max = p.max_degree;
  const CMatrix& s_hat = p.rep.s_hat();
  CMatrix a = CMatrix::Zero(p.dim(), p.dim());

  const Cplx w_2s = cpow_pos(p.w, -2.0 * s);
  for (int m = 0; m <= m_max; ++m) {
    Cplx poch{1.0, 0.0};                       // (2s+m)_j / j!
    double w_mj = std::pow(p.w, -m);           // w^{-(m+j)}
    for (int j = 0; j <= m_max; ++j) {
      const Cplx base = poch * w_2s * w_mj;
      const double parity = ((m + j) % 2 == 0) ? 1.0 : -1.0;
      const int q = m + j;
      for (int k = 0; k < d; ++k) {
        Cplx bracket{0.0, 0.0};
        if (branch != BranchTag::Negative) bracket += parity * fpos[k][q];
        if (branch != BranchTag::Positive) bracket += fneg[k][q];
        const Cplx coeff = base * bracket;
        for (int l = 0; l < d; ++l) {
          if (s_hat(k, l) == Cplx(0.0, 0.0)) continue;
          a(p.index(j, k), p.index(m, l)) = s_hat(k, l) * coeff;
        }
      }
      poch *= (2.0 * s + static_cast<double>(m + j)) / static_cast<double>(j + 1);
      w_mj /= p.w;
    }
  }
  return a;
}

void apply_bergman(CMatrix& a, const DiscretizationParams& p) {
  // D_j = R^{j+1} / sqrt(j+1); A_b = D^{-1} A D, i.e. entry *= D_m / D_j.
  const int d = p.rep.dim();
  const double r = p.disk_radius;
  std::vector<double> dv(p.max_degree + 1);
  for (int j = 0; j <= p.max_degree; ++j)
    dv[j] = std::pow(r, j + 1) / std::sqrt(static_cast<double>(j + 1));
  for (int j = 0; j <= p.max_degree; ++j)
    for (int m = 0; m <= p.max_degree; ++m) {
      const double f = dv[m] / dv[j];
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) a(p.index(j, k), p.index(m, l)) *= f;
    }
}

}  // namespace

double min_disk_radius(double w) {
  if (w <= 2.0) throw param_error("min_disk_radius: w must exceed 2");
  return 2.0 / (w + std::sqrt(w * w - 4.0));
}

DiscretizationParams::DiscretizationParams(double w_, UnitaryRep rep_, int max_degree_,
                                           double disk_radius_)
    : w(w_), rep(std::move(rep_)), max_degree(max_degree_), disk_radius(disk_radius_) {
  if (w <= 2.0) throw param_error("DiscretizationParams: w must exceed 2");
  if (max_degree < 0) throw param_error("DiscretizationParams: max_degree must be >= 0");
  const double r_min = min_disk_radius(w);
  if (disk_radius <= 0.0) disk_radius = (r_min + 1.0) / 2.0;
  if (disk_radius <= r_min || disk_radius >= 1.0)
    throw param_error("DiscretizationParams: disk radius must lie in (r_min, 1), r_min = " +
                      std::to_string(r_min));
  if (dim() > max_matrix_dim)
    throw resource_error("DiscretizationParams: matrix dimension " + std::to_string(dim()) +
                         " exceeds cap " + std::to_string(max_matrix_dim));
}

TransferMatrix build_closed(Cplx s, const DiscretizationParams& params, BranchTag branch,
                            BasisTag basis) {
  const int qmax = 2 * params.max_degree;
  const ZetaTable table = build_zeta_table(s, params, qmax);
  const int d = params.rep.dim();
  std::vector<const Cplx*> fpos(d), fneg(d);
  for (int k = 0; k < d; ++k) {
    fpos[k] = table.by_lambda[table.pos_key[k]].data();
    fneg[k] = table.by_lambda[table.neg_key[k]].data();
  }
  TransferMatrix tm = make_tm(s, params, branch, basis);
  tm.a = assemble(s, params, branch, fpos, fneg);
  if (basis == BasisTag::BergmanOrthonormal) apply_bergman(tm.a, params);
  return tm;
}

TransferMatrix build_direct(Cplx s, const DiscretizationParams& params, BasisTag basis) {
  if (s.real() <= 0.5)
    throw regime_error("build_direct: branch summation requires Re s > 1/2");
  check_pole_free(s, params, 2 * params.max_degree);

  const int d = params.rep.dim();
  const int qmax = 2 * params.max_degree;
  const long long n_max = params.n_direct;
  const double w = params.w;

  // Partial sums of the zeta factors, S_k^{+/-}(q) = sum_{n=1}^{N}
  // e^{+/- 2 pi i n lambda_k} n^{-(2s+q)}; the w-powers live in assemble().
  std::vector<std::vector<Cplx>> pos(d), neg(d);
  for (int k = 0; k < d; ++k) {
    pos[k].assign(qmax + 1, Cplx(0.0));
    neg[k].assign(qmax + 1, Cplx(0.0));
  }
  const auto& lambdas = params.rep.lambdas();
  std::vector<Cplx> n_pow(qmax + 1);
  for (long long n = 1; n <= n_max; ++n) {
    const double nn = static_cast<double>(n);
    Cplx p = cpow_pos(nn, -2.0 * s);
    for (int q = 0; q <= qmax; ++q) {
      n_pow[q] = p;
      p /= nn;
    }
    for (int k = 0; k < d; ++k) {
      const double lam = reduce01(lambdas[k]);
      if (lam == 0.0) {
        for (int q = 0; q <= qmax; ++q) {
          pos[k][q] += n_pow[q];
          neg[k][q] += n_pow[q];
        }
      } else {
        const double frac = n * lam - std::floor(n * lam);
        const Cplx tw = std::polar(1.0, kTwoPi * frac);
        const Cplx twc = std::conj(tw);
        for (int q = 0; q <= qmax; ++q) {
          pos[k][q] += tw * n_pow[q];
          neg[k][q] += twc * n_pow[q];
        }
      }
    }
  }

  // Integral-plus-half tail correction on untwisted components:
  // sum_{n>N} n^{-p} ~ N^{-p} [ N / (p - 1) + 1/2 ].
  {
    const double nn = static_cast<double>(n_max);
    Cplx p_pow = cpow_pos(nn, -2.0 * s);
    for (int q = 0; q <= qmax; ++q) {
      const Cplx p_exp = 2.0 * s + static_cast<double>(q);
      const Cplx corr = p_pow * (nn / (p_exp - 1.0) + 0.5);
      for (int k = 0; k < d; ++k) {
        if (reduce01(lambdas[k]) != 0.0) continue;
        pos[k][q] += corr;
        neg[k][q] += corr;
      }
      p_pow /= nn;
    }
  }

  std::vector<const Cplx*> fpos(d), fneg(d);
  for (int k = 0; k < d; ++k) {
    fpos[k] = pos[k].data();
    fneg[k] = neg[k].data();
  }
  TransferMatrix tm = make_tm(s, params, BranchTag::Full, basis);
  tm.a = assemble(s, params, BranchTag::Full, fpos, fneg);

  // Conservative raw-truncation bound: sum_{n>N} (n w - R)^{-2 Re s}.
  const double p_re = 2.0 * s.real();
  const double edge = static_cast<double>(n_max) * w - params.disk_radius;
  tm.tail_bound = std::pow(edge, 1.0 - p_re) / (w * (p_re - 1.0));
  tm.tail_warning = tm.tail_bound > 1e-4;

  if (basis == BasisTag::BergmanOrthonormal) apply_bergman(tm.a, params);
  return tm;
}

TransferMatrix change_basis(const TransferMatrix& tm, BasisTag basis,
                            const DiscretizationParams& params) {
  if (tm.basis == basis) return tm;
  TransferMatrix out = tm;
  out.basis = basis;
  if (basis == BasisTag::BergmanOrthonormal) {
    apply_bergman(out.a, params);
  } else {
    // invert the diagonal similarity
    const int d = params.rep.dim();
    const double r = params.disk_radius;
    std::vector<double> dv(params.max_degree + 1);
    for (int j = 0; j <= params.max_degree; ++j)
      dv[j] = std::pow(r, j + 1) / std::sqrt(static_cast<double>(j + 1));
    for (int j = 0; j <= params.max_degree; ++j)
      for (int m = 0; m <= params.max_degree; ++m) {
        const double f = dv[j] / dv[m];
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) out.a(params.index(j, k), params.index(m, l)) *= f;
      }
  }
  return out;
}

Cplx fredholm_det_of(const TransferMatrix& tm) {
  const CMatrix one_minus = CMatrix::Identity(tm.a.rows(), tm.a.cols()) - tm.a;
  Eigen::PartialPivLU<CMatrix> lu(one_minus);
  return lu.determinant();
}

Cplx fredholm_det(Cplx s, const DiscretizationParams& params) {
  return fredholm_det_of(build_closed(s, params, BranchTag::Full,
                                      BasisTag::BergmanOrthonormal));
}

SingularValueReport singular_values(Cplx s, const DiscretizationParams& params) {
  const TransferMatrix tm =
      build_closed(s, params, BranchTag::Full, BasisTag::BergmanOrthonormal);
  Eigen::JacobiSVD<CMatrix> svd(tm.a);
  SingularValueReport rep;
  const auto& sv = svd.singularValues();
  rep.mu.assign(sv.data(), sv.data() + sv.size());
  rep.predicted_slope =
      std::log(1.0 / (params.disk_radius * (params.w - params.disk_radius)));

  // Fit the clean exponential range: skip mu_0, stop at the roundoff floor.
  std::vector<double> ks, logs;
  const double floor_mag = rep.mu.empty() ? 0.0 : rep.mu[0] * 1e-12;
  for (std::size_t k = 1; k < rep.mu.size(); ++k) {
    if (rep.mu[k] <= std::max(floor_mag, 1e-280)) break;
    ks.push_back(static_cast<double>(k));
    logs.push_back(std::log(rep.mu[k]));
  }
  if (ks.size() >= 3) rep.tail_fit = fit_line(ks, logs);
  return rep;
}

CMatrix psi1_matrix(const DiscretizationParams& params) {
  const int d = params.rep.dim();
  CMatrix psi = CMatrix::Zero(params.dim(), params.dim());
  for (int m = 1; m <= params.max_degree; ++m)
    for (int k = 0; k < d; ++k) psi(params.index(m - 1, k), params.index(m, k)) = -1.0;
  return psi;
}

CMatrix rank_one_f_matrix(Cplx s, const DiscretizationParams& params) {
  const TransferMatrix full = build_closed(s, params);
  CMatrix f = CMatrix::Zero(params.dim(), params.dim());
  const int d = params.rep.dim();
  f.block(0, 0, params.dim(), d) = full.a.block(0, 0, params.dim(), d);
  return f;
}

RecursionReport recursion_check(Cplx s, int k, const DiscretizationParams& params) {
  if (k < 1) throw param_error("recursion_check: k must be >= 1");
  const int d = params.rep.dim();
  const int n = params.dim();

  auto build_v = [&](Cplx sigma) {
    const TransferMatrix ap = build_closed(sigma, params, BranchTag::Positive);
    const TransferMatrix am = build_closed(sigma, params, BranchTag::Negative);
    return CMatrix(am.a - ap.a);
  };

  RecursionReport report;
  report.rank_bound = k * d;
  CMatrix g = CMatrix::Zero(n, k * d);

  CMatrix x = build_closed(s, params).a;  // X_0 = A(s)
  {
    // standalone F-column check against column block 0 of A(s)
    const CMatrix f = rank_one_f_matrix(s, params);
    report.column0_residual =
        (x.block(0, 0, n, d) - f.block(0, 0, n, d)).cwiseAbs().maxCoeff();
  }

  for (int step = 0; step < k; ++step) {
    const Cplx s_next = s + 0.5 * static_cast<double>(step + 1);
    const bool next_is_v = (step % 2 == 0);  // X_{2i} = A, X_{2i+1} = V
    const CMatrix x_next = next_is_v ? build_v(s_next) : build_closed(s_next, params).a;

    // columns m >= 1 of X_step match columns m-1 of X_{step+1}
    double res = 0.0;
    for (int m = 1; m <= params.max_degree; ++m) {
      const auto lhs = x.block(0, m * d, n, d);
      const auto rhs = x_next.block(0, (m - 1) * d, n, d);
      res = std::max(res, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    report.max_residual = std::max(report.max_residual, res);

    // accumulate the finite-rank column block (column 0 of X_step)
    g.block(0, step * d, n, d) = x.block(0, 0, n, d);
    x = x_next;
  }

  Eigen::JacobiSVD<CMatrix> svd(g);
  const auto& sv = svd.singularValues();
  const double thresh = sv.size() ? sv(0) * 1e-10 : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++rank;
  report.finite_rank = rank;
  return report;
}

Cplx trace_oracle(Cplx s, const DiscretizationParams& params, long long n_max) {
  if (s.real() <= 0.5)
    throw regime_error("trace_oracle: fixed-point sum requires Re s > 1/2");
  if (n_max < 1) throw param_error("trace_oracle: n_max must be >= 1");

  const int d = params.rep.dim();
  const auto& lambdas = params.rep.lambdas();
  const CMatrix& s_hat = params.rep.s_hat();
  const double w = params.w;

  Cplx total{0.0, 0.0};
  for (long long n = 1; n <= n_max; ++n) {
    const double nw = static_cast<double>(n) * w;
    // attracting fixed point of gamma_n: root of x^2 + n w x + 1 = 0 in (-1,1)
    const double x = -2.0 / (nw + std::sqrt(nw * nw - 4.0));
    const double x2 = x * x;
    const Cplx weight = std::exp(s * std::log(x2)) / (1.0 - x2);
    Cplx chi{0.0, 0.0};
    for (int k = 0; k < d; ++k) {
      const double lam = reduce01(lambdas[k]);
      // tr(rho(T^{-n}) rho(S)) + tr(rho(T^{n}) rho(S)) over the +/- branch pair
      const double frac = n * lam - std::floor(n * lam);
      chi += s_hat(k, k) * 2.0 * std::cos(kTwoPi * frac);
    }
    total += weight * chi;
  }

  // Tail of the untwisted components: terms approach (n w)^{-2s}.
  Cplx untwisted{0.0, 0.0};
  for (int k = 0; k < d; ++k)
    if (reduce01(lambdas[k]) == 0.0) untwisted += 2.0 * s_hat(k, k);
  if (untwisted != Cplx(0.0, 0.0)) {
    const double nw = static_cast<double>(n_max) * w;
    const Cplx p_pow = cpow_pos(nw, -2.0 * s);
    total += untwisted * p_pow * (static_cast<double>(n_max) / (2.0 * s - 1.0) + 0.5);
  }
  return total;
}

}  // namespace hecke
