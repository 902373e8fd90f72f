#include "doctest.h"

#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "hecke/transfer_operator.hpp"

using namespace hecke;

namespace {

DiscretizationParams make_params(double w, const UnitaryRep& rep, int m, double r = 0.0) {
  return DiscretizationParams(w, rep, m, r);
}

double weyl_rhs_log(const std::vector<double>& mu) {
  double s = 0.0;
  for (double m : mu) s += std::log1p(m);
  return s;
}

}  // namespace

TEST_CASE("closed-form entries: spot values and parity zeros") {
  const auto p = make_params(3.0, UnitaryRep::trivial(), 10);
  const TransferMatrix tm = build_closed(Cplx(1.0), p);
  // entry (0,0) = 2 zeta(2) / 9 = pi^2 / 27
  CHECK(std::abs(tm.a(0, 0) - Cplx(M_PI * M_PI / 27.0)) < 1e-12);
  CHECK(std::abs(tm.a(0, 0).real() - 0.3655409038) < 1e-10);
  // odd j+m entries vanish exactly for the trivial representation
  for (int j = 0; j <= 10; ++j)
    for (int m = 0; m <= 10; ++m)
      if ((j + m) % 2 == 1) CHECK(tm.a(j, m) == Cplx(0.0, 0.0));
}

TEST_CASE("direct builder entry (0,0) at s=2") {
  auto p = make_params(3.0, UnitaryRep::trivial(), 6);
  p.n_direct = 100000;
  const TransferMatrix tm = build_direct(Cplx(2.0), p);
  // 2 zeta(4) / 81, zeta(4) = pi^4 / 90
  const double expected = 2.0 * std::pow(3.0, -4.0) * std::pow(M_PI, 4) / 90.0;
  CHECK(std::abs(tm.a(0, 0) - Cplx(expected)) < 1e-12);
  CHECK(expected == doctest::Approx(0.0267240304620034).epsilon(1e-12));
  CHECK_THROWS_AS(build_direct(Cplx(0.5), p), regime_error);
  CHECK_THROWS_AS(build_direct(Cplx(0.3, 4.0), p), regime_error);
}

TEST_CASE("closed vs direct oracle at s=1+5i for four representations") {
  const Cplx s(1.0, 5.0);
  for (const UnitaryRep& rep :
       {UnitaryRep::trivial(), UnitaryRep::sign(), UnitaryRep::character(1.0 / 3.0),
        UnitaryRep::induced_index2()}) {
    auto p = make_params(3.0, rep, 30);
    p.n_direct = 100000;
    const TransferMatrix closed = build_closed(s, p);
    const TransferMatrix direct = build_direct(s, p);
    const double gap = (closed.a - direct.a).cwiseAbs().maxCoeff();
    CHECK(gap < 1e-8);
  }
}

TEST_CASE("direct builder: doubling N_direct moves entries less than the tail bound") {
  const Cplx s(0.8, 2.0);
  auto p1 = make_params(3.0, UnitaryRep::character(0.25), 12);
  p1.n_direct = 2000;
  auto p2 = p1;
  p2.n_direct = 4000;
  const TransferMatrix a1 = build_direct(s, p1);
  const TransferMatrix a2 = build_direct(s, p2);
  CHECK(a1.tail_bound > 0.0);
  CHECK((a1.a - a2.a).cwiseAbs().maxCoeff() < a1.tail_bound);
}

TEST_CASE("branch split: A+ plus A- equals A; negative branch is plain zeta") {
  const Cplx s(0.7, 3.0);
  const auto p = make_params(3.0, UnitaryRep::character(0.3), 14);
  const TransferMatrix full = build_closed(s, p);
  const TransferMatrix plus = build_closed(s, p, BranchTag::Positive);
  const TransferMatrix minus = build_closed(s, p, BranchTag::Negative);
  CHECK((plus.a + minus.a - full.a).cwiseAbs().maxCoeff() < 1e-14);

  // trivial rep: A^-(j,m) = (2s+m)_j/j! w^{-(2s+m+j)} zeta(2s+m+j)
  const auto pt = make_params(3.0, UnitaryRep::trivial(), 8);
  const TransferMatrix mt = build_closed(Cplx(1.2), pt, BranchTag::Negative);
  for (int j = 0; j <= 8; ++j)
    for (int m = 0; m <= 8; ++m) {
      const Cplx expect = pochhammer(2.0 * Cplx(1.2) + static_cast<double>(m), j) /
                          std::tgamma(static_cast<double>(j) + 1.0) *
                          cpow_pos(3.0, -(2.0 * Cplx(1.2) + static_cast<double>(m + j))) *
                          hurwitz_zeta(2.0 * Cplx(1.2) + static_cast<double>(m + j), 1.0);
      CHECK(std::abs(mt.a(j, m) - expect) < 1e-12 * (std::abs(expect) + 1.0));
    }
}

TEST_CASE("parity conjugation between the branch halves") {
  // P A+(lambda) P = A-(1-lambda), P = diag((-1)^j)
  const Cplx s(0.6, 1.5);
  const double lam = 0.3;
  const auto pa = make_params(3.0, UnitaryRep::character(lam), 10);
  const auto pb = make_params(3.0, UnitaryRep::character(1.0 - lam), 10);
  const TransferMatrix ap = build_closed(s, pa, BranchTag::Positive);
  const TransferMatrix am = build_closed(s, pb, BranchTag::Negative);
  CMatrix lhs = ap.a;
  for (int j = 0; j <= 10; ++j)
    for (int m = 0; m <= 10; ++m)
      lhs(j, m) *= ((j % 2 == 0) ? 1.0 : -1.0) * ((m % 2 == 0) ? 1.0 : -1.0);
  CHECK((lhs - am.a).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("fredholm determinant at deep convergence") {
  const auto p = make_params(3.0, UnitaryRep::trivial(), 40);
  const Cplx det = fredholm_det(Cplx(10.0), p);
  // Fixed-point oracle: Z(10) = 1 - sum_n 2 (x_n^2)^10 / (1 - x_n^2) + O(1e-16).
  const double a = (3.0 - std::sqrt(5.0)) / 2.0;
  const double x2sq = std::pow(2.0 / (6.0 + std::sqrt(32.0)), 2);
  const double expected = 1.0 - 2.0 * std::pow(a * a, 10.0) / (1.0 - a * a) -
                          2.0 * std::pow(x2sq, 10.0) / (1.0 - x2sq);
  CHECK(std::abs(det - Cplx(expected)) < 1e-12);
}

TEST_CASE("determinant is independent of the discretization radius") {
  const auto mk = [&](double r) {
    return make_params(3.0, UnitaryRep::trivial(), 60, r);
  };
  for (const Cplx s : {Cplx(0.75, 0.0), Cplx(0.3, 2.0), Cplx(0.25, 7.5)}) {
    const Cplx d6 = fredholm_det(s, mk(0.6));
    const Cplx d7 = fredholm_det(s, mk(0.7));
    const Cplx d8 = fredholm_det(s, mk(0.8));
    CHECK(std::abs(d6 - d8) < 1e-9);
    CHECK(std::abs(d6 - d7) < 1e-9);
  }
}

TEST_CASE("determinant agrees between raw and Bergman bases") {
  const auto p = make_params(3.0, UnitaryRep::induced_index2(), 30);
  const Cplx s(0.8, 4.0);
  const TransferMatrix raw = build_closed(s, p, BranchTag::Full, BasisTag::RawTaylor);
  const TransferMatrix berg = change_basis(raw, BasisTag::BergmanOrthonormal, p);
  const Cplx d1 = fredholm_det_of(raw);
  const Cplx d2 = fredholm_det_of(berg);
  CHECK(std::abs(d1 - d2) < 1e-10 * (std::abs(d1) + 1.0));
  // trace is basis independent
  CHECK(std::abs(raw.a.trace() - berg.a.trace()) < 1e-12 * (std::abs(raw.a.trace()) + 1.0));
}

TEST_CASE("conjugation symmetry of the determinant for the trivial rep") {
  const auto p = make_params(3.0, UnitaryRep::trivial(), 36);
  const Cplx s(0.8, 3.0);
  const Cplx d1 = fredholm_det(s, p);
  const Cplx d2 = fredholm_det(std::conj(s), p);
  CHECK(std::abs(std::conj(d1) - d2) < 1e-12 * (std::abs(d1) + 1.0));
}

TEST_CASE("M-convergence of the determinant is geometric") {
  // |det_M - det_{M+20}| must drop by >= 100x per +20 degrees.
  for (const Cplx s : {Cplx(0.75, 0.0), Cplx(0.6, 5.0), Cplx(1.0, 10.0)}) {
    double prev_gap = -1.0;
    for (int m : {20, 40, 60}) {
      const Cplx da = fredholm_det(s, make_params(3.0, UnitaryRep::trivial(), m));
      const Cplx db = fredholm_det(s, make_params(3.0, UnitaryRep::trivial(), m + 20));
      const double gap = std::abs(da - db);
      if (prev_gap > 1e-13) CHECK(gap <= prev_gap / 100.0);
      prev_gap = gap;
    }
  }
}

TEST_CASE("pole handling") {
  const auto p = make_params(3.0, UnitaryRep::trivial(), 10);
  CHECK_THROWS_AS(build_closed(Cplx(0.5), p), pole_error);
  CHECK_THROWS_AS(build_closed(Cplx(0.0), p), pole_error);
  CHECK_THROWS_AS(build_closed(Cplx(-0.5), p), pole_error);

  // twisted components stay finite on the half-integer grid
  const auto pc = make_params(3.0, UnitaryRep::character(1.0 / 3.0), 10);
  for (const Cplx s : {Cplx(0.5), Cplx(0.0), Cplx(-0.5)}) {
    const TransferMatrix tm = build_closed(s, pc);
    CHECK(tm.a.allFinite());
  }

  // untwisted entries blow up when approaching 2s = 1
  const TransferMatrix near_pole = build_closed(Cplx(0.5 + 1e-6), p);
  CHECK(std::abs(near_pole.a(0, 0)) > 1e4);
}

TEST_CASE("singular values: decay slope, homogeneity, Weyl inequality") {
  const auto p = make_params(3.0, UnitaryRep::trivial(), 60, 0.7);
  const auto rep = singular_values(Cplx(1.0), p);
  REQUIRE(rep.mu.size() >= 30);
  CHECK(rep.predicted_slope == doctest::Approx(std::log(1.0 / (0.7 * 2.3))).epsilon(1e-12));
  // The contraction ratio predicts an upper bound on the decay rate: the
  // measured slope may be steeper (the branch images fill only a thin part
  // of the target disk) but never flatter.
  CHECK(rep.tail_fit.slope <= rep.predicted_slope + 0.1);
  CHECK(rep.tail_fit.slope < 0.0);

  // homogeneity: scaling the matrix scales every singular value
  const TransferMatrix tm =
      build_closed(Cplx(1.0), p, BranchTag::Full, BasisTag::BergmanOrthonormal);
  Eigen::JacobiSVD<CMatrix> svd(3.5 * tm.a);
  for (int i = 0; i < 10; ++i)
    CHECK(svd.singularValues()(i) == doctest::Approx(3.5 * rep.mu[i]).epsilon(1e-10));

  // Weyl: |det(1 - A)| <= prod (1 + mu_k)
  const double lhs = std::log(std::abs(fredholm_det_of(tm)));
  CHECK(lhs <= weyl_rhs_log(rep.mu) + 1e-12);
}

TEST_CASE("Weyl inequality across representations and s") {
  for (const UnitaryRep& rep :
       {UnitaryRep::trivial(), UnitaryRep::sign(), UnitaryRep::character(0.25)}) {
    for (const Cplx s : {Cplx(0.7, 1.0), Cplx(0.3, 6.0), Cplx(1.4, 0.5)}) {
      const auto p = make_params(3.0, rep, 40);
      const auto sv = singular_values(s, p);
      const TransferMatrix tm =
          build_closed(s, p, BranchTag::Full, BasisTag::BergmanOrthonormal);
      CHECK(std::log(std::abs(fredholm_det_of(tm))) <= weyl_rhs_log(sv.mu) + 1e-12);
    }
  }
}

TEST_CASE("Seiler-Simon determinant inequality") {
  // log|det(1 + F + T)| <= rank(F) log(1 + ||F||) + sum log(1 + mu_m(T))
  const auto p = make_params(3.0, UnitaryRep::trivial(), 40);
  const Cplx s(0.8, 2.0);
  const TransferMatrix ab =
      build_closed(s, p, BranchTag::Full, BasisTag::BergmanOrthonormal);
  const int n = static_cast<int>(ab.a.rows());

  // F = -(rank-one block), T = -(A - F); then 1 + F + T = 1 - A.
  CMatrix f = CMatrix::Zero(n, n);
  f.col(0) = -ab.a.col(0);
  const CMatrix t = -(ab.a) - f;
  const double lhs = std::log(std::abs((CMatrix::Identity(n, n) + f + t)
                                           .partialPivLu()
                                           .determinant()));
  Eigen::JacobiSVD<CMatrix> svd_f(f);
  Eigen::JacobiSVD<CMatrix> svd_t(t);
  const double norm_f = svd_f.singularValues()(0);
  double rhs = 1.0 * std::log1p(norm_f);  // rank(F) = 1
  for (int i = 0; i < n; ++i) rhs += std::log1p(svd_t.singularValues()(i));
  CHECK(lhs <= rhs + 1e-12);

  // random low-rank plus small trace-class pairs
  std::mt19937_64 rng(31337);
  std::normal_distribution<double> nd;
  for (int it = 0; it < 10; ++it) {
    const int m = 24, r = 1 + it % 3;
    CMatrix u(m, r), v(m, r), tt(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < r; ++j) {
        u(i, j) = Cplx(nd(rng), nd(rng));
        v(i, j) = Cplx(nd(rng), nd(rng));
      }
      for (int j = 0; j < m; ++j) tt(i, j) = 0.02 * Cplx(nd(rng), nd(rng));
    }
    const CMatrix ff = u * v.adjoint();
    const double l =
        std::log(std::abs((CMatrix::Identity(m, m) + ff + tt).partialPivLu().determinant()));
    Eigen::JacobiSVD<CMatrix> sf(ff);
    Eigen::JacobiSVD<CMatrix> st(tt);
    double rr = r * std::log1p(sf.singularValues()(0));
    for (int i = 0; i < m; ++i) rr += std::log1p(st.singularValues()(i));
    CHECK(l <= rr + 1e-12);
  }
}

TEST_CASE("psi1 and the rank-d head operator") {
  const auto p = make_params(3.0, UnitaryRep::induced_index2(), 12);
  const CMatrix psi = psi1_matrix(p);
  // Psi_1 z^2 = -z per component
  for (int k = 0; k < 2; ++k) {
    Eigen::VectorXcd z2 = Eigen::VectorXcd::Zero(p.dim());
    z2(p.index(2, k)) = 1.0;
    const Eigen::VectorXcd img = psi * z2;
    CHECK(std::abs(img(p.index(1, k)) + 1.0) < 1e-15);
    CHECK(img.cwiseAbs().sum() == doctest::Approx(1.0));
  }
  // Psi_1 kills constants
  Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(p.dim());
  c0(p.index(0, 0)) = 1.0;
  CHECK((psi * c0).cwiseAbs().maxCoeff() == 0.0);

  const Cplx s(0.9, 1.0);
  const CMatrix f = rank_one_f_matrix(s, p);
  Eigen::JacobiSVD<CMatrix> svd(f);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * svd.singularValues()(0)) ++rank;
  CHECK(rank == p.rep.dim());

  // column block 0 of F equals column block 0 of A(s)
  const TransferMatrix full = build_closed(s, p);
  CHECK((f.block(0, 0, p.dim(), 2) - full.a.block(0, 0, p.dim(), 2)).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("meromorphic recursion identity in branch-signed form") {
  const auto p40 = make_params(3.0, UnitaryRep::trivial(), 40);
  const auto r1 = recursion_check(Cplx(2.0, 3.0), 1, p40);
  CHECK(r1.max_residual < 1e-10);
  CHECK(r1.column0_residual < 1e-14);
  CHECK(r1.finite_rank <= r1.rank_bound);

  const auto r2 = recursion_check(Cplx(0.2, 5.0), 2, p40);
  CHECK(r2.max_residual < 1e-10);
  CHECK(r2.finite_rank <= r2.rank_bound);

  // vector-valued case: rank bound k * d
  const auto pv = make_params(3.0, UnitaryRep::induced_index2(), 24);
  const auto r3 = recursion_check(Cplx(0.4, 2.0), 3, pv);
  CHECK(r3.max_residual < 1e-10);
  CHECK(r3.finite_rank <= 3 * 2);

  // s itself is pole-free at truncation M=10 (1 - 2s = 23 > 2M), but the
  // third shift lands on 2(s + 3/2) + 20 = 1.
  const auto pt = make_params(3.0, UnitaryRep::trivial(), 10);
  CHECK_THROWS_AS(recursion_check(Cplx(-11.0, 0.0), 4, pt), pole_error);
}

TEST_CASE("trace oracle against the matrix trace") {
  // fixed point of gamma_1 at w=3: x_1 = -(3-sqrt5)/2, derivative x_1^2
  const double x1 = -2.0 / (3.0 + std::sqrt(5.0));
  CHECK(x1 == doctest::Approx(-0.3819660113).epsilon(1e-9));
  CHECK(branch_map(1, 3.0).derivative(x1) == doctest::Approx(x1 * x1).epsilon(1e-13));
  CHECK(x1 * x1 == doctest::Approx(0.1458980338).epsilon(1e-9));

  const auto p = make_params(3.0, UnitaryRep::trivial(), 60);
  const Cplx tr_fix = trace_oracle(Cplx(1.2), p, 100000);
  const TransferMatrix tm = build_closed(Cplx(1.2), p);
  const Cplx tr_mat = tm.a.trace();
  CHECK(std::abs(tr_fix - tr_mat) < 1e-8 * std::abs(tr_mat));

  // induced rep: tr(rho(T^{-n}) rho(S)) = 0 for every n
  const auto pi = make_params(3.0, UnitaryRep::induced_index2(), 20);
  CHECK(std::abs(trace_oracle(Cplx(1.2), pi, 1000)) == 0.0);

  CHECK_THROWS_AS(trace_oracle(Cplx(0.5), p, 100), regime_error);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make_params(2.0, UnitaryRep::trivial(), 10), param_error);
  CHECK_THROWS_AS(make_params(3.0, UnitaryRep::trivial(), 10, 0.2), param_error);
  CHECK_THROWS_AS(make_params(3.0, UnitaryRep::trivial(), 10, 1.0), param_error);
  CHECK_THROWS_AS(make_params(3.0, UnitaryRep::trivial(), 5000), resource_error);
  CHECK(min_disk_radius(3.0) == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-14));
  // invariance margin: all branches map disk(R) into disk(1/(w-R)) strictly inside
  const auto p = make_params(3.0, UnitaryRep::trivial(), 4);
  CHECK(1.0 / (p.w - p.disk_radius) < p.disk_radius);
  CHECK(p.w * p.disk_radius > 1.0);
}
