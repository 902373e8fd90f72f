#include "hecke/unitary_rep.hpp"

#include <cmath>
#include <numbers>

namespace hecke {

namespace {

constexpr double kRepTol = 1e-12;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_unitary(const CMatrix& u, double tol) {
  const CMatrix g = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

double reduce_mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;
  if (r < 0.0) r += 1.0;
  // Snap eigenphase noise at the wrap-around point to exactly 0.
  if (r > 1.0 - 1e-13) r = 0.0;
  if (r < 1e-13) r = 0.0;
  return r;
}

}  // namespace

UnitaryRep::UnitaryRep(CMatrix u_s, CMatrix u_t, std::string id)
    : u_s_(std::move(u_s)), u_t_(std::move(u_t)), id_(std::move(id)) {
  if (u_s_.rows() != u_s_.cols() || u_t_.rows() != u_t_.cols() ||
      u_s_.rows() != u_t_.rows() || u_s_.rows() < 1)
    throw param_error("UnitaryRep: generator images must be square of equal size");
  const double tol = kRepTol * std::max<double>(1, u_s_.rows());
  if (!is_unitary(u_s_, tol)) throw param_error("UnitaryRep: U_S is not unitary");
  if (!is_unitary(u_t_, tol)) throw param_error("UnitaryRep: U_T is not unitary");
  const CMatrix s2 = u_s_ * u_s_ - CMatrix::Identity(dim(), dim());
  if (s2.cwiseAbs().maxCoeff() > tol)
    throw param_error("UnitaryRep: U_S^2 != identity");

  // Diagonalize the unitary (hence normal) U_T with a unitary Q.  The Schur
  // form of a normal matrix is diagonal.
  if ((u_t_ - CMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol) {
    q_ = CMatrix::Identity(dim(), dim());
    lambdas_.assign(dim(), 0.0);
  } else if (dim() == 1) {
    q_ = CMatrix::Identity(1, 1);
    lambdas_ = {reduce_mod1(-std::arg(u_t_(0, 0)) / kTwoPi)};
  } else {
    Eigen::ComplexSchur<CMatrix> schur(u_t_);
    q_ = schur.matrixU();
    const CMatrix t = schur.matrixT();
    if (t.cwiseAbs().triangularView<Eigen::StrictlyUpper>().toDenseMatrix().maxCoeff() >
        1e-10)
      throw param_error("UnitaryRep: U_T failed to diagonalize (not normal?)");
    lambdas_.resize(dim());
    for (int k = 0; k < dim(); ++k) lambdas_[k] = reduce_mod1(-std::arg(t(k, k)) / kTwoPi);
  }
  s_hat_ = q_.adjoint() * u_s_ * q_;
}

UnitaryRep UnitaryRep::trivial() {
  CMatrix one = CMatrix::Identity(1, 1);
  return UnitaryRep(one, one, "trivial");
}

UnitaryRep UnitaryRep::sign() {
  CMatrix s = -CMatrix::Identity(1, 1);
  CMatrix t = CMatrix::Identity(1, 1);
  return UnitaryRep(s, t, "sign");
}

UnitaryRep UnitaryRep::character(double lambda) {
  CMatrix s = CMatrix::Identity(1, 1);
  CMatrix t(1, 1);
  const double l = lambda - std::floor(lambda);
  t(0, 0) = std::polar(1.0, -kTwoPi * l);
  char buf[48];
  std::snprintf(buf, sizeof buf, "character:%.17g", l);
  return UnitaryRep(s, t, buf);
}

UnitaryRep UnitaryRep::induced_index2() {
  CMatrix s(2, 2), t = CMatrix::Identity(2, 2);
  s << 0, 1, 1, 0;
  return UnitaryRep(s, t, "induced2");
}

CMatrix UnitaryRep::u_t_power(long long n) const {
  CMatrix d = CMatrix::Zero(dim(), dim());
  for (int k = 0; k < dim(); ++k)
    d(k, k) = std::polar(1.0, -kTwoPi * lambdas_[k] * static_cast<double>(n));
  return q_ * d * q_.adjoint();
}

bool UnitaryRep::self_conjugate() const {
  // chi(g) real for all g iff it is real on S T^n words up to block length
  // two; for the standard reps this reduces to each lambda in {0, 1/2}.
  for (double l : lambdas_)
    if (std::abs(l) > 1e-12 && std::abs(l - 0.5) > 1e-12) return false;
  return u_s_.imag().cwiseAbs().maxCoeff() <= 1e-12;
}

std::string UnitaryRep::describe() const {
  return id_ + " (dim " + std::to_string(dim()) + ")";
}

CMatrix evaluate_rep(const UnitaryRep& rep, const GroupWord& word) {
  if (word.kind == GroupWord::Kind::LetterS) return rep.u_s();
  if (word.kind == GroupWord::Kind::PowerT) return rep.u_t_power(word.exps[0]);
  CMatrix m = CMatrix::Identity(rep.dim(), rep.dim());
  for (long long n : word.exps) m = m * rep.u_s() * rep.u_t_power(n);
  return m;
}

}  // namespace hecke
