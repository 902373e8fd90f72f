#ifndef HECKE_UNITARY_REP_HPP
#define HECKE_UNITARY_REP_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "hecke/words.hpp"

namespace hecke {

using Cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// Finite-dimensional unitary representation of Gamma_w = Z/2 * Z, specified by
// the generator images (U_S, U_T) with U_S^2 = 1 and U_T unitary.  Carries a
// fixed unitary Q with Q* U_T Q = diag(exp(-2 pi i lambda_k)), lambda_k in [0,1).
class UnitaryRep {
 public:
  // Validates unitarity and the S-involution to 1e-12 and diagonalizes U_T.
  UnitaryRep(CMatrix u_s, CMatrix u_t, std::string id = "custom");

  static UnitaryRep trivial();
  static UnitaryRep sign();
  // One-dimensional character: S -> +1, T -> exp(-2 pi i lambda).
  static UnitaryRep character(double lambda);
  // Representation induced from the trivial character of the index-2
  // subgroup <T, S T S>: U_T = I_2, U_S = swap.
  static UnitaryRep induced_index2();

  int dim() const { return static_cast<int>(u_s_.rows()); }
  const CMatrix& u_s() const { return u_s_; }
  const CMatrix& u_t() const { return u_t_; }
  const CMatrix& q() const { return q_; }
  // Q* U_S Q, the S-image in the T-eigenbasis.
  const CMatrix& s_hat() const { return s_hat_; }
  const std::vector<double>& lambdas() const { return lambdas_; }
  const std::string& id() const { return id_; }

  CMatrix u_t_power(long long n) const;

  // Character real on all of Gamma_w; zeros of the twisted determinant then
  // come in conjugate pairs.
  bool self_conjugate() const;

  std::string describe() const;

 private:
  CMatrix u_s_, u_t_, q_, s_hat_;
  std::vector<double> lambdas_;
  std::string id_;
};

// Multiplicative evaluation: word (n_1,...,n_p) -> U_S U_T^{n_1} ... U_S U_T^{n_p}.
CMatrix evaluate_rep(const UnitaryRep& rep, const GroupWord& word);

}  // namespace hecke

#endif  // HECKE_UNITARY_REP_HPP
