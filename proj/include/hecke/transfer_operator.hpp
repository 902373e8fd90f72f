#ifndef HECKE_TRANSFER_OPERATOR_HPP
#define HECKE_TRANSFER_OPERATOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hecke/special_functions.hpp"
#include "hecke/unitary_rep.hpp"

namespace hecke {

// Smallest admissible disk radius: below it some branch image leaves the disk.
// Coincides with the hull endpoint a(w) = (w - sqrt(w^2 - 4)) / 2.
double min_disk_radius(double w);

struct DiscretizationParams {
  double w;
  UnitaryRep rep;
  int max_degree;             // M: monomial degrees 0..M
  double disk_radius;         // R, in (r_min, 1); <= 0 selects (r_min + 1)/2
  long long n_direct = 100000;
  int max_matrix_dim = 2000;  // cap on d (M + 1)
  SpecFunOptions specfun;

  DiscretizationParams(double w_, UnitaryRep rep_, int max_degree_,
                       double disk_radius_ = 0.0);

  int dim() const { return rep.dim() * (max_degree + 1); }
  // flat index of (monomial degree j, vector component k)
  int index(int j, int k) const { return j * rep.dim() + k; }
};

enum class BasisTag { RawTaylor, BergmanOrthonormal };
enum class BranchTag { Full, Positive, Negative };

struct TransferMatrix {
  CMatrix a;
  Cplx s;
  double w = 0.0;
  double disk_radius = 0.0;
  int max_degree = 0;
  int rep_dim = 1;
  std::string rep_id;
  BasisTag basis = BasisTag::RawTaylor;
  BranchTag branch = BranchTag::Full;
  // direct builder only
  double tail_bound = 0.0;
  bool tail_warning = false;
};

// Closed-form entries
//   A[(j,k),(m,l)] = S_hat_{k,l} (2s+m)_j / j! w^{-(2s+m+j)}
//                    [ (-1)^{m+j} F(lambda_k, 2s+m+j) + F(1-lambda_k, 2s+m+j) ],
// valid for every s with 2s+m+j != 1 on lambda_k = 0 components; this is the
// meromorphic continuation of the operator family.
TransferMatrix build_closed(Cplx s, const DiscretizationParams& params,
                            BranchTag branch = BranchTag::Full,
                            BasisTag basis = BasisTag::RawTaylor);

// Truncated branch summation over 1 <= |n| <= n_direct (convergent regime
// Re s > 1/2 only), with an integral tail correction on untwisted components
// and a conservative reported tail bound.
TransferMatrix build_direct(Cplx s, const DiscretizationParams& params,
                            BasisTag basis = BasisTag::RawTaylor);

TransferMatrix change_basis(const TransferMatrix& tm, BasisTag basis,
                            const DiscretizationParams& params);

// det(1 - A) with A built in the Bergman-orthonormal basis.
Cplx fredholm_det(Cplx s, const DiscretizationParams& params);
Cplx fredholm_det_of(const TransferMatrix& tm);

struct SingularValueReport {
  std::vector<double> mu;  // decreasing
  LineFit tail_fit;        // log mu_k vs k over the clean decay range
  double predicted_slope = 0.0;  // log(1 / (R (w - R)))
};

SingularValueReport singular_values(Cplx s, const DiscretizationParams& params);

// Psi_1: f -> -(f - f(0))/z; raw-basis entries -delta_{j, m-1} per component.
CMatrix psi1_matrix(const DiscretizationParams& params);

// Rank-d operator f -> E_s(z) rho(S) f(0); equals column block m = 0 of A(s).
CMatrix rank_one_f_matrix(Cplx s, const DiscretizationParams& params);

struct RecursionReport {
  double max_residual = 0.0;     // worst entry gap over all k shift steps
  double column0_residual = 0.0; // A(s) column 0 vs standalone F column
  int finite_rank = 0;           // numerical rank of the accumulated F part
  int rank_bound = 0;            // k * d
};

// Verifies the one-step identity A(sigma)[., m] = (A^- - A^+)(sigma + 1/2)[., m-1]
// iterated k times, accumulating the finite-rank columns.
RecursionReport recursion_check(Cplx s, int k, const DiscretizationParams& params);

// Fixed-point trace formula sum_{0<|n|<=N} (x_n^2)^s / (1 - x_n^2) tr(rho(T^{-n}) rho(S)),
// x_n the attracting fixed point of gamma_n.  Convergent for Re s > 1/2.
Cplx trace_oracle(Cplx s, const DiscretizationParams& params, long long n_max);

}  // namespace hecke

#endif  // HECKE_TRANSFER_OPERATOR_HPP
