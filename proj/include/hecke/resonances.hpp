#ifndef HECKE_RESONANCES_HPP
#define HECKE_RESONANCES_HPP

#include <vector>

#include "hecke/fit.hpp"
#include "hecke/transfer_operator.hpp"

namespace hecke {

struct DeltaResult {
  double delta = 0.0;       // crossing point at degree M + 20
  double m_shift = 0.0;     // |delta_M - delta_{M+20}|
  bool m_stable = false;    // m_shift < 10 * tol
  int degree = 0;
  int iterations = 0;
};

// Hausdorff dimension of the limit set as the unique s in (1/2, 1) where the
// leading eigenvalue of the untwisted transfer matrix crosses 1 (equivalently
// the largest real zero of det(1 - A)).  Bisection to tol with an M -> M+20
// stability check.
DeltaResult compute_delta(double w, double tol, int degree = 60);

struct Box {
  double re_min = 0.0, re_max = 0.0;
  double im_min = 0.0, im_max = 0.0;

  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  double diameter() const { return std::max(width(), height()); }
};

struct ScanOptions {
  int max_degree = 0;            // 0: adaptive from the box top
  double disk_radius = 0.0;      // 0: default
  double newton_step = 1e-6;     // differencing step
  int newton_max_iter = 50;
  double min_box_diameter = 1e-6;
  double mult_circle_radius = 1e-4;
  int max_phase_depth = 42;      // contour refinement limit
  int workers = 1;
  SpecFunOptions specfun;
};

// Winding number of det(1 - A(s)) around the rectangle boundary (counts the
// enclosed zeros with multiplicity; the box must avoid the real axis, where
// the continuation has its poles).  Edges landing on a zero are auto-nudged.
long long count_zeros_box(double w, const UnitaryRep& rep, Box box,
                          const ScanOptions& opts = {});

struct Resonance {
  Cplx s;
  int multiplicity = 1;
  double residual = 0.0;      // |det| at the refined point
  double local_scale = 0.0;   // |det| at distance 0.01 for context
  int iterations = 0;
};

struct UnresolvedBox {
  Box box;
  long long winding = 0;
};

struct FindZerosResult {
  std::vector<Resonance> zeros;          // sorted by (im, re)
  std::vector<UnresolvedBox> unresolved; // Newton failures with their winding
};

FindZerosResult find_zeros(double w, const UnitaryRep& rep, Box box,
                           const ScanOptions& opts = {});

struct CountingReport {
  double sigma = 0.0;
  std::vector<double> t_grid;
  std::vector<long long> n_counts;   // N(sigma, T): |Im| <= T, Re >= sigma
  std::vector<long long> m_counts;   // M(sigma, T): |Im - T| <= 1
  double eta_hat = 0.0;              // fitted exponent of N against T
  LineFit eta_fit;
  std::vector<Resonance> zeros;      // upper half-plane zeros found
  long long cells_checked = 0;       // per-cell argument-principle audits
  long long cells_consistent = 0;
  bool doubled_by_symmetry = false;
};

// Resonance counting N(sigma, T), M(sigma, T) over {Re s in [sigma, 2]},
// |Im s| <= T_max, via box scanning; self-conjugate representations scan the
// upper half-plane and double.
CountingReport weyl_count(double w, const UnitaryRep& rep, double sigma, double t_max,
                          int t_steps, const ScanOptions& opts = {});

}  // namespace hecke

#endif  // HECKE_RESONANCES_HPP
