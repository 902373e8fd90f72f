#ifndef HECKE_LIMIT_SET_HPP
#define HECKE_LIMIT_SET_HPP

#include <cstdint>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/fit.hpp"

namespace hecke {

// Right endpoint a = (w - sqrt(w^2 - 4))/2 of the convex hull [-a, a] of
// Lambda_0; the attracting fixed point of S T^{-1}, satisfying a (w - a) = 1.
double hull_endpoint(double w);

struct CoverInterval {
  double left = 0.0;
  double right = 0.0;
  int depth = 0;
  bool is_tail = false;

  double length() const { return right - left; }
};

// Interval cover of Lambda_0 at a target scale h.  Non-tail intervals are
// cylinder images W([-a, a]) refined until their length is <= h; each refined
// cylinder also spawns a tail child absorbing the branches beyond the local
// cutoff (lengths between h and sqrt(h), the stretched components).
struct Cover {
  double w = 0.0;
  double scale = 0.0;         // target h
  int max_depth = 0;
  long long root_branch_cutoff = 0;  // N at the root level
  bool partial = false;       // interval budget hit before full resolution
  std::vector<CoverInterval> intervals;  // sorted, pairwise disjoint

  double total_length() const;
};

struct CoverOptions {
  std::size_t max_intervals = 10000000;  // resource budget
  int max_depth = 64;
};

Cover refine_cover(double w, double h, const CoverOptions& opts = {});

// Area of the h-fattening of the cover: merge intervals fattened by h, then
// sum stadium areas 2 h len + pi h^2 per merged component.
double omega_area(const Cover& cover, double h);

// Number of size-h grid boxes meeting the cover union (box-counting estimator).
long long box_count(const Cover& cover, double h);

struct BoxDimensionReport {
  double dimension = 0.0;  // regression slope
  LineFit fit;
  std::vector<double> scales;
  std::vector<long long> counts;
};

// Box-counting dimension of Lambda_0 from grid counts over >= 4 scales
// spanning >= 2 decades.
BoxDimensionReport boxcount_dimension(double w, const std::vector<double>& scales,
                                      const CoverOptions& opts = {});

}  // namespace hecke

#endif  // HECKE_LIMIT_SET_HPP
