#ifndef HECKE_MOEBIUS_HPP
#define HECKE_MOEBIUS_HPP

#include <cmath>
#include <complex>
#include <string>

#include "hecke/errors.hpp"

namespace hecke {

// Element of PSL(2,R) as a unit-determinant 2x2 matrix modulo sign.
// Representative normalization: the first nonzero entry of (a,b,c,d) is
// positive, which fixes the +/- ambiguity.
struct MoebiusMap {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  MoebiusMap() = default;
  MoebiusMap(double a_, double b_, double c_, double d_);

  // z -> (a z + b) / (c z + d)
  double operator()(double z) const { return (a * z + b) / (c * z + d); }
  std::complex<double> operator()(std::complex<double> z) const {
    return (a * z + b) / (c * z + d);
  }

  // derivative 1 / (c z + d)^2
  double derivative(double z) const {
    const double q = c * z + d;
    return 1.0 / (q * q);
  }
  std::complex<double> derivative(std::complex<double> z) const {
    const std::complex<double> q = c * z + d;
    return 1.0 / (q * q);
  }

  double trace() const { return a + d; }
  double det() const { return a * d - b * c; }

  MoebiusMap inverse() const { return MoebiusMap(d, -b, -c, a); }

  bool approx_equal(const MoebiusMap& o, double tol = 1e-12) const;

  std::string str() const;
};

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g);

// Generators of the Hecke group: S(z) = -1/z and T_w(z) = z + w.
MoebiusMap moebius_s();
MoebiusMap moebius_t(double w, long long n = 1);

// Branch map gamma_n = S T^n : z -> -1/(z + n w).  Requires n != 0 and w > 2.
MoebiusMap branch_map(long long n, double w);

}  // namespace hecke

#endif  // HECKE_MOEBIUS_HPP
