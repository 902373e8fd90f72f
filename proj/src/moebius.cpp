#include "hecke/moebius.hpp"

#include <cstdio>

namespace hecke {

namespace {

constexpr double kDetTol = 1e-12;

}  // namespace

MoebiusMap::MoebiusMap(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
  const double det = a * d - b * c;
  // a d - b c carries cancellation error ~ eps * (|a d| + |b c|); for long
  // words the entries grow large and the absolute check must scale with it.
  const double scale = std::abs(a * d) + std::abs(b * c);
  const double tol = 1e-9 + 1e-12 * scale;
  if (std::abs(det - 1.0) > tol)
    throw param_error("MoebiusMap: determinant " + std::to_string(det) + " != 1");
  if (std::abs(det - 1.0) > 1e-15 && std::abs(det - 1.0) < 1e-6) {
    // Renormalize the small drift accumulated by products.
    const double s = std::sqrt(det);
    a /= s; b /= s; c /= s; d /= s;
  }
  // Sign normalization: first nonzero of (a,b,c,d) positive.
  double lead = a;
  if (lead == 0.0) lead = b;
  if (lead == 0.0) lead = c;
  if (lead == 0.0) lead = d;
  if (lead < 0.0) { a = -a; b = -b; c = -c; d = -d; }
}

bool MoebiusMap::approx_equal(const MoebiusMap& o, double tol) const {
  return std::abs(a - o.a) <= tol && std::abs(b - o.b) <= tol &&
         std::abs(c - o.c) <= tol && std::abs(d - o.d) <= tol;
}

std::string MoebiusMap::str() const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "[[%.6g,%.6g],[%.6g,%.6g]]", a, b, c, d);
  return buf;
}

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
  return MoebiusMap(f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
                    f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d);
}

MoebiusMap moebius_s() { return MoebiusMap(0.0, 1.0, -1.0, 0.0); }

MoebiusMap moebius_t(double w, long long n) {
  if (w <= 2.0) throw param_error("moebius_t: cusp width w must exceed 2");
  return MoebiusMap(1.0, static_cast<double>(n) * w, 0.0, 1.0);
}

MoebiusMap branch_map(long long n, double w) {
  if (n == 0) throw param_error("branch_map: branch index n must be nonzero");
  if (w <= 2.0) throw param_error("branch_map: cusp width w must exceed 2");
  // S T^n = [[0, 1], [-1, -n w]] before sign normalization.
  return MoebiusMap(0.0, 1.0, -1.0, -static_cast<double>(n) * w);
}

}  // namespace hecke
