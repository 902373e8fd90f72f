#include "hecke/words.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hecke {

namespace {

constexpr double kHyperbolicTol = 1e-12;

double hull_endpoint_local(double w) { return 2.0 / (w + std::sqrt(w * w - 4.0)); }

// arccosh via the log form, stable for x >= 1.
double acosh_log(double x) { return std::log(x + std::sqrt(x * x - 1.0)); }

}  // namespace

GroupWord GroupWord::mixed(std::vector<long long> e) {
  if (e.empty()) throw param_error("GroupWord: mixed word needs >= 1 block");
  for (long long n : e)
    if (n == 0) throw param_error("GroupWord: zero exponent in mixed word");
  GroupWord g;
  g.kind = Kind::Mixed;
  g.exps = std::move(e);
  return g;
}

GroupWord GroupWord::power_t(long long n) {
  GroupWord g;
  g.kind = Kind::PowerT;
  g.exps = {n};
  return g;
}

GroupWord GroupWord::letter_s() {
  GroupWord g;
  g.kind = Kind::LetterS;
  return g;
}

GroupWord GroupWord::canonical_cyclic() const {
  if (kind != Kind::Mixed || exps.size() <= 1) return *this;
  const std::size_t p = exps.size();
  std::vector<long long> best = exps;
  std::vector<long long> rot = exps;
  for (std::size_t r = 1; r < p; ++r) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  GroupWord g;
  g.kind = Kind::Mixed;
  g.exps = std::move(best);
  return g;
}

bool GroupWord::is_primitive() const {
  if (kind == Kind::LetterS) return true;
  if (kind == Kind::PowerT) return exps[0] == 1 || exps[0] == -1;
  const std::size_t p = exps.size();
  for (std::size_t d = 1; d <= p / 2; ++d) {
    if (p % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < p && repeats; ++i)
      if (exps[i] != exps[i % d]) repeats = false;
    if (repeats) return false;
  }
  return true;
}

GroupWord GroupWord::inverse_class() const {
  if (kind == Kind::LetterS) return *this;
  if (kind == Kind::PowerT) return power_t(-exps[0]);
  std::vector<long long> inv(exps.rbegin(), exps.rend());
  for (long long& n : inv) n = -n;
  return mixed(std::move(inv)).canonical_cyclic();
}

bool GroupWord::operator<(const GroupWord& o) const {
  if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
  return exps < o.exps;
}

std::string GroupWord::str() const {
  if (kind == Kind::LetterS) return "S";
  if (kind == Kind::PowerT) return "T^" + std::to_string(exps[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exps[i]);
  }
  s += ")";
  return s;
}

GroupWord concat(const GroupWord& u, const GroupWord& v) {
  if (u.kind != GroupWord::Kind::Mixed || v.kind != GroupWord::Kind::Mixed)
    throw param_error("concat: only mixed words are concatenated");
  std::vector<long long> e = u.exps;
  e.insert(e.end(), v.exps.begin(), v.exps.end());
  return GroupWord::mixed(std::move(e));
}

MoebiusMap word_matrix(const GroupWord& word, double w) {
  if (word.kind == GroupWord::Kind::LetterS) return moebius_s();
  if (word.kind == GroupWord::Kind::PowerT) return moebius_t(w, word.exps[0]);
  MoebiusMap m = branch_map(word.exps[0], w);
  for (std::size_t i = 1; i < word.exps.size(); ++i)
    m = compose(m, branch_map(word.exps[i], w));
  return m;
}

double geodesic_length(const GroupWord& word, double w) {
  const MoebiusMap m = word_matrix(word, w);
  const double half_tr = std::abs(m.trace()) / 2.0;
  if (half_tr <= 1.0 + kHyperbolicTol / 2.0)
    throw classification_error("geodesic_length: word " + word.str() +
                               " is not hyperbolic (|tr| = " +
                               std::to_string(2.0 * half_tr) + ")");
  return 2.0 * acosh_log(half_tr);
}

namespace {

struct Enumerator {
  double w;
  double ell_max;
  double a;         // hull endpoint
  double budget;    // ell_max / 2, consumed as sum log(|n_i| w - a)
  EnumerationStats stats;
  std::set<std::vector<long long>> seen;
  std::vector<PrimitiveClass> out;
  std::vector<long long> current;

  void emit() {
    GroupWord word = GroupWord::mixed(current).canonical_cyclic();
    if (!word.is_primitive()) return;
    if (!seen.insert(word.exps).second) return;
    ++stats.words_visited;
    double len;
    try {
      len = geodesic_length(word, w);
    } catch (const classification_error&) {
      ++stats.skipped_non_hyperbolic;
      return;
    }
    if (len <= ell_max) out.push_back({std::move(word), len});
  }

  void descend(double used) {
    const double remaining = budget - used;
    // |n| w - a <= e^remaining  =>  |n| <= (e^remaining + a) / w
    const double cap = (std::exp(remaining) + a) / w;
    if (cap < 1.0) return;
    const long long n_cap = static_cast<long long>(std::floor(cap + 1e-12));
    for (long long n = -n_cap; n <= n_cap; ++n) {
      if (n == 0) continue;
      const double cost = std::log(std::abs(static_cast<double>(n)) * w - a);
      if (used + cost > budget + 1e-12) continue;
      current.push_back(n);
      emit();
      descend(used + cost);
      current.pop_back();
    }
  }
};

}  // namespace

std::vector<PrimitiveClass> enumerate_primitive_classes(double w, double ell_max,
                                                        EnumerationStats* stats) {
  if (w <= 2.0) throw param_error("enumerate_primitive_classes: w must exceed 2");
  if (ell_max <= 0.0) throw param_error("enumerate_primitive_classes: ell_max must be positive");
  Enumerator e;
  e.w = w;
  e.ell_max = ell_max;
  e.a = hull_endpoint_local(w);
  e.budget = ell_max / 2.0;
  e.descend(0.0);
  std::sort(e.out.begin(), e.out.end(), [](const PrimitiveClass& x, const PrimitiveClass& y) {
    if (x.length != y.length) return x.length < y.length;
    return x.word < y.word;
  });
  if (stats) *stats = e.stats;
  return e.out;
}

}  // namespace hecke
