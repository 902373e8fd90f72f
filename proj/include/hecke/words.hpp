#ifndef HECKE_WORDS_HPP
#define HECKE_WORDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hecke/moebius.hpp"

namespace hecke {

// Group element of Gamma_w in the free-product normal form.
// kind Mixed: S T^{n_1} S T^{n_2} ... S T^{n_p} with all n_i != 0.
// kind PowerT: T^{n_1} (single exponent, possibly 0 = identity).
// kind LetterS: the involution S.
struct GroupWord {
  enum class Kind { Mixed, PowerT, LetterS };

  Kind kind = Kind::Mixed;
  std::vector<long long> exps;

  static GroupWord mixed(std::vector<long long> e);
  static GroupWord power_t(long long n);
  static GroupWord letter_s();

  std::size_t block_count() const { return exps.size(); }

  // Canonical conjugacy-class representative: lexicographically least
  // rotation of the exponent tuple (Mixed only; others are their own form).
  GroupWord canonical_cyclic() const;

  // True iff the exponent tuple is not a repetition of a strictly shorter block.
  bool is_primitive() const;

  GroupWord inverse_class() const;  // reversed, negated tuple, canonicalized

  bool operator==(const GroupWord& o) const {
    return kind == o.kind && exps == o.exps;
  }
  bool operator<(const GroupWord& o) const;

  // "(1,-2,3)" for mixed words, "T^n" and "S" otherwise.
  std::string str() const;
};

GroupWord concat(const GroupWord& u, const GroupWord& v);

MoebiusMap word_matrix(const GroupWord& word, double w);

// Hyperbolic length 2 arccosh(|tr M| / 2).  Throws classification_error when
// |tr| <= 2 + 1e-12 (elliptic/parabolic word), naming the word.
double geodesic_length(const GroupWord& word, double w);

struct PrimitiveClass {
  GroupWord word;
  double length = 0.0;
};

struct EnumerationStats {
  std::uint64_t words_visited = 0;
  std::uint64_t skipped_non_hyperbolic = 0;
};

// All primitive hyperbolic conjugacy classes with length <= ell_max, one
// canonical cyclic word per class, sorted by (length, word).  A class and its
// inverse are listed separately.  Enumeration uses the derivative bound
// ell(gamma) >= 2 sum_i log(|n_i| w - a), a = hull endpoint, which every word
// of length <= ell_max satisfies, then filters by the exact length.
std::vector<PrimitiveClass> enumerate_primitive_classes(double w, double ell_max,
                                                        EnumerationStats* stats = nullptr);

}  // namespace hecke

#endif  // HECKE_WORDS_HPP
