#pragma once

/**
 * @file braid.hpp
 * @brief The three-strand braid group: words, degree, Burau image in SL2(Z),
 * multiplier characters, the Maslov-extended pairs (A, n) and the quilt
 * action on G x G for a finite group G.
 */

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "g0wb/exactnum.hpp"
#include "g0wb/intmatrix.hpp"

namespace g0wb {

struct BraidLetter {
  int generator;  // 1 or 2
  std::int64_t exponent;
  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

class BraidWord {
 public:
  BraidWord() = default;
  explicit BraidWord(std::vector<BraidLetter> letters);

  static BraidWord generator(int g, std::int64_t e = 1) { return BraidWord({{g, e}}); }
  /// Whitespace-separated tokens s1, s2, s1^-3, s2^2.
  static BraidWord parse(std::string_view text);

  const std::vector<BraidLetter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  BraidWord inverse() const;
  BraidWord pow(std::int64_t e) const;
  std::string to_string() const;

  friend BraidWord operator*(const BraidWord& a, const BraidWord& b);
  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  void reduce();
  std::vector<BraidLetter> letters_;
};

std::int64_t degree(const BraidWord& w);
IntMatrix burau(const BraidWord& w);
/// xi_24^degree(w).
CyclotomicNumber braid_multiplier(const BraidWord& w);

/// 0 if c = 0 and a > 0, 1 if c < 0, 2 if c = 0 and a < 0, 3 if c > 0.
int sigma_class(const IntMatrix& a);

struct ExtendedElement {
  IntMatrix a;
  std::int64_t n = 0;
  friend bool operator==(const ExtendedElement&, const ExtendedElement&) = default;
};

/// Checks det = 1 and n = sigma_class(A) mod 4.
bool is_valid(const ExtendedElement& x);
/// The correction tau in {-1, 0, 1} for the product A B.
int maslov_index(const IntMatrix& a, const IntMatrix& b);
ExtendedElement extended_mul(const ExtendedElement& x, const ExtendedElement& y);
ExtendedElement extended_inverse(const ExtendedElement& x);
ExtendedElement lift_braid(const BraidWord& w);

/// The eta multiplier formula for c > 0, with the constant kappa exposed.
std::complex<double> eta_multiplier_matrix(const IntMatrix& a, const BigRational& kappa = BigRational(1, 4));
/// Its exponent: mu = exp(pi i * phase), phase reduced into [0, 2).
BigRational eta_multiplier_phase(const IntMatrix& a, const BigRational& kappa = BigRational(1, 4));

class GroupTable {
 public:
  /// Text format: "order: n" then n rows of n labels. Row 0 must be the row
  /// of the identity, so it lists the labels in order.
  static GroupTable parse(std::istream& in);
  static GroupTable parse_string(const std::string& text);
  static GroupTable load(const std::string& path);

  int order() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(std::string_view label) const;
  int mul(int g, int h) const { return table_[g][h]; }
  int inv(int g) const { return inverse_[g]; }
  int identity() const { return 0; }

 private:
  void validate() const;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
};

enum class QuiltGen { s1, s2, s1_inv, s2_inv };
using QuiltPair = std::pair<int, int>;

/// (g, h).s1 = (g, gh), (g, h).s2 = (g h^-1, h); inverse generators undo them.
QuiltPair quilt_step(const QuiltPair& p, QuiltGen gen, const GroupTable& g);
std::set<QuiltPair> quilt_orbit(const QuiltPair& p, const GroupTable& g);
/// All orbits of G x G, each sorted, listed by smallest member.
std::vector<std::set<QuiltPair>> quilt_orbits(const GroupTable& g);

}  // namespace g0wb
