#pragma once

/**
 * @file qseries.hpp
 * @brief Truncated Puiseux series in q^(1/D) with cyclotomic coefficients.
 *
 * A series stores exponent numerators n (exponent n/D) with lo <= n <= trunc.
 * Every coefficient in that window is known; anything above trunc is not.
 * Arithmetic always recomputes the window to the tightest range that is fully
 * determined by the operands.
 */

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "g0wb/exactnum.hpp"

namespace g0wb {

struct SeriesMeta {
  std::string label;
  std::string source;
  std::optional<std::string> claimed_group;
};

// Window used for exactly known finite series such as constants.
inline constexpr std::int64_t kExactTrunc = std::int64_t{1} << 40;

class PuiseuxSeries {
 public:
  PuiseuxSeries(std::int64_t conductor, std::int64_t denom, std::int64_t lo, std::int64_t trunc);

  /// Laurent series (denom 1, conductor 1) from integer-exponent terms.
  static PuiseuxSeries laurent(std::int64_t lo, std::int64_t trunc,
                               const std::vector<std::pair<std::int64_t, BigRational>>& terms);

  /// The constant c, known exactly (window up to kExactTrunc).
  static PuiseuxSeries constant(const CyclotomicNumber& c);

  /// q^-1 + sum a_n q^n with a_1.. given in order; trunc = number of a_n.
  static PuiseuxSeries moonshine(const std::vector<BigRational>& a);

  std::int64_t conductor() const { return conductor_; }
  std::int64_t denom() const { return denom_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t trunc() const { return trunc_; }
  const std::map<std::int64_t, CyclotomicNumber>& terms() const { return coeffs_; }

  /// Coefficient at exponent n/D; throws InsufficientTruncation when n > trunc.
  CyclotomicNumber coeff(std::int64_t n) const;
  /// Coefficient at the integral exponent e (requires e*D inside the window).
  CyclotomicNumber coeff_at_integer(std::int64_t e) const { return coeff(e * denom_); }
  void set(std::int64_t n, const CyclotomicNumber& c);

  bool is_zero() const { return coeffs_.empty(); }
  /// Largest integral exponent e with e*D <= trunc.
  std::int64_t trunc_floor() const;
  bool determined_to(std::int64_t whole_exponent) const { return whole_exponent * denom_ <= trunc_; }
  bool is_moonshine_shape() const;
  bool has_integral_exponents() const;

  PuiseuxSeries with_denom(std::int64_t d) const;
  PuiseuxSeries with_conductor(std::int64_t n) const;
  /// Smallest denominator that represents the same series.
  PuiseuxSeries reduced_denom() const;
  /// Coefficients re-expressed in Q[xi_n]; empty if some coefficient is outside.
  std::optional<PuiseuxSeries> restricted_conductor(std::int64_t n) const;
  /// Drops everything above exponent numerator t (t <= trunc).
  PuiseuxSeries truncated(std::int64_t t) const;
  PuiseuxSeries galois(std::int64_t m) const;
  PuiseuxSeries scaled(const CyclotomicNumber& c) const;
  PuiseuxSeries pow(unsigned e) const;

  PuiseuxSeries operator-() const;
  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
  /// Structural equality: same window, denominator, conductor and coefficients.
  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b);

 private:
  void tighten_lo();

  std::int64_t conductor_;
  std::int64_t denom_;
  std::int64_t lo_;
  std::int64_t trunc_;
  std::map<std::int64_t, CyclotomicNumber> coeffs_;
};

enum class SeriesOp { add, sub, mul };
PuiseuxSeries series_arith(const PuiseuxSeries& a, const PuiseuxSeries& b, SeriesOp op);

/// h(m tau / d^2 + k / d): q^n -> xi_d^(kn) q^(n m / d^2).
PuiseuxSeries substitute_coset(const PuiseuxSeries& h, std::int64_t m, std::int64_t d, std::int64_t k);

struct SeriesComparison {
  bool equal = true;
  // On mismatch: exponent as numerator over `den`, with both coefficients.
  std::int64_t exponent_num = 0;
  std::int64_t exponent_den = 1;
  CyclotomicNumber lhs;
  CyclotomicNumber rhs;
};

/// Compares all coefficients with exponent <= bound (whole q-exponents).
SeriesComparison compare_to_order(const PuiseuxSeries& a, const PuiseuxSeries& b, std::int64_t bound);

/// Series carrying its meta data; the unit of the qexp text format.
struct LabeledSeries {
  SeriesMeta meta;
  PuiseuxSeries series;
};

std::string emit_qexp(const std::string& label, const PuiseuxSeries& s);
LabeledSeries parse_qexp(std::istream& in);
LabeledSeries parse_qexp_string(const std::string& text);

}  // namespace g0wb
