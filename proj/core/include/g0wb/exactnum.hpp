#pragma once

/**
 * @file exactnum.hpp
 * @brief Exact rationals and elements of the cyclotomic field Q[xi_N].
 *
 * A CyclotomicNumber is stored on the power basis 1, xi, ..., xi^(phi(N)-1)
 * reduced modulo the N-th cyclotomic polynomial, so two equal numbers of the
 * same conductor have identical coefficient vectors. Operands of different
 * conductor are promoted to the lcm conductor before combining.
 */

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "g0wb/errors.hpp"

namespace g0wb {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Integer polynomial, ascending coefficients; no trailing zeros except for 0.
using IntPoly = std::vector<BigInt>;

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t n);
std::int64_t euler_phi(std::int64_t n);

/// The N-th cyclotomic polynomial, monic of degree phi(N).
IntPoly cyclotomic_polynomial(std::int64_t n);

std::string format_rational(const BigRational& r);
BigRational parse_rational(std::string_view text);

class CyclotomicNumber {
 public:
  CyclotomicNumber();
  CyclotomicNumber(long v);  // NOLINT(google-explicit-constructor)
  CyclotomicNumber(const BigInt& v);  // NOLINT(google-explicit-constructor)
  CyclotomicNumber(const BigRational& v);  // NOLINT(google-explicit-constructor)

  /// xi_N^power.
  static CyclotomicNumber root_of_unity(std::int64_t conductor, std::int64_t power);

  /// Interprets `raw` as sum raw[i] xi_N^i (any length) and reduces it.
  static CyclotomicNumber from_power_coeffs(std::int64_t conductor, const std::vector<BigRational>& raw);

  std::int64_t conductor() const { return conductor_; }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Constant term; meaningful as "the value" only when is_rational().
  const BigRational& rational_part() const { return coeffs_.front(); }

  /// Re-expresses this number in Q[xi_M]; M must be a multiple of conductor().
  CyclotomicNumber promoted(std::int64_t m) const;

  /// Expresses this number in Q[xi_M], if it lies in that field. M need not
  /// divide conductor(); the test runs in Q[xi_gcd(N, M)].
  std::optional<CyclotomicNumber> restricted(std::int64_t m) const;

  /// sigma_m : xi_N -> xi_N^m.
  CyclotomicNumber galois(std::int64_t m) const;

  CyclotomicNumber pow(std::int64_t e) const;
  CyclotomicNumber inverse() const;
  CyclotomicNumber operator-() const;

  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber& operator-=(const CyclotomicNumber& o);
  CyclotomicNumber& operator*=(const CyclotomicNumber& o);
  CyclotomicNumber& operator/=(const CyclotomicNumber& o);

  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }
  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

  std::complex<double> to_complex() const;

  /// Canonical literal in `z`, ascending powers, no whitespace: "3+2z^5-1/2z^7".
  std::string to_literal() const;
  /// Parses a literal and interprets z as xi_N.
  static CyclotomicNumber parse(std::string_view text, std::int64_t conductor);

 private:
  CyclotomicNumber(std::int64_t conductor, std::vector<BigRational> coeffs)
      : conductor_(conductor), coeffs_(std::move(coeffs)) {}

  std::int64_t conductor_ = 1;
  std::vector<BigRational> coeffs_;
};

}  // namespace g0wb
