#pragma once

/**
 * @file modeq.hpp
 * @brief Modular equations of order m for series q^-1 + sum a_n q^n.
 *
 * F_m(h(tau), Y) is the product over the primitive coset pairs (d, k) of
 * (h(m tau / d^2 + k / d) - Y). Polynomials are stored in that product form,
 * so the coefficient of Y^psi(m) is (-1)^psi(m); monic() flips the sign.
 */

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "g0wb/exactnum.hpp"
#include "g0wb/qseries.hpp"

namespace g0wb {

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
bool is_prime(std::int64_t n);
/// m * prod_{p | m} (1 + 1/p).
std::int64_t psi(std::int64_t m);

struct CosetPair {
  std::int64_t d;
  std::int64_t k;
  friend bool operator==(const CosetPair&, const CosetPair&) = default;
  friend auto operator<=>(const CosetPair&, const CosetPair&) = default;
};

struct CosetSet {
  std::int64_t m;
  std::vector<CosetPair> pairs;
};

/// Pairs (d, k) with d | m, 0 <= k < d and gcd(m/d, k, d) = 1, sorted.
CosetSet coset_set(std::int64_t m);

class ModularPolynomial {
 public:
  using Key = std::pair<std::int64_t, std::int64_t>;  // (power of x, power of y)

  ModularPolynomial() = default;
  ModularPolynomial(std::int64_t order, std::int64_t conductor) : order_(order), conductor_(conductor) {}

  /// Builds a polynomial from (i, j, coefficient) triples; duplicates add up.
  static ModularPolynomial from_terms(std::int64_t order, std::int64_t conductor,
                                      const std::vector<std::tuple<std::int64_t, std::int64_t, BigRational>>& terms);

  std::int64_t order() const { return order_; }
  std::int64_t conductor() const { return conductor_; }
  std::int64_t degx() const;
  std::int64_t degy() const;
  const std::map<Key, CyclotomicNumber>& coeffs() const { return coeffs_; }

  CyclotomicNumber coeff(std::int64_t i, std::int64_t j) const;
  void set(std::int64_t i, std::int64_t j, const CyclotomicNumber& c);

  /// Multiplies by (-1)^psi(order) so the leading y coefficient is 1.
  ModularPolynomial monic() const;
  ModularPolynomial scaled(const CyclotomicNumber& c) const;
  /// Swaps the roles of x and y.
  ModularPolynomial swapped() const;
  ModularPolynomial galois(std::int64_t m) const;

  friend ModularPolynomial operator+(const ModularPolynomial& a, const ModularPolynomial& b);
  friend ModularPolynomial operator*(const ModularPolynomial& a, const ModularPolynomial& b);
  friend bool operator==(const ModularPolynomial& a, const ModularPolynomial& b);

  std::string to_string() const;

 private:
  std::int64_t order_ = 0;
  std::int64_t conductor_ = 1;
  std::map<Key, CyclotomicNumber> coeffs_;
};

enum class VerificationStatus { consistent, inconsistent, insufficient_data };

struct VerificationFailure {
  BigRational exponent;
  CyclotomicNumber expected;
  CyclotomicNumber actual;
  std::int64_t y_power = 0;
};

struct VerificationReport {
  std::int64_t order = 0;
  std::int64_t verified_to = 0;
  VerificationStatus status = VerificationStatus::insufficient_data;
  std::optional<VerificationFailure> first_failure;
  // Truncation the series needs for a conclusive build at this order.
  std::optional<std::int64_t> required_trunc;
  std::string notes;
};

std::string to_string(VerificationStatus s);

struct ModEqOptions {
  bool generalised = false;
  // Coefficient field Q[xi_N]; defaults to the conductor of the series.
  std::optional<std::int64_t> conductor;
};

/// f(p tau) + sum_k f((tau + k) / p).
PuiseuxSeries average_sum(const PuiseuxSeries& f, std::int64_t p);

/// Truncation build_modular_polynomial demands at order m.
std::int64_t required_truncation(std::int64_t m);

/// Y-coefficients of prod_{(d,k)} (h(m tau/d^2 + k/d) - Y), index = power of Y.
std::vector<PuiseuxSeries> coset_product_coefficients(const PuiseuxSeries& h, std::int64_t m);

/// Writes f as P(h) by cancelling the most negative term with powers of h.
std::vector<CyclotomicNumber> express_in_generator(const PuiseuxSeries& f, const PuiseuxSeries& h);

ModularPolynomial build_modular_polynomial(const PuiseuxSeries& h, std::int64_t m, const ModEqOptions& opts = {});

VerificationReport verify_modular_equation(const PuiseuxSeries& h, const ModularPolynomial& f, std::int64_t m,
                                           const ModEqOptions& opts = {});

bool symmetry_check(const ModularPolynomial& f, const ModEqOptions& opts = {});

/// Evaluates F(x, y) on series arguments.
PuiseuxSeries evaluate(const ModularPolynomial& f, const PuiseuxSeries& x, const PuiseuxSeries& y);

std::string emit_mpoly(const ModularPolynomial& f);
ModularPolynomial parse_mpoly(std::istream& in);
ModularPolynomial parse_mpoly_string(const std::string& text);

}  // namespace g0wb
