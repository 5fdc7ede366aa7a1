#include <doctest.h>

#include <random>

#include "g0wb/exactnum.hpp"

using namespace g0wb;

namespace {

CyclotomicNumber random_cyc(std::mt19937_64& rng, std::int64_t n) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<BigRational> raw(static_cast<std::size_t>(n));
  for (auto& c : raw) {
    c = BigRational(num(rng), den(rng));
    c.canonicalize();
  }
  return CyclotomicNumber::from_power_coeffs(n, raw);
}

IntPoly ints(std::initializer_list<long> v) {
  IntPoly p;
  for (long x : v) p.emplace_back(x);
  return p;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == ints({-1, 1}));
  CHECK(cyclotomic_polynomial(4) == ints({1, 0, 1}));
  CHECK(cyclotomic_polynomial(12) == ints({1, 0, -1, 0, 1}));
  for (std::int64_t n = 1; n <= 60; ++n) CHECK(static_cast<std::int64_t>(cyclotomic_polynomial(n).size()) - 1 == euler_phi(n));
}

TEST_CASE("basic field arithmetic") {
  const auto i = CyclotomicNumber::root_of_unity(4, 1);
  CHECK(i * i == CyclotomicNumber(-1L));
  const auto w = CyclotomicNumber::root_of_unity(3, 1);
  CHECK((CyclotomicNumber(1L) + w + w * w).is_zero());
  CHECK(CyclotomicNumber::root_of_unity(24, 1).pow(12) == CyclotomicNumber(-1L));
  CHECK(CyclotomicNumber::root_of_unity(24, 12) == CyclotomicNumber(-1L));
  CHECK_THROWS_AS(CyclotomicNumber(1L) / CyclotomicNumber(), DivisionByZero);
}

TEST_CASE("galois action") {
  const auto z = CyclotomicNumber::root_of_unity(12, 1);
  CHECK(z.galois(5) == CyclotomicNumber::root_of_unity(12, 5));
  CHECK(z.galois(5).galois(5) == z);
  CHECK(CyclotomicNumber(BigRational(3, 7)).galois(5) == CyclotomicNumber(BigRational(3, 7)));
  CHECK_THROWS_AS(z.galois(4), NotCoprime);
}

TEST_CASE("mixed conductors promote to the lcm") {
  const auto a = CyclotomicNumber::root_of_unity(4, 1);
  const auto b = CyclotomicNumber::root_of_unity(3, 1);
  const auto c = a * b;
  CHECK(c.conductor() == 12);
  CHECK(c == CyclotomicNumber::root_of_unity(12, 7));
  CHECK(c.restricted(4) == std::nullopt);
  CHECK((a * a).restricted(1).value() == CyclotomicNumber(-1L));
}

TEST_CASE("literals round trip") {
  const auto x = CyclotomicNumber::parse("3+2z^5-1/2z^7", 24);
  CHECK(x.to_literal() == "3+2z^5-1/2z^7");
  CHECK(CyclotomicNumber::parse(x.to_literal(), 24) == x);
  CHECK(CyclotomicNumber(BigRational(-5, 3)).to_literal() == "-5/3");
  CHECK(CyclotomicNumber().to_literal() == "0");
  CHECK_THROWS(CyclotomicNumber::parse("3+", 5));
}

TEST_CASE("property: field laws on random elements") {
  std::mt19937_64 rng(7);
  const std::int64_t conductors[] = {3, 4, 5, 8, 12, 24};
  for (int t = 0; t < 1000; ++t) {
    const std::int64_t n = conductors[t % 6];
    const auto a = random_cyc(rng, n);
    const auto b = random_cyc(rng, n);
    std::int64_t m;
    do {
      m = std::uniform_int_distribution<std::int64_t>(1, n - 1)(rng);
    } while (gcd64(m, n) != 1);
    std::int64_t k;
    do {
      k = std::uniform_int_distribution<std::int64_t>(1, n - 1)(rng);
    } while (gcd64(k, n) != 1);
    CHECK((a * b).galois(m) == a.galois(m) * b.galois(m));
    CHECK((a + b).galois(m) == a.galois(m) + b.galois(m));
    CHECK(a.galois(k).galois(m) == a.galois(mod_floor(m * k, n)));
    const auto d = a - a;
    CHECK(d.is_zero());
    for (const auto& c : d.coeffs()) CHECK(c == 0);
    CHECK(static_cast<std::int64_t>(a.coeffs().size()) == euler_phi(n));
    // embedding into a larger field commutes with arithmetic
    CHECK((a * b).promoted(2 * n) == a.promoted(2 * n) * b.promoted(2 * n));
    CHECK((a + b).promoted(3 * n) == a.promoted(3 * n) + b.promoted(3 * n));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}
