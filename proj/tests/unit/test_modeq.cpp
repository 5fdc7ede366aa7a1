#include <doctest.h>

#include <random>

#include "g0wb/modeq.hpp"
#include "oracles.hpp"

using namespace g0wb;

namespace {

PuiseuxSeries jseries(std::size_t n) {
  std::vector<BigRational> a;
  for (const auto& c : oracle::j_coefficients(n)) a.emplace_back(c);
  return PuiseuxSeries::moonshine(a);
}

PuiseuxSeries fiction(long xi, std::int64_t trunc) {
  return PuiseuxSeries::laurent(-1, trunc, {{-1, 1}, {1, xi}});
}

using Terms = std::vector<std::tuple<std::int64_t, std::int64_t, BigRational>>;

ModularPolynomial golden_f2() {
  Terms t;
  for (const auto& [ij, c] : oracle::shifted_classical_phi2()) t.emplace_back(ij.first, ij.second, BigRational(c));
  return ModularPolynomial::from_terms(2, 1, t);
}

// (x^m - y)(y^m - x) times (-1)^(psi(m)+1), the product-form normalisation.
ModularPolynomial pure_pole(std::int64_t m) {
  const long s = oracle::psi(m) % 2 == 1 ? 1 : -1;
  return ModularPolynomial::from_terms(m, 1, Terms{{m, m, s}, {m + 1, 0, -s}, {0, m + 1, -s}, {1, 1, s}});
}

}  // namespace

TEST_CASE("coset sets") {
  CHECK(coset_set(2).pairs == std::vector<CosetPair>{{1, 0}, {2, 0}, {2, 1}});
  CHECK(coset_set(3).pairs == std::vector<CosetPair>{{1, 0}, {3, 0}, {3, 1}, {3, 2}});
  CHECK(coset_set(4).pairs == std::vector<CosetPair>{{1, 0}, {2, 1}, {4, 0}, {4, 1}, {4, 2}, {4, 3}});
  for (std::int64_t m = 2; m <= 200; ++m) {
    const auto cs = coset_set(m);
    CHECK(static_cast<std::int64_t>(cs.pairs.size()) == oracle::psi(m));
    CHECK(psi(m) == oracle::psi(m));
    CHECK(std::is_sorted(cs.pairs.begin(), cs.pairs.end()));
    bool squarefree = true;
    for (const auto& [p, e] : factorize(m)) squarefree = squarefree && e == 1;
    if (squarefree) {
      std::int64_t all = 0;
      for (std::int64_t d = 1; d <= m; ++d)
        if (m % d == 0) all += d;
      CHECK(static_cast<std::int64_t>(cs.pairs.size()) == all);
    }
  }
}

TEST_CASE("averaging operator") {
  const auto qi = PuiseuxSeries::laurent(-1, 20, {{-1, 1}});
  const auto a = average_sum(qi, 2);
  CHECK(a.terms().size() == 1);
  CHECK(a.coeff(-2) == CyclotomicNumber(1L));

  // direct coset expansion of q^-1 + q: the half-integral parts cancel
  const auto b = average_sum(fiction(1, 20), 2);
  CHECK(b.has_integral_exponents());
  CHECK(b.coeff(-2) == CyclotomicNumber(1L));
  CHECK(b.coeff(2) == CyclotomicNumber(1L));
  CHECK(b.terms().size() == 2);
  CHECK(express_in_generator(b, fiction(1, 20)) ==
        std::vector<CyclotomicNumber>{CyclotomicNumber(-2L), CyclotomicNumber(0L), CyclotomicNumber(1L)});

  const auto j = jseries(20);
  const auto p = express_in_generator(average_sum(j, 2), j);
  CHECK(p == std::vector<CyclotomicNumber>{CyclotomicNumber(-393768L), CyclotomicNumber(0L), CyclotomicNumber(1L)});
}

TEST_CASE("express in generator") {
  const auto j = jseries(10);
  CHECK(express_in_generator(j, j) == std::vector<CyclotomicNumber>{CyclotomicNumber(0L), CyclotomicNumber(1L)});
  const auto qi = PuiseuxSeries::laurent(-1, 10, {{-1, 1}});
  CHECK_THROWS_AS(express_in_generator(fiction(1, 10), qi), ExpressFailure);
  try {
    express_in_generator(fiction(1, 10), qi);
  } catch (const ExpressFailure& e) {
    CHECK(e.exponent_num() == 1);
    CHECK(e.actual() == "1");
  }
}

TEST_CASE("golden order-2 polynomial for the j series") {
  const auto j = jseries(static_cast<std::size_t>(required_truncation(2)));
  const auto f = build_modular_polynomial(j, 2);
  CHECK(f == golden_f2());
  CHECK(f.coeff(2, 0) == CyclotomicNumber(-393768L));
  CHECK(f.coeff(1, 1) == CyclotomicNumber(-42987520L + 1));
  CHECK(f.coeff(1, 0) == CyclotomicNumber(BigRational(mpz_class("-40491318744"))));
  CHECK(f.coeff(0, 0) == CyclotomicNumber(BigRational(mpz_class("121136760788544"))));
  CHECK(f.degx() == 3);
  CHECK(f.degy() == 3);
  CHECK(f.coeff(1, 1) == CyclotomicNumber(BigRational(-42987520 + 1)));
  CHECK(symmetry_check(f));
  const auto rep = verify_modular_equation(j, f, 2);
  CHECK(rep.status == VerificationStatus::consistent);
  CHECK(rep.verified_to >= 0);
  CHECK_THROWS_AS(build_modular_polynomial(jseries(10), 2), InsufficientTruncation);
  try {
    build_modular_polynomial(jseries(10), 2);
  } catch (const InsufficientTruncation& e) {
    CHECK(e.required() == required_truncation(2));
  }
}

TEST_CASE("pure pole and simple fictions") {
  const auto qi = PuiseuxSeries::laurent(-1, 200, {{-1, 1}});
  for (std::int64_t m : {2, 3, 5}) {
    const auto f = build_modular_polynomial(qi, m);
    CHECK(f == pure_pole(m));
    CHECK(verify_modular_equation(qi, f, m).status == VerificationStatus::consistent);
  }
  // order 4 keeps the single coset (2,1), whose root is -q^-1, and so an extra factor
  const auto f4 = build_modular_polynomial(qi, 4);
  CHECK(f4.degx() == 6);
  CHECK_FALSE(f4 == pure_pole(4));

  const auto f = build_modular_polynomial(fiction(1, 40), 2);
  // (x^2 - 2 - y)(y^2 - x - 2)
  const auto expect = ModularPolynomial::from_terms(
      2, 1, Terms{{2, 2, 1}, {3, 0, -1}, {1, 1, 1}, {2, 0, -2}, {0, 3, -1}, {0, 2, -2}, {0, 1, 2}, {1, 0, 2}, {0, 0, 4}});
  CHECK(f == expect);
  CHECK(symmetry_check(expect));
  CHECK_FALSE(symmetry_check(ModularPolynomial::from_terms(2, 1, Terms{{2, 1, 1}, {1, 0, -1}})));

  CHECK_THROWS_AS(build_modular_polynomial(fiction(2, 40), 2), ExpressFailure);
}

TEST_CASE("verification reports") {
  const auto j = jseries(30);
  auto bad = golden_f2();
  bad.set(0, 0, bad.coeff(0, 0) + CyclotomicNumber(1L));
  const auto rep = verify_modular_equation(j, bad, 2);
  CHECK(rep.status == VerificationStatus::inconsistent);
  REQUIRE(rep.first_failure.has_value());
  CHECK(rep.first_failure->exponent == 0);

  const auto shallow = verify_modular_equation(jseries(2), golden_f2(), 2);
  CHECK(shallow.status == VerificationStatus::insufficient_data);
  CHECK(shallow.required_trunc == required_truncation(2));

  // a polynomial that is right for a different series fails at the first visible term
  const auto qi = PuiseuxSeries::laurent(-1, 30, {{-1, 1}});
  const auto wrong = verify_modular_equation(fiction(1, 30), build_modular_polynomial(qi, 2), 2);
  CHECK(wrong.status == VerificationStatus::inconsistent);
}

TEST_CASE("generalised construction") {
  const auto qi = PuiseuxSeries::laurent(-1, 40, {{-1, 1}});
  ModEqOptions g{true, 1};
  CHECK(emit_mpoly(build_modular_polynomial(qi, 2, g)) == emit_mpoly(build_modular_polynomial(qi, 2)));
  const auto j = jseries(30);
  CHECK(build_modular_polynomial(j, 2, g) == build_modular_polynomial(j, 2));

  // q^-1 + xi_3 q, order 2 is coprime to 3
  PuiseuxSeries h(3, 1, -1, 40);
  h.set(-1, CyclotomicNumber(1L));
  h.set(1, CyclotomicNumber::root_of_unity(3, 1));
  ModEqOptions g3{true, 3};
  const auto f = build_modular_polynomial(h, 2, g3);
  CHECK(f.conductor() == 3);
  CHECK(symmetry_check(f, g3));
  CHECK(verify_modular_equation(h, f, 2, g3).status == VerificationStatus::consistent);
  CHECK_THROWS_AS(build_modular_polynomial(h, 3, g3), NotCoprime);
}

TEST_CASE("round trips for order 2 and 3") {
  const std::vector<PuiseuxSeries> hs{PuiseuxSeries::laurent(-1, 60, {{-1, 1}}), fiction(1, 60), jseries(40)};
  for (const auto& h : hs) {
    for (std::int64_t m : {2, 3}) {
      const auto f = build_modular_polynomial(h, m);
      CHECK(verify_modular_equation(h, f, m).status == VerificationStatus::consistent);
      CHECK(symmetry_check(f));
      CHECK(parse_mpoly_string(emit_mpoly(f)) == f);
      CHECK(emit_mpoly(parse_mpoly_string(emit_mpoly(f))) == emit_mpoly(f));
    }
  }
}

TEST_CASE("mpoly text format") {
  const std::string text = emit_mpoly(golden_f2());
  CHECK(text.rfind("# mpoly v1\norder: 2\nconductor: 1\ndegx: 3\ndegy: 3\n0 0 121136760788544\n", 0) == 0);
  CHECK_THROWS_AS(parse_mpoly_string("# mpoly v1\norder: 2\nconductor: 1\ndegx: 1\ndegy: 0\n1 0 1\n1 0 2\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_mpoly_string("# mpoly v1\norder: 2\nconductor: 1\ndegx: 1\ndegy: 0\n1 0 1\n0 0 2\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_mpoly_string("# mpoly v1\norder: 2\nconductor: 1\ndegx: 2\ndegy: 0\n1 0 1\n"), ParseError);
}

TEST_CASE("property: express then evaluate reproduces the input") {
  std::mt19937_64 rng(21);
  const auto j = jseries(40);
  for (int t = 0; t < 1000; ++t) {
    std::vector<CyclotomicNumber> p(1 + rng() % 4);
    for (auto& c : p) c = CyclotomicNumber(static_cast<long>(rng() % 11) - 5);
    if (p.back().is_zero()) p.back() = CyclotomicNumber(1L);
    PuiseuxSeries f = PuiseuxSeries::constant(p[0]);
    PuiseuxSeries pw = j;
    for (std::size_t i = 1; i < p.size(); ++i) {
      f = f + pw.scaled(p[i]);
      pw = pw * j;
    }
    CHECK(express_in_generator(f, j) == p);
  }
}

TEST_CASE("property: every successful build is symmetric") {
  std::mt19937_64 rng(31);
  const auto j = jseries(60);
  std::vector<BigRational> g2c;
  for (const auto& c : oracle::gamma0_2_coefficients(60)) g2c.emplace_back(c);
  const auto g2 = PuiseuxSeries::moonshine(g2c);
  int built = 0;
  int refused = 0;
  for (int t = 0; t < 1000; ++t) {
    PuiseuxSeries h = j;
    std::int64_t m = 2;
    ModEqOptions opts;
    switch (t % 4) {
      case 0: {
        const std::int64_t e = static_cast<std::int64_t>(rng() % 24);
        m = rng() % 2 ? 5 : 7;
        h = PuiseuxSeries(24, 1, -1, required_truncation(m) + static_cast<std::int64_t>(rng() % 5));
        h.set(-1, CyclotomicNumber(1L));
        h.set(1, CyclotomicNumber::root_of_unity(24, e));
        opts.generalised = true;
        break;
      }
      case 1:
        m = 2 + static_cast<std::int64_t>(rng() % 2);
        h = j.truncated(required_truncation(m) + static_cast<std::int64_t>(rng() % (61 - required_truncation(m))));
        break;
      case 2:
        m = 3;
        h = g2.truncated(required_truncation(m) + static_cast<std::int64_t>(rng() % (61 - required_truncation(m))));
        break;
      default: {
        // random integer series: usually not a Hauptmodul at all
        std::vector<BigRational> a(static_cast<std::size_t>(required_truncation(2)));
        for (auto& c : a) c = static_cast<long>(rng() % 5) - 2;
        if (rng() % 2 == 0) std::fill(a.begin() + 1, a.end(), BigRational(0));
        h = PuiseuxSeries::moonshine(a);
      }
    }
    try {
      const auto f = build_modular_polynomial(h, m, opts);
      CHECK(symmetry_check(f, opts));
      ++built;
    } catch (const NotInvariant&) {
      ++refused;
    } catch (const ExpressFailure&) {
      ++refused;
    }
  }
  CHECK(built >= 750);
  CHECK(built + refused == 1000);
}

TEST_CASE("property: averaging keeps exponents integral") {
  std::mt19937_64 rng(32);
  const std::int64_t primes[] = {2, 3, 5, 7};
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::pair<std::int64_t, BigRational>> terms;
    const std::int64_t lo = -static_cast<std::int64_t>(rng() % 3);
    for (std::int64_t n = lo; n <= 12; ++n)
      if (rng() % 2) terms.emplace_back(n, BigRational(static_cast<long>(rng() % 7) - 3));
    const auto f = PuiseuxSeries::laurent(lo, 12, terms);
    const auto s = average_sum(f, primes[t % 4]);
    CHECK(s.has_integral_exponents());
    CHECK(s.denom() == 1);
  }
}
