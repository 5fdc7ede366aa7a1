#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "g0wb/corpus.hpp"
#include "g0wb/errors.hpp"
#include "g0wb/numeric.hpp"
#include "oracles.hpp"

using namespace g0wb;
using cd = std::complex<double>;

namespace {

const double kPi = std::acos(-1.0);

PuiseuxSeries j_series(int count) {
  const auto c = oracle::j_coefficients(count);
  return PuiseuxSeries::moonshine(std::vector<BigRational>(c.begin(), c.end()));
}

// Plain product with a generous number of factors, no shortcuts.
cd eta_direct(cd tau) {
  const cd q = std::exp(cd(0, 2 * kPi) * tau);
  cd prod = 1;
  cd qn = q;
  for (int n = 1; n < 2000; ++n, qn *= q) prod *= 1.0 - qn;
  return std::exp(cd(0, 2 * kPi / 24) * tau) * prod;
}

Evaluator eta_fn(int terms = 400) {
  return [terms](const UpperHalfPoint& t) { return eta_eval(t, terms); };
}

}  // namespace

TEST_SUITE("numeric") {
  TEST_CASE("upper half plane points reject small imaginary parts") {
    CHECK_THROWS_AS(UpperHalfPoint(0, 0.05), PreconditionError);
    CHECK_THROWS_AS(UpperHalfPoint(0, -1), PreconditionError);
    CHECK_NOTHROW(UpperHalfPoint(0, 0.1));
    const auto p = UpperHalfPoint::parse("0.25,1.5");
    CHECK(p.re == 0.25);
    CHECK(p.im == 1.5);
    CHECK_THROWS(UpperHalfPoint::parse("0.25"));
    CHECK_THROWS(UpperHalfPoint::parse("x,1"));
  }

  TEST_CASE("eval_series matches a direct sum and is invariant under S for J") {
    const PuiseuxSeries j = j_series(60);
    const UpperHalfPoint tau(0.1, 1.1);
    const auto r = eval_series(j, tau);
    const auto c = oracle::j_coefficients(60);
    const cd q = std::exp(cd(0, 2 * kPi) * tau.z());
    cd direct = 1.0 / q;
    for (std::size_t i = 0; i < c.size(); ++i) direct += c[i].get_d() * std::pow(q, static_cast<int>(i) + 1);
    CHECK(std::abs(r.value - direct) < 1e-9 * std::abs(direct));
    CHECK(r.tail_estimate < 1e-100);
    // j(-1/tau) = j(tau); -1/tau has imaginary part 1.1/1.22
    const auto s = eval_series(j, mobius(IntMatrix::of(0, -1, 1, 0), tau));
    CHECK(std::abs(s.value - r.value) < 1e-8 * std::abs(r.value));
  }

  TEST_CASE("eval_series of an exact constant has no tail") {
    const auto r = eval_series(PuiseuxSeries::constant(CyclotomicNumber(7L)), UpperHalfPoint(0, 1));
    CHECK(r.value == cd(7, 0));
    CHECK(r.tail_estimate == 0.0);
  }

  TEST_CASE("eta agrees with the direct product and obeys its basic laws") {
    for (const cd tau : {cd(0, 1), cd(1.0 / 3, 1), cd(-0.4, 0.3), cd(0.2, 2.5)}) {
      const auto r = eta_eval(UpperHalfPoint::from_complex(tau), 400);
      CHECK(std::abs(r.value - eta_direct(tau)) < 1e-12);
    }
    // translation: eta(tau + 1) = e^{pi i / 12} eta(tau)
    const auto a = eta_eval(UpperHalfPoint(0, 1), 200).value;
    const auto b = eta_eval(UpperHalfPoint(1, 1), 200).value;
    CHECK(std::abs(b - std::polar(1.0, kPi / 12) * a) < 1e-12);
    // i is fixed by S and eta(i) is real positive
    CHECK(std::abs(a.imag()) < 1e-14);
    CHECK(a.real() > 0);
    CHECK(std::abs(eta_eval(UpperHalfPoint(0, 2), 200).value) < std::abs(a));
  }

  TEST_CASE("eta tail estimate bounds the truncation error") {
    const UpperHalfPoint tau(0.3, 0.4);
    const cd exact = eta_direct(tau.z());
    for (int terms : {5, 10, 20, 40}) {
      const auto r = eta_eval(tau, terms);
      CHECK(std::abs(r.value - exact) <= r.tail_estimate + 1e-15);
    }
  }

  TEST_CASE("eta law holds for the classical multiplier") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(-6, 6);
    int tested = 0;
    while (tested < 5) {
      const int a = pick(rng), b = pick(rng), c = std::abs(pick(rng)), d = pick(rng);
      if (c == 0 || a * d - b * c != 1) continue;
      const IntMatrix m = IntMatrix::of(a, b, c, d);
      // keep both points comfortably inside the half plane
      const UpperHalfPoint tau(-static_cast<double>(d) / c, 1.0 / c);
      const auto w = check_weight_law(eta_fn(), m, 0.5, eta_multiplier_matrix(m), tau);
      CHECK(w.residual < 1e-8);
      ++tested;
    }
  }

  TEST_CASE("kappa panel accepts exactly the classical constant") {
    const std::vector<BigRational> cands{BigRational(1, 2), BigRational(1, 4)};
    const auto panel = select_kappa(cands, default_kappa_panel(), UpperHalfPoint(1.0 / 3, 0.6));
    REQUIRE(panel.selected);
    CHECK(*panel.selected == BigRational(1, 4));
    CHECK(panel.accepted.size() == 1);
    CHECK(panel.rows.size() == cands.size() * default_kappa_panel().size());
  }

  TEST_CASE("Eisenstein sums are periodic and covariant under S") {
    for (int k : {4, 6, 8}) {
      const UpperHalfPoint tau(0.1, 1.3);
      const auto g = eisenstein_eval(k, tau, 80);
      const auto t = eisenstein_eval(k, UpperHalfPoint(1.1, 1.3), 80);
      CHECK(std::abs(g.value - t.value) <= g.tail_estimate + t.tail_estimate);
      const auto w = check_weight_law([k](const UpperHalfPoint& p) { return eisenstein_eval(k, p, 80); },
                                      IntMatrix::of(0, -1, 1, 0), k, 1.0, UpperHalfPoint(0, 2));
      CHECK(w.residual <= w.combined_tail);
    }
    // G_6 vanishes at i by symmetry
    const auto g6 = eisenstein_eval(6, UpperHalfPoint(0, 1), 60);
    CHECK(std::abs(g6.value) <= g6.tail_estimate);
    CHECK(std::abs(g6.value) < 1e-12);
    // G_4(i) against the closed form Gamma(1/4)^8 / (960 pi^2)
    const double g4 = std::pow(std::tgamma(0.25), 8) / (960 * kPi * kPi);
    const auto e4 = eisenstein_eval(4, UpperHalfPoint(0, 1), 300);
    CHECK(std::abs(e4.value - cd(g4, 0)) <= e4.tail_estimate);
  }

  TEST_CASE("lift_phi is constant along the rotation subgroup for eta weight 1/2") {
    const MultiplierMap trivial = [](const RealMatrix&) { return cd(1, 0); };
    const auto f = eta_fn();
    const auto base = lift_phi(f, 0.5, trivial, {1, 0, 0, 1});
    // translations act through the multiplier only
    const RealMatrix tr{1, 0.5, 0, 1};
    const auto moved = lift_phi(f, 0.5, trivial, tr);
    CHECK(std::abs(moved - eta_eval(UpperHalfPoint(0.5, 1), 400).value) < 1e-12);
    CHECK(std::abs(base - eta_eval(UpperHalfPoint(0, 1), 400).value) < 1e-12);
  }

  TEST_CASE("doubling self-consistency of eta over a grid") {
    // eta(tau) eta(tau + 1/2) = e^{pi i/24} eta(2 tau)^3 / eta(4 tau)
    for (double im = 0.5; im <= 3.0; im += 0.25) {
      for (double re : {-0.3, 0.0, 0.45}) {
        const UpperHalfPoint t(re, im);
        const cd lhs = eta_eval(t, 400).value * eta_eval(UpperHalfPoint(re + 0.5, im), 400).value;
        const cd e2 = eta_eval(UpperHalfPoint(2 * re, 2 * im), 400).value;
        const cd e4 = eta_eval(UpperHalfPoint(4 * re, 4 * im), 400).value;
        const cd rhs = std::polar(1.0, kPi / 24) * e2 * e2 * e2 / e4;
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
      }
    }
  }

  TEST_CASE("J_Gamma0(2) is invariant under ((1,0),(2,1))") {
    const auto corpus = load_corpus(G0WB_TEST_DATA_DIR);
    const PuiseuxSeries& h = find_entry(corpus, "J_Gamma0(2)").series;
    const IntMatrix a = IntMatrix::of(1, 0, 2, 1);
    SUBCASE("forty coefficients at a point away from the cusp") {
      const PuiseuxSeries h40 = h.truncated(40);
      const UpperHalfPoint tau(-0.25, 0.5);
      const auto x = eval_series(h40, tau);
      const auto y = eval_series(h40, mobius(a, tau));
      CHECK(std::abs(x.value - y.value) < 1e-6);
    }
    SUBCASE("the full bundled depth at tau = i") {
      const UpperHalfPoint tau(0, 1);
      const auto x = eval_series(h, tau);
      const auto y = eval_series(h, mobius(a, tau));
      CHECK(std::abs(x.value - y.value) < 1e-6);
      MESSAGE("residual at i: " << std::abs(x.value - y.value) << ", tail " << y.tail_estimate);
    }
  }

  TEST_CASE("doubling the work stays within the reported tail") {
    const PuiseuxSeries j60 = j_series(60);
    const PuiseuxSeries j30 = j60.truncated(30);
    for (double im = 0.5; im <= 3.0; im += 0.25) {
      for (double re : {-0.5, -0.1, 0.0, 0.3}) {
        const UpperHalfPoint t(re, im);
        const auto e1 = eta_eval(t, 6);
        const auto e2 = eta_eval(t, 12);
        CHECK(std::abs(e1.value - e2.value) <= e1.tail_estimate);
        const auto s1 = eval_series(j30, t);
        const auto s2 = eval_series(j60, t);
        CHECK(std::abs(s1.value - s2.value) <= s1.tail_estimate);
        for (int k : {4, 6}) {
          const auto g1 = eisenstein_eval(k, t, 20);
          const auto g2 = eisenstein_eval(k, t, 40);
          CHECK(std::abs(g1.value - g2.value) <= g1.tail_estimate);
        }
      }
    }
  }

  TEST_CASE("eta matches the exactly expanded product") {
    // q^(1/24) prod_{n <= 50} (1 - q^n) as an exact series in q^(1/24)
    PuiseuxSeries prod = PuiseuxSeries::constant(CyclotomicNumber(1L));
    for (std::int64_t n = 1; n <= 50; ++n)
      prod = prod * PuiseuxSeries::laurent(0, kExactTrunc, {{0, BigRational(1)}, {n, BigRational(-1)}});
    PuiseuxSeries shift(1, 24, 1, kExactTrunc);
    shift.set(1, CyclotomicNumber(1L));
    const PuiseuxSeries eta = prod.with_denom(24) * shift;
    CHECK(eta.denom() == 24);
    for (const UpperHalfPoint t : {UpperHalfPoint(0, 1), UpperHalfPoint(1.0 / 3, 1)}) {
      const auto exact = eval_series(eta, t);
      CHECK(exact.tail_estimate == 0.0);
      CHECK(std::abs(exact.value - eta_eval(t, 400).value) < 1e-10);
    }
  }

  TEST_CASE("formatting") {
    CHECK(format_complex(cd(1.5, -2)) == "1.5-2i");
    CHECK(format_sci(0.000123) == "1.230e-04");
  }
}
