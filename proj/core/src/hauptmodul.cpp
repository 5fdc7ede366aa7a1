#include "g0wb/hauptmodul.hpp"

#include <algorithm>

namespace g0wb {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::fiction:
      return "fiction";
    case Verdict::hauptmodul_candidate:
      return "hauptmodul-candidate";
    case Verdict::inconsistent:
      return "inconsistent";
    case Verdict::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

std::optional<CyclotomicNumber> detect_fiction(const PuiseuxSeries& h) {
  if (!h.is_moonshine_shape()) throw PreconditionError("fiction detection needs the shape q^-1 + O(q)");
  if (h.trunc() < 2) throw InsufficientTruncation("fiction detection needs the series to q^2", 2);
  for (const auto& [n, c] : h.terms())
    if (n != -1 && n != 1) return std::nullopt;
  return h.coeff(1);
}

bool is_24th_root_of_unity(const CyclotomicNumber& xi) { return !xi.is_zero() && xi.pow(24).is_one(); }

namespace {

VerificationReport run_order(const PuiseuxSeries& h, std::int64_t m, const ModEqOptions& opts) {
  VerificationReport rep;
  rep.order = m;
  try {
    const ModularPolynomial f = build_modular_polynomial(h, m, opts);
    return verify_modular_equation(h, f, m, opts);
  } catch (const InsufficientTruncation& e) {
    rep.status = VerificationStatus::insufficient_data;
    rep.required_trunc = e.required();
    rep.verified_to = -1;
    rep.notes = e.what();
  } catch (const LocatedFailure& e) {
    rep.status = VerificationStatus::inconsistent;
    const std::int64_t cond = opts.conductor.value_or(h.conductor());
    BigRational ex(e.exponent_num(), e.exponent_den());
    ex.canonicalize();
    CyclotomicNumber actual;
    try {
      actual = CyclotomicNumber::parse(e.actual(), lcm64(cond, std::max<std::int64_t>(m, 1)));
    } catch (const Error&) {
      actual = CyclotomicNumber();
    }
    rep.first_failure = VerificationFailure{ex, CyclotomicNumber(), actual, 0};
    BigInt fl;
    mpz_cdiv_q(fl.get_mpz_t(), ex.get_num_mpz_t(), ex.get_den_mpz_t());
    rep.verified_to = fl.get_si() - 1;
    rep.notes = e.what();
  }
  return rep;
}

}  // namespace

Classification classify(const PuiseuxSeries& h, const std::vector<std::int64_t>& orders, const ModEqOptions& opts) {
  if (!h.is_moonshine_shape()) throw PreconditionError("classification needs the shape q^-1 + O(q)");
  Classification out;
  if (h.trunc() >= 2) {
    if (auto xi = detect_fiction(h)) {
      if (xi->is_zero() || is_24th_root_of_unity(*xi)) {
        out.verdict = Verdict::fiction;
        out.fiction_xi = *xi;
        out.notes = "q^-1 + xi q with xi = " + xi->to_literal() + (xi->is_zero() ? "" : ", a root of unity");
        return out;
      }
      out.notes = "shape q^-1 + xi q with xi = " + xi->to_literal() + " not a root of unity; testing orders";
    }
  }

  std::vector<std::int64_t> sorted = orders;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  bool any_bad = false;
  bool any_short = false;
  for (std::int64_t m : sorted) {
    if (m < 2) throw PreconditionError("orders must be > 1");
    const std::int64_t n = opts.conductor.value_or(h.conductor());
    if (opts.generalised && gcd64(m, n) != 1) {
      if (!out.notes.empty()) out.notes += "; ";
      out.notes += "order " + std::to_string(m) + " skipped: not coprime to the conductor";
      continue;
    }
    VerificationReport rep = run_order(h, m, opts);
    any_bad = any_bad || rep.status == VerificationStatus::inconsistent;
    any_short = any_short || rep.status == VerificationStatus::insufficient_data;
    out.orders_tested.emplace_back(m, std::move(rep));
  }
  if (any_bad) {
    out.verdict = Verdict::inconsistent;
  } else if (any_short || out.orders_tested.empty()) {
    out.verdict = Verdict::undetermined;
  } else {
    out.verdict = Verdict::hauptmodul_candidate;
  }
  return out;
}

PuiseuxSeries bootstrap_extend(const PuiseuxSeries& h_prefix, const ModularPolynomial& f, std::int64_t m,
                               std::int64_t target, const ModEqOptions& opts) {
  if (!h_prefix.is_moonshine_shape()) throw InsufficientSeed("seed must have the shape q^-1 + sum_{n>=1} a_n q^n");
  if (m < 2) throw PreconditionError("order must be > 1");
  if (!symmetry_check(f, opts)) throw PreconditionError("modular polynomial fails its symmetry check");
  const std::int64_t cond = lcm64(opts.conductor.value_or(h_prefix.conductor()), f.conductor());
  if (opts.generalised && gcd64(m, cond) != 1) throw NotCoprime(m, cond);

  PuiseuxSeries h = h_prefix.with_conductor(cond);
  auto residual = [&](const PuiseuxSeries& s) {
    const PuiseuxSeries x = opts.generalised ? s.galois(m) : s;
    return evaluate(f, x, substitute_coset(s, m, 1, 0));
  };
  auto extended = [&](std::int64_t n, const CyclotomicNumber& a) {
    PuiseuxSeries s(cond, 1, -1, n);
    for (const auto& [e, c] : h.terms()) s.set(e, c);
    s.set(n, a);
    return s;
  };

  for (std::int64_t n = h.trunc() + 1; n <= target; ++n) {
    const PuiseuxSeries e0 = residual(extended(n, CyclotomicNumber(0L)));
    const PuiseuxSeries e1 = residual(extended(n, CyclotomicNumber(1L)));
    const PuiseuxSeries e2 = residual(extended(n, CyclotomicNumber(2L)));
    const PuiseuxSeries d1 = e1 - e0;
    if (d1.terms().empty()) {
      throw BootstrapStalled("coefficient of q^" + std::to_string(n) + " does not enter the determined range");
    }
    const auto& [en, lin] = *d1.terms().begin();
    const PuiseuxSeries d2 = e2 - e1 - d1;
    if (d2.lo() <= en && !d2.coeff(en).is_zero()) {
      throw BootstrapStalled("coefficient of q^" + std::to_string(n) + " enters non-linearly at q^" +
                             std::to_string(en));
    }
    for (const auto& [e, c] : e0.terms()) {
      if (e >= en) break;
      throw InconsistentSeries("series violates the modular equation at q^" + std::to_string(e) + " (residual " +
                               c.to_literal() + ") while solving for q^" + std::to_string(n));
    }
    const CyclotomicNumber a = -(e0.lo() <= en ? e0.coeff(en) : CyclotomicNumber()) / lin;
    h = extended(n, a);
  }

  const VerificationReport rep = verify_modular_equation(h, f, m, opts);
  if (rep.status == VerificationStatus::inconsistent) {
    throw InconsistentSeries("extended series fails verification at q^" + format_rational(rep.first_failure->exponent));
  }
  return target < h.trunc() ? h.truncated(target) : h;
}

bool check_replication(const PuiseuxSeries& a, const PuiseuxSeries& b, std::int64_t k) {
  if (k < 1) throw PreconditionError("replication index must be >= 1");
  if (!a.determined_to(4 * k + 2)) {
    throw InsufficientTruncation("first series must be determined to q^" + std::to_string(4 * k + 2), 4 * k + 2);
  }
  if (!b.determined_to(2 * k + 2)) {
    throw InsufficientTruncation("second series must be determined to q^" + std::to_string(2 * k + 2), 2 * k + 2);
  }
  auto c = [](const PuiseuxSeries& s, std::int64_t e) {
    return e * s.denom() < s.lo() ? CyclotomicNumber() : s.coeff_at_integer(e);
  };
  CyclotomicNumber rhs = c(b, 2 * k + 2);
  for (std::int64_t j = 1; j <= k; ++j) rhs += c(b, j) * c(b, 2 * k + 1 - j);
  return c(a, 4 * k + 2) == rhs;
}

Flavor parse_flavor(const std::string& s) {
  if (s == "full") return Flavor::full;
  if (s == "gamma0") return Flavor::gamma0;
  if (s == "gamma1") return Flavor::gamma1;
  throw PreconditionError("unknown flavor '" + s + "' (full, gamma0, gamma1)");
}

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::full:
      return "full";
    case Flavor::gamma0:
      return "gamma0";
    case Flavor::gamma1:
      return "gamma1";
  }
  return "full";
}

bool congruence_membership(const IntMatrix& a, std::int64_t level, Flavor flavor) {
  if (!a.is_unimodular()) throw NotUnimodular();
  if (level < 1) throw PreconditionError("level must be >= 1");
  const BigInt n(level);
  auto divides = [&](const BigInt& x) { return mpz_divisible_p(x.get_mpz_t(), n.get_mpz_t()) != 0; };
  const bool plus = divides(a.a - 1) && divides(a.d - 1);
  const bool minus = divides(a.a + 1) && divides(a.d + 1);
  switch (flavor) {
    case Flavor::full:
      return divides(a.b) && divides(a.c) && (plus || minus);
    case Flavor::gamma0:
      return divides(a.c);
    case Flavor::gamma1:
      return divides(a.c) && (plus || minus);
  }
  return false;
}

}  // namespace g0wb
