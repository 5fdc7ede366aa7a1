#include "g0wb/modeq.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>

namespace g0wb {

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::int64_t psi(std::int64_t m) {
  std::int64_t r = m;
  for (const auto& [p, e] : factorize(m)) r = r / p * (p + 1);
  return r;
}

CosetSet coset_set(std::int64_t m) {
  if (m < 2) throw PreconditionError("coset set needs m >= 2");
  CosetSet s{m, {}};
  for (std::int64_t d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    for (std::int64_t k = 0; k < d; ++k) {
      if (gcd64(gcd64(m / d, k), d) == 1) s.pairs.push_back({d, k});
    }
  }
  std::sort(s.pairs.begin(), s.pairs.end());
  return s;
}

// ---------------------------------------------------------------- polynomial

ModularPolynomial ModularPolynomial::from_terms(
    std::int64_t order, std::int64_t conductor,
    const std::vector<std::tuple<std::int64_t, std::int64_t, BigRational>>& terms) {
  ModularPolynomial f(order, conductor);
  for (const auto& [i, j, c] : terms) f.set(i, j, f.coeff(i, j) + CyclotomicNumber(c));
  return f;
}

std::int64_t ModularPolynomial::degx() const {
  std::int64_t d = 0;
  for (const auto& kv : coeffs_) d = std::max(d, kv.first.first);
  return d;
}

std::int64_t ModularPolynomial::degy() const {
  std::int64_t d = 0;
  for (const auto& kv : coeffs_) d = std::max(d, kv.first.second);
  return d;
}

CyclotomicNumber ModularPolynomial::coeff(std::int64_t i, std::int64_t j) const {
  auto it = coeffs_.find({i, j});
  return it == coeffs_.end() ? CyclotomicNumber(0L).promoted(conductor_) : it->second;
}

void ModularPolynomial::set(std::int64_t i, std::int64_t j, const CyclotomicNumber& c) {
  if (i < 0 || j < 0) throw PreconditionError("negative monomial exponent");
  if (c.is_zero()) {
    coeffs_.erase({i, j});
    return;
  }
  if (conductor_ % c.conductor() != 0) {
    conductor_ = lcm64(conductor_, c.conductor());
    for (auto& kv : coeffs_) kv.second = kv.second.promoted(conductor_);
  }
  coeffs_.insert_or_assign({i, j}, c.promoted(conductor_));
}

ModularPolynomial ModularPolynomial::scaled(const CyclotomicNumber& c) const {
  ModularPolynomial r(order_, conductor_);
  for (const auto& [k, v] : coeffs_) r.set(k.first, k.second, v * c);
  return r;
}

ModularPolynomial ModularPolynomial::monic() const {
  return psi(order_) % 2 == 0 ? *this : scaled(CyclotomicNumber(-1L));
}

ModularPolynomial ModularPolynomial::swapped() const {
  ModularPolynomial r(order_, conductor_);
  for (const auto& [k, v] : coeffs_) r.set(k.second, k.first, v);
  return r;
}

ModularPolynomial ModularPolynomial::galois(std::int64_t m) const {
  ModularPolynomial r(order_, conductor_);
  for (const auto& [k, v] : coeffs_) r.set(k.first, k.second, v.galois(m));
  return r;
}

ModularPolynomial operator+(const ModularPolynomial& a, const ModularPolynomial& b) {
  ModularPolynomial r = a;
  for (const auto& [k, v] : b.coeffs_) r.set(k.first, k.second, r.coeff(k.first, k.second) + v);
  return r;
}

ModularPolynomial operator*(const ModularPolynomial& a, const ModularPolynomial& b) {
  ModularPolynomial r(a.order_, lcm64(a.conductor_, b.conductor_));
  for (const auto& [ka, va] : a.coeffs_) {
    for (const auto& [kb, vb] : b.coeffs_) {
      const std::int64_t i = ka.first + kb.first;
      const std::int64_t j = ka.second + kb.second;
      r.set(i, j, r.coeff(i, j) + va * vb);
    }
  }
  return r;
}

bool operator==(const ModularPolynomial& a, const ModularPolynomial& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  auto it = b.coeffs_.begin();
  for (const auto& [k, v] : a.coeffs_) {
    if (it->first != k || !(it->second == v)) return false;
    ++it;
  }
  return true;
}

std::string ModularPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto [i, j] = it->first;
    std::string c = it->second.to_literal();
    const bool simple = it->second.is_rational();
    std::string mono;
    if (i > 0) mono += i == 1 ? "x" : "x^" + std::to_string(i);
    if (j > 0) mono += std::string(mono.empty() ? "" : "*") + (j == 1 ? "y" : "y^" + std::to_string(j));
    std::string term;
    if (simple) {
      const bool neg = c[0] == '-';
      std::string mag = neg ? c.substr(1) : c;
      term = neg ? "-" : (out.empty() ? "" : "+");
      if (mono.empty()) {
        term += mag;
      } else {
        term += (mag == "1" ? "" : mag + "*") + mono;
      }
    } else {
      term = (out.empty() ? "" : "+") + std::string("(") + c + ")" + (mono.empty() ? "" : "*" + mono);
    }
    out += term;
  }
  return out;
}

std::string to_string(VerificationStatus s) {
  switch (s) {
    case VerificationStatus::consistent:
      return "consistent";
    case VerificationStatus::inconsistent:
      return "inconsistent";
    case VerificationStatus::insufficient_data:
      return "insufficient-data";
  }
  return "unknown";
}

// ----------------------------------------------------------------- operations

PuiseuxSeries average_sum(const PuiseuxSeries& f, std::int64_t p) {
  if (!is_prime(p)) throw PreconditionError("average_sum needs a prime p");
  if (f.denom() != 1) throw NonIntegralInput("average_sum needs integral exponents");
  PuiseuxSeries s = substitute_coset(f, p, 1, 0);
  for (std::int64_t k = 0; k < p; ++k) s = s + substitute_coset(f, p, p, k);
  s = s.reduced_denom();
  if (s.denom() != 1) throw NotInvariant("fractional exponents survive averaging", 0, 1, "");
  auto r = s.restricted_conductor(f.conductor());
  if (!r) throw NotInvariant("averaged coefficients leave the base field", 0, 1, "");
  return *r;
}

std::int64_t required_truncation(std::int64_t m) {
  // psi(m) * max_{d|m} d^2 / m + psi(m) + 8 guard coefficients; max d = m.
  return psi(m) * m + psi(m) + 8;
}

std::vector<PuiseuxSeries> coset_product_coefficients(const PuiseuxSeries& h, std::int64_t m) {
  const CosetSet cs = coset_set(m);
  // poly[j] is the coefficient of Y^j.
  std::vector<PuiseuxSeries> poly{PuiseuxSeries::constant(CyclotomicNumber(1L))};
  for (const auto& [d, k] : cs.pairs) {
    const PuiseuxSeries root = substitute_coset(h, m, d, k);
    std::vector<PuiseuxSeries> next;
    next.reserve(poly.size() + 1);
    for (std::size_t j = 0; j <= poly.size(); ++j) {
      std::optional<PuiseuxSeries> term;
      if (j < poly.size()) term = root * poly[j];
      if (j > 0) term = term ? *term - poly[j - 1] : -poly[j - 1];
      next.push_back(std::move(*term));
    }
    poly = std::move(next);
  }
  return poly;
}

std::vector<CyclotomicNumber> express_in_generator(const PuiseuxSeries& f0, const PuiseuxSeries& h) {
  if (!h.is_moonshine_shape()) throw PreconditionError("generator must have the shape q^-1 + O(q)");
  PuiseuxSeries f = f0.reduced_denom();
  if (f.denom() != 1) throw NonIntegralInput("series to express has fractional exponents");

  std::vector<PuiseuxSeries> powers{PuiseuxSeries::constant(CyclotomicNumber(1L)), h};
  std::vector<CyclotomicNumber> poly;
  PuiseuxSeries residual = f;
  while (!residual.terms().empty() && residual.terms().begin()->first < 0) {
    const auto [n, c] = *residual.terms().begin();
    const auto j = static_cast<std::size_t>(-n);
    while (powers.size() <= j) powers.push_back(powers.back() * h);
    residual = residual - powers[j].scaled(c);
    if (poly.size() <= j) poly.resize(j + 1, CyclotomicNumber());
    poly[j] += c;
    if (residual.trunc() < 0) {
      throw InsufficientTruncation("generator powers are not determined to q^0",
                                   h.trunc() + static_cast<std::int64_t>(j) - 1 - residual.trunc());
    }
  }
  if (residual.trunc() < 0) throw InsufficientTruncation("series is not determined to q^0", 0);
  CyclotomicNumber c0 = residual.coeff(0);
  if (!c0.is_zero()) residual = residual - PuiseuxSeries::constant(c0);
  if (poly.empty()) poly.resize(1, CyclotomicNumber());
  poly[0] += c0;
  if (!residual.terms().empty()) {
    const auto& [n, c] = *residual.terms().begin();
    throw ExpressFailure("residual " + c.to_literal() + " q^" + std::to_string(n) + " is not a polynomial in h", n, 1,
                         c.to_literal());
  }
  while (poly.size() > 1 && poly.back().is_zero()) poly.pop_back();
  return poly;
}

namespace {

std::int64_t field_of(const PuiseuxSeries& h, std::int64_t m, const ModEqOptions& opts) {
  const std::int64_t n = opts.conductor.value_or(h.conductor());
  if (n < 1 || n % h.conductor() != 0) throw PreconditionError("series conductor must divide the field conductor");
  if (opts.generalised && gcd64(m, n) != 1) throw NotCoprime(m, n);
  return n;
}

PuiseuxSeries x_generator(const PuiseuxSeries& h, std::int64_t m, std::int64_t n, const ModEqOptions& opts) {
  PuiseuxSeries g = h.with_conductor(n);
  return opts.generalised ? g.galois(m) : g;
}

}  // namespace

ModularPolynomial build_modular_polynomial(const PuiseuxSeries& h, std::int64_t m, const ModEqOptions& opts) {
  if (m < 2) throw PreconditionError("order must be > 1");
  if (!h.is_moonshine_shape()) throw PreconditionError("series must have the shape q^-1 + sum_{n>=1} a_n q^n");
  const std::int64_t n = field_of(h, m, opts);
  const std::int64_t need = required_truncation(m);
  if (h.trunc() < need) {
    throw InsufficientTruncation("order " + std::to_string(m) + " needs the series to q^" + std::to_string(need) +
                                     ", have q^" + std::to_string(h.trunc()),
                                 need);
  }
  const PuiseuxSeries gen = x_generator(h, m, n, opts);
  const std::vector<PuiseuxSeries> ycoef = coset_product_coefficients(h, m);

  ModularPolynomial f(m, n);
  for (std::size_t j = 0; j < ycoef.size(); ++j) {
    PuiseuxSeries c = ycoef[j].reduced_denom();
    if (c.denom() != 1) {
      for (const auto& [e, v] : c.terms()) {
        if (e % c.denom() != 0) {
          const std::int64_t g = gcd64(e, c.denom());
          throw NotInvariant("coefficient of Y^" + std::to_string(j) + " keeps a fractional exponent", e / g,
                             c.denom() / g, v.to_literal());
        }
      }
    }
    auto in_field = c.restricted_conductor(n);
    if (!in_field) {
      for (const auto& [e, v] : c.terms()) {
        if (!v.restricted(n)) {
          throw NotInvariant("coefficient of Y^" + std::to_string(j) + " leaves Q[xi_" + std::to_string(n) + "]", e,
                             1, v.to_literal());
        }
      }
    }
    const std::vector<CyclotomicNumber> p = express_in_generator(*in_field, gen);
    for (std::size_t i = 0; i < p.size(); ++i)
      f.set(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), p[i]);
  }
  return f;
}

PuiseuxSeries evaluate(const ModularPolynomial& f, const PuiseuxSeries& x, const PuiseuxSeries& y) {
  const std::int64_t dx = f.degx();
  const std::int64_t dy = f.degy();
  std::vector<PuiseuxSeries> xp{PuiseuxSeries::constant(CyclotomicNumber(1L))};
  for (std::int64_t i = 1; i <= dx; ++i) xp.push_back(i == 1 ? x : xp.back() * x);
  std::vector<std::optional<PuiseuxSeries>> rows(static_cast<std::size_t>(dy) + 1);
  for (const auto& [key, c] : f.coeffs()) {
    PuiseuxSeries term = xp[static_cast<std::size_t>(key.first)].scaled(c);
    auto& row = rows[static_cast<std::size_t>(key.second)];
    row = row ? *row + term : term;
  }
  std::optional<PuiseuxSeries> acc;
  for (std::size_t j = rows.size(); j-- > 0;) {
    if (acc) acc = *acc * y;
    if (rows[j]) acc = acc ? *acc + *rows[j] : *rows[j];
  }
  return acc ? *acc : PuiseuxSeries::constant(CyclotomicNumber(0L));
}

VerificationReport verify_modular_equation(const PuiseuxSeries& h, const ModularPolynomial& f, std::int64_t m,
                                           const ModEqOptions& opts) {
  const std::int64_t need_deg = psi(m);
  if (f.degx() != need_deg || f.degy() != need_deg) {
    throw PreconditionError("polynomial degrees (" + std::to_string(f.degx()) + ", " + std::to_string(f.degy()) +
                            ") differ from psi(" + std::to_string(m) + ") = " + std::to_string(need_deg));
  }
  const std::int64_t n = field_of(h, m, opts);
  const PuiseuxSeries gen = x_generator(h, m, n, opts);
  const std::vector<PuiseuxSeries> ycoef = coset_product_coefficients(h, m);

  std::vector<PuiseuxSeries> xp{PuiseuxSeries::constant(CyclotomicNumber(1L))};
  for (std::int64_t i = 1; i <= f.degx(); ++i) xp.push_back(xp.back() * gen);

  VerificationReport rep;
  rep.order = m;
  std::optional<BigRational> min_range;
  for (std::size_t j = 0; j < ycoef.size(); ++j) {
    PuiseuxSeries lhs = PuiseuxSeries::constant(CyclotomicNumber(0L));
    for (const auto& [key, c] : f.coeffs())
      if (key.second == static_cast<std::int64_t>(j)) lhs = lhs + xp[static_cast<std::size_t>(key.first)].scaled(c);
    const PuiseuxSeries diff = lhs - ycoef[j];
    const BigRational range(diff.trunc(), diff.denom());
    if (!min_range || range < *min_range) min_range = range;
    if (!diff.terms().empty()) {
      const auto& [e, v] = *diff.terms().begin();
      const BigRational ex(e, diff.denom());
      if (!rep.first_failure || ex < rep.first_failure->exponent) {
        BigRational exr = ex;
        exr.canonicalize();
        const PuiseuxSeries& rhs = ycoef[j];
        const std::int64_t scale = diff.denom() / rhs.denom();
        CyclotomicNumber actual = (e % scale == 0 && e / scale >= rhs.lo()) ? rhs.coeff(e / scale) : CyclotomicNumber();
        rep.first_failure = VerificationFailure{exr, actual + v, actual, static_cast<std::int64_t>(j)};
      }
    }
  }
  BigRational r = *min_range;
  r.canonicalize();
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  rep.verified_to = fl.get_si();
  if (rep.first_failure) {
    rep.status = VerificationStatus::inconsistent;
    // agreement only holds strictly below the first mismatch
    const BigRational& ex = rep.first_failure->exponent;
    BigInt below;
    mpz_cdiv_q(below.get_mpz_t(), ex.get_num_mpz_t(), ex.get_den_mpz_t());
    rep.verified_to = std::min<std::int64_t>(rep.verified_to, below.get_si() - 1);
  } else if (rep.verified_to < 0) {
    rep.status = VerificationStatus::insufficient_data;
    rep.required_trunc = required_truncation(m);
  } else {
    rep.status = VerificationStatus::consistent;
  }
  return rep;
}

bool symmetry_check(const ModularPolynomial& f, const ModEqOptions& opts) {
  if (!opts.generalised) return f == f.swapped();
  const std::int64_t n = opts.conductor.value_or(f.conductor());
  if (gcd64(f.order(), n) != 1) throw NotCoprime(f.order(), n);
  ModularPolynomial g = f;
  if (n % g.conductor() == 0 && n != g.conductor()) {
    // promote the storage field so sigma_m acts on Q[xi_N]
    ModularPolynomial p(g.order(), n);
    for (const auto& [k, v] : g.coeffs()) p.set(k.first, k.second, v.promoted(n));
    g = p;
  }
  return g == g.galois(g.order()).swapped();
}

// ----------------------------------------------------------------- mpoly I/O

std::string emit_mpoly(const ModularPolynomial& f) {
  std::ostringstream out;
  out << "# mpoly v1\n";
  out << "order: " << f.order() << '\n';
  out << "conductor: " << f.conductor() << '\n';
  out << "degx: " << f.degx() << '\n';
  out << "degy: " << f.degy() << '\n';
  for (const auto& [k, v] : f.coeffs()) out << k.first << ' ' << k.second << ' ' << v.to_literal() << '\n';
  return out.str();
}

namespace {

std::int64_t parse_field_int(const std::string& line, std::string_view key, std::size_t ln) {
  const std::string prefix = std::string(key) + ": ";
  if (line.rfind(prefix, 0) != 0) throw ParseError("expected '" + prefix + "'", ln);
  std::string_view v(line);
  v.remove_prefix(prefix.size());
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) throw ParseError("expected an integer", ln);
  return out;
}

std::int64_t parse_plain_int(std::string_view v, std::size_t ln) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) throw ParseError("expected an integer", ln);
  return out;
}

}  // namespace

ModularPolynomial parse_mpoly(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') throw ParseError("CR line endings are not allowed", lines.size() + 1);
    lines.push_back(line);
  }
  if (lines.size() < 5) throw ParseError("truncated header", lines.size() + 1);
  if (lines[0] != "# mpoly v1") throw ParseError("missing '# mpoly v1' header", 1);
  const std::int64_t order = parse_field_int(lines[1], "order", 2);
  const std::int64_t conductor = parse_field_int(lines[2], "conductor", 3);
  const std::int64_t degx = parse_field_int(lines[3], "degx", 4);
  const std::int64_t degy = parse_field_int(lines[4], "degy", 5);
  if (order < 2) throw ParseError("order must be > 1", 2);
  if (conductor < 1) throw ParseError("conductor must be >= 1", 3);
  ModularPolynomial f(order, conductor);
  std::optional<ModularPolynomial::Key> prev;
  for (std::size_t i = 5; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    std::string_view l(lines[i]);
    const auto s1 = l.find(' ');
    const auto s2 = s1 == std::string_view::npos ? s1 : l.find(' ', s1 + 1);
    if (s2 == std::string_view::npos) throw ParseError("expected '<i> <j> <coefficient>'", ln);
    const ModularPolynomial::Key key{parse_plain_int(l.substr(0, s1), ln),
                                     parse_plain_int(l.substr(s1 + 1, s2 - s1 - 1), ln)};
    if (key.first < 0 || key.second < 0) throw ParseError("negative monomial exponent", ln);
    if (prev && key == *prev) throw ParseError("duplicate monomial", ln);
    if (prev && key < *prev) throw ParseError("monomials must be sorted by (i, j)", ln);
    CyclotomicNumber c;
    try {
      c = CyclotomicNumber::parse(l.substr(s2 + 1), conductor);
    } catch (const Error& e) {
      throw ParseError(e.what(), ln);
    }
    if (c.is_zero()) throw ParseError("zero coefficients must be omitted", ln);
    f.set(key.first, key.second, c);
    prev = key;
  }
  if (f.degx() != degx || f.degy() != degy) throw ParseError("declared degrees do not match the monomials", 4);
  return f;
}

ModularPolynomial parse_mpoly_string(const std::string& text) {
  std::istringstream in(text);
  return parse_mpoly(in);
}

}  // namespace g0wb
