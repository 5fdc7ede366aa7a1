#include "g0wb/qseries.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>

namespace g0wb {

PuiseuxSeries::PuiseuxSeries(std::int64_t conductor, std::int64_t denom, std::int64_t lo, std::int64_t trunc)
    : conductor_(conductor), denom_(denom), lo_(lo), trunc_(trunc) {
  if (conductor < 1) throw PreconditionError("series conductor must be >= 1");
  if (denom < 1) throw PreconditionError("series denominator must be >= 1");
  if (lo > trunc) throw PreconditionError("series window requires lo <= trunc");
}

PuiseuxSeries PuiseuxSeries::laurent(std::int64_t lo, std::int64_t trunc,
                                     const std::vector<std::pair<std::int64_t, BigRational>>& terms) {
  PuiseuxSeries s(1, 1, lo, trunc);
  for (const auto& [n, c] : terms) s.set(n, CyclotomicNumber(s.coeff(n) + CyclotomicNumber(c)));
  return s;
}

PuiseuxSeries PuiseuxSeries::constant(const CyclotomicNumber& c) {
  PuiseuxSeries s(c.conductor(), 1, 0, kExactTrunc);
  s.set(0, c);
  return s;
}

PuiseuxSeries PuiseuxSeries::moonshine(const std::vector<BigRational>& a) {
  PuiseuxSeries s(1, 1, -1, static_cast<std::int64_t>(a.size()));
  s.set(-1, CyclotomicNumber(1L));
  for (std::size_t i = 0; i < a.size(); ++i) s.set(static_cast<std::int64_t>(i) + 1, CyclotomicNumber(a[i]));
  return s;
}

CyclotomicNumber PuiseuxSeries::coeff(std::int64_t n) const {
  if (n > trunc_) {
    throw InsufficientTruncation("coefficient at exponent " + std::to_string(n) + "/" + std::to_string(denom_) +
                                 " is beyond the truncation " + std::to_string(trunc_));
  }
  auto it = coeffs_.find(n);
  if (it == coeffs_.end()) return CyclotomicNumber(0L).promoted(conductor_);
  return it->second;
}

void PuiseuxSeries::set(std::int64_t n, const CyclotomicNumber& c) {
  if (n < lo_ || n > trunc_) throw PreconditionError("exponent outside the series window");
  if (c.is_zero()) {
    coeffs_.erase(n);
    return;
  }
  if (conductor_ % c.conductor() != 0) *this = with_conductor(lcm64(conductor_, c.conductor()));
  coeffs_.insert_or_assign(n, c.promoted(conductor_));
}

std::int64_t PuiseuxSeries::trunc_floor() const {
  std::int64_t q = trunc_ / denom_;
  if (trunc_ % denom_ != 0 && trunc_ < 0) --q;
  return q;
}

bool PuiseuxSeries::is_moonshine_shape() const {
  if (denom_ != 1 || lo_ != -1 || trunc_ < 0) return false;
  auto it = coeffs_.find(-1);
  if (it == coeffs_.end() || !it->second.is_one()) return false;
  return !coeffs_.contains(0);
}

bool PuiseuxSeries::has_integral_exponents() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const auto& kv) { return kv.first % denom_ == 0; });
}

void PuiseuxSeries::tighten_lo() {
  lo_ = coeffs_.empty() ? trunc_ : std::min(coeffs_.begin()->first, trunc_);
}

PuiseuxSeries PuiseuxSeries::with_denom(std::int64_t d) const {
  if (d == denom_) return *this;
  if (d % denom_ != 0) throw PreconditionError("denominator promotion must be to a multiple");
  const std::int64_t f = d / denom_;
  PuiseuxSeries r(conductor_, d, lo_ * f, trunc_ * f);
  for (const auto& [n, c] : coeffs_) r.coeffs_.emplace(n * f, c);
  return r;
}

PuiseuxSeries PuiseuxSeries::with_conductor(std::int64_t n) const {
  if (n == conductor_) return *this;
  PuiseuxSeries r(n, denom_, lo_, trunc_);
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, c.promoted(n));
  return r;
}

PuiseuxSeries PuiseuxSeries::reduced_denom() const {
  std::int64_t g = denom_;
  for (const auto& kv : coeffs_) g = gcd64(g, kv.first);
  if (g == 1) return *this;
  // ceil for the support bound, floor for the known window
  const std::int64_t lo = lo_ >= 0 ? (lo_ + g - 1) / g : -((-lo_) / g);
  const std::int64_t tr = trunc_ >= 0 ? trunc_ / g : -((-trunc_ + g - 1) / g);
  PuiseuxSeries r(conductor_, denom_ / g, std::min(lo, tr), tr);
  for (const auto& [n, c] : coeffs_)
    if (n / g <= tr) r.coeffs_.emplace(n / g, c);
  return r;
}

std::optional<PuiseuxSeries> PuiseuxSeries::restricted_conductor(std::int64_t n) const {
  PuiseuxSeries r(n, denom_, lo_, trunc_);
  for (const auto& [e, c] : coeffs_) {
    auto rc = c.restricted(n);
    if (!rc) return std::nullopt;
    r.coeffs_.emplace(e, std::move(*rc));
  }
  return r;
}

PuiseuxSeries PuiseuxSeries::truncated(std::int64_t t) const {
  if (t > trunc_) throw InsufficientTruncation("cannot extend a truncation by truncating");
  PuiseuxSeries r(conductor_, denom_, std::min(lo_, t), t);
  for (const auto& [n, c] : coeffs_) {
    if (n > t) break;
    r.coeffs_.emplace(n, c);
  }
  return r;
}

PuiseuxSeries PuiseuxSeries::galois(std::int64_t m) const {
  PuiseuxSeries r = *this;
  for (auto& kv : r.coeffs_) kv.second = kv.second.galois(m);
  return r;
}

PuiseuxSeries PuiseuxSeries::scaled(const CyclotomicNumber& c) const {
  const std::int64_t n = lcm64(conductor_, c.conductor());
  PuiseuxSeries r(n, denom_, lo_, trunc_);
  if (c.is_zero()) {
    r.tighten_lo();
    return r;
  }
  const CyclotomicNumber cc = c.promoted(n);
  for (const auto& [e, v] : coeffs_) r.coeffs_.emplace(e, v.promoted(n) * cc);
  return r;
}

PuiseuxSeries PuiseuxSeries::pow(unsigned e) const {
  if (e == 0) return constant(CyclotomicNumber(1L).promoted(conductor_));
  PuiseuxSeries result = *this;
  for (unsigned i = 1; i < e; ++i) result = result * *this;
  return result;
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries r = *this;
  for (auto& kv : r.coeffs_) kv.second = -kv.second;
  return r;
}

namespace {

std::pair<PuiseuxSeries, PuiseuxSeries> common(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  const std::int64_t d = lcm64(a.denom(), b.denom());
  const std::int64_t n = lcm64(a.conductor(), b.conductor());
  return {a.with_denom(d).with_conductor(n), b.with_denom(d).with_conductor(n)};
}

PuiseuxSeries add_impl(const PuiseuxSeries& a0, const PuiseuxSeries& b0, bool subtract) {
  auto [a, b] = common(a0, b0);
  const std::int64_t tr = std::min(a.trunc(), b.trunc());
  PuiseuxSeries r(a.conductor(), a.denom(), std::min({a.lo(), b.lo(), tr}), tr);
  std::map<std::int64_t, CyclotomicNumber> acc;
  for (const auto& [n, c] : a.terms()) {
    if (n > tr) break;
    acc.emplace(n, c);
  }
  for (const auto& [n, c] : b.terms()) {
    if (n > tr) break;
    auto it = acc.find(n);
    if (it == acc.end()) {
      acc.emplace(n, subtract ? -c : c);
    } else if (subtract) {
      it->second -= c;
    } else {
      it->second += c;
    }
  }
  for (const auto& [n, c] : acc)
    if (!c.is_zero()) r.set(n, c);
  return r;
}

}  // namespace

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  PuiseuxSeries r = add_impl(a, b, false);
  r.tighten_lo();
  return r;
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  PuiseuxSeries r = add_impl(a, b, true);
  r.tighten_lo();
  return r;
}

PuiseuxSeries operator*(const PuiseuxSeries& a0, const PuiseuxSeries& b0) {
  auto [a, b] = common(a0, b0);
  const std::int64_t lo = a.lo() + b.lo();
  std::int64_t tr = std::min(a.trunc() + b.lo(), b.trunc() + a.lo());
  // a product of exactly known series is exactly known
  if (a.trunc() >= kExactTrunc && b.trunc() >= kExactTrunc) tr = std::max(tr, kExactTrunc);
  PuiseuxSeries r(a.conductor(), a.denom(), std::min(lo, tr), tr);
  if (a.terms().empty() || b.terms().empty()) {
    r.tighten_lo();
    return r;
  }
  std::vector<std::pair<std::int64_t, const CyclotomicNumber*>> bt;
  bt.reserve(b.terms().size());
  for (const auto& [n, c] : b.terms()) bt.emplace_back(n, &c);
  // accumulate over the possible support only, which matters for exact windows
  const std::int64_t base = a.terms().begin()->first + bt.front().first;
  const std::int64_t top = std::min(tr, a.terms().rbegin()->first + bt.back().first);
  const std::size_t width = top < base ? 0 : static_cast<std::size_t>(top - base + 1);

  if (a.conductor() == 1) {
    // rational fast path
    std::vector<BigRational> acc(width, BigRational(0));
    std::vector<bool> touched(width, false);
    BigRational tmp;
    for (const auto& [i, ca] : a.terms()) {
      if (i + bt.front().first > tr) break;
      const BigRational& x = ca.rational_part();
      for (const auto& [j, cb] : bt) {
        if (i + j > tr) break;
        const std::size_t idx = static_cast<std::size_t>(i + j - base);
        mpq_mul(tmp.get_mpq_t(), x.get_mpq_t(), cb->rational_part().get_mpq_t());
        acc[idx] += tmp;
        touched[idx] = true;
      }
    }
    for (std::size_t k = 0; k < width; ++k)
      if (touched[k] && acc[k] != 0) r.set(base + static_cast<std::int64_t>(k), CyclotomicNumber(acc[k]));
  } else {
    std::vector<std::optional<CyclotomicNumber>> acc(width);
    for (const auto& [i, ca] : a.terms()) {
      if (i + bt.front().first > tr) break;
      for (const auto& [j, cb] : bt) {
        if (i + j > tr) break;
        auto& slot = acc[static_cast<std::size_t>(i + j - base)];
        if (slot) {
          *slot += ca * *cb;
        } else {
          slot = ca * *cb;
        }
      }
    }
    for (std::size_t k = 0; k < width; ++k)
      if (acc[k] && !acc[k]->is_zero()) r.set(base + static_cast<std::int64_t>(k), *acc[k]);
  }
  r.tighten_lo();
  return r;
}

bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  return a.conductor_ == b.conductor_ && a.denom_ == b.denom_ && a.lo_ == b.lo_ && a.trunc_ == b.trunc_ &&
         a.coeffs_ == b.coeffs_;
}

PuiseuxSeries series_arith(const PuiseuxSeries& a, const PuiseuxSeries& b, SeriesOp op) {
  switch (op) {
    case SeriesOp::add:
      return a + b;
    case SeriesOp::sub:
      return a - b;
    case SeriesOp::mul:
      return a * b;
  }
  throw PreconditionError("unknown series operation");
}

PuiseuxSeries substitute_coset(const PuiseuxSeries& h, std::int64_t m, std::int64_t d, std::int64_t k) {
  if (h.denom() != 1) throw NonIntegralInput("coset substitution needs integral exponents");
  if (m < 1 || d < 1 || m % d != 0) throw PreconditionError("coset substitution needs d | m");
  if (k < 0 || k >= d) throw PreconditionError("coset substitution needs 0 <= k < d");
  const std::int64_t g = gcd64(d * d, m);
  const std::int64_t denom = d * d / g;
  const std::int64_t stretch = m / g;
  const std::int64_t cond = lcm64(h.conductor(), d);
  PuiseuxSeries r(cond, denom, h.lo() * stretch, h.trunc() * stretch);
  for (const auto& [n, c] : h.terms()) {
    CyclotomicNumber v = c.promoted(cond);
    if (d > 1 && mod_floor(k * n, d) != 0) v = v * CyclotomicNumber::root_of_unity(d, k * n);
    r.set(n * stretch, v);
  }
  return r;
}

SeriesComparison compare_to_order(const PuiseuxSeries& a0, const PuiseuxSeries& b0, std::int64_t bound) {
  auto [a, b] = [&] {
    const std::int64_t d = lcm64(a0.denom(), b0.denom());
    return std::pair{a0.with_denom(d), b0.with_denom(d)};
  }();
  const std::int64_t limit = bound * a.denom();
  if (a.trunc() < limit || b.trunc() < limit) {
    throw InsufficientTruncation("series not determined to q^" + std::to_string(bound), bound);
  }
  std::vector<std::int64_t> exps;
  for (const auto& kv : a.terms()) exps.push_back(kv.first);
  for (const auto& kv : b.terms()) exps.push_back(kv.first);
  std::sort(exps.begin(), exps.end());
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  SeriesComparison out;
  for (std::int64_t n : exps) {
    if (n > limit) break;
    CyclotomicNumber x = n < a.lo() ? CyclotomicNumber() : a.coeff(n);
    CyclotomicNumber y = n < b.lo() ? CyclotomicNumber() : b.coeff(n);
    if (!(x == y)) {
      const std::int64_t g = gcd64(n, a.denom());
      out.equal = false;
      out.exponent_num = n / g;
      out.exponent_den = a.denom() / g;
      out.lhs = std::move(x);
      out.rhs = std::move(y);
      return out;
    }
  }
  return out;
}

std::string emit_qexp(const std::string& label, const PuiseuxSeries& s) {
  std::ostringstream out;
  out << "# qexp v1\n";
  out << "label: " << label << '\n';
  out << "conductor: " << s.conductor() << '\n';
  out << "denom: " << s.denom() << '\n';
  out << "lo: " << s.lo() << '\n';
  out << "trunc: " << s.trunc() << '\n';
  for (const auto& [n, c] : s.terms()) out << n << ' ' << c.to_literal() << '\n';
  return out.str();
}

namespace {

std::int64_t parse_int(std::string_view text, std::size_t line) {
  std::int64_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("expected an integer, got '" + std::string(text) + "'", line);
  }
  return v;
}

std::string expect_field(const std::string& text, std::string_view key, std::size_t line) {
  const std::string prefix = std::string(key) + ": ";
  if (text.rfind(prefix, 0) != 0) throw ParseError("expected '" + prefix + "'", line);
  return text.substr(prefix.size());
}

}  // namespace

LabeledSeries parse_qexp(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') throw ParseError("CR line endings are not allowed", lines.size() + 1);
    lines.push_back(line);
  }
  if (lines.size() < 6) throw ParseError("truncated header", lines.size() + 1);
  if (lines[0] != "# qexp v1") throw ParseError("missing '# qexp v1' header", 1);
  std::string label = expect_field(lines[1], "label", 2);
  if (label.empty()) throw ParseError("empty label", 2);
  const std::int64_t conductor = parse_int(expect_field(lines[2], "conductor", 3), 3);
  const std::int64_t denom = parse_int(expect_field(lines[3], "denom", 4), 4);
  const std::int64_t lo = parse_int(expect_field(lines[4], "lo", 5), 5);
  const std::int64_t trunc = parse_int(expect_field(lines[5], "trunc", 6), 6);
  if (conductor < 1) throw ParseError("conductor must be >= 1", 3);
  if (denom < 1) throw ParseError("denom must be >= 1", 4);
  if (lo > trunc) throw ParseError("lo exceeds trunc", 6);

  PuiseuxSeries s(conductor, denom, lo, trunc);
  std::optional<std::int64_t> prev;
  for (std::size_t i = 6; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    const std::string& l = lines[i];
    const auto sp = l.find(' ');
    if (sp == std::string::npos) throw ParseError("expected '<exponent> <coefficient>'", ln);
    const std::int64_t n = parse_int(std::string_view(l).substr(0, sp), ln);
    if (prev && n == *prev) throw ParseError("duplicate exponent " + std::to_string(n), ln);
    if (prev && n < *prev) throw ParseError("exponents must be sorted ascending", ln);
    if (n < lo || n > trunc) throw ParseError("exponent outside [lo, trunc]", ln);
    CyclotomicNumber c;
    try {
      c = CyclotomicNumber::parse(std::string_view(l).substr(sp + 1), conductor);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), ln);
    }
    if (c.is_zero()) throw ParseError("zero coefficients must be omitted", ln);
    s.set(n, c);
    prev = n;
  }
  LabeledSeries out{SeriesMeta{label, "", std::nullopt}, std::move(s)};
  return out;
}

LabeledSeries parse_qexp_string(const std::string& text) {
  std::istringstream in(text);
  return parse_qexp(in);
}

}  // namespace g0wb
