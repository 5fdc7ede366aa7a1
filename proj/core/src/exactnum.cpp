#include "g0wb/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace g0wb {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return (a / gcd64(a, b)) * b;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials where the divisor is monic.
IntPoly div_monic(const IntPoly& num, const IntPoly& den) {
  IntPoly rem = num;
  const std::size_t dd = den.size() - 1;
  if (rem.size() < den.size()) return {BigInt(0)};
  IntPoly quot(rem.size() - dd, BigInt(0));
  for (std::size_t i = rem.size(); i-- > dd;) {
    BigInt c = rem[i];
    if (c == 0) continue;
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= c * den[j];
  }
  trim(quot);
  return quot;
}

// Per-conductor tables. powers[j] is xi^j on the reduced power basis.
struct Field {
  std::int64_t n = 1;
  std::size_t phi = 1;
  IntPoly poly;
  std::vector<std::vector<BigInt>> powers;
};

const Field& field(std::int64_t n) {
  static std::mutex mu;
  static std::map<std::int64_t, std::unique_ptr<Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;

  auto f = std::make_unique<Field>();
  f->n = n;
  f->poly = cyclotomic_polynomial(n);
  f->phi = f->poly.size() - 1;
  const std::size_t phi = f->phi;
  f->powers.resize(static_cast<std::size_t>(n));
  std::vector<BigInt> cur(phi, BigInt(0));
  cur[0] = 1;
  for (std::int64_t j = 0; j < n; ++j) {
    f->powers[static_cast<std::size_t>(j)] = cur;
    // multiply by xi: shift up, then fold x^phi = -sum poly[i] x^i
    BigInt top = cur[phi - 1];
    for (std::size_t i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0) {
      for (std::size_t i = 0; i < phi; ++i) cur[i] -= top * f->poly[i];
    }
  }
  const Field& ref = *f;
  cache.emplace(n, std::move(f));
  return ref;
}

std::vector<BigRational> reduce_raw(const Field& f, const std::vector<BigRational>& raw) {
  std::vector<BigRational> out(f.phi, BigRational(0));
  for (std::size_t j = 0; j < raw.size(); ++j) {
    if (raw[j] == 0) continue;
    if (j < f.phi) {
      out[j] += raw[j];
      continue;
    }
    const auto& pw = f.powers[j % static_cast<std::size_t>(f.n)];
    for (std::size_t i = 0; i < f.phi; ++i) {
      if (pw[i] != 0) out[i] += raw[j] * pw[i];
    }
  }
  return out;
}

// --- rational polynomial helpers for inversion ---
using RatPoly = std::vector<BigRational>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()), BigRational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  r = a;
  trim(r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, BigRational(0));
  const BigRational lead = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    BigRational c = r.back() / lead;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    trim(r);
  }
  trim(q);
}

}  // namespace

IntPoly cyclotomic_polynomial(std::int64_t n) {
  if (n < 1) throw PreconditionError("cyclotomic_polynomial: N must be >= 1");
  // x^n - 1 divided by Phi_d for every proper divisor d.
  IntPoly p(static_cast<std::size_t>(n) + 1, BigInt(0));
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d == 0) p = div_monic(p, cyclotomic_polynomial(d));
  }
  return p;
}

std::string format_rational(const BigRational& r) { return r.get_str(); }

BigRational parse_rational(std::string_view text) {
  if (text.empty()) throw Error("empty rational literal");
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '/' && !seen_slash) {
      seen_slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw Error("malformed rational literal '" + std::string(text) + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after)) {
    throw Error("malformed rational literal '" + std::string(text) + "'");
  }
  std::string s(text[0] == '+' ? text.substr(1) : text);
  BigRational r;
  r.set_str(s, 10);
  if (r.get_den() == 0) throw DivisionByZero();
  r.canonicalize();
  return r;
}

CyclotomicNumber::CyclotomicNumber() : conductor_(1), coeffs_{BigRational(0)} {}
CyclotomicNumber::CyclotomicNumber(long v) : conductor_(1), coeffs_{BigRational(v)} {}
CyclotomicNumber::CyclotomicNumber(const BigInt& v) : conductor_(1), coeffs_{BigRational(v)} {}
CyclotomicNumber::CyclotomicNumber(const BigRational& v) : conductor_(1), coeffs_{v} {}

CyclotomicNumber CyclotomicNumber::root_of_unity(std::int64_t conductor, std::int64_t power) {
  if (conductor < 1) throw PreconditionError("conductor must be >= 1");
  const Field& f = field(conductor);
  const auto& pw = f.powers[static_cast<std::size_t>(mod_floor(power, conductor))];
  std::vector<BigRational> c(pw.begin(), pw.end());
  return {conductor, std::move(c)};
}

CyclotomicNumber CyclotomicNumber::from_power_coeffs(std::int64_t conductor,
                                                     const std::vector<BigRational>& raw) {
  if (conductor < 1) throw PreconditionError("conductor must be >= 1");
  return {conductor, reduce_raw(field(conductor), raw)};
}

bool CyclotomicNumber::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

bool CyclotomicNumber::is_one() const { return is_rational() && coeffs_[0] == 1; }

CyclotomicNumber CyclotomicNumber::promoted(std::int64_t m) const {
  if (m == conductor_) return *this;
  if (m % conductor_ != 0) throw PreconditionError("promotion target must be a multiple of the conductor");
  const Field& f = field(m);
  std::vector<BigRational> out(f.phi, BigRational(0));
  const std::int64_t step = m / conductor_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const auto& pw = f.powers[static_cast<std::size_t>((static_cast<std::int64_t>(i) * step) % m)];
    for (std::size_t j = 0; j < f.phi; ++j)
      if (pw[j] != 0) out[j] += coeffs_[i] * pw[j];
  }
  return {m, std::move(out)};
}

std::optional<CyclotomicNumber> CyclotomicNumber::restricted(std::int64_t m) const {
  if (m == conductor_) return *this;
  if (m < 1) throw PreconditionError("restriction target must be positive");
  if (conductor_ % m != 0) {
    // Q[xi_N] and Q[xi_m] meet in Q[xi_gcd(N, m)].
    auto r = restricted(gcd64(conductor_, m));
    if (!r) return std::nullopt;
    return r->promoted(m);
  }
  if (is_rational()) return CyclotomicNumber(coeffs_[0]).promoted(m);

  // Solve sum_i x_i * promote(xi_m^i) = this over Q by Gaussian elimination.
  const std::size_t rows = coeffs_.size();
  const std::size_t cols = static_cast<std::size_t>(euler_phi(m));
  std::vector<std::vector<BigRational>> a(rows, std::vector<BigRational>(cols + 1, BigRational(0)));
  for (std::size_t i = 0; i < cols; ++i) {
    CyclotomicNumber b = root_of_unity(m, static_cast<std::int64_t>(i)).promoted(conductor_);
    for (std::size_t r = 0; r < rows; ++r) a[r][i] = b.coeffs_[r];
  }
  for (std::size_t r = 0; r < rows; ++r) a[r][cols] = coeffs_[r];

  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t p = row;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][c] == 0) continue;
      BigRational factor = a[r][c] / a[row][c];
      for (std::size_t k = c; k <= cols; ++k) a[r][k] -= factor * a[row][k];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (a[r][cols] != 0) return std::nullopt;

  std::vector<BigRational> x(cols, BigRational(0));
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = a[r][cols] / a[r][pivot_col[r]];
  return CyclotomicNumber(m, std::move(x));
}

CyclotomicNumber CyclotomicNumber::galois(std::int64_t m) const {
  if (gcd64(m, conductor_) != 1) throw NotCoprime(m, conductor_);
  if (conductor_ <= 2) return *this;
  const Field& f = field(conductor_);
  std::vector<BigRational> out(f.phi, BigRational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const auto& pw = f.powers[static_cast<std::size_t>(mod_floor(m * static_cast<std::int64_t>(i), conductor_))];
    for (std::size_t j = 0; j < f.phi; ++j)
      if (pw[j] != 0) out[j] += coeffs_[i] * pw[j];
  }
  return {conductor_, std::move(out)};
}

CyclotomicNumber CyclotomicNumber::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  CyclotomicNumber result = CyclotomicNumber(1L).promoted(conductor_);
  CyclotomicNumber base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (is_rational()) return CyclotomicNumber(BigRational(1) / coeffs_[0]).promoted(conductor_);
  // Extended Euclid: find u with u * a == 1 mod Phi_N.
  const Field& f = field(conductor_);
  RatPoly mod(f.poly.begin(), f.poly.end());
  RatPoly a = coeffs_;
  trim(a);
  RatPoly r0 = mod, r1 = a;
  RatPoly s0, s1{BigRational(1)};  // coefficients of a
  while (!r1.empty()) {
    RatPoly q, r;
    divmod(r0, r1, q, r);
    RatPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant since Phi_N is irreducible and a != 0 mod Phi_N.
  BigRational c = r0.at(0);
  for (auto& v : s0) v /= c;
  return from_power_coeffs(conductor_, s0);
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  if (o.conductor_ == conductor_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  const std::int64_t l = lcm64(conductor_, o.conductor_);
  *this = promoted(l);
  CyclotomicNumber b = o.promoted(l);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) {
  if (o.conductor_ == conductor_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  return *this += -o;
}

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.conductor_ == 1 && b.conductor_ == 1) return CyclotomicNumber(BigRational(a.coeffs_[0] * b.coeffs_[0]));
  if (b.is_rational() && b.conductor_ <= a.conductor_ && a.conductor_ % b.conductor_ == 0) {
    CyclotomicNumber r = a;
    for (auto& c : r.coeffs_) c *= b.coeffs_[0];
    return r;
  }
  if (a.is_rational() && a.conductor_ <= b.conductor_ && b.conductor_ % a.conductor_ == 0) {
    CyclotomicNumber r = b;
    for (auto& c : r.coeffs_) c *= a.coeffs_[0];
    return r;
  }
  const std::int64_t l = lcm64(a.conductor_, b.conductor_);
  const CyclotomicNumber x = a.promoted(l);
  const CyclotomicNumber y = b.promoted(l);
  std::vector<BigRational> raw(2 * x.coeffs_.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
    if (x.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
      if (y.coeffs_[j] != 0) raw[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
  }
  return CyclotomicNumber(l, reduce_raw(field(l), raw));
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o) { return *this = *this * o; }

CyclotomicNumber& CyclotomicNumber::operator/=(const CyclotomicNumber& o) { return *this = *this * o.inverse(); }

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  const std::int64_t l = lcm64(a.conductor_, b.conductor_);
  return a.promoted(l).coeffs_ == b.promoted(l).coeffs_;
}

std::complex<double> CyclotomicNumber::to_complex() const {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(conductor_);
    sum += coeffs_[i].get_d() * std::polar(1.0, angle);
  }
  return sum;
}

std::string CyclotomicNumber::to_literal() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const BigRational& c = coeffs_[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    BigRational mag = abs(c);
    if (negative) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    if (i == 0 || mag != 1) out += mag.get_str();
    if (i >= 1) out += 'z';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

CyclotomicNumber CyclotomicNumber::parse(std::string_view text, std::int64_t conductor) {
  if (conductor < 1) throw PreconditionError("conductor must be >= 1");
  if (text.empty()) throw Error("empty coefficient literal");
  const auto bad = [&]() { return Error("malformed coefficient literal '" + std::string(text) + "'"); };
  std::map<std::int64_t, BigRational> terms;
  std::size_t i = 0;
  while (i < text.size()) {
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
      negative = text[i] == '-';
      ++i;
    } else if (i != 0) {
      throw bad();
    }
    std::size_t start = i;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
    BigRational coef(1);
    const bool has_number = i > start;
    if (has_number) coef = parse_rational(text.substr(start, i - start));
    if (i < text.size() && text[i] == '*') {
      if (!has_number) throw bad();
      ++i;
    }
    std::int64_t power = 0;
    if (i < text.size() && text[i] == 'z') {
      ++i;
      power = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::size_t ps = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == ps || i - ps > 12) throw bad();
        power = std::stoll(std::string(text.substr(ps, i - ps)));
      }
    } else if (!has_number) {
      throw bad();
    }
    if (negative) coef = -coef;
    terms[mod_floor(power, conductor)] += coef;
  }
  std::vector<BigRational> raw;
  for (const auto& [p, c] : terms) {
    if (raw.size() <= static_cast<std::size_t>(p)) raw.resize(static_cast<std::size_t>(p) + 1, BigRational(0));
    raw[static_cast<std::size_t>(p)] += c;
  }
  return from_power_coeffs(conductor, raw);
}

}  // namespace g0wb
