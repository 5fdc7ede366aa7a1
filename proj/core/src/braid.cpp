#include "g0wb/braid.hpp"

#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <numbers>
#include <sstream>

namespace g0wb {

BraidWord::BraidWord(std::vector<BraidLetter> letters) : letters_(std::move(letters)) {
  for (const auto& l : letters_)
    if (l.generator != 1 && l.generator != 2) throw PreconditionError("braid generators are s1 and s2");
  reduce();
}

void BraidWord::reduce() {
  std::vector<BraidLetter> out;
  for (const auto& l : letters_) {
    if (l.exponent == 0) continue;
    if (!out.empty() && out.back().generator == l.generator) {
      out.back().exponent += l.exponent;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  letters_ = std::move(out);
}

BraidWord BraidWord::parse(std::string_view text) {
  std::vector<BraidLetter> letters;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || tok[0] != 's' || (tok[1] != '1' && tok[1] != '2')) {
      throw PreconditionError("bad braid token '" + tok + "'");
    }
    std::int64_t e = 1;
    if (tok.size() > 2) {
      if (tok[2] != '^' || tok.size() == 3) throw PreconditionError("bad braid token '" + tok + "'");
      const char* first = tok.data() + 3;
      const char* last = tok.data() + tok.size();
      auto [ptr, ec] = std::from_chars(first, last, e);
      if (ec != std::errc() || ptr != last) throw PreconditionError("bad braid exponent in '" + tok + "'");
    }
    letters.push_back({tok[1] - '0', e});
  }
  return BraidWord(std::move(letters));
}

BraidWord BraidWord::inverse() const {
  std::vector<BraidLetter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return BraidWord(std::move(out));
}

BraidWord BraidWord::pow(std::int64_t e) const {
  const BraidWord base = e < 0 ? inverse() : *this;
  BraidWord r;
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) r = r * base;
  return r;
}

std::string BraidWord::to_string() const {
  std::string s;
  for (const auto& l : letters_) {
    if (!s.empty()) s += ' ';
    s += "s" + std::to_string(l.generator);
    if (l.exponent != 1) s += "^" + std::to_string(l.exponent);
  }
  return s;
}

BraidWord operator*(const BraidWord& a, const BraidWord& b) {
  std::vector<BraidLetter> l = a.letters_;
  l.insert(l.end(), b.letters_.begin(), b.letters_.end());
  return BraidWord(std::move(l));
}

std::int64_t degree(const BraidWord& w) {
  std::int64_t d = 0;
  for (const auto& l : w.letters()) d += l.exponent;
  return d;
}

namespace {

IntMatrix matrix_pow(const IntMatrix& m, std::int64_t e) {
  IntMatrix base = e < 0 ? m.inverse() : m;
  std::uint64_t k = static_cast<std::uint64_t>(e < 0 ? -e : e);
  IntMatrix r = IntMatrix::identity();
  while (k > 0) {
    if (k & 1U) r = r * base;
    base = base * base;
    k >>= 1U;
  }
  return r;
}

const IntMatrix kS1 = IntMatrix::of(1, 1, 0, 1);
const IntMatrix kS2 = IntMatrix::of(1, 0, -1, 1);

}  // namespace

IntMatrix burau(const BraidWord& w) {
  IntMatrix r = IntMatrix::identity();
  for (const auto& l : w.letters()) r = r * matrix_pow(l.generator == 1 ? kS1 : kS2, l.exponent);
  return r;
}

CyclotomicNumber braid_multiplier(const BraidWord& w) { return CyclotomicNumber::root_of_unity(24, degree(w)); }

int sigma_class(const IntMatrix& a) {
  if (!a.is_unimodular()) throw NotUnimodular();
  const int c = sgn(a.c);
  if (c == 0) return sgn(a.a) > 0 ? 0 : 2;
  return c < 0 ? 1 : 3;
}

bool is_valid(const ExtendedElement& x) {
  return x.a.is_unimodular() && mod_floor(x.n, 4) == sigma_class(x.a);
}

int maslov_index(const IntMatrix& a, const IntMatrix& b) {
  const std::int64_t r = mod_floor(sigma_class(a * b) - sigma_class(a) - sigma_class(b), 4);
  if (r == 2) throw MaslovUndefined();
  return r == 3 ? -1 : static_cast<int>(r);
}

ExtendedElement extended_mul(const ExtendedElement& x, const ExtendedElement& y) {
  return {x.a * y.a, x.n + y.n + maslov_index(x.a, y.a)};
}

ExtendedElement extended_inverse(const ExtendedElement& x) {
  const IntMatrix ai = x.a.inverse();
  // (A, n)(A^-1, m) = (I, n + m + tau) must be (I, 0)
  return {ai, -x.n - maslov_index(x.a, ai)};
}

ExtendedElement lift_braid(const BraidWord& w) {
  const ExtendedElement g1{kS1, 0};
  const ExtendedElement g2{kS2, 1};
  ExtendedElement r{IntMatrix::identity(), 0};
  for (const auto& l : w.letters()) {
    const ExtendedElement base = l.exponent < 0 ? extended_inverse(l.generator == 1 ? g1 : g2) : (l.generator == 1 ? g1 : g2);
    for (std::int64_t i = 0; i < (l.exponent < 0 ? -l.exponent : l.exponent); ++i) r = extended_mul(r, base);
  }
  return r;
}

BigRational eta_multiplier_phase(const IntMatrix& a, const BigRational& kappa) {
  if (!a.is_unimodular()) throw NotUnimodular();
  if (a.c <= 0) throw RequiresPositiveC();
  if (!a.c.fits_slong_p()) throw PreconditionError("c too large for the Dedekind sum");
  const long c = a.c.get_si();
  BigRational phase = BigRational(a.a + a.d, 12 * a.c) - kappa;
  BigRational sum = 0;
  for (long i = 1; i < c; ++i) {
    BigRational x(a.d * i, c);
    x.canonicalize();
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    sum += BigRational(i, c) * (x - fl - BigRational(1, 2));
  }
  phase -= sum;
  phase.canonicalize();
  // reduce into [0, 2)
  BigInt k;
  BigRational half = phase / 2;
  mpz_fdiv_q(k.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
  phase -= 2 * BigRational(k);
  phase.canonicalize();
  return phase;
}

std::complex<double> eta_multiplier_matrix(const IntMatrix& a, const BigRational& kappa) {
  const double p = eta_multiplier_phase(a, kappa).get_d();
  return std::polar(1.0, std::numbers::pi * p);
}

// ------------------------------------------------------------------ groups

GroupTable GroupTable::parse(std::istream& in) {
  std::string line;
  std::size_t ln = 0;
  auto next = [&]() {
    while (std::getline(in, line)) {
      ++ln;
      if (!line.empty() && line.back() == '\r') throw ParseError("CR line endings are not allowed", ln);
      if (line.find_first_not_of(" \t") != std::string::npos && line[0] != '#') return true;
    }
    return false;
  };
  if (!next()) throw ParseError("missing 'order:' header", ln + 1);
  if (line.rfind("order:", 0) != 0) throw ParseError("expected 'order: n'", ln);
  int n = 0;
  {
    std::istringstream h(line.substr(6));
    if (!(h >> n) || n < 1) throw ParseError("order must be a positive integer", ln);
  }
  GroupTable g;
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < n; ++i) {
    if (!next()) throw ParseError("expected " + std::to_string(n) + " table rows", ln + 1);
    std::istringstream r(line);
    std::vector<std::string> row;
    std::string tok;
    while (r >> tok) row.push_back(tok);
    if (static_cast<int>(row.size()) != n) throw ParseError("row must have " + std::to_string(n) + " entries", ln);
    rows.push_back(std::move(row));
  }
  if (next()) throw ParseError("trailing content after the table", ln);

  g.labels_ = rows[0];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (g.labels_[i] == g.labels_[j]) throw ShapeError("row 0 repeats label '" + g.labels_[i] + "'");
  g.table_.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = g.index_of(rows[i][j]);
      if (k < 0) throw ShapeError("unknown label '" + rows[i][j] + "'");
      g.table_[i][j] = k;
    }
  }
  g.validate();
  g.inverse_.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.table_[i][j] == 0) g.inverse_[i] = j;
  return g;
}

GroupTable GroupTable::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

GroupTable GroupTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorruptCorpus("cannot open group table " + path);
  return parse(in);
}

int GroupTable::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

void GroupTable::validate() const {
  const int n = order();
  for (int i = 0; i < n; ++i) {
    if (table_[0][i] != i || table_[i][0] != i) throw ShapeError("element 0 is not a two-sided identity");
    bool has_inverse = false;
    for (int j = 0; j < n; ++j) has_inverse = has_inverse || (table_[i][j] == 0 && table_[j][i] == 0);
    if (!has_inverse) throw ShapeError("'" + labels_[i] + "' has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
          throw ShapeError("table is not associative at (" + labels_[a] + ", " + labels_[b] + ", " + labels_[c] + ")");
        }
}

QuiltPair quilt_step(const QuiltPair& p, QuiltGen gen, const GroupTable& g) {
  const auto [a, b] = p;
  switch (gen) {
    case QuiltGen::s1:
      return {a, g.mul(a, b)};
    case QuiltGen::s1_inv:
      return {a, g.mul(g.inv(a), b)};
    case QuiltGen::s2:
      return {g.mul(a, g.inv(b)), b};
    case QuiltGen::s2_inv:
      return {g.mul(a, b), b};
  }
  return p;
}

std::set<QuiltPair> quilt_orbit(const QuiltPair& p, const GroupTable& g) {
  std::set<QuiltPair> seen{p};
  std::deque<QuiltPair> frontier{p};
  while (!frontier.empty()) {
    const QuiltPair cur = frontier.front();
    frontier.pop_front();
    for (QuiltGen gen : {QuiltGen::s1, QuiltGen::s2, QuiltGen::s1_inv, QuiltGen::s2_inv}) {
      const QuiltPair nxt = quilt_step(cur, gen, g);
      if (seen.insert(nxt).second) frontier.push_back(nxt);
    }
  }
  return seen;
}

std::vector<std::set<QuiltPair>> quilt_orbits(const GroupTable& g) {
  std::vector<std::set<QuiltPair>> out;
  std::set<QuiltPair> covered;
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) {
      if (covered.contains({a, b})) continue;
      auto orbit = quilt_orbit({a, b}, g);
      covered.insert(orbit.begin(), orbit.end());
      out.push_back(std::move(orbit));
    }
  }
  return out;
}

}  // namespace g0wb
