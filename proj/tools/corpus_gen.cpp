// Regenerates the bundled q-expansions under data/.
//
// J is extended from its 3-coefficient reference prefix by bootstrapping
// through the order-2 modular polynomial. That polynomial is built from an
// independent E4^3/Delta expansion, and the bootstrap must reproduce it.
// J_Gamma0(2) comes from its eta quotient and is cross-checked by an order-3
// bootstrap from the 5-coefficient prefix. The two remaining series are the
// reference prefixes as they stand.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "g0wb/corpus.hpp"
#include "g0wb/hauptmodul.hpp"
#include "g0wb/modeq.hpp"

using namespace g0wb;

namespace {

constexpr std::int64_t kJDepth = 60;
constexpr std::int64_t kGamma02Depth = 120;

BigInt divisor_sum(std::int64_t n, unsigned power, bool alternate) {
  BigInt s = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    BigInt t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), power);
    // (-1)^(n/d + 1) when alternating
    if (alternate && (n / d) % 2 == 0) t = -t;
    s += t;
  }
  return s;
}

// exp(sum_k s(k) q^k / k) via n b_n = sum_{k=1..n} s(k) b_{n-k}.
std::vector<BigInt> exp_of_log_derivative(const std::vector<BigInt>& s, std::size_t n) {
  std::vector<BigInt> b(n, 0);
  b[0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    BigInt acc = 0;
    for (std::size_t k = 1; k <= i; ++k) acc += s[k] * b[i - k];
    b[i] = acc / static_cast<long>(i);
  }
  return b;
}

PuiseuxSeries moonshine_from(const std::vector<BigInt>& c, std::int64_t depth) {
  // c[i] is the coefficient of q^(i-1) before the constant is removed
  std::vector<BigRational> a;
  for (std::int64_t n = 1; n <= depth; ++n) a.emplace_back(c[static_cast<std::size_t>(n + 1)]);
  return PuiseuxSeries::moonshine(a);
}

PuiseuxSeries j_from_eisenstein(std::int64_t depth) {
  const std::size_t n = static_cast<std::size_t>(depth) + 2;
  // prod (1 - q^n)^-24: log-derivative coefficients 24 sigma_1(k)
  std::vector<BigInt> s(n, 0);
  for (std::size_t k = 1; k < n; ++k) s[k] = 24 * divisor_sum(static_cast<std::int64_t>(k), 1, false);
  const std::vector<BigInt> inv_delta = exp_of_log_derivative(s, n);
  PuiseuxSeries e4(1, 1, 0, static_cast<std::int64_t>(n) - 1);
  e4.set(0, CyclotomicNumber(1L));
  for (std::size_t k = 1; k < n; ++k)
    e4.set(static_cast<std::int64_t>(k), CyclotomicNumber(BigInt(240 * divisor_sum(static_cast<std::int64_t>(k), 3, false))));
  PuiseuxSeries id(1, 1, 0, static_cast<std::int64_t>(n) - 1);
  for (std::size_t k = 0; k < n; ++k) id.set(static_cast<std::int64_t>(k), CyclotomicNumber(inv_delta[k]));
  const PuiseuxSeries prod = e4 * e4 * e4 * id;
  std::vector<BigInt> c(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const CyclotomicNumber v = prod.coeff(static_cast<std::int64_t>(k));
    c[k] = v.rational_part().get_num();
  }
  if (c[0] != 1 || c[1] != 744) throw CorruptCorpus("E4^3/Delta has an unexpected leading part");
  return moonshine_from(c, depth);
}

PuiseuxSeries gamma0_2_from_eta(std::int64_t depth) {
  const std::size_t n = static_cast<std::size_t>(depth) + 2;
  // prod (1 + q^n)^-24: log-derivative coefficients -24 sum_{d|k} d (-1)^(k/d+1)
  std::vector<BigInt> s(n, 0);
  for (std::size_t k = 1; k < n; ++k) s[k] = -24 * divisor_sum(static_cast<std::int64_t>(k), 1, true);
  std::vector<BigInt> c = exp_of_log_derivative(s, n);
  if (c[1] != -24) throw CorruptCorpus("eta quotient has an unexpected constant term");
  return moonshine_from(c, depth);
}

PuiseuxSeries reference_series(const ReferencePrefix& ref) {
  PuiseuxSeries s(1, 1, -1, ref.through);
  for (const auto& [e, v] : ref.terms) s.set(e, CyclotomicNumber(v));
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw CorruptCorpus("cross-check failed: " + what);
}

std::vector<std::pair<std::string, std::string>> generate() {
  const auto& refs = reference_prefixes();
  std::vector<std::pair<std::string, std::string>> files;

  // J
  const PuiseuxSeries j_oracle = j_from_eisenstein(kJDepth);
  const ModularPolynomial f2 = build_modular_polynomial(j_oracle, 2);
  require(f2.coeff(2, 0) == CyclotomicNumber(-393768L), "F_2 coefficient of x^2");
  require(f2.coeff(1, 1) == CyclotomicNumber(-42987520L + 1), "F_2 coefficient of xy");
  require(f2.coeff(1, 0) == CyclotomicNumber(BigInt("-40491318744")), "F_2 coefficient of x");
  const PuiseuxSeries j = bootstrap_extend(reference_series(refs[0]), f2, 2, kJDepth);
  require(j == j_oracle, "bootstrapped J equals E4^3/Delta - 744");
  for (std::int64_t k = 1; 4 * k + 2 <= kJDepth && k <= 10; ++k)
    require(check_replication(j, j, k), "replication identity k = " + std::to_string(k));
  require(verify_modular_equation(j, build_modular_polynomial(j, 3), 3).status == VerificationStatus::consistent,
          "J order-3 verification");
  files.emplace_back(refs[0].file, emit_qexp(refs[0].label, j));

  // J_Gamma0(2)
  const PuiseuxSeries g2 = gamma0_2_from_eta(kGamma02Depth);
  require(compare_to_order(g2, reference_series(refs[1]), refs[1].through).equal, "Gamma0(2) prefix");
  const ModularPolynomial f3 = build_modular_polynomial(g2, 3);
  require(bootstrap_extend(reference_series(refs[1]), f3, 3, kGamma02Depth) == g2, "Gamma0(2) order-3 bootstrap");
  files.emplace_back(refs[1].file, emit_qexp(refs[1].label, g2));

  for (std::size_t i = 2; i < refs.size(); ++i) files.emplace_back(refs[i].file, emit_qexp(refs[i].label, reference_series(refs[i])));
  return files;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate the bundled q-expansion corpus"};
  std::string out = default_data_dir();
  bool check = false;
  app.add_option("--out", out, "Directory to write (default: the data directory)");
  app.add_flag("--check", check, "Compare against the files in --out instead of writing");
  CLI11_PARSE(app, argc, argv);

  try {
    int mismatches = 0;
    for (const auto& [name, text] : generate()) {
      const std::string path = out + "/" + name;
      if (check) {
        std::ifstream in(path, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        const bool same = in.good() || in.eof() ? buf.str() == text : false;
        std::cout << (same ? "same " : "DIFFERS ") << path << '\n';
        mismatches += same ? 0 : 1;
      } else {
        std::ofstream o(path, std::ios::binary);
        o << text;
        if (!o) throw CorruptCorpus("cannot write " + path);
        std::cout << "wrote " << path << '\n';
      }
    }
    return mismatches == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "g0wb-corpus: " << e.what() << '\n';
    return 3;
  }
}
