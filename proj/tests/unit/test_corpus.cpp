#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "g0wb/corpus.hpp"
#include "g0wb/errors.hpp"
#include "g0wb/hauptmodul.hpp"
#include "g0wb/modeq.hpp"
#include "oracles.hpp"

using namespace g0wb;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Scratch copy of the data directory that a test may damage.
struct ScratchData {
  fs::path dir;
  ScratchData() {
    dir = fs::temp_directory_path() / ("g0wb_corpus_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (const auto& f : corpus_files()) fs::copy_file(fs::path(G0WB_TEST_DATA_DIR) / f, dir / f);
  }
  ~ScratchData() { fs::remove_all(dir); }
  void replace_line(const std::string& file, const std::string& from, const std::string& to) const {
    std::string text = slurp(dir / file);
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
    std::ofstream(dir / file, std::ios::binary) << text;
  }
};

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("four entries load with reference literals in place") {
    const auto corpus = load_corpus(G0WB_TEST_DATA_DIR);
    REQUIRE(corpus.size() == 4);
    const auto& j = find_entry(corpus, "J").series;
    CHECK(j.coeff_at_integer(1) == CyclotomicNumber(196884L));
    CHECK(j.coeff_at_integer(2) == CyclotomicNumber(21493760L));
    CHECK(j.coeff_at_integer(3) == CyclotomicNumber(864299970L));
    CHECK(j.trunc() >= 50);
    const auto& g2 = find_entry(corpus, "J_Gamma0(2)").series;
    const long g2lit[] = {276, -2048, 11202, -49152, 184024};
    for (int n = 1; n <= 5; ++n) CHECK(g2.coeff_at_integer(n) == CyclotomicNumber(g2lit[n - 1]));
    const auto& g25 = find_entry(corpus, "J_Gamma0(25)").series;
    CHECK(g25.coeff_at_integer(2).is_zero());
    CHECK(g25.coeff_at_integer(1) == CyclotomicNumber(-1L));
    CHECK(find_entry(corpus, "J_Gamma0(13)").series.coeff_at_integer(4) == CyclotomicNumber(2L));
    CHECK_THROWS(find_entry(corpus, "nope"));
  }

  TEST_CASE("provenance ranges cover every coefficient") {
    for (const auto& e : load_corpus(G0WB_TEST_DATA_DIR)) {
      REQUIRE(!e.provenance.empty());
      CHECK(e.provenance.front().kind == ProvenanceKind::reference);
      CHECK(e.provenance.front().from == -1);
      std::int64_t next = -1;
      for (const auto& r : e.provenance) {
        CHECK(r.from == next);
        next = r.to + 1;
        if (r.kind == ProvenanceKind::derived) CHECK(!r.note.empty());
      }
      CHECK(next - 1 == e.series.trunc_floor());
    }
  }

  TEST_CASE("derived data agrees with independent oracles") {
    const auto corpus = load_corpus(G0WB_TEST_DATA_DIR);
    const auto& j = find_entry(corpus, "J").series;
    const auto jo = oracle::j_coefficients(static_cast<std::size_t>(j.trunc()));
    for (std::int64_t n = 1; n <= j.trunc(); ++n) CHECK(j.coeff_at_integer(n) == CyclotomicNumber(BigInt(jo[n - 1])));
    const auto& g2 = find_entry(corpus, "J_Gamma0(2)").series;
    const auto go = oracle::gamma0_2_coefficients(static_cast<std::size_t>(g2.trunc()));
    for (std::int64_t n = 1; n <= g2.trunc(); ++n) CHECK(g2.coeff_at_integer(n) == CyclotomicNumber(BigInt(go[n - 1])));
  }

  TEST_CASE("derived J satisfies replication and its modular equations") {
    const auto corpus = load_corpus(G0WB_TEST_DATA_DIR);
    const auto& j = find_entry(corpus, "J").series;
    for (int k = 1; k <= 10; ++k) CHECK(check_replication(j, j, k));
    for (int m : {2, 3}) {
      const auto rep = verify_modular_equation(j, build_modular_polynomial(j, m), m);
      CHECK(rep.status == VerificationStatus::consistent);
      // the coset poles eat into the window: about trunc/m - m is all the data supports
      CHECK(rep.verified_to >= j.trunc() / m - m - 1);
    }
  }

  TEST_CASE("a damaged reference literal is refused") {
    ScratchData scratch;
    CHECK_NOTHROW(load_corpus(scratch.dir.string()));
    scratch.replace_line("g0_2.qexp", "\n4 -49152\n", "\n4 -49153\n");
    CHECK_THROWS_AS(load_corpus(scratch.dir.string()), CorruptCorpus);
  }

  TEST_CASE("a renamed entry or missing file is refused") {
    {
      ScratchData scratch;
      scratch.replace_line("j.qexp", "label: J\n", "label: K\n");
      CHECK_THROWS_AS(load_corpus(scratch.dir.string()), CorruptCorpus);
    }
    {
      ScratchData scratch;
      fs::remove(scratch.dir / "g0_25.qexp");
      CHECK_THROWS_AS(load_corpus(scratch.dir.string()), CorruptCorpus);
    }
  }

  TEST_CASE("emit(load) is byte-identical for every bundled file") {
    for (const auto& e : load_corpus(G0WB_TEST_DATA_DIR)) {
      CHECK(emit_qexp(e.meta.label, e.series) == slurp(fs::path(G0WB_TEST_DATA_DIR) / e.file));
    }
  }

  TEST_CASE("ingest validates and marks provenance as external") {
    std::istringstream ok("# qexp v1\nlabel: t\nconductor: 1\ndenom: 1\nlo: -1\ntrunc: 3\n-1 1\n2 5\n");
    const auto e = ingest(ok, true);
    CHECK(e.meta.label == "t");
    REQUIRE(e.provenance.size() == 1);
    CHECK(e.provenance[0].kind == ProvenanceKind::external);

    std::istringstream dup("# qexp v1\nlabel: t\nconductor: 1\ndenom: 1\nlo: -1\ntrunc: 3\n-1 1\n2 5\n2 6\n");
    try {
      ingest(dup);
      FAIL("duplicate exponent accepted");
    } catch (const ParseError& err) {
      CHECK(err.line() == 9);
    }

    std::istringstream shape("# qexp v1\nlabel: t\nconductor: 1\ndenom: 1\nlo: -2\ntrunc: 3\n-2 1\n");
    CHECK_NOTHROW(ingest(shape));
    std::istringstream shape2("# qexp v1\nlabel: t\nconductor: 1\ndenom: 1\nlo: -2\ntrunc: 3\n-2 1\n");
    CHECK_THROWS_AS(ingest(shape2, true), ShapeError);
    CHECK_THROWS_AS(ingest_file("/nonexistent/file.qexp"), CorruptCorpus);
  }

  TEST_CASE("conductor 3 literals parse as cyclotomic coefficients") {
    std::istringstream in("# qexp v1\nlabel: w\nconductor: 3\ndenom: 1\nlo: -1\ntrunc: 4\n-1 1\n1 z\n2 1+2z\n4 -1/2z\n");
    const auto e = ingest(in, true);
    const auto w = CyclotomicNumber::root_of_unity(3, 1);
    CHECK(e.series.conductor() == 3);
    CHECK(e.series.coeff_at_integer(1) == w);
    CHECK(e.series.coeff_at_integer(2) == CyclotomicNumber(1L) + w * CyclotomicNumber(2L));
    CHECK(e.series.coeff_at_integer(4) == w * CyclotomicNumber(BigRational(-1, 2)));
    // xi_3 + xi_3^2 = -1 is rational, so z^2 is not a canonical literal
    CHECK((w * w).to_literal() == "-1-z");
    CHECK(detect_fiction(e.series) == std::nullopt);
  }
}
