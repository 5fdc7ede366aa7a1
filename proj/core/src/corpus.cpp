#include "g0wb/corpus.hpp"

#include <cstdlib>
#include <fstream>

#ifndef G0WB_DEFAULT_DATA_DIR
#define G0WB_DEFAULT_DATA_DIR "data"
#endif

namespace g0wb {

std::string to_string(ProvenanceKind k) {
  switch (k) {
    case ProvenanceKind::reference:
      return "reference";
    case ProvenanceKind::derived:
      return "derived";
    case ProvenanceKind::external:
      return "external";
  }
  return "external";
}

const std::vector<std::string>& corpus_files() {
  static const std::vector<std::string> files{"j.qexp", "g0_2.qexp", "g0_13.qexp", "g0_25.qexp"};
  return files;
}

const std::vector<ReferencePrefix>& reference_prefixes() {
  // Deliberately kept apart from the data files so a damaged file is caught.
  static const std::vector<ReferencePrefix> prefixes{
      {"J", "j.qexp", "SL2(Z)", 3, {{-1, 1}, {1, 196884}, {2, 21493760}, {3, 864299970}}},
      {"J_Gamma0(2)", "g0_2.qexp", "Gamma0(2)", 5,
       {{-1, 1}, {1, 276}, {2, -2048}, {3, 11202}, {4, -49152}, {5, 184024}}},
      {"J_Gamma0(13)", "g0_13.qexp", "Gamma0(13)", 9,
       {{-1, 1}, {1, -1}, {2, 2}, {3, 1}, {4, 2}, {5, -2}, {7, -2}, {8, -2}, {9, 1}}},
      {"J_Gamma0(25)", "g0_25.qexp", "Gamma0(25)", 26,
       {{-1, 1}, {1, -1}, {4, 1}, {6, 1}, {11, -1}, {14, -1}, {21, 1}, {24, 1}, {26, -1}}},
  };
  return prefixes;
}

std::string default_data_dir() {
  if (const char* env = std::getenv("G0WB_DATA"); env != nullptr && *env != '\0') return env;
  return G0WB_DEFAULT_DATA_DIR;
}

namespace {

std::string derivation_note(const std::string& label) {
  if (label == "J") {
    return "bootstrap through the order-2 modular polynomial from the 3-coefficient prefix; "
           "cross-checked against E4^3/Delta - 744 and the replication identities k = 1..10";
  }
  if (label == "J_Gamma0(2)") {
    return "(eta(tau)/eta(2 tau))^24 + 24; cross-checked by order-3 bootstrap from the 5-coefficient prefix";
  }
  return "";
}

void check_prefix(const ReferencePrefix& ref, const PuiseuxSeries& s, const std::string& path) {
  if (s.denom() != 1 || s.conductor() != 1) throw CorruptCorpus(path + ": expected an integral Laurent series");
  if (s.trunc() < ref.through) throw CorruptCorpus(path + ": truncated before the reference prefix ends");
  std::size_t i = 0;
  for (std::int64_t n = -1; n <= ref.through; ++n) {
    long want = 0;
    if (i < ref.terms.size() && ref.terms[i].first == n) want = ref.terms[i++].second;
    const CyclotomicNumber got = n < s.lo() ? CyclotomicNumber() : s.coeff(n);
    if (!(got == CyclotomicNumber(want))) {
      throw CorruptCorpus(path + ": coefficient of q^" + std::to_string(n) + " is " + got.to_literal() +
                          ", reference literal is " + std::to_string(want));
    }
  }
}

}  // namespace

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  std::vector<CorpusEntry> out;
  for (const auto& ref : reference_prefixes()) {
    const std::string path = dir + "/" + ref.file;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorruptCorpus("cannot open " + path);
    LabeledSeries ls = [&] {
      try {
        return parse_qexp(in);
      } catch (const ParseError& e) {
        throw CorruptCorpus(path + ": " + e.what());
      }
    }();
    if (ls.meta.label != ref.label) throw CorruptCorpus(path + ": label '" + ls.meta.label + "', expected " + ref.label);
    check_prefix(ref, ls.series, path);
    CorpusEntry e{SeriesMeta{ref.label, "", ref.claimed_group}, std::move(ls.series), {}, path};
    e.provenance.push_back({-1, ref.through, ProvenanceKind::reference, "reference literal prefix"});
    if (e.series.trunc() > ref.through) {
      const std::string note = derivation_note(ref.label);
      if (note.empty()) throw CorruptCorpus(path + ": no oracle is recorded for coefficients past the prefix");
      e.provenance.push_back({ref.through + 1, e.series.trunc(), ProvenanceKind::derived, note});
    }
    e.meta.source = e.provenance.size() == 1 ? "reference prefix" : "reference prefix + derived";
    out.push_back(std::move(e));
  }
  return out;
}

const CorpusEntry& find_entry(const std::vector<CorpusEntry>& corpus, const std::string& label) {
  for (const auto& e : corpus)
    if (e.meta.label == label) return e;
  throw PreconditionError("no corpus entry labelled '" + label + "'");
}

CorpusEntry ingest(std::istream& in, bool require_moonshine_shape) {
  LabeledSeries ls = parse_qexp(in);
  if (require_moonshine_shape && !ls.series.is_moonshine_shape()) {
    throw ShapeError("series '" + ls.meta.label + "' is not of the shape q^-1 + sum_{n>=1} a_n q^n");
  }
  CorpusEntry e{ls.meta, std::move(ls.series), {}, ""};
  e.meta.source = "external";
  e.provenance.push_back({e.series.lo() / e.series.denom(), e.series.trunc_floor(), ProvenanceKind::external, "ingested file"});
  return e;
}

CorpusEntry ingest_file(const std::string& path, bool require_moonshine_shape) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptCorpus("cannot open " + path);
  CorpusEntry e = ingest(in, require_moonshine_shape);
  e.file = path;
  return e;
}

}  // namespace g0wb
