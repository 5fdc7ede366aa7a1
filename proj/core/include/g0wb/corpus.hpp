#pragma once

/**
 * @file corpus.hpp
 * @brief The bundled q-expansions and ingestion of external qexp files.
 *
 * Each entry records which coefficient ranges are reference literals and
 * which were derived by an in-repo oracle. Reference literals are duplicated
 * in the loader and checked against the files on every load.
 */

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "g0wb/qseries.hpp"

namespace g0wb {

enum class ProvenanceKind { reference, derived, external };
std::string to_string(ProvenanceKind k);

struct ProvenanceRange {
  std::int64_t from;  // whole q-exponents, inclusive
  std::int64_t to;
  ProvenanceKind kind;
  std::string note;
};

struct CorpusEntry {
  SeriesMeta meta;
  PuiseuxSeries series;
  std::vector<ProvenanceRange> provenance;
  std::string file;
};

/// Bundled file names, in load order.
const std::vector<std::string>& corpus_files();

/// $G0WB_DATA if set, otherwise the directory compiled into the library.
std::string default_data_dir();

/// Loads the four bundled series and checks every reference literal.
std::vector<CorpusEntry> load_corpus(const std::string& dir = default_data_dir());
const CorpusEntry& find_entry(const std::vector<CorpusEntry>& corpus, const std::string& label);

/// Reference prefix of a bundled label as (exponent, value) pairs; the
/// listed exponents up to the prefix end are the only nonzero ones there.
struct ReferencePrefix {
  std::string label;
  std::string file;
  std::string claimed_group;
  std::int64_t through;  // prefix known up to this exponent
  std::vector<std::pair<std::int64_t, long>> terms;
};
const std::vector<ReferencePrefix>& reference_prefixes();

CorpusEntry ingest(std::istream& in, bool require_moonshine_shape = false);
CorpusEntry ingest_file(const std::string& path, bool require_moonshine_shape = false);

}  // namespace g0wb
