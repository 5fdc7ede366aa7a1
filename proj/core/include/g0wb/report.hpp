#pragma once

/**
 * @file report.hpp
 * @brief Plain-text and key=value rendering of verification reports,
 * classifications and numeric residual panels.
 *
 * Rendering is a pure function of its input. The machine block follows a
 * line containing only "---".
 */

#include <string>
#include <utility>
#include <vector>

#include "g0wb/hauptmodul.hpp"
#include "g0wb/modeq.hpp"
#include "g0wb/numeric.hpp"

namespace g0wb {

struct RenderedReport {
  std::vector<std::pair<std::string, std::string>> sections;
  std::vector<std::string> footnotes;
  std::vector<std::pair<std::string, std::string>> machine;

  std::string text() const;
  std::string machine_block() const;
  /// text(), then "---", then the machine block.
  std::string full() const;
};

struct ResidualRow {
  std::string label;
  double residual;
  double tolerance;
};

struct ResidualPanel {
  std::string title;
  std::vector<ResidualRow> rows;
  std::string note;
};

RenderedReport render(const VerificationReport& r);
RenderedReport render(const Classification& c);
RenderedReport render(const ResidualPanel& p);
RenderedReport render(const KappaPanel& p);

/// "q^{-1}", "q^{-1}+q", "q^{-1}-q" or "q^{-1}+(xi)q".
std::string fiction_formula(const CyclotomicNumber& xi);

}  // namespace g0wb
