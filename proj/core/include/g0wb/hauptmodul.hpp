#pragma once

/**
 * @file hauptmodul.hpp
 * @brief Fiction detection, multi-order classification, coefficient bootstrap,
 * replication identities and congruence-subgroup membership.
 *
 * A verdict of hauptmodul-candidate only says that every tested modular
 * equation holds to the tested depth. The invariance group of a truncated
 * series is not computable, so nothing stronger is ever claimed.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "g0wb/intmatrix.hpp"
#include "g0wb/modeq.hpp"
#include "g0wb/qseries.hpp"

namespace g0wb {

enum class Verdict { fiction, hauptmodul_candidate, inconsistent, undetermined };
std::string to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::undetermined;
  std::optional<CyclotomicNumber> fiction_xi;
  std::vector<std::pair<std::int64_t, VerificationReport>> orders_tested;
  std::string notes;
};

/// xi when h = q^-1 + xi q on its whole determined range, otherwise empty.
std::optional<CyclotomicNumber> detect_fiction(const PuiseuxSeries& h);

/// True iff xi^24 = 1.
bool is_24th_root_of_unity(const CyclotomicNumber& xi);

Classification classify(const PuiseuxSeries& h, const std::vector<std::int64_t>& orders,
                        const ModEqOptions& opts = {});

/// Extends h_prefix to exponent `target` by solving F(h(tau), h(m tau)) = 0
/// one coefficient at a time.
PuiseuxSeries bootstrap_extend(const PuiseuxSeries& h_prefix, const ModularPolynomial& f, std::int64_t m,
                               std::int64_t target, const ModEqOptions& opts = {});

/// c_{4k+2}(a) = c_{2k+2}(b) + sum_{j=1..k} c_j(b) c_{2k+1-j}(b).
bool check_replication(const PuiseuxSeries& a, const PuiseuxSeries& b, std::int64_t k);

enum class Flavor { full, gamma0, gamma1 };
Flavor parse_flavor(const std::string& s);
std::string to_string(Flavor f);

bool congruence_membership(const IntMatrix& a, std::int64_t level, Flavor flavor);

}  // namespace g0wb
