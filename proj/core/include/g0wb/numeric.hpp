#pragma once

/**
 * @file numeric.hpp
 * @brief Double-precision evaluation of q-series, the eta product and raw
 * Eisenstein lattice sums, plus residual checks of weight-k transformation
 * laws.
 *
 * Every evaluator reports a tail estimate next to its value. Points with
 * Im(tau) < 0.1 are rejected outright.
 */

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "g0wb/exactnum.hpp"
#include "g0wb/braid.hpp"
#include "g0wb/intmatrix.hpp"
#include "g0wb/qseries.hpp"

namespace g0wb {

inline constexpr double kMinImaginaryPart = 0.1;

struct UpperHalfPoint {
  double re;
  double im;

  UpperHalfPoint(double re_, double im_);
  static UpperHalfPoint from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }
  /// "RE,IM".
  static UpperHalfPoint parse(std::string_view text);
  std::complex<double> z() const { return {re, im}; }
};

struct EvalResult {
  std::complex<double> value;
  double tail_estimate = 0.0;
  std::int64_t terms_used = 0;
};

using Evaluator = std::function<EvalResult(const UpperHalfPoint&)>;

EvalResult eval_series(const PuiseuxSeries& h, const UpperHalfPoint& tau);
/// q^(1/24) prod_{n=1..terms} (1 - q^n).
EvalResult eta_eval(const UpperHalfPoint& tau, int terms);
/// Primed sum of (m tau + n)^-k over 0 < max(|m|, |n|) <= radius.
EvalResult eisenstein_eval(int k, const UpperHalfPoint& tau, int radius);

/// (a tau + b) / (c tau + d).
UpperHalfPoint mobius(const IntMatrix& a, const UpperHalfPoint& tau);

struct WeightLawCheck {
  double residual;
  // Sum of the tail estimates entering the residual.
  double combined_tail;
};

/// |f(A tau) - mu (c tau + d)^k f(tau)|, principal branch.
WeightLawCheck check_weight_law(const Evaluator& f, const IntMatrix& a, double k, std::complex<double> mu,
                                const UpperHalfPoint& tau);

struct RealMatrix {
  double a, b, c, d;
};

using MultiplierMap = std::function<std::complex<double>(const RealMatrix&)>;

/// f(g i) (c i + d)^-k conj(mu(g)).
std::complex<double> lift_phi(const Evaluator& f, double k, const MultiplierMap& mu, const RealMatrix& g);

struct KappaRow {
  IntMatrix matrix;
  BigRational kappa;
  double residual;
};

struct KappaPanel {
  std::vector<KappaRow> rows;
  std::vector<BigRational> accepted;
  std::optional<BigRational> selected;  // set iff exactly one candidate passes
  double tolerance;
};

/// Tests each kappa against the eta law on every matrix (c > 0) at tau.
KappaPanel select_kappa(const std::vector<BigRational>& candidates, const std::vector<IntMatrix>& panel,
                        const UpperHalfPoint& tau, double tolerance = 1e-8);

/// Default panel for select_kappa: matrices of SL2(Z) with c > 0.
std::vector<IntMatrix> default_kappa_panel();

std::string format_complex(std::complex<double> z);
std::string format_sci(double x);

}  // namespace g0wb
