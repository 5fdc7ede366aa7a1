#include "g0wb/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace g0wb {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> qpow(const UpperHalfPoint& tau, double e) {
  // exp(2 pi i tau e)
  const std::complex<double> w = std::complex<double>(0.0, kTwoPi * e) * tau.z();
  return std::exp(w);
}

double parse_double(std::string_view s) {
  std::string t(s);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw PreconditionError("bad number '" + t + "'");
  }
  if (used != t.size()) throw PreconditionError("bad number '" + t + "'");
  return v;
}

}  // namespace

UpperHalfPoint::UpperHalfPoint(double re_, double im_) : re(re_), im(im_) {
  if (!(im_ > 0.0)) throw PreconditionError("tau must lie in the upper half-plane");
  if (im_ < kMinImaginaryPart) throw PreconditionError("Im(tau) below 0.1 is too close to the real line");
}

UpperHalfPoint UpperHalfPoint::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw PreconditionError("tau must be given as RE,IM");
  return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

EvalResult eval_series(const PuiseuxSeries& h, const UpperHalfPoint& tau) {
  const double r = std::exp(-kTwoPi * tau.im / static_cast<double>(h.denom()));
  if (!(r < 1.0)) throw NonConvergent("|q| >= 1");
  EvalResult out;
  double last = 0.0;
  for (const auto& [n, c] : h.terms()) {
    const std::complex<double> term = c.to_complex() * qpow(tau, static_cast<double>(n) / static_cast<double>(h.denom()));
    out.value += term;
    last = std::abs(term);
    ++out.terms_used;
  }
  out.tail_estimate = h.trunc() >= kExactTrunc ? 0.0 : last * r / (1.0 - r) * 10.0;
  if (!std::isfinite(out.tail_estimate) || !std::isfinite(std::abs(out.value))) {
    throw NonConvergent("series evaluation overflowed");
  }
  return out;
}

EvalResult eta_eval(const UpperHalfPoint& tau, int terms) {
  if (terms < 1) throw PreconditionError("eta needs at least one factor");
  const std::complex<double> q = qpow(tau, 1.0);
  const double aq = std::abs(q);
  if (!(aq < 1.0)) throw NonConvergent("|q| >= 1");
  std::complex<double> prod = 1.0;
  std::complex<double> qn = 1.0;
  for (int n = 1; n <= terms; ++n) {
    qn *= q;
    prod *= 1.0 - qn;
  }
  EvalResult out;
  out.value = qpow(tau, 1.0 / 24.0) * prod;
  out.terms_used = terms;
  // |prod_{n>T}(1 - q^n) - 1| <= exp(|q|^(T+1)/(1-|q|)) - 1, doubled as a guard
  const double s = std::pow(aq, terms + 1) / (1.0 - aq);
  out.tail_estimate = std::abs(out.value) * 2.0 * std::expm1(s);
  return out;
}

EvalResult eisenstein_eval(int k, const UpperHalfPoint& tau, int radius) {
  if (k < 4 || k % 2 != 0) throw PreconditionError("Eisenstein weight must be even and >= 4");
  if (radius < 1) throw PreconditionError("lattice radius must be >= 1");
  const std::complex<double> t = tau.z();
  EvalResult out;
  // shell-major, then lexicographic in (m, n)
  for (int s = 1; s <= radius; ++s) {
    for (int m = -s; m <= s; ++m) {
      const bool edge = m == -s || m == s;
      for (int n = -s; n <= s; n += edge ? 1 : 2 * s) {
        out.value += std::pow(static_cast<double>(m) * t + static_cast<double>(n), -k);
        ++out.terms_used;
      }
    }
  }
  // min |x tau + y| over the boundary of the unit square
  auto edge_min = [](double a2, double b, double lo, double hi) {
    // min over x in [lo, hi] of a2 x^2 + 2 b x + const, returned as the argmin
    return a2 == 0.0 ? lo : std::clamp(-b / a2, lo, hi);
  };
  const double re = tau.re;
  const double im = tau.im;
  const double norm2 = re * re + im * im;
  double cmin = 1e300;
  for (double sx : {-1.0, 1.0}) {
    const double y = edge_min(1.0, sx * re, -1.0, 1.0);
    cmin = std::min(cmin, std::abs(sx * t + y));
    const double x = edge_min(norm2, sx * re, -1.0, 1.0);
    cmin = std::min(cmin, std::abs(x * t + sx));
  }
  out.tail_estimate = 8.0 * std::pow(cmin, -k) * std::pow(static_cast<double>(radius), 2.0 - k) / (k - 2.0);
  return out;
}

UpperHalfPoint mobius(const IntMatrix& a, const UpperHalfPoint& tau) {
  const std::complex<double> t = tau.z();
  return UpperHalfPoint::from_complex((a.a.get_d() * t + a.b.get_d()) / (a.c.get_d() * t + a.d.get_d()));
}

WeightLawCheck check_weight_law(const Evaluator& f, const IntMatrix& a, double k, std::complex<double> mu,
                                const UpperHalfPoint& tau) {
  if (!a.is_unimodular()) throw NotUnimodular();
  const EvalResult lhs = f(mobius(a, tau));
  const EvalResult rhs = f(tau);
  const std::complex<double> j = a.c.get_d() * tau.z() + a.d.get_d();
  const std::complex<double> factor = mu * std::pow(j, k);
  return {std::abs(lhs.value - factor * rhs.value), lhs.tail_estimate + std::abs(factor) * rhs.tail_estimate};
}

std::complex<double> lift_phi(const Evaluator& f, double k, const MultiplierMap& mu, const RealMatrix& g) {
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> gi = (g.a * i + g.b) / (g.c * i + g.d);
  return f(UpperHalfPoint::from_complex(gi)).value * std::pow(g.c * i + g.d, -k) * std::conj(mu(g));
}

KappaPanel select_kappa(const std::vector<BigRational>& candidates, const std::vector<IntMatrix>& panel,
                        const UpperHalfPoint& tau, double tolerance) {
  KappaPanel out;
  out.tolerance = tolerance;
  const Evaluator eta = [](const UpperHalfPoint& t) { return eta_eval(t, 400); };
  for (const auto& kappa : candidates) {
    bool ok = true;
    for (const auto& m : panel) {
      const double r = check_weight_law(eta, m, 0.5, eta_multiplier_matrix(m, kappa), tau).residual;
      out.rows.push_back({m, kappa, r});
      ok = ok && r < tolerance;
    }
    if (ok) out.accepted.push_back(kappa);
  }
  if (out.accepted.size() == 1) out.selected = out.accepted.front();
  return out;
}

std::vector<IntMatrix> default_kappa_panel() {
  return {IntMatrix::of(1, 0, 1, 1), IntMatrix::of(0, -1, 1, 0), IntMatrix::of(1, -1, 1, 0),
          IntMatrix::of(2, 1, 1, 1), IntMatrix::of(1, 0, 2, 1), IntMatrix::of(2, -1, 3, -1)};
}

std::string format_complex(std::complex<double> z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

std::string format_sci(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace g0wb
