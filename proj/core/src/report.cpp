#include "g0wb/report.hpp"

#include <sstream>

namespace g0wb {

std::string RenderedReport::text() const {
  std::ostringstream out;
  for (const auto& [title, body] : sections) {
    out << "== " << title << " ==\n";
    if (!body.empty()) out << body << (body.back() == '\n' ? "" : "\n");
  }
  for (std::size_t i = 0; i < footnotes.size(); ++i) out << "[" << i + 1 << "] " << footnotes[i] << '\n';
  return out.str();
}

std::string RenderedReport::machine_block() const {
  std::string out;
  for (const auto& [k, v] : machine) out += k + "=" + v + "\n";
  return out;
}

std::string RenderedReport::full() const { return text() + "---\n" + machine_block(); }

std::string fiction_formula(const CyclotomicNumber& xi) {
  if (xi.is_zero()) return "q^{-1}";
  if (xi.is_one()) return "q^{-1}+q";
  if ((-xi).is_one()) return "q^{-1}-q";
  return "q^{-1}+(" + xi.to_literal() + ")q";
}

namespace {

std::string status_title(const VerificationReport& r) {
  switch (r.status) {
    case VerificationStatus::consistent:
      return "CONSISTENT to q^" + std::to_string(r.verified_to);
    case VerificationStatus::inconsistent:
      return "INCONSISTENT at q^" + format_rational(r.first_failure->exponent);
    case VerificationStatus::insufficient_data:
      return "INSUFFICIENT DATA";
  }
  return "";
}

// 1-based footnote number; identical notes share one number.
std::size_t cite(std::vector<std::string>& notes, const std::string& text) {
  for (std::size_t i = 0; i < notes.size(); ++i)
    if (notes[i] == text) return i + 1;
  notes.push_back(text);
  return notes.size();
}

std::string report_body(const VerificationReport& r, std::vector<std::string>& notes) {
  std::ostringstream b;
  b << "order: " << r.order << '\n';
  b << "verified through: q^" << r.verified_to << " ["
    << cite(notes, "every coset coefficient of F_m(h(tau), Y) was compared exactly up to this exponent") << "]\n";
  if (r.first_failure) {
    const auto& f = *r.first_failure;
    b << "first failure: coefficient of q^" << format_rational(f.exponent) << " in Y^" << f.y_power << '\n';
    b << "  expected: " << f.expected.to_literal() << '\n';
    b << "  actual:   " << f.actual.to_literal() << '\n';
  }
  if (r.required_trunc) {
    b << "advisory: supply the series through q^" << *r.required_trunc << " for a conclusive test at order "
      << r.order << " ["
      << cite(notes, "required truncation psi(m)*m + psi(m) + 8, from the coset stretch and pole-killing depth")
      << "]\n";
  }
  if (!r.notes.empty()) b << "note: " << r.notes << '\n';
  return b.str();
}

}  // namespace

RenderedReport render(const VerificationReport& r) {
  RenderedReport out;
  out.sections.emplace_back(status_title(r), report_body(r, out.footnotes));
  out.machine.emplace_back("status", to_string(r.status));
  out.machine.emplace_back("order", std::to_string(r.order));
  out.machine.emplace_back("verified_to", std::to_string(r.verified_to));
  if (r.first_failure) {
    out.machine.emplace_back("first_failure_exponent", format_rational(r.first_failure->exponent));
    out.machine.emplace_back("first_failure_y_power", std::to_string(r.first_failure->y_power));
    out.machine.emplace_back("first_failure_expected", r.first_failure->expected.to_literal());
    out.machine.emplace_back("first_failure_actual", r.first_failure->actual.to_literal());
  }
  if (r.required_trunc) out.machine.emplace_back("required_trunc", std::to_string(*r.required_trunc));
  return out;
}

RenderedReport render(const Classification& c) {
  RenderedReport out;
  std::ostringstream head;
  if (c.verdict == Verdict::fiction) {
    head << "modular fiction: " << fiction_formula(*c.fiction_xi) << '\n';
  } else if (c.verdict == Verdict::hauptmodul_candidate) {
    head << "hauptmodul candidate to the tested depth [1]\n";
    out.footnotes.push_back("only the listed orders were tested; the invariance group itself is not computed");
  } else {
    head << to_string(c.verdict) << '\n';
  }
  if (!c.notes.empty()) head << "note: " << c.notes << '\n';
  out.sections.emplace_back("verdict: " + to_string(c.verdict), head.str());

  std::string orders;
  std::string required;
  std::optional<std::int64_t> depth;
  for (const auto& [m, rep] : c.orders_tested) {
    out.sections.emplace_back("order " + std::to_string(m) + ": " + status_title(rep), report_body(rep, out.footnotes));
    orders += (orders.empty() ? "" : ",") + std::to_string(m);
    if (rep.required_trunc) required += (required.empty() ? "" : ",") + std::to_string(*rep.required_trunc);
    if (!depth || rep.verified_to < *depth) depth = rep.verified_to;
  }
  out.machine.emplace_back("verdict", to_string(c.verdict));
  out.machine.emplace_back("xi", c.fiction_xi ? c.fiction_xi->to_literal() : "none");
  out.machine.emplace_back("orders", orders.empty() ? "none" : orders);
  out.machine.emplace_back("verified_to", depth ? std::to_string(*depth) : "none");
  if (!required.empty()) out.machine.emplace_back("required_trunc", required);
  return out;
}

RenderedReport render(const ResidualPanel& p) {
  RenderedReport out;
  std::ostringstream b;
  bool all = true;
  for (const auto& row : p.rows) {
    const bool ok = row.residual < row.tolerance;
    all = all && ok;
    b << row.label << "  residual " << format_sci(row.residual) << "  tolerance " << format_sci(row.tolerance) << "  "
      << (ok ? "pass" : "FAIL") << '\n';
  }
  if (!p.note.empty()) b << "note: " << p.note << '\n';
  out.sections.emplace_back(p.title, b.str());
  out.machine.emplace_back("verdict", all ? "pass" : "fail");
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    out.machine.emplace_back("residual_" + std::to_string(i), format_sci(p.rows[i].residual));
  return out;
}

RenderedReport render(const KappaPanel& p) {
  ResidualPanel rp{"eta multiplier constant panel", {}, ""};
  for (const auto& r : p.rows)
    rp.rows.push_back({"kappa=" + format_rational(r.kappa) + " " + r.matrix.to_string(), r.residual, p.tolerance});
  std::string acc;
  for (const auto& k : p.accepted) acc += (acc.empty() ? "" : ",") + format_rational(k);
  rp.note = p.selected ? "selected kappa = " + format_rational(*p.selected) : "no unique kappa passes";
  RenderedReport out = render(rp);
  out.machine.emplace_back("accepted", acc.empty() ? "none" : acc);
  out.machine.emplace_back("kappa", p.selected ? format_rational(*p.selected) : "none");
  out.footnotes.push_back("residual |eta(A tau) - mu(A) (c tau + d)^(1/2) eta(tau)| with 400 product factors");
  return out;
}

}  // namespace g0wb
