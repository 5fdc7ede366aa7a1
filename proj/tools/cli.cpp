#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "g0wb/braid.hpp"
#include "g0wb/corpus.hpp"
#include "g0wb/hauptmodul.hpp"
#include "g0wb/modeq.hpp"
#include "g0wb/numeric.hpp"
#include "g0wb/report.hpp"

namespace g0wb::cli {

std::string CommandResult::output() const {
  std::string out = report;
  if (!out.empty() && out.back() != '\n') out += '\n';
  return out + "---\n" + machine_block;
}

namespace {

// File problems surface as this so they map to exit code 3.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string resolve(const std::string& path, const std::string& subdir = "") {
  if (std::filesystem::exists(path)) return path;
  const std::string base = default_data_dir() + (subdir.empty() ? "" : "/" + subdir);
  for (const std::string& cand : {base + "/" + path, base + "/" + path + ".tbl"})
    if (std::filesystem::exists(cand)) return cand;
  throw DataError("cannot open " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(resolve(path), std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DataError("cannot write " + path);
}

LabeledSeries load_series(const std::string& path) {
  try {
    return parse_qexp_string(read_file(path));
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

PuiseuxSeries load_moonshine(const std::string& path) {
  LabeledSeries s = load_series(path);
  if (!s.series.is_moonshine_shape()) throw DataError(path + ": series is not of the shape q^-1 + O(q)");
  return s.series;
}

ModularPolynomial load_mpoly(const std::string& path) {
  try {
    return parse_mpoly_string(read_file(path));
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<std::int64_t> parse_orders(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size() || v < 2) throw CLI::ValidationError("--orders", "expected integers > 1");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("--orders", "expected at least one order");
  return out;
}

CommandResult from(const RenderedReport& r, int code) { return {code, r.text(), r.machine_block()}; }

CommandResult kv(std::string text, const std::vector<std::pair<std::string, std::string>>& pairs, int code = kOk) {
  RenderedReport r;
  r.machine = pairs;
  return {code, std::move(text), r.machine_block()};
}

int code_for(VerificationStatus s) {
  switch (s) {
    case VerificationStatus::consistent:
      return kOk;
    case VerificationStatus::inconsistent:
      return kFailed;
    case VerificationStatus::insufficient_data:
      return kData;
  }
  return kData;
}

std::string series_text(const PuiseuxSeries& s) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [n, c] : s.terms()) {
    out << (first ? "" : " + ") << "(" << c.to_literal() << ")q^" << n;
    if (s.denom() != 1) out << "/" << s.denom();
    first = false;
  }
  if (first) out << "0";
  out << " + O(q^" << s.trunc() + 1;
  if (s.denom() != 1) out << "/" << s.denom();
  out << ")";
  return out.str();
}

std::string poly_in_x(const std::vector<CyclotomicNumber>& p) {
  ModularPolynomial m(2, 1);
  for (std::size_t i = 0; i < p.size(); ++i) m.set(static_cast<std::int64_t>(i), 0, p[i]);
  return m.to_string();
}

struct Options {
  std::string series, modpoly, out, square, matrix, tau, flavor = "gamma0", word, group, start, orders;
  std::string kappa = "1/4";
  std::int64_t order = 0, target = 0, k_max = 0, prime = 0, level = 0, conductor = 0, k = 0, radius = 0;
  int terms = 200;
  bool generalised = false, express = false, law = false;
};

ModEqOptions modeq_options(const Options& o) {
  ModEqOptions m;
  m.generalised = o.generalised;
  if (o.conductor > 0) m.conductor = o.conductor;
  return m;
}

CommandResult cmd_modpoly(const Options& o) {
  const PuiseuxSeries h = load_moonshine(o.series);
  const ModEqOptions mo = modeq_options(o);
  const ModularPolynomial f = build_modular_polynomial(h, o.order, mo);
  const std::string text = emit_mpoly(f);
  if (!o.out.empty()) write_file(o.out, text);
  const bool sym = symmetry_check(f, mo);
  return kv("== F_" + std::to_string(o.order) + " ==\n" + f.to_string() + "\n== mpoly ==\n" + text,
            {{"order", std::to_string(f.order())},
             {"conductor", std::to_string(f.conductor())},
             {"degx", std::to_string(f.degx())},
             {"degy", std::to_string(f.degy())},
             {"symmetric", sym ? "true" : "false"},
             {"terms", std::to_string(f.coeffs().size())}});
}

CommandResult cmd_verify(const Options& o) {
  const PuiseuxSeries h = load_moonshine(o.series);
  const ModularPolynomial f = load_mpoly(o.modpoly);
  const VerificationReport r = verify_modular_equation(h, f, o.order, modeq_options(o));
  return from(render(r), code_for(r.status));
}

CommandResult cmd_classify(const Options& o) {
  const PuiseuxSeries h = load_moonshine(o.series);
  const Classification c = classify(h, parse_orders(o.orders), modeq_options(o));
  const int code = c.verdict == Verdict::inconsistent ? kFailed : c.verdict == Verdict::undetermined ? kData : kOk;
  return from(render(c), code);
}

CommandResult cmd_bootstrap(const Options& o) {
  const LabeledSeries seed = load_series(o.series);
  const ModularPolynomial f = load_mpoly(o.modpoly);
  const PuiseuxSeries h = bootstrap_extend(seed.series, f, o.order, o.target, modeq_options(o));
  const std::string text = emit_qexp(seed.meta.label, h);
  if (!o.out.empty()) write_file(o.out, text);
  return kv("== extended series ==\n" + text,
            {{"status", "extended"}, {"trunc", std::to_string(h.trunc())}, {"seed_trunc", std::to_string(seed.series.trunc())}});
}

CommandResult cmd_replicate(const Options& o) {
  const PuiseuxSeries a = load_series(o.series).series;
  const PuiseuxSeries b = load_series(o.square).series;
  std::string text = "== replication c_{4k+2}(g) = c_{2k+2}(g^2) + sum_j c_j(g^2) c_{2k+1-j}(g^2) ==\n";
  std::string failed;
  for (std::int64_t k = 1; k <= o.k_max; ++k) {
    const bool ok = check_replication(a, b, k);
    text += "k=" + std::to_string(k) + " " + (ok ? "holds" : "FAILS") + "\n";
    if (!ok) failed += (failed.empty() ? "" : ",") + std::to_string(k);
  }
  return kv(text, {{"verdict", failed.empty() ? "holds" : "fails"}, {"k_max", std::to_string(o.k_max)},
                   {"failed", failed.empty() ? "none" : failed}},
            failed.empty() ? kOk : kFailed);
}

CommandResult cmd_avg(const Options& o) {
  const PuiseuxSeries f = load_series(o.series).series;
  const PuiseuxSeries s = average_sum(f, o.prime);
  std::string text = "== s_f^(" + std::to_string(o.prime) + ") ==\n" + series_text(s) + "\n";
  std::vector<std::pair<std::string, std::string>> m{{"prime", std::to_string(o.prime)},
                                                     {"trunc", std::to_string(s.trunc())}};
  if (o.express) {
    const std::string p = poly_in_x(express_in_generator(s, f));
    text += "== as a polynomial in x = f ==\n" + p + "\n";
    m.emplace_back("polynomial", p);
  }
  return kv(text, m);
}

CommandResult cmd_member(const Options& o) {
  const IntMatrix a = IntMatrix::parse(o.matrix);
  const Flavor fl = parse_flavor(o.flavor);
  const bool in = congruence_membership(a, o.level, fl);
  return kv(a.to_string() + (in ? " is in " : " is not in ") + to_string(fl) + "(" + std::to_string(o.level) + ")\n",
            {{"member", in ? "true" : "false"}, {"flavor", to_string(fl)}, {"level", std::to_string(o.level)}});
}

CommandResult cmd_eval(const Options& o) {
  const PuiseuxSeries h = load_series(o.series).series;
  const EvalResult r = eval_series(h, UpperHalfPoint::parse(o.tau));
  return kv("value " + format_complex(r.value) + "\ntail estimate " + format_sci(r.tail_estimate) + "\n",
            {{"value", format_complex(r.value)}, {"tail", format_sci(r.tail_estimate)},
             {"terms", std::to_string(r.terms_used)}});
}

std::complex<double> eta_mu(const IntMatrix& a, const BigRational& kappa) {
  if (a.c == 0 && a.a == 1 && a.d == 1) {
    return std::polar(1.0, std::acos(-1.0) * a.b.get_d() / 12.0);
  }
  return eta_multiplier_matrix(a, kappa);
}

CommandResult law_result(const std::string& title, const IntMatrix& a, const WeightLawCheck& w, double floor_tol) {
  const double tol = std::max(floor_tol, w.combined_tail);
  const ResidualPanel p{title, {{a.to_string(), w.residual, tol}}, ""};
  RenderedReport r = render(p);
  r.machine.emplace_back("tolerance", format_sci(tol));
  return from(r, w.residual < tol ? kOk : kFailed);
}

CommandResult cmd_eta(const Options& o) {
  const UpperHalfPoint tau = UpperHalfPoint::parse(o.tau);
  if (!o.law) {
    const EvalResult r = eta_eval(tau, o.terms);
    return kv("eta " + format_complex(r.value) + "\ntail estimate " + format_sci(r.tail_estimate) + "\n",
              {{"value", format_complex(r.value)}, {"tail", format_sci(r.tail_estimate)},
               {"terms", std::to_string(r.terms_used)}});
  }
  const IntMatrix a = IntMatrix::parse(o.matrix);
  const BigRational kappa = parse_rational(o.kappa);
  const int terms = o.terms;
  const Evaluator eta = [terms](const UpperHalfPoint& t) { return eta_eval(t, terms); };
  return law_result("eta law at " + a.to_string() + " kappa=" + format_rational(kappa), a,
                    check_weight_law(eta, a, 0.5, eta_mu(a, kappa), tau), 1e-8);
}

CommandResult cmd_eisenstein(const Options& o) {
  const UpperHalfPoint tau = UpperHalfPoint::parse(o.tau);
  const int k = static_cast<int>(o.k);
  const int radius = static_cast<int>(o.radius);
  if (!o.law) {
    const EvalResult r = eisenstein_eval(k, tau, radius);
    return kv("G_" + std::to_string(k) + " " + format_complex(r.value) + "\ntail estimate " + format_sci(r.tail_estimate) + "\n",
              {{"value", format_complex(r.value)}, {"tail", format_sci(r.tail_estimate)},
               {"terms", std::to_string(r.terms_used)}});
  }
  const IntMatrix a = IntMatrix::parse(o.matrix);
  const Evaluator g = [k, radius](const UpperHalfPoint& t) { return eisenstein_eval(k, t, radius); };
  return law_result("weight-" + std::to_string(k) + " law at " + a.to_string(), a,
                    check_weight_law(g, a, static_cast<double>(k), 1.0, tau), 1e-12);
}

CommandResult cmd_braid(const std::string& what, const Options& o) {
  const BraidWord w = BraidWord::parse(o.word);
  const std::string wt = w.empty() ? "(empty)" : w.to_string();
  if (what == "degree") return kv("degree of " + wt + ": " + std::to_string(degree(w)) + "\n", {{"degree", std::to_string(degree(w))}});
  if (what == "burau") {
    const IntMatrix m = burau(w);
    return kv("burau(" + wt + ") = " + m.to_string() + "\n", {{"matrix", m.to_string()}});
  }
  if (what == "multiplier") {
    const std::int64_t e = mod_floor(degree(w), 24);
    const std::string lit = braid_multiplier(w).to_literal();
    return kv("multiplier of " + wt + ": xi_24^" + std::to_string(e) + " = " + lit + "\n",
              {{"exponent", std::to_string(e)}, {"value", lit}});
  }
  const ExtendedElement x = lift_braid(w);
  return kv("lift(" + wt + ") = (" + x.a.to_string() + ", " + std::to_string(x.n) + ")\n",
            {{"matrix", x.a.to_string()}, {"n", std::to_string(x.n)},
             {"identity", x.a == IntMatrix::identity() ? "true" : "false"}});
}

CommandResult cmd_quilt(const Options& o) {
  const GroupTable g = [&] {
    try {
      return GroupTable::parse_string(read_file(resolve(o.group, "groups")));
    } catch (const ParseError& e) {
      throw DataError(o.group + ": " + e.what());
    } catch (const ShapeError& e) {
      throw DataError(o.group + ": " + e.what());
    }
  }();
  const auto comma = o.start.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--start", "expected g,h");
  const int a = g.index_of(o.start.substr(0, comma));
  const int b = g.index_of(o.start.substr(comma + 1));
  if (a < 0 || b < 0) throw CLI::ValidationError("--start", "unknown group element");
  const auto orbit = quilt_orbit({a, b}, g);
  std::string text = "orbit of (" + o.start + ") under s1, s2: " + std::to_string(orbit.size()) + " pairs\n";
  for (const auto& [x, y] : orbit) text += "  (" + g.labels()[x] + ", " + g.labels()[y] + ")\n";
  return kv(text, {{"orbit_size", std::to_string(orbit.size())}, {"group_order", std::to_string(g.order())},
                   {"orbit_count", std::to_string(quilt_orbits(g).size())}});
}

CommandResult error_result(int code, const std::string& kind, const std::string& msg) {
  return kv("error: " + msg + "\n", {{"error", kind}}, code);
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"g0wb: modular equations, Hauptmodul classification and B3 tools"};
  app.require_subcommand(1);
  Options o;

  auto* modpoly = app.add_subcommand("modpoly", "Build the modular polynomial of a series");
  modpoly->add_option("--series", o.series)->required();
  modpoly->add_option("--order", o.order)->required()->check(CLI::Range(2, 1000));
  modpoly->add_option("--out", o.out);
  modpoly->add_flag("--generalised", o.generalised);
  modpoly->add_option("--conductor", o.conductor)->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Verify a modular polynomial against a series");
  verify->add_option("--series", o.series)->required();
  verify->add_option("--modpoly", o.modpoly)->required();
  verify->add_option("--order", o.order)->required()->check(CLI::Range(2, 1000));
  verify->add_flag("--generalised", o.generalised);
  verify->add_option("--conductor", o.conductor)->check(CLI::PositiveNumber);

  auto* cls = app.add_subcommand("classify", "Fiction detection and multi-order testing");
  cls->add_option("--series", o.series)->required();
  cls->add_option("--orders", o.orders)->required();
  cls->add_flag("--generalised", o.generalised);
  cls->add_option("--conductor", o.conductor)->check(CLI::PositiveNumber);

  auto* boot = app.add_subcommand("bootstrap", "Extend a series through a modular polynomial");
  boot->add_option("--series", o.series)->required();
  boot->add_option("--modpoly", o.modpoly)->required();
  boot->add_option("--order", o.order)->required()->check(CLI::Range(2, 1000));
  boot->add_option("--target", o.target)->required()->check(CLI::Range(0, 100000));
  boot->add_option("--out", o.out);
  boot->add_flag("--generalised", o.generalised);
  boot->add_option("--conductor", o.conductor)->check(CLI::PositiveNumber);

  auto* rep = app.add_subcommand("replicate", "Check replication identities");
  rep->add_option("--series", o.series)->required();
  rep->add_option("--square", o.square)->required();
  rep->add_option("--k-max", o.k_max)->required()->check(CLI::Range(1, 100000));

  auto* avg = app.add_subcommand("avg", "Averaging operator f(p tau) + sum_k f((tau + k)/p)");
  avg->add_option("--series", o.series)->required();
  avg->add_option("--prime", o.prime)->required()->check(CLI::Range(2, 100000));
  avg->add_flag("--express", o.express);

  auto* member = app.add_subcommand("member", "Congruence subgroup membership");
  member->add_option("--matrix", o.matrix)->required();
  member->add_option("--level", o.level)->required()->check(CLI::PositiveNumber);
  member->add_option("--flavor", o.flavor)->check(CLI::IsMember({"full", "gamma0", "gamma1"}));

  auto* ev = app.add_subcommand("eval", "Evaluate a series at tau");
  ev->add_option("--series", o.series)->required();
  ev->add_option("--tau", o.tau)->required();

  auto* eta = app.add_subcommand("eta", "Dedekind eta and its transformation law");
  eta->add_option("--tau", o.tau)->required();
  eta->add_flag("--law", o.law);
  eta->add_option("--matrix", o.matrix);
  eta->add_option("--kappa", o.kappa);
  eta->add_option("--terms", o.terms)->check(CLI::Range(1, 100000));

  auto* eis = app.add_subcommand("eisenstein", "Raw Eisenstein lattice sum and its weight law");
  eis->add_option("--k", o.k)->required()->check(CLI::Range(4, 200));
  eis->add_option("--tau", o.tau)->required();
  eis->add_option("--radius", o.radius)->required()->check(CLI::Range(1, 100000));
  eis->add_flag("--law", o.law);
  eis->add_option("--matrix", o.matrix);

  auto* braid = app.add_subcommand("braid", "B3 words");
  braid->require_subcommand(1);
  std::string braid_what;
  for (const char* name : {"burau", "degree", "multiplier", "lift"}) {
    auto* s = braid->add_subcommand(name);
    s->add_option("--word", o.word)->required();
    s->callback([&braid_what, name] { braid_what = name; });
  }

  auto* quilt = app.add_subcommand("quilt", "Orbit of (g, h) under the quilt action");
  quilt->add_option("--group", o.group)->required();
  quilt->add_option("--start", o.start)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if ((eta->parsed() || eis->parsed()) && o.law && o.matrix.empty()) {
      throw CLI::RequiredError("--matrix is required with --law");
    }
    if (modpoly->parsed()) return cmd_modpoly(o);
    if (verify->parsed()) return cmd_verify(o);
    if (cls->parsed()) return cmd_classify(o);
    if (boot->parsed()) return cmd_bootstrap(o);
    if (rep->parsed()) return cmd_replicate(o);
    if (avg->parsed()) return cmd_avg(o);
    if (member->parsed()) return cmd_member(o);
    if (ev->parsed()) return cmd_eval(o);
    if (eta->parsed()) return cmd_eta(o);
    if (eis->parsed()) return cmd_eisenstein(o);
    if (braid->parsed()) return cmd_braid(braid_what, o);
    if (quilt->parsed()) return cmd_quilt(o);
    return error_result(kUsage, "usage", "no subcommand");
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return error_result(kUsage, "usage", e.what());
  } catch (const DataError& e) {
    return error_result(kData, "data", e.what());
  } catch (const CorruptCorpus& e) {
    return error_result(kData, "data", e.what());
  } catch (const InsufficientTruncation& e) {
    auto r = error_result(kData, "insufficient-truncation", e.what());
    if (e.required()) r.machine_block += "required_trunc=" + std::to_string(*e.required()) + "\n";
    return r;
  } catch (const InsufficientSeed& e) {
    return error_result(kData, "insufficient-seed", e.what());
  } catch (const LocatedFailure& e) {
    auto r = error_result(kFailed, dynamic_cast<const NotInvariant*>(&e) ? "not-invariant" : "express-failure", e.what());
    r.machine_block += "exponent=" + std::to_string(e.exponent_num()) +
                       (e.exponent_den() == 1 ? "" : "/" + std::to_string(e.exponent_den())) + "\nresidual=" + e.actual() + "\n";
    return r;
  } catch (const InconsistentSeries& e) {
    return error_result(kFailed, "inconsistent", e.what());
  } catch (const BootstrapStalled& e) {
    return error_result(kFailed, "stalled", e.what());
  } catch (const NonConvergent& e) {
    return error_result(kFailed, "non-convergent", e.what());
  } catch (const Error& e) {
    // remaining library errors are bad arguments
    return error_result(kUsage, "usage", e.what());
  }
}

}  // namespace g0wb::cli
