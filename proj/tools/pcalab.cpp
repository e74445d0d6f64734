// pcalab: command-line front end. Every command prints one record per check
// (json-lines by default) and exits with
//   0  every requested contract held (or was vacuous)
//   1  a contract was violated or could not be confirmed
//   2  usage error
//   3  misuse: a precondition of the construction failed

#include "pcalab/pcalab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace pcalab;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kMisuse = 3 };

struct Settings {
  std::uint64_t fuel = 10'000;
  std::uint64_t budget = 1'000;
  std::uint64_t sample = 20;
  std::uint64_t seed = 1;
  std::string format = "json-lines";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Reporter {
 public:
  Reporter(std::string command, const Settings& s) : command_(std::move(command)), s_(s) {}

  void emit(json record) {
    json out = {{"command", command_}};
    out.update(record);
    if (s_.format == "text") {
      std::string line;
      for (auto it = out.begin(); it != out.end(); ++it) {
        if (!line.empty()) line += ' ';
        line += it.key() + '=' + (it->is_string() ? it->get<std::string>() : it->dump());
      }
      std::cout << line << '\n';
    } else {
      std::cout << out.dump() << '\n';
    }
  }

  // A check whose outcome decides the exit status.
  void check(json record, bool held) {
    ++checks_;
    if (!held) ++failed_;
    record["held"] = held;
    emit(std::move(record));
  }

  int finish(int misuse = kOk) {
    int code = misuse != kOk ? misuse : failed_ > 0 ? kViolation : kOk;
    emit({{"summary", {{"checks", checks_}, {"failed", failed_}}}, {"exit", code}});
    return code;
  }

 private:
  std::string command_;
  const Settings& s_;
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
};

std::string data_dir() {
  if (const char* d = std::getenv("PCALAB_DATA_DIR")) return d;
  return PCALAB_DATA_DIR;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A path, or the name of a file shipped under data/<dir>/<name><ext>.
std::string resolve(const std::string& what, const std::string& dir, const std::string& ext) {
  if (std::ifstream(what)) return what;
  std::string shipped = data_dir() + "/" + dir + "/" + what + ext;
  if (std::ifstream(shipped)) return shipped;
  throw UsageError("no file or built-in " + dir + " named '" + what + "'");
}

// A decimal code, or a shipped program name.
Code program_code(const std::string& what) {
  if (!what.empty() && std::all_of(what.begin(), what.end(), [](char c) { return std::isdigit(c); })) {
    return parse_natural(what);
  }
  std::istringstream in(read_file(resolve(what, "programs", ".code")));
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    return parse_natural(line);
  }
  throw UsageError("program file for '" + what + "' holds no code");
}

std::string str(const Natural& n) { return n.str(); }

json partial_json(const PartialValue& p) {
  if (p.defined()) return {{"defined", true}, {"value", str(p.value())}};
  return {{"defined", false}};
}

std::string slug(std::string name) {
  for (char& c : name) {
    if (c == ' ') c = '-';
  }
  return name;
}

Code transform_code(const std::string& what) {
  for (const auto& t : designed_transforms()) {
    if (slug(t.name) == what) return t.code;
  }
  if (!what.empty() && std::all_of(what.begin(), what.end(), [](char c) { return std::isdigit(c); })) {
    return parse_natural(what);
  }
  throw UsageError("unknown transform '" + what + "'");
}

// Binary maps h(<x, n>) for the parameter form.
Code binary_map_code(const std::string& what) {
  std::map<std::string, Term> env{{"Kc", num(encode(Term::k()))}, {"Zc", num(numeral_code(0))}};
  if (what == "first") return encode(compile_lambda("\\z. fst z"));
  if (what == "pad-1") return encode(compile_lambda("\\z. capp (capp Kc (fst z)) Zc", env));
  if (what == "const-n") return encode(compile_lambda("\\z. capp Kc (cnum (snd z))", env));
  throw UsageError("unknown binary map '" + what + "' (first, pad-1, const-n)");
}

// --- commands ---------------------------------------------------------------

int cmd_eval(const Settings& s, const std::string& src) {
  Reporter r("eval", s);
  Term t = parse_term(src);
  EvalResult res = evaluate(t, Fuel{s.fuel});
  json rec = {{"term", print(t)}, {"fuel", s.fuel}, {"steps", res.steps}};
  if (res.is_value()) {
    rec["result"] = "value";
    rec["value"] = print(res.value());
  } else if (res.is_stuck()) {
    rec["result"] = "stuck";
    rec["redex"] = print(std::get<StuckResult>(res.outcome).redex);
  } else {
    rec["result"] = "out-of-fuel";
  }
  if (s.format == "text") {
    std::cout << (res.is_value() ? "Value " + print(res.value()) : res.is_stuck() ? "Stuck" : "OutOfFuel") << '\n';
    return kOk;
  }
  r.emit(rec);
  return kOk;
}

int cmd_encode(const Settings& s, const std::string& src) {
  Term t = parse_term(src);
  Reporter("encode", s).emit({{"term", print(t)}, {"code", str(encode(t))}});
  return kOk;
}

int cmd_decode(const Settings& s, const std::string& code) {
  Code c = parse_natural(code);
  Reporter("decode", s).emit({{"code", str(c)}, {"term", print(decode(c))}});
  return kOk;
}

int cmd_compile(const Settings& s, const std::string& src, bool eta) {
  Combinators scheme;
  scheme.eta = eta;
  Term t = compile_lambda(src, {}, scheme);
  Reporter("compile-lambda", s).emit({{"source", src}, {"term", print(t)}, {"code", str(encode(t))}});
  return kOk;
}

int cmd_smn(const Settings& s, const std::string& e_text, const std::string& a_text) {
  Reporter r("smn", s);
  Code e = program_code(e_text);
  Natural a = parse_natural(a_text);
  Code c = smn(e, a);
  r.emit({{"e", str(e)}, {"a", str(a)}, {"code", str(c)}});
  for (std::uint64_t x = 0; x <= s.sample; ++x) {
    PartialValue lhs = phi(c, x, Fuel{s.fuel});
    PartialValue rhs = phi2(e, a, x, Fuel{s.fuel});
    r.check({{"check", "smn"}, {"x", x}, {"smn", partial_json(lhs)}, {"curried", partial_json(rhs)}, {"fuel", s.fuel}},
            lhs == rhs);
  }
  return r.finish();
}

int cmd_quine(const Settings& s, const std::string& style) {
  Reporter r("quine", s);
  QuineStyle q;
  if (style == "output") {
    q = QuineStyle::OutputSelf;
  } else if (style == "apply") {
    q = QuineStyle::ApplySelf;
  } else {
    throw UsageError("--style must be output or apply");
  }
  Code n = quine(q);
  r.emit({{"style", style}, {"code", str(n)}, {"provenance", "fixed point of the builder by the fixpoint operator"}});
  for (std::uint64_t x = 0; x <= s.sample; ++x) {
    EvalResult run = evaluate(Term::app(decode(n), Term::numeral(x)), Fuel{s.fuel});
    json rec = {{"check", style == "output" ? "phi(n, x) = n" : "phi(n, x) = phi_x(n)"}, {"x", x}, {"steps", run.steps}};
    if (q == QuineStyle::OutputSelf) {
      r.check(rec, run.numeral() == std::optional<Natural>(n));
    } else {
      EvalResult direct = evaluate(Term::app(decode(Natural(x)), Term::numeral(n)), Fuel{s.fuel});
      r.check(rec, run.numeral() == direct.numeral());
    }
  }
  return r.finish();
}

int cmd_fixpoint(const Settings& s, const std::string& name) {
  Reporter r("fixpoint", s);
  Code f = transform_code(name);
  FixpointWitness w = ershov_fixpoint(phi_numbering(), f, s.budget);
  r.check({{"check", "f(n) ~ n"},
           {"transform", name},
           {"point", str(w.point)},
           {"verdict", verdict_name(w.verdict)},
           {"budget", w.check_budget},
           {"provenance", "equiv_bounded on inputs 0..20"}},
          w.verdict == Verdict::Yes);
  return r.finish();
}

int cmd_fixpoint_param(const Settings& s, const std::string& h_name, const std::string& route) {
  Reporter r("fixpoint-param", s);
  Numbering gamma = phi_numbering();
  Code h = binary_map_code(h_name);
  TotalCodeMap f;
  if (route == "direct") {
    f = ershov_param(gamma, h);
  } else if (route == "abs") {
    f = abs_from_param(gamma, ershov_abs(gamma), h);
  } else {
    throw UsageError("--route must be direct or abs");
  }
  r.emit({{"h", h_name}, {"route", route}, {"map_code_bits", bit_length(f.code)}});
  for (std::uint64_t n = 0; n <= s.sample; ++n) {
    Code point = f(n);
    PartialValue image = phi(h, pair_codes(point, n), Fuel{s.budget});
    Verdict v = image.defined() ? gamma.equiv_bounded(point, image.value(), s.budget) : Verdict::Unknown;
    r.check({{"check", "f(n) ~ h(f(n), n)"}, {"n", n}, {"verdict", verdict_name(v)}, {"budget", s.budget}},
            v == Verdict::Yes);
  }
  return r.finish();
}

// Clause checks shared by adn and adn-uniform.
void adn_clauses(Reporter& r, const Settings& s, const Numbering& gamma, const TotalCodeMap& f, const Code& delta,
                 const Code& psi, const Natural& n, json label, std::uint64_t audit_fuel) {
  Code point = f(n);
  PartialValue psi_n = phi(psi, n, Fuel{s.fuel});
  if (psi_n.defined()) {
    Verdict v = gamma.equiv_bounded(point, psi_n.value(), s.budget);
    label["check"] = "f(n) ~ psi(n)";
    label["verdict"] = verdict_name(v);
    label["budget"] = s.budget;
    r.check(label, v == Verdict::Yes);
    return;
  }
  PartialValue d = phi(delta, point, Fuel{audit_fuel});
  AvoidanceAudit audit = audit_avoidance(delta, psi, point, n, audit_fuel);
  label["check"] = "delta(f(n)) diverges";
  label["psi_fuel"] = s.fuel;
  label["divergent_within"] = d.defined() ? json(nullptr) : json(audit_fuel);
  label["audit"] = {{"race_found", audit.race_found},
                    {"race_started_at", audit.race_started_at},
                    {"psi_cycles", audit.psi_cycles},
                    {"self_contest", audit.self_contest}};
  r.check(label, !d.defined() && audit.proves_divergence());
}

int cmd_adn(const Settings& s, const std::string& psi_name, const std::string& delta_name, std::uint64_t audit_fuel) {
  Reporter r("adn", s);
  Numbering gamma = phi_numbering();
  Code psi = program_code(psi_name);
  Code delta = program_code(delta_name);
  TotalCodeMap f;
  try {
    f = adn_totalize(gamma, delta, psi);
  } catch (const MisuseError& e) {
    r.emit({{"misuse", e.what()}, {"delta", delta_name}});
    return r.finish(kMisuse);
  }
  r.emit({{"psi", psi_name}, {"delta", delta_name}, {"map_code_bits", bit_length(f.code)}});
  for (std::uint64_t n = 0; n <= s.sample; ++n) adn_clauses(r, s, gamma, f, delta, psi, n, {{"n", n}}, audit_fuel);
  return r.finish();
}

int cmd_adn_uniform(const Settings& s, const std::string& e_name, const std::string& delta_name,
                    std::uint64_t audit_fuel) {
  Reporter r("adn-uniform", s);
  Numbering gamma = phi_numbering();
  Code e = program_code(e_name);
  Code delta = program_code(delta_name);
  TotalCodeMap f;
  try {
    f = adn_uniform(gamma, delta);
  } catch (const MisuseError& err) {
    r.emit({{"misuse", err.what()}, {"delta", delta_name}});
    return r.finish(kMisuse);
  }
  r.emit({{"e", e_name}, {"delta", delta_name}, {"map_code_bits", bit_length(f.code)}});
  for (std::uint64_t n = 0; n <= s.sample; ++n) {
    adn_clauses(r, s, gamma, f, delta, universal_unary_code(), pair_codes(e, n), {{"n", n}}, audit_fuel);
  }
  return r.finish();
}

int cmd_arslanov(const Settings& s, const std::string& table) {
  Reporter r("arslanov", s);
  LimitApprox g = LimitApprox::parse(read_file(resolve(table, "tables", ".txt")));
  ArslanovOptions opt;
  opt.scan = s.budget;
  opt.budget = s.budget;
  ArslanovResult res = arslanov_construct(phi_numbering(), g, opt);
  if (!res.modulus_violations.empty()) {
    for (const auto& v : res.modulus_violations) {
      r.emit({{"diagnostic", "modulus violated"},
              {"x", v.x ? json(str(*v.x)) : json("*")},
              {"settle", v.settle},
              {"changes_at", v.stage}});
    }
    return r.finish(kMisuse);
  }
  for (const auto& e : res.early) {
    r.emit({{"n", str(e.n)}, {"halting_stage", e.halting_stage}, {"modulus", e.modulus}, {"note", "m(f(n)) > s_n"}});
  }
  if (!res.witness) {
    r.check({{"check", "fixed point found"}, {"scanned", res.scanned}, {"budget", s.budget}}, false);
    return r.finish();
  }
  r.check({{"check", "g(f(n)) ~ f(n)"},
           {"n", str(*res.n)},
           {"halting_stage", res.halting_stage},
           {"point_bits", bit_length(res.witness->point)},
           {"verdict", verdict_name(res.witness->verdict)},
           {"budget", s.budget}},
          res.witness->verdict == Verdict::Yes);
  return r.finish();
}

int cmd_k2_nonextend(const Settings& s, const std::string& map, std::size_t depth) {
  Reporter r("k2-nonextend", s);
  PrefixMap psi = map == "psi" ? psi_nonextendable(depth) : PrefixMap::parse(read_file(resolve(map, "prefix", ".txt")));
  ExtensionCheck res = check_no_total_extension(psi, depth);
  if (const auto* nf = std::get_if<NotFound>(&res)) {
    r.check({{"check", "no total extension"}, {"map", map}, {"depth", depth}, {"result", "not-found"},
             {"reason", nf->reason}},
            false);
    return r.finish();
  }
  const auto& w = std::get<ContradictionWitness>(res);
  for (const auto& c : w.candidates) {
    json rec = {{"candidate", {{"prefix_zeros", c.k}, {"first_symbol", c.symbol}}}};
    rec["refuted_by"] = c.refuted_by ? json({{"zeros", c.refuted_by->zeros}, {"forces", c.refuted_by->symbol}})
                                     : json(nullptr);
    r.emit(rec);
  }
  r.check({{"check", "no total extension"},
           {"map", map},
           {"depth", depth},
           {"forces_zero", {{"zeros", w.forces_zero.zeros}, {"symbol", w.forces_zero.symbol}}},
           {"forces_one", {{"zeros", w.forces_one.zeros}, {"symbol", w.forces_one.symbol}}}},
          true);
  return r.finish();
}

int cmd_k2_diag(const Settings& s, const std::string& functional, std::uint64_t value, std::uint64_t at,
                std::uint64_t probe_depth) {
  Reporter r("k2-diag", s);
  FunctionalProbe f;
  if (functional == "constant") {
    f = functionals::constant(value, at);
  } else if (functional == "identity") {
    f = functionals::identity();
  } else {
    throw UsageError("--functional must be constant or identity");
  }
  DiagonalizationResult res = diagonalize_total(f, probe_depth);
  if (const auto* nc = std::get_if<NonCommittal>(&res)) {
    r.emit({{"diagnostic", "functional never committed"}, {"functional", functional}, {"probe_depth", nc->probe_depth}});
    return r.finish(kMisuse);
  }
  const auto& d = std::get<Diagonalization>(res);
  std::string g_text = d.g.to_text();
  r.check({{"check", "(g(fg))(0) != (fg)(0)"},
           {"functional", functional},
           {"committed_at", d.committed_at},
           {"fg_first", d.fg_first},
           {"g_of_fg_first", d.g_of_fg_first},
           {"g", g_text}},
          d.g_of_fg_first != d.fg_first);
  return r.finish();
}

int cmd_check(const Settings& s) {
  Reporter r("check", s);
  CompletenessOptions opt;
  opt.seed = s.seed;
  CompletenessReport rep = check_combinatory_complete(SkPas{}, s.sample, opt);
  r.check({{"check", "combinatory completeness"},
           {"trials", rep.trials},
           {"seed", s.seed},
           {"clause_i_failures", rep.clause_i_failures},
           {"clause_ii_failures", rep.clause_ii_failures}},
          rep.passed());
  std::mt19937_64 rng(s.seed);
  SkPas pas;
  std::size_t proj_fail = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<Term> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(pas.random_element(rng));
    for (std::size_t i = 1; i <= n; ++i) {
      EvalResult got = evaluate(Term::app(tuple(a), projector(n, i)), Fuel{s.fuel});
      if (!got.is_value() || got.value() != a[i - 1]) ++proj_fail;
    }
  }
  r.check({{"check", "projections"}, {"failures", proj_fail}}, proj_fail == 0);
  Term theta = turing_fixpoint();
  std::size_t theta_fail = 0;
  for (std::uint64_t c = 0; c < s.sample; ++c) {
    Term g = Term::app(Term::k(), Term::app(Term::k(), num(c)));
    EvalResult fg = evaluate(Term::app(theta, g), Fuel{s.fuel});
    if (!fg.is_value()) {
      ++theta_fail;
      continue;
    }
    EvalResult lhs = evaluate(Term::app(fg.value(), num(0)), Fuel{s.fuel});
    EvalResult rhs = evaluate(Term::apply(g, fg.value(), num(0)), Fuel{s.fuel});
    if (!lhs.is_value() || !kleene_equal(lhs, rhs) || lhs.value() != num(c)) {
      ++theta_fail;
    }
  }
  r.check({{"check", "fixpoint operator on K c"}, {"failures", theta_fail}}, theta_fail == 0);
  return r.finish();
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  if (const char* env = std::getenv("PCALAB_FUEL")) {
    try {
      s.fuel = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "PCALAB_FUEL must be a natural\n";
      return kUsage;
    }
  }

  CLI::App app{"pcalab: fixed-point constructions over a combinator model of computation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--fuel", s.fuel, "evaluation step budget (default 10000, env PCALAB_FUEL)");
  app.add_option("--budget", s.budget, "budget for equivalence checks and scans")->capture_default_str();
  app.add_option("--sample", s.sample, "inputs or parameters 0..sample to check")->capture_default_str();
  app.add_option("--seed", s.seed, "seed for randomized suites")->capture_default_str();
  app.add_option("--format", s.format, "output format")
      ->check(CLI::IsMember({"json-lines", "text"}))
      ->capture_default_str();

  std::string term, code, e_arg, a_arg, style = "output", transform = "pad-1", h = "pad-1", route = "direct";
  std::string psi = "even-const", delta = "sample", e_name = "even-const", table = "pad1-from-3", map = "psi";
  std::string functional = "constant";
  std::uint64_t audit_fuel = 100'000, value = 0, at = 0, probe_depth = 20;
  std::size_t depth = 6;
  bool eta = false;

  auto* eval = app.add_subcommand("eval", "evaluate a term");
  eval->add_option("term", term, "term in S/K/primitive syntax")->required();
  auto* enc = app.add_subcommand("encode", "code of a closed term");
  enc->add_option("term", term)->required();
  auto* dec = app.add_subcommand("decode", "term of a code");
  dec->add_option("code", code)->required();
  auto* comp = app.add_subcommand("compile-lambda", "bracket-abstract a lambda term");
  comp->add_option("source", term)->required();
  comp->add_flag("--eta", eta, "use the eta rule");
  auto* smn_cmd = app.add_subcommand("smn", "code of (decode e) a, checked against curried application");
  smn_cmd->add_option("e", e_arg, "code or program name")->required();
  smn_cmd->add_option("a", a_arg)->required();
  auto* quine_cmd = app.add_subcommand("quine", "self-reproducing program");
  quine_cmd->add_option("--style", style, "output | apply")->capture_default_str();
  auto* fix = app.add_subcommand("fixpoint", "fixed point of a total transform");
  fix->add_option("--transform", transform, "designed transform name or code")->capture_default_str();
  auto* fixp = app.add_subcommand("fixpoint-param", "fixed points with a parameter");
  fixp->add_option("--map", h, "first | pad-1 | const-n")->capture_default_str();
  fixp->add_option("--route", route, "direct | abs")->capture_default_str();
  auto* adn_cmd = app.add_subcommand("adn", "totalize psi avoiding delta");
  adn_cmd->add_option("--psi", psi, "program name or code")->capture_default_str();
  adn_cmd->add_option("--delta", delta, "program name or code")->capture_default_str();
  adn_cmd->add_option("--audit-fuel", audit_fuel, "fuel for divergence evidence")->capture_default_str();
  auto* adnu = app.add_subcommand("adn-uniform", "uniform avoidance through the universal psi");
  adnu->add_option("--e", e_name, "program name or code")->capture_default_str();
  adnu->add_option("--delta", delta, "program name or code")->capture_default_str();
  adnu->add_option("--audit-fuel", audit_fuel)->capture_default_str();
  auto* ars = app.add_subcommand("arslanov", "fixed point of a limit-computable map");
  ars->add_option("--table", table, "table name or path")->capture_default_str();
  auto* k2n = app.add_subcommand("k2-nonextend", "witness that a functional has no total extension");
  k2n->add_option("--map", map, "psi | prefix map name or path")->capture_default_str();
  k2n->add_option("--depth", depth)->capture_default_str();
  auto* k2d = app.add_subcommand("k2-diag", "diagonalize against a total functional");
  k2d->add_option("--functional", functional, "constant | identity")->capture_default_str();
  k2d->add_option("--value", value, "constant functional's first symbol")->capture_default_str();
  k2d->add_option("--at", at, "probe step at which it commits")->capture_default_str();
  k2d->add_option("--probe-depth", probe_depth)->capture_default_str();
  auto* chk = app.add_subcommand("check", "randomized property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(s, term);
    if (*enc) return cmd_encode(s, term);
    if (*dec) return cmd_decode(s, code);
    if (*comp) return cmd_compile(s, term, eta);
    if (*smn_cmd) return cmd_smn(s, e_arg, a_arg);
    if (*quine_cmd) return cmd_quine(s, style);
    if (*fix) return cmd_fixpoint(s, transform);
    if (*fixp) return cmd_fixpoint_param(s, h, route);
    if (*adn_cmd) return cmd_adn(s, psi, delta, audit_fuel);
    if (*adnu) return cmd_adn_uniform(s, e_name, delta, audit_fuel);
    if (*ars) return cmd_arslanov(s, table);
    if (*k2n) return cmd_k2_nonextend(s, map, depth);
    if (*k2d) return cmd_k2_diag(s, functional, value, at, probe_depth);
    if (*chk) return cmd_check(s);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ApproxFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PrefixMapError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMisuse;
  } catch (const MisuseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMisuse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
