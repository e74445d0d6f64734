#pragma once

// The completeness-criterion construction for limit-computable maps, run on finite
// data. A limit approximation g^(x, s) of a map g is given as a table of
// stage-indexed rules with a claimed modulus. With s_n the halting stage of
// phi_n(n),
//
//   eta(x, n) = g^(x, s_n)    when s_n exists, undefined otherwise
//
// is totalized and fed to the parameter recursion theorem, giving f with
// f(n) ~ g^(f(n), s_n) for every n whose self-application halts. Scanning n
// upwards, the first n with s_n past the modulus at f(n) yields a fixed
// point of the limit g.
//
// Only the construction is demonstrated. The table is finite data, not an
// oracle below an incomplete c.e. degree, so nothing here says anything
// about degrees of unsolvability.

#include "pcalab/fixedpoints.hpp"

#include <algorithm>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace pcalab {

struct Identity {};
struct Pad {
  Natural times;
};
struct Constant {
  Code value;
};
// Alternates between x (even stages) and pad(x, times) (odd stages). Never settles.
struct Alternate {
  Natural times;
};
using Transform = std::variant<Identity, Pad, Constant, Alternate>;

struct ApproxRule {
  std::optional<Code> x;  // absent: every x
  std::uint64_t from_stage = 0;
  Transform transform;
};

struct SettleRule {
  std::optional<Code> x;
  std::uint64_t stage = 0;
};

class ApproxFormatError : public std::runtime_error {
 public:
  ApproxFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// g^(x, s): the last rule that matches x and has from_stage <= s; x itself
// when none does. settle(x) is the claimed modulus, from the last matching
// settle declaration (0 when none).
class LimitApprox {
 public:
  LimitApprox() = default;
  LimitApprox(std::vector<ApproxRule> rules, std::vector<SettleRule> settles)
      : rules_(std::move(rules)), settles_(std::move(settles)) {}

  Code table(const Code& x, std::uint64_t s) const {
    const ApproxRule* hit = nullptr;
    for (const auto& r : rules_) {
      if (r.from_stage <= s && (!r.x || *r.x == x) && (!hit || r.from_stage >= hit->from_stage)) hit = &r;
    }
    if (!hit) return x;
    return std::visit(
        [&](const auto& t) -> Code {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, Identity>) return x;
          if constexpr (std::is_same_v<T, Pad>) return pad(x, t.times);
          if constexpr (std::is_same_v<T, Constant>) return t.value;
          if constexpr (std::is_same_v<T, Alternate>) return s % 2 == 0 ? x : pad(x, t.times);
        },
        hit->transform);
  }

  std::uint64_t settle(const Code& x) const {
    std::uint64_t out = 0;
    for (const auto& r : settles_) {
      if (!r.x || *r.x == x) out = r.stage;
    }
    return out;
  }

  // The limit value, read at the claimed modulus.
  Code limit(const Code& x) const { return table(x, settle(x)); }

  const std::vector<ApproxRule>& rules() const { return rules_; }
  const std::vector<SettleRule>& settles() const { return settles_; }

  // Line format, '#' starts a comment:
  //   <x|*> <stage> identity | pad <k> | const <code> | alt <k> | <code>
  //   settle <x|*> <stage>
  // A bare code is a literal value, the same as const.
  static LimitApprox parse(std::istream& in) {
    std::vector<ApproxRule> rules;
    std::vector<SettleRule> settles;
    std::string line;
    std::size_t lineno = 0;
    auto target = [&](const std::string& w) -> std::optional<Code> {
      if (w == "*") return std::nullopt;
      return number(w, lineno);
    };
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream words(line);
      std::vector<std::string> w;
      for (std::string s; words >> s;) w.push_back(s);
      if (w.empty()) continue;
      if (w[0] == "settle") {
        if (w.size() != 3) throw ApproxFormatError(lineno, "expected: settle <x|*> <stage>");
        settles.push_back({target(w[1]), stage(w[2], lineno)});
        continue;
      }
      if (w.size() < 3) throw ApproxFormatError(lineno, "expected: <x|*> <stage> <transform>");
      ApproxRule r{target(w[0]), stage(w[1], lineno), Identity{}};
      const std::string& kind = w[2];
      auto arg = [&]() -> Natural {
        if (w.size() != 4) throw ApproxFormatError(lineno, kind + " takes one argument");
        return number(w[3], lineno);
      };
      if (kind == "identity" && w.size() == 3) {
        r.transform = Identity{};
      } else if (kind == "pad") {
        r.transform = Pad{arg()};
      } else if (kind == "const") {
        r.transform = Constant{arg()};
      } else if (kind == "alt") {
        r.transform = Alternate{arg()};
      } else if (w.size() == 3) {
        r.transform = Constant{number(kind, lineno)};
      } else {
        throw ApproxFormatError(lineno, "unknown transform '" + kind + "'");
      }
      rules.push_back(std::move(r));
    }
    return LimitApprox(std::move(rules), std::move(settles));
  }

  static LimitApprox parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

 private:
  static Natural number(const std::string& w, std::size_t lineno) {
    try {
      return parse_natural(w);
    } catch (const std::exception&) {
      throw ApproxFormatError(lineno, "not a natural: '" + w + "'");
    }
  }
  static std::uint64_t stage(const std::string& w, std::size_t lineno) {
    Natural n = number(w, lineno);
    if (n > std::numeric_limits<std::uint64_t>::max()) throw ApproxFormatError(lineno, "stage too large");
    return static_cast<std::uint64_t>(n);
  }

  std::vector<ApproxRule> rules_;
  std::vector<SettleRule> settles_;
};

struct ModulusViolation {
  std::optional<Code> x;  // absent: the x not named by any rule
  std::uint64_t settle = 0;
  std::uint64_t stage = 0;  // first stage past settle where the table differs
};

// Checks the claimed modulus exactly. Rules are uniform in x apart from the
// named points, so one representative per named x and one for all other x
// cover every x; past the last rule stage the table is constant unless an
// alternating rule is active, which two further stages expose.
inline std::vector<ModulusViolation> check_modulus(const LimitApprox& g) {
  std::vector<std::optional<Code>> points{std::nullopt};
  for (const auto& r : g.rules()) {
    if (r.x && std::find(points.begin(), points.end(), r.x) == points.end()) points.push_back(r.x);
  }
  for (const auto& r : g.settles()) {
    if (r.x && std::find(points.begin(), points.end(), r.x) == points.end()) points.push_back(r.x);
  }
  // Stand-in for "any other x": a code no rule names.
  Code other = 0;
  while (std::find(points.begin(), points.end(), std::optional<Code>(other)) != points.end()) ++other;
  std::uint64_t last = 0;
  for (const auto& r : g.rules()) last = std::max(last, r.from_stage);

  std::vector<ModulusViolation> out;
  for (const auto& p : points) {
    Code x = p ? *p : other;
    std::uint64_t m = g.settle(x);
    Code settled = g.table(x, m);
    for (std::uint64_t s = m + 1; s <= std::max(last, m) + 2; ++s) {
      if (g.table(x, s) != settled) {
        out.push_back({p, m, s});
        break;
      }
    }
  }
  return out;
}

// Least s <= budget with phi_n(n) defined within s steps.
inline std::optional<std::uint64_t> halting_stage(const Code& n, std::uint64_t budget) {
  EvalResult r = evaluate(Term::app(decode(n), Term::numeral(n)), Fuel{budget});
  if (!r.numeral()) return std::nullopt;
  return r.steps;
}

// Code of <x, s> |-> g^(x, s), following the rules with the same precedence
// as LimitApprox::table. Tables with an alternating rule have no program.
inline Code approximation_code(const LimitApprox& g) {
  std::vector<const ApproxRule*> order;
  for (const auto& r : g.rules()) order.push_back(&r);
  // Lowest precedence first: smaller from_stage, then earlier line.
  std::stable_sort(order.begin(), order.end(),
                   [](const ApproxRule* a, const ApproxRule* b) { return a->from_stage < b->from_stage; });
  std::map<std::string, Term> env{{"Kc", num(encode(Term::k()))}, {"Zc", num(numeral_code(0))}};
  std::string body = "x";
  int i = 0;
  for (const ApproxRule* r : order) {
    std::string value;
    if (std::holds_alternative<Identity>(r->transform)) {
      value = "x";
    } else if (const auto* p = std::get_if<Pad>(&r->transform)) {
      value = "x";
      for (Natural j = 0; j < p->times; ++j) value = "capp (capp Kc (" + value + ")) Zc";
    } else if (const auto* c = std::get_if<Constant>(&r->transform)) {
      std::string name = "C" + std::to_string(i);
      env[name] = num(c->value);
      value = name;
    } else {
      throw std::invalid_argument("approximation_code: an alternating rule has no limit");
    }
    std::string stage_name = "F" + std::to_string(i);
    env[stage_name] = num(r->from_stage);
    std::string guard = "ifz (sub " + stage_name + " s) (\\u. " + value + ") (\\u. " + body + ") 0";
    if (r->x) {
      std::string point = "X" + std::to_string(i);
      env[point] = num(*r->x);
      guard = "ifz (sub x " + point + ") (\\v. ifz (sub " + point + " x) (\\w. " + guard + ") (\\w. " + body +
              ") 0) (\\v. " + body + ") 0";
    }
    body = guard;
    ++i;
  }
  Combinators scheme;
  scheme.eta = true;
  return encode(compile_lambda("\\z. (\\x s. " + body + ") (fst z) (snd z)", env, scheme));
}

// <x, n> |-> g^(x, s_n), undefined when phi_n(n) diverges.
inline Code arslanov_eta(const Code& g_code) {
  return encode(compile_lambda("\\z. univ G (pair (fst z) (stages (snd z) (snd z)))", {{"G", num(g_code)}}));
}

// An n whose halting stage came before the modulus at f(n).
struct EarlyStage {
  Natural n;
  std::uint64_t halting_stage = 0;
  std::uint64_t modulus = 0;
};

struct ArslanovOptions {
  std::uint64_t scan = 1000;     // n = 0 .. scan-1
  std::uint64_t budget = 1000;   // halting-stage fuel and verdict budget
  TotalityCheck totality{};
};

struct ArslanovResult {
  std::vector<ModulusViolation> modulus_violations;  // non-empty: nothing was constructed
  std::optional<FixpointWitness> witness;            // point = f(n), transform = g(f(n))
  std::optional<Natural> n;
  std::uint64_t halting_stage = 0;
  std::vector<EarlyStage> early;  // every halting n before the witness, all with m(f(n)) > s_n
  std::uint64_t scanned = 0;
};

inline ArslanovResult arslanov_construct(const Numbering& gamma, const LimitApprox& g,
                                         const ArslanovOptions& opt = {}) {
  ArslanovResult result;
  result.modulus_violations = check_modulus(g);
  if (!result.modulus_violations.empty()) return result;
  TotalCodeMap h = gamma.totalizer(arslanov_eta(approximation_code(g)));
  TotalCodeMap f = ershov_param(gamma, h.code, opt.totality);
  for (std::uint64_t n = 0; n < opt.scan; ++n) {
    ++result.scanned;
    auto s = halting_stage(n, opt.budget);
    if (!s) continue;
    Code point = f(n);
    std::uint64_t m = g.settle(point);
    if (*s < m) {
      result.early.push_back({n, *s, m});
      continue;
    }
    // f(n) ~ eta(f(n), n) = g^(f(n), s_n) = g(f(n)).
    Code image = g.table(point, *s);
    FixpointWitness w;
    w.point = point;
    w.transform = image;
    w.check_budget = opt.budget;
    w.verdict = gamma.equiv_bounded(image, point, opt.budget);
    result.witness = w;
    result.n = n;
    result.halting_stage = *s;
    return result;
  }
  return result;
}

}  // namespace pcalab
