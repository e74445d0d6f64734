#pragma once

// The first model: codes applied to naturals through the evaluator,
// n m = phi_n(m). Also the code-level operations the constructions are built
// from (S-m-n, padding, pairing), a quotation compiler that turns a term
// template into an in-language program computing the template's code, and a
// few named programs.

#include "pcalab/codec.hpp"
#include "pcalab/eval.hpp"
#include "pcalab/pca.hpp"

#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace pcalab {

struct Defined {
  Natural value;
  friend bool operator==(const Defined&, const Defined&) = default;
};

struct DivergentWithin {
  Fuel fuel;
  friend bool operator==(const DivergentWithin& a, const DivergentWithin& b) { return a.fuel.steps == b.fuel.steps; }
};

// phi_e(x) as seen within a fuel bound. Anything other than a numeral value
// (out of fuel, stuck, or a non-numeric weak normal form) is divergent.
class PartialValue {
 public:
  PartialValue(Defined d) : v_(std::move(d)) {}
  PartialValue(DivergentWithin d) : v_(d) {}

  bool defined() const { return std::holds_alternative<Defined>(v_); }
  const Natural& value() const { return std::get<Defined>(v_).value; }
  std::optional<Natural> get() const {
    if (defined()) return value();
    return std::nullopt;
  }

  friend bool operator==(const PartialValue&, const PartialValue&) = default;
  friend std::ostream& operator<<(std::ostream& os, const PartialValue& p) {
    if (p.defined()) return os << "Defined(" << p.value() << ")";
    return os << "DivergentWithin(" << std::get<DivergentWithin>(p.v_).fuel.steps << ")";
  }

 private:
  std::variant<Defined, DivergentWithin> v_;
};

inline PartialValue as_partial(const EvalResult& r, Fuel fuel) {
  if (auto n = r.numeral()) return Defined{*n};
  return DivergentWithin{fuel};
}

inline PartialValue phi(const Code& e, const Natural& x, Fuel fuel) {
  return as_partial(evaluate(Term::app(decode(e), Term::numeral(x)), fuel), fuel);
}

// Curried two-argument application (decode e) a x.
inline PartialValue phi2(const Code& e, const Natural& a, const Natural& x, Fuel fuel) {
  return as_partial(evaluate(Term::apply(decode(e), Term::numeral(a), Term::numeral(x)), fuel), fuel);
}

// S-m-n: the code of (decode e) a. Pure code arithmetic, nothing is run.
inline Code smn(const Code& e, const Natural& a) { return application_code(e, numeral_code(a)); }

// Wraps the program i times as K t 0. Each layer is one discardable redex.
inline Code pad(const Code& e, const Natural& i) {
  static const Code k_code = encode(Term::k());
  static const Code zero_code = numeral_code(0);
  Code c = e;
  for (Natural j = 0; j < i; ++j) c = application_code(application_code(k_code, c), zero_code);
  return c;
}

inline Natural pair_codes(const Natural& e, const Natural& n) { return cantor_pair(e, n); }
inline std::pair<Natural, Natural> unpair_codes(const Natural& z) { return cantor_unpair(z); }

// W_{e,s} = { x <= s : phi_e(x) converges within s steps }, ascending.
inline std::vector<Natural> domain_enum(const Code& e, std::uint64_t stage) {
  std::vector<Natural> out;
  for (std::uint64_t x = 0; x <= stage; ++x) {
    if (phi(e, x, Fuel{stage}).defined()) out.emplace_back(x);
  }
  return out;
}

// Quotation. For a template t whose free variables stand for naturals,
// quote(t) is a term with the same free variables that evaluates to
// encode(t[v := numeral]) once each variable is bound to a numeral:
//   quote(v)      = cnum v
//   quote(c)      = encode(c)            for closed c
//   quote(M N)    = capp quote(M) quote(N)
inline Term quote(const Term& tmpl) {
  if (tmpl.closed()) return Term::numeral(encode(tmpl));
  if (tmpl.is_var()) return Term::app(Term::prim(Prim::CNum), tmpl);
  return Term::apply(Term::prim(Prim::CApp), quote(tmpl.fun()), quote(tmpl.arg()));
}

// A closed program with named holes for naturals. fill() builds the code on
// the host; program() is the in-language builder with one argument per hole.
// Both produce the same code for the same values.
class CodeTemplate {
 public:
  CodeTemplate(std::string src, std::vector<std::string> holes, std::map<std::string, Term> env = {})
      : holes_(std::move(holes)) {
    for (std::size_t i = 0; i < holes_.size(); ++i) env[holes_[i]] = Term::var(static_cast<std::uint32_t>(i));
    tmpl_ = compile_lambda_open(src, env);
    std::vector<std::uint32_t> vars;
    for (std::size_t i = 0; i < holes_.size(); ++i) vars.push_back(static_cast<std::uint32_t>(i));
    program_ = abstract_all(quote(tmpl_), vars);
  }

  Code fill(const std::vector<Natural>& values) const {
    if (values.size() != holes_.size()) throw std::invalid_argument("CodeTemplate: wrong number of values");
    return encode(substitute(tmpl_, [&](std::uint32_t i) -> std::optional<Term> {
      return Term::numeral(values[i]);
    }));
  }
  const Term& program() const { return program_; }
  Code program_code() const { return encode(program_); }

 private:
  std::vector<std::string> holes_;
  Term tmpl_;
  Term program_;
};

namespace programs {

inline Term identity() { return compile_lambda("\\x. x"); }

inline Term successor() { return compile_lambda("\\x. succ x"); }

inline Term omega() { return compile_lambda("(\\x. x x) (\\x. x x)"); }

// The everywhere-divergent program.
inline Term divergent() { return compile_lambda("\\x. W", {{"W", omega()}}); }

inline Term constant(const Natural& c) { return compile_lambda("\\x. c", {{"c", num(c)}}); }

// x + k by k applications of succ.
inline Term add(unsigned k) {
  std::string body = "x";
  for (unsigned i = 0; i < k; ++i) body = "succ (" + body + ")";
  return compile_lambda("\\x. " + body);
}

inline Term first_of_two() { return compile_lambda("\\a x. a"); }
inline Term second_of_two() { return compile_lambda("\\a x. x"); }

namespace detail {

// Lazy binary search over [lo, hi): leaves are \\n. c for even lo and
// \\n. W for odd lo.
inline std::string parity_tree(unsigned lo, unsigned hi) {
  if (hi - lo == 1) return lo % 2 == 0 ? "(\\n. c)" : "(\\n. W)";
  unsigned mid = (lo + hi) / 2;
  return "(\\n. ifz (sub n " + std::to_string(mid - 1) + ") " + parity_tree(lo, mid) + " " + parity_tree(mid, hi) +
         " n)";
}

}  // namespace detail

// c on even inputs, divergent on odd ones. Inputs below 32 are decided by a
// five-level lazy tree; larger inputs recurse on n - 32.
inline Term even_const(const Natural& c) {
  Combinators scheme;
  scheme.eta = true;
  Term g = compile_lambda("\\r n. ifz (sub n 31) " + detail::parity_tree(0, 32) + " (\\n. r (sub n 32)) n",
                          {{"c", num(c)}, {"W", omega()}}, scheme);
  return evaluate(Term::app(turing_fixpoint(), g), Fuel{100}).value();
}

}  // namespace programs

}  // namespace pcalab
