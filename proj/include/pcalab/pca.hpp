#pragma once

// Combinatory completeness over partial applicative structures: bracket
// abstraction, lambda-syntax compilation, tuples and projections, a total
// fixed-point operator and a randomized checker for the two abstraction laws.

#include "pcalab/eval.hpp"
#include "pcalab/syntax.hpp"
#include "pcalab/term.hpp"

#include <algorithm>
#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcalab {

// A term that may mention variables, together with exactly the variables it
// mentions (in order of first occurrence).
class AbstractTerm {
 public:
  explicit AbstractTerm(Term body) : body_(std::move(body)) { collect_vars(body_, free_); }

  const Term& body() const { return body_; }
  const std::vector<std::uint32_t>& free_vars() const { return free_; }
  bool mentions(std::uint32_t x) const { return std::find(free_.begin(), free_.end(), x) != free_.end(); }

 private:
  Term body_;
  std::vector<std::uint32_t> free_;
};

struct Combinators {
  Term k = Term::k();
  Term s = Term::s();
  // Also use lambda* x. M x = M when x is not in M and M is a variable or a
  // closed value. Sound for clauses (i) and (ii); off by default.
  bool eta = false;
};

// lambda* x. t with the clauses
//   lambda* x. x      = S K K
//   lambda* x. M      = K M            if x is not in M and M is a variable or a closed value
//   lambda* x. M N    = S (lambda* x. M) (lambda* x. N)
// K is only put in front of terms that cannot diverge once their variables
// are instantiated by values, so the result is always defined on values.
inline Term bracket_abstract(const Term& t, std::uint32_t x, const Combinators& c = {}) {
  if (t.is_var() && t.var_index() == x) return Term::apply(c.s, c.k, c.k);
  if (c.eta && t.is_app() && t.arg().is_var() && t.arg().var_index() == x) {
    Term m = t.fun();
    if (!occurs(m, x) && (m.is_var() || (m.closed() && m.is_value()))) return m;
  }
  if (!occurs(t, x) && (t.is_var() || (t.closed() && t.is_value()))) return Term::app(c.k, t);
  if (t.is_app()) {
    return Term::apply(c.s, bracket_abstract(t.fun(), x, c), bracket_abstract(t.arg(), x, c));
  }
  // Remaining atoms: a closed atom that is not a value cannot occur.
  return Term::app(c.k, t);
}

inline AbstractTerm bracket_abstract(const AbstractTerm& t, std::uint32_t x, const Combinators& c = {}) {
  return AbstractTerm(bracket_abstract(t.body(), x, c));
}

// lambda* x1 ... xn. t, innermost variable last in `vars`.
inline Term abstract_all(Term t, const std::vector<std::uint32_t>& vars, const Combinators& c = {}) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) t = bracket_abstract(t, *it, c);
  return t;
}

namespace detail {

// Lambda syntax on top of the term syntax:
//   expr := \ name+ . expr | app        app := atom+        atom := name | number | ( expr ) | \ ...
// Bound names become fresh variables that are abstracted away; free names
// are looked up in the environment, then among S, K and the primitives.
class LambdaParser {
 public:
  LambdaParser(std::string_view src, const std::map<std::string, Term>& env, Combinators scheme)
      : tokens_(tokenize(src)), env_(env), scheme_(std::move(scheme)) {}

  Term parse() {
    Term t = parse_expr();
    if (peek().kind != Token::Kind::End) fail("trailing input");
    return t;
  }

 private:
  static constexpr std::uint32_t kFirstBound = 1u << 20;

  const Token& peek() const { return tokens_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what + " at " + std::to_string(peek().pos));
  }
  bool starts_atom() const {
    auto k = peek().kind;
    return k == Token::Kind::Word || k == Token::Kind::Number || k == Token::Kind::LParen ||
           k == Token::Kind::Lambda;
  }

  Term parse_expr() {
    if (peek().kind == Token::Kind::Lambda) return parse_lambda();
    if (!starts_atom()) fail("expected a term");
    Term t = parse_atom();
    while (starts_atom()) t = Term::app(std::move(t), parse_atom());
    return t;
  }

  Term parse_lambda() {
    ++pos_;
    std::vector<std::string> names;
    while (peek().kind == Token::Kind::Word) names.push_back(tokens_[pos_++].text);
    if (names.empty()) fail("expected a bound name");
    if (peek().kind != Token::Kind::Dot) fail("expected '.'");
    ++pos_;
    std::vector<std::uint32_t> vars;
    for (const auto& n : names) {
      std::uint32_t v = next_var_++;
      scopes_.emplace_back(n, v);
      vars.push_back(v);
    }
    Term body = parse_expr();
    scopes_.resize(scopes_.size() - names.size());
    return abstract_all(std::move(body), vars, scheme_);
  }

  Term parse_atom() {
    if (peek().kind == Token::Kind::Lambda) return parse_lambda();
    Token tok = tokens_[pos_++];
    switch (tok.kind) {
      case Token::Kind::Number: return Term::numeral(parse_natural(tok.text));
      case Token::Kind::LParen: {
        Term t = parse_expr();
        if (peek().kind != Token::Kind::RParen) fail("expected ')'");
        ++pos_;
        return t;
      }
      case Token::Kind::Word: {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
          if (it->first == tok.text) return Term::var(it->second);
        }
        if (auto it = env_.find(tok.text); it != env_.end()) return it->second;
        if (auto a = atom_for_word(tok.text)) return *a;
        --pos_;
        fail("unbound name '" + tok.text + "'");
      }
      default: --pos_; fail("expected a term");
    }
  }

  std::vector<Token> tokens_;
  const std::map<std::string, Term>& env_;
  Combinators scheme_;
  std::vector<std::pair<std::string, std::uint32_t>> scopes_;
  std::uint32_t next_var_ = kFirstBound;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Compiles lambda syntax to a combinator term. Names in `env` denote fixed
/// terms (typically numerals holding codes).
inline Term compile_lambda(std::string_view src, const std::map<std::string, Term>& env = {},
                           const Combinators& scheme = {}) {
  Term t = detail::LambdaParser(src, env, scheme).parse();
  if (!t.closed()) throw SyntaxError("compiled term is not closed");
  return t;
}

// As compile_lambda, but `env` may map names to variables that stay free.
inline Term compile_lambda_open(std::string_view src, const std::map<std::string, Term>& env,
                                const Combinators& scheme = {}) {
  return detail::LambdaParser(src, env, scheme).parse();
}

// <a1, ..., an> = lambda z. z a1 ... an
inline Term tuple(const std::vector<Term>& elements) {
  if (elements.empty()) throw std::invalid_argument("tuple: need at least one element");
  constexpr std::uint32_t z = 0;
  Term body = Term::var(z);
  for (const auto& a : elements) {
    if (!a.closed()) throw std::invalid_argument("tuple: elements must be closed");
    body = Term::app(body, a);
  }
  return bracket_abstract(body, z);
}

// U^n_i = lambda u1 ... un. ui, 1-based.
inline Term projector(std::size_t n, std::size_t i) {
  if (n == 0 || i == 0 || i > n) throw std::out_of_range("projector: need 1 <= i <= n");
  std::vector<std::uint32_t> vars(n);
  for (std::size_t j = 0; j < n; ++j) vars[j] = static_cast<std::uint32_t>(j);
  return abstract_all(Term::var(static_cast<std::uint32_t>(i - 1)), vars);
}

// The fixed-point operator, built from u = lambda x y z. y (x x y) z, the
// totalization of t(x, y) = y (x x y) by abstracting the trailing argument.
// f = u u is total: f g is a partial application for every g, and
// (f g) a = g (f g) a for every a.
inline Term turing_fixpoint() {
  static const Term f = [] {
    Term u = abstract_all(
        Term::apply(Term::var(1), Term::apply(Term::var(0), Term::var(0), Term::var(1)), Term::var(2)), {0, 1, 2});
    EvalResult r = evaluate(Term::app(u, u), Fuel{100});
    return r.value();
  }();
  return f;
}

// A partial applicative structure whose elements are closed terms in weak
// normal form; application may be undefined (out of fuel or stuck).
template <typename P>
concept PartialApplicativeStructure = requires(const P& p, const Term& a, Fuel f, std::mt19937_64& rng) {
  { p.apply(a, a, f) } -> std::same_as<EvalResult>;
  { p.contains(a) } -> std::same_as<bool>;
  { p.combinators() } -> std::same_as<Combinators>;
  { p.random_element(rng) } -> std::same_as<Term>;
};

// The term model: application is strict evaluation of (a b).
struct SkPas {
  EvalConfig config{};

  EvalResult apply(const Term& a, const Term& b, Fuel fuel) const { return evaluate(Term::app(a, b), fuel, config); }
  bool contains(const Term& t) const { return t.closed() && t.is_value(); }
  Combinators combinators() const { return {}; }
  Term random_element(std::mt19937_64& rng) const {
    static const std::vector<Term> pool = {
        Term::k(),
        Term::s(),
        Term::prim(Prim::Succ),
        Term::prim(Prim::Pred),
        Term::app(Term::k(), num(3)),
        Term::app(Term::s(), Term::k()),
        Term::apply(Term::s(), Term::k(), Term::k()),
        Term::app(Term::prim(Prim::Pair), num(1)),
    };
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) + 5);
    int i = pick(rng);
    if (i < static_cast<int>(pool.size())) return pool[static_cast<std::size_t>(i)];
    return num(std::uniform_int_distribution<std::uint64_t>(0, 20)(rng));
  }
};

// Strict evaluation of a closed term inside a pas: both sides of an
// application must be defined before the pas applies them.
template <PartialApplicativeStructure P>
EvalResult evaluate_in(const P& pas, const Term& t, Fuel fuel) {
  if (!t.is_app()) {
    EvalResult r;
    r.outcome = ValueResult{t};
    return r;
  }
  EvalResult f = evaluate_in(pas, t.fun(), fuel);
  if (!f.is_value()) return f;
  EvalResult a = evaluate_in(pas, t.arg(), Fuel{fuel.steps - f.steps});
  a.steps += f.steps;
  if (!a.is_value()) return a;
  EvalResult r = pas.apply(f.value(), a.value(), Fuel{fuel.steps - a.steps});
  r.steps += a.steps;
  return r;
}

// Equality of partial results at a fuel bound: both undefined, or both values and equal.
inline bool kleene_equal(const EvalResult& a, const EvalResult& b) {
  if (a.is_value() != b.is_value()) return false;
  return !a.is_value() || a.value() == b.value();
}

struct CompletenessCounterexample {
  Term term;                 // t(x1, ..., xn, x), x is the last variable
  std::vector<Term> params;  // a1 ... an
  Term argument;             // a
  bool clause_i_failed = false;
  bool clause_ii_failed = false;
};

struct CompletenessReport {
  std::size_t trials = 0;
  std::size_t clause_i_failures = 0;
  std::size_t clause_ii_failures = 0;
  std::vector<CompletenessCounterexample> counterexamples;  // first few

  bool passed() const { return clause_i_failures == 0 && clause_ii_failures == 0; }
};

struct CompletenessOptions {
  std::uint64_t seed = 1;
  std::size_t max_params = 2;  // n; the abstracted variable makes n + 1 <= 3
  unsigned max_depth = 4;
  Fuel clause_i_fuel{10'000};
  Fuel clause_ii_fuel{100'000};
  std::size_t keep_counterexamples = 5;
};

namespace detail {

inline Term random_open_term(std::mt19937_64& rng, unsigned depth, std::uint32_t var_count,
                             const std::function<Term(std::mt19937_64&)>& element) {
  std::uniform_int_distribution<int> coin(0, 9);
  if (depth == 0 || coin(rng) < 3) {
    if (var_count > 0 && coin(rng) < 6) {
      return Term::var(std::uniform_int_distribution<std::uint32_t>(0, var_count - 1)(rng));
    }
    return element(rng);
  }
  return Term::app(random_open_term(rng, depth - 1, var_count, element),
                   random_open_term(rng, depth - 1, var_count, element));
}

}  // namespace detail

// Checks, on random terms t(x1..xn, x) and random elements, that
// b = lambda* x1..xn x. t satisfies  b a1..an defined  and
// b a1..an a ~= t(a1..an, a).
template <PartialApplicativeStructure P>
CompletenessReport check_combinatory_complete(const P& pas, std::size_t samples, const CompletenessOptions& opt = {}) {
  std::mt19937_64 rng(opt.seed);
  CompletenessReport report;
  auto element = [&](std::mt19937_64& r) { return pas.random_element(r); };
  Combinators c = pas.combinators();
  for (std::size_t trial = 0; trial < samples; ++trial) {
    std::size_t n = trial % (opt.max_params + 1);
    std::uint32_t vars = static_cast<std::uint32_t>(n + 1);
    Term t = detail::random_open_term(rng, opt.max_depth, vars, element);
    std::vector<std::uint32_t> order(vars);
    for (std::uint32_t i = 0; i < vars; ++i) order[i] = i;
    Term b = abstract_all(t, order, c);
    std::vector<Term> params;
    for (std::size_t i = 0; i < n; ++i) params.push_back(pas.random_element(rng));
    Term a = pas.random_element(rng);

    Term partial = b;
    for (const auto& p : params) partial = Term::app(partial, p);
    EvalResult defined = evaluate_in(pas, partial, opt.clause_i_fuel);

    Term closed_t = substitute(t, [&](std::uint32_t i) -> std::optional<Term> {
      return i < n ? params[i] : a;
    });
    EvalResult direct = evaluate_in(pas, closed_t, opt.clause_ii_fuel);
    EvalResult via_b = evaluate_in(pas, Term::app(partial, a), opt.clause_ii_fuel);

    CompletenessCounterexample cx{t, params, a};
    cx.clause_i_failed = !defined.is_value();
    cx.clause_ii_failed = !kleene_equal(direct, via_b);
    ++report.trials;
    if (cx.clause_i_failed) ++report.clause_i_failures;
    if (cx.clause_ii_failed) ++report.clause_ii_failures;
    if ((cx.clause_i_failed || cx.clause_ii_failed) && report.counterexamples.size() < opt.keep_counterexamples) {
      report.counterexamples.push_back(std::move(cx));
    }
  }
  return report;
}

}  // namespace pcalab
