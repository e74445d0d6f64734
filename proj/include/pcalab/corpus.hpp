#pragma once

// A fixed corpus of small programs with known behaviour, each paired with a
// host function computing what the program should compute. Random codes are
// almost never interesting programs; these are.

#include "pcalab/k1.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pcalab {

using UnaryOracle = std::function<std::optional<Natural>(const Natural&)>;
using BinaryOracle = std::function<std::optional<Natural>(const Natural&, const Natural&)>;

struct CorpusProgram {
  std::string name;
  Term term;
  Code code;
  UnaryOracle oracle;  // nullopt: diverges
};

struct CorpusProgram2 {
  std::string name;
  Term term;
  Code code;
  BinaryOracle oracle;  // curried: (a, x)
};

namespace detail {

inline Natural saturating_sub(const Natural& a, const Natural& b) { return a > b ? Natural(a - b) : Natural(0); }

}  // namespace detail

inline std::vector<CorpusProgram> unary_corpus() {
  std::vector<CorpusProgram> out;
  auto add = [&](std::string name, Term t, UnaryOracle o) {
    Code c = encode(t);
    out.push_back({std::move(name), std::move(t), std::move(c), std::move(o)});
  };
  add("identity", programs::identity(), [](const Natural& x) { return x; });
  add("successor", programs::successor(), [](const Natural& x) { return Natural(x + 1); });
  add("divergent", programs::divergent(), [](const Natural&) { return std::nullopt; });
  for (unsigned c = 0; c < 50; ++c) {
    add("constant " + std::to_string(c), programs::constant(c), [c](const Natural&) { return Natural(c); });
  }
  for (unsigned k = 2; k < 40; ++k) {
    add("add " + std::to_string(k), programs::add(k), [k](const Natural& x) { return Natural(x + k); });
  }
  for (unsigned c = 0; c < 20; ++c) {
    add("sub " + std::to_string(c), compile_lambda("\\x. sub x c", {{"c", num(c)}}),
        [c](const Natural& x) { return detail::saturating_sub(x, c); });
  }
  for (unsigned c = 0; c < 20; ++c) {
    add("pair with " + std::to_string(c), compile_lambda("\\x. pair x c", {{"c", num(c)}}),
        [c](const Natural& x) { return cantor_pair(x, c); });
  }
  for (unsigned a = 0; a < 5; ++a) {
    for (unsigned b = 0; b < 4; ++b) {
      add("zero test " + std::to_string(a) + " " + std::to_string(b),
          compile_lambda("\\x. ifz x a b", {{"a", num(a)}, {"b", num(b)}}),
          [a, b](const Natural& x) { return Natural(x.is_zero() ? a : b); });
    }
  }
  add("fst", compile_lambda("\\x. fst x"), [](const Natural& x) { return cantor_unpair(x).first; });
  add("snd", compile_lambda("\\x. snd x"), [](const Natural& x) { return cantor_unpair(x).second; });
  add("double pred", compile_lambda("\\x. pred (pred x)"), [](const Natural& x) { return detail::saturating_sub(x, 2); });
  for (unsigned k = 1; k < 16; ++k) {
    for (unsigned c : {1u, 3u}) {
      add("add " + std::to_string(k) + " after sub " + std::to_string(c),
          compile_lambda("\\x. A (sub x c)", {{"A", programs::add(k)}, {"c", num(c)}}),
          [k, c](const Natural& x) { return Natural(detail::saturating_sub(x, c) + k); });
    }
  }
  for (unsigned c = 0; c < 5; ++c) {
    add("even const " + std::to_string(c), programs::even_const(c), [c](const Natural& x) -> std::optional<Natural> {
      if (x % 2 == 0) return Natural(c);
      return std::nullopt;
    });
  }
  for (unsigned i = 1; i <= 4; ++i) {
    Term t = decode(pad(encode(programs::successor()), i));
    add("successor padded " + std::to_string(i), t, [](const Natural& x) { return Natural(x + 1); });
  }
  add("diverges at zero", compile_lambda("\\x. ifz x (\\u. W) (\\u. x) 0", {{"W", programs::omega()}}),
      [](const Natural& x) -> std::optional<Natural> {
        if (x.is_zero()) return std::nullopt;
        return x;
      });
  return out;
}

inline std::vector<CorpusProgram2> binary_corpus() {
  std::vector<CorpusProgram2> out;
  auto add = [&](std::string name, Term t, BinaryOracle o) {
    Code c = encode(t);
    out.push_back({std::move(name), std::move(t), std::move(c), std::move(o)});
  };
  add("first", programs::first_of_two(), [](const Natural& a, const Natural&) { return a; });
  add("second", programs::second_of_two(), [](const Natural&, const Natural& x) { return x; });
  add("pair", compile_lambda("\\a x. pair a x"), [](const Natural& a, const Natural& x) { return cantor_pair(a, x); });
  add("sub", compile_lambda("\\a x. sub x a"),
      [](const Natural& a, const Natural& x) { return detail::saturating_sub(x, a); });
  add("zero test", compile_lambda("\\a x. ifz a x (succ x)"),
      [](const Natural& a, const Natural& x) { return Natural(a.is_zero() ? x : x + 1); });
  add("diverge unless a is zero", compile_lambda("\\a x. ifz a (\\u. x) (\\u. W) 0", {{"W", programs::omega()}}),
      [](const Natural& a, const Natural& x) -> std::optional<Natural> {
        if (a.is_zero()) return x;
        return std::nullopt;
      });
  return out;
}

// A recursion body g = \r x. ..., paired with the function its fixed point
// computes on numerals.
struct RecursionBody {
  std::string name;
  Term g;
  UnaryOracle fixpoint;
};

inline std::vector<RecursionBody> recursion_corpus() {
  std::vector<RecursionBody> out;
  for (unsigned c = 0; c < 40; ++c) {
    out.push_back({"count up from " + std::to_string(c),
                   compile_lambda("\\r x. ifz x (\\u. c) (\\u. succ (r (pred x))) 0", {{"c", num(c)}}),
                   [c](const Natural& x) { return Natural(x + c); }});
  }
  for (unsigned c = 0; c < 20; ++c) {
    out.push_back({"double and add " + std::to_string(c),
                   compile_lambda("\\r x. ifz x (\\u. c) (\\u. succ (succ (r (pred x)))) 0", {{"c", num(c)}}),
                   [c](const Natural& x) { return Natural(2 * x + c); }});
  }
  for (unsigned c = 0; c < 20; ++c) {
    out.push_back({"ignore self " + std::to_string(c), compile_lambda("\\r x. c", {{"c", num(c)}}),
                   [c](const Natural&) { return Natural(c); }});
  }
  for (unsigned k = 0; k < 20; ++k) {
    out.push_back({"cap at " + std::to_string(k),
                   compile_lambda("\\r x. ifz (sub x k) (\\u. x) (\\u. r (pred x)) 0", {{"k", num(k)}}),
                   [k](const Natural& x) { return x < k ? x : Natural(k); }});
  }
  return out;
}

// A total map on codes, given by its program, for fixed-point experiments.
struct CodeTransform {
  std::string name;
  Code code;
};

inline std::vector<CodeTransform> designed_transforms() {
  std::vector<CodeTransform> out;
  auto add = [&](std::string name, const Term& t) { out.push_back({std::move(name), encode(t)}); };
  std::map<std::string, Term> env{{"Kc", num(encode(Term::k()))}, {"Zc", num(numeral_code(0))}};
  add("identity", programs::identity());
  std::string padded = "x";
  for (unsigned k = 1; k <= 8; ++k) {
    padded = "capp (capp Kc (" + padded + ")) Zc";
    add("pad " + std::to_string(k), compile_lambda("\\x. " + padded, env));
  }
  for (unsigned c : {0u, 1u, 3u, 5u, 7u, 42u}) {
    add("constant builder " + std::to_string(c), compile_lambda("\\x. C", {{"C", num(encode(programs::constant(c)))}}));
  }
  for (unsigned k : {1u, 2u, 3u}) {
    add("add builder " + std::to_string(k), compile_lambda("\\x. C", {{"C", num(encode(programs::add(k)))}}));
  }
  // x |-> code of (y |-> phi_x(y + 1)).
  add("compose with successor", CodeTemplate("\\y. univ x (succ y)", {"x"}).program());
  // x |-> code of (y |-> phi_y(x)).
  add("apply to self", CodeTemplate("\\y. univ y x", {"x"}).program());
  // x |-> code of (K x): the constant-code builder behind the output quine.
  add("output builder", CodeTemplate("K x", {"x"}).program());
  return out;
}

}  // namespace pcalab
