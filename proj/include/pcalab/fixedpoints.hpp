#pragma once

// Recursion theorems for a precomplete numbering, built constructively:
//
//   d(x, n) ~ phi_x(<x, n>)           d totalizes the self-application
//   phi_e(<x, n>) = h(d(x, n), n)     e is a program, so e is a code
//   f(n) = d(e, n)                    f(n) ~ phi_e(<e, n>) = h(f(n), n)
//
// Binary maps take one argument, a Cantor pair <x, n>.

#include "pcalab/numbering.hpp"

#include <string>
#include <vector>

namespace pcalab {

struct FixpointWitness {
  Code point;
  Code transform;
  std::uint64_t check_budget = 0;
  Verdict verdict = Verdict::Unknown;
};

struct TotalityCheck {
  std::uint64_t inputs = 21;  // pairs 0..inputs-1
  Fuel fuel{1000};
};

// Every z < inputs must give a value; a cheap, incomplete misuse check.
inline void require_total_on(const Code& h, const TotalityCheck& check, const char* what) {
  for (std::uint64_t z = 0; z < check.inputs; ++z) {
    if (!phi(h, z, check.fuel).defined()) {
      throw MisuseError(std::string(what) + ": not total at input " + std::to_string(z));
    }
  }
}

namespace detail {

// (x, n) -> phi_x(<x, n>)
inline Code self_application_code() {
  static const Code c = encode(compile_lambda("\\z. univ (fst z) z"));
  return c;
}

}  // namespace detail

// The diagonal totalizer d, as a map on pairs <x, n>.
inline TotalCodeMap diagonal_totalizer(const Numbering& gamma) { return gamma.totalizer(detail::self_application_code()); }

inline TotalCodeMap ershov_param(const Numbering& gamma, const Code& h, const TotalityCheck& check = {}) {
  require_total_on(h, check, "ershov_param");
  TotalCodeMap d = diagonal_totalizer(gamma);
  Code e = encode(compile_lambda("\\z. univ H (pair (univ D z) (snd z))",
                                 {{"H", Term::numeral(h)}, {"D", Term::numeral(d.code)}}));
  Code f_code = encode(compile_lambda("\\n. univ D (pair E n)", {{"D", Term::numeral(d.code)}, {"E", Term::numeral(e)}}));
  return TotalCodeMap{[d, e](const Code& n) { return d(pair_codes(e, n)); }, f_code};
}

// f |-> the binary map h(x, n) = f(x), as a code.
inline CodeTemplate ignore_parameter_template() { return CodeTemplate("\\z. univ F (fst z)", {"F"}); }

// Total map sending the code of f to a fixed point of f. No search: the
// point is d(e_f, 0) with e_f assembled from f by quotation.
inline TotalCodeMap ershov_fixpoint_operator(const Numbering& gamma) {
  TotalCodeMap d = diagonal_totalizer(gamma);
  CodeTemplate h_of = ignore_parameter_template();
  CodeTemplate e_of("\\z. univ H (pair (univ D z) (snd z))", {"H"}, {{"D", Term::numeral(d.code)}});
  Code code = encode(compile_lambda("\\f. univ D (pair (univ EP (univ HP f)) 0)",
                                    {{"D", Term::numeral(d.code)},
                                     {"EP", Term::numeral(e_of.program_code())},
                                     {"HP", Term::numeral(h_of.program_code())}}));
  return TotalCodeMap{[d, h_of, e_of](const Code& f) { return d(pair_codes(e_of.fill({h_of.fill({f})}), 0)); }, code};
}

// A fixed point n of the total map with code f: f(n) ~ n.
inline FixpointWitness ershov_fixpoint(const Numbering& gamma, const Code& f, std::uint64_t budget = 1000,
                                       const TotalityCheck& check = {}) {
  require_total_on(f, check, "ershov_fixpoint");
  FixpointWitness w;
  w.point = ershov_fixpoint_operator(gamma)(f);
  w.transform = f;
  w.check_budget = budget;
  PartialValue image = phi(f, w.point, Fuel{budget});
  w.verdict = image.defined() ? gamma.equiv_bounded(image.value(), w.point, budget) : Verdict::Unknown;
  return w;
}

// The universal partial function as a binary map: <x, n> |-> phi_n(x).
inline Code universal_binary_code() {
  static const Code c = encode(compile_lambda("\\z. univ (snd z) (fst z)"));
  return c;
}

// f with phi_n(f(n)) ~ f(n) whenever phi_n(f(n)) converges: the fixed point with
// a parameter, applied to a totalizer of the universal function.
inline TotalCodeMap ershov_abs(const Numbering& gamma) {
  TotalCodeMap h = gamma.totalizer(universal_binary_code());
  return ershov_param(gamma, h.code);
}

// The ABS form from any solver of the parameter form.
template <typename ParamSolver>
TotalCodeMap param_from_abs(const Numbering& gamma, ParamSolver solve) {
  TotalCodeMap h = gamma.totalizer(universal_binary_code());
  return solve(gamma, h.code);
}

inline TotalCodeMap param_from_abs(const Numbering& gamma) {
  return param_from_abs(gamma, [](const Numbering& g, const Code& h) { return ershov_param(g, h); });
}

// The parameter form from an ABS map: with g(n) = code of x |-> h(<x, n>),
// n |-> f_abs(g(n)) satisfies h(f(g(n)), n) = phi_{g(n)}(f(g(n))) ~ f(g(n)).
inline TotalCodeMap abs_from_param(const Numbering&, const TotalCodeMap& f_abs, const Code& h) {
  CodeTemplate g_of("\\x. univ H (pair x n)", {"n"}, {{"H", Term::numeral(h)}});
  Code code = encode(compile_lambda("\\n. univ FA (univ G n)",
                                    {{"FA", Term::numeral(f_abs.code)}, {"G", Term::numeral(g_of.program_code())}}));
  return TotalCodeMap{[f_abs, g_of](const Code& n) { return f_abs(g_of.fill({n})); }, code};
}

enum class QuineStyle { OutputSelf, ApplySelf };

// OutputSelf: phi_q(x) = q for all x, the fixed point of n |-> code of (K n).
// ApplySelf:  phi_q(x) = phi_x(q), the fixed point of n |-> code of (\x. univ x n).
inline Code quine(QuineStyle style, const Numbering& gamma = phi_numbering()) {
  CodeTemplate builder = style == QuineStyle::OutputSelf ? CodeTemplate("K n", {"n"})
                                                         : CodeTemplate("\\x. univ x n", {"n"});
  return ershov_fixpoint_operator(gamma)(builder.program_code());
}

}  // namespace pcalab
