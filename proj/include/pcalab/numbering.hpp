#pragma once

// Numberings, bounded checking of the induced equivalence, and totalizers.
//
// A numbering is never materialised; it is given by its equivalence on codes
// (checked up to a budget) and by a totalizer: for every code p a total map
// f with f(n) ~ phi_p(n) whenever phi_p(n) converges. When a special element
// is present, f(n) ~ special whenever phi_p(n) diverges.

#include "pcalab/k1.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pcalab {

// Yes means no disagreement was found within the budget ("yes so far");
// No is final; Unknown means the budget ran out on one side only.
enum class Verdict { Yes, No, Unknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

inline std::ostream& operator<<(std::ostream& os, Verdict v) { return os << verdict_name(v); }

// A total computable map on codes: host-side `map` and its own program code
// with phi_code(n) = map(n).
struct TotalCodeMap {
  std::function<Code(const Code&)> map;
  Code code;

  Code operator()(const Code& n) const { return map(n); }
};

class MisuseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Numbering {
  std::string name;
  std::function<Verdict(const Code&, const Code&, std::uint64_t budget)> equiv_bounded;
  std::function<TotalCodeMap(const Code& p)> totalizer;
  std::optional<Code> special_element;
};

struct PhiNumberingOptions {
  // Inputs 0..min(budget, input_cap) are compared.
  std::uint64_t input_cap = 20;
};

// Compares phi_a and phi_b on inputs 0..min(budget, cap) at fuel `budget`.
inline Verdict phi_equiv_bounded(const Code& a, const Code& b, std::uint64_t budget, std::uint64_t cap = 20) {
  if (a == b) return Verdict::Yes;
  Verdict out = Verdict::Yes;
  std::uint64_t last = std::min(budget, cap);
  for (std::uint64_t x = 0; x <= last; ++x) {
    PartialValue va = phi(a, x, Fuel{budget});
    PartialValue vb = phi(b, x, Fuel{budget});
    if (va.defined() && vb.defined()) {
      if (va.value() != vb.value()) return Verdict::No;
    } else if (va.defined() != vb.defined()) {
      out = Verdict::Unknown;
    }
  }
  return out;
}

// f(n) = code of  univ (univ p n) : first compute phi_p(n), then run the
// result on the input. If phi_p(n) diverges so does every application of f(n).
inline TotalCodeMap phi_totalizer(const Code& p) {
  CodeTemplate tmpl("univ (univ P n)", {"n"}, {{"P", Term::numeral(p)}});
  return TotalCodeMap{[tmpl](const Code& n) { return tmpl.fill({n}); }, tmpl.program_code()};
}

inline Numbering phi_numbering(PhiNumberingOptions opt = {}) {
  Numbering g;
  g.name = "phi";
  g.equiv_bounded = [cap = opt.input_cap](const Code& a, const Code& b, std::uint64_t budget) {
    return phi_equiv_bounded(a, b, budget, cap);
  };
  g.totalizer = phi_totalizer;
  g.special_element = encode(programs::divergent());
  return g;
}

// Convenience: totalize(gamma, p) = gamma.totalizer(p).
inline TotalCodeMap totalize(const Numbering& gamma, const Code& p) { return gamma.totalizer(p); }

struct DiagonalViolation {
  Natural x;
  Natural image;
};

struct DiagonalReport {
  std::size_t in_domain = 0;  // sample points where d converged
  std::vector<DiagonalViolation> violations;

  bool diagonal() const { return violations.empty(); }
};

// For each x in the sample where phi_d(x) = y converges, requires that
// y ~ x is not confirmed at the budget.
inline DiagonalReport is_diagonal_on(const Numbering& gamma, const Code& d, const std::vector<Natural>& sample,
                                     std::uint64_t budget) {
  DiagonalReport report;
  for (const auto& x : sample) {
    PartialValue y = phi(d, x, Fuel{budget});
    if (!y.defined()) continue;
    ++report.in_domain;
    if (gamma.equiv_bounded(y.value(), x, budget) == Verdict::Yes) report.violations.push_back({x, y.value()});
  }
  return report;
}

}  // namespace pcalab
