#pragma once

// Totalizing a partial function while avoiding a diagonal function.
//
// For a diagonal delta (phi_{delta(x)} differs from phi_x wherever delta(x)
// converges) and any psi, the race
//
//   eta(x, n) = delta(x)   if delta(x) converges at a stage < that of psi(n)
//             = psi(n)     if psi(n) converges at a stage <= that of delta(x)
//             = undefined  if neither converges
//
// is totalized and fed to the parameter recursion theorem, giving f with
// f(n) ~ eta(f(n), n). The first case would make f(n) ~ delta(f(n)), which a
// diagonal forbids; so f(n) ~ psi(n) when psi(n) converges, and
// delta(f(n)) diverges when psi(n) does.

#include "pcalab/fixedpoints.hpp"

#include <variant>
#include <vector>

namespace pcalab {

struct FirstConverged {
  Side which;  // Left: the diagonal, Right: psi
  std::uint64_t stage;
  Natural value;
};

struct NeitherWithin {
  std::uint64_t budget;
};

using RaceOutcome = std::variant<FirstConverged, NeitherWithin>;

// Host-side race of phi_delta(x) against phi_psi(n), one step each per
// round, with the same decision rule as the `race` primitive. `budget`
// bounds the rounds.
inline RaceOutcome race(const Code& delta, const Natural& x, const Code& psi, const Natural& n, std::uint64_t budget) {
  Machine left(Term::app(decode(delta), Term::numeral(x)));
  Machine right(Term::app(decode(psi), Term::numeral(n)));
  auto converged = [](const Machine& m) { return m.status() == Machine::Status::Value && m.result().is_numeral(); };
  for (std::uint64_t round = 0;; ++round) {
    bool lc = converged(left), rc = converged(right);
    bool lfail = left.halted() && !lc, rfail = right.halted() && !rc;
    if (rc && (!lc || right.steps() <= left.steps())) {
      return FirstConverged{Side::Right, right.steps(), right.result().numeral_value()};
    }
    if (lc && (rfail || right.steps() >= left.steps())) {
      return FirstConverged{Side::Left, left.steps(), left.result().numeral_value()};
    }
    if ((lfail && rfail) || round == budget) return NeitherWithin{budget};
    left.step();
    right.step();
  }
}

// Code of the binary eta: <x, n> |-> race delta x psi n.
inline Code race_eta(const Code& delta, const Code& psi) {
  return encode(compile_lambda("\\z. race D (fst z) P (snd z)", {{"D", Term::numeral(delta)}, {"P", Term::numeral(psi)}}));
}

// delta(x) converges iff phi_x(0) does, and then delta(x) is a code that
// returns phi_x(0) + 1 at 0 and agrees with phi_x elsewhere.
inline Code make_sample_diagonal() {
  static const Code c = [] {
    CodeTemplate variant("\\y. ifz y (\\u. V) (\\u. univ X y) 0", {"X", "V"});
    return encode(compile_lambda("\\x. T x (succ (univ x 0))", {{"T", variant.program()}}));
  }();
  return c;
}

struct AdnOptions {
  std::vector<Natural> diagonal_sample;  // empty: codes 0..40 and a few named programs
  std::uint64_t diagonal_budget = 1000;
  TotalityCheck totality{};
};

inline std::vector<Natural> default_diagonal_sample() {
  std::vector<Natural> out;
  for (int i = 0; i <= 40; ++i) out.emplace_back(i);
  for (const Term& t : {programs::identity(), programs::successor(), programs::constant(0), programs::constant(7),
                        programs::add(3), programs::divergent()}) {
    out.push_back(encode(t));
  }
  return out;
}

// Both codes in, one code out: the construction is a fixed function of
// (delta, psi), so equal inputs give the identical output code.
inline TotalCodeMap adn_totalize(const Numbering& gamma, const Code& delta, const Code& psi,
                                 const AdnOptions& opt = {}) {
  auto sample = opt.diagonal_sample.empty() ? default_diagonal_sample() : opt.diagonal_sample;
  DiagonalReport report = is_diagonal_on(gamma, delta, sample, opt.diagonal_budget);
  if (!report.diagonal()) {
    throw MisuseError("adn_totalize: delta is not diagonal at x = " + report.violations.front().x.str());
  }
  TotalCodeMap h = gamma.totalizer(race_eta(delta, psi));
  return ershov_param(gamma, h.code, opt.totality);
}

// psi(<e, n>) = phi_e(n)
inline Code universal_unary_code() {
  static const Code c = encode(compile_lambda("\\z. univ (fst z) (snd z)"));
  return c;
}

// f(<e, n>) totalizes phi_e avoiding delta, for every e.
inline TotalCodeMap adn_uniform(const Numbering& gamma, const Code& delta, const AdnOptions& opt = {}) {
  return adn_totalize(gamma, delta, universal_unary_code(), opt);
}

// Evidence that delta(f(n)) diverges, read off the running machine:
//   race_found     the run of delta(f(n)) reaches race delta f(n) psi n
//   psi_cycles     the psi contestant revisits a machine state
//   self_contest   the delta contestant is the audited run itself
// Together these prove divergence: the race cannot be won by psi, and the
// delta contestant would have to halt strictly before the run containing it.
struct AvoidanceAudit {
  bool race_found = false;
  std::uint64_t race_started_at = 0;
  bool psi_cycles = false;
  bool self_contest = false;

  bool proves_divergence() const { return race_found && psi_cycles && self_contest; }
};

inline AvoidanceAudit audit_avoidance(const Code& delta, const Code& psi, const Code& point, const Natural& n,
                                      std::uint64_t max_steps = 100000) {
  AvoidanceAudit audit;
  Term run = Term::app(decode(delta), Term::numeral(point));
  Machine m(run);
  while (!m.halted() && m.steps() < max_steps && !m.active_race()) m.step();
  const RaceArgs* ra = m.active_race();
  if (!ra) return audit;
  audit.race_found = ra->left_code == delta && ra->left_input == point && ra->right_code == psi && ra->right_input == n;
  audit.race_started_at = m.steps();
  if (!audit.race_found) return audit;
  audit.psi_cycles = find_cycle(*m.race_contestant(Side::Right), max_steps).has_value();
  Machine fresh(run);
  audit.self_contest = *m.race_contestant(Side::Left) == fresh;
  return audit;
}

}  // namespace pcalab
