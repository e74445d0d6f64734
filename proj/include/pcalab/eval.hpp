#pragma once

// Strict, fuel-bounded evaluation of closed terms.
//
// Reduction is leftmost with call-by-value arguments: in an application the
// function part is reduced to weak normal form, then the argument, and only
// then does a saturated combinator or primitive fire. Every argument
// position is forced, including the argument that K discards, so `K a b` is
// undefined whenever `b` is. One fired rule is one step of fuel.
//
//   K a b        -> a
//   S a b c      -> a c (b c)
//   succ n, pred n, ifz n a b, sub m n, pair m n, fst n, snd n, capp m n, cnum n
//                -> fire only on numeral arguments; otherwise the term is stuck
//   univ e x     -> (decode e) x
//   race d x p n -> runs (decode d) x and (decode p) n one step each per round
//   stages e x   -> runs (decode e) x and returns its step count
//
// `race` and `stages` run their contestants as sub-machines of the current
// machine, so each sub-step costs one step of the enclosing fuel and nested
// dovetailing stays inside a single thread of control.

#include "pcalab/codec.hpp"
#include "pcalab/term.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace pcalab {

struct Fuel {
  std::uint64_t steps = 0;
};

struct EvalConfig {
  // Only K and S fire; every primitive application is stuck.
  bool pure_sk = false;
  // K reduces by the S rule and S by the K rule. Used to probe checkers with
  // a structure that is not combinatory complete.
  bool swap_ks = false;
};

struct ValueResult {
  Term term;
};
struct OutOfFuel {};
struct StuckResult {
  Term redex;
};

class EvalResult {
 public:
  std::variant<ValueResult, OutOfFuel, StuckResult> outcome;
  std::uint64_t steps = 0;

  bool is_value() const { return std::holds_alternative<ValueResult>(outcome); }
  bool out_of_fuel() const { return std::holds_alternative<OutOfFuel>(outcome); }
  bool is_stuck() const { return std::holds_alternative<StuckResult>(outcome); }
  const Term& value() const { return std::get<ValueResult>(outcome).term; }
  std::optional<Natural> numeral() const {
    if (is_value() && value().is_numeral()) return value().numeral_value();
    return std::nullopt;
  }
};

// Contestants in the dovetailed race: the first argument pair runs on the left.
enum class Side : std::uint8_t { Left, Right };

struct RaceArgs {
  Code left_code;
  Natural left_input;
  Code right_code;
  Natural right_input;

  friend bool operator==(const RaceArgs&, const RaceArgs&) = default;
};

class Machine {
 public:
  enum class Status : std::uint8_t { Running, Value, Stuck };

  explicit Machine(Term t, EvalConfig config = {}) : config_(config), focus_(std::move(t)) {
    if (!focus_.closed()) throw std::invalid_argument("evaluate: term has free variables");
    advance();
  }

  Machine(const Machine& other) { copy_from(other); }
  Machine& operator=(const Machine& other) {
    if (this != &other) copy_from(other);
    return *this;
  }
  Machine(Machine&&) noexcept = default;
  Machine& operator=(Machine&&) noexcept = default;
  ~Machine() = default;

  Status status() const { return status_; }
  bool halted() const { return status_ != Status::Running; }
  std::uint64_t steps() const { return steps_; }
  // The value when halted with Status::Value, the stuck redex otherwise.
  const Term& result() const { return focus_; }

  // Performs one step: fires the pending redex, or advances the active
  // sub-computation by one of its own steps. Returns false when halted.
  bool step();

  // Innermost-first view of the race this machine is currently running, if any.
  const RaceArgs* active_race() const;
  const Machine* race_contestant(Side side) const;

  friend bool operator==(const Machine& a, const Machine& b) { return a.same_state(b); }

 private:
  enum class Mode : std::uint8_t { Eval, Return, Fire, Halted };
  enum class FrameTag : std::uint8_t { EvalArg, ApplyTo };
  struct Frame {
    FrameTag tag;
    Term term;
  };
  struct Race;
  struct Stages;
  struct Sub;

  void advance();
  void fire();
  void halt(Status s, Term t) {
    status_ = s;
    focus_ = std::move(t);
    mode_ = Mode::Halted;
    stack_.clear();
  }
  void finish_sub(std::optional<Term> value);
  void step_sub();
  unsigned arity(Kind head, Prim op) const {
    switch (head) {
      case Kind::K: return config_.swap_ks ? 3 : 2;
      case Kind::S: return config_.swap_ks ? 2 : 3;
      case Kind::Prim: return prim_arity(op);
      default: return 0;
    }
  }
  void copy_from(const Machine& other);
  bool same_state(const Machine& other) const;

  EvalConfig config_;
  Mode mode_ = Mode::Eval;
  Status status_ = Status::Running;
  Term focus_;
  std::vector<Frame> stack_;
  std::uint64_t steps_ = 0;
  std::unique_ptr<Sub> sub_;
};

struct Machine::Race {
  RaceArgs args;
  Machine left;
  Machine right;
  bool left_turn = true;
};

struct Machine::Stages {
  Machine inner;
};

struct Machine::Sub {
  std::variant<Race, Stages> state;
};

inline void Machine::copy_from(const Machine& other) {
  config_ = other.config_;
  mode_ = other.mode_;
  status_ = other.status_;
  focus_ = other.focus_;
  stack_ = other.stack_;
  steps_ = other.steps_;
  sub_ = other.sub_ ? std::make_unique<Sub>(*other.sub_) : nullptr;
}

inline bool Machine::same_state(const Machine& other) const {
  if (mode_ != other.mode_ || status_ != other.status_ || stack_.size() != other.stack_.size()) return false;
  if (bool(sub_) != bool(other.sub_)) return false;
  if (!(focus_ == other.focus_)) return false;
  for (std::size_t i = stack_.size(); i-- > 0;) {
    if (stack_[i].tag != other.stack_[i].tag || !(stack_[i].term == other.stack_[i].term)) return false;
  }
  if (sub_) {
    const auto& a = sub_->state;
    const auto& b = other.sub_->state;
    if (a.index() != b.index()) return false;
    if (auto* ra = std::get_if<Race>(&a)) {
      const auto& rb = std::get<Race>(b);
      return ra->left_turn == rb.left_turn && ra->args == rb.args && ra->left == rb.left && ra->right == rb.right;
    }
    return std::get<Stages>(a).inner == std::get<Stages>(b).inner;
  }
  return true;
}

inline const RaceArgs* Machine::active_race() const {
  if (!sub_) return nullptr;
  if (auto* r = std::get_if<Race>(&sub_->state)) return &r->args;
  return nullptr;
}

inline const Machine* Machine::race_contestant(Side side) const {
  if (!sub_) return nullptr;
  if (auto* r = std::get_if<Race>(&sub_->state)) return side == Side::Left ? &r->left : &r->right;
  return nullptr;
}

// Runs administrative transitions until a redex is ready to fire or the
// machine halts. Consumes no fuel.
inline void Machine::advance() {
  const bool fast_values = !config_.swap_ks;
  while (true) {
    switch (mode_) {
      case Mode::Halted:
      case Mode::Fire: return;
      case Mode::Eval: {
        if (fast_values && focus_.is_value()) {
          mode_ = Mode::Return;
          break;
        }
        if (focus_.is_app()) {
          stack_.push_back({FrameTag::EvalArg, focus_.arg()});
          focus_ = focus_.fun();
          break;
        }
        if (focus_.is_var()) {
          halt(Status::Stuck, focus_);
          return;
        }
        mode_ = Mode::Return;
        break;
      }
      case Mode::Return: {
        if (stack_.empty()) {
          status_ = Status::Value;
          mode_ = Mode::Halted;
          return;
        }
        Frame frame = std::move(stack_.back());
        stack_.pop_back();
        if (frame.tag == FrameTag::EvalArg) {
          stack_.push_back({FrameTag::ApplyTo, focus_});
          focus_ = std::move(frame.term);
          mode_ = Mode::Eval;
          break;
        }
        Term combined = Term::app(std::move(frame.term), std::move(focus_));
        unsigned n = arity(combined.head_kind(), combined.head_prim());
        if (n == 0) {
          halt(Status::Stuck, std::move(combined));
          return;
        }
        focus_ = std::move(combined);
        if (focus_.spine_args() < n) {
          mode_ = Mode::Return;
          break;
        }
        mode_ = Mode::Fire;
        return;
      }
    }
  }
}

inline bool Machine::step() {
  if (halted()) return false;
  ++steps_;
  if (sub_) {
    step_sub();
  } else {
    fire();
  }
  advance();
  return true;
}

inline void Machine::fire() {
  auto [head, args] = unspine(focus_);
  Kind kind = head.kind();
  bool k_rule = (kind == Kind::K) != config_.swap_ks;
  if (kind == Kind::K || kind == Kind::S) {
    if (k_rule) {
      focus_ = args[0];
      mode_ = Mode::Return;
    } else {
      focus_ = Term::app(Term::app(args[0], args[2]), Term::app(args[1], args[2]));
      mode_ = Mode::Eval;
    }
    return;
  }
  Prim op = head.prim_op();
  if (config_.pure_sk) {
    halt(Status::Stuck, focus_);
    return;
  }
  bool numeric = true;
  unsigned numeric_args = op == Prim::Ifz ? 1 : static_cast<unsigned>(args.size());
  if (op == Prim::Univ) numeric_args = 1;
  for (unsigned i = 0; i < numeric_args; ++i) numeric = numeric && args[i].is_numeral();
  if (!numeric) {
    halt(Status::Stuck, focus_);
    return;
  }
  auto n = [&](std::size_t i) -> const Natural& { return args[i].numeral_value(); };
  mode_ = Mode::Return;
  switch (op) {
    case Prim::Succ: focus_ = Term::numeral(n(0) + 1); return;
    case Prim::Pred: focus_ = Term::numeral(n(0).is_zero() ? Natural(0) : Natural(n(0) - 1)); return;
    case Prim::Ifz: focus_ = n(0).is_zero() ? args[1] : args[2]; return;
    case Prim::Sub: focus_ = Term::numeral(n(0) > n(1) ? Natural(n(0) - n(1)) : Natural(0)); return;
    case Prim::Pair: focus_ = Term::numeral(cantor_pair(n(0), n(1))); return;
    case Prim::Fst: focus_ = Term::numeral(cantor_unpair(n(0)).first); return;
    case Prim::Snd: focus_ = Term::numeral(cantor_unpair(n(0)).second); return;
    case Prim::CApp: focus_ = Term::numeral(application_code(n(0), n(1))); return;
    case Prim::CNum: focus_ = Term::numeral(numeral_code(n(0))); return;
    case Prim::Univ:
      focus_ = Term::app(decode(n(0)), args[1]);
      mode_ = Mode::Eval;
      return;
    case Prim::Race: {
      RaceArgs ra{n(0), n(1), n(2), n(3)};
      Machine left(Term::app(decode(ra.left_code), Term::numeral(ra.left_input)), config_);
      Machine right(Term::app(decode(ra.right_code), Term::numeral(ra.right_input)), config_);
      sub_ = std::make_unique<Sub>(Sub{Race{std::move(ra), std::move(left), std::move(right)}});
      mode_ = Mode::Fire;
      // Contestants that halt before their first step are decided now.
      {
        auto& r = std::get<Race>(sub_->state);
        bool left_fail = r.left.halted() && !(r.left.status() == Status::Value && r.left.result().is_numeral());
        bool right_fail = r.right.halted() && !(r.right.status() == Status::Value && r.right.result().is_numeral());
        if (left_fail && right_fail) finish_sub(std::nullopt);
      }
      return;
    }
    case Prim::Stages: {
      Machine inner(Term::app(decode(n(0)), args[1]), config_);
      sub_ = std::make_unique<Sub>(Sub{Stages{std::move(inner)}});
      mode_ = Mode::Fire;
      auto& st = std::get<Stages>(sub_->state);
      if (st.inner.halted()) {
        if (st.inner.status() == Status::Value && st.inner.result().is_numeral()) {
          finish_sub(Term::numeral(Natural(0)));
        } else {
          finish_sub(std::nullopt);
        }
      }
      return;
    }
  }
}

inline void Machine::finish_sub(std::optional<Term> value) {
  Term redex = focus_;
  sub_.reset();
  if (!value) {
    halt(Status::Stuck, std::move(redex));
    return;
  }
  focus_ = std::move(*value);
  mode_ = Mode::Return;
}

inline void Machine::step_sub() {
  if (auto* st = std::get_if<Stages>(&sub_->state)) {
    st->inner.step();
    if (st->inner.halted()) {
      if (st->inner.status() == Status::Value && st->inner.result().is_numeral()) {
        finish_sub(Term::numeral(Natural(st->inner.steps())));
      } else {
        finish_sub(std::nullopt);
      }
    }
    return;
  }
  auto& r = std::get<Race>(sub_->state);
  auto converged = [](const Machine& m) { return m.status() == Status::Value && m.result().is_numeral(); };
  bool left_live = !r.left.halted();
  bool right_live = !r.right.halted();
  bool step_left = left_live && (r.left_turn || !right_live);
  if (step_left) {
    r.left.step();
    r.left_turn = false;
  } else {
    r.right.step();
    r.left_turn = true;
  }
  bool lc = converged(r.left);
  bool rc = converged(r.right);
  bool lfail = r.left.halted() && !lc;
  bool rfail = r.right.halted() && !rc;
  // Left converged at stage q wins only if the right cannot converge at a
  // stage <= q; ties go to the right contestant.
  if (rc && (!lc || r.right.steps() <= r.left.steps())) {
    finish_sub(r.right.result());
    return;
  }
  if (lc && (rfail || r.right.steps() >= r.left.steps())) {
    finish_sub(r.left.result());
    return;
  }
  if (lfail && rfail) finish_sub(std::nullopt);
}

inline EvalResult evaluate(const Term& t, Fuel fuel, const EvalConfig& config = {}) {
  Machine m(t, config);
  while (!m.halted() && m.steps() < fuel.steps) m.step();
  EvalResult r;
  r.steps = m.steps();
  switch (m.status()) {
    case Machine::Status::Value: r.outcome = ValueResult{m.result()}; break;
    case Machine::Status::Stuck: r.outcome = StuckResult{m.result()}; break;
    case Machine::Status::Running: r.outcome = OutOfFuel{}; break;
  }
  return r;
}

// Brent cycle detection over machine states. A deterministic machine that
// revisits a state never halts, so a hit is a proof of divergence.
inline std::optional<std::uint64_t> find_cycle(Machine m, std::uint64_t max_steps) {
  std::uint64_t power = 1;
  std::uint64_t lambda = 1;
  Machine saved = m;
  for (std::uint64_t i = 0; i < max_steps; ++i) {
    if (!m.step()) return std::nullopt;
    if (m == saved) return m.steps();
    if (lambda == power) {
      saved = m;
      power *= 2;
      lambda = 0;
    }
    ++lambda;
  }
  return std::nullopt;
}

}  // namespace pcalab
