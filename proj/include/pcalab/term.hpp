#pragma once

// Applicative terms over the combinators K and S, numerals and primitive
// operations. Terms are immutable and structurally shared; application
// associates to the left.

#include "pcalab/natural.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace pcalab {

// Primitive operations. The first three are the arithmetic core; the rest
// give the language its universal function, code construction and the
// step-counting operators used by dovetailed constructions.
enum class Prim : std::uint8_t {
  Succ,    // succ n        -> n + 1
  Pred,    // pred n        -> n - 1, pred 0 = 0
  Ifz,     // ifz n a b     -> a if n = 0, else b
  Sub,     // sub a b       -> max(a - b, 0)
  Pair,    // pair x y      -> Cantor <x, y>
  Fst,     // fst <x, y>    -> x
  Snd,     // snd <x, y>    -> y
  CApp,    // capp a b      -> code of (decode a)(decode b)
  CNum,    // cnum n        -> code of the numeral n
  Univ,    // univ e x      -> (decode e) x
  Race,    // race d x p n  -> dovetails (decode d) x against (decode p) n
  Stages,  // stages e x    -> number of steps (decode e) x takes to yield a numeral
};

inline constexpr std::array<Prim, 12> kAllPrims = {
    Prim::Succ, Prim::Pred, Prim::Ifz,  Prim::Sub,  Prim::Pair, Prim::Fst,
    Prim::Snd,  Prim::CApp, Prim::CNum, Prim::Univ, Prim::Race, Prim::Stages};

inline constexpr std::string_view prim_name(Prim p) {
  switch (p) {
    case Prim::Succ: return "succ";
    case Prim::Pred: return "pred";
    case Prim::Ifz: return "ifz";
    case Prim::Sub: return "sub";
    case Prim::Pair: return "pair";
    case Prim::Fst: return "fst";
    case Prim::Snd: return "snd";
    case Prim::CApp: return "capp";
    case Prim::CNum: return "cnum";
    case Prim::Univ: return "univ";
    case Prim::Race: return "race";
    case Prim::Stages: return "stages";
  }
  return "?";
}

inline constexpr unsigned prim_arity(Prim p) {
  switch (p) {
    case Prim::Succ:
    case Prim::Pred:
    case Prim::Fst:
    case Prim::Snd:
    case Prim::CNum: return 1;
    case Prim::Sub:
    case Prim::Pair:
    case Prim::CApp:
    case Prim::Univ:
    case Prim::Stages: return 2;
    case Prim::Ifz: return 3;
    case Prim::Race: return 4;
  }
  return 0;
}

inline std::optional<Prim> prim_from_name(std::string_view name) {
  for (Prim p : kAllPrims) {
    if (prim_name(p) == name) return p;
  }
  return std::nullopt;
}

enum class Kind : std::uint8_t { K, S, Numeral, Prim, Var, App };

class Term {
 public:
  static Term k() {
    static const Term t(make_atom(Kind::K));
    return t;
  }
  static Term s() {
    static const Term t(make_atom(Kind::S));
    return t;
  }
  static Term prim(Prim p) {
    static const std::array<Term, kAllPrims.size()> table = [] {
      std::array<Term, kAllPrims.size()> out{};
      for (Prim q : kAllPrims) {
        auto node = make_atom(Kind::Prim);
        node->op = q;
        node->head_op = q;
        node->hash = mix(node->hash, static_cast<std::size_t>(q) + 1);
        out[static_cast<std::size_t>(q)] = Term(std::move(node));
      }
      return out;
    }();
    return table[static_cast<std::size_t>(p)];
  }
  static Term numeral(Natural n) {
    auto node = make_atom(Kind::Numeral);
    std::size_t h = static_cast<std::size_t>(static_cast<std::uint64_t>(n & 0xffffffffffffffffULL));
    node->hash = mix(node->hash, mix(h, bit_length(n)));
    node->num = std::move(n);
    return Term(std::move(node));
  }
  static Term var(std::uint32_t index) {
    auto node = make_atom(Kind::Var);
    node->var = index;
    node->closed = false;
    node->value = false;
    node->hash = mix(node->hash, index + 0x51ed27);
    return Term(std::move(node));
  }
  static Term app(Term fun, Term arg) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::App;
    node->closed = fun.node_->closed && arg.node_->closed;
    node->head = fun.node_->head;
    node->head_op = fun.node_->head_op;
    node->spine_args = fun.node_->spine_args + 1;
    node->size = fun.node_->size + arg.node_->size + 1;
    node->depth = 1 + std::max(fun.node_->depth, arg.node_->depth);
    node->hash = mix(mix(0x9e3779b97f4a7c15ULL, fun.node_->hash), arg.node_->hash);
    unsigned arity = head_arity(node->head, node->head_op);
    node->value = fun.node_->value && arg.node_->value && arity > 0 && node->spine_args < arity;
    node->fun = std::move(fun.node_);
    node->arg = std::move(arg.node_);
    return Term(std::move(node));
  }

  /// Left-associated application: apply(f, a, b) = (f a) b.
  template <typename... Rest>
  static Term apply(Term fun, Term arg, Rest... rest) {
    Term out = app(std::move(fun), std::move(arg));
    if constexpr (sizeof...(rest) == 0) {
      return out;
    } else {
      return apply(std::move(out), std::move(rest)...);
    }
  }

  Term() : Term(k()) {}

  Kind kind() const { return node_->kind; }
  bool is_app() const { return node_->kind == Kind::App; }
  bool is_numeral() const { return node_->kind == Kind::Numeral; }
  bool is_var() const { return node_->kind == Kind::Var; }

  const Natural& numeral_value() const {
    if (node_->kind != Kind::Numeral) throw std::logic_error("not a numeral");
    return node_->num;
  }
  Prim prim_op() const {
    if (node_->kind != Kind::Prim) throw std::logic_error("not a primitive");
    return node_->op;
  }
  std::uint32_t var_index() const {
    if (node_->kind != Kind::Var) throw std::logic_error("not a variable");
    return node_->var;
  }
  Term fun() const {
    if (node_->kind != Kind::App) throw std::logic_error("not an application");
    return Term(node_->fun);
  }
  Term arg() const {
    if (node_->kind != Kind::App) throw std::logic_error("not an application");
    return Term(node_->arg);
  }

  bool closed() const { return node_->closed; }
  // Weak normal form: an atom other than a variable, or a combinator or
  // primitive applied to fewer values than its arity.
  bool is_value() const { return node_->value; }
  Kind head_kind() const { return node_->head; }
  Prim head_prim() const { return node_->head_op; }
  std::uint32_t spine_args() const { return node_->spine_args; }
  std::uint64_t size() const { return node_->size; }
  std::uint32_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }
  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b) { return equal(a, b); }
  friend bool operator!=(const Term& a, const Term& b) { return !equal(a, b); }

 private:
  struct Node {
    Kind kind = Kind::K;
    Prim op = Prim::Succ;
    Kind head = Kind::K;
    Prim head_op = Prim::Succ;
    bool closed = true;
    bool value = true;
    std::uint32_t var = 0;
    std::uint32_t spine_args = 0;
    std::uint32_t depth = 1;
    std::uint64_t size = 1;
    std::size_t hash = 0;
    Natural num;
    mutable std::shared_ptr<const Node> fun;
    mutable std::shared_ptr<const Node> arg;

    Node() = default;
    Node(const Node&) = delete;
    Node& operator=(const Node&) = delete;
    // Long spines would otherwise be released recursively.
    ~Node() {
      if (!fun && !arg) return;
      std::vector<std::shared_ptr<const Node>> pending;
      if (fun) pending.push_back(std::move(fun));
      if (arg) pending.push_back(std::move(arg));
      while (!pending.empty()) {
        std::shared_ptr<const Node> n = std::move(pending.back());
        pending.pop_back();
        if (n.use_count() == 1) {
          if (n->fun) pending.push_back(std::move(n->fun));
          if (n->arg) pending.push_back(std::move(n->arg));
        }
      }
    }
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<Node> make_atom(Kind kind) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->head = kind;
    node->hash = mix(0x2545f4914f6cdd1dULL, static_cast<std::size_t>(kind) + 1);
    if (kind == Kind::Numeral) node->value = true;
    return node;
  }

  static unsigned head_arity(Kind head, Prim op) {
    switch (head) {
      case Kind::K: return 2;
      case Kind::S: return 3;
      case Kind::Prim: return prim_arity(op);
      default: return 0;
    }
  }

  static std::size_t mix(std::size_t a, std::size_t b) {
    std::uint64_t x = static_cast<std::uint64_t>(a) * 0xff51afd7ed558ccdULL + static_cast<std::uint64_t>(b);
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 29;
    return static_cast<std::size_t>(x);
  }

  static bool equal(const Term& a, const Term& b) {
    std::vector<std::pair<const Node*, const Node*>> todo{{a.node_.get(), b.node_.get()}};
    while (!todo.empty()) {
      auto [x, y] = todo.back();
      todo.pop_back();
      if (x == y) continue;
      if (x->hash != y->hash || x->kind != y->kind || x->size != y->size) return false;
      switch (x->kind) {
        case Kind::K:
        case Kind::S: break;
        case Kind::Prim:
          if (x->op != y->op) return false;
          break;
        case Kind::Var:
          if (x->var != y->var) return false;
          break;
        case Kind::Numeral:
          if (x->num != y->num) return false;
          break;
        case Kind::App:
          todo.emplace_back(x->fun.get(), y->fun.get());
          todo.emplace_back(x->arg.get(), y->arg.get());
          break;
      }
    }
    return true;
  }

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Head and arguments of an application spine, leftmost argument first.
inline std::pair<Term, std::vector<Term>> unspine(const Term& t) {
  std::vector<Term> args;
  Term cur = t;
  while (cur.is_app()) {
    args.push_back(cur.arg());
    cur = cur.fun();
  }
  return {cur, std::vector<Term>(args.rbegin(), args.rend())};
}

inline Term num(std::uint64_t n) { return Term::numeral(Natural(n)); }
inline Term num(const Natural& n) { return Term::numeral(n); }

// Replaces Var(i) by replacement(i) where it returns a term.
inline Term substitute(const Term& t, const std::function<std::optional<Term>(std::uint32_t)>& replacement) {
  if (t.closed()) return t;
  if (t.is_var()) {
    auto r = replacement(t.var_index());
    return r ? *r : t;
  }
  if (!t.is_app()) return t;
  return Term::app(substitute(t.fun(), replacement), substitute(t.arg(), replacement));
}

inline Term substitute(const Term& t, std::uint32_t index, const Term& value) {
  return substitute(t, [&](std::uint32_t i) -> std::optional<Term> {
    if (i == index) return value;
    return std::nullopt;
  });
}

inline bool occurs(const Term& t, std::uint32_t index) {
  if (t.closed()) return false;
  if (t.is_var()) return t.var_index() == index;
  if (!t.is_app()) return false;
  return occurs(t.fun(), index) || occurs(t.arg(), index);
}

inline void collect_vars(const Term& t, std::vector<std::uint32_t>& out) {
  if (t.closed()) return;
  if (t.is_var()) {
    for (auto v : out) {
      if (v == t.var_index()) return;
    }
    out.push_back(t.var_index());
    return;
  }
  if (t.is_app()) {
    collect_vars(t.fun(), out);
    collect_vars(t.arg(), out);
  }
}

}  // namespace pcalab
