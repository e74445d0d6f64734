#include "pcalab/codec.hpp"
#include "pcalab/eval.hpp"
#include "pcalab/syntax.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace pcalab;

namespace {

Term I() { return Term::apply(Term::s(), Term::k(), Term::k()); }
Term omega() { return Term::apply(Term::s(), I(), I()); }

// Reference reducer for the K/S/succ fragment, written as a recursive
// big-step function with an explicit step counter. Independent of Machine.
struct RefEval {
  std::uint64_t budget;
  std::uint64_t used = 0;
  bool stuck = false;

  std::optional<Term> run(const Term& t) {
    if (!t.is_app()) return t;
    auto f = run(t.fun());
    if (!f) return std::nullopt;
    auto a = run(t.arg());
    if (!a) return std::nullopt;
    return apply(*f, *a);
  }

  std::optional<Term> apply(const Term& f, const Term& a) {
    auto [head, args] = unspine(Term::app(f, a));
    std::size_t need = head.kind() == Kind::K ? 2 : head.kind() == Kind::S ? 3 : head.kind() == Kind::Prim ? 1 : 0;
    if (need == 0) {
      stuck = true;
      return std::nullopt;
    }
    if (args.size() < need) return Term::app(f, a);
    if (used == budget) return std::nullopt;
    ++used;
    if (head.kind() == Kind::K) return args[0];
    if (head.kind() == Kind::S) {
      auto l = apply_chain(args[0], args[2]);
      if (!l) return std::nullopt;
      auto r = apply_chain(args[1], args[2]);
      if (!r) return std::nullopt;
      return apply(*l, *r);
    }
    if (!args[0].is_numeral()) {
      stuck = true;
      return std::nullopt;
    }
    return Term::numeral(args[0].numeral_value() + 1);
  }
  std::optional<Term> apply_chain(const Term& f, const Term& a) { return apply(f, a); }
};

Term random_sk(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> d(0, 9);
  int c = d(rng);
  if (depth == 0 || c < 4) {
    switch (c % 4) {
      case 0: return Term::k();
      case 1: return Term::s();
      case 2: return Term::prim(Prim::Succ);
      default: return num(c);
    }
  }
  return Term::app(random_sk(rng, depth - 1), random_sk(rng, depth - 1));
}

}  // namespace

TEST(Eval, KReturnsFirst) {
  auto r = evaluate(parse_term("K 3 5"), Fuel{100});
  ASSERT_TRUE(r.is_value());
  EXPECT_EQ(r.value(), num(3));
  EXPECT_EQ(r.steps, 1u);
}

TEST(Eval, SkkIsIdentity) {
  // S K K 7 -> K 7 (K 7) -> 7
  auto r = evaluate(parse_term("S K K 7"), Fuel{100});
  ASSERT_TRUE(r.is_value());
  EXPECT_EQ(r.value(), num(7));
  EXPECT_EQ(r.steps, 2u);
}

TEST(Eval, OmegaRunsOutOfFuel) {
  auto r = evaluate(Term::app(omega(), omega()), Fuel{1000});
  EXPECT_TRUE(r.out_of_fuel());
  EXPECT_EQ(r.steps, 1000u);
}

TEST(Eval, OmegaCycleIsDetected) {
  Machine m(Term::app(omega(), omega()));
  EXPECT_TRUE(find_cycle(m, 1000).has_value());
  Machine halting(parse_term("S K K 7"));
  EXPECT_FALSE(find_cycle(halting, 1000).has_value());
}

TEST(Eval, PrimitiveOnNonNumeralIsStuck) {
  auto r = evaluate(parse_term("succ K"), Fuel{100});
  EXPECT_TRUE(r.is_stuck());
  auto n = evaluate(parse_term("3 4"), Fuel{100});
  EXPECT_TRUE(n.is_stuck());
}

TEST(Eval, ArithmeticPrimitives) {
  EXPECT_EQ(*evaluate(parse_term("pred 0"), Fuel{10}).numeral(), 0);
  EXPECT_EQ(*evaluate(parse_term("pred 5"), Fuel{10}).numeral(), 4);
  EXPECT_EQ(*evaluate(parse_term("sub 3 5"), Fuel{10}).numeral(), 0);
  EXPECT_EQ(*evaluate(parse_term("sub 9 5"), Fuel{10}).numeral(), 4);
  EXPECT_EQ(*evaluate(parse_term("ifz 0 1 2"), Fuel{10}).numeral(), 1);
  EXPECT_EQ(*evaluate(parse_term("ifz 7 1 2"), Fuel{10}).numeral(), 2);
  // ifz only inspects its first argument.
  EXPECT_EQ(evaluate(parse_term("ifz 0 K S"), Fuel{10}).value(), Term::k());
  for (int x = 0; x < 6; ++x) {
    for (int y = 0; y < 6; ++y) {
      Term p = Term::apply(Term::prim(Prim::Pair), num(x), num(y));
      auto z = evaluate(p, Fuel{10}).numeral();
      ASSERT_TRUE(z);
      int expected = (x + y) * (x + y + 1) / 2 + y;
      EXPECT_EQ(*z, expected);
      EXPECT_EQ(*evaluate(Term::app(Term::prim(Prim::Fst), num(expected)), Fuel{10}).numeral(), x);
      EXPECT_EQ(*evaluate(Term::app(Term::prim(Prim::Snd), num(expected)), Fuel{10}).numeral(), y);
    }
  }
}

TEST(Eval, CodePrimitivesMatchEncoder) {
  Term a = parse_term("S K");
  Term b = parse_term("succ 4");
  Term t = Term::apply(Term::prim(Prim::CApp), Term::numeral(encode(a)), Term::numeral(encode(b)));
  EXPECT_EQ(*evaluate(t, Fuel{10}).numeral(), encode(Term::app(a, b)));
  EXPECT_EQ(*evaluate(Term::app(Term::prim(Prim::CNum), num(12)), Fuel{10}).numeral(), encode(num(12)));
  // univ e x runs the decoded program.
  Term u = Term::apply(Term::prim(Prim::Univ), Term::numeral(encode(parse_term("succ"))), num(41));
  EXPECT_EQ(*evaluate(u, Fuel{10}).numeral(), 42);
}

TEST(Eval, StagesCountsInnerSteps) {
  // S K K x takes 2 steps; stages itself costs one step to start plus one per inner step.
  Term st = Term::apply(Term::prim(Prim::Stages), Term::numeral(encode(I())), num(9));
  auto r = evaluate(st, Fuel{100});
  ASSERT_TRUE(r.numeral());
  EXPECT_EQ(*r.numeral(), 2);
  Term never = Term::apply(Term::prim(Prim::Stages), Term::numeral(encode(parse_term("K"))), num(0));
  EXPECT_TRUE(evaluate(never, Fuel{100}).is_stuck());  // K 0 is not a numeral
}

TEST(Eval, RaceReturnsEarlierContestant) {
  Code fast = encode(Term::prim(Prim::Succ));                     // 1 step
  Code slow = encode(parse_term("S (K succ) (S (K succ) succ)"));  // adds 3 in 6 steps
  auto race = [](const Code& d, int x, const Code& p, int n) {
    return Term::apply(Term::prim(Prim::Race), Term::numeral(d), num(x), Term::numeral(p), num(n));
  };
  // Left strictly first.
  EXPECT_EQ(*evaluate(race(fast, 10, slow, 20), Fuel{1000}).numeral(), 11);
  // Right strictly first.
  EXPECT_EQ(*evaluate(race(slow, 10, fast, 20), Fuel{1000}).numeral(), 21);
  // Equal stages go to the right contestant.
  EXPECT_EQ(*evaluate(race(fast, 10, fast, 20), Fuel{1000}).numeral(), 21);
  EXPECT_EQ(*evaluate(race(slow, 10, slow, 20), Fuel{1000}).numeral(), 23);
}

TEST(Eval, RaceWithOneDivergentSide) {
  Code fast = encode(Term::prim(Prim::Succ));
  Term omega_thunk = Term::apply(Term::s(), Term::app(Term::k(), omega()), Term::app(Term::k(), omega()));
  Code diverge = encode(omega_thunk);
  auto race = [](const Code& d, const Code& p) {
    return Term::apply(Term::prim(Prim::Race), Term::numeral(d), num(1), Term::numeral(p), num(2));
  };
  EXPECT_EQ(*evaluate(race(diverge, fast), Fuel{1000}).numeral(), 3);
  EXPECT_EQ(*evaluate(race(fast, diverge), Fuel{1000}).numeral(), 2);
  EXPECT_TRUE(evaluate(race(diverge, diverge), Fuel{5000}).out_of_fuel());
}

TEST(Eval, KForcesItsDiscardedArgument) {
  // Strictness: the argument K throws away is still evaluated.
  Term t = Term::apply(Term::k(), num(1), Term::app(omega(), omega()));
  EXPECT_TRUE(evaluate(t, Fuel{1000}).out_of_fuel());
  Term stuck = Term::apply(Term::k(), num(1), parse_term("succ K"));
  EXPECT_TRUE(evaluate(stuck, Fuel{1000}).is_stuck());
}

TEST(Eval, AgreesWithReferenceReducer) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 3000; ++i) {
    Term t = random_sk(rng, 5);
    for (std::uint64_t fuel : {3u, 20u, 200u}) {
      RefEval ref{fuel};
      auto expected = ref.run(t);
      auto got = evaluate(t, Fuel{fuel});
      if (expected) {
        ASSERT_TRUE(got.is_value()) << print(t);
        EXPECT_EQ(got.value(), *expected) << print(t);
        EXPECT_EQ(got.steps, ref.used) << print(t);
      } else if (ref.stuck) {
        EXPECT_TRUE(got.is_stuck()) << print(t);
      } else {
        EXPECT_TRUE(got.out_of_fuel()) << print(t);
      }
    }
  }
}

TEST(Eval, DeterministicAndFuelMonotone) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    Term t = random_sk(rng, 6);
    auto a = evaluate(t, Fuel{50});
    auto b = evaluate(t, Fuel{50});
    ASSERT_EQ(a.is_value(), b.is_value());
    ASSERT_EQ(a.steps, b.steps);
    if (a.is_value()) {
      EXPECT_EQ(a.value(), b.value());
      auto c = evaluate(t, Fuel{5000});
      ASSERT_TRUE(c.is_value());
      EXPECT_EQ(c.value(), a.value());
    }
  }
}

TEST(Eval, PureSkModeRejectsPrimitives) {
  EvalConfig pure{.pure_sk = true};
  EXPECT_TRUE(evaluate(parse_term("succ 1"), Fuel{10}, pure).is_stuck());
  EXPECT_EQ(evaluate(parse_term("S K K 3"), Fuel{10}, pure).value(), num(3));
}

TEST(Eval, RejectsOpenTerms) {
  EXPECT_THROW(evaluate(parse_term("K v0"), Fuel{10}), std::invalid_argument);
}

TEST(Codec, RoundTripOnInitialSegment) {
  for (int c = 0; c <= 10000; ++c) {
    Term t = decode(c);
    ASSERT_TRUE(t.closed());
    ASSERT_EQ(encode(t), c);
  }
}

TEST(Codec, RoundTripOnRandomLargeCodes) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100000; ++i) {
    Code c = Code(rng() >> (rng() % 60));
    if (i % 10 == 0) c = (c << 70) + Code(rng());
    ASSERT_EQ(encode(decode(c)), c);
  }
}

TEST(Codec, AtomsAndInjectivity) {
  EXPECT_EQ(decode(encode(Term::k())), Term::k());
  EXPECT_NE(encode(Term::k()), encode(Term::s()));
  EXPECT_EQ(decode(encode(num(0))), num(0));
  EXPECT_THROW(encode(Term::var(0)), std::invalid_argument);
  std::set<Code> seen;
  std::mt19937_64 rng(5);
  std::set<std::string> printed;
  for (int i = 0; i < 2000; ++i) {
    Term t = random_sk(rng, 4);
    if (printed.insert(print(t)).second) {
      EXPECT_TRUE(seen.insert(encode(t)).second);
    }
  }
}

TEST(Codec, EmbeddedCodesGrowAdditively) {
  // Quoting a program inside another adds roughly its own bit length.
  Term t = parse_term("S (K succ) (S K K)");
  Code c = encode(t);
  for (int i = 0; i < 8; ++i) {
    Code next = encode(Term::app(t, Term::numeral(c)));
    EXPECT_LT(bit_length(next), bit_length(c) + 64);
    c = next;
  }
}

TEST(Syntax, RoundTrip) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    Term t = random_sk(rng, 6);
    EXPECT_EQ(parse_term(print(t)), t);
  }
  EXPECT_EQ(print(parse_term("S (K (S K)) K 12")), "S (K (S K)) K 12");
  EXPECT_EQ(print(parse_term("((S K) K)")), "S K K");
  EXPECT_EQ(parse_term("univ v3 0"), Term::apply(Term::prim(Prim::Univ), Term::var(3), num(0)));
}

TEST(Syntax, Errors) {
  EXPECT_THROW(parse_term(""), SyntaxError);
  EXPECT_THROW(parse_term("(S K"), SyntaxError);
  EXPECT_THROW(parse_term("S )"), SyntaxError);
  EXPECT_THROW(parse_term("foo"), SyntaxError);
  EXPECT_THROW(parse_term("S # K"), SyntaxError);
}
