#include "pcalab/pca.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pcalab;

namespace {

Term I() { return Term::apply(Term::s(), Term::k(), Term::k()); }
Term omega() { return compile_lambda("(\\x. x x) (\\x. x x)"); }

EvalResult run(const Term& t, std::uint64_t fuel = 10'000) { return evaluate(t, Fuel{fuel}); }

// Random closed values used as arguments: numerals and a few combinators.
Term random_value(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 5);
  switch (pick(rng)) {
    case 0: return Term::k();
    case 1: return I();
    case 2: return Term::prim(Prim::Succ);
    default: return num(std::uniform_int_distribution<std::uint64_t>(0, 50)(rng));
  }
}

}  // namespace

TEST(Abstraction, IdentityReturnsItsArgument) {
  Term id = bracket_abstract(Term::var(0), 0);
  EXPECT_EQ(run(Term::app(id, num(9))).value(), num(9));
}

TEST(Abstraction, PartialApplicationIsDefinedEvenWhenBodyDiverges) {
  // t(y, x) = omega, so t diverges for every argument, but b y is a value.
  Term body = Term::app(omega(), Term::var(0));
  Term b = abstract_all(body, {1, 0});
  EvalResult partial = run(Term::app(b, num(4)));
  ASSERT_TRUE(partial.is_value());
  EXPECT_TRUE(run(Term::apply(b, num(4), num(5)), 100'000).out_of_fuel());
}

TEST(Abstraction, AgreesWithSubstitutionOnRandomNumerals) {
  // t(x) = succ (ifz x 10 (pred x)): x = 0 gives 11, otherwise x.
  Term t = Term::app(Term::prim(Prim::Succ),
                     Term::apply(Term::prim(Prim::Ifz), Term::var(0), num(10),
                                 Term::app(Term::prim(Prim::Pred), Term::var(0))));
  Term b = bracket_abstract(t, 0);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    Natural a = std::uniform_int_distribution<std::uint64_t>(0, 1000)(rng);
    EvalResult via_b = run(Term::app(b, num(a)));
    EvalResult direct = run(substitute(t, 0, num(a)));
    ASSERT_TRUE(kleene_equal(via_b, direct)) << a;
    Natural expected = a == 0 ? Natural(11) : a;  // host arithmetic
    EXPECT_EQ(*via_b.numeral(), expected);
  }
}

TEST(Abstraction, FreeVariablesShrinkByTheAbstractedOne) {
  AbstractTerm t(Term::apply(Term::var(2), Term::var(5), Term::var(2)));
  AbstractTerm b = bracket_abstract(t, 2);
  EXPECT_FALSE(b.mentions(2));
  EXPECT_TRUE(b.mentions(5));
  EXPECT_EQ(b.free_vars().size(), 1u);
}

TEST(Abstraction, KOnlyGuardsValues) {
  // lambda* x. omega must not be K omega: that would run omega first.
  Term b = bracket_abstract(omega(), 0);
  EXPECT_TRUE(b.is_value());
  EXPECT_TRUE(run(b).is_value());
}

TEST(Abstraction, EtaRuleAgreesWithPlainRule) {
  Combinators eta;
  eta.eta = true;
  std::mt19937_64 rng(3);
  for (const char* src : {"\\f x. f x", "\\x. succ x", "\\a b. pair a b", "\\x y. ifz x y (succ y)"}) {
    Term plain = compile_lambda(src);
    Term short_form = compile_lambda(src, {}, eta);
    EXPECT_LE(short_form.size(), plain.size()) << src;
    for (int i = 0; i < 20; ++i) {
      Term a = num(std::uniform_int_distribution<std::uint64_t>(0, 30)(rng));
      Term c = num(std::uniform_int_distribution<std::uint64_t>(0, 30)(rng));
      Term arg0 = std::string(src).rfind("\\f", 0) == 0 ? Term::prim(Prim::Succ) : a;
      EXPECT_TRUE(kleene_equal(run(Term::apply(plain, arg0, c)), run(Term::apply(short_form, arg0, c)))) << src;
    }
  }
}

TEST(Lambda, CompilesAndRejects) {
  EXPECT_EQ(run(Term::apply(compile_lambda("\\x y. x"), num(1), num(2))).value(), num(1));
  EXPECT_EQ(run(Term::app(compile_lambda("\\x. c", {{"c", num(8)}}), num(0))).value(), num(8));
  EXPECT_THROW(compile_lambda("\\x. y"), SyntaxError);
  EXPECT_THROW(compile_lambda("\\. x"), SyntaxError);
  EXPECT_THROW(compile_lambda("(\\x. x"), SyntaxError);
  EXPECT_THROW(compile_lambda("\\x. y", {{"y", Term::var(3)}}), SyntaxError);
  EXPECT_NO_THROW(compile_lambda_open("\\x. y", {{"y", Term::var(3)}}));
}

TEST(Tuples, PairProjection) {
  Term t = tuple({num(1), num(2)});
  EXPECT_EQ(run(Term::app(t, projector(2, 1))).value(), num(1));
  EXPECT_EQ(run(Term::app(t, projector(2, 2))).value(), num(2));
}

TEST(Tuples, SingletonAndRandomTuples) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + trial % 5;
    std::vector<Term> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(random_value(rng));
    Term t = tuple(a);
    for (std::size_t i = 1; i <= n; ++i) {
      EvalResult got = run(Term::app(t, projector(n, i)));
      ASSERT_TRUE(got.is_value());
      EXPECT_EQ(got.value(), a[i - 1]) << n << " " << i;
    }
  }
}

TEST(Tuples, RejectsBadIndices) {
  EXPECT_THROW(projector(3, 0), std::out_of_range);
  EXPECT_THROW(projector(3, 4), std::out_of_range);
  EXPECT_THROW(projector(0, 0), std::out_of_range);
  EXPECT_THROW(tuple({}), std::invalid_argument);
}

TEST(FixedPointCombinator, ConstantFunction) {
  // f g is a value and (f g) a = g (f g) a; with g = K (K c) both sides are c.
  for (int c = 0; c < 5; ++c) {
    Term g = Term::app(Term::k(), Term::app(Term::k(), num(c)));
    EvalResult fg = run(Term::app(turing_fixpoint(), g));
    ASSERT_TRUE(fg.is_value());
    for (int a = 0; a < 3; ++a) {
      EvalResult lhs = run(Term::app(fg.value(), num(a)));
      EvalResult rhs = run(Term::apply(g, fg.value(), num(a)));
      EXPECT_EQ(lhs.value(), num(c));
      EXPECT_TRUE(kleene_equal(lhs, rhs));
    }
  }
}

TEST(FixedPointCombinator, IdentityUnfoldsOnce) {
  Term f = turing_fixpoint();
  EvalResult fg = run(Term::app(f, I()));
  ASSERT_TRUE(fg.is_value());
  EvalResult g_fg = run(Term::app(I(), fg.value()));
  EXPECT_EQ(g_fg.value(), fg.value());
}

TEST(FixedPointCombinator, TotalEvenWhenGDemandsItsArgument) {
  Term f = turing_fixpoint();
  Term g = compile_lambda("\\r x. r x");  // loops forever when run
  EvalResult fg = run(Term::app(f, g));
  ASSERT_TRUE(fg.is_value());
  EXPECT_TRUE(run(Term::app(fg.value(), num(0)), 100'000).out_of_fuel());
}

TEST(FixedPointCombinator, TotalOnRandomElements) {
  // Elements are the values of random closed terms.
  Term f = turing_fixpoint();
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::uint64_t> code(0, 1'000'000);
  int tried = 0;
  while (tried < 1000) {
    EvalResult g = run(decode(code(rng)), 1000);
    if (!g.is_value()) continue;
    ++tried;
    EXPECT_TRUE(run(Term::app(f, g.value())).is_value()) << print(g.value());
  }
}

TEST(FixedPointCombinator, RecursionComputesFactorialLikeSum) {
  // r n = n + r (n - 1), r 0 = 0; the host sum is the oracle.
  Term add = run(Term::app(turing_fixpoint(),
                           compile_lambda("\\r a b. ifz a (\\u. b) (\\u. succ (r (pred a) b)) 0")))
                 .value();
  Term sum_g = compile_lambda("\\r n. ifz n (\\u. 0) (\\u. A n (r (pred n))) 0", {{"A", add}});
  Term sum = run(Term::app(turing_fixpoint(), sum_g)).value();
  for (unsigned n = 0; n <= 12; ++n) {
    EXPECT_EQ(*run(Term::app(sum, num(n)), 1'000'000).numeral(), Natural(n * (n + 1) / 2)) << n;
  }
}

TEST(Completeness, TermModelHasNoCounterexamples) {
  CompletenessReport r = check_combinatory_complete(SkPas{}, 1000);
  EXPECT_EQ(r.trials, 1000u);
  EXPECT_TRUE(r.passed()) << r.clause_i_failures << " " << r.clause_ii_failures;
}

TEST(Completeness, SwappedCombinatorsAreCaught) {
  SkPas broken;
  broken.config.swap_ks = true;
  CompletenessReport r = check_combinatory_complete(broken, 200);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.counterexamples.empty());
}

TEST(Completeness, ZeroParameterClause) {
  CompletenessOptions opt;
  opt.max_params = 0;
  CompletenessReport r = check_combinatory_complete(SkPas{}, 200, opt);
  EXPECT_TRUE(r.passed());
}

TEST(Completeness, PureSkModel) {
  SkPas pure;
  pure.config.pure_sk = true;
  CompletenessReport r = check_combinatory_complete(pure, 300);
  EXPECT_TRUE(r.passed());
}
