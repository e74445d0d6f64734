#include "pcalab/corpus.hpp"
#include "pcalab/fixedpoints.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pcalab;

namespace {

constexpr Fuel kFuel{10'000};

std::optional<Natural> observed(const PartialValue& v) { return v.get(); }

}  // namespace

TEST(Phi, CorpusMatchesHostOracles) {
  for (const auto& p : unary_corpus()) {
    for (unsigned x = 0; x <= 20; ++x) {
      EXPECT_EQ(observed(phi(p.code, x, kFuel)), p.oracle(x)) << p.name << " at " << x;
    }
  }
}

TEST(Phi, BinaryCorpusMatchesHostOracles) {
  for (const auto& p : binary_corpus()) {
    for (unsigned a = 0; a <= 6; ++a) {
      for (unsigned x = 0; x <= 6; ++x) {
        EXPECT_EQ(observed(phi2(p.code, a, x, kFuel)), p.oracle(a, x)) << p.name << " " << a << " " << x;
      }
    }
  }
}

TEST(Phi, NonNumericResultCountsAsDivergent) {
  Code k = encode(Term::k());
  EXPECT_FALSE(phi(k, 3, kFuel).defined());
  EXPECT_EQ(phi(k, 3, kFuel), PartialValue(DivergentWithin{kFuel}));
}

TEST(Phi, MoreFuelNeverLosesAValue) {
  for (const auto& p : unary_corpus()) {
    for (std::uint64_t f : {10u, 50u, 200u}) {
      PartialValue low = phi(p.code, 5, Fuel{f});
      if (low.defined()) {
        EXPECT_EQ(phi(p.code, 5, Fuel{f * 10}), low) << p.name;
      }
    }
  }
}

TEST(Smn, SpecializationAgreesWithTwoArgumentRun) {
  std::mt19937_64 rng(5);
  for (const auto& p : binary_corpus()) {
    for (int i = 0; i < 10; ++i) {
      Natural a = std::uniform_int_distribution<std::uint64_t>(0, 100)(rng);
      Natural x = std::uniform_int_distribution<std::uint64_t>(0, 100)(rng);
      Code s = smn(p.code, a);
      EXPECT_EQ(phi(s, x, kFuel), phi2(p.code, a, x, kFuel)) << p.name;
      EXPECT_EQ(observed(phi(s, x, kFuel)), p.oracle(a, x)) << p.name;
    }
  }
}

TEST(Smn, CodeIsTheApplicationCode) {
  Code e = encode(programs::first_of_two());
  EXPECT_EQ(decode(smn(e, 4)), Term::app(programs::first_of_two(), num(4)));
}

TEST(Pad, DistinctCodesSameFunction) {
  Code e = encode(programs::successor());
  Code prev = e;
  for (unsigned i = 1; i <= 6; ++i) {
    Code padded = pad(e, i);
    EXPECT_GT(padded, prev);
    prev = padded;
    for (unsigned x = 0; x <= 20; ++x) EXPECT_EQ(phi(padded, x, kFuel), PartialValue(Defined{x + 1}));
  }
  EXPECT_EQ(pad(e, 0), e);
}

TEST(Pad, PaddingTheDivergentProgramStaysDivergent) {
  Code e = pad(encode(programs::divergent()), 3);
  for (unsigned x = 0; x <= 5; ++x) EXPECT_FALSE(phi(e, x, Fuel{5'000}).defined());
}

TEST(Pairing, CantorRoundTripAndHostFormula) {
  for (unsigned x = 0; x < 40; ++x) {
    for (unsigned y = 0; y < 40; ++y) {
      Natural z = pair_codes(x, y);
      EXPECT_EQ(z, Natural((x + y) * (x + y + 1) / 2 + y));
      EXPECT_EQ(unpair_codes(z), std::make_pair(Natural(x), Natural(y)));
    }
  }
}

// Sound everywhere; complete below 40, where every corpus program
// converges within 300 steps.
TEST(Domain, EnumerationMatchesOracleDomain) {
  for (const auto& p : unary_corpus()) {
    std::vector<Natural> w = domain_enum(p.code, 300);
    for (const auto& x : w) EXPECT_TRUE(p.oracle(x).has_value()) << p.name << " " << x;
    for (unsigned x = 0; x <= 40; ++x) {
      bool listed = std::find(w.begin(), w.end(), Natural(x)) != w.end();
      EXPECT_EQ(listed, p.oracle(x).has_value()) << p.name << " " << x;
    }
  }
}

TEST(Domain, GrowsWithTheStage) {
  Code e = encode(programs::even_const(3));
  std::vector<Natural> w = domain_enum(e, 400);
  for (const auto& x : w) EXPECT_EQ(x % 2, 0);
  EXPECT_GE(w.size(), 30u);
  std::vector<Natural> small = domain_enum(e, 200);
  EXPECT_TRUE(std::includes(w.begin(), w.end(), small.begin(), small.end()));
}

TEST(Quote, TemplateFillMatchesInLanguageBuilder) {
  CodeTemplate t("\\y. univ x (succ y)", {"x"});
  for (unsigned x = 0; x < 30; ++x) {
    EXPECT_EQ(phi(t.program_code(), x, kFuel), PartialValue(Defined{t.fill({x})})) << x;
  }
  CodeTemplate two("\\y. pair a (pair b y)", {"a", "b"});
  Term prog = two.program();
  EXPECT_EQ(*evaluate(Term::apply(prog, num(3), num(8)), kFuel).numeral(), two.fill({3, 8}));
  EXPECT_THROW(two.fill({1}), std::invalid_argument);
}

TEST(Quote, FilledCodeRunsTheSubstitutedProgram) {
  CodeTemplate t("\\y. pair x y", {"x"});
  for (unsigned x = 0; x < 10; ++x) {
    for (unsigned y = 0; y < 10; ++y) EXPECT_EQ(phi(t.fill({x}), y, kFuel), PartialValue(Defined{cantor_pair(x, y)}));
  }
}

TEST(Programs, EvenConstantIsDefinedExactlyOnEvens) {
  Code e = encode(programs::even_const(7));
  for (unsigned n = 0; n <= 30; ++n) {
    PartialValue v = phi(e, n, Fuel{100'000});
    if (n % 2 == 0) {
      EXPECT_EQ(v, PartialValue(Defined{7})) << n;
    } else {
      EXPECT_FALSE(v.defined()) << n;
      EXPECT_TRUE(find_cycle(Machine(Term::app(decode(e), num(n))), 100'000).has_value()) << n;
    }
  }
}

TEST(Quine, OutputsItsOwnCode) {
  Code q = quine(QuineStyle::OutputSelf);
  for (unsigned x = 0; x <= 20; ++x) EXPECT_EQ(phi(q, x, kFuel), PartialValue(Defined{q})) << x;
}

TEST(Quine, AppliesItsArgumentToItsOwnCode) {
  Code q = quine(QuineStyle::ApplySelf);
  for (const auto& p : unary_corpus()) {
    if (p.name.rfind("constant ", 0) != 0 && p.name != "successor" && p.name != "identity") continue;
    EXPECT_EQ(observed(phi(q, p.code, kFuel)), p.oracle(q)) << p.name;
  }
}
