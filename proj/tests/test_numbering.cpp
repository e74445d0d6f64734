#include "pcalab/adn.hpp"
#include "pcalab/corpus.hpp"

#include <gtest/gtest.h>

using namespace pcalab;

namespace {

const Numbering& gamma() {
  static const Numbering g = phi_numbering();
  return g;
}

// Host comparison of two corpus programs on 0..20: the oracle for equiv_bounded.
Verdict host_verdict(const CorpusProgram& a, const CorpusProgram& b) {
  Verdict out = Verdict::Yes;
  for (unsigned x = 0; x <= 20; ++x) {
    auto va = a.oracle(x);
    auto vb = b.oracle(x);
    if (va && vb && *va != *vb) return Verdict::No;
    if (va.has_value() != vb.has_value()) out = Verdict::Unknown;
  }
  return out;
}

}  // namespace

TEST(Equiv, SmallCases) {
  Code id = encode(programs::identity());
  Code succ = encode(programs::successor());
  Code div = encode(programs::divergent());
  EXPECT_EQ(gamma().equiv_bounded(id, succ, 10), Verdict::No);
  EXPECT_EQ(gamma().equiv_bounded(id, id, 0), Verdict::Yes);
  for (std::uint64_t b : {1u, 10u, 100u, 1000u}) {
    EXPECT_EQ(gamma().equiv_bounded(div, pad(div, 1), b), Verdict::Yes) << b;
  }
}

// Padding costs steps, so near the fuel limit only one side may finish.
TEST(Equiv, PaddingPreservesExtension) {
  for (const auto& p : unary_corpus()) {
    EXPECT_NE(gamma().equiv_bounded(p.code, pad(p.code, 5), 50), Verdict::No) << p.name;
    EXPECT_EQ(gamma().equiv_bounded(p.code, pad(p.code, 5), 1000), Verdict::Yes) << p.name;
  }
}

TEST(Equiv, MatchesHostComparisonOnCorpusPairs) {
  auto corpus = unary_corpus();
  for (std::size_t i = 0; i < corpus.size(); i += 7) {
    for (std::size_t j = 0; j < corpus.size(); j += 11) {
      Verdict v = gamma().equiv_bounded(corpus[i].code, corpus[j].code, 1000);
      EXPECT_EQ(v, host_verdict(corpus[i], corpus[j])) << corpus[i].name << " vs " << corpus[j].name;
    }
  }
}

TEST(Equiv, OneSidedDivergenceIsUnknown) {
  Code div = encode(programs::divergent());
  Code at_zero = encode(compile_lambda("\\x. ifz x (\\u. W) (\\u. x) 0", {{"W", programs::omega()}}));
  EXPECT_EQ(gamma().equiv_bounded(div, at_zero, 1000), Verdict::Unknown);
}

TEST(Equiv, SymmetricAndReflexive) {
  auto corpus = unary_corpus();
  for (std::uint64_t b : {0u, 3u, 20u, 200u}) {
    for (std::size_t i = 0; i < corpus.size(); i += 13) {
      EXPECT_EQ(gamma().equiv_bounded(corpus[i].code, corpus[i].code, b), Verdict::Yes);
      for (std::size_t j = 0; j < corpus.size(); j += 17) {
        EXPECT_EQ(gamma().equiv_bounded(corpus[i].code, corpus[j].code, b),
                  gamma().equiv_bounded(corpus[j].code, corpus[i].code, b));
      }
    }
  }
}

TEST(Totalizer, CodeIsTotalAndMatchesHostMap) {
  Code psi = encode(programs::even_const(encode(programs::successor())));
  TotalCodeMap f = totalize(gamma(), psi);
  for (unsigned n = 0; n <= 200; ++n) {
    PartialValue v = phi(f.code, n, Fuel{10'000});
    ASSERT_TRUE(v.defined()) << n;
    EXPECT_EQ(v.value(), f(n)) << n;
  }
}

TEST(Totalizer, IdentityPsiGivesEquivalentCodes) {
  TotalCodeMap f = totalize(gamma(), encode(programs::identity()));
  for (const auto& p : unary_corpus()) {
    for (unsigned x = 0; x <= 20; x += 4) {
      EXPECT_EQ(phi(f(p.code), x, Fuel{10'000}).get(), p.oracle(x)) << p.name;
    }
  }
}

TEST(Totalizer, DivergentPsiGivesTheSpecialElement) {
  TotalCodeMap f = totalize(gamma(), encode(programs::divergent()));
  for (unsigned n = 0; n <= 50; ++n) {
    EXPECT_NE(gamma().equiv_bounded(f(n), *gamma().special_element, 1000), Verdict::No);
    EXPECT_FALSE(phi(f(n), n % 21, Fuel{10'000}).defined());
  }
}

TEST(Totalizer, PaddedConstant) {
  Code c = encode(programs::add(3));
  // psi(n) = pad(c, n), built in the language with capp.
  Term step = compile_lambda("\\e. capp (capp Kc e) Zc", {{"Kc", num(encode(Term::k()))}, {"Zc", num(numeral_code(0))}});
  Term padder = evaluate(Term::app(turing_fixpoint(),
                                   compile_lambda("\\r n. ifz n (\\u. C) (\\u. P (r (pred n))) 0",
                                                  {{"C", num(c)}, {"P", step}})),
                         Fuel{100})
                    .value();
  Code psi = encode(padder);
  TotalCodeMap f = totalize(gamma(), psi);
  for (unsigned n = 0; n <= 20; ++n) {
    ASSERT_EQ(phi(psi, n, Fuel{100'000}).get(), std::optional<Natural>(pad(c, n))) << n;
    for (unsigned x = 0; x <= 20; x += 5) EXPECT_EQ(phi(f(n), x, Fuel{100'000}), PartialValue(Defined{x + 3})) << n;
  }
}

TEST(Totalizer, LawOnCorpusWherePsiConverges) {
  // psi = fst: psi(<e, k>) = e for every corpus e.
  TotalCodeMap f = totalize(gamma(), encode(compile_lambda("\\z. fst z")));
  auto corpus = unary_corpus();
  for (std::size_t i = 0; i < corpus.size(); i += 5) {
    Natural n = cantor_pair(corpus[i].code, i);
    for (unsigned x = 0; x <= 20; ++x) {
      EXPECT_EQ(phi(f(n), x, Fuel{1000}).get(), corpus[i].oracle(x)) << corpus[i].name;
    }
  }
}

TEST(Diagonal, SampleDeltaHasNoViolations) {
  std::vector<Natural> sample;
  for (const auto& p : unary_corpus()) sample.push_back(p.code);
  for (int i = 0; i <= 40; ++i) sample.emplace_back(i);
  DiagonalReport r = is_diagonal_on(gamma(), make_sample_diagonal(), sample, 1000);
  EXPECT_TRUE(r.diagonal());
  EXPECT_GT(r.in_domain, 0u);
}

TEST(Diagonal, IdentityViolatesEverywhere) {
  std::vector<Natural> sample;
  for (int i = 0; i <= 30; ++i) sample.emplace_back(i);
  DiagonalReport r = is_diagonal_on(gamma(), encode(programs::identity()), sample, 100);
  EXPECT_EQ(r.in_domain, sample.size());
  EXPECT_EQ(r.violations.size(), sample.size());
}

TEST(Diagonal, DivergentIsVacuous) {
  std::vector<Natural> sample{0, 1, 2, 3, 100};
  DiagonalReport r = is_diagonal_on(gamma(), encode(programs::divergent()), sample, 1000);
  EXPECT_EQ(r.in_domain, 0u);
  EXPECT_TRUE(r.diagonal());
}
