#include <gtest/gtest.h>

#include <thread>

#include "support.hpp"

using namespace qsh;
using namespace qsh::testing;

namespace {

NCPoly abc(std::string_view s) { return W(alphabets::abc(), word_of(*alphabets::abc(), s)); }

}  // namespace

TEST(WorkedExamples, StuffleAndShuffle) {
  EXPECT_EQ(named_product("stuffle", P("z2"), P("z3")), P("z2 z3 + z3 z2 + z5"));
  EXPECT_EQ(named_product("shuffle", P("z2"), P("z3")), P("3 z3 z2 + 6 z4 z1 + z2 z3"));
}

TEST(WorkedExamples, Ex3) {
  const ProductHandle& h = builtin_handle("ex3");
  EXPECT_EQ(gqsh(h, gqsh(h, P("a"), P("b")), P("b")), P("bba"));
  EXPECT_EQ(gqsh(h, P("a"), gqsh(h, P("a"), P("b"))), P("2 baa - babb"));
}

TEST(WorkedExamples, Ex4) {
  const ProductHandle& h = builtin_handle("ex4");
  EXPECT_EQ(gqsh(h, abc("a"), gqsh(h, abc("b"), abc("c"))), abc("cab") + abc("cba"));
}

TEST(WorkedExamples, DoubleShuffle) {
  EXPECT_EQ(ds(P("z2"), P("z3")), P("2 z3 z2 + 6 z4 z1 - z5"));
  EXPECT_EQ(ds(P("z2"), P("z2")), P("4 z3 z1 - z4"));
  EXPECT_THROW(ds(P("z1"), P("z2")), not_admissible);
}

TEST(WorkedExamples, QShuffleOfE2E3) {
  NCPoly want = P("3 e3 e2 + 6 e4 e1 + e2 e3 + h (3 e4 e0 + 7 e3 e1 + 2 e2 e2) + h^2 (2 e3 e0 + e2 e1)");
  EXPECT_EQ(named_product("qshuffle", P("e2"), P("e3")), want);
}

TEST(WorkedExamples, DPart) { EXPECT_EQ(dpart(P("xy"), P("xy")), P("-4 xxyy + xyyy")); }

TEST(WorkedExamples, DualRecursion) {
  EXPECT_EQ(gqsh_dual(builtin_handle("qshuffle"), P("ab"), P("ab")), P("h abb + 2 abab"));
}

TEST(Product, UnitLaw) {
  for (const auto& name : builtin_rule_names()) {
    const ProductHandle& h = builtin_handle(name);
    NCPoly one = NCPoly::one(h.alphabet());
    for (const auto& w : words_up_to_weight(h.alphabet(), 4)) {
      NCPoly p(h.alphabet(), w);
      EXPECT_EQ(gqsh(h, one, p), p) << name;
      EXPECT_EQ(gqsh(h, p, one), p) << name;
      EXPECT_EQ(gqsh_dual(h, one, p), p) << name;
    }
  }
}

TEST(Product, IsBilinear) {
  std::mt19937 rng(21);
  const ProductHandle& h = builtin_handle("qshuffle");
  for (int i = 0; i < 10; ++i) {
    NCPoly p = random_poly(rng, alphabets::ab(), 3, 3, true), q = random_poly(rng, alphabets::ab(), 3, 3, true),
           r = random_poly(rng, alphabets::ab(), 3, 3, true);
    EXPECT_EQ(gqsh(h, p + q, r), gqsh(h, p, r) + gqsh(h, q, r));
    EXPECT_EQ(gqsh(h, Laurent::hbar(-1, 3) * p, r), Laurent::hbar(-1, 3) * gqsh(h, p, r));
  }
}

TEST(Product, RejectsForeignAlphabet) {
  EXPECT_THROW(gqsh(builtin_handle("qshuffle"), P("xy"), P("ab")), alphabet_mismatch);
}

TEST(Product, KeepsTheFormOfTheFirstOperand) {
  NCPoly r = named_product("qstuffle", P("e1"), P("e0"));
  EXPECT_EQ(r.alphabet()->name(), "E");
  EXPECT_EQ(named_product("stuffle", P("xy"), P("z2")).alphabet()->name(), "XY");
}

TEST(Product, MemoizedAndPlainAgree) {
  std::mt19937 rng(22);
  for (const auto& name : builtin_rule_names()) {
    const ProductHandle& memo = builtin_handle(name);
    ProductHandle plain(builtin_rule(name), false);
    const auto& a = memo.alphabet();
    const auto words = words_up_to_weight(a, 5);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (int i = 0; i < 40; ++i) {
      const Word& u = words[pick(rng)];
      const Word& v = words[pick(rng)];
      EXPECT_EQ(memo.words(u, v), plain.words(u, v)) << name;
      EXPECT_EQ(memo.dual_words(u, v), plain.dual_words(u, v)) << name;
    }
    EXPECT_EQ(plain.cache_size(), 0u);
  }
}

TEST(Product, SharedCacheUnderConcurrentUse) {
  ProductHandle h(builtin_rule("ex4"));
  const auto words = words_up_to_weight(h.alphabet(), 3);
  std::vector<std::vector<NCPoly>> results(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      for (const auto& u : words)
        for (const auto& v : words) results[t].push_back(h.words(u, v));
    });
  for (auto& t : threads) t.join();
  for (int t = 1; t < 4; ++t) EXPECT_EQ(results[t], results[0]);
  EXPECT_GT(h.cache_size(), 0u);
}

TEST(Product, LengthIsBoundedByTheSumForLengthPreservingRules) {
  for (std::string_view name : {"shuffle", "shsh"}) {
    const ProductHandle& h = builtin_handle(name);
    for (const auto& u : words_up_to_weight(h.alphabet(), 3))
      for (const auto& v : words_up_to_weight(h.alphabet(), 3)) {
        NCPoly p = h.words(u, v);
        for (const auto& [w, c] : p.terms()) EXPECT_LE(w.size(), u.size() + v.size());
      }
  }
}

TEST(Oracle, ClassicalQuasiShuffleAgreesUpToWeight6) {
  for (std::string_view name : {"stuffle", "qstuffle", "shuffle"}) {
    auto mismatch = classical_mismatch(name, 6);
    EXPECT_FALSE(mismatch.has_value()) << name << ": " << mismatch.value_or("");
  }
}

TEST(Oracle, StuffleCoefficientSumsAreDelannoyNumbers) {
  // The number of terms of z1^m * z1^n (with multiplicity) is the Delannoy number D(m, n).
  const ProductHandle& h = builtin_handle("stuffle");
  const long delannoy[4][4] = {{1, 1, 1, 1}, {1, 3, 5, 7}, {1, 5, 13, 25}, {1, 7, 25, 63}};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      NCPoly p = h.words(Word::repeat(Letter{1}, m), Word::repeat(Letter{1}, n));
      Rational total;
      for (const auto& [w, c] : p.terms()) total += c.constant_term();
      EXPECT_EQ(total, delannoy[m][n]) << m << "," << n;
    }
}

TEST(Dualst, BothRecursionsAgreeOnBuiltinRules) {
  for (const auto& name : builtin_rule_names()) {
    const ProductHandle& h = builtin_handle(name);
    const auto words = words_up_to_weight(h.alphabet(), 4);
    for (const auto& u : words)
      for (const auto& v : words) {
        if (word_weight(u, h.alphabet()) + word_weight(v, h.alphabet()) > 4) continue;
        EXPECT_EQ(h.words(u, v), h.dual_words(u, v)) << name;
      }
  }
}

TEST(Commutativity, ProductsCommuteOnWords) {
  for (const auto& name : builtin_rule_names()) {
    const ProductHandle& h = builtin_handle(name);
    const auto words = words_up_to_weight(h.alphabet(), 3);
    for (const auto& u : words)
      for (const auto& v : words) EXPECT_EQ(h.words(u, v), h.words(v, u)) << name;
  }
}
