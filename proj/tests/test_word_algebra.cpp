#include <gtest/gtest.h>

#include "support.hpp"

using namespace qsh;
using namespace qsh::testing;

TEST(Rational, ParsesAndPrints) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_fraction_string(parse_rational("-3")), "-3/1");
  EXPECT_THROW(parse_rational("1/0"), std::domain_error);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(2, 5), 0);
}

TEST(Laurent, RingOperations) {
  const Laurent h = Laurent::hbar(1), hinv = Laurent::hbar(-1);
  EXPECT_TRUE((h * hinv).is_one());
  EXPECT_TRUE((h - h).is_zero());
  Laurent p = Laurent(2) + h;
  Laurent sq = p * p;  // 4 + 4h + h^2
  EXPECT_EQ(sq.coefficient(0), 4);
  EXPECT_EQ(sq.coefficient(1), 4);
  EXPECT_EQ(sq.coefficient(2), 1);
  EXPECT_FALSE(sq.is_rational());
  EXPECT_TRUE(Laurent(make_rational(3, 7)).is_rational());
}

TEST(Word, CanonicalOrderIsLengthThenLex) {
  const auto& xy = *alphabets::xy();
  EXPECT_LT(word_of(xy, "y"), word_of(xy, "xx"));
  EXPECT_LT(word_of(xy, "xy"), word_of(xy, "yx"));
  EXPECT_LT(Word{}, word_of(xy, "x"));
}

TEST(Word, SlicingAndPrinting) {
  const auto& z = *alphabets::z();
  Word w = indexed_word(z, {3, 1, 2});
  EXPECT_EQ(to_string(w, z), "z3 z1 z2");
  EXPECT_EQ(to_string(w.rest(), z), "z1 z2");
  EXPECT_EQ(to_string(w.init(), z), "z3 z1");
  EXPECT_EQ(to_string(w.reversed(), z), "z2 z1 z3");
  EXPECT_EQ(to_string(Word{}, z), "1");
  EXPECT_EQ(to_string(word_of(*alphabets::ab(), "aab"), *alphabets::ab()), "aab");
  EXPECT_THROW(indexed_word(z, {0}), std::domain_error);
}

TEST(NCPoly, NormalizesOnConstruction) {
  const auto& xy = alphabets::xy();
  NCPoly p = NCPoly::from_terms(xy, {{word_of(*xy, "xy"), 2}, {word_of(*xy, "y"), 1}, {word_of(*xy, "xy"), -2}});
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(p, W(xy, word_of(*xy, "y")));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(NCPoly(xy), NCPoly(alphabets::ab()));  // zeros compare equal
}

TEST(NCPoly, ConcatenationIsBilinear) {
  const auto& ab = alphabets::ab();
  NCPoly p = P("a + h b"), q = P("b - a");
  EXPECT_EQ(nc_mul(p, q), P("ab - aa + h bb - h ba"));
  EXPECT_EQ(nc_mul(NCPoly::one(ab), p), p);
  EXPECT_EQ(prepend(Letter{0}, q), P("ab - aa"));
  EXPECT_EQ(append(q, Letter{1}), P("bb - ab"));
}

TEST(NCPoly, FirstAndLastLetterMaps) {
  NCPoly p = P("2 xxy - yx + 3");
  EXPECT_EQ(first(p), P("2 x - y + 3", alphabets::xy()));
  EXPECT_EQ(last(p), P("2 y - x + 3", alphabets::xy()));
  EXPECT_EQ(rest_word(word_of(*alphabets::xy(), "xxy")), word_of(*alphabets::xy(), "xy"));
  EXPECT_EQ(rest_word(word_of(*alphabets::xy(), "x")), Word{});
  EXPECT_EQ(init_word(word_of(*alphabets::xy(), "xxy")), word_of(*alphabets::xy(), "xx"));
}

TEST(NCPoly, RejectsMixedAlphabets) {
  EXPECT_THROW(P("xy") + P("ab"), alphabet_mismatch);
  EXPECT_THROW(nc_mul(P("xy"), P("ab")), alphabet_mismatch);
  EXPECT_THROW(NCPoly(alphabets::xy(), Word{Letter{2}}), alphabet_mismatch);
}

TEST(NCPoly, ScalarMultiplication) {
  NCPoly p = P("x + 2 y");
  EXPECT_EQ(Laurent(3) * p, P("3 x + 6 y"));
  EXPECT_TRUE((Laurent() * p).is_zero());
  EXPECT_EQ(p * Laurent::hbar(-1), P("h^-1 x + 2 h^-1 y"));
  EXPECT_FALSE((p * Laurent::hbar(-1)).is_rational());
}

TEST(Alphabet, LookupAndDomains) {
  const auto& e = *alphabets::e();
  EXPECT_EQ(e.letter("e0").code, 0);
  EXPECT_FALSE(e.find("e").has_value());
  EXPECT_FALSE(alphabets::z()->find("z0").has_value());
  EXPECT_EQ(alphabets::abc()->symbol(Letter{2}), "c");
  EXPECT_THROW(alphabets::by_name("QQ"), unknown_name);
  EXPECT_THROW(Alphabet::make_finite("dup", {"p", "p"}), std::invalid_argument);
}
