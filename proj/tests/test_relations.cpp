#include <gtest/gtest.h>

#include "support.hpp"

using namespace qsh;
using namespace qsh::testing;

TEST(Enumeration, AdmissibleWords) {
  EXPECT_EQ(admissible_ab_words(4).size(), 7u);
  EXPECT_EQ(admissible_ab_pairs(6).size(), 17u);
  EXPECT_EQ(words_up_to_weight(alphabets::e(), 2).size(), 3u);
  EXPECT_EQ(admissible_z_words(4).size(), 4u);  // z4 z3z1 z2z2 z2z1z1
  EXPECT_EQ(word_weight(P("e2 e0").terms().begin()->first, alphabets::e()), 4);
}

TEST(ProductHom, QProductsAreExact) {
  for (std::string_view prod : {"qstuffle", "qshuffle"}) {
    CheckResult r = verify_product_hom(prod, P("e2"), P("e1 e0"), 20);
    EXPECT_EQ(r.status, CheckStatus::exact_pass) << r.witness;
    EXPECT_FALSE(r.residual.has_value());
  }
  EXPECT_THROW(verify_product_hom("qshuffle", P("ba"), P("ab")), not_admissible);
  EXPECT_THROW(verify_product_hom("ex3", P("ab"), P("ab")), unknown_name);
}

TEST(ProductHom, ClassicalProductsAreNumeric) {
  CheckResult r = verify_product_hom("stuffle", P("z2"), P("z2"));
  EXPECT_EQ(r.status, CheckStatus::numeric_pass);
  ASSERT_TRUE(r.residual.has_value());
  EXPECT_LT(*r.residual, 1e-4);
}

TEST(Duality, TauFixedWordsAreExact) {
  CheckResult r = verify_duality_tau(P("xy"));
  EXPECT_EQ(r.status, CheckStatus::exact_pass);
  EXPECT_FALSE(r.residual);
  CheckResult n = verify_duality_tau(P("z3"));
  EXPECT_EQ(n.status, CheckStatus::numeric_pass);
  EXPECT_LT(*n.residual, 1e-3);
}

TEST(Duality, FailureCarriesAWitness) {
  CheckResult r = verify_duality_tau(P("z3"), NumericParams{100, 1e-9});
  EXPECT_EQ(r.status, CheckStatus::fail);
  EXPECT_FALSE(r.witness.empty());
}

TEST(DoubleShuffle, NumericAndExactCases) {
  EXPECT_EQ(verify_ds(P("z2"), P("z3")).status, CheckStatus::numeric_pass);
  EXPECT_THROW(verify_ds(P("z1"), P("z3")), not_admissible);
}

TEST(DoubleShuffle, EnumeratedRelations) {
  EXPECT_EQ(enumerate_ds_relations(4).size(), 1u);
  EXPECT_EQ(enumerate_ds_relations(5).size(), 2u);
  for (const auto& r : enumerate_ds_relations(6)) EXPECT_LT(r.residual, 1e-3) << to_text(r.relation);
  EXPECT_THROW(enumerate_ds_relations(3), std::domain_error);
}

TEST(DoubleShuffle, IdentityWithTheDPart) {
  const auto& z = alphabets::z();
  for (int wt = 4; wt <= 6; ++wt)
    for (int wu = 2; wu <= wt - 2; ++wu)
      for (const auto& u : admissible_z_words(wu))
        for (const auto& v : admissible_z_words(wt - wu)) {
          CheckResult r = verify_ds_identity(NCPoly(z, u), NCPoly(z, v));
          EXPECT_TRUE(r.passed()) << r.inputs << " " << r.witness;
        }
}

TEST(Duality, DualStuffle) {
  const auto& z = alphabets::z();
  for (int wu = 2; wu <= 4; ++wu)
    for (const auto& u : admissible_z_words(wu))
      for (const auto& v : admissible_z_words(6 - wu)) EXPECT_TRUE(verify_dual_stuffle(NCPoly(z, u), NCPoly(z, v)).passed());
}

TEST(Duality, QDuality) {
  for (const auto& [u, v] : admissible_ab_pairs(6)) {
    CheckResult r = verify_q_duality(W(alphabets::ab(), u), W(alphabets::ab(), v));
    EXPECT_EQ(r.status, CheckStatus::exact_pass) << r.inputs;
  }
}

TEST(Duality, SigmaDualityDetectsAWrongPairing) {
  CheckResult r = verify_sigma_duality("swap", builtin_handle("qshuffle"), builtin_handle("qshuffle"), P("ab"), P("ab"));
  EXPECT_EQ(r.status, CheckStatus::fail);
  EXPECT_FALSE(r.witness.empty());
}

TEST(GeneralizedDual, Seeds) {
  EXPECT_TRUE(verify_generalized_dual(P("e0")).passed());
  EXPECT_TRUE(verify_generalized_dual(P("e0 e0")).passed());
  EXPECT_TRUE(verify_generalized_dual(P("-e0 e0"), 5).passed());
}

TEST(GeneralizedDual, NegatedSeedRuleIsNotAssociative) {
  DualPair p = build_dual_pair(P("-e0 e0"));
  PropertyReport rep = check_associative(p.rule_l);
  EXPECT_FALSE(rep.holds);
  ASSERT_TRUE(rep.witness);
  EXPECT_EQ(rep.witness->letters, (std::vector<Letter>{Letter{0}, Letter{0}, Letter{1}}));
}

TEST(Dualst, Check) {
  EXPECT_TRUE(verify_dualst(builtin_handle("ex4"), W(alphabets::abc(), word_of(*alphabets::abc(), "ab")),
                            W(alphabets::abc(), word_of(*alphabets::abc(), "cc"))).passed());
}

TEST(AssocComm, BuiltinRules) {
  for (std::string_view name : {"qshuffle", "ex3", "shsh"}) {
    CheckResult r = verify_assoc_comm(builtin_handle(name), 6);
    EXPECT_EQ(r.status, CheckStatus::exact_pass) << name << " " << r.witness;
  }
}

TEST(AssocComm, BrokenRuleFailsThePrecondition) {
  ProductHandle h(parse_rule("alphabet: a b\na a -> -aa\na b -> -ab\nb a -> -ab\nb b -> -bb\n"));
  CheckResult r = verify_assoc_comm(h, 4);
  EXPECT_EQ(r.status, CheckStatus::fail);
  EXPECT_NE(r.witness.find("precondition"), std::string::npos);
}
