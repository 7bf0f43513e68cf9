#include <gtest/gtest.h>

#include "support.hpp"

using namespace lenscert;
using namespace testsupport;

namespace {

ProjMatrix random_matrix(const FieldSpec& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> pick(0, f.p - 1);
  for (;;) {
    auto rnd = [&] { return FieldElement(f, pick(rng), f.degree == 2 ? pick(rng) : 0); };
    if (auto m = ProjMatrix::try_make(rnd(), rnd(), rnd(), rnd())) return *m;
  }
}

ProjMatrix mat(const FieldSpec& f, long long a, long long b, long long c, long long d) {
  return ProjMatrix(FieldElement::from_int(f, a), FieldElement::from_int(f, b), FieldElement::from_int(f, c),
                    FieldElement::from_int(f, d));
}

}  // namespace

TEST(ProjMatrix, SignNormalization) {
  auto f = FieldSpec::make(7);
  auto m = mat(f, 1, 2, 3, 7);
  auto neg = mat(f, -1, -2, -3, -7);
  EXPECT_EQ(m, neg);
  EXPECT_EQ(neg.a().a(), 1u);
  EXPECT_EQ(mat(f, 6, 0, 0, 6).str(), "[[1,0],[0,1]]");
  EXPECT_THROW(mat(f, 1, 1, 1, 1), DomainError);
}

TEST(ProjMatrix, GroupLaws) {
  std::mt19937_64 rng(9);
  for (auto f : {FieldSpec::make(337), FieldSpec::make(5, 2)}) {
    for (int k = 0; k < 50; ++k) {
      auto a = random_matrix(f, rng), b = random_matrix(f, rng);
      EXPECT_TRUE((a * a.inverse()).is_identity());
      EXPECT_EQ((a * b).inverse(), b.inverse() * a.inverse());
      EXPECT_TRUE(a.det().is_one());
    }
  }
}

TEST(ProjMatrix, Orders) {
  auto f = FieldSpec::make(337);
  const u64 cap = u64{1} << 40;
  EXPECT_EQ(projective_order(ProjMatrix::identity(f), cap), 1u);
  EXPECT_EQ(projective_order(mat(f, 1, 1, 0, 1), cap), 337u);
  auto rep = build_hyperbolic_rep(classify(2, 3, 7));
  EXPECT_EQ(projective_order(rep.x, cap), 2u);
  EXPECT_THROW(projective_order(mat(f, 1, 1, 0, 1), 100), ArithmeticError);
}

TEST(ProjMatrix, OrderAgreesWithPowering) {
  std::mt19937_64 rng(13);
  for (auto f : {FieldSpec::make(11), FieldSpec::make(13), FieldSpec::make(3, 2), FieldSpec::make(7, 2)}) {
    for (int k = 0; k < 40; ++k) {
      auto m = random_matrix(f, rng);
      EXPECT_EQ(projective_order(m, 1000), order_by_powering(m, 1000)) << m.str();
    }
  }
}

TEST(EvaluateWord, Basics) {
  auto f = FieldSpec::make(5, 2);
  std::mt19937_64 rng(17);
  std::vector<ProjMatrix> images{random_matrix(f, rng), random_matrix(f, rng)};
  OpCounter count;
  EXPECT_TRUE(evaluate_word(f, images, Word{}, &count).is_identity());
  EXPECT_EQ(count.mat_mults, 0u);
  Word ww({{0, 1}, {0, -1}});
  EXPECT_TRUE(evaluate_word(f, images, ww, &count).is_identity());
  EXPECT_EQ(count.mat_mults, 2u);
  EXPECT_EQ(count.field_ops, 24u);
  EXPECT_THROW(evaluate_word(f, images, Word({{2, 1}})), DomainError);
}

TEST(EvaluateWord, FigureEightRelator) {
  auto f = FieldSpec::make(5, 2);
  std::vector<ProjMatrix> images{mat(f, 2, 0, 0, 3), mat(f, 2, 3, 0, 3)};
  auto pres = parse_presentation("gens 2 a b\nrels 1\na b a^-1 b^-1 a b a b^-1 a^-1 b^-1\n");
  OpCounter count;
  EXPECT_TRUE(evaluate_word(f, images, pres.relators[0], &count).is_identity());
  EXPECT_EQ(count.mat_mults, 10u);
}

TEST(BitSize, Examples) {
  EXPECT_EQ(bit_size(FieldSpec::make(5, 2)), 16u);
  EXPECT_EQ(bit_size(FieldSpec::make(3)), 4u);
  EXPECT_EQ(bit_size(FieldSpec::make(337, 2)), 72u);
}
