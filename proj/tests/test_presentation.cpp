#include <gtest/gtest.h>

#include "support.hpp"

using namespace lenscert;
using namespace testsupport;

namespace {

const char* kFig8 =
    "gens 2 a b\n"
    "rels 1\n"
    "a b a^-1 b^-1 a b a b^-1 a^-1 b^-1\n";

std::vector<long long> diag_of(const SNFResult& r) {
  std::vector<long long> out;
  for (std::size_t i = 0; i < r.rank; ++i) out.push_back(static_cast<long long>(r.diag[i]));
  return out;
}

IntMatrix product(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

}  // namespace

TEST(Presentation, RoundTrip) {
  auto pres = parse_presentation(kFig8);
  EXPECT_EQ(pres.generators, 2u);
  EXPECT_EQ(serialize_presentation(pres), kFig8);
  auto tri = triangle_group_presentation(2, 3, 7);
  EXPECT_EQ(parse_presentation(serialize_presentation(tri)).relators, tri.relators);
}

TEST(Presentation, UnknownGeneratorIsParseError) {
  EXPECT_THROW(parse_presentation("gens 2 a b\nrels 1\na c\n"), ParseError);
  EXPECT_THROW(parse_presentation("gens 2 a b\nrels 2\na b\n"), ParseError);
}

TEST(ExponentMatrix, TriangleGroup) {
  auto m = exponent_matrix(triangle_group_presentation(3, 3, 3));
  ASSERT_EQ(m.rows(), 3u);
  EXPECT_EQ(m(0, 0), 3);
  EXPECT_EQ(m(0, 1), 0);
  EXPECT_EQ(m(1, 0), 0);
  EXPECT_EQ(m(1, 1), 3);
  EXPECT_EQ(m(2, 0), 3);
  EXPECT_EQ(m(2, 1), 3);
}

TEST(ExponentMatrix, FigureEight) {
  auto m = exponent_matrix(parse_presentation(kFig8));
  ASSERT_EQ(m.rows(), 1u);
  EXPECT_EQ(m(0, 0), 1);
  EXPECT_EQ(m(0, 1), -1);
}

TEST(ExponentMatrix, NoRelators) {
  GroupPresentation pres;
  pres.generators = 3;
  auto m = exponent_matrix(pres);
  EXPECT_EQ(m.rows(), 0u);
  EXPECT_EQ(m.cols(), 3u);
}

TEST(Smith, AlreadyDiagonal) {
  auto r = smith_normal_form(IntMatrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 6}});
  EXPECT_EQ(diag_of(r), (std::vector<long long>{1, 2, 6}));
}

TEST(Smith, TriangleRows) {
  auto r = smith_normal_form(IntMatrix{{3, 0}, {0, 3}, {3, 3}});
  EXPECT_EQ(diag_of(r), (std::vector<long long>{3, 3}));
}

TEST(Smith, TransformsReproduceDiagonal) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dim(1, 5), entry(-9, 9);
  for (int k = 0; k < 100; ++k) {
    SmallMatrix a(static_cast<std::size_t>(dim(rng)));
    const auto cols = static_cast<std::size_t>(dim(rng));
    for (auto& row : a)
      for (std::size_t j = 0; j < cols; ++j) row.push_back(entry(rng));
    auto A = to_int_matrix(a);
    auto r = smith_normal_form(A, true);
    auto N = product(product(*r.U, A), *r.V);
    for (std::size_t i = 0; i < N.rows(); ++i)
      for (std::size_t j = 0; j < N.cols(); ++j) {
        BigInt want = (i == j && i < r.diag.size()) ? r.diag[i] : BigInt(0);
        EXPECT_EQ(N(i, j), want);
      }
    EXPECT_EQ(abs(r.U->determinant()), 1);
    EXPECT_EQ(abs(r.V->determinant()), 1);
  }
}

TEST(Smith, UnimodularEquivalenceInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> entry(-9, 9), coin(0, 1);
  for (int k = 0; k < 50; ++k) {
    SmallMatrix a(4, std::vector<long long>(3));
    for (auto& row : a)
      for (auto& v : row) v = entry(rng);
    auto A = to_int_matrix(a);
    // Elementary unimodular mixes on both sides.
    auto U = IntMatrix::identity(4);
    auto V = IntMatrix::identity(3);
    U(1, 0) = entry(rng);
    U(3, 2) = entry(rng);
    V(0, 2) = entry(rng);
    if (coin(rng)) V(2, 1) = 1;
    auto B = product(product(U, A), V);
    EXPECT_EQ(diag_of(smith_normal_form(A)), diag_of(smith_normal_form(B)));
  }
}

TEST(Abelianization, Examples) {
  auto t333 = abelianization(triangle_group_presentation(3, 3, 3));
  EXPECT_EQ(t333.free_rank, 0u);
  EXPECT_EQ(t333.torsion, (std::vector<BigInt>{3, 3}));
  EXPECT_FALSE(is_cyclic(t333));

  auto fig8 = abelianization(parse_presentation(kFig8));
  EXPECT_EQ(fig8.free_rank, 1u);
  EXPECT_TRUE(fig8.torsion.empty());

  GroupPresentation free3;
  free3.generators = 3;
  EXPECT_EQ(abelianization(free3).free_rank, 3u);
}

TEST(Abelianization, Cyclicity) {
  EXPECT_TRUE(is_cyclic(parse_abelian_group("Z/5")));
  EXPECT_FALSE(is_cyclic(parse_abelian_group("Z/3 + Z/3")));
  EXPECT_FALSE(is_cyclic(parse_abelian_group("Z + Z/2")));
  EXPECT_TRUE(is_cyclic(parse_abelian_group("Z")));
  EXPECT_TRUE(is_cyclic(parse_abelian_group("0")));
}

TEST(Hadamard, Examples) {
  auto pres = parse_presentation("gens 3\nrels 3\nx0 x1 x2\nx0^2 x1\nx2^-1 x0 x1\n");
  EXPECT_EQ(hadamard_torsion_bound(pres), 27);
  auto t333 = triangle_group_presentation(3, 3, 3);
  EXPECT_LE(abelianization(t333).torsion_order(), hadamard_torsion_bound(t333));
}

TEST(Pi1, OneVertexFixtureBounds) {
  for (const auto& name : fixture_names()) {
    auto tri = fixture_tri(name);
    if (!validate(tri).ok() || cell_structure(tri).vertex_count != 1) continue;
    auto pres = fundamental_group(tri);
    const auto t = tri.size();
    EXPECT_EQ(pres.generators, t + 1) << name;
    EXPECT_EQ(pres.relators.size(), 2 * t) << name;
    EXPECT_LE(pres.max_relator_length(), 3u) << name;
    BigInt bound = pow(BigInt(3), static_cast<unsigned>(2 * t));
    EXPECT_EQ(hadamard_torsion_bound(pres), bound) << name;
  }
}

TEST(Pi1, MultiVertexGeneratorCount) {
  auto tri = fixture_tri("lens_7_2_two_vertex");
  auto cs = cell_structure(tri);
  auto pres = fundamental_group(tri);
  EXPECT_EQ(pres.generators, cs.edge_count - (cs.vertex_count - 1));
}

TEST(Pi1, HomologyMatchesReferenceTool) {
  for (const auto& name : fixture_names()) {
    auto meta = fixture_meta(name);
    if (!meta.contains("homology")) continue;
    auto want = parse_reference_homology(meta["homology"].get<std::string>());
    auto got = abelianization(fundamental_group(fixture_tri(name)));
    EXPECT_EQ(got.free_rank, want.free_rank) << name;
    EXPECT_EQ(got.torsion, want.torsion) << name;
  }
}

TEST(Pi1, LensSpaceIsCyclic) {
  auto h = abelianization(fundamental_group(fixture_tri("lens_7_2")));
  EXPECT_EQ(h.str(), "Z/7");
}
