#include <charvar/locus.hpp>
#include <charvar/random.hpp>
#include <charvar/torus.hpp>
#include <charvar/variety.hpp>

#include <gtest/gtest.h>

#include <numbers>

using namespace charvar;

namespace {

constexpr double kPi = std::numbers::pi;

TorusCoords random_coords(int n, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  TorusCoords c{n, {}};
  for (int l = 0; l < 2 * n - 2; ++l) c.thetas.push_back(angle(rng));
  return c;
}

double coords_distance(const TorusCoords& a, const TorusCoords& b) {
  double d = 0.0;
  for (std::size_t l = 0; l < a.thetas.size(); ++l) d = std::max(d, angle_distance(a.thetas[l], b.thetas[l]));
  return d;
}

}  // namespace

TEST(ClassifyLocus, Examples) {
  const LocusLabel ab = classify_locus(make_rep({kI, kI, kI, kI}));
  EXPECT_EQ(ab.locus, Locus::abelian);
  EXPECT_EQ(ab.rank, 1);
  const LocusLabel bd = classify_locus(make_rep({kI, kJ, kI, -kJ}));
  EXPECT_EQ(bd.locus, Locus::binary_dihedral);
  EXPECT_EQ(bd.rank, 2);
  const LocusLabel gen = classify_locus(make_rep({kI, kJ, -kK}));
  EXPECT_EQ(gen.locus, Locus::generic);
  EXPECT_EQ(gen.rank, 3);
}

TEST(ClassifyLocus, ScaleFreeRank) {
  Eigen::MatrixXd m(3, 2);
  m << 1.0, 1.0, 0.0, 1e-9, 0.0, 0.0;
  EXPECT_EQ(numerical_rank(m, 1e-8), 1);
  m(1, 1) = 1e-7;
  EXPECT_EQ(numerical_rank(m, 1e-8), 2);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Zero(3, 3), 1e-8), 0);
}

TEST(ClassifyLocus, AlphaStarPreservesLocus) {
  Rng rng(31);
  for (int s = 0; s < 200; ++s) {
    const auto rep = sample_point(6, rng);
    EXPECT_EQ(classify_locus(alpha_star(rep)).locus, classify_locus(rep).locus);
  }
}

TEST(ClassifyLocus, AlphaFixedExactlyOffTheGenericLocus) {
  Rng rng(32);
  for (int s = 0; s < 200; ++s) {
    const auto generic = sample_point(6, rng);
    ASSERT_EQ(classify_locus(generic).locus, Locus::generic);
    EXPECT_FALSE(fingerprint_equal(fingerprint(generic), fingerprint(alpha_star(generic))));
    const auto bd = bd_from_torus(random_coords(3, rng));
    EXPECT_NE(classify_locus(bd).locus, Locus::generic);
    EXPECT_TRUE(fingerprint_equal(fingerprint(bd), fingerprint(alpha_star(bd))));
  }
}

TEST(Torus, Examples) {
  const auto flat = bd_from_torus({2, {0.0, 0.0}});
  for (const auto& q : flat.meridians()) EXPECT_LE(distance(q, kI), 1e-15);

  const auto quarter = bd_from_torus({2, {kPi / 2, 0.0}});
  const std::vector<Quaternion> want{kI, kJ, kI, -kJ};
  for (int l = 0; l < 4; ++l) EXPECT_LE(distance(quarter[l], want[static_cast<std::size_t>(l)]), 1e-15);

  const TorusCoords back = torus_from_bd(make_rep({kI, kJ, kI, -kJ}));
  EXPECT_LE(coords_distance(back, canonical({2, {kPi / 2, 0.0}})), 1e-12);
  EXPECT_LE(coords_distance(torus_from_bd(make_rep({kI, kI, kI, kI})), {2, {0.0, 0.0}}), 1e-12);
}

TEST(Torus, RejectsGenericInput) {
  try {
    torus_from_bd(make_rep({kI, kJ, -kK}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_binary_dihedral);
  }
  Rng rng(33);
  EXPECT_THROW(torus_from_bd(sample_point(6, rng)), Error);
  EXPECT_THROW(bd_from_torus({3, {0.0}}), Error);
}

TEST(Torus, ProductRelationHoldsWithTrailingI) {
  Rng rng(34);
  for (int n = 1; n <= 6; ++n)
    for (int s = 0; s < 100; ++s) {
      const auto rep = bd_from_torus(random_coords(n, rng));
      EXPECT_LE(rep.product_residual(), 1e-12);
      EXPECT_NE(classify_locus(rep).locus, Locus::generic);
    }
}

TEST(Torus, RoundTripUpToInvolution) {
  Rng rng(35);
  for (int n = 2; n <= 5; ++n)
    for (int s = 0; s < 250; ++s) {
      const TorusCoords c = random_coords(n, rng);
      const TorusCoords back = torus_from_bd(bd_from_torus(c));
      TorusCoords neg = c;
      for (auto& t : neg.thetas) t = -t;
      EXPECT_LE(std::min(coords_distance(back, c), coords_distance(back, neg)), 1e-9);
      EXPECT_TRUE(fingerprint_equal(fingerprint(bd_from_torus(back)), fingerprint(bd_from_torus(c))));
    }
}

TEST(Torus, RoundTripAfterConjugation) {
  Rng rng(36);
  for (int s = 0; s < 200; ++s) {
    const TorusCoords c = random_coords(3, rng);
    const auto rep = conjugate(bd_from_torus(c), random_unit(rng));
    EXPECT_LE(coords_distance(torus_from_bd(rep), canonical(c)), 1e-9);
  }
}

TEST(Torus, NegatedCoordinatesGiveConjugateReps) {
  Rng rng(37);
  for (int s = 0; s < 100; ++s) {
    TorusCoords c = random_coords(4, rng), neg = c;
    for (auto& t : neg.thetas) t = -t;
    EXPECT_TRUE(fingerprint_equal(fingerprint(bd_from_torus(c)), fingerprint(bd_from_torus(neg))));
  }
}

TEST(Torus, CanonicalPicksLexicographicallySmaller) {
  const TorusCoords c = canonical({2, {5.0, 1.0}});
  EXPECT_NEAR(c.thetas[0], kTwoPi - 5.0, 1e-15);
  EXPECT_NEAR(c.thetas[1], kTwoPi - 1.0, 1e-15);
  const TorusCoords tie = canonical({2, {kPi, 1.0}});
  EXPECT_NEAR(tie.thetas[0], kPi, 1e-15);
  EXPECT_NEAR(tie.thetas[1], 1.0, 1e-15);
  EXPECT_EQ(canonical({2, {-1e-14, 0.0}}).thetas[0], 0.0);
}

TEST(Torus, InvolutionFixedPointsAreTheAbelianPoints) {
  // theta = -theta mod 2 pi forces every angle into {0, pi}.
  for (int n = 2; n <= 4; ++n) {
    const int m = 2 * n - 2;
    std::vector<PuncturedSphereRep> reps;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      TorusCoords c{n, {}};
      for (int b = 0; b < m; ++b) c.thetas.push_back((mask >> b) & 1u ? kPi : 0.0);
      const auto rep = bd_from_torus(c);
      EXPECT_EQ(classify_locus(rep).locus, Locus::abelian);
      reps.push_back(rep);
    }
    EXPECT_EQ(count_distinct_classes(reps), std::size_t{1} << m);
    EXPECT_EQ(count_distinct_classes(abelian_points(n)), std::size_t{1} << m);
  }
}
