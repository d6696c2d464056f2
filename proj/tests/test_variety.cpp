#include <charvar/locus.hpp>
#include <charvar/random.hpp>
#include <charvar/variety.hpp>

#include <gtest/gtest.h>

#include <numbers>

using namespace charvar;

namespace {

std::vector<Quaternion> partial_of(const PuncturedSphereRep& rep) {
  return {rep.meridians().begin(), rep.meridians().end() - 1};
}

}  // namespace

TEST(EvalF, Examples) {
  EXPECT_EQ(eval_f(std::vector<Quaternion>{kI, kI, kI}), 0.0);
  EXPECT_EQ(eval_f(std::vector<Quaternion>{kI, kJ}), 0.0);
  EXPECT_EQ(eval_f(std::vector<Quaternion>{kI, kI}), -1.0);
}

TEST(SamplePoint, ResidualsAcrossK) {
  for (int k : {4, 5, 6, 8}) {
    Rng rng(40 + static_cast<unsigned>(k));
    for (int s = 0; s < 1000; ++s) {
      const auto rep = sample_point(k, rng);
      ASSERT_EQ(rep.k(), k);
      EXPECT_LE(rep.product_residual(), 1e-10);
      EXPECT_LE(rep.traceless_residual(), 1e-10);
    }
  }
}

TEST(SamplePoint, ThreePuncturesIsOnePoint) {
  const Fingerprint ref = fingerprint(make_rep({kI, kJ, -kK}));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng = stream(seed, 0);
    EXPECT_TRUE(fingerprint_equal(fingerprint(sample_point(3, rng)), ref));
  }
}

TEST(SamplePoint, FourPuncturesAreBinaryDihedral) {
  Rng rng(41);
  for (int s = 0; s < 500; ++s) EXPECT_NE(classify_locus(sample_point(4, rng)).locus, Locus::generic);
}

TEST(SamplePoint, SixPuncturesAreGeneric) {
  Rng rng(42);
  int generic = 0;
  for (int s = 0; s < 1000; ++s) generic += classify_locus(sample_point(6, rng)).locus == Locus::generic;
  EXPECT_EQ(generic, 1000);
}

TEST(SamplePoint, RejectsSmallK) {
  Rng rng(43);
  EXPECT_THROW(sample_point(2, rng), Error);
}

TEST(Submersion, ThreePunctureExample) {
  const std::vector<Quaternion> partial{kI, kJ};
  const SubmersionCertificate cert = submersion_certificate(partial);
  EXPECT_NEAR(cert.alpha, std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(std::abs(cert.derivative), 1.0, 1e-15);
  EXPECT_EQ(cert.jacobian_rank, 1);
  EXPECT_NEAR(deformation_derivative_fd(partial, cert), cert.derivative, 1e-6);
}

TEST(Submersion, AbelianInputRejected) {
  try {
    submersion_certificate(std::vector<Quaternion>{kI, kI, kI});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::abelian_input);
  }
  try {
    submersion_certificate(std::vector<Quaternion>{kI, kI});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::constraint_violated);
  }
}

TEST(Submersion, DerivativeMatchesFiniteDifference) {
  for (int k : {4, 5, 6, 8}) {
    Rng rng(50 + static_cast<unsigned>(k));
    for (int s = 0; s < 250; ++s) {
      const auto partial = partial_of(sample_point(k, rng));
      const SubmersionCertificate cert = submersion_certificate(partial);
      EXPECT_GT(std::abs(cert.derivative), 1e-8);
      EXPECT_LE(std::abs(deformation_derivative_fd(partial, cert) - cert.derivative), 1e-6);
      EXPECT_EQ(cert.jacobian_rank, 1);
    }
  }
}

TEST(Submersion, DeformationStaysOnSpheres) {
  Rng rng(51);
  const auto partial = partial_of(sample_point(6, rng));
  const auto cert = submersion_certificate(partial);
  for (const auto& q : apply_deformation(partial, cert, 0.3)) EXPECT_TRUE(is_pure_unit(q));
}

TEST(LocalDimension, MatchesTwoKMinusSix) {
  Rng rng(52);
  EXPECT_EQ(local_dimension(make_rep({kI, kJ, -kK})), 0);
  for (int k : {4, 5, 6, 7, 8}) {
    for (int s = 0; s < 50; ++s) {
      const auto rep = sample_point(k, rng);
      if (classify_locus(rep).locus == Locus::abelian) continue;
      EXPECT_EQ(local_dimension(rep), 2 * k - 6);
    }
  }
  EXPECT_THROW(local_dimension(make_rep({kI, kI, kI, kI})), Error);
}

TEST(LocalDimension, ConjugationActsFreelyOffAbelianLocus) {
  Rng rng(53);
  for (int s = 0; s < 200; ++s) EXPECT_EQ(conjugation_action_rank(partial_of(sample_point(6, rng))), 3);
  EXPECT_EQ(conjugation_action_rank(std::vector<Quaternion>{kI, kI, -kI}), 2);
}

TEST(SignTransport, Examples) {
  const std::vector<Quaternion> base{kI, kI, kI, kI};
  const std::vector<int> plus{1, 1, 1, 1}, flip{-1, 1, 1, 1};
  EXPECT_EQ(sign_transport(base, plus), base);
  const auto moved = sign_transport(base, flip);
  EXPECT_EQ(moved[0], -kI);
  EXPECT_EQ(eval_g(moved), 0.0);
  EXPECT_THROW(sign_transport(base, std::vector<int>{1, 1, 1}), Error);
  EXPECT_THROW(sign_transport(base, std::vector<int>{1, 2, 1, 1}), Error);
  // Re(i j k) = -1, so (j, k) is not in g^{-1}(0).
  EXPECT_THROW(sign_transport(std::vector<Quaternion>{kJ, kK}, std::vector<int>{1, 1}), Error);
}

TEST(SignTransport, PreservesZeroSetOfG) {
  Rng rng(54);
  std::bernoulli_distribution coin;
  for (int s = 0; s < 200; ++s) {
    const auto rep = sample_point(6, rng);
    // Conjugate so that x_1 = i; then (x_2..x_5) lies in g^{-1}(0).
    const auto moved = conjugate(rep, rotation_between(rep[0], kI));
    std::vector<Quaternion> tail(moved.meridians().begin() + 1, moved.meridians().end() - 1);
    ASSERT_LE(std::abs(eval_g(tail)), 1e-12);
    std::vector<int> signs;
    for (std::size_t i = 0; i < tail.size(); ++i) signs.push_back(coin(rng) ? 1 : -1);
    EXPECT_LE(std::abs(eval_g(sign_transport(tail, signs))), 1e-12);
  }
}

TEST(AbelianPoints, CountIsTwoToTheTwoNMinusTwo) {
  for (int n = 2; n <= 6; ++n) {
    const auto pts = abelian_points(n);
    EXPECT_EQ(pts.size(), std::size_t{1} << (2 * n - 2));
    EXPECT_EQ(count_distinct_classes(pts), std::size_t{1} << (2 * n - 2));
    for (const auto& p : pts) EXPECT_EQ(classify_locus(p).locus, Locus::abelian);
  }
  EXPECT_EQ(abelian_points(3).size(), 16u);
}

TEST(ConjugatorSearch, Examples) {
  Rng rng(55);
  for (int s = 0; s < 50; ++s) {
    const auto a = sample_point(6, rng);
    const auto g = conjugator_search(a, conjugate(a, random_unit(rng)));
    EXPECT_TRUE(g.has_value());
  }
  const auto g = conjugator_search(make_rep({kI, kI, kI, kI}), make_rep({-kI, -kI, -kI, -kI}));
  ASSERT_TRUE(g.has_value());
  EXPECT_LE(distance(conjugate_by(*g, kI), -kI), 1e-7);
  EXPECT_THROW(make_rep({kI, kJ, kK}), Error);
}

TEST(ConjugatorSearch, AbsentForAlphaStarOfGenericRep) {
  Rng rng(56);
  for (int s = 0; s < 50; ++s) {
    const auto a = sample_point(6, rng);
    EXPECT_FALSE(conjugator_search(a, alpha_star(a)).has_value());
  }
}
