#include <charvar/exact.hpp>
#include <charvar/random.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace charvar;

namespace {

// Leibniz expansion over all permutations.
BigInt leibniz_determinant(const IntMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BigInt det = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    BigInt term = inversions % 2 == 0 ? 1 : -1;
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Pf(A) = sum_{j > 0} (-1)^{j+1} a_{0j} Pf(A without rows/cols 0 and j).
BigInt expansion_pfaffian(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  BigInt pf = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (a(0, j) == 0) continue;
    std::vector<std::size_t> keep;
    for (std::size_t i = 1; i < n; ++i)
      if (i != j) keep.push_back(i);
    IntMatrix minor(keep.size(), keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r)
      for (std::size_t c = 0; c < keep.size(); ++c) minor(r, c) = a(keep[r], keep[c]);
    const BigInt sub = a(0, j) * expansion_pfaffian(minor);
    pf += (j % 2 == 1) ? sub : BigInt(-sub);
  }
  return pf;
}

IntMatrix random_matrix(std::size_t n, Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> entry(lo, hi);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = entry(rng);
  return a;
}

IntMatrix random_antisymmetric(std::size_t n, Rng& rng, int bound) {
  std::uniform_int_distribution<int> entry(-bound, bound);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = entry(rng);
      a(j, i) = -a(i, j);
    }
  return a;
}

}  // namespace

TEST(Bareiss, SmallExamples) {
  IntMatrix a(2, 2);
  a(0, 1) = -1;
  a(1, 0) = 1;
  EXPECT_EQ(bareiss_determinant(a), 1);
  EXPECT_EQ(bareiss_determinant(IntMatrix(0, 0)), 1);
  EXPECT_EQ(bareiss_determinant(IntMatrix(3, 3)), 0);
  EXPECT_THROW(bareiss_determinant(IntMatrix(2, 3)), Error);
}

TEST(Bareiss, MatchesLeibnizOracle) {
  Rng rng(81);
  for (std::size_t n = 1; n <= 7; ++n)
    for (int s = 0; s < 30; ++s) {
      // Narrow entry ranges produce zero pivots and force row swaps.
      const IntMatrix a = random_matrix(n, rng, s % 2 == 0 ? -1 : -9, s % 2 == 0 ? 1 : 9);
      EXPECT_EQ(bareiss_determinant(a), leibniz_determinant(a)) << "n=" << n;
    }
}

TEST(Bareiss, ExactBeyondSixtyFourBits) {
  IntMatrix a(20, 20);
  for (std::size_t i = 0; i < 20; ++i) a(i, i) = BigInt(1) << 10;
  EXPECT_EQ(bareiss_determinant(a), BigInt(1) << 200);
}

TEST(Pfaffian, MatchesExpansionOracle) {
  Rng rng(82);
  for (std::size_t n = 2; n <= 10; n += 2)
    for (int s = 0; s < 20; ++s) {
      const IntMatrix a = random_antisymmetric(n, rng, s % 2 == 0 ? 1 : 5);
      const BigInt pf = pfaffian(a);
      EXPECT_EQ(pf, expansion_pfaffian(a)) << "n=" << n;
      EXPECT_EQ(pf * pf, bareiss_determinant(a));
    }
}

TEST(Pfaffian, EdgeCases) {
  EXPECT_EQ(pfaffian(IntMatrix(3, 3)), 0);
  EXPECT_EQ(pfaffian(IntMatrix(4, 4)), 0);
  IntMatrix bad(2, 2);
  bad(0, 1) = 1;
  EXPECT_THROW(pfaffian(bad), Error);
  EXPECT_FALSE(is_antisymmetric(bad));
  IntMatrix j(2, 2);
  j(0, 1) = 3;
  j(1, 0) = -3;
  EXPECT_EQ(pfaffian(j), 3);
}

TEST(ModTwo, ReductionAndProduct) {
  IntMatrix a(2, 2);
  a(0, 0) = -3;
  a(0, 1) = 4;
  a(1, 0) = 5;
  a(1, 1) = -2;
  const Mod2Matrix b = reduce_mod2(a);
  EXPECT_EQ(b(0, 0), 1);
  EXPECT_EQ(b(0, 1), 0);
  EXPECT_EQ(b(1, 0), 1);
  EXPECT_EQ(b(1, 1), 0);
  const Mod2Matrix b2 = multiply_mod2(b, b);
  EXPECT_EQ(b2(0, 0), 1);
  EXPECT_EQ(b2(1, 0), 1);
  EXPECT_FALSE(is_identity(b2));
  Mod2Matrix id(3, 3);
  for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1;
  EXPECT_TRUE(is_identity(id));
  EXPECT_THROW(multiply_mod2(Mod2Matrix(2, 3), Mod2Matrix(2, 3)), Error);
}

TEST(ModTwo, ParityOfDeterminantMatchesFieldDeterminant) {
  // det over F2 is det mod 2; an invertible B over F2 means odd det.
  Rng rng(83);
  for (int s = 0; s < 50; ++s) {
    const IntMatrix a = random_matrix(5, rng, -3, 3);
    Mod2Matrix b = reduce_mod2(a);
    // Gaussian elimination over F2.
    bool invertible = true;
    for (std::size_t c = 0; c < 5 && invertible; ++c) {
      std::size_t p = c;
      while (p < 5 && b(p, c) == 0) ++p;
      if (p == 5) {
        invertible = false;
        break;
      }
      b.swap_rows(c, p);
      for (std::size_t r = 0; r < 5; ++r)
        if (r != c && b(r, c))
          for (std::size_t k = 0; k < 5; ++k) b(r, k) ^= b(c, k);
    }
    EXPECT_EQ(invertible, bareiss_determinant(a) % 2 != 0);
  }
}
