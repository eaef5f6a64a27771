#include <gtest/gtest.h>

#include <random>

#include "hellyfix/automorphism.hpp"
#include "hellyfix/families.hpp"
#include "hellyfix/group.hpp"
#include "oracle.hpp"

using namespace hellyfix;

namespace {

ReducedWord word(std::initializer_list<Letter> l, int rank) { return ReducedWord::reduce(l, rank); }

oracle::Map as_map(const FreeAutomorphism& a) {
  oracle::Map m;
  for (const auto& w : a.images())
    m.push_back(w.letters());
  return m;
}

} // namespace

TEST(ReducedWord, Cancellation) {
  EXPECT_EQ(word({1, 2, -2}, 3).str(), "x1");
  EXPECT_TRUE(word({}, 3).empty());
  EXPECT_EQ(word({-1, 1, 1}, 3).str(), "x1");
  EXPECT_EQ(word({1, -2}, 2).str(), "x1 x2^-1");
}

TEST(ReducedWord, IndexOutOfRange) {
  EXPECT_THROW(word({1, 4}, 3), std::out_of_range);
  EXPECT_THROW(word({0}, 3), std::out_of_range);
  EXPECT_THROW(ReducedWord(0), std::invalid_argument);
}

TEST(ReducedWord, RandomWordsAgainstOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10000; ++t) {
    oracle::Raw raw = oracle::random_word(rng, 4, 16);
    ReducedWord w = ReducedWord::reduce(raw, 4);
    ASSERT_EQ(w.letters(), oracle::freely_reduce(raw));
    ASSERT_EQ(ReducedWord::reduce(w.letters(), 4), w);
    ASSERT_TRUE((w * w.inverse()).empty());
    ASSERT_TRUE((w.inverse() * w).empty());
  }
}

TEST(Nielsen, Images) {
  EXPECT_EQ(lambda(1, 2, 3).apply(word({1}, 3)), word({2, 1}, 3));
  EXPECT_EQ(rho(1, 2, 3).apply(word({1}, 3)), word({1, 2}, 3));
  EXPECT_EQ(lambda(1, 2, 3).apply(word({3}, 3)), word({3}, 3));
  EXPECT_EQ(lambda(1, 2, 3).inverse().image(1), word({-2, 1}, 3));
  EXPECT_EQ(rho(1, 2, 3).inverse().image(1), word({1, -2}, 3));
  EXPECT_THROW(lambda(2, 2, 3), std::invalid_argument);
  EXPECT_THROW(rho(1, 4, 3), std::out_of_range);
}

TEST(FreeAutomorphism, RejectsBadInverseWitness) {
  std::vector<ReducedWord> imgs{word({2, 1}, 2), word({2}, 2)};
  std::vector<ReducedWord> bad{word({2, 1}, 2), word({2}, 2)};
  EXPECT_THROW(FreeAutomorphism(2, imgs, bad), std::invalid_argument);
}

TEST(SignedPerm, Basics) {
  EXPECT_TRUE((epsilon(1, 3) * epsilon(1, 3)).is_identity());
  EXPECT_EQ(conjugate(transposition(1, 2, 3), epsilon(1, 3)), epsilon(2, 3));
  EXPECT_TRUE(signed_perm({1, 2, 3}, {1, 1, 1}).is_identity());
  EXPECT_THROW(signed_perm({1, 1, 3}, {1, 1, 1}), std::invalid_argument);
}

TEST(Compose, AppliesRightFactorFirst) {
  EXPECT_TRUE((lambda(1, 2, 3) * lambda(1, 2, 3).inverse()).is_identity());
  auto a = rho(1, 2, 3) * lambda(1, 3, 3);
  auto b = lambda(1, 3, 3) * rho(1, 2, 3);
  EXPECT_EQ(a.image(1), word({3, 1, 2}, 3));
  EXPECT_EQ(b.image(1), word({3, 1, 2}, 3));
  EXPECT_EQ(epsilon(1, 3) * epsilon(2, 3), epsilon(2, 3) * epsilon(1, 3));
  EXPECT_THROW(lambda(1, 2, 3) * lambda(1, 2, 4), std::invalid_argument);

  // Against substitution maps.
  auto x = lambda(2, 1, 3), y = rho(3, 2, 3);
  EXPECT_EQ(as_map(x * y), oracle::after(as_map(x), as_map(y)));
}

TEST(Compose, AssociativeOnRandomTriples) {
  std::mt19937_64 rng(5);
  std::vector<FreeAutomorphism> pool;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      if (i != j) {
        pool.push_back(lambda(i, j, 4));
        pool.push_back(rho(i, j, 4));
      }
  for (int i = 1; i <= 4; ++i)
    pool.push_back(epsilon(i, 4));
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  auto random_auto = [&] {
    FreeAutomorphism a = FreeAutomorphism::identity(4);
    for (int k = 0; k < 4; ++k)
      a = a * pool[pick(rng)];
    return a;
  };
  for (int t = 0; t < 300; ++t) {
    auto a = random_auto(), b = random_auto(), c = random_auto();
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(commutes(a, b), commutator(a, b).is_identity());
    ASSERT_TRUE((a * a.inverse()).is_identity());
    ASSERT_EQ(as_map(a * b), oracle::after(as_map(a), as_map(b)));
  }
}

// Exactly one of the two readings of composition gives [λ_jk, λ_ij] = λ_ik.
TEST(Commutator, ConventionPinnedByNielsenRelation) {
  const int n = 3;
  auto l23 = oracle::lambda_map(2, 3, n), l12 = oracle::lambda_map(1, 2, n);
  auto i23 = oracle::identity_map(n), i12 = oracle::identity_map(n);
  i23[1] = {-3, 2};
  i12[0] = {-2, 1};
  // Reading 1: a*b applies b first.
  auto right_first = oracle::after(oracle::after(oracle::after(i23, i12), l23), l12);
  // Reading 2: a*b applies a first.
  auto left_first = oracle::after(l12, oracle::after(l23, oracle::after(i12, i23)));
  auto target = oracle::lambda_map(1, 3, n);
  EXPECT_EQ(right_first, target);
  EXPECT_NE(left_first, target);
  EXPECT_EQ(commutator(lambda(2, 3, n), lambda(1, 2, n)), lambda(1, 3, n));
}

TEST(Commutator, AllTriplesUpToSix) {
  for (int n = 3; n <= 6; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
          if (i == j || j == k || i == k)
            continue;
          ASSERT_EQ(commutator(lambda(j, k, n), lambda(i, j, n)), lambda(i, k, n))
              << i << j << k << " in rank " << n;
        }
  EXPECT_TRUE(commutator(lambda(1, 2, 3), lambda(1, 2, 3)).is_identity());
  EXPECT_TRUE(commutes(lambda(1, 3, 4), lambda(2, 4, 4)));
}

TEST(Dihedral, EpsilonInvertsNielsen) {
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j)
          continue;
        ASSERT_TRUE(dihedral_check(lambda(i, j, n), epsilon(j, n)));
        ASSERT_TRUE(dihedral_check(rho(i, j, n), epsilon(j, n)));
        ASSERT_EQ(conjugate(epsilon(j, n), lambda(i, j, n)), lambda(i, j, n).inverse());
      }
}

TEST(Braid, Relations) {
  for (int m = 3; m <= 10; ++m) {
    for (int i = 1; i + 1 < m; ++i) {
      auto a = braid_generator(i, m), b = braid_generator(i + 1, m);
      ASSERT_EQ(a * b * a, b * a * b) << "m=" << m << " i=" << i;
    }
    for (int i = 1; i < m; ++i)
      for (int j = i + 2; j < m; ++j)
        ASSERT_TRUE(commutes(braid_generator(i, m), braid_generator(j, m)));
    auto gens = cyclic_braid_generators(m);
    // Cyclic indices: σ_m is adjacent to σ_1 and σ_{m-1}.
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        int gap = ((i - j) % m + m) % m;
        if (gap == 1) {
          ASSERT_EQ(gens[i] * gens[j] * gens[i], gens[j] * gens[i] * gens[j]);
        } else if (gap != 0 && gap != m - 1) {
          ASSERT_TRUE(commutes(gens[i], gens[j])) << i << "," << j << " m=" << m;
        }
      }
  }
  EXPECT_TRUE(commutes(braid_generator(1, 4), braid_generator(3, 4)));
  EXPECT_TRUE(commutes(braid_generator(1, 4), braid_sigma_m(4)) == false);
  EXPECT_THROW(braid_generator(4, 4), std::out_of_range);
}

TEST(Braid, RotationConjugatesGenerators) {
  for (int m = 3; m <= 8; ++m) {
    auto d = braid_rotation(m);
    auto gens = cyclic_braid_generators(m);
    for (int i = 0; i + 1 < m; ++i)
      ASSERT_EQ(conjugate(d, gens[i]), gens[i + 1]);
  }
}

TEST(Closure, SmallGroups) {
  std::vector<FreeAutomorphism> e1{epsilon(1, 2)};
  EXPECT_EQ(finite_order<FreeAutomorphism>(e1), 2u);
  for (int n = 1; n <= 5; ++n) {
    auto w = signed_permutation_generators(n);
    std::size_t expect = 1;
    for (int k = 1; k <= n; ++k)
      expect *= 2 * k;
    EXPECT_EQ(finite_order<FreeAutomorphism>(w), expect) << n;
  }
  std::vector<FreeAutomorphism> inf{lambda(1, 2, 2)};
  auto r = closure_enumerate<FreeAutomorphism>(inf, 50);
  EXPECT_TRUE(std::holds_alternative<CapExceeded>(r));
}

TEST(Closure, LiterallyClosed) {
  std::vector<FreeAutomorphism> gens{theta(3), tau(3)};
  auto r = closure_enumerate<FreeAutomorphism>(gens);
  ASSERT_TRUE(std::holds_alternative<FiniteClosure<FreeAutomorphism>>(r));
  const auto& c = std::get<FiniteClosure<FreeAutomorphism>>(r);
  std::unordered_set<FreeAutomorphism> set(c.elements.begin(), c.elements.end());
  for (const auto& a : c.elements) {
    ASSERT_TRUE(set.count(a.inverse()));
    for (const auto& b : c.elements)
      ASSERT_TRUE(set.count(a * b));
  }
}

TEST(Closure, MixedRanksRejected) {
  std::vector<FreeAutomorphism> gens{epsilon(1, 2), epsilon(1, 3)};
  EXPECT_THROW(closure_enumerate<FreeAutomorphism>(gens), std::invalid_argument);
}
