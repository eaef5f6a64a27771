#include <gtest/gtest.h>

#include "hellyfix/helly.hpp"

using namespace hellyfix;

namespace {

using Row = std::vector<int>;

RationalHalfspaceSystem poly(const std::vector<std::pair<Row, Rational>>& rows) {
  RationalHalfspaceSystem s(static_cast<int>(rows[0].first.size()));
  for (const auto& [a, b] : rows) {
    std::vector<Rational> q(a.begin(), a.end());
    s.add(q, b);
  }
  return s;
}

// The line a.x = b as a closed convex set.
RationalHalfspaceSystem line(int a0, int a1, int b) {
  return poly({{{a0, a1}, b}, {{-a0, -a1}, -b}});
}

} // namespace

TEST(Seeds, CounterHash) {
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_NE(trial_seed(7, 0), trial_seed(7, 1));
  EXPECT_EQ(trial_seed(7, 3), splitmix64(7 + 0x9E3779B97F4A7C15ULL * 4));
}

TEST(HellyTrial, Deterministic) {
  for (std::uint64_t s : {1ULL, 99ULL, 123456789ULL}) {
    auto a = helly_trial(2, 6, s), b = helly_trial(2, 6, s);
    EXPECT_EQ(a.serialize(), b.serialize());
  }
  EXPECT_THROW(helly_trial(4, 6, 1), std::out_of_range);
  EXPECT_THROW(helly_trial(2, 9, 1), std::out_of_range);
}

TEST(HellyTrial, PolytopesContainTheirCentres) {
  for (std::uint64_t s = 0; s < 50; ++s)
    for (const auto& p : trial_polytopes(3, 4, s))
      ASSERT_TRUE(feasible(p));
}

TEST(HellyTrial, ThickenedTriangleEdges) {
  // Strips along the three edges of the triangle (0,0), (4,0), (0,4).
  Rational h(1, 2);
  auto a = poly({{{0, -1}, 0}, {{0, 1}, h}, {{-1, 0}, 0}, {{1, 1}, 4}});
  auto b = poly({{{-1, 0}, 0}, {{1, 0}, h}, {{0, -1}, 0}, {{1, 1}, 4}});
  auto c = poly({{{1, 1}, 4}, {{-1, -1}, Rational(-7, 2)}, {{-1, 0}, 0}, {{0, -1}, 0}});
  auto k = polytope_nerve({a, b, c});
  auto es = empty_simplices(k);
  ASSERT_EQ(es.size(), 1u);
  EXPECT_EQ(es[0].r, 2);
  EXPECT_TRUE(helly_violations(k, 2).empty());
  EXPECT_FALSE(helly_violations(k, 1).empty());
}

TEST(HellyViolations, DetectsForbiddenPatterns) {
  // Octahedron boundary: three non-edges, all eight transversal triangles.
  auto s0 = SimplicialComplex::simplex_boundary(1);
  auto oct = join(join(s0, s0), s0);
  ASSERT_EQ(oct.vertex_count(), 6);
  auto v = helly_violations(oct, 2);
  ASSERT_FALSE(v.empty());
  bool saw_join = false;
  for (const auto& s : v)
    saw_join = saw_join || s.rfind("join pattern", 0) == 0;
  EXPECT_TRUE(saw_join);
  EXPECT_TRUE(helly_violations(oct, 3).empty());
}

// Three pairs of parallel lines in the plane: each pair is disjoint and every
// line meets every non-parallel line, yet no join pattern occurs because the
// transversal triples are empty.
TEST(HellyViolations, ParallelLinesAreNotAJoinPattern) {
  std::vector<RationalHalfspaceSystem> sets{line(0, 1, 0), line(0, 1, 1),  line(1, 0, 0),
                                            line(1, 0, 1), line(1, -1, 5), line(1, -1, 7)};
  auto k = polytope_nerve(sets);
  for (int p = 0; p < 3; ++p)
    EXPECT_FALSE(k.contains(singleton(2 * p) | singleton(2 * p + 1)));
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (a / 2 != b / 2) {
        EXPECT_TRUE(k.contains(singleton(a) | singleton(b)));
      }
  EXPECT_FALSE(find_octahedral_pattern(k, 2).has_value());
  EXPECT_TRUE(helly_violations(k, 2).empty());
}

TEST(HellyFuzz, IntervalsNeverViolate) {
  auto s = helly_fuzz(1, 6, 2000, 42);
  EXPECT_EQ(s.passed, 2000u);
  EXPECT_TRUE(s.failures.empty());
  // Disjoint intervals occur, so empty 1-simplices are common.
  EXPECT_GT(s.empty_r_histogram[1], 0u);
}

TEST(HellyFuzz, JobsDoNotChangeResults) {
  auto a = helly_fuzz(2, 5, 60, 7, 1);
  auto b = helly_fuzz(2, 5, 60, 7, 3);
  EXPECT_EQ(a.passed, b.passed);
  EXPECT_EQ(a.empty_r_histogram, b.empty_r_histogram);
  EXPECT_THROW(helly_fuzz(2, 5, 1, 7, 0), std::invalid_argument);
}

TEST(HellyFuzz, PlaneProducesEmptyTriangles) {
  auto s = helly_fuzz(2, 6, 300, 11);
  EXPECT_EQ(s.passed, 300u);
  EXPECT_GT(s.empty_r_histogram[2], 0u);
}
