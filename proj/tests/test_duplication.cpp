#include <gtest/gtest.h>

#include <sstream>

#include "hellyfix/duplication.hpp"

using namespace hellyfix;

namespace {

// Rows n = 3..17, columns k = 2..16; parenthesized entries are circled.
const char* const kReference[] = {
    "1 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "1 2 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "1 2 3 0 0 0 0 0 0 0 0 0 0 0 0",
    "2 2 3 4 0 0 0 0 0 0 0 0 0 0 0",
    "2 2 3 4 5 0 0 0 0 0 0 0 0 0 0",
    "2 4 (3) 4 5 6 0 0 0 0 0 0 0 0 0",
    "3 4 (3) 4 5 6 7 0 0 0 0 0 0 0 0",
    "3 4 6 (4) 5 6 7 8 0 0 0 0 0 0 0",
    "3 4 6 (4) 5 6 7 8 9 0 0 0 0 0 0",
    "4 6 6 8 (5) 6 7 8 9 10 0 0 0 0 0",
    "4 6 6 8 (5) 6 7 8 9 10 11 0 0 0 0",
    "4 6 6 8 10 (6) 7 8 9 10 11 12 0 0 0",
    "5 6 9 (8) 10 (6) 7 8 9 10 11 12 13 0 0",
    "5 8 9 (8) 10 12 (7) 8 9 10 11 12 13 14 0",
    "5 8 9 (8) 10 12 (7) 8 9 10 11 12 13 14 15",
};

} // namespace

TEST(G, Values) {
  EXPECT_EQ(g(6, 3), 2);
  EXPECT_EQ(g(8, 4), 3);
  EXPECT_EQ(g(15, 4), 9);
  EXPECT_THROW(g(0, 2), std::out_of_range);
}

TEST(G, NondecreasingInN) {
  for (long k = 1; k <= 40; ++k)
    for (long n = 1; n < 500; ++n)
      ASSERT_LE(g(n, k), g(n + 1, k));
}

TEST(Table1, MatchesReferenceEntryForEntry) {
  auto t = table1();
  ASSERT_EQ(t.rows.size(), 15u);
  for (int n = 3; n <= 17; ++n) {
    std::istringstream in(kReference[n - 3]);
    for (int k = 2; k <= 16; ++k) {
      std::string cell;
      ASSERT_TRUE(in >> cell);
      bool circled = cell.front() == '(';
      long v = std::stol(circled ? cell.substr(1, cell.size() - 2) : cell);
      EXPECT_EQ(t.at(n, k).value, v) << "n=" << n << " k=" << k;
      EXPECT_EQ(t.at(n, k).circled, circled) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Table1, ColumnFiveAndRowThree) {
  auto t = table1();
  std::vector<int> rows;
  for (int n = 3; n <= 17; ++n)
    if (t.at(n, 5).circled)
      rows.push_back(n);
  EXPECT_EQ(rows, (std::vector<int>{10, 11, 15, 16, 17}));
  EXPECT_EQ(t.at(3, 2).value, 1);
  EXPECT_EQ(t.at(3, 3).value, 0);
  EXPECT_NE(t.render().find("(3)"), std::string::npos);
  EXPECT_NE(t.machine().find("g 8 4 3 1\n"), std::string::npos);
}

TEST(LemmaCount, EqualitySets) {
  auto r = lemma_count_verify(200);
  EXPECT_TRUE(r.part1_violations.empty());
  EXPECT_EQ(r.part1_equalities, (std::vector<std::pair<long, long>>{{6, 3}, {7, 3}, {9, 4}}));
  EXPECT_TRUE(r.part2_violations.empty());
  EXPECT_TRUE(r.part2_matches);
  for (auto [n, k] : r.part2_equalities)
    EXPECT_TRUE(k % 2 == 0 && (n == 2 * k || n == 2 * k + 1)) << n << "," << k;
  EXPECT_TRUE(r.passed());
  EXPECT_THROW(lemma_count_verify(9), std::out_of_range);
}

TEST(CircledCount, WithinDefaultScan) {
  for (long k = 3; k <= 12; ++k) {
    auto r = circled_count(k);
    EXPECT_EQ(r.count, (k - 1) * (k - 2) / 2 - 1) << k;
    EXPECT_TRUE(r.matches());
  }
  auto r4 = circled_count(4, 200);
  EXPECT_EQ(r4.count, 2);
  EXPECT_TRUE(r4.beyond.empty());
}

TEST(CircledCount, FailuresPastTheDefaultScan) {
  auto r5 = circled_count(5);
  EXPECT_EQ(r5.beyond, (std::vector<long>{35}));
  auto all5 = circled_count(5, 1000);
  EXPECT_EQ(all5.count, 6);
  EXPECT_FALSE(all5.matches());
  EXPECT_EQ(circled_count(6).beyond, (std::vector<long>{48, 54, 55}));
}

TEST(Condition2, Examples) {
  auto braid12 = condition2({"", 3, 1, 12, [](long k) { return 12 / (k + 1); }});
  EXPECT_TRUE(braid12.verdict);
  auto mcg3 = condition2({"", 2, 1, 8, [](long k) { return k % 2 == 0 ? 6 / k : 4 / (k - 1); }});
  EXPECT_TRUE(mcg3.verdict);
  auto one = condition2({"", 5, 1, 10, [](long) { return 1L; }});
  EXPECT_FALSE(one.verdict);
  EXPECT_EQ(one.first_failing_k, 2);
  EXPECT_THROW(condition2({"", 5, 1, 10, nullptr}), std::invalid_argument);
}

TEST(Condition2, BraidBaseOneMatchesLemma) {
  for (long m = 3; m <= 200; ++m) {
    auto r = family_claims(DuplicationFamily::braid, m)[0];
    bool via_g = true;
    for (long k = 2; k <= m / 3; ++k)
      via_g = via_g && g(m, 2) <= g(m, k);
    ASSERT_EQ(r.verdict, via_g) << m;
  }
}

TEST(FamilyClaims, Braid) {
  for (long m = 3; m <= 200; ++m)
    for (const auto& c : family_claims(DuplicationFamily::braid, m))
      ASSERT_TRUE(c.matches()) << c.str();
  auto hi = [](long m) { return family_claims(DuplicationFamily::braid, m)[2]; };
  EXPECT_EQ(hi(8).first_failing_k, 4);
  EXPECT_EQ(hi(9).first_failing_k, 4);
  EXPECT_EQ(hi(12).first_failing_k, 6);
  EXPECT_EQ(hi(13).first_failing_k, 6);
  EXPECT_TRUE(hi(10).verdict);
  EXPECT_TRUE(hi(11).verdict);
  EXPECT_TRUE(hi(5).verdict);
  EXPECT_TRUE(hi(7).verdict);
}

TEST(FamilyClaims, SautMcgColumn) {
  for (long n = 3; n <= 200; ++n) {
    for (const auto& c : family_claims(DuplicationFamily::saut, n))
      ASSERT_TRUE(c.matches()) << c.str();
    for (const auto& c : family_claims(DuplicationFamily::column, n))
      ASSERT_TRUE(c.verdict) << c.str();
  }
  for (long genus = 2; genus <= 200; ++genus)
    ASSERT_TRUE(family_claims(DuplicationFamily::mcg, genus)[0].verdict) << genus;
  EXPECT_THROW(family_claims(DuplicationFamily::mcg, 1), std::out_of_range);
  EXPECT_THROW(parse_duplication_family("torus"), std::invalid_argument);
}
