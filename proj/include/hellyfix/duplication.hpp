// Duplication-function arithmetic: g_n(k) = (k-1) floor(n/(k+1)), its table
// of monotonicity failures, the inequality d < (k-1) f(k), and the
// per-family instances of that inequality.

#ifndef HELLYFIX_DUPLICATION_HPP_
#define HELLYFIX_DUPLICATION_HPP_

#include <algorithm>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hellyfix {

inline long g(long n, long k) {
  if (n < 1 || k < 1)
    throw std::out_of_range("g: n and k must be positive");
  return (k - 1) * (n / (k + 1));
}

struct Table1Entry {
  int n = 0, k = 0;
  long value = 0;
  bool circled = false;
};

struct Table1 {
  static constexpr int n_min = 3, n_max = 17, k_min = 2, k_max = 16;
  std::vector<std::vector<Table1Entry>> rows; // rows[n - n_min][k - k_min]

  const Table1Entry& at(int n, int k) const { return rows.at(n - n_min).at(k - k_min); }

  // Aligned text; circled entries are shown in parentheses.
  std::string render() const {
    std::ostringstream os;
    os << "   n |";
    for (int k = k_min; k <= k_max; ++k)
      os << std::setw(5) << ("k=" + std::to_string(k));
    os << '\n' << std::string(6 + 5 * (k_max - k_min + 1), '-') << '\n';
    for (const auto& row : rows) {
      os << std::setw(4) << row[0].n << " |";
      for (const auto& e : row) {
        std::string cell = e.circled ? "(" + std::to_string(e.value) + ")" : std::to_string(e.value);
        os << std::setw(5) << cell;
      }
      os << '\n';
    }
    return os.str();
  }

  // One line per entry: "g <n> <k> <value> <0|1>", rows in increasing n,
  // then k.
  std::string machine() const {
    std::ostringstream os;
    for (const auto& row : rows)
      for (const auto& e : row)
        os << "g " << e.n << ' ' << e.k << ' ' << e.value << ' ' << (e.circled ? 1 : 0) << '\n';
    return os.str();
  }
};

// An entry is circled when k <= n-1 and g(n,k) < g(n,k-1).
inline bool monotonicity_failure(long n, long k) { return k >= 3 && k <= n - 1 && g(n, k) < g(n, k - 1); }

inline Table1 table1() {
  Table1 t;
  for (int n = Table1::n_min; n <= Table1::n_max; ++n) {
    std::vector<Table1Entry> row;
    for (int k = Table1::k_min; k <= Table1::k_max; ++k)
      row.push_back({n, k, k <= n - 1 ? g(n, k) : 0, monotonicity_failure(n, k)});
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct LemmaCountReport {
  long n_max = 0;
  // Pairs (n, k) attaining equality, and pairs breaking the inequality.
  std::vector<std::pair<long, long>> part1_equalities, part1_violations;
  std::vector<std::pair<long, long>> part2_equalities, part2_violations;
  bool part1_matches = false; // no violations, equalities exactly {(6,3),(7,3),(9,4)}
  bool part2_matches = false; // no violations, equality iff k even and n in {2k, 2k+1}

  bool passed() const { return part1_matches && part2_matches; }
};

// (1) g_n(2) <= g_n(k) for 2 <= k <= n-1; (2) g_n(3) <= g_n(k) + 1 for
// 3 <= k <= n-1. Scans 3 <= n <= n_max.
inline LemmaCountReport lemma_count_verify(long n_max) {
  if (n_max < 10)
    throw std::out_of_range("lemma_count_verify: n_max must be at least 10");
  LemmaCountReport r;
  r.n_max = n_max;
  bool part2_pattern = true;
  for (long n = 3; n <= n_max; ++n)
    for (long k = 2; k <= n - 1; ++k) {
      if (g(n, 2) > g(n, k))
        r.part1_violations.push_back({n, k});
      else if (g(n, 2) == g(n, k) && k >= 3)
        r.part1_equalities.push_back({n, k});
      if (k < 3)
        continue;
      bool predicted = k % 2 == 0 && (n == 2 * k || n == 2 * k + 1);
      bool equal = g(n, 3) == g(n, k) + 1;
      if (g(n, 3) > g(n, k) + 1)
        r.part2_violations.push_back({n, k});
      if (equal)
        r.part2_equalities.push_back({n, k});
      if (equal != predicted)
        part2_pattern = false;
    }
  const std::vector<std::pair<long, long>> expected1{{6, 3}, {7, 3}, {9, 4}};
  r.part1_matches = r.part1_violations.empty() && r.part1_equalities == expected1;
  r.part2_matches = r.part2_violations.empty() && part2_pattern;
  return r;
}

struct CircledCountReport {
  long k = 0;
  long scan_bound = 0;       // rows k+1 <= n < scan_bound are counted
  long count = 0;
  long expected = 0;         // (k-1)(k-2)/2 - 1
  std::vector<long> rows;    // the circled rows inside the scan
  std::vector<long> beyond;  // further failures in scan_bound <= n < extended_to

  bool matches() const { return count == expected; }
};

// Monotonicity failures g(n,k) < g(n,k-1) in column k. The default scan
// stops below k(k+2); failures past that are listed separately up to
// extended_to (default 10 k(k+2)).
inline CircledCountReport circled_count(long k, long scan_bound = 0, long extended_to = 0) {
  if (k < 3)
    throw std::out_of_range("circled_count: k must be at least 3");
  CircledCountReport r;
  r.k = k;
  r.scan_bound = scan_bound > 0 ? scan_bound : k * (k + 2);
  if (extended_to <= 0)
    extended_to = 10 * k * (k + 2);
  r.expected = (k - 1) * (k - 2) / 2 - 1;
  for (long n = k + 1; n < std::max(r.scan_bound, extended_to); ++n) {
    if (!monotonicity_failure(n, k))
      continue;
    if (n < r.scan_bound)
      r.rows.push_back(n);
    else
      r.beyond.push_back(n);
  }
  r.count = static_cast<long>(r.rows.size());
  return r;
}

struct DuplicationSpec {
  std::string name;
  long d = 0;          // dimension bound
  long k0 = 1;         // base
  long generators = 0; // |A|
  std::function<long(long)> f;
};

struct ClaimReport {
  std::string claim;
  long parameter = 0;
  bool verdict = false;
  std::optional<long> first_failing_k;
  bool expected = true;                      // what the cited statement asserts
  std::optional<long> expected_failing_k;    // when the statement names the failing k
  std::string note;

  bool matches() const {
    return verdict == expected && (!expected_failing_k || first_failing_k == expected_failing_k);
  }
  std::string str() const {
    std::ostringstream os;
    os << claim << " param=" << parameter << " verdict=" << (verdict ? "holds" : "fails");
    if (first_failing_k)
      os << " first_failing_k=" << *first_failing_k;
    os << " expected=" << (expected ? "holds" : "fails");
    if (expected_failing_k)
      os << " expected_failing_k=" << *expected_failing_k;
    os << (matches() ? " ok" : " MISMATCH");
    if (!note.empty())
      os << " (" << note << ")";
    return os.str();
  }
};

// d < (k-1) f(k) for k = k0+1 .. min(d+1, |A|).
inline ClaimReport condition2(const DuplicationSpec& spec) {
  if (!spec.f)
    throw std::invalid_argument("condition2: duplication function missing");
  if (spec.k0 < 1 || spec.generators < 1)
    throw std::invalid_argument("condition2: base and generator count must be positive");
  ClaimReport r;
  r.claim = spec.name.empty() ? "condition2" : spec.name;
  r.verdict = true;
  for (long k = spec.k0 + 1; k <= std::min(spec.d + 1, spec.generators); ++k)
    if (!(spec.d < (k - 1) * spec.f(k))) {
      r.verdict = false;
      r.first_failing_k = k;
      break;
    }
  return r;
}

enum class DuplicationFamily { braid, saut, mcg, column };

inline DuplicationFamily parse_duplication_family(const std::string& s) {
  if (s == "braid")
    return DuplicationFamily::braid;
  if (s == "saut")
    return DuplicationFamily::saut;
  if (s == "mcg")
    return DuplicationFamily::mcg;
  if (s == "column")
    return DuplicationFamily::column;
  throw std::invalid_argument("unknown duplication family '" + s + "'");
}

namespace impl {
inline ClaimReport claim(DuplicationSpec spec, long parameter, bool expected,
                         std::optional<long> expected_k = std::nullopt, std::string note = {}) {
  ClaimReport r = condition2(spec);
  r.parameter = parameter;
  r.expected = expected;
  r.expected_failing_k = expected_k;
  r.note = std::move(note);
  return r;
}
} // namespace impl

// Every inequality claim made for the family at this parameter, each with
// the verdict the cited statement predicts.
inline std::vector<ClaimReport> family_claims(DuplicationFamily family, long p) {
  std::vector<ClaimReport> out;
  switch (family) {
  case DuplicationFamily::braid: {
    if (p < 3)
      throw std::out_of_range("family_claims: braid needs m >= 3");
    const long m = p;
    auto f = [m](long k) { return m / (k + 1); };
    out.push_back(impl::claim({"braid base-1", m / 3 - 1, 1, m, f}, m, true));
    out.push_back(impl::claim({"braid base-2 low", 2 * (m / 4) - 2, 2, m, f}, m, true));
    const bool high = m <= 7 || m % 4 == 2 || m % 4 == 3;
    std::optional<long> fail_k;
    if (!high)
      fail_k = 2 * (m / 4);
    out.push_back(impl::claim({"braid base-2 high", 2 * (m / 4) - 1, 2, m, f}, m, high, fail_k));
    const long delta = (m % 4 == 2 || m % 4 == 3) ? 0 : 1;
    out.push_back(impl::claim({"braid delta_m", 2 * (m / 4) - delta - 1, 2, m, f}, m, true,
                              std::nullopt, "delta_m=" + std::to_string(delta)));
    break;
  }
  case DuplicationFamily::saut: {
    if (p < 3)
      throw std::out_of_range("family_claims: saut needs n >= 3");
    const long n = p;
    const long gens = 2 * n * (n - 1);
    auto h = [n](long k) { return n / (k + 1); };
    out.push_back(impl::claim({"saut base-1", n / 3 - 1, 1, gens, h}, n, true));
    if (n % 4 == 2 || n % 4 == 3)
      out.push_back(impl::claim({"saut base-2", 2 * (n / 4) - 1, 2, gens, h}, n, true));
    else
      out.push_back(impl::claim({"saut base-2", 2 * (n / 4) - 2, 2, gens, h}, n, true));
    break;
  }
  case DuplicationFamily::mcg: {
    if (p < 2)
      throw std::out_of_range("family_claims: mcg needs genus >= 2");
    const long genus = p;
    auto f = [genus](long k) { return k % 2 == 0 ? 2 * genus / k : 2 * (genus - 1) / (k - 1); };
    out.push_back(impl::claim({"mcg condition2", genus - 1, 1, 3 * genus - 1, f}, genus, true));
    break;
  }
  case DuplicationFamily::column: {
    if (p < 3)
      throw std::out_of_range("family_claims: column needs n >= 3");
    const long n = p;
    ClaimReport ineq;
    ineq.claim = "column 2n-4 <= 2(m-1)(n-m)";
    ineq.parameter = n;
    ineq.verdict = true;
    for (long m = 2; m <= n - 1; ++m)
      if (2 * n - 4 > 2 * (m - 1) * (n - m)) {
        ineq.verdict = false;
        ineq.first_failing_k = m;
        break;
      }
    out.push_back(ineq);
    out.push_back(impl::claim({"column condition2", 2 * n - 5, 1, n - 1,
                               [n](long k) { return 2 * (n - k); }},
                              n, true));
    break;
  }
  }
  return out;
}

} // namespace hellyfix

#endif
