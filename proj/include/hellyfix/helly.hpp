// Randomized Helly-type checks: random rational polytopes, their nerve via
// exact feasibility, and the combinatorial restrictions a nerve of convex
// sets in Q^d must satisfy.

#ifndef HELLYFIX_HELLY_HPP_
#define HELLYFIX_HELLY_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "convex.hpp"
#include "simplicial.hpp"

namespace hellyfix {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of trial t under a master seed; independent of how trials are
// distributed over threads.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t t) {
  return splitmix64(master + 0x9E3779B97F4A7C15ULL * (t + 1));
}

struct TrialReport {
  int dim = 0;
  int sets = 0;
  std::uint64_t seed = 0;
  std::size_t faces = 0;
  int nerve_dimension = -1;
  int max_empty_r = 0; // 0 when there is no empty simplex
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }

  std::string serialize() const {
    std::ostringstream os;
    os << "trial dim=" << dim << " sets=" << sets << " seed=" << seed << " faces=" << faces
       << " nerve_dim=" << nerve_dimension << " max_empty_r=" << max_empty_r
       << " verdict=" << (passed() ? "pass" : "FAIL");
    for (const auto& v : violations)
      os << "\n  violation " << v;
    return os.str();
  }
};

// A polytope around an integer centre; the centre satisfies every
// constraint, so the set is nonempty.
inline RationalHalfspaceSystem random_polytope(int d, std::mt19937_64& rng) {
  auto uniform = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  std::vector<int> centre(d);
  for (auto& c : centre)
    c = uniform(-4, 4);
  RationalHalfspaceSystem p(d);
  const int count = uniform(d + 1, 2 * d + 2);
  for (int h = 0; h < count; ++h) {
    std::vector<Rational> a(d);
    bool zero = true;
    while (zero) {
      zero = true;
      for (int i = 0; i < d; ++i) {
        int v = uniform(-3, 3);
        a[i] = v;
        zero = zero && v == 0;
      }
    }
    Rational at_centre = 0;
    for (int i = 0; i < d; ++i)
      at_centre += a[i] * centre[i];
    p.add(std::move(a), at_centre + Rational(uniform(0, 10), 2));
  }
  return p;
}

// Searches for d+1 pairwise disjoint pairs of indices, no pair a face, every
// transversal a face: the join of d+1 zero-spheres as a full subcomplex.
inline std::optional<std::vector<std::pair<int, int>>> find_octahedral_pattern(
    const SimplicialComplex& nerve_complex, int d) {
  const int n = nerve_complex.vertex_count();
  const int pairs = d + 1;
  if (2 * pairs > n)
    return std::nullopt;
  std::vector<std::pair<int, int>> chosen;
  std::function<bool(VertexSet)> extend = [&](VertexSet used) -> bool {
    if (static_cast<int>(chosen.size()) == pairs) {
      for (VertexSet pick = 0; pick < (VertexSet{1} << pairs); ++pick) {
        VertexSet face = 0;
        for (int i = 0; i < pairs; ++i)
          face |= singleton((pick >> i) & 1 ? chosen[i].second : chosen[i].first);
        if (!nerve_complex.contains(face))
          return false;
      }
      return true;
    }
    int first = chosen.empty() ? 0 : chosen.back().first + 1;
    for (int a = first; a < n; ++a) {
      if (used & singleton(a))
        continue;
      for (int b = a + 1; b < n; ++b) {
        if ((used & singleton(b)) || nerve_complex.contains(singleton(a) | singleton(b)))
          continue;
        chosen.push_back({a, b});
        if (extend(used | singleton(a) | singleton(b)))
          return true;
        chosen.pop_back();
      }
    }
    return false;
  };
  if (extend(0))
    return chosen;
  return std::nullopt;
}

// Nerve of a family of polytopes, with feasibility answers memoized.
inline SimplicialComplex polytope_nerve(const std::vector<RationalHalfspaceSystem>& sets,
                                        const LpEnvelope& env = {}) {
  std::map<VertexSet, bool> memo;
  SetSystem sys{static_cast<int>(sets.size()), [&](VertexSet s) {
                  auto it = memo.find(s);
                  if (it != memo.end())
                    return it->second;
                  std::vector<RationalHalfspaceSystem> parts;
                  for (int v : vertices_of(s))
                    parts.push_back(sets[v]);
                  bool f = feasible(intersect(parts), env);
                  memo[s] = f;
                  return f;
                }};
  return nerve(sys);
}

// Checks, for the nerve of the given sets in Q^d: (i) no empty r-simplex
// with r > d; (ii) if every d+1 of them meet, all of them meet; (iii) no
// join of d+1 zero-spheres among 2(d+1) of the sets.
inline std::vector<std::string> helly_violations(const SimplicialComplex& k, int d,
                                                 int* max_empty_r = nullptr) {
  std::vector<std::string> out;
  int worst = 0;
  for (const auto& e : empty_simplices(k)) {
    worst = std::max(worst, e.r);
    if (e.r > d)
      out.push_back("empty " + std::to_string(e.r) + "-simplex on " +
                    format_vertex_set(e.vertices));
  }
  if (max_empty_r)
    *max_empty_r = worst;
  const int m = k.vertex_count();
  if (m > d + 1) {
    bool all_small = true;
    for (VertexSet s = 1; s <= first_vertices(m) && all_small; ++s)
      if (cardinality(s) == d + 1 && !k.contains(s))
        all_small = false;
    if (all_small && !k.contains(first_vertices(m)))
      out.push_back("every " + std::to_string(d + 1) +
                    " sets meet but the whole family does not");
  }
  if (auto pat = find_octahedral_pattern(k, d)) {
    std::string s = "join pattern";
    for (auto [a, b] : *pat)
      s += " {" + std::to_string(a) + "," + std::to_string(b) + "}";
    out.push_back(s);
  }
  return out;
}

inline std::vector<RationalHalfspaceSystem> trial_polytopes(int d, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RationalHalfspaceSystem> sets;
  for (int i = 0; i < m; ++i)
    sets.push_back(random_polytope(d, rng));
  return sets;
}

inline TrialReport helly_trial(int d, int m, std::uint64_t seed) {
  if (d < 1 || d > 3)
    throw std::out_of_range("helly_trial: dimension must be in 1..3");
  if (m < 1 || m > 8)
    throw std::out_of_range("helly_trial: set count must be in 1..8");
  TrialReport r;
  r.dim = d;
  r.sets = m;
  r.seed = seed;
  auto k = polytope_nerve(trial_polytopes(d, m, seed));
  r.faces = k.face_count();
  r.nerve_dimension = k.dimension();
  r.violations = helly_violations(k, d, &r.max_empty_r);
  return r;
}

struct FuzzSummary {
  int dim = 0, sets = 0;
  std::uint64_t master_seed = 0;
  std::size_t trials = 0, passed = 0;
  std::vector<TrialReport> failures; // in trial order
  std::vector<std::size_t> empty_r_histogram; // index r: trials whose largest empty simplex is r
};

// Runs trials 0..count-1; trial t uses trial_seed(master, t). The result
// does not depend on jobs.
inline FuzzSummary helly_fuzz(int d, int m, std::size_t count, std::uint64_t master,
                              unsigned jobs = 1) {
  if (jobs == 0)
    throw std::invalid_argument("helly_fuzz: jobs must be positive");
  std::vector<TrialReport> reports(count);
  auto work = [&](unsigned j) {
    for (std::size_t t = j; t < count; t += jobs)
      reports[t] = helly_trial(d, m, trial_seed(master, t));
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back(work, j);
    for (auto& th : pool)
      th.join();
  }
  FuzzSummary s;
  s.dim = d;
  s.sets = m;
  s.master_seed = master;
  s.trials = count;
  s.empty_r_histogram.assign(m + 1, 0);
  for (auto& r : reports) {
    s.empty_r_histogram[r.max_empty_r]++;
    if (r.passed())
      ++s.passed;
    else
      s.failures.push_back(std::move(r));
  }
  return s;
}

} // namespace hellyfix

#endif
