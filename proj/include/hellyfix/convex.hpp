// Closed convex polyhedra in Q^d given by halfspaces a.x <= b, with an exact
// feasibility test by Fourier-Motzkin elimination.

#ifndef HELLYFIX_CONVEX_HPP_
#define HELLYFIX_CONVEX_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/integer/common_factor_rt.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace hellyfix {

using Rational = boost::multiprecision::cpp_rational;

struct Halfspace {
  std::vector<Rational> normal;
  Rational bound;
};

class RationalHalfspaceSystem {
public:
  explicit RationalHalfspaceSystem(int dim) : dim_(dim) {
    if (dim < 1)
      throw std::invalid_argument("RationalHalfspaceSystem: dimension must be positive");
  }

  int dim() const { return dim_; }
  const std::vector<Halfspace>& constraints() const { return constraints_; }
  std::size_t size() const { return constraints_.size(); }

  RationalHalfspaceSystem& add(std::vector<Rational> normal, Rational bound) {
    if (static_cast<int>(normal.size()) != dim_)
      throw std::invalid_argument("RationalHalfspaceSystem: normal has wrong length");
    constraints_.push_back({std::move(normal), std::move(bound)});
    return *this;
  }

  bool satisfied_by(std::span<const Rational> point) const {
    if (static_cast<int>(point.size()) != dim_)
      throw std::invalid_argument("satisfied_by: point has wrong length");
    for (const auto& h : constraints_) {
      Rational s = 0;
      for (int i = 0; i < dim_; ++i)
        s += h.normal[i] * point[i];
      if (s > h.bound)
        return false;
    }
    return true;
  }

private:
  int dim_;
  std::vector<Halfspace> constraints_;
};

// Raised instead of answering when a system is outside the supported size.
class EnvelopeExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct LpEnvelope {
  int max_dim = 6;
  std::size_t max_constraints = 200;
  std::size_t max_rows = 200000; // intermediate rows during elimination
  bool prune = true;
};

inline RationalHalfspaceSystem intersect(std::span<const RationalHalfspaceSystem> parts) {
  if (parts.empty())
    throw std::invalid_argument("intersect: nothing to intersect");
  RationalHalfspaceSystem out(parts[0].dim());
  for (const auto& p : parts) {
    if (p.dim() != out.dim())
      throw std::invalid_argument("intersect: dimension mismatch");
    for (const auto& h : p.constraints())
      out.add(h.normal, h.bound);
  }
  return out;
}

inline RationalHalfspaceSystem intersect(std::initializer_list<RationalHalfspaceSystem> parts) {
  return intersect(std::span<const RationalHalfspaceSystem>(parts.begin(), parts.size()));
}

namespace impl {

using boost::multiprecision::cpp_int;

struct FmRow {
  std::vector<cpp_int> a;
  cpp_int b;
  std::vector<std::uint64_t> history; // original constraints combined into this row

  int history_size() const {
    int c = 0;
    for (auto w : history)
      c += std::popcount(w);
    return c;
  }
};

inline void normalize(FmRow& r) {
  cpp_int g = 0;
  for (const auto& x : r.a)
    if (x != 0)
      g = boost::multiprecision::gcd(g, abs(x));
  if (g == 0)
    return;
  if (r.b != 0)
    g = boost::multiprecision::gcd(g, abs(r.b));
  if (g > 1) {
    for (auto& x : r.a)
      x /= g;
    r.b /= g;
  }
}

// Integer row equivalent to a rational halfspace.
inline FmRow integer_row(const Halfspace& h, std::size_t index, std::size_t words) {
  cpp_int l = 1;
  auto lcm_in = [&](const Rational& q) {
    cpp_int den = denominator(q);
    l = l / boost::multiprecision::gcd(l, den) * den;
  };
  for (const auto& q : h.normal)
    lcm_in(q);
  lcm_in(h.bound);
  FmRow r;
  for (const auto& q : h.normal)
    r.a.push_back(numerator(q) * (l / denominator(q)));
  r.b = numerator(h.bound) * (l / denominator(h.bound));
  r.history.assign(words, 0);
  r.history[index / 64] |= std::uint64_t{1} << (index % 64);
  normalize(r);
  return r;
}

} // namespace impl

// Exact emptiness test. Chernikov's rule prunes rows built from more than
// s+1 originals after s eliminations; rows with equal normal keep the
// tightest bound.
inline bool feasible(const RationalHalfspaceSystem& sys, const LpEnvelope& env = {}) {
  using impl::FmRow;
  if (sys.dim() > env.max_dim || sys.size() > env.max_constraints)
    throw EnvelopeExceeded("feasible: system with dimension " + std::to_string(sys.dim()) +
                           " and " + std::to_string(sys.size()) +
                           " constraints is outside the supported envelope (dimension <= " +
                           std::to_string(env.max_dim) + ", constraints <= " +
                           std::to_string(env.max_constraints) + ")");
  const std::size_t words = (sys.size() + 63) / 64 + 1;
  std::vector<FmRow> rows;
  for (std::size_t i = 0; i < sys.size(); ++i)
    rows.push_back(impl::integer_row(sys.constraints()[i], i, words));

  std::vector<int> live(sys.dim());
  for (int i = 0; i < sys.dim(); ++i)
    live[i] = i;
  int eliminated = 0;

  auto tidy = [&](std::vector<FmRow>& rs) -> bool {
    std::map<std::vector<impl::cpp_int>, FmRow> best;
    for (auto& r : rs) {
      bool zero = std::all_of(r.a.begin(), r.a.end(), [](const auto& x) { return x == 0; });
      if (zero) {
        if (r.b < 0)
          return false;
        continue;
      }
      if (env.prune && r.history_size() > eliminated + 1)
        continue;
      auto it = best.find(r.a);
      if (it == best.end())
        best.emplace(r.a, std::move(r));
      else if (r.b < it->second.b ||
               (r.b == it->second.b && r.history_size() < it->second.history_size()))
        it->second = std::move(r);
    }
    rs.clear();
    for (auto& [k, r] : best)
      rs.push_back(std::move(r));
    return true;
  };

  if (!tidy(rows))
    return false;
  while (!live.empty()) {
    if (rows.empty())
      return true;
    // Eliminate the variable with the fewest generated pairs.
    std::size_t pick = 0;
    std::size_t best_cost = SIZE_MAX;
    for (std::size_t li = 0; li < live.size(); ++li) {
      std::size_t pos = 0, neg = 0;
      for (const auto& r : rows) {
        if (r.a[live[li]] > 0)
          ++pos;
        else if (r.a[live[li]] < 0)
          ++neg;
      }
      std::size_t cost = pos * neg;
      if (cost < best_cost) {
        best_cost = cost;
        pick = li;
      }
    }
    const int var = live[pick];
    live.erase(live.begin() + pick);
    std::vector<FmRow> pos, neg, next;
    for (auto& r : rows) {
      if (r.a[var] > 0)
        pos.push_back(std::move(r));
      else if (r.a[var] < 0)
        neg.push_back(std::move(r));
      else
        next.push_back(std::move(r));
    }
    ++eliminated;
    for (const auto& p : pos)
      for (const auto& q : neg) {
        FmRow c;
        const impl::cpp_int mp = -q.a[var];
        const impl::cpp_int mq = p.a[var];
        c.a.resize(p.a.size());
        for (std::size_t j = 0; j < p.a.size(); ++j)
          c.a[j] = mp * p.a[j] + mq * q.a[j];
        c.b = mp * p.b + mq * q.b;
        c.history.resize(words);
        for (std::size_t w = 0; w < words; ++w)
          c.history[w] = p.history[w] | q.history[w];
        impl::normalize(c);
        next.push_back(std::move(c));
        if (next.size() > env.max_rows)
          throw EnvelopeExceeded("feasible: elimination exceeded " +
                                 std::to_string(env.max_rows) + " rows");
      }
    rows = std::move(next);
    if (!tidy(rows))
      return false;
  }
  return true;
}

} // namespace hellyfix

#endif
