// Backend-independent group algorithms: commutators, closures,
// normalization and commutation checks.

#ifndef HELLYFIX_GROUP_HPP_
#define HELLYFIX_GROUP_HPP_

#include <concepts>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

namespace hellyfix {

template <class G>
concept GroupElement = std::copyable<G> && requires(const G& a, const G& b) {
  { a * b } -> std::convertible_to<G>;
  { a.inverse() } -> std::convertible_to<G>;
  { a.identity_like() } -> std::convertible_to<G>;
  { a.is_identity() } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  { a.compatible(b) } -> std::convertible_to<bool>;
  { std::hash<G>{}(a) } -> std::convertible_to<std::size_t>;
};

template <GroupElement G> void require_compatible(const G& a, const G& b, const char* what) {
  if (!a.compatible(b))
    throw std::invalid_argument(std::string(what) + ": elements live in different groups");
}

// [a, b] = a^-1 b^-1 a b
template <GroupElement G> G commutator(const G& a, const G& b) {
  require_compatible(a, b, "commutator");
  return a.inverse() * b.inverse() * a * b;
}

template <GroupElement G> bool commutes(const G& a, const G& b) {
  require_compatible(a, b, "commutes");
  return a * b == b * a;
}

// g h g^-1
template <GroupElement G> G conjugate(const G& g, const G& h) {
  require_compatible(g, h, "conjugate");
  return g * h * g.inverse();
}

// t is an involution inverting a by conjugation.
template <GroupElement G> bool dihedral_check(const G& a, const G& t) {
  require_compatible(a, t, "dihedral_check");
  return (t * t).is_identity() && t * a * t == a.inverse();
}

// Word over a generator list: +k stands for gens[k-1], -k for its inverse.
using GeneratorWord = std::vector<int>;

template <GroupElement G>
G evaluate_word(std::span<const G> gens, const GeneratorWord& word, const G& identity) {
  G r = identity;
  for (int l : word) {
    if (l == 0 || static_cast<std::size_t>(std::abs(l)) > gens.size())
      throw std::out_of_range("evaluate_word: letter " + std::to_string(l) +
                              " outside generator list of size " +
                              std::to_string(gens.size()));
    const G& g = gens[std::abs(l) - 1];
    require_compatible(identity, g, "evaluate_word");
    r = l > 0 ? r * g : r * g.inverse();
  }
  return r;
}

template <GroupElement G> struct FiniteClosure {
  std::vector<G> generators;
  std::vector<G> elements; // BFS order, identity first
  std::size_t order() const { return elements.size(); }
};

struct CapExceeded {
  std::size_t cap = 0;
};

template <GroupElement G> using ClosureResult = std::variant<FiniteClosure<G>, CapExceeded>;

// Breadth-first closure under right multiplication by the generators and
// their inverses. Exceeding the cap means "not shown finite".
template <GroupElement G>
ClosureResult<G> closure_enumerate(std::span<const G> gens, std::size_t cap = 1000000) {
  if (gens.empty())
    throw std::invalid_argument("closure_enumerate: need at least one generator");
  for (const G& g : gens)
    require_compatible(gens[0], g, "closure_enumerate");
  std::vector<G> steps;
  for (const G& g : gens) {
    steps.push_back(g);
    steps.push_back(g.inverse());
  }
  FiniteClosure<G> out;
  out.generators.assign(gens.begin(), gens.end());
  std::unordered_set<G> seen;
  G e = gens[0].identity_like();
  seen.insert(e);
  out.elements.push_back(e);
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    for (const G& s : steps) {
      G next = out.elements[head] * s;
      if (seen.insert(next).second) {
        if (seen.size() > cap)
          return CapExceeded{cap};
        out.elements.push_back(std::move(next));
      }
    }
  }
  return out;
}

template <GroupElement G>
std::optional<std::size_t> finite_order(std::span<const G> gens, std::size_t cap = 1000000) {
  auto r = closure_enumerate(gens, cap);
  if (auto* c = std::get_if<FiniteClosure<G>>(&r))
    return c->order();
  return std::nullopt;
}

// Order of a single element, or nullopt if it exceeds the cap.
template <GroupElement G> std::optional<std::size_t> element_order(const G& g, std::size_t cap) {
  G p = g;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (p.is_identity())
      return k;
    p = p * g;
  }
  return std::nullopt;
}

struct CommutationViolation {
  std::size_t set_a = 0, index_a = 0, set_b = 0, index_b = 0;
};

struct CommutationReport {
  bool ok = true;
  std::optional<CommutationViolation> violation;
};

// Every element of sets[i] commutes with every element of sets[j], i != j.
template <GroupElement G>
CommutationReport pairwise_commuting(const std::vector<std::vector<G>>& sets) {
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = a + 1; b < sets.size(); ++b)
      for (std::size_t i = 0; i < sets[a].size(); ++i)
        for (std::size_t j = 0; j < sets[b].size(); ++j)
          if (!commutes(sets[a][i], sets[b][j]))
            return {false, CommutationViolation{a, i, b, j}};
  return {};
}

struct NormalizationFailure {
  std::size_t outer = 0, inner = 0;
  int sign = 1; // +1: g h g^-1, -1: g^-1 h g
  std::string reason;
};

struct NormalizationReport {
  bool ok = true;
  std::optional<NormalizationFailure> failure;
};

// Decides whether an element lies in the inner subgroup.
template <GroupElement G> using MembershipTest = std::function<bool(const G&)>;

// Checks g^{±1} h g^{∓1} ∈ <inner> for every outer g and inner h.
template <GroupElement G>
NormalizationReport normalizes(const std::vector<G>& outer, const std::vector<G>& inner,
                               const MembershipTest<G>& member) {
  for (std::size_t i = 0; i < outer.size(); ++i)
    for (std::size_t j = 0; j < inner.size(); ++j)
      for (int sign : {1, -1}) {
        const G g = sign > 0 ? outer[i] : outer[i].inverse();
        if (!member(conjugate(g, inner[j])))
          return {false, NormalizationFailure{i, j, sign, "conjugate not in subgroup"}};
      }
  return {};
}

// Witness-table variant: table(i, j, sign) returns a word over inner that
// must equal the conjugate exactly; nullopt means the entry is missing.
template <GroupElement G>
NormalizationReport normalizes_by_witness(
    const std::vector<G>& outer, const std::vector<G>& inner,
    const std::function<std::optional<GeneratorWord>(std::size_t, std::size_t, int)>& table) {
  if (inner.empty())
    return {};
  const G e = inner[0].identity_like();
  for (std::size_t i = 0; i < outer.size(); ++i)
    for (std::size_t j = 0; j < inner.size(); ++j)
      for (int sign : {1, -1}) {
        auto w = table(i, j, sign);
        if (!w)
          return {false, NormalizationFailure{i, j, sign, "missing witness entry"}};
        const G g = sign > 0 ? outer[i] : outer[i].inverse();
        if (!(evaluate_word<G>(inner, *w, e) == conjugate(g, inner[j])))
          return {false, NormalizationFailure{i, j, sign, "witness word fails verification"}};
      }
  return {};
}

} // namespace hellyfix

#endif
