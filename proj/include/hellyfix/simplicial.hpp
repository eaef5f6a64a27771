// Finite abstract simplicial complexes on at most 64 vertices. Faces are
// vertex bitmasks; the empty face is never stored.

#ifndef HELLYFIX_SIMPLICIAL_HPP_
#define HELLYFIX_SIMPLICIAL_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hellyfix {

using VertexSet = std::uint64_t;

inline int cardinality(VertexSet s) { return std::popcount(s); }
inline VertexSet singleton(int v) { return VertexSet{1} << v; }
inline VertexSet first_vertices(int n) { return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1; }

inline std::vector<int> vertices_of(VertexSet s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

inline std::string format_vertex_set(VertexSet s) {
  std::string out = "{";
  bool first = true;
  for (int v : vertices_of(s)) {
    if (!first)
      out += ',';
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

class SimplicialComplex {
public:
  SimplicialComplex() = default;

  // Faces must be downward closed and include every vertex.
  SimplicialComplex(int vertex_count, std::vector<VertexSet> faces)
      : n_(vertex_count), faces_(faces.begin(), faces.end()) {
    if (n_ < 0 || n_ > 64)
      throw std::invalid_argument("SimplicialComplex: vertex count must be in 0..64");
    const VertexSet all = first_vertices(n_);
    for (VertexSet f : faces_) {
      if (f == 0 || (f & ~all))
        throw std::invalid_argument("SimplicialComplex: face " + format_vertex_set(f) +
                                    " is empty or uses an unknown vertex");
      for (VertexSet rest = f; rest; rest &= rest - 1) {
        VertexSet sub = f & ~(rest & -rest);
        if (sub && !faces_.count(sub))
          throw std::invalid_argument("SimplicialComplex: not downward closed at " +
                                      format_vertex_set(f));
      }
    }
    for (int v = 0; v < n_; ++v)
      if (!faces_.count(singleton(v)))
        throw std::invalid_argument("SimplicialComplex: vertex " + std::to_string(v) +
                                    " is not a face");
  }

  // Downward closure of the given facets.
  static SimplicialComplex from_facets(int vertex_count, const std::vector<VertexSet>& facets) {
    std::set<VertexSet> all;
    for (int v = 0; v < vertex_count; ++v)
      all.insert(singleton(v));
    for (VertexSet f : facets) {
      if (cardinality(f) > 20)
        throw std::invalid_argument("from_facets: facet too large to expand");
      for (VertexSet s = f; s; s = (s - 1) & f)
        all.insert(s);
    }
    return SimplicialComplex(vertex_count, {all.begin(), all.end()});
  }

  // The full simplex on k+1 vertices.
  static SimplicialComplex simplex(int k) {
    return from_facets(k + 1, {first_vertices(k + 1)});
  }

  // Boundary of the k-simplex: all proper nonempty subsets of k+1 vertices.
  // The boundary of a point is the void complex.
  static SimplicialComplex simplex_boundary(int k) {
    if (k < 0)
      throw std::invalid_argument("simplex_boundary: negative dimension");
    if (k == 0)
      return SimplicialComplex(0, {});
    const VertexSet top = first_vertices(k + 1);
    std::vector<VertexSet> faces;
    for (VertexSet s = (top - 1) & top; s; s = (s - 1) & top)
      faces.push_back(s);
    return SimplicialComplex(k + 1, std::move(faces));
  }

  int vertex_count() const { return n_; }
  const std::set<VertexSet>& faces() const { return faces_; }
  std::size_t face_count() const { return faces_.size(); }
  bool contains(VertexSet f) const { return f == 0 || faces_.count(f) > 0; }

  int dimension() const {
    int d = -1;
    for (VertexSet f : faces_)
      d = std::max(d, cardinality(f) - 1);
    return d;
  }

  std::vector<VertexSet> faces_of_dimension(int k) const {
    std::vector<VertexSet> out;
    for (VertexSet f : faces_)
      if (cardinality(f) == k + 1)
        out.push_back(f);
    return out;
  }

  std::vector<VertexSet> facets() const {
    std::vector<VertexSet> out;
    for (VertexSet f : faces_) {
      bool maximal = true;
      for (int v = 0; v < n_ && maximal; ++v)
        if (!(f & singleton(v)) && faces_.count(f | singleton(v)))
          maximal = false;
      if (maximal)
        out.push_back(f);
    }
    return out;
  }

  // Subcomplex on the vertices of mask, relabelled 0.. in increasing order.
  SimplicialComplex induced(VertexSet mask) const {
    std::vector<int> keep = vertices_of(mask & first_vertices(n_));
    std::vector<int> label(64, -1);
    for (std::size_t i = 0; i < keep.size(); ++i)
      label[keep[i]] = static_cast<int>(i);
    std::vector<VertexSet> out;
    for (VertexSet f : faces_) {
      if (f & ~mask)
        continue;
      VertexSet g = 0;
      for (int v : vertices_of(f))
        g |= singleton(label[v]);
      out.push_back(g);
    }
    return SimplicialComplex(static_cast<int>(keep.size()), std::move(out));
  }

  bool operator==(const SimplicialComplex& o) const = default;

private:
  int n_ = 0;
  std::set<VertexSet> faces_;
};

// The vertices of l are shifted past those of k.
inline SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l) {
  const int shift = k.vertex_count();
  if (shift + l.vertex_count() > 64)
    throw std::invalid_argument("join: more than 64 vertices");
  std::vector<VertexSet> left(k.faces().begin(), k.faces().end());
  std::vector<VertexSet> right;
  for (VertexSet f : l.faces())
    right.push_back(f << shift);
  left.push_back(0);
  right.push_back(0);
  std::vector<VertexSet> out;
  for (VertexSet a : left)
    for (VertexSet b : right)
      if (a | b)
        out.push_back(a | b);
  return SimplicialComplex(shift + l.vertex_count(), std::move(out));
}

// -1 + sum over faces of (-1)^dim.
inline long reduced_euler_characteristic(const SimplicialComplex& k) {
  long chi = -1;
  for (VertexSet f : k.faces())
    chi += (cardinality(f) % 2 == 1) ? 1 : -1;
  return chi;
}

struct EmptySimplex {
  VertexSet vertices = 0;
  int r = 0; // |vertices| - 1
  bool operator==(const EmptySimplex&) const = default;
};

// Non-faces all of whose proper subsets are faces.
inline std::vector<EmptySimplex> empty_simplices(const SimplicialComplex& k) {
  std::set<VertexSet> found;
  auto consider = [&](VertexSet f) {
    int top = f ? 63 - std::countl_zero(f) : -1;
    for (int v = top + 1; v < k.vertex_count(); ++v) {
      VertexSet cand = f | singleton(v);
      if (k.contains(cand) || cardinality(cand) < 2)
        continue;
      bool all = true;
      for (int u : vertices_of(cand))
        if (!k.contains(cand & ~singleton(u))) {
          all = false;
          break;
        }
      if (all)
        found.insert(cand);
    }
  };
  for (VertexSet f : k.faces())
    consider(f);
  std::vector<EmptySimplex> out;
  for (VertexSet s : found)
    out.push_back({s, cardinality(s) - 1});
  std::sort(out.begin(), out.end(), [](const EmptySimplex& a, const EmptySimplex& b) {
    return a.r != b.r ? a.r < b.r : a.vertices < b.vertices;
  });
  return out;
}

namespace impl {

// Rank over GF(2) of rows given as bit vectors.
inline std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows) {
  std::size_t rank = 0;
  if (rows.empty())
    return 0;
  const std::size_t words = rows[0].size();
  for (std::size_t w = 0; w < words; ++w)
    for (int b = 0; b < 64; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << b;
      std::size_t p = rank;
      while (p < rows.size() && !(rows[p][w] & bit))
        ++p;
      if (p == rows.size())
        continue;
      std::swap(rows[p], rows[rank]);
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (r != rank && (rows[r][w] & bit))
          for (std::size_t x = w; x < words; ++x)
            rows[r][x] ^= rows[rank][x];
      ++rank;
    }
  return rank;
}

} // namespace impl

// Betti numbers over Z/2 in degrees 0..dim.
inline std::vector<std::size_t> z2_homology_ranks(const SimplicialComplex& k) {
  const int dim = k.dimension();
  if (dim < 0)
    return {};
  std::vector<std::vector<VertexSet>> by_dim(dim + 1);
  for (VertexSet f : k.faces())
    by_dim[cardinality(f) - 1].push_back(f);
  std::vector<std::map<VertexSet, std::size_t>> index(dim + 1);
  for (int d = 0; d <= dim; ++d)
    for (std::size_t i = 0; i < by_dim[d].size(); ++i)
      index[d][by_dim[d][i]] = i;
  // boundary_rank[d] = rank of the boundary map C_d -> C_{d-1}.
  std::vector<std::size_t> boundary_rank(dim + 2, 0);
  for (int d = 1; d <= dim; ++d) {
    const std::size_t words = (by_dim[d - 1].size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(by_dim[d].size());
    for (VertexSet f : by_dim[d]) {
      std::vector<std::uint64_t> row(words, 0);
      for (int v : vertices_of(f)) {
        std::size_t c = index[d - 1].at(f & ~singleton(v));
        row[c / 64] |= std::uint64_t{1} << (c % 64);
      }
      rows.push_back(std::move(row));
    }
    boundary_rank[d] = impl::gf2_rank(std::move(rows));
  }
  std::vector<std::size_t> betti(dim + 1);
  for (int d = 0; d <= dim; ++d)
    betti[d] = by_dim[d].size() - boundary_rank[d] - boundary_rank[d + 1];
  return betti;
}

// Indexed family of abstract sets, known only through which index subsets
// have a common point. The oracle must be monotone.
struct SetSystem {
  int count = 0;
  std::function<bool(VertexSet)> intersects;
};

// Faces are the admissible index sets. Candidates are grown from admissible
// faces, so only sets whose facets are all admissible reach the oracle.
inline SimplicialComplex nerve(const SetSystem& system) {
  if (system.count < 0 || system.count > 64)
    throw std::invalid_argument("nerve: set count must be in 0..64");
  std::set<VertexSet> faces;
  std::vector<VertexSet> layer;
  for (int v = 0; v < system.count; ++v) {
    if (!system.intersects(singleton(v)))
      throw std::invalid_argument("nerve: member " + std::to_string(v) + " is empty");
    faces.insert(singleton(v));
    layer.push_back(singleton(v));
  }
  while (!layer.empty()) {
    std::set<VertexSet> next;
    for (VertexSet f : layer) {
      int top = 63 - std::countl_zero(f);
      for (int v = top + 1; v < system.count; ++v) {
        VertexSet cand = f | singleton(v);
        bool facets_ok = true;
        for (int u : vertices_of(cand))
          if (!faces.count(cand & ~singleton(u))) {
            facets_ok = false;
            break;
          }
        if (facets_ok && system.intersects(cand))
          next.insert(cand);
      }
    }
    faces.insert(next.begin(), next.end());
    layer.assign(next.begin(), next.end());
  }
  return SimplicialComplex(system.count, {faces.begin(), faces.end()});
}

// The poset of admissible sets ordered by inclusion, with
// h(I) = max{|J| - |I| : I ⊊ J admissible} - 1, undefined when I is maximal.
struct AdmissiblePoset {
  std::vector<VertexSet> elements;
  std::vector<std::optional<int>> h;

  std::optional<int> h_of(VertexSet i) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), i);
    if (it == elements.end() || *it != i)
      throw std::invalid_argument("h_of: " + format_vertex_set(i) + " is not admissible");
    return h[it - elements.begin()];
  }
};

inline AdmissiblePoset admissible_poset(const SimplicialComplex& nerve_complex) {
  AdmissiblePoset p;
  p.elements.assign(nerve_complex.faces().begin(), nerve_complex.faces().end());
  for (VertexSet i : p.elements) {
    std::optional<int> best;
    for (VertexSet j : p.elements)
      if (j != i && (j & i) == i) {
        int gap = cardinality(j) - cardinality(i) - 1;
        if (!best || gap > *best)
          best = gap;
      }
    p.h.push_back(best);
  }
  return p;
}

inline AdmissiblePoset admissible_poset(const SetSystem& system) {
  return admissible_poset(nerve(system));
}

// Vertices are the faces of k (in increasing mask order), faces are chains.
inline SimplicialComplex barycentric(const SimplicialComplex& k) {
  if (k.face_count() > 64)
    throw std::invalid_argument("barycentric: more than 64 faces");
  std::vector<VertexSet> v(k.faces().begin(), k.faces().end());
  const int n = static_cast<int>(v.size());
  // above[i] = faces strictly containing v[i]
  std::vector<VertexSet> above(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && (v[j] & v[i]) == v[i])
        above[i] |= singleton(j);
  std::vector<VertexSet> chains;
  std::function<void(VertexSet, VertexSet)> grow = [&](VertexSet chain, VertexSet allowed) {
    chains.push_back(chain);
    for (int j : vertices_of(allowed))
      grow(chain | singleton(j), allowed & above[j]);
  };
  for (int i = 0; i < n; ++i)
    grow(singleton(i), above[i]);
  return SimplicialComplex(n, std::move(chains));
}

} // namespace hellyfix

#endif
