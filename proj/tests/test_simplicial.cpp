#include <gtest/gtest.h>

#include <random>

#include "hellyfix/simplicial.hpp"

using namespace hellyfix;

namespace {

SimplicialComplex sphere(int k) { return SimplicialComplex::simplex_boundary(k); }

// Euler characteristic counted face by face, independent of the library.
long euler(const SimplicialComplex& k) {
  long chi = 0;
  for (VertexSet f : k.faces())
    chi += (cardinality(f) % 2 == 1) ? 1 : -1;
  return chi;
}

SimplicialComplex random_complex(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<VertexSet> pick(1, first_vertices(n));
  std::vector<VertexSet> facets;
  for (int v = 0; v < n; ++v)
    facets.push_back(singleton(v));
  std::uniform_int_distribution<int> count(0, 4);
  for (int i = count(rng); i > 0; --i)
    facets.push_back(pick(rng));
  return SimplicialComplex::from_facets(n, facets);
}

} // namespace

TEST(SimplicialComplex, Validation) {
  EXPECT_THROW(SimplicialComplex(3, {0b011}), std::invalid_argument);
  EXPECT_THROW(SimplicialComplex(2, {0b01, 0b10, 0b100}), std::invalid_argument);
  auto k = SimplicialComplex::from_facets(3, {0b011, 0b100});
  EXPECT_EQ(k.face_count(), 4u);
  EXPECT_EQ(k.dimension(), 1);
}

TEST(SimplicialComplex, BoundaryAndSimplex) {
  EXPECT_EQ(sphere(2).face_count(), 6u);
  EXPECT_EQ(sphere(2).dimension(), 1);
  EXPECT_EQ(SimplicialComplex::simplex(3).face_count(), 15u);
  EXPECT_EQ(sphere(0).vertex_count(), 0);
}

TEST(Join, Dimensions) {
  auto j = join(sphere(2), sphere(2));
  EXPECT_EQ(j.vertex_count(), 6);
  EXPECT_EQ(j.dimension(), 3);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    auto a = random_complex(rng, 4), b = random_complex(rng, 3), c = random_complex(rng, 3);
    ASSERT_EQ(join(a, b).dimension(), a.dimension() + b.dimension() + 1);
    ASSERT_EQ(join(join(a, b), c), join(a, join(b, c)));
  }
}

TEST(EulerCharacteristic, MultiplicativeOnJoins) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 100; ++t) {
    auto a = random_complex(rng, 5), b = random_complex(rng, 4);
    ASSERT_EQ(reduced_euler_characteristic(a), euler(a) - 1);
    ASSERT_EQ(reduced_euler_characteristic(join(a, b)),
              -reduced_euler_characteristic(a) * reduced_euler_characteristic(b));
  }
}

TEST(EmptySimplices, Examples) {
  auto es = empty_simplices(sphere(2));
  ASSERT_EQ(es.size(), 1u);
  EXPECT_EQ(es[0].r, 2);
  EXPECT_TRUE(empty_simplices(SimplicialComplex::simplex(4)).empty());
  auto two_points = SimplicialComplex::from_facets(2, {0b01, 0b10});
  auto e2 = empty_simplices(two_points);
  ASSERT_EQ(e2.size(), 1u);
  EXPECT_EQ(e2[0].r, 1);
}

TEST(EmptySimplices, AgreeWithExhaustiveSearch) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    auto k = random_complex(rng, 6);
    std::vector<VertexSet> expect;
    for (VertexSet s = 1; s <= first_vertices(6); ++s) {
      if (cardinality(s) < 2 || k.contains(s))
        continue;
      bool ok = true;
      for (int v : vertices_of(s))
        ok = ok && k.contains(s & ~singleton(v));
      if (ok)
        expect.push_back(s);
    }
    std::vector<VertexSet> got;
    for (auto e : empty_simplices(k))
      got.push_back(e.vertices);
    std::sort(got.begin(), got.end());
    ASSERT_EQ(got, expect);
  }
}

TEST(Homology, Spheres) {
  EXPECT_EQ(z2_homology_ranks(sphere(3)), (std::vector<std::size_t>{1, 0, 1}));
  auto s3 = z2_homology_ranks(join(sphere(2), sphere(2)));
  EXPECT_EQ(s3, (std::vector<std::size_t>{1, 0, 0, 1}));
  EXPECT_EQ(z2_homology_ranks(SimplicialComplex::simplex(4)),
            (std::vector<std::size_t>{1, 0, 0, 0, 0}));
  // Two disjoint circles.
  auto two = SimplicialComplex::from_facets(6, {0b000011, 0b000110, 0b000101, 0b011000,
                                                0b110000, 0b101000});
  EXPECT_EQ(z2_homology_ranks(two), (std::vector<std::size_t>{2, 2}));
}

TEST(Nerve, InducedSubcollection) {
  // Intervals on a line, encoded by endpoints.
  std::vector<std::pair<int, int>> iv{{0, 2}, {1, 4}, {3, 5}, {5, 6}, {0, 6}};
  auto oracle = [&](VertexSet s) {
    int lo = -100, hi = 100;
    for (int v : vertices_of(s)) {
      lo = std::max(lo, iv[v].first);
      hi = std::min(hi, iv[v].second);
    }
    return lo <= hi;
  };
  SetSystem sys{5, oracle};
  auto n = nerve(sys);
  for (VertexSet mask = 1; mask < 32; ++mask) {
    auto verts = vertices_of(mask);
    SetSystem sub{static_cast<int>(verts.size()), [&](VertexSet s) {
                    VertexSet m = 0;
                    for (int v : vertices_of(s))
                      m |= singleton(verts[v]);
                    return oracle(m);
                  }};
    ASSERT_EQ(nerve(sub), n.induced(mask));
  }
  for (const auto& e : empty_simplices(n))
    EXPECT_LE(e.r, 1) << format_vertex_set(e.vertices);
  EXPECT_THROW(nerve(SetSystem{1, [](VertexSet) { return false; }}), std::invalid_argument);
}

TEST(AdmissiblePoset, HValues) {
  SetSystem full{3, [](VertexSet) { return true; }};
  auto p = admissible_poset(full);
  EXPECT_EQ(p.elements.size(), 7u);
  EXPECT_EQ(p.h_of(0b001), 1);
  EXPECT_EQ(p.h_of(0b011), 0);
  EXPECT_FALSE(p.h_of(0b111).has_value());

  auto q = admissible_poset(sphere(2));
  EXPECT_EQ(q.h_of(0b001), 0);
  EXPECT_FALSE(q.h_of(0b011).has_value());
  EXPECT_THROW(q.h_of(0b111), std::invalid_argument);
}

TEST(Barycentric, Hexagon) {
  auto b = barycentric(sphere(2));
  EXPECT_EQ(b.vertex_count(), 6);
  EXPECT_EQ(b.faces_of_dimension(1).size(), 6u);
  EXPECT_EQ(b.dimension(), 1);
  EXPECT_EQ(z2_homology_ranks(b), (std::vector<std::size_t>{1, 1}));
  SetSystem full{3, [](VertexSet) { return true; }};
  EXPECT_EQ(barycentric(nerve(full)).vertex_count(),
            static_cast<int>(admissible_poset(full).elements.size()));
}
