// Named subgroups and generating families inside Aut(F_n) and the braid
// group: column subgroups, dihedral factors, torsion generating sets.

#ifndef HELLYFIX_FAMILIES_HPP_
#define HELLYFIX_FAMILIES_HPP_

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "automorphism.hpp"
#include "group.hpp"

namespace hellyfix {

// Membership in M_n(n-1) x \bar M_n(n-1): a fixes x_1..x_{n-1} and sends
// x_n to u x_n v with u, v free of x_n.
inline bool in_column_product(const FreeAutomorphism& a) {
  const int n = a.rank();
  if (n < 2)
    throw std::invalid_argument("in_column_product: rank must be at least 2");
  for (int i = 1; i < n; ++i) {
    const auto& w = a.image(i).letters();
    if (w.size() != 1 || w[0] != i)
      return false;
  }
  int hits = 0;
  for (Letter l : a.image(n).letters()) {
    if (l == -n)
      return false;
    if (l == n)
      ++hits;
  }
  return hits == 1;
}

// Niel_i = {λ_{i,i-1}, ρ_{i,i-1}}, indices mod n.
inline std::vector<FreeAutomorphism> niel_set(int i, int n) {
  impl::check_index(i, n, "niel_set");
  int j = i == 1 ? n : i - 1;
  return {lambda(i, j, n), rho(i, j, n)};
}

// {λ_{j1},...,λ_{jm}} (left) or {ρ_{j1},...,ρ_{jm}} (right).
inline std::vector<FreeAutomorphism> column_generators(NielsenKind kind, int j, int m, int n) {
  if (m < 1 || m >= j || j > n)
    throw std::out_of_range("column_generators: need 1 <= m < j <= n");
  std::vector<FreeAutomorphism> out;
  for (int k = 1; k <= m; ++k)
    out.push_back(nielsen(kind, j, k, n));
  return out;
}

// Generators of M_n(n-1) x \bar M_n(n-1).
inline std::vector<FreeAutomorphism> column_product_generators(int n) {
  auto out = column_generators(NielsenKind::left, n, n - 1, n);
  auto bar = column_generators(NielsenKind::right, n, n - 1, n);
  out.insert(out.end(), bar.begin(), bar.end());
  return out;
}

// Cyclic shift x_k -> x_{k+1} on x_{first..last}, other letters fixed.
inline FreeAutomorphism cyclic_shift(int first, int last, int n) {
  impl::check_index(first, n, "cyclic_shift");
  impl::check_index(last, n, "cyclic_shift");
  std::vector<int> perm(n), signs(n, 1);
  std::iota(perm.begin(), perm.end(), 1);
  for (int k = first; k <= last; ++k)
    perm[k - 1] = k == last ? first : k + 1;
  return signed_perm(perm, signs);
}

// Fixes x_1..x_m, cycles x_{m+1..n}, composed with ε_1 when n-m is odd.
inline FreeAutomorphism zeta(int m, int n) {
  if (m < 1 || m >= n)
    throw std::out_of_range("zeta: need 1 <= m < n");
  FreeAutomorphism z = cyclic_shift(m + 1, n, n);
  if ((n - m) % 2 == 1)
    z = z * epsilon(1, n);
  return z;
}

struct ConjugateFamily {
  FreeAutomorphism conjugator;
  std::vector<FreeAutomorphism> generators; // conjugator * M_n(m) * conjugator^-1
};

// The 2(n-m) conjugates of M_n(m): ζ^i M_n(m) ζ^-i and their images under
// ε_1 ε_j, where j is the row that ζ^i moves n to.
inline std::vector<ConjugateFamily> commuting_column_conjugates(int m, int n) {
  const auto base = column_generators(NielsenKind::left, n, m, n);
  const FreeAutomorphism z = zeta(m, n);
  std::vector<ConjugateFamily> out;
  FreeAutomorphism power = FreeAutomorphism::identity(n);
  for (int i = 0; i < n - m; ++i) {
    int row = i == 0 ? n : m + i;
    FreeAutomorphism bar = epsilon(1, n) * epsilon(row, n) * power;
    for (const FreeAutomorphism& c : {power, bar}) {
      ConjugateFamily f{c, {}};
      for (const auto& g : base)
        f.generators.push_back(conjugate(c, g));
      out.push_back(std::move(f));
    }
    power = z * power;
  }
  return out;
}

struct DihedralFactor {
  std::string name;             // e.g. "R_1_2", "L_1_3"
  FreeAutomorphism translation; // the Nielsen transformation
  FreeAutomorphism reflection;  // ε_j
  // Both generators of finite order.
  std::vector<FreeAutomorphism> torsion_generators() const {
    return {reflection, translation * reflection};
  }
};

// R_ij = <ρ_ij, ε_j>.
inline DihedralFactor right_dihedral(int i, int j, int n) {
  return {"R_" + std::to_string(i) + "_" + std::to_string(j), rho(i, j, n), epsilon(j, n)};
}
// L_ij = <λ_ij, ε_j>.
inline DihedralFactor left_dihedral(int i, int j, int n) {
  return {"L_" + std::to_string(i) + "_" + std::to_string(j), lambda(i, j, n), epsilon(j, n)};
}

// R_{3i+1,3i+2} and L_{3i+1,3i+3} for i < m with m = floor(n/3); when
// n = 3m+2 also R_{3m+1,3m+2}.
inline std::vector<DihedralFactor> dihedral_product(int n) {
  if (n < 3)
    throw std::out_of_range("dihedral_product: need n >= 3");
  const int m = n / 3;
  std::vector<DihedralFactor> out;
  for (int i = 0; i < m; ++i) {
    out.push_back(right_dihedral(3 * i + 1, 3 * i + 2, n));
    out.push_back(left_dihedral(3 * i + 1, 3 * i + 3, n));
  }
  if (n == 3 * m + 2)
    out.push_back(right_dihedral(3 * m + 1, 3 * m + 2, n));
  return out;
}

// D_i = <λ_i1 ρ_i1^-1, ε_i ε_1>, i = 2..n.
inline std::vector<DihedralFactor> conjugation_dihedrals(int n) {
  std::vector<DihedralFactor> out;
  for (int i = 2; i <= n; ++i)
    out.push_back({"D_" + std::to_string(i), lambda(i, 1, n) * rho(i, 1, n).inverse(),
                   epsilon(i, n) * epsilon(1, n)});
  return out;
}

// W_n: sign changes and adjacent transpositions.
inline std::vector<FreeAutomorphism> signed_permutation_generators(int n) {
  std::vector<FreeAutomorphism> out;
  for (int i = 1; i <= n; ++i)
    out.push_back(epsilon(i, n));
  for (int i = 1; i < n; ++i)
    out.push_back(transposition(i, i + 1, n));
  return out;
}

struct TorsionTriple {
  std::vector<FreeAutomorphism> a1, a2, a3;
};

// θ = ρ_12 ε_2, τ = (2 3) ε_1, η = (1 2) ε_1 ε_2.
inline FreeAutomorphism theta(int n) { return rho(1, 2, n) * epsilon(2, n); }
inline FreeAutomorphism tau(int n) { return transposition(2, 3, n) * epsilon(1, n); }
inline FreeAutomorphism eta(int n) {
  return transposition(1, 2, n) * epsilon(1, n) * epsilon(2, n);
}

// A_1 = {ε_n, η} ∪ sym(x_3..x_n), A_2 = {θ}, A_3 = {τ}; sym(x_3..x_n) enters
// through its adjacent transpositions.
inline TorsionTriple torsion_triple(int n) {
  if (n < 3)
    throw std::out_of_range("torsion_triple: need n >= 3");
  TorsionTriple t;
  t.a1 = {epsilon(n, n), eta(n)};
  for (int i = 3; i < n; ++i)
    t.a1.push_back(transposition(i, i + 1, n));
  t.a2 = {theta(n)};
  t.a3 = {tau(n)};
  return t;
}

// Conjugates an automorphism of F_3 into the standard copy of Aut(F_3) on
// the letters x_{offset+1..offset+3} of F_n.
inline FreeAutomorphism embed_block(const FreeAutomorphism& a, int offset, int n) {
  const int r = a.rank();
  if (offset < 0 || offset + r > n)
    throw std::out_of_range("embed_block: block does not fit");
  auto lift = [&](const std::vector<ReducedWord>& src) {
    std::vector<ReducedWord> out;
    for (int k = 1; k <= n; ++k)
      out.push_back(ReducedWord::generator(k, n));
    for (int k = 1; k <= r; ++k) {
      ReducedWord w(n);
      for (Letter l : src[k - 1].letters())
        w.push(l > 0 ? l + offset : l - offset);
      out[offset + k - 1] = w;
    }
    return out;
  };
  return FreeAutomorphism(n, lift(a.images()), lift(a.inverse_images()));
}

// σ_1..σ_{m-1} followed by σ_m.
inline std::vector<FreeAutomorphism> cyclic_braid_generators(int m) {
  std::vector<FreeAutomorphism> out;
  for (int i = 1; i < m; ++i)
    out.push_back(braid_generator(i, m));
  out.push_back(braid_sigma_m(m));
  return out;
}

// δ = σ_1 ⋯ σ_{m-1}.
inline FreeAutomorphism braid_rotation(int m) {
  FreeAutomorphism d = FreeAutomorphism::identity(m);
  for (int i = 1; i < m; ++i)
    d = d * braid_generator(i, m);
  return d;
}

} // namespace hellyfix

#endif
