// Automorphisms of the free group F_n given by basis images.
//
// Composition convention: (a * b)(w) = a(b(w)), i.e. the right factor is
// applied first.  Under this convention [λ_jk, λ_ij] = λ_ik holds with
// [a, b] = a^-1 b^-1 a b; see tests/test_automorphism.cpp.

#ifndef HELLYFIX_AUTOMORPHISM_HPP_
#define HELLYFIX_AUTOMORPHISM_HPP_

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "word.hpp"

namespace hellyfix {

enum class NielsenKind { left, right }; // λ_ij : x_i -> x_j x_i,  ρ_ij : x_i -> x_i x_j

class FreeAutomorphism {
public:
  FreeAutomorphism() : FreeAutomorphism(identity(1)) {}

  // Checks that inverse_images really inverts images on every basis letter.
  FreeAutomorphism(int rank, std::vector<ReducedWord> images,
                   std::vector<ReducedWord> inverse_images)
      : rank_(rank), images_(std::move(images)), inverse_images_(std::move(inverse_images)) {
    if (rank_ < 1)
      throw std::invalid_argument("FreeAutomorphism: rank must be positive");
    if (images_.size() != static_cast<std::size_t>(rank_) ||
        inverse_images_.size() != static_cast<std::size_t>(rank_))
      throw std::invalid_argument("FreeAutomorphism: need one image per basis letter");
    for (int i = 0; i < rank_; ++i)
      if (images_[i].rank() != rank_ || inverse_images_[i].rank() != rank_)
        throw std::invalid_argument("FreeAutomorphism: image rank mismatch");
    for (int i = 1; i <= rank_; ++i) {
      ReducedWord basis = ReducedWord::generator(i, rank_);
      if (substitute(inverse_images_, images_[i - 1]) != basis ||
          substitute(images_, inverse_images_[i - 1]) != basis)
        throw std::invalid_argument("FreeAutomorphism: inverse witness fails on x" +
                                    std::to_string(i));
    }
  }

  static FreeAutomorphism identity(int rank) {
    std::vector<ReducedWord> imgs;
    imgs.reserve(rank);
    for (int i = 1; i <= rank; ++i)
      imgs.push_back(ReducedWord::generator(i, rank));
    return FreeAutomorphism(unchecked{}, rank, imgs, imgs);
  }

  int rank() const { return rank_; }
  const std::vector<ReducedWord>& images() const { return images_; }
  const std::vector<ReducedWord>& inverse_images() const { return inverse_images_; }
  const ReducedWord& image(int index) const { return images_.at(index - 1); }

  ReducedWord apply(const ReducedWord& w) const { return substitute(images_, w); }
  ReducedWord apply_inverse(const ReducedWord& w) const {
    return substitute(inverse_images_, w);
  }

  FreeAutomorphism inverse() const {
    return FreeAutomorphism(unchecked{}, rank_, inverse_images_, images_);
  }
  FreeAutomorphism identity_like() const { return identity(rank_); }
  bool compatible(const FreeAutomorphism& o) const { return rank_ == o.rank_; }

  bool is_identity() const {
    for (int i = 1; i <= rank_; ++i)
      if (images_[i - 1].length() != 1 || images_[i - 1].letters()[0] != i)
        return false;
    return true;
  }

  // a * b applies b first, then a.
  friend FreeAutomorphism operator*(const FreeAutomorphism& a, const FreeAutomorphism& b) {
    if (a.rank_ != b.rank_)
      throw std::invalid_argument("FreeAutomorphism: rank mismatch in composition");
    std::vector<ReducedWord> imgs, invs;
    imgs.reserve(a.rank_);
    invs.reserve(a.rank_);
    for (int i = 0; i < a.rank_; ++i) {
      imgs.push_back(substitute(a.images_, b.images_[i]));
      invs.push_back(substitute(b.inverse_images_, a.inverse_images_[i]));
    }
    return FreeAutomorphism(unchecked{}, a.rank_, std::move(imgs), std::move(invs));
  }

  bool operator==(const FreeAutomorphism& o) const {
    return rank_ == o.rank_ && images_ == o.images_;
  }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& w : images_)
      h = (h ^ w.hash()) * 0x100000001b3ULL;
    return h;
  }

  std::string str() const {
    std::string s;
    for (int i = 1; i <= rank_; ++i) {
      if (i > 1)
        s += ", ";
      s += "x" + std::to_string(i) + " -> " + images_[i - 1].str();
    }
    return s;
  }

private:
  struct unchecked {};
  FreeAutomorphism(unchecked, int rank, std::vector<ReducedWord> images,
                   std::vector<ReducedWord> inverse_images)
      : rank_(rank), images_(std::move(images)), inverse_images_(std::move(inverse_images)) {}

  static ReducedWord substitute(const std::vector<ReducedWord>& imgs, const ReducedWord& w) {
    ReducedWord r(w.rank());
    for (Letter l : w.letters()) {
      if (l > 0)
        r.append(imgs[l - 1]);
      else
        r.append_inverse(imgs[-l - 1]);
    }
    return r;
  }

  int rank_;
  std::vector<ReducedWord> images_;
  std::vector<ReducedWord> inverse_images_;
};

inline FreeAutomorphism compose(const FreeAutomorphism& a, const FreeAutomorphism& b) {
  return a * b;
}

namespace impl {
inline void check_index(int i, int rank, const char* what) {
  if (i < 1 || i > rank)
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(i) +
                            " outside 1.." + std::to_string(rank));
}
} // namespace impl

// λ_ij (left) : x_i -> x_j x_i,  ρ_ij (right) : x_i -> x_i x_j; other letters fixed.
inline FreeAutomorphism nielsen(NielsenKind kind, int i, int j, int rank) {
  impl::check_index(i, rank, "nielsen");
  impl::check_index(j, rank, "nielsen");
  if (i == j)
    throw std::invalid_argument("nielsen: i and j must differ");
  std::vector<ReducedWord> imgs, invs;
  for (int k = 1; k <= rank; ++k) {
    imgs.push_back(ReducedWord::generator(k, rank));
    invs.push_back(ReducedWord::generator(k, rank));
  }
  if (kind == NielsenKind::left) {
    imgs[i - 1] = ReducedWord::reduce({j, i}, rank);
    invs[i - 1] = ReducedWord::reduce({-j, i}, rank);
  } else {
    imgs[i - 1] = ReducedWord::reduce({i, j}, rank);
    invs[i - 1] = ReducedWord::reduce({i, -j}, rank);
  }
  return FreeAutomorphism(rank, std::move(imgs), std::move(invs));
}

inline FreeAutomorphism lambda(int i, int j, int rank) {
  return nielsen(NielsenKind::left, i, j, rank);
}
inline FreeAutomorphism rho(int i, int j, int rank) {
  return nielsen(NielsenKind::right, i, j, rank);
}

// x_i -> x_{perm[i]}^{signs[i]} with 1-based perm values.
inline FreeAutomorphism signed_perm(const std::vector<int>& perm, const std::vector<int>& signs) {
  const int rank = static_cast<int>(perm.size());
  if (rank < 1 || signs.size() != perm.size())
    throw std::invalid_argument("signed_perm: permutation and sign vector sizes differ");
  std::vector<int> seen(rank + 1, 0);
  for (int p : perm) {
    impl::check_index(p, rank, "signed_perm");
    if (seen[p]++)
      throw std::invalid_argument("signed_perm: not a bijection");
  }
  std::vector<ReducedWord> imgs(rank, ReducedWord(rank)), invs(rank, ReducedWord(rank));
  for (int i = 1; i <= rank; ++i) {
    int s = signs[i - 1];
    if (s != 1 && s != -1)
      throw std::invalid_argument("signed_perm: signs must be +1 or -1");
    imgs[i - 1] = ReducedWord::generator(perm[i - 1], rank, s);
    invs[perm[i - 1] - 1] = ReducedWord::generator(i, rank, s);
  }
  return FreeAutomorphism(rank, std::move(imgs), std::move(invs));
}

// ε_i : x_i -> x_i^-1.
inline FreeAutomorphism epsilon(int i, int rank) {
  impl::check_index(i, rank, "epsilon");
  std::vector<int> perm(rank), signs(rank, 1);
  std::iota(perm.begin(), perm.end(), 1);
  signs[i - 1] = -1;
  return signed_perm(perm, signs);
}

// Basis permutation (i j).
inline FreeAutomorphism transposition(int i, int j, int rank) {
  impl::check_index(i, rank, "transposition");
  impl::check_index(j, rank, "transposition");
  std::vector<int> perm(rank), signs(rank, 1);
  std::iota(perm.begin(), perm.end(), 1);
  std::swap(perm[i - 1], perm[j - 1]);
  return signed_perm(perm, signs);
}

// σ_i in Aut(F_m): x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i.
inline FreeAutomorphism braid_generator(int i, int strands) {
  if (strands < 2 || i < 1 || i > strands - 1)
    throw std::out_of_range("braid_generator: need 1 <= i <= m-1");
  const int m = strands;
  std::vector<ReducedWord> imgs, invs;
  for (int k = 1; k <= m; ++k) {
    imgs.push_back(ReducedWord::generator(k, m));
    invs.push_back(ReducedWord::generator(k, m));
  }
  imgs[i - 1] = ReducedWord::reduce({i, i + 1, -i}, m);
  imgs[i] = ReducedWord::generator(i, m);
  invs[i - 1] = ReducedWord::generator(i + 1, m);
  invs[i] = ReducedWord::reduce({-(i + 1), i, i + 1}, m);
  return FreeAutomorphism(m, std::move(imgs), std::move(invs));
}

// σ_m = σ_1 ⋯ σ_{m-2} σ_{m-1} σ_{m-2}^-1 ⋯ σ_1^-1.
inline FreeAutomorphism braid_sigma_m(int strands) {
  if (strands < 3)
    throw std::out_of_range("braid_sigma_m: need at least 3 strands");
  FreeAutomorphism prefix = FreeAutomorphism::identity(strands);
  for (int i = 1; i <= strands - 2; ++i)
    prefix = prefix * braid_generator(i, strands);
  return prefix * braid_generator(strands - 1, strands) * prefix.inverse();
}

} // namespace hellyfix

template <> struct std::hash<hellyfix::FreeAutomorphism> {
  std::size_t operator()(const hellyfix::FreeAutomorphism& a) const { return a.hash(); }
};

#endif
