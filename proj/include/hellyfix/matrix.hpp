// Square integer matrices with arbitrary-precision entries, used as group
// elements of GL(n, Z) and of affine integer groups.

#ifndef HELLYFIX_MATRIX_HPP_
#define HELLYFIX_MATRIX_HPP_

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "automorphism.hpp"

namespace hellyfix {

using BigInt = boost::multiprecision::cpp_int;

class IntegerMatrix {
public:
  IntegerMatrix() : IntegerMatrix(identity(1)) {}

  // Row-major entries.
  IntegerMatrix(int n, std::vector<BigInt> entries) : n_(n), a_(std::move(entries)) {
    if (n_ < 1)
      throw std::invalid_argument("IntegerMatrix: dimension must be positive");
    if (a_.size() != static_cast<std::size_t>(n_) * n_)
      throw std::invalid_argument("IntegerMatrix: expected " + std::to_string(n_ * n_) +
                                  " entries");
    det_ = bareiss_determinant();
  }

  static IntegerMatrix identity(int n) {
    std::vector<BigInt> e(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      e[i * n + i] = 1;
    return IntegerMatrix(n, std::move(e));
  }

  int dim() const { return n_; }
  const BigInt& operator()(int row, int col) const { return a_.at(row * n_ + col); }
  const BigInt& at1(int row, int col) const { return (*this)(row - 1, col - 1); }
  const BigInt& determinant() const { return det_; }
  bool unimodular() const { return det_ == 1 || det_ == -1; }
  const std::vector<BigInt>& entries() const { return a_; }

  friend IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y) {
    if (x.n_ != y.n_)
      throw std::invalid_argument("IntegerMatrix: dimension mismatch in product");
    const int n = x.n_;
    std::vector<BigInt> e(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const BigInt& xik = x.a_[i * n + k];
        if (xik == 0)
          continue;
        for (int j = 0; j < n; ++j)
          if (y.a_[k * n + j] != 0)
            e[i * n + j] += xik * y.a_[k * n + j];
      }
    return IntegerMatrix(unchecked{}, n, std::move(e), x.det_ * y.det_);
  }

  // Exact inverse; only defined for determinant ±1.
  IntegerMatrix inverse() const {
    if (!unimodular())
      throw std::domain_error("IntegerMatrix: inverse needs determinant +1 or -1");
    using boost::multiprecision::cpp_rational;
    const int n = n_;
    std::vector<cpp_rational> m(static_cast<std::size_t>(n) * 2 * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        m[i * 2 * n + j] = cpp_rational(a_[i * n + j]);
      m[i * 2 * n + n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
      int p = c;
      while (p < n && m[p * 2 * n + c] == 0)
        ++p;
      if (p == n)
        throw std::domain_error("IntegerMatrix: singular");
      if (p != c)
        for (int j = 0; j < 2 * n; ++j)
          std::swap(m[p * 2 * n + j], m[c * 2 * n + j]);
      cpp_rational piv = m[c * 2 * n + c];
      for (int j = 0; j < 2 * n; ++j)
        m[c * 2 * n + j] /= piv;
      for (int r = 0; r < n; ++r) {
        if (r == c || m[r * 2 * n + c] == 0)
          continue;
        cpp_rational f = m[r * 2 * n + c];
        for (int j = 0; j < 2 * n; ++j)
          m[r * 2 * n + j] -= f * m[c * 2 * n + j];
      }
    }
    std::vector<BigInt> e(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const cpp_rational& q = m[i * 2 * n + n + j];
        if (denominator(q) != 1)
          throw std::logic_error("IntegerMatrix: non-integral inverse");
        e[i * n + j] = numerator(q);
      }
    return IntegerMatrix(unchecked{}, n, std::move(e), det_);
  }

  IntegerMatrix identity_like() const { return identity(n_); }
  bool compatible(const IntegerMatrix& o) const { return n_ == o.n_; }

  bool is_identity() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (a_[i * n_ + j] != (i == j ? 1 : 0))
          return false;
    return true;
  }

  bool operator==(const IntegerMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(n_);
    for (const auto& v : a_)
      h = (h ^ boost::multiprecision::hash_value(v)) * 0x100000001b3ULL;
    return h;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
      if (i)
        s += "; ";
      for (int j = 0; j < n_; ++j) {
        if (j)
          s += ' ';
        s += a_[i * n_ + j].str();
      }
    }
    return s + "]";
  }

private:
  struct unchecked {};
  IntegerMatrix(unchecked, int n, std::vector<BigInt> e, BigInt det)
      : n_(n), a_(std::move(e)), det_(std::move(det)) {}

  BigInt bareiss_determinant() const {
    const int n = n_;
    std::vector<BigInt> m = a_;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
      if (m[k * n + k] == 0) {
        int p = k + 1;
        while (p < n && m[p * n + k] == 0)
          ++p;
        if (p == n)
          return 0;
        for (int j = 0; j < n; ++j)
          std::swap(m[p * n + j], m[k * n + j]);
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j)
          m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
      prev = m[k * n + k];
    }
    return sign * m[(n - 1) * n + (n - 1)];
  }

  int n_;
  std::vector<BigInt> a_;
  BigInt det_;
};

// E_ij = I + U_ij, 1-based.
inline IntegerMatrix elementary(int n, int i, int j) {
  impl::check_index(i, n, "elementary");
  impl::check_index(j, n, "elementary");
  if (i == j)
    throw std::invalid_argument("elementary: i and j must differ");
  std::vector<BigInt> e(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k)
    e[k * n + k] = 1;
  e[(i - 1) * n + (j - 1)] = 1;
  return IntegerMatrix(n, std::move(e));
}

// Diagonal matrix with -1 at the listed 1-based positions. The list may
// repeat an index; repeats cancel.
inline IntegerMatrix diag_sign(int n, const std::vector<int>& flips) {
  std::vector<BigInt> e(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k)
    e[k * n + k] = 1;
  for (int f : flips) {
    impl::check_index(f, n, "diag_sign");
    e[(f - 1) * n + (f - 1)] *= -1;
  }
  return IntegerMatrix(n, std::move(e));
}

// Column k carries e_{perm[k]}: the matrix sending e_k to e_{perm[k]}.
inline IntegerMatrix permutation_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::set<int> seen;
  std::vector<BigInt> e(static_cast<std::size_t>(n) * n);
  for (int k = 1; k <= n; ++k) {
    impl::check_index(perm[k - 1], n, "permutation_matrix");
    if (!seen.insert(perm[k - 1]).second)
      throw std::invalid_argument("permutation_matrix: not a bijection");
    e[(perm[k - 1] - 1) * n + (k - 1)] = 1;
  }
  return IntegerMatrix(n, std::move(e));
}

inline IntegerMatrix negate(const IntegerMatrix& m) {
  std::vector<BigInt> e = m.entries();
  for (auto& v : e)
    v = -v;
  return IntegerMatrix(m.dim(), std::move(e));
}

// Induced map on Z^n: column i holds the exponent sums of a(x_i), so that
// abelianization(a * b) = abelianization(a) * abelianization(b).
inline IntegerMatrix abelianization(const FreeAutomorphism& a) {
  const int n = a.rank();
  std::vector<BigInt> e(static_cast<std::size_t>(n) * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      e[(j - 1) * n + (i - 1)] = a.image(i).exponent_sum(j);
  return IntegerMatrix(n, std::move(e));
}

inline bool in_special_aut(const FreeAutomorphism& a) {
  return abelianization(a).determinant() == 1;
}

} // namespace hellyfix

template <> struct std::hash<hellyfix::IntegerMatrix> {
  std::size_t operator()(const hellyfix::IntegerMatrix& m) const { return m.hash(); }
};

#endif
