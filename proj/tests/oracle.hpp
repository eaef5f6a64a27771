// Independent reference implementations used by the tests. Nothing here
// shares code with the library beyond the public value types.

#ifndef HELLYFIX_TESTS_ORACLE_HPP_
#define HELLYFIX_TESTS_ORACLE_HPP_

#include <cstdlib>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using Raw = std::vector<int>;

inline Raw freely_reduce(const Raw& w) {
  Raw out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline Raw invert(const Raw& w) {
  Raw out(w.rbegin(), w.rend());
  for (int& l : out)
    l = -l;
  return out;
}

// Substitution map: images[i-1] is the image of x_i.
using Map = std::vector<Raw>;

inline Raw substitute(const Map& m, const Raw& w) {
  Raw out;
  for (int l : w) {
    Raw piece = l > 0 ? m[l - 1] : invert(m[-l - 1]);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return freely_reduce(out);
}

// Map of b followed by a.
inline Map after(const Map& a, const Map& b) {
  Map out;
  for (const Raw& img : b)
    out.push_back(substitute(a, img));
  return out;
}

inline Map identity_map(int n) {
  Map m;
  for (int i = 1; i <= n; ++i)
    m.push_back({i});
  return m;
}

inline Map lambda_map(int i, int j, int n) {
  Map m = identity_map(n);
  m[i - 1] = {j, i};
  return m;
}

inline Map rho_map(int i, int j, int n) {
  Map m = identity_map(n);
  m[i - 1] = {i, j};
  return m;
}

inline Raw random_word(std::mt19937_64& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), idx(1, rank), sgn(0, 1);
  Raw w(len(rng));
  for (int& l : w)
    l = idx(rng) * (sgn(rng) ? 1 : -1);
  return w;
}

} // namespace oracle

#endif
