// Builtin certificates for the standard families and the FixDim bounds
// they certify. Witnesses (conjugators, splits, orders) are computed here
// and then checked independently by check_certificate.
//
//   aut:n        Aut(F_n), 3 <= n <= 12
//   saut:n       SAut(F_n), conditional on a Nielsen assumption flag
//   elliptic:n   standard Aut(F_3) copies inside Aut(F_n) via torsion triples
//   gl:n, sl:n   GL(n,Z), SL(n,Z), 3 <= n <= 8
//   braid:m      B_m, conditional on sigma-elliptic (base 1)
//   braid2:m     B_m, conditional on b3-elliptic (base 2)
//   wreath:d     D_inf wr C_d
//   bieberbach:n the crystallographic group generated by coordinate
//                reflections x_i -> -x_i, x_i -> 2 - x_i and coordinate swaps
//   simplex:n    the affine Weyl group of type A_n as a simplex of finite groups

#ifndef HELLYFIX_BUILTIN_HPP_
#define HELLYFIX_BUILTIN_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "automorphism.hpp"
#include "certificate.hpp"
#include "checker.hpp"
#include "families.hpp"
#include "group.hpp"
#include "matrix.hpp"

namespace hellyfix {

namespace impl {

inline std::string str(int v) { return std::to_string(v); }

template <class G> class CertBuilder {
public:
  CertBuilder(const std::string& ambient, int n) : n_(n) {
    c_.ambient = ambient;
    c_.size = n;
  }

  // Declares a generator; a repeated specification returns the earlier name.
  std::string gen(const std::string& name, const std::string& spec) {
    auto it = by_spec_.find(spec);
    if (it != by_spec_.end())
      return it->second;
    if (values_.count(name))
      throw std::logic_error("builtin: generator name " + name + " reused");
    auto toks = split_names(spec);
    values_.emplace(name, evaluate(toks));
    c_.gens.push_back({name, toks});
    by_spec_[spec] = name;
    return name;
  }

  const G& value(const std::string& name) const { return values_.at(name); }

  std::vector<G> values(const std::vector<std::string>& names) const {
    std::vector<G> out;
    for (const auto& n : names)
      out.push_back(value(n));
    return out;
  }

  G word(const std::string& w) const {
    G r = Backend<G>::identity(n_);
    for (const auto& l : parse_word(w)) {
      G g = l.exponent > 0 ? value(l.name) : value(l.name).inverse();
      for (int k = 0; k < std::abs(l.exponent); ++k)
        r = r * g;
    }
    return r;
  }

  Certificate& cert() { return c_; }
  int size() const { return n_; }

  void lemma(const std::string& name, Node node) { c_.lemmas.push_back({name, std::move(node)}); }

private:
  G evaluate(const std::vector<std::string>& toks) const {
    if (toks.at(0) == "word") {
      std::string w;
      for (std::size_t i = 1; i < toks.size(); ++i)
        w += toks[i] + " ";
      return word(w);
    }
    if constexpr (std::is_same_v<G, IntegerMatrix>)
      if (toks[0] == "negate")
        return negate(value(toks.at(1)));
    auto p = Backend<G>::primitive(toks, n_);
    if (!p)
      throw std::logic_error("builtin: bad specification " + toks[0]);
    return *p;
  }

  int n_;
  Certificate c_;
  std::map<std::string, G> values_;
  std::map<std::string, std::string> by_spec_;
};

inline Node make_node(const std::string& rule, std::vector<std::string> subject) {
  Node n;
  n.rule = rule;
  n.subject = std::move(subject);
  return n;
}

inline Node use(const std::string& lemma) {
  Node n;
  n.ref = lemma;
  return n;
}

inline void param(Node& n, const std::string& k, const std::string& v) { n.params.push_back({k, v}); }
inline void param(Node& n, const std::string& k, long v) { n.params.push_back({k, std::to_string(v)}); }
inline void witness(Node& n, const std::string& k, const std::string& v) { n.witnesses.push_back({k, v}); }

inline std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? sep : "") + v[i];
  return s;
}

inline std::string key(const std::string& name, const std::vector<std::string>& idx) {
  return name + "[" + join(idx, ",") + "]";
}

inline std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts)
    out.insert(out.end(), p.begin(), p.end());
  return out;
}

template <class G> bool has_upto_inverse(const std::vector<G>& set, const G& x) {
  const G xi = x.inverse();
  return std::any_of(set.begin(), set.end(), [&](const G& y) { return y == x || y == xi; });
}

// g maps from[j] to to[j] up to inverse for every j.
template <class G> bool maps_onto(const G& g, const std::vector<G>& from, const std::vector<G>& to) {
  if (from.size() != to.size())
    return false;
  for (std::size_t j = 0; j < from.size(); ++j) {
    G x = conjugate(g, from[j]);
    if (!(x == to[j] || x == to[j].inverse()))
      return false;
  }
  return true;
}

// g conjugates every element of from into the set to, covering it.
template <class G> bool maps_into_covering(const G& g, const std::vector<G>& from, const std::vector<G>& to) {
  std::vector<G> img;
  for (const auto& x : from)
    img.push_back(conjugate(g, x));
  for (const auto& t : to)
    if (!has_upto_inverse(img, t))
      return false;
  for (const auto& x : img)
    if (!has_upto_inverse(to, x))
      return false;
  return true;
}

// "perm p_1 .. p_n [signs s_1 .. s_n]" for a signed permutation automorphism.
inline std::string perm_spec(const FreeAutomorphism& g) {
  std::string p = "perm", s = " signs";
  bool negative = false;
  for (int i = 1; i <= g.rank(); ++i) {
    const auto& w = g.image(i).letters();
    if (w.size() != 1)
      throw std::logic_error("perm_spec: not a signed permutation");
    p += " " + str(std::abs(w[0]));
    s += w[0] > 0 ? " 1" : " -1";
    negative = negative || w[0] < 0;
  }
  return negative ? p + s : p;
}

// Signed permutations sending src[i] to dst[i] (remaining letters in
// increasing order), with every sign pattern on the letters involved, and
// their inverses. With det_one, a sign on an uninvolved letter restores
// determinant +1 where possible.
inline std::vector<FreeAutomorphism> signed_perm_candidates(int n, const std::vector<int>& src,
                                                            const std::vector<int>& dst, bool det_one) {
  std::vector<int> perm(n, 0);
  std::vector<char> used(n + 1, 0);
  for (std::size_t i = 0; i < src.size(); ++i) {
    perm[src[i] - 1] = dst[i];
    used[dst[i]] = 1;
  }
  int next = 1;
  for (int i = 0; i < n; ++i)
    if (!perm[i]) {
      while (used[next])
        ++next;
      perm[i] = next;
      used[next] = 1;
    }
  std::vector<int> involved;
  for (int x : src)
    involved.push_back(x);
  for (int x : dst)
    if (std::find(involved.begin(), involved.end(), x) == involved.end())
      involved.push_back(x);
  int spare = 0;
  for (int i = n; i >= 1 && !spare; --i)
    if (std::find(involved.begin(), involved.end(), i) == involved.end())
      spare = i;
  std::vector<FreeAutomorphism> out;
  for (unsigned mask = 0; mask < (1u << involved.size()); ++mask) {
    std::vector<int> signs(n, 1);
    for (std::size_t b = 0; b < involved.size(); ++b)
      if (mask >> b & 1)
        signs[involved[b] - 1] = -1;
    FreeAutomorphism g = signed_perm(perm, signs);
    for (const auto& h : {g, g.inverse()}) {
      FreeAutomorphism x = h;
      if (det_one && !in_special_aut(x)) {
        if (!spare)
          continue;
        x = x * epsilon(spare, n);
      }
      out.push_back(x);
    }
  }
  return out;
}

template <class Pred>
FreeAutomorphism find_signed_perm(int n, const std::vector<int>& src, const std::vector<int>& dst,
                                  bool det_one, Pred ok) {
  for (const auto& g : signed_perm_candidates(n, src, dst, det_one))
    if (ok(g))
      return g;
  throw std::logic_error("builtin: no signed permutation conjugator found");
}

inline std::string power_word(const std::string& g, int p) {
  if (p == 0)
    return "1";
  return p == 1 ? g : g + "^" + str(p);
}

inline FreeAutomorphism power(const FreeAutomorphism& g, int p) {
  FreeAutomorphism r = FreeAutomorphism::identity(g.rank());
  FreeAutomorphism step = p >= 0 ? g : g.inverse();
  for (int k = 0; k < std::abs(p); ++k)
    r = r * step;
  return r;
}

using FA = FreeAutomorphism;

inline FA det_fix(const FA& g, bool det_one) {
  return det_one && !in_special_aut(g) ? g * epsilon(1, g.rank()) : g;
}

// ---------------------------------------------------------------------------
// Aut(F_n) and SAut(F_n)

inline Certificate nielsen_certificate(int n, bool special, const std::string& flag) {
  CertBuilder<FA> b(special ? "saut" : "aut", n);
  auto L = [&](int i, int j) { return b.gen("L" + str(i) + "_" + str(j), "lambda " + str(i) + " " + str(j)); };
  auto R = [&](int i, int j) { return b.gen("R" + str(i) + "_" + str(j), "rho " + str(i) + " " + str(j)); };
  auto E = [&](int i) { return b.gen("E" + str(i), "epsilon " + str(i)); };

  std::vector<std::vector<std::string>> niel(n + 1);
  for (int i = 1; i <= n; ++i) {
    int j = i == 1 ? n : i - 1;
    niel[i] = {L(i, j), R(i, j)};
  }
  std::vector<std::string> all_niel, chain_subject;
  for (int i = 1; i <= n; ++i) {
    all_niel.insert(all_niel.end(), niel[i].begin(), niel[i].end());
    if (i >= 2)
      chain_subject.insert(chain_subject.end(), niel[i].begin(), niel[i].end());
  }

  const std::string C = b.gen("C", perm_spec(det_fix(cyclic_shift(1, n, n), special)));
  const FA c = b.value(C);

  // Chain: Niel_2..Niel_n from the column product.
  Node chain = make_node("NIELSEN_CHAIN", chain_subject);
  {
    std::string shift;
    for (int p : {1, -1}) {
      bool ok = true;
      for (int i = 2; i < n && ok; ++i)
        ok = maps_into_covering(power(c, p), b.values(niel[i]), b.values(niel[i + 1]));
      if (ok) {
        shift = power_word(C, p);
        break;
      }
    }
    if (shift.empty())
      throw std::logic_error("builtin: no shift for the Nielsen chain");
    witness(chain, "shift", shift);
    chain.children.push_back(use("M"));
  }

  // M = M_n(n-1) x Mbar_n(n-1) from the left column and its mirror.
  std::vector<std::string> left, right;
  for (int j = 1; j < n; ++j) {
    left.push_back(L(n, j));
    right.push_back(R(n, j));
  }
  Node m = make_node("CONJ_BOOTSTRAP", concat({left, right}));
  {
    std::vector<int> perm(n), signs(n, 1);
    std::iota(perm.begin(), perm.end(), 1);
    signs[0] = signs[n - 1] = -1;
    const std::string mirror = b.gen("E1En", perm_spec(signed_perm(perm, signs)));
    param(m, "k", n - 1);
    param(m, "n", 2);
    witness(m, "base", join(left));
    witness(m, "conj[1]", "1");
    witness(m, "conj[2]", mirror);
    m.children.push_back(use("Mleft"));
  }

  // Left column M_n(n-1) by ample duplication over the basis permutations
  // of x_1..x_{n-1}.
  Node ample = make_node("AMPLE", left);
  const int d = 2 * n - 5;
  param(ample, "d", d);
  param(ample, "k0", 1);
  const int kmax = std::min(d + 1, n - 1);
  for (int k = 2; k <= kmax; ++k)
    param(ample, "f[" + str(k) + "]", 2 * (n - k));
  witness(ample, "sym[1]", b.gen("T12", perm_spec(det_fix(transposition(1, 2, n), special))));
  if (n > 3)
    witness(ample, "sym[2]", b.gen("Z0", perm_spec(det_fix(cyclic_shift(1, n - 1, n), special))));
  for (int s = 2; s <= kmax; ++s) {
    std::vector<std::string> subset(left.begin(), left.begin() + s), conj;
    int idx = 0;
    for (const auto& fam : commuting_column_conjugates(s, n)) {
      FA g = det_fix(fam.conjugator, special);
      ++idx;
      conj.push_back(g.is_identity() ? "1" : b.gen("Q" + str(s) + "_" + str(idx), perm_spec(g)));
    }
    witness(ample, key("dup", subset), join(conj, " ; "));
  }

  // Base: lambda_n1 has a fixed point.
  if (special) {
    Node a = make_node("ASSUME", {left[0]});
    param(a, "flag", flag);
    ample.children.push_back(a);
    b.cert().assumptions.push_back(flag);
  } else {
    const std::string r12 = R(1, 2);
    Node conj = make_node("CONJUGATE", {left[0]});
    FA g = find_signed_perm(n, {1, 2}, {n, 1}, false, [&](const FA& x) {
      return maps_onto(x, {b.value(r12)}, {b.value(left[0])});
    });
    witness(conj, "by", b.gen("K0", perm_spec(g)));
    conj.children.push_back(use("rho12"));
    ample.children.push_back(conj);
  }

  b.lemma("chain", chain);
  b.lemma("M", m);
  b.lemma("Mleft", ample);
  int bound = n - 2;

  if (!special) {
    // Product of commuting dihedral groups, all conjugate to R_12.
    auto factors = dihedral_product(n);
    std::vector<std::vector<std::string>> fnames;
    Node prod = make_node("PRODUCT", {});
    std::vector<std::string> prod_subject;
    std::vector<Entry> conj_witnesses;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& f = factors[i];
      const bool is_left = f.name[0] == 'L';
      auto parts = split_on(f.name, '_');
      int a = std::stoi(parts[1]), bb = std::stoi(parts[2]);
      std::string refl = E(bb), trans = is_left ? L(a, bb) : R(a, bb);
      std::vector<std::string> forms = {"word " + trans + " " + refl};
      if (is_left)
        forms.push_back("word " + refl + " " + trans);
      std::vector<std::string> names;
      std::string conj;
      for (const auto& form : forms) {
        // Evaluate the candidate before declaring it.
        FA t = b.word(form.substr(5));
        std::vector<FA> target = {b.value(refl), t};
        if (i == 0) {
          names = {refl, b.gen("P" + str(static_cast<int>(i) + 1), form)};
          break;
        }
        std::vector<FA> base = b.values(fnames[0]);
        try {
          FA g = find_signed_perm(n, {1, 2}, {a, bb}, false,
                                  [&](const FA& x) { return maps_onto(x, base, target); });
          names = {refl, b.gen("P" + str(static_cast<int>(i) + 1), form)};
          conj = b.gen("K" + str(static_cast<int>(i) + 1), perm_spec(g));
          break;
        } catch (const std::logic_error&) {
        }
      }
      if (names.empty())
        throw std::logic_error("builtin: no conjugator onto factor " + f.name);
      fnames.push_back(names);
      witness(prod, "factor[" + str(static_cast<int>(i) + 1) + "]", join(names));
      if (i > 0)
        conj_witnesses.push_back({"conj[" + str(static_cast<int>(i) + 1) + "]", conj});
      prod_subject.insert(prod_subject.end(), names.begin(), names.end());
    }
    prod.subject = prod_subject;
    prod.witnesses.insert(prod.witnesses.end(), conj_witnesses.begin(), conj_witnesses.end());

    const std::string r12 = R(1, 2);
    Node sub = make_node("SUBGROUP", {r12});
    witness(sub, key("word", {r12}), fnames[0][1] + " " + fnames[0][0]);
    sub.children.push_back(use("prod"));
    b.lemma("rho12", sub);
    b.lemma("prod", prod);
    bound = static_cast<int>(factors.size()) - 1;
  }

  // Delta over Niel_1..Niel_n: each (n-1)-subset is a cyclic shift of the chain.
  Node delta = make_node("DELTA", all_niel);
  param(delta, "d", n - 2);
  for (int i = 1; i <= n; ++i)
    witness(delta, "part[" + str(i) + "]", join(niel[i]));
  for (const auto& combo : combinations(n, n - 1)) {
    std::vector<std::string> target;
    for (int p : combo)
      target.insert(target.end(), niel[p + 1].begin(), niel[p + 1].end());
    std::string by;
    for (int p = 0; p < n && by.empty(); ++p)
      if (maps_into_covering(power(c, p), b.values(chain_subject), b.values(target)))
        by = power_word(C, p);
    if (by.empty())
      throw std::logic_error("builtin: no shift onto a Delta premise");
    Node conj = make_node("CONJUGATE", target);
    witness(conj, "by", by);
    conj.children.push_back(use("chain"));
    delta.children.push_back(conj);
  }

  if (special) {
    b.cert().root = delta;
  } else {
    const std::string e1 = E(1);
    Node root = make_node("FINITE_INDEX", concat({all_niel, {e1}}));
    witness(root, "complement", e1);
    param(root, "index_bound", 2);
    root.children.push_back(delta);
    b.cert().root = root;
  }
  b.cert().bound = bound;
  return b.cert();
}

// ---------------------------------------------------------------------------
// Standard copies of Aut(F_3) via the torsion triples A_1, A_2, A_3.

inline Certificate elliptic_certificate(int n) {
  CertBuilder<FA> b("aut", n);
  const int m = n / 3;
  const TorsionTriple t3 = torsion_triple(3);
  std::vector<std::array<std::vector<std::string>, 3>> parts(m);
  for (int blk = 0; blk < m; ++blk) {
    const int off = 3 * blk;
    const std::vector<FA>* lists[3] = {&t3.a1, &t3.a2, &t3.a3};
    for (int j = 0; j < 3; ++j) {
      int idx = 0;
      for (const auto& a : *lists[j]) {
        FA e = embed_block(a, off, n);
        std::string name = "A" + str(j + 1) + "_" + str(blk + 1) + "_" + str(++idx);
        bool signed_permutation = true;
        for (int k = 1; k <= n; ++k)
          signed_permutation = signed_permutation && e.image(k).letters().size() == 1;
        if (signed_permutation) {
          parts[blk][j].push_back(b.gen(name, perm_spec(e)));
        } else {
          // theta = rho_{a,a+1} eps_{a+1}
          std::string r = b.gen("R" + str(off + 1) + "_" + str(off + 2), "rho " + str(off + 1) + " " + str(off + 2));
          std::string eps = b.gen("E" + str(off + 2), "epsilon " + str(off + 2));
          std::string w = b.gen(name, "word " + r + " " + eps);
          if (!(b.value(w) == e))
            throw std::logic_error("builtin: unexpected torsion generator");
          parts[blk][j].push_back(w);
        }
      }
    }
  }
  std::vector<std::string> block0 = concat({parts[0][0], parts[0][1], parts[0][2]});
  Node root = make_node("TRIPLES", block0);
  for (int blk = 0; blk < m; ++blk)
    for (int j = 0; j < 3; ++j)
      witness(root, "part[" + str(blk + 1) + "," + str(j + 1) + "]", join(parts[blk][j]));
  for (int blk = 1; blk < m; ++blk) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    for (int k = 0; k < 3; ++k)
      std::swap(perm[k], perm[3 * blk + k]);
    witness(root, "conj[" + str(blk + 1) + "]",
            b.gen("B" + str(blk + 1), perm_spec(signed_perm(perm, std::vector<int>(n, 1)))));
  }
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  std::map<std::string, std::size_t> orders;
  for (int blk = 0; blk < m; ++blk)
    for (const auto& pr : pairs) {
      auto subject = concat({parts[blk][pr[0]], parts[blk][pr[1]]});
      std::string pair_key = str(pr[0]) + str(pr[1]);
      if (!orders.count(pair_key)) {
        auto gens = b.values(subject);
        auto res = closure_enumerate<FA>(std::span<const FA>(gens), 1000000);
        orders[pair_key] = std::get<FiniteClosure<FA>>(res).order();
      }
      Node f = make_node("FINITE", subject);
      param(f, "order", static_cast<long>(orders[pair_key]));
      root.children.push_back(f);
    }
  b.cert().root = root;
  b.cert().bound = 2 * m - 1;
  return b.cert();
}

// ---------------------------------------------------------------------------
// GL(n,Z) and SL(n,Z)

inline Certificate linear_certificate(int n, bool special) {
  using M = IntegerMatrix;
  CertBuilder<M> b(special ? "sl" : "gl", n);
  auto E = [&](int i, int j) { return b.gen("E" + str(i) + "_" + str(j), "elementary " + str(i) + " " + str(j)); };
  auto T = [&](int i) { return b.gen("T" + str(i), "diag " + str(i)); };
  auto P = [&](int i, int j) {
    std::vector<std::string> p;
    for (int k = 1; k <= n; ++k)
      p.push_back(str(k == i ? j : k == j ? i : k));
    return b.gen("P" + str(i) + "_" + str(j), "permutation " + join(p));
  };
  std::vector<std::string> elem;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j)
        elem.push_back(E(i, j));

  // Factors D_(i) = <t_i, t_i E_in>, sign-adjusted in SL.
  const bool even = n % 2 == 0;
  std::vector<int> rows;
  if (special && even)
    for (int i = 2; i < n; ++i)
      rows.push_back(i);
  else
    for (int i = 1; i < n; ++i)
      rows.push_back(i);
  Node prod = make_node("PRODUCT", {});
  std::vector<std::vector<std::string>> fnames;
  for (std::size_t f = 0; f < rows.size(); ++f) {
    const int i = rows[f];
    std::string refl;
    if (!special)
      refl = T(i);
    else if (!even)
      refl = b.gen("NT" + str(i), "negate " + T(i));
    else
      refl = b.gen("TT" + str(i), "word " + T(1) + " " + T(i));
    std::string trans = b.gen("D" + str(i), "word " + refl + " " + E(i, n));
    fnames.push_back({refl, trans});
    witness(prod, "factor[" + str(static_cast<int>(f) + 1) + "]", refl + " " + trans);
    prod.subject.push_back(refl);
    prod.subject.push_back(trans);
  }
  for (std::size_t f = 1; f < rows.size(); ++f) {
    const int i0 = rows[0], i = rows[f];
    std::string g = P(i0, i);
    if (special && !even)
      g = b.gen("NP" + str(i0) + "_" + str(i), "negate " + g);
    else if (special && even)
      g = b.gen("TP" + str(i0) + "_" + str(i), "word " + T(1) + " " + g);
    if (!maps_onto(b.value(g), b.values(fnames[0]), b.values(fnames[f])))
      throw std::logic_error("builtin: factor conjugator fails");
    witness(prod, "conj[" + str(static_cast<int>(f) + 1) + "]", g);
  }
  const std::string e0 = E(rows[0], n);
  Node sub = make_node("SUBGROUP", {e0});
  witness(sub, key("word", {e0}), fnames[0][0] + " " + fnames[0][1]);
  sub.children.push_back(use("prod"));
  b.lemma("elementary", sub);
  b.lemma("prod", prod);

  Node enough = make_node("EENOUGH", elem);
  enough.children.push_back(use("elementary"));
  if (special) {
    b.cert().root = enough;
  } else {
    Node root = make_node("FINITE_INDEX", concat({elem, {T(1)}}));
    witness(root, "complement", T(1));
    param(root, "index_bound", 2);
    root.children.push_back(enough);
    b.cert().root = root;
  }
  b.cert().bound = static_cast<int>(rows.size()) - 1;
  return b.cert();
}

// ---------------------------------------------------------------------------
// Braid groups: ample duplication over sigma_1..sigma_m with rotation symmetry.

// Maximal cyclic runs of a subset of Z_m, each listed from its start.
inline std::vector<std::vector<int>> cyclic_runs(const std::vector<int>& idx, int m) {
  std::vector<char> in(m, 0);
  for (int i : idx)
    in[i] = 1;
  std::vector<std::vector<int>> runs;
  for (int i = 0; i < m; ++i)
    if (in[i] && !in[(i + m - 1) % m]) {
      std::vector<int> r;
      for (int j = i; in[j] && r.size() < static_cast<std::size_t>(m); j = (j + 1) % m)
        r.push_back(j);
      runs.push_back(r);
    }
  return runs;
}

inline Certificate braid_certificate(int m, int base) {
  CertBuilder<FA> b("braid", m);
  std::vector<std::string> s;
  for (int i = 1; i < m; ++i)
    s.push_back(b.gen("S" + str(i), "sigma " + str(i)));
  s.push_back(b.gen("S" + str(m), "sigma_m"));
  const std::string delta = b.gen("Dl", "word " + join(std::vector<std::string>(s.begin(), s.end() - 1)));
  const FA dl = b.value(delta);

  // Direction of the rotation sigma_i -> sigma_{i+1}.
  int dir = 0;
  for (int p : {1, -1})
    if (maps_onto(power(dl, p), {b.value(s[0])}, {b.value(s[1])}))
      dir = p;
  if (!dir)
    throw std::logic_error("builtin: rotation does not shift the generators");

  int d;
  if (base == 1) {
    d = m / 3 - 1;
  } else {
    const int delta_m = (m % 4 == 2 || m % 4 == 3) ? 0 : 1;
    d = 2 * (m / 4) - 1 - delta_m;
  }
  Node ample = make_node("AMPLE", s);
  param(ample, "d", d);
  param(ample, "k0", base);
  const int kmax = std::min(d + 1, m);
  for (int k = base + 1; k <= kmax; ++k)
    param(ample, "f[" + str(k) + "]", m / (k + 1));
  witness(ample, "sym[1]", delta);

  auto names = [&](const std::vector<int>& idx) {
    std::vector<std::string> out;
    for (int i : idx)
      out.push_back(s[i]);
    return out;
  };
  auto rotate = [&](unsigned mask) { return ((mask << 1) | (mask >> (m - 1))) & ((1u << m) - 1); };
  std::vector<char> seen(1u << m, 0);
  std::vector<unsigned> reps;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    int c = __builtin_popcount(mask);
    if (c < base || c > kmax || seen[mask])
      continue;
    reps.push_back(mask);
    for (unsigned x = mask; !seen[x]; x = rotate(x))
      seen[x] = 1;
  }
  std::vector<Node> base_children;
  for (unsigned mask : reps) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1)
        idx.push_back(i);
    const int k = static_cast<int>(idx.size());
    auto runs = cyclic_runs(idx, m);
    if (k == base) {
      if (base == 1) {
        Node a = make_node("ASSUME", names(idx));
        param(a, "flag", "sigma-elliptic");
        base_children.push_back(a);
      } else if (runs.size() == 1) {
        // The representative of the adjacent orbit is {sigma_1, sigma_2}.
        base_children.push_back(use("pair"));
      } else {
        // Two commuting generators, each conjugate to sigma_1.
        Node com = make_node("COMMUTE", names(idx));
        Node single = make_node("SUBGROUP", {s[0]});
        single.children.push_back(use("pair"));
        for (int i : idx) {
          if (i == 0) {
            com.children.push_back(single);
            continue;
          }
          Node conj = make_node("CONJUGATE", {s[i]});
          witness(conj, "by", power_word(delta, dir * i));
          conj.children.push_back(single);
          com.children.push_back(conj);
        }
        base_children.push_back(com);
      }
      continue;
    }
    auto subset = names(idx);
    if (runs.size() == 1) {
      std::vector<std::string> conj;
      for (int r = 0; r < m / (k + 1); ++r)
        conj.push_back(power_word(delta, dir * r * (k + 1)));
      witness(ample, key("dup", subset), join(conj, " ; "));
    } else {
      std::vector<std::string> first = names(runs[0]), rest;
      for (std::size_t r = 1; r < runs.size(); ++r)
        for (const auto& x : names(runs[r]))
          rest.push_back(x);
      witness(ample, key("split", subset), join(first) + " | " + join(rest));
    }
  }
  ample.children = base_children;
  b.cert().root = ample;
  b.cert().bound = d;
  if (base == 1) {
    b.cert().assumptions.push_back("sigma-elliptic");
  } else {
    b.cert().assumptions.push_back("b3-elliptic");
    Node pair = make_node("ASSUME", {s[0], s[1]});
    param(pair, "flag", "b3-elliptic");
    b.lemma("pair", pair);
  }
  return b.cert();
}

// ---------------------------------------------------------------------------
// D_inf wr C_d inside Aut(F_{2d}): block t carries a_t = eps_{2t} and
// b_t = rho_{2t-1,2t} eps_{2t}; c rotates the blocks.

inline Certificate wreath_certificate(int d) {
  const int n = 2 * d;
  CertBuilder<FA> b("aut-sub", n);
  const std::string a1 = b.gen("a1", "epsilon 2");
  const std::string r = b.gen("R1_2", "rho 1 2");
  const std::string b1 = b.gen("b1", "word " + r + " " + a1);
  std::vector<int> perm(n);
  for (int k = 1; k <= n; ++k)
    perm[k - 1] = (k + 1) % n + 1;
  const std::string c = b.gen("c", perm_spec(signed_perm(perm, std::vector<int>(n, 1))));
  std::vector<std::string> base_group{a1, b1};
  for (int t = 2; t <= d; ++t) {
    std::string g = power_word(c, t - 1), gi = c + "^" + str(1 - t);
    base_group.push_back(b.gen("a" + str(t), "word " + g + " " + a1 + " " + gi));
    base_group.push_back(b.gen("b" + str(t), "word " + g + " " + b1 + " " + gi));
  }
  Node boot = make_node("CONJ_BOOTSTRAP", base_group);
  param(boot, "k", 1);
  param(boot, "n", d);
  witness(boot, "base", a1 + " " + b1);
  for (int t = 1; t <= d; ++t)
    witness(boot, "conj[" + str(t) + "]", power_word(c, t - 1));
  for (const auto& x : {a1, b1}) {
    Node f = make_node("FINITE", {x});
    param(f, "order", 2);
    boot.children.push_back(f);
  }
  Node root = make_node("FINITE_INDEX", {a1, b1, c});
  witness(root, "complement", c);
  param(root, "index_bound", d);
  root.children.push_back(boot);
  b.cert().root = root;
  b.cert().bound = d - 1;
  return b.cert();
}

// ---------------------------------------------------------------------------
// Affine integer matrices of size n+1 (last coordinate 1).

inline std::string affine_spec(int n, const std::vector<std::vector<long>>& rows) {
  std::string s = "matrix";
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      s += " " + std::to_string(rows[i][j]);
  return s;
}

inline std::vector<std::vector<long>> affine_identity(int n) {
  std::vector<std::vector<long>> a(n + 1, std::vector<long>(n + 1, 0));
  for (int i = 0; i <= n; ++i)
    a[i][i] = 1;
  return a;
}

inline Certificate bieberbach_certificate(int n) {
  CertBuilder<IntegerMatrix> b("gl-sub", n + 1);
  std::vector<std::string> rs, ss, ps;
  for (int i = 0; i < n; ++i) {
    auto a = affine_identity(n);
    a[i][i] = -1;
    rs.push_back(b.gen("r" + str(i + 1), affine_spec(n, a)));
    a[i][n] = 2;
    ss.push_back(b.gen("s" + str(i + 1), affine_spec(n, a)));
  }
  for (int i = 0; i + 1 < n; ++i) {
    auto a = affine_identity(n);
    a[i][i] = a[i + 1][i + 1] = 0;
    a[i][i + 1] = a[i + 1][i] = 1;
    ps.push_back(b.gen("p" + str(i + 1), affine_spec(n, a)));
  }
  std::vector<std::string> lattice;
  for (int i = 0; i < n; ++i) {
    lattice.push_back(rs[i]);
    lattice.push_back(ss[i]);
  }
  Node boot = make_node("CONJ_BOOTSTRAP", lattice);
  param(boot, "k", 1);
  param(boot, "n", n);
  witness(boot, "base", rs[0] + " " + ss[0]);
  for (int i = 0; i < n; ++i) {
    // A product of adjacent swaps carrying coordinate 1 to coordinate i+1.
    std::vector<std::string> w;
    for (int j = i - 1; j >= 0; --j)
      w.push_back(ps[j]);
    std::string word = w.empty() ? "1" : join(w);
    std::vector<IntegerMatrix> from = b.values({rs[0], ss[0]}), to = b.values({rs[i], ss[i]});
    if (!maps_onto(b.word(word), from, to)) {
      std::reverse(w.begin(), w.end());
      word = join(w);
      if (!maps_onto(b.word(word), from, to))
        throw std::logic_error("builtin: no coordinate swap word");
    }
    witness(boot, "conj[" + str(i + 1) + "]", word);
  }
  for (const auto& x : {rs[0], ss[0]}) {
    Node f = make_node("FINITE", {x});
    param(f, "order", 2);
    boot.children.push_back(f);
  }
  if (n == 1) {
    b.cert().root = boot;
  } else {
    Node root = make_node("FINITE_INDEX", concat({lattice, ps}));
    witness(root, "complement", join(ps));
    long fact = 1;
    for (int i = 2; i <= n; ++i)
      fact *= i;
    param(root, "index_bound", fact);
    root.children.push_back(boot);
    b.cert().root = root;
  }
  b.cert().bound = n - 1;
  return b.cert();
}

// Affine Weyl group of type A_n on {x in Z^{n+1}}: s_i swaps x_i, x_{i+1}
// (1 <= i <= n); s_0 is the affine reflection swapping x_1 and x_{n+1}
// with a unit shift. Every n of the n+1 generators generate S_{n+1}.
inline Certificate simplex_certificate(int n) {
  const int dim = n + 1;
  CertBuilder<IntegerMatrix> b("gl-sub", dim + 1);
  std::vector<std::string> gens;
  {
    auto a = affine_identity(dim);
    a[0][0] = a[n][n] = 0;
    a[0][n] = 1;
    a[n][0] = 1;
    a[0][dim] = 1;
    a[n][dim] = -1;
    gens.push_back(b.gen("s0", affine_spec(dim, a)));
  }
  for (int i = 0; i < n; ++i) {
    auto a = affine_identity(dim);
    a[i][i] = a[i + 1][i + 1] = 0;
    a[i][i + 1] = a[i + 1][i] = 1;
    gens.push_back(b.gen("s" + str(i + 1), affine_spec(dim, a)));
  }
  Node delta = make_node("DELTA", gens);
  param(delta, "d", n - 1);
  for (int i = 0; i <= n; ++i)
    witness(delta, "part[" + str(i + 1) + "]", gens[i]);
  long fact = 1;
  for (int i = 2; i <= n + 1; ++i)
    fact *= i;
  for (const auto& combo : combinations(n + 1, n)) {
    std::vector<std::string> subject;
    for (int p : combo)
      subject.push_back(gens[p]);
    Node f = make_node("FINITE", subject);
    param(f, "order", fact);
    delta.children.push_back(f);
  }
  b.cert().root = delta;
  b.cert().bound = n - 1;
  return b.cert();
}

} // namespace impl

struct BuiltinFamily {
  std::string name;
  int min, max;
  std::string description;
};

inline const std::vector<BuiltinFamily>& builtin_families() {
  static const std::vector<BuiltinFamily> f{
      {"aut", 3, 12, "Aut(F_n)"},
      {"saut", 3, 12, "SAut(F_n), conditional on nielsen-elliptic or semisimple"},
      {"elliptic", 3, 12, "standard Aut(F_3) copies in Aut(F_n)"},
      {"gl", 3, 8, "GL(n,Z)"},
      {"sl", 3, 8, "SL(n,Z)"},
      {"braid", 3, 12, "B_m, conditional on sigma-elliptic"},
      {"braid2", 4, 12, "B_m, conditional on b3-elliptic"},
      {"wreath", 2, 6, "D_inf wr C_d"},
      {"bieberbach", 1, 6, "Bieberbach group Gamma_n"},
      {"simplex", 1, 6, "affine Weyl group of type A_n"},
  };
  return f;
}

struct BuiltinRef {
  std::string family;
  int param = 0;
  std::string flag; // saut only
};

// "family:param[:flag]"
inline BuiltinRef parse_builtin_ref(const std::string& text) {
  auto parts = split_on(text, ':');
  if (parts.size() < 2 || parts.size() > 3)
    throw std::invalid_argument("builtin reference must be FAMILY:PARAM, got '" + text + "'");
  BuiltinRef r;
  r.family = parts[0] == "simplex-of-groups" ? "simplex" : parts[0];
  r.param = impl::parse_int(parts[1], "builtin parameter");
  if (parts.size() == 3)
    r.flag = parts[2];
  return r;
}

inline Certificate builtin(const std::string& family, int param, const std::string& flag = "") {
  const std::string fam = family == "simplex-of-groups" ? "simplex" : family;
  const auto& fs = builtin_families();
  auto it = std::find_if(fs.begin(), fs.end(), [&](const BuiltinFamily& f) { return f.name == fam; });
  if (it == fs.end())
    throw std::invalid_argument("unknown builtin family '" + family + "'");
  if (param < it->min || param > it->max)
    throw std::out_of_range(fam + ": parameter must lie in " + std::to_string(it->min) + ".." +
                            std::to_string(it->max));
  if (!flag.empty() && fam != "saut")
    throw std::invalid_argument(fam + " takes no assumption flag");
  if (fam == "aut")
    return impl::nielsen_certificate(param, false, "");
  if (fam == "saut") {
    std::string f = flag.empty() ? "nielsen-elliptic" : flag;
    if (f != "nielsen-elliptic" && f != "semisimple")
      throw std::invalid_argument("saut: flag must be nielsen-elliptic or semisimple");
    if (f == "semisimple" && param < 4)
      throw std::out_of_range("saut: the semisimple flag needs n >= 4");
    return impl::nielsen_certificate(param, true, f);
  }
  if (fam == "elliptic")
    return impl::elliptic_certificate(param);
  if (fam == "gl" || fam == "sl")
    return impl::linear_certificate(param, fam == "sl");
  if (fam == "braid" || fam == "braid2")
    return impl::braid_certificate(param, fam == "braid" ? 1 : 2);
  if (fam == "wreath")
    return impl::wreath_certificate(param);
  if (fam == "bieberbach")
    return impl::bieberbach_certificate(param);
  return impl::simplex_certificate(param);
}

inline Certificate builtin(const BuiltinRef& r) { return builtin(r.family, r.param, r.flag); }

struct FixDimBound {
  std::string family;
  int param = 0;
  std::string group;
  bool verified = false;
  int dim_bound = 0;   // fixed point whenever dim <= dim_bound
  int fixdim = 0;      // FixDim >= fixdim
  std::set<std::string> conditions;
  std::vector<std::string> notes;
  std::string failure;

  std::string str() const {
    std::ostringstream os;
    os << family << ":" << param << " " << group << "\n";
    if (!verified) {
      os << "certificate rejected: " << failure << "\n";
      return os.str();
    }
    os << "fixed point whenever dim <= " << dim_bound;
    if (!conditions.empty()) {
      os << " assuming";
      for (const auto& c : conditions)
        os << ' ' << c;
    }
    os << "\nFixDim >= " << fixdim << (conditions.empty() ? "" : " (conditional)") << "\n";
    for (const auto& n : notes)
      os << "note: " << n << "\n";
    return os.str();
  }
};

// Certified lower bound: the builtin is checked and its bound D converted
// to FixDim >= D.
inline FixDimBound bounds(const std::string& family, int param, const std::string& flag = "") {
  Certificate c = builtin(family, param, flag);
  Verdict v = check_certificate(c);
  FixDimBound b;
  b.family = family == "simplex-of-groups" ? "simplex" : family;
  b.param = param;
  b.group = v.group;
  b.verified = v.verified;
  b.dim_bound = v.bound;
  b.fixdim = v.bound;
  b.conditions = v.conditions;
  if (!v.verified && v.failure)
    b.failure = v.failure->path + ": " + v.failure->reason;
  for (const auto& a : v.axioms)
    b.notes.push_back("rests on the cited axiom " + a);
  if (b.family == "aut") {
    const int n = param, headline = 2 * n / 3;
    if (headline != b.fixdim)
      b.notes.push_back("headline figure floor(2n/3) = " + std::to_string(headline) +
                        " differs from the certified " + std::to_string(b.fixdim) +
                        " (d < 2m with n >= 3m gives FixDim >= 2m-1 for n = 3m, 3m+1 and 2m for n = 3m+2)");
  }
  if (b.family == "simplex")
    b.notes.push_back("equality FixDim = n for the hyperbolic groups acting on these complexes is not certified here");
  return b;
}

} // namespace hellyfix

#endif
