// Checker for fixed-point certificates. Every rule stands for a geometric
// lemma that is taken on trust; what is checked is that the group-theoretic
// and arithmetic hypotheses of that lemma hold for the concrete elements.
//
// Rules (subject = the generators whose subgroup is concluded to have a
// fixed point; D = the certificate bound, "dim <= D"):
//
//   FINITE          param order        <subject> is finite of that order
//   ASSUME          param flag         declared assumption about one element
//   SUBGROUP        word[s]            subject inside the child's subgroup
//   CONJUGATE       by, word[s]        subject inside a conjugate of the child
//   COMMUTE                            children commute elementwise
//   NORM            norm[g,h,+|-]      child 2 normalizes child 1
//   FINITE_INDEX    complement, index_bound, norm[..], word[s]
//   DELTA           d, part[i]         one child per (d+1)-subset of parts; D <= d
//   PRODUCT         factor[i], conj[i] torsion factors commute; D < #factors
//   TRIPLES         part[i,j], conj[i] 3 children per factor; D < 2 #factors
//   BOOTSTRAP       k, set[i], conj[i] D < k_1 + ... + k_r
//   CONJ_BOOTSTRAP  k, n, base, conj[i]  D < n k
//   AMPLE           d, k0, f[k], sym[i], split[..], dup[..]   D <= d
//   NORM2           d, sym[i], split[..], norm2[..]           D < d
//   NIELSEN_CHAIN   shift              Niel_2..Niel_n from the column product
//   EENOUGH                            SL(n,Z) from one elementary matrix

#ifndef HELLYFIX_CHECKER_HPP_
#define HELLYFIX_CHECKER_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "automorphism.hpp"
#include "certificate.hpp"
#include "duplication.hpp"
#include "families.hpp"
#include "group.hpp"
#include "matrix.hpp"

namespace hellyfix {

struct NodeFailure {
  std::string path, rule, reason;
  bool operator==(const NodeFailure&) const = default;
};

struct Verdict {
  bool verified = false;
  std::string group;
  int bound = 0;
  std::optional<int> supported;      // tightest bound the derivation supports
  std::set<std::string> conditions;  // assumption flags the conclusion rests on
  std::set<std::string> axioms;      // cited rules whose conclusion is not machine-checked
  std::size_t nodes_checked = 0;
  std::optional<NodeFailure> failure;

  std::string statement() const {
    std::ostringstream os;
    os << group << ": fixed point whenever dim < " << bound + 1 << " (dim <= " << bound << ")";
    if (!conditions.empty()) {
      os << ", assuming";
      for (const auto& c : conditions)
        os << ' ' << c;
    }
    return os.str();
  }

  std::string report() const {
    std::ostringstream os;
    if (verified) {
      os << "Verified: " << statement() << '\n';
    } else {
      os << "Rejected";
      if (failure)
        os << " at " << failure->path << " [" << failure->rule << "]: " << failure->reason;
      os << '\n';
    }
    os << "nodes checked: " << nodes_checked << '\n';
    for (const auto& a : axioms)
      os << "axiom used: " << a << '\n';
    return os.str();
  }
};

// Outcomes of checked subtrees, keyed by a digest of everything the
// subtree's verdict depends on. Shared across checks of related
// certificates (e.g. a mutation run).
struct CheckCache {
  struct Outcome {
    bool ok = true;
    NodeFailure failure; // path relative to the cached node
    std::optional<int> limit;
    std::set<std::string> flags, axioms;
    std::size_t nodes = 0;
  };
  std::map<std::pair<std::uint64_t, std::uint64_t>, Outcome> entries;
  std::size_t hits = 0;
};

namespace impl {

inline std::pair<std::uint64_t, std::uint64_t> digest(const std::string& s) {
  std::uint64_t a = 1469598103934665603ULL, b = 0x9E3779B97F4A7C15ULL;
  for (unsigned char c : s) {
    a = (a ^ c) * 1099511628211ULL;
    b = (b + c + 1) * 0xBF58476D1CE4E5B9ULL;
    b ^= b >> 29;
  }
  return {a, b ^ s.size()};
}

struct Reject {
  std::string reason;
};

[[noreturn]] inline void reject(const std::string& reason) { throw Reject{reason}; }

inline int parse_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size())
    throw std::invalid_argument(std::string(what) + ": expected integer, got '" + s + "'");
  return v;
}

inline std::vector<int> parse_ints(const std::vector<std::string>& toks, std::size_t from,
                                   std::size_t to, const char* what) {
  std::vector<int> out;
  for (std::size_t i = from; i < to; ++i)
    out.push_back(parse_int(toks[i], what));
  return out;
}

inline std::string join_names(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v)
    s += (s.empty() ? "" : " ") + x;
  return s;
}

// k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n)
    return out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i)
    c[i] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i)
      --i;
    if (i < 0)
      break;
    ++c[i];
    for (int j = i + 1; j < k; ++j)
      c[j] = c[j - 1] + 1;
  }
  return out;
}

inline long binomial(long n, long k) {
  if (k < 0 || k > n)
    return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > 1000000)
      return r;
  }
  return r;
}

} // namespace impl

// ---------------------------------------------------------------------------
// Backends

template <class G> struct Backend;

template <> struct Backend<FreeAutomorphism> {
  using G = FreeAutomorphism;

  static bool supports(const std::string& kind) {
    return kind == "aut" || kind == "saut" || kind == "braid" || kind == "aut-sub";
  }
  static G identity(int n) { return G::identity(n); }

  // Elements named directly by a specification; nullopt for composite specs.
  static std::optional<G> primitive(const std::vector<std::string>& s, int n) {
    using impl::parse_int;
    const std::string& h = s[0];
    auto args = [&](std::size_t k) {
      if (s.size() != k + 1)
        throw std::invalid_argument(h + ": expected " + std::to_string(k) + " arguments");
    };
    if (h == "identity") {
      args(0);
      return G::identity(n);
    }
    if (h == "nielsen") {
      // nielsen lambda|rho i j [rank n]
      if (!(s.size() == 4 || (s.size() == 6 && s[4] == "rank")) || (s[1] != "lambda" && s[1] != "rho"))
        throw std::invalid_argument("nielsen: expected lambda|rho i j [rank n]");
      if (s.size() == 6 && parse_int(s[5], "rank") != n)
        throw std::invalid_argument("nielsen: rank differs from the ambient rank");
      return nielsen(s[1] == "lambda" ? NielsenKind::left : NielsenKind::right,
                     parse_int(s[2], "i"), parse_int(s[3], "j"), n);
    }
    if (h == "lambda" || h == "rho") {
      args(2);
      return nielsen(h == "lambda" ? NielsenKind::left : NielsenKind::right,
                     parse_int(s[1], "i"), parse_int(s[2], "j"), n);
    }
    if (h == "epsilon") {
      args(1);
      return epsilon(parse_int(s[1], "i"), n);
    }
    if (h == "transposition") {
      args(2);
      return transposition(parse_int(s[1], "i"), parse_int(s[2], "j"), n);
    }
    if (h == "sigma") {
      args(1);
      return braid_generator(parse_int(s[1], "i"), n);
    }
    if (h == "sigma_m") {
      args(0);
      return braid_sigma_m(n);
    }
    if (h == "perm") {
      // perm p_1 .. p_n [signs s_1 .. s_n]
      auto sig = std::find(s.begin(), s.end(), "signs");
      std::size_t pe = static_cast<std::size_t>(sig - s.begin());
      auto perm = impl::parse_ints(s, 1, pe, "perm");
      std::vector<int> signs(perm.size(), 1);
      if (sig != s.end())
        signs = impl::parse_ints(s, pe + 1, s.size(), "signs");
      if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("perm: need " + std::to_string(n) + " entries");
      return signed_perm(perm, signs);
    }
    return std::nullopt;
  }

  // Membership in the ambient group where it is decidable from the element.
  static std::optional<bool> ambient_member(const std::string& kind, const G& g) {
    if (kind == "aut")
      return true;
    if (kind == "saut")
      return in_special_aut(g);
    return std::nullopt;
  }

  static bool primitive_in_ambient(const std::string& kind, const std::vector<std::string>& s,
                                   const G& g) {
    if (auto m = ambient_member(kind, g))
      return *m;
    if (kind == "braid")
      return s[0] == "sigma" || s[0] == "sigma_m" || s[0] == "identity";
    return s[0] == "identity";
  }

  static bool has(const std::vector<G>& set, const G& x) {
    const G xi = x.inverse();
    for (const auto& y : set)
      if (y == x || y == xi)
        return true;
    return false;
  }

  static bool all_niel(const std::vector<G>& set, int n) {
    if (n < 2)
      return false;
    for (int i = 1; i <= n; ++i)
      for (const auto& x : niel_set(i, n))
        if (!has(set, x))
          return false;
    return true;
  }

  static bool column_product(const std::vector<G>& set, int n) {
    if (n < 2)
      return false;
    for (const auto& x : set)
      if (!in_column_product(x))
        return false;
    for (const auto& x : column_product_generators(n))
      if (!has(set, x))
        return false;
    return true;
  }

  // Name of the subgroup generated by a recognized standard generating set.
  static std::string recognize(const std::string& kind, const std::vector<G>& set, int n) {
    if (set.empty())
      return "";
    if (all_niel(set, n)) {
      bool special = std::all_of(set.begin(), set.end(), [](const G& g) { return in_special_aut(g); });
      return special ? "SAut(F_" + std::to_string(n) + ")" : "Aut(F_" + std::to_string(n) + ")";
    }
    if (column_product(set, n))
      return "M_" + std::to_string(n) + "(" + std::to_string(n - 1) + ") x Mbar_" +
             std::to_string(n) + "(" + std::to_string(n - 1) + ")";
    if (kind == "braid" && n >= 2) {
      bool all = true;
      for (int i = 1; i < n && all; ++i)
        all = has(set, braid_generator(i, n));
      if (all)
        return "B_" + std::to_string(n);
    }
    return "";
  }

  // Exact membership test for a recognized generating set.
  static std::optional<std::function<bool(const G&)>> oracle(const std::vector<G>& set, int n) {
    if (all_niel(set, n)) {
      if (std::all_of(set.begin(), set.end(), [](const G& g) { return in_special_aut(g); }))
        return [](const G& g) { return in_special_aut(g); };
      return [](const G&) { return true; };
    }
    if (column_product(set, n))
      return [](const G& g) { return in_column_product(g); };
    return std::nullopt;
  }
};

template <> struct Backend<IntegerMatrix> {
  using G = IntegerMatrix;

  static bool supports(const std::string& kind) {
    return kind == "gl" || kind == "sl" || kind == "gl-sub";
  }
  static G identity(int n) { return IntegerMatrix::identity(n); }

  static std::optional<G> primitive(const std::vector<std::string>& s, int n) {
    using impl::parse_int;
    const std::string& h = s[0];
    if (h == "identity") {
      if (s.size() != 1)
        throw std::invalid_argument("identity takes no arguments");
      return G::identity(n);
    }
    if (h == "elementary") {
      if (s.size() != 3)
        throw std::invalid_argument("elementary: expected i j");
      return elementary(n, parse_int(s[1], "i"), parse_int(s[2], "j"));
    }
    if (h == "diag")
      return diag_sign(n, impl::parse_ints(s, 1, s.size(), "diag"));
    if (h == "permutation") {
      auto p = impl::parse_ints(s, 1, s.size(), "permutation");
      if (static_cast<int>(p.size()) != n)
        throw std::invalid_argument("permutation: need " + std::to_string(n) + " entries");
      return permutation_matrix(p);
    }
    if (h == "matrix") {
      if (s.size() != static_cast<std::size_t>(n) * n + 1)
        throw std::invalid_argument("matrix: need " + std::to_string(n * n) + " entries");
      std::vector<BigInt> e;
      for (std::size_t i = 1; i < s.size(); ++i)
        e.emplace_back(parse_int(s[i], "entry"));
      G m(n, std::move(e));
      if (!m.unimodular())
        throw std::invalid_argument("matrix: determinant must be +1 or -1");
      return m;
    }
    return std::nullopt;
  }

  static std::optional<bool> ambient_member(const std::string& kind, const G& g) {
    if (kind == "gl")
      return g.unimodular();
    if (kind == "sl")
      return g.determinant() == 1;
    return std::nullopt;
  }

  static bool primitive_in_ambient(const std::string& kind, const std::vector<std::string>& s,
                                   const G& g) {
    if (auto m = ambient_member(kind, g))
      return *m;
    return s[0] == "identity";
  }

  static bool has(const std::vector<G>& set, const G& x) {
    const G xi = x.inverse();
    for (const auto& y : set)
      if (y == x || y == xi)
        return true;
    return false;
  }

  static bool all_elementary(const std::vector<G>& set, int n) {
    if (n < 2)
      return false;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (i != j && !has(set, elementary(n, i, j)))
          return false;
    return true;
  }

  static std::string recognize(const std::string&, const std::vector<G>& set, int n) {
    if (!all_elementary(set, n))
      return "";
    bool special = std::all_of(set.begin(), set.end(), [](const G& g) { return g.determinant() == 1; });
    return (special ? "SL(" : "GL(") + std::to_string(n) + ",Z)";
  }

  static std::optional<std::function<bool(const G&)>> oracle(const std::vector<G>& set, int n) {
    if (!all_elementary(set, n))
      return std::nullopt;
    if (std::all_of(set.begin(), set.end(), [](const G& g) { return g.determinant() == 1; }))
      return [](const G& g) { return g.determinant() == 1; };
    return [](const G& g) { return g.unimodular(); };
  }
};

// ---------------------------------------------------------------------------

template <class G> class Checker {
public:
  using B = Backend<G>;

  Checker(const Certificate& c, CheckCache* cache) : c_(c), cache_(cache), id_(B::identity(c.size > 0 ? c.size : 1)) {}

  Verdict run() {
    Verdict v;
    v.bound = c_.bound;
    try {
      load();
    } catch (const impl::Reject& r) {
      v.failure = NodeFailure{"preamble", "", r.reason};
      return v;
    } catch (const std::exception& e) {
      v.failure = NodeFailure{"preamble", "", e.what()};
      return v;
    }
    std::vector<G> root_set;
    for (const auto& s : c_.root.subject)
      if (gens_.count(s))
        root_set.push_back(gens_.at(s));
    v.group = B::recognize(c_.ambient, root_set, c_.size);
    if (v.group.empty())
      v.group = "<" + impl::join_names(c_.root.subject) + ">";
    Outcome out;
    try {
      out = check(c_.root, "root");
      for (const auto& l : c_.lemmas)
        if (!lemma_used_.count(l.name))
          throw Failure{{"lemma:" + l.name, l.node.rule, "lemma is never used"}};
      for (const auto& a : c_.assumptions)
        if (!out.flags.count(a))
          throw Failure{{"preamble", "", "assumption '" + a + "' is declared but never used"}};
      if (out.limit && *out.limit != c_.bound)
        throw Failure{{"root", c_.root.rule,
                       "claimed bound " + std::to_string(c_.bound) +
                           " does not match the derivation's bound " + std::to_string(*out.limit)}};
    } catch (const Failure& f) {
      v.failure = f.failure;
      v.nodes_checked = nodes_;
      return v;
    }
    v.verified = true;
    v.supported = out.limit;
    v.conditions = out.flags;
    v.axioms = out.axioms;
    v.nodes_checked = nodes_;
    return v;
  }

private:
  struct Outcome {
    std::optional<int> limit;
    std::set<std::string> flags, axioms;
  };
  struct Failure {
    NodeFailure failure;
  };

  // Witness and parameter access with use tracking.
  struct Ctx {
    const Node& n;
    std::set<std::string> used_w, used_p;
    Outcome out;

    const std::string* w(const std::string& key) {
      auto* e = n.witness(key);
      if (!e)
        return nullptr;
      used_w.insert(key);
      return &e->value;
    }
    const std::string& need_w(const std::string& key) {
      auto* v = w(key);
      if (!v)
        impl::reject("missing witness " + key);
      return *v;
    }
    const std::string* p(const std::string& key) {
      auto* e = n.param(key);
      if (!e)
        return nullptr;
      used_p.insert(key);
      return &e->value;
    }
    int need_int(const std::string& key) {
      auto* v = p(key);
      if (!v)
        impl::reject("missing param " + key);
      try {
        return impl::parse_int(*v, key.c_str());
      } catch (const std::invalid_argument& e) {
        impl::reject(e.what());
      }
    }
    void limit(int l) { out.limit = out.limit ? std::min(*out.limit, l) : l; }
    void finish() {
      for (const auto& e : n.witnesses)
        if (!used_w.count(e.key))
          impl::reject("unused witness " + e.key);
      for (const auto& e : n.params)
        if (!used_p.count(e.key))
          impl::reject("unknown param " + e.key);
      std::set<std::string> seen;
      for (const auto& e : n.witnesses)
        if (!seen.insert("w" + e.key).second)
          impl::reject("duplicate witness " + e.key);
      for (const auto& e : n.params)
        if (!seen.insert("p" + e.key).second)
          impl::reject("duplicate param " + e.key);
    }
  };

  // ---- preamble

  void load() {
    if (!B::supports(c_.ambient))
      impl::reject("ambient kind '" + c_.ambient + "' does not fit this backend");
    if (c_.size < 1 || c_.size > 64)
      impl::reject("ambient size out of range");
    if (c_.bound < 0)
      impl::reject("bound must be nonnegative");
    std::set<std::string> root_names(c_.root.subject.begin(), c_.root.subject.end());
    const bool sub = c_.ambient.size() > 4 && c_.ambient.substr(c_.ambient.size() - 4) == "-sub";
    for (const auto& g : c_.gens) {
      const auto& s = g.spec;
      G value = id_;
      bool valid = false;
      try {
        if (s[0] == "word") {
          std::vector<std::string> rest(s.begin() + 1, s.end());
          value = eval_word(impl::join_names(rest), true);
          if (auto m = B::ambient_member(c_.ambient, value)) {
            valid = *m;
          } else {
            valid = true;
            for (const auto& l : parse_word(impl::join_names(rest)))
              valid = valid && valid_.at(l.name);
          }
        } else if (s[0] == "negate") {
          if constexpr (std::is_same_v<G, IntegerMatrix>) {
            if (s.size() != 2)
              throw std::invalid_argument("negate: expected one generator name");
            value = negate(raw(s[1]));
            valid = B::primitive_in_ambient(c_.ambient, s, value);
          } else {
            throw std::invalid_argument("negate is not available for automorphisms");
          }
        } else if (auto p = B::primitive(s, c_.size)) {
          value = *p;
          valid = B::primitive_in_ambient(c_.ambient, s, value);
        } else {
          throw std::invalid_argument("unknown generator specification '" + s[0] + "'");
        }
      } catch (const impl::Reject& r) {
        impl::reject("gen " + g.name + ": " + r.reason);
      } catch (const std::exception& e) {
        impl::reject("gen " + g.name + ": " + e.what());
      }
      if (sub && root_names.count(g.name))
        valid = true;
      gens_.emplace(g.name, value);
      valid_[g.name] = valid;
    }
    header_ = print_header(c_);
    for (const auto& l : c_.lemmas)
      lemma_text_[l.name] = print_node(l.node);
  }

  const G& raw(const std::string& name) const {
    auto it = gens_.find(name);
    if (it == gens_.end())
      impl::reject("unknown generator " + name);
    return it->second;
  }

  // Generators entering the derivation must lie in the ambient group;
  // helpers used only inside other declarations need not.
  const G& gen(const std::string& name) const {
    const G& g = raw(name);
    if (!valid_.at(name))
      impl::reject("generator " + name + " does not lie in the ambient group");
    return g;
  }

  std::vector<G> elements(const std::vector<std::string>& names) const {
    std::vector<G> out;
    for (const auto& n : names)
      out.push_back(gen(n));
    return out;
  }

  G eval_word(const std::string& text, bool helpers = false) const {
    std::vector<WordLetter> letters;
    try {
      letters = parse_word(text);
    } catch (const std::invalid_argument& e) {
      impl::reject(e.what());
    }
    G r = id_;
    for (const auto& l : letters) {
      if (std::abs(l.exponent) > 10000)
        impl::reject("exponent too large in " + text);
      const G& g = helpers ? raw(l.name) : gen(l.name);
      G step = l.exponent >= 0 ? g : g.inverse();
      for (int k = 0; k < std::abs(l.exponent); ++k)
        r = r * step;
    }
    return r;
  }

  // Word restricted to an allowed set of letters.
  G eval_word_over(const std::string& text, const std::set<std::string>& allowed) const {
    try {
      for (const auto& l : parse_word(text))
        if (!allowed.count(l.name))
          impl::reject("witness word uses " + l.name + " outside the permitted generators");
    } catch (const std::invalid_argument& e) {
      impl::reject(e.what());
    }
    return eval_word(text);
  }

  static bool eq_inv(const G& a, const G& b) { return a == b || a == b.inverse(); }

  static std::optional<std::size_t> find_inv(const G& x, const std::vector<G>& set) {
    const G xi = x.inverse();
    for (std::size_t i = 0; i < set.size(); ++i)
      if (set[i] == x || set[i] == xi)
        return i;
    return std::nullopt;
  }

  std::optional<std::function<bool(const G&)>> oracle_for(const std::vector<std::string>& names) {
    std::string key = impl::join_names(names);
    auto it = oracles_.find(key);
    if (it == oracles_.end())
      it = oracles_.emplace(key, B::oracle(elements(names), c_.size)).first;
    return it->second;
  }

  // x in <T>: literally, by a recognized membership test, or by a word
  // witness over T under the given key.
  bool in_subgroup(Ctx& ctx, const G& x, const std::vector<std::string>& t_names,
                   const std::vector<G>& t, const std::string& key) {
    if (x.is_identity() || find_inv(x, t))
      return true;
    if (auto o = oracle_for(t_names))
      return (*o)(x);
    if (key.empty())
      return false;
    auto* wv = ctx.w(key);
    if (!wv)
      return false;
    return eval_word_over(*wv, std::set<std::string>(t_names.begin(), t_names.end())) == x;
  }

  const Node& resolve(const Node& n) const {
    if (!n.is_ref())
      return n;
    const Lemma* l = c_.lemma(n.ref);
    if (!l)
      impl::reject("reference to unknown lemma " + n.ref);
    return l->node;
  }

  std::vector<std::string> child_subject(const Node& child) const { return resolve(child).subject; }

  static std::set<std::string> name_set(const std::vector<std::string>& v) {
    return std::set<std::string>(v.begin(), v.end());
  }

  void require_subject_within(Ctx& ctx, const std::vector<G>& pool,
                              const std::vector<std::string>& pool_names, bool allow_words,
                              const G* conj = nullptr) {
    for (const auto& s : ctx.n.subject) {
      const G& x = gen(s);
      if (find_inv(x, pool))
        continue;
      if (allow_words) {
        if (auto* wv = ctx.w("word[" + s + "]")) {
          G y = eval_word_over(*wv, name_set(pool_names));
          if (conj)
            y = conjugate(*conj, y);
          if (y == x)
            continue;
          impl::reject("word[" + s + "] does not evaluate to " + s);
        }
      }
      impl::reject("subject " + s + " is not covered by the premises");
    }
  }

  // Indexed witnesses name[1], name[2], ... up to the first gap.
  static int count_indexed(const Node& n, const std::string& name, int first = 1) {
    int k = first;
    while (n.witness(name + "[" + std::to_string(k) + "]"))
      ++k;
    return k - first;
  }

  // Dependency-closed digest of a subtree.
  void collect_refs(const Node& n, std::set<std::string>& refs, int depth = 0) const {
    if (depth > 64)
      impl::reject("lemma references nest too deeply");
    for (const auto& ch : n.children) {
      if (ch.is_ref()) {
        if (refs.insert(ch.ref).second)
          if (const Lemma* l = c_.lemma(ch.ref))
            collect_refs(l->node, refs, depth + 1);
      } else {
        collect_refs(ch, refs, depth);
      }
    }
  }

  std::pair<std::uint64_t, std::uint64_t> key_of(const Node& n, std::set<std::string>& refs) const {
    collect_refs(n, refs);
    std::string k = header_ + "\n@" + print_node(n);
    for (const auto& r : refs) {
      auto it = lemma_text_.find(r);
      k += "\n#" + r + "\n" + (it == lemma_text_.end() ? std::string("?") : it->second);
    }
    return impl::digest(k);
  }

  // ---- traversal

  Outcome check(const Node& n, const std::string& path) {
    if (n.is_ref()) {
      const Lemma* l = c_.lemma(n.ref);
      if (!l)
        throw Failure{{path, "use", "reference to unknown lemma " + n.ref}};
      lemma_used_.insert(n.ref);
      auto it = lemma_done_.find(n.ref);
      if (it != lemma_done_.end())
        return it->second;
      if (!lemma_active_.insert(n.ref).second)
        throw Failure{{path, "use", "cyclic lemma reference " + n.ref}};
      Outcome o = check(l->node, "lemma:" + n.ref);
      lemma_active_.erase(n.ref);
      lemma_done_[n.ref] = o;
      return o;
    }
    std::pair<std::uint64_t, std::uint64_t> key{};
    if (cache_) {
      std::set<std::string> refs;
      try {
        key = key_of(n, refs);
      } catch (const impl::Reject& r) {
        throw Failure{{path, n.rule, r.reason}};
      }
      auto it = cache_->entries.find(key);
      if (it != cache_->entries.end()) {
        ++cache_->hits;
        lemma_used_.insert(refs.begin(), refs.end());
        const auto& e = it->second;
        nodes_ += e.nodes;
        if (!e.ok)
          throw Failure{{path + e.failure.path, e.failure.rule, e.failure.reason}};
        return Outcome{e.limit, e.flags, e.axioms};
      }
    }
    const std::size_t before = nodes_;
    try {
      Outcome o = check_uncached(n, path);
      if (cache_)
        cache_->entries[key] = {true, {}, o.limit, o.flags, o.axioms, nodes_ - before};
      return o;
    } catch (const Failure& f) {
      if (cache_ && f.failure.path.rfind(path, 0) == 0 && f.failure.path.find("lemma:") == std::string::npos) {
        CheckCache::Outcome e;
        e.ok = false;
        e.failure = {f.failure.path.substr(path.size()), f.failure.rule, f.failure.reason};
        e.nodes = nodes_ - before;
        cache_->entries[key] = e;
      }
      throw;
    }
  }

  Outcome check_uncached(const Node& n, const std::string& path) {
    ++nodes_;
    Ctx ctx{n, {}, {}, {}};
    try {
      for (const auto& s : n.subject)
        gen(s);
      apply_rule(ctx, path);
      ctx.finish();
    } catch (const impl::Reject& r) {
      throw Failure{{path, n.rule, r.reason}};
    } catch (const std::exception& e) {
      throw Failure{{path, n.rule, std::string("backend error: ") + e.what()}};
    }
    // Children after the node's own side conditions; results merge upward.
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      Outcome co = check(n.children[i], path + "/" + std::to_string(i));
      if (co.limit)
        ctx.limit(*co.limit);
      ctx.out.flags.insert(co.flags.begin(), co.flags.end());
      ctx.out.axioms.insert(co.axioms.begin(), co.axioms.end());
    }
    return ctx.out;
  }

  void need_children(const Node& n, std::size_t k) {
    if (n.children.size() != k)
      impl::reject("expected " + std::to_string(k) + " premise(s), found " +
                   std::to_string(n.children.size()));
  }

  void dimension(Ctx& ctx, int limit, const std::string& why) {
    if (c_.bound > limit)
      impl::reject("bound " + std::to_string(c_.bound) + " exceeds " + why + " = " +
                   std::to_string(limit));
    ctx.limit(limit);
  }

  void apply_rule(Ctx& ctx, const std::string& path) {
    const std::string& r = ctx.n.rule;
    if (r == "FINITE")
      rule_finite(ctx);
    else if (r == "ASSUME")
      rule_assume(ctx);
    else if (r == "SUBGROUP" || r == "CONJUGATE")
      rule_conjugate(ctx);
    else if (r == "COMMUTE")
      rule_commute(ctx);
    else if (r == "NORM")
      rule_norm(ctx);
    else if (r == "FINITE_INDEX")
      rule_finite_index(ctx);
    else if (r == "DELTA")
      rule_delta(ctx);
    else if (r == "PRODUCT")
      rule_product(ctx);
    else if (r == "TRIPLES")
      rule_triples(ctx);
    else if (r == "BOOTSTRAP")
      rule_bootstrap(ctx);
    else if (r == "CONJ_BOOTSTRAP")
      rule_conj_bootstrap(ctx);
    else if (r == "AMPLE")
      rule_ample(ctx);
    else if (r == "NORM2")
      rule_norm2(ctx);
    else if (r == "NIELSEN_CHAIN")
      rule_nielsen_chain(ctx);
    else if (r == "EENOUGH")
      rule_eenough(ctx);
    else
      impl::reject("unknown rule '" + r + "' at " + path);
  }

  // ---- rules

  void rule_finite(Ctx& ctx) {
    need_children(ctx.n, 0);
    int order = ctx.need_int("order");
    if (order < 1)
      impl::reject("order must be positive");
    if (ctx.n.subject.empty())
      impl::reject("empty subject");
    auto set = elements(ctx.n.subject);
    auto res = closure_enumerate<G>(std::span<const G>(set), static_cast<std::size_t>(order));
    if (std::holds_alternative<CapExceeded>(res))
      impl::reject("closure exceeds the declared order " + std::to_string(order));
    auto got = std::get<FiniteClosure<G>>(res).order();
    if (got != static_cast<std::size_t>(order))
      impl::reject("closure has order " + std::to_string(got) + ", declared " + std::to_string(order));
  }

  void rule_assume(Ctx& ctx) {
    need_children(ctx.n, 0);
    auto* flag = ctx.p("flag");
    if (!flag)
      impl::reject("missing param flag");
    if (std::find(c_.assumptions.begin(), c_.assumptions.end(), *flag) == c_.assumptions.end())
      impl::reject("flag '" + *flag + "' is not declared in the preamble");
    const auto& subj = ctx.n.subject;
    if constexpr (std::is_same_v<G, FreeAutomorphism>) {
      const int n = c_.size;
      if (*flag == "nielsen-elliptic" || *flag == "semisimple") {
        if (c_.ambient != "aut" && c_.ambient != "saut")
          impl::reject(*flag + " applies to Aut(F_n) and SAut(F_n) actions");
        if (*flag == "semisimple" && n < 4)
          impl::reject("semisimple forces Nielsen transformations to be elliptic only for n >= 4");
        if (subj.size() != 1)
          impl::reject(*flag + " concerns a single Nielsen transformation");
        const G& x = gen(subj[0]);
        for (int i = 1; i <= n; ++i)
          for (int j = 1; j <= n; ++j)
            if (i != j && (eq_inv(x, lambda(i, j, n)) || eq_inv(x, rho(i, j, n)))) {
              ctx.out.flags.insert(*flag);
              return;
            }
        impl::reject(subj[0] + " is not a Nielsen transformation");
      }
      if (*flag == "sigma-elliptic" || *flag == "b3-elliptic") {
        if (c_.ambient != "braid")
          impl::reject(*flag + " applies to braid group actions");
        auto gens = cyclic_braid_generators(n);
        std::vector<int> idx;
        for (const auto& s : subj) {
          auto i = find_inv(gen(s), gens);
          if (!i)
            impl::reject(s + " is not a braid generator");
          idx.push_back(static_cast<int>(*i));
        }
        if (*flag == "sigma-elliptic" && idx.size() != 1)
          impl::reject("sigma-elliptic concerns a single generator");
        if (*flag == "b3-elliptic") {
          std::sort(idx.begin(), idx.end());
          if (idx.size() != 2 || idx[1] != idx[0] + 1 || idx[1] > n - 2)
            impl::reject("b3-elliptic concerns a pair sigma_i, sigma_{i+1} with i+1 <= m-1");
        }
        ctx.out.flags.insert(*flag);
        return;
      }
    }
    impl::reject("flag '" + *flag + "' does not apply here");
  }

  void rule_conjugate(Ctx& ctx) {
    need_children(ctx.n, 1);
    const bool conj = ctx.n.rule == "CONJUGATE";
    G g = id_;
    if (conj)
      g = eval_word(ctx.need_w("by"));
    auto t_names = child_subject(ctx.n.children[0]);
    auto t = elements(t_names);
    std::vector<G> image;
    for (const auto& x : t)
      image.push_back(conjugate(g, x));
    require_subject_within(ctx, image, t_names, true, conj ? &g : nullptr);
  }

  void rule_commute(Ctx& ctx) {
    if (ctx.n.children.size() < 2)
      impl::reject("COMMUTE needs at least two premises");
    std::vector<std::vector<G>> sets;
    std::vector<std::vector<std::string>> names;
    std::vector<G> pool;
    for (const auto& ch : ctx.n.children) {
      names.push_back(child_subject(ch));
      sets.push_back(elements(names.back()));
      pool.insert(pool.end(), sets.back().begin(), sets.back().end());
    }
    auto rep = pairwise_commuting(sets);
    if (!rep.ok)
      impl::reject(names[rep.violation->set_a][rep.violation->index_a] + " and " +
                   names[rep.violation->set_b][rep.violation->index_b] + " do not commute");
    require_subject_within(ctx, pool, {}, false);
  }

  void check_normalizes(Ctx& ctx, const std::vector<std::string>& outer_names,
                        const std::vector<std::string>& inner_names) {
    auto outer = elements(outer_names);
    auto inner = elements(inner_names);
    for (std::size_t i = 0; i < outer.size(); ++i)
      for (std::size_t j = 0; j < inner.size(); ++j)
        for (int sign : {1, -1}) {
          G g = sign > 0 ? outer[i] : outer[i].inverse();
          G x = conjugate(g, inner[j]);
          std::string key = "norm[" + outer_names[i] + "," + inner_names[j] + "," +
                            (sign > 0 ? "+" : "-") + "]";
          if (!in_subgroup(ctx, x, inner_names, inner, key))
            impl::reject(outer_names[i] + (sign > 0 ? "" : "^-1") + " does not conjugate " +
                         inner_names[j] + " into the normalized subgroup");
        }
  }

  void rule_norm(Ctx& ctx) {
    need_children(ctx.n, 2);
    auto h1 = child_subject(ctx.n.children[0]);
    auto h2 = child_subject(ctx.n.children[1]);
    check_normalizes(ctx, h2, h1);
    auto pool = elements(h1);
    auto p2 = elements(h2);
    pool.insert(pool.end(), p2.begin(), p2.end());
    require_subject_within(ctx, pool, {}, false);
  }

  void rule_finite_index(Ctx& ctx) {
    need_children(ctx.n, 1);
    auto t_names = child_subject(ctx.n.children[0]);
    auto c_names = split_names(ctx.need_w("complement"));
    if (c_names.empty())
      impl::reject("empty complement");
    int bound = ctx.need_int("index_bound");
    if (bound < 1)
      impl::reject("index_bound must be positive");
    auto cs = elements(c_names);
    auto res = closure_enumerate<G>(std::span<const G>(cs), static_cast<std::size_t>(bound));
    if (std::holds_alternative<CapExceeded>(res))
      impl::reject("complement generates a group larger than index_bound");
    auto order = std::get<FiniteClosure<G>>(res).order();
    if (order != static_cast<std::size_t>(bound))
      impl::reject("complement generates a group of order " + std::to_string(order) +
                   ", declared " + std::to_string(bound));
    check_normalizes(ctx, c_names, t_names);
    auto pool = elements(t_names);
    pool.insert(pool.end(), cs.begin(), cs.end());
    auto pool_names = t_names;
    pool_names.insert(pool_names.end(), c_names.begin(), c_names.end());
    require_subject_within(ctx, pool, pool_names, true);
  }

  std::vector<std::vector<std::string>> indexed_lists(Ctx& ctx, const std::string& name, int count) {
    std::vector<std::vector<std::string>> out;
    for (int i = 1; i <= count; ++i) {
      auto v = split_names(ctx.need_w(name + "[" + std::to_string(i) + "]"));
      if (v.empty())
        impl::reject(name + "[" + std::to_string(i) + "] is empty");
      out.push_back(std::move(v));
    }
    return out;
  }

  void rule_delta(Ctx& ctx) {
    int d = ctx.need_int("d");
    if (d < 0)
      impl::reject("d must be nonnegative");
    int parts_n = count_indexed(ctx.n, "part");
    auto parts = indexed_lists(ctx, "part", parts_n);
    if (parts_n < d + 1)
      impl::reject("need at least d+1 parts");
    long expected = impl::binomial(parts_n, d + 1);
    if (expected > 20000)
      impl::reject("too many (d+1)-subsets");
    if (static_cast<long>(ctx.n.children.size()) != expected)
      impl::reject("expected " + std::to_string(expected) + " premises, one per (d+1)-subset of parts");
    auto combos = impl::combinations(parts_n, d + 1);
    for (std::size_t i = 0; i < combos.size(); ++i) {
      std::set<std::string> want;
      for (int p : combos[i])
        want.insert(parts[p].begin(), parts[p].end());
      if (name_set(child_subject(ctx.n.children[i])) != want)
        impl::reject("premise " + std::to_string(i) + " does not match the union of its parts");
    }
    std::vector<std::string> all;
    for (const auto& p : parts)
      all.insert(all.end(), p.begin(), p.end());
    require_subject_within(ctx, elements(all), {}, false);
    dimension(ctx, d, "d");
  }

  // Elementwise conjugation of one list onto another, up to inverses.
  void check_conjugates_onto(const G& g, const std::vector<G>& from, const std::vector<G>& to,
                             const std::string& what) {
    if (from.size() != to.size())
      impl::reject(what + ": sizes differ");
    for (std::size_t j = 0; j < from.size(); ++j)
      if (!eq_inv(conjugate(g, from[j]), to[j]))
        impl::reject(what + " does not conjugate entry " + std::to_string(j + 1) + " correctly");
  }

  void rule_product(Ctx& ctx) {
    need_children(ctx.n, 0);
    int r = count_indexed(ctx.n, "factor");
    if (r < 1)
      impl::reject("no factors");
    auto names = indexed_lists(ctx, "factor", r);
    std::vector<std::vector<G>> factors;
    std::vector<G> pool;
    for (const auto& f : names) {
      factors.push_back(elements(f));
      for (std::size_t j = 0; j < f.size(); ++j)
        if (!element_order(factors.back()[j], 1000))
          impl::reject(f[j] + " has no finite order below 1000");
      pool.insert(pool.end(), factors.back().begin(), factors.back().end());
    }
    auto rep = pairwise_commuting(factors);
    if (!rep.ok)
      impl::reject("factors " + std::to_string(rep.violation->set_a + 1) + " and " +
                   std::to_string(rep.violation->set_b + 1) + " do not commute");
    // The conclusion "some factor has a fixed point" transfers to all
    // factors once each is a conjugate of the first.
    for (int i = 2; i <= r; ++i)
      check_conjugates_onto(eval_word(ctx.need_w("conj[" + std::to_string(i) + "]")), factors[0],
                            factors[i - 1], "conj[" + std::to_string(i) + "]");
    require_subject_within(ctx, pool, {}, false);
    dimension(ctx, r - 1, "#factors - 1");
  }

  void rule_triples(Ctx& ctx) {
    int r = 0;
    while (ctx.n.witness("part[" + std::to_string(r + 1) + ",1]"))
      ++r;
    if (r < 1)
      impl::reject("no factors");
    std::vector<std::array<std::vector<std::string>, 3>> parts(r);
    std::vector<std::vector<G>> factors(r);
    std::vector<G> pool;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < 3; ++j) {
        auto v = split_names(ctx.need_w("part[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]"));
        if (v.empty())
          impl::reject("empty part");
        parts[i][j] = v;
        auto e = elements(v);
        factors[i].insert(factors[i].end(), e.begin(), e.end());
      }
    for (const auto& f : factors)
      pool.insert(pool.end(), f.begin(), f.end());
    auto rep = pairwise_commuting(factors);
    if (!rep.ok)
      impl::reject("factors " + std::to_string(rep.violation->set_a + 1) + " and " +
                   std::to_string(rep.violation->set_b + 1) + " do not commute");
    for (int i = 2; i <= r; ++i)
      check_conjugates_onto(eval_word(ctx.need_w("conj[" + std::to_string(i) + "]")), factors[0],
                            factors[i - 1], "conj[" + std::to_string(i) + "]");
    need_children(ctx.n, static_cast<std::size_t>(3 * r));
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int i = 0; i < r; ++i)
      for (int p = 0; p < 3; ++p) {
        std::set<std::string> want(parts[i][pairs[p][0]].begin(), parts[i][pairs[p][0]].end());
        want.insert(parts[i][pairs[p][1]].begin(), parts[i][pairs[p][1]].end());
        if (name_set(child_subject(ctx.n.children[3 * i + p])) != want)
          impl::reject("premise " + std::to_string(3 * i + p) + " does not match its pair of parts");
      }
    require_subject_within(ctx, pool, {}, false);
    dimension(ctx, 2 * r - 1, "2 #factors - 1");
  }

  // Premises for every k-subset of each listed set, in order.
  void check_subset_premises(Ctx& ctx, const std::vector<std::vector<std::string>>& sets,
                             const std::vector<int>& ks, std::size_t first_child) {
    std::size_t c = first_child;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      long cnt = impl::binomial(static_cast<long>(sets[i].size()), ks[i]);
      if (cnt > 20000)
        impl::reject("too many subsets");
      for (const auto& combo : impl::combinations(static_cast<int>(sets[i].size()), ks[i])) {
        if (c >= ctx.n.children.size())
          impl::reject("missing premises for subsets");
        std::set<std::string> want;
        for (int x : combo)
          want.insert(sets[i][x]);
        if (name_set(child_subject(ctx.n.children[c])) != want)
          impl::reject("premise " + std::to_string(c) + " does not match its subset");
        ++c;
      }
    }
    if (c != ctx.n.children.size())
      impl::reject("unexpected extra premises");
  }

  void rule_bootstrap(Ctx& ctx) {
    auto* kv = ctx.p("k");
    if (!kv)
      impl::reject("missing param k");
    std::vector<int> ks;
    try {
      ks = impl::parse_ints(split_names(*kv), 0, split_names(*kv).size(), "k");
    } catch (const std::invalid_argument& e) {
      impl::reject(e.what());
    }
    const int r = static_cast<int>(ks.size());
    if (r < 1)
      impl::reject("empty k list");
    auto names = indexed_lists(ctx, "set", r);
    std::vector<std::vector<G>> sets;
    std::vector<G> pool;
    int sum = 0;
    for (int i = 0; i < r; ++i) {
      if (ks[i] < 1 || ks[i] > static_cast<int>(names[i].size()))
        impl::reject("k_" + std::to_string(i + 1) + " out of range");
      sum += ks[i];
      sets.push_back(elements(names[i]));
      pool.insert(pool.end(), sets.back().begin(), sets.back().end());
    }
    auto rep = pairwise_commuting(sets);
    if (!rep.ok)
      impl::reject("sets " + std::to_string(rep.violation->set_a + 1) + " and " +
                   std::to_string(rep.violation->set_b + 1) + " do not commute");
    for (int i = 2; i <= r; ++i)
      check_conjugates_onto(eval_word(ctx.need_w("conj[" + std::to_string(i) + "]")), sets[0],
                            sets[i - 1], "conj[" + std::to_string(i) + "]");
    check_subset_premises(ctx, names, ks, 0);
    require_subject_within(ctx, pool, {}, false);
    dimension(ctx, sum - 1, "k_1 + ... + k_r - 1");
  }

  void rule_conj_bootstrap(Ctx& ctx) {
    int k = ctx.need_int("k");
    int copies = ctx.need_int("n");
    auto base = split_names(ctx.need_w("base"));
    if (k < 1 || k > static_cast<int>(base.size()))
      impl::reject("k out of range");
    if (copies < 1)
      impl::reject("n must be positive");
    auto s = elements(base);
    std::vector<std::vector<G>> conj_sets;
    std::vector<G> pool = s;
    for (int i = 1; i <= copies; ++i) {
      G g = eval_word(ctx.need_w("conj[" + std::to_string(i) + "]"));
      std::vector<G> si;
      for (const auto& x : s)
        si.push_back(conjugate(g, x));
      pool.insert(pool.end(), si.begin(), si.end());
      conj_sets.push_back(std::move(si));
    }
    if (ctx.n.witness("conj[" + std::to_string(copies + 1) + "]"))
      impl::reject("more conjugators than n");
    auto rep = pairwise_commuting(conj_sets);
    if (!rep.ok)
      impl::reject("conjugates " + std::to_string(rep.violation->set_a + 1) + " and " +
                   std::to_string(rep.violation->set_b + 1) + " do not commute (" +
                   base[rep.violation->index_a] + ", " + base[rep.violation->index_b] + ")");
    check_subset_premises(ctx, {base}, {k}, 0);
    require_subject_within(ctx, pool, {}, false);
    dimension(ctx, copies * k - 1, "n k - 1");
  }

  // ---- symmetry orbits for AMPLE and NORM2

  struct Orbits {
    int n = 0;
    std::vector<std::vector<int>> perms;
    std::vector<int> orbit_of; // per mask; -1 when not enumerated
    std::vector<std::uint32_t> rep; // first mask of each orbit
  };

  Orbits symmetry(Ctx& ctx, const std::vector<G>& a, int lo, int hi) {
    Orbits o;
    o.n = static_cast<int>(a.size());
    if (o.n > 20)
      impl::reject("generating set too large for orbit enumeration");
    int syms = count_indexed(ctx.n, "sym");
    for (int s = 1; s <= syms; ++s) {
      G g = eval_word(ctx.need_w("sym[" + std::to_string(s) + "]"));
      std::vector<int> p(o.n);
      std::vector<char> hit(o.n, 0);
      for (int i = 0; i < o.n; ++i) {
        auto j = find_inv(conjugate(g, a[i]), a);
        if (!j || hit[*j])
          impl::reject("sym[" + std::to_string(s) + "] does not permute the generating set");
        p[i] = static_cast<int>(*j);
        hit[*j] = 1;
      }
      o.perms.push_back(std::move(p));
    }
    o.orbit_of.assign(std::size_t{1} << o.n, -1);
    auto apply = [&](const std::vector<int>& p, std::uint32_t m) {
      std::uint32_t r = 0;
      for (int i = 0; i < o.n; ++i)
        if (m >> i & 1)
          r |= 1u << p[i];
      return r;
    };
    for (std::uint32_t m = 0; m < (1u << o.n); ++m) {
      int c = __builtin_popcount(m);
      if (c < lo || c > hi || o.orbit_of[m] != -1)
        continue;
      int id = static_cast<int>(o.rep.size());
      o.rep.push_back(m);
      std::vector<std::uint32_t> queue{m};
      o.orbit_of[m] = id;
      for (std::size_t q = 0; q < queue.size(); ++q)
        for (const auto& p : o.perms) {
          std::uint32_t x = apply(p, queue[q]);
          if (o.orbit_of[x] == -1) {
            o.orbit_of[x] = id;
            queue.push_back(x);
          }
        }
    }
    return o;
  }

  std::uint32_t mask_of(const std::vector<std::string>& names, const std::vector<std::string>& a) {
    std::uint32_t m = 0;
    for (const auto& s : names) {
      auto it = std::find(a.begin(), a.end(), s);
      if (it == a.end())
        impl::reject(s + " is not in the generating set");
      std::uint32_t bit = 1u << (it - a.begin());
      if (m & bit)
        impl::reject("repeated generator " + s);
      m |= bit;
    }
    return m;
  }

  std::vector<std::string> names_of(std::uint32_t m, const std::vector<std::string>& a) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (m >> i & 1)
        out.push_back(a[i]);
    return out;
  }

  // "S1 | S2" with <S1> normalizing <S2>; returns false if malformed.
  void check_split(Ctx& ctx, const std::string& value, std::uint32_t mask, const std::vector<std::string>& a) {
    auto halves = split_on(value, '|');
    if (halves.size() != 2)
      impl::reject("split witness needs exactly one '|'");
    auto s1 = split_names(halves[0]), s2 = split_names(halves[1]);
    if (s1.empty() || s2.empty())
      impl::reject("split parts must be nonempty");
    std::uint32_t m1 = mask_of(s1, a), m2 = mask_of(s2, a);
    if ((m1 & m2) || (m1 | m2) != mask)
      impl::reject("split parts do not partition the subset");
    check_normalizes(ctx, s1, s2);
  }

  // "g_1 ; g_2 ; ..." conjugators of <S> whose images pairwise commute.
  std::size_t check_dup(const std::string& value, const std::vector<G>& s) {
    std::vector<std::vector<G>> images;
    for (const auto& w : split_on(value, ';')) {
      G g = eval_word(w);
      std::vector<G> img;
      for (const auto& x : s)
        img.push_back(conjugate(g, x));
      images.push_back(std::move(img));
    }
    auto rep = pairwise_commuting(images);
    if (!rep.ok)
      impl::reject("conjugates " + std::to_string(rep.violation->set_a + 1) + " and " +
                   std::to_string(rep.violation->set_b + 1) + " do not commute");
    return images.size();
  }

  // Every orbit of subsets with size in (lo_excl, hi] carries exactly one
  // witness among the given prefixes; calls f on each.
  void cover_orbits(Ctx& ctx, const Orbits& o, const std::vector<std::string>& a, int lo_excl, int hi,
                    const std::vector<std::string>& prefixes,
                    const std::function<void(const std::string&, const std::string&, std::uint32_t)>& f) {
    std::vector<char> covered(o.rep.size(), 0);
    for (const auto& e : ctx.n.witnesses) {
      auto [name, idx] = split_key(e.key);
      if (std::find(prefixes.begin(), prefixes.end(), name) == prefixes.end())
        continue;
      ctx.used_w.insert(e.key);
      std::uint32_t m = mask_of(idx, a);
      int c = __builtin_popcount(m);
      if (c <= lo_excl || c > hi)
        impl::reject(e.key + ": subset size outside the required range");
      int id = o.orbit_of[m];
      if (covered[id])
        impl::reject(e.key + ": orbit already has a witness");
      covered[id] = 1;
      f(name, e.value, m);
    }
    for (std::size_t id = 0; id < o.rep.size(); ++id) {
      int c = __builtin_popcount(o.rep[id]);
      if (c > lo_excl && c <= hi && !covered[id])
        impl::reject("no witness for the orbit of {" + impl::join_names(names_of(o.rep[id], a)) + "}");
    }
  }

  // Premises cover each orbit of size-k0 subsets exactly once.
  void cover_base(Ctx& ctx, const Orbits& o, const std::vector<std::string>& a, int k0) {
    std::vector<char> covered(o.rep.size(), 0);
    for (std::size_t i = 0; i < ctx.n.children.size(); ++i) {
      std::uint32_t m = mask_of(child_subject(ctx.n.children[i]), a);
      if (__builtin_popcount(m) != k0)
        impl::reject("premise " + std::to_string(i) + " is not a " + std::to_string(k0) + "-subset");
      int id = o.orbit_of[m];
      if (covered[id])
        impl::reject("premise " + std::to_string(i) + " repeats an orbit");
      covered[id] = 1;
    }
    for (std::size_t id = 0; id < o.rep.size(); ++id)
      if (__builtin_popcount(o.rep[id]) == k0 && !covered[id])
        impl::reject("no premise for the orbit of {" + impl::join_names(names_of(o.rep[id], a)) + "}");
  }

  void rule_ample(Ctx& ctx) {
    int d = ctx.need_int("d");
    int k0 = ctx.need_int("k0");
    const auto& a_names = ctx.n.subject;
    const int n = static_cast<int>(a_names.size());
    if (name_set(a_names).size() != a_names.size())
      impl::reject("generating set has repeated names");
    if (d < 0 || k0 < 1 || k0 > n)
      impl::reject("need d >= 0 and 1 <= k0 <= |A|");
    const int kmax = std::min(d + 1, n);
    std::map<long, long> f;
    for (int k = k0 + 1; k <= kmax; ++k)
      f[k] = ctx.need_int("f[" + std::to_string(k) + "]");
    auto c2 = condition2({"AMPLE", d, k0, n, [&](long k) { return f.at(k); }});
    if (!c2.verdict)
      impl::reject("d < (k-1) f(k) fails at k = " + std::to_string(*c2.first_failing_k));
    auto a = elements(a_names);
    Orbits o = symmetry(ctx, a, k0, kmax);
    cover_orbits(ctx, o, a_names, k0, kmax, {"split", "dup"},
                 [&](const std::string& kind, const std::string& value, std::uint32_t m) {
                   if (kind == "split") {
                     check_split(ctx, value, m, a_names);
                   } else {
                     auto s = elements(names_of(m, a_names));
                     std::size_t got = check_dup(value, s);
                     long need = f.at(__builtin_popcount(m));
                     if (static_cast<long>(got) < need)
                       impl::reject("only " + std::to_string(got) + " commuting conjugates, f = " +
                                    std::to_string(need));
                   }
                 });
    cover_base(ctx, o, a_names, k0);
    dimension(ctx, d, "d");
  }

  // Fixed point for <A> given fixed points for each a in A (premises per
  // orbit of singletons, then the last premise for M) and, for every
  // k-subset S with 2 <= k <= d, a split or an element gamma with <S>
  // normalizing gamma^-1 M gamma and gamma^-1 M gamma meeting A outside S.
  void rule_norm2(Ctx& ctx) {
    int d = ctx.need_int("d");
    const auto& a_names = ctx.n.subject;
    const int n = static_cast<int>(a_names.size());
    if (d < 1 || n < 1)
      impl::reject("need d >= 1 and a nonempty generating set");
    if (name_set(a_names).size() != a_names.size())
      impl::reject("generating set has repeated names");
    if (ctx.n.children.empty())
      impl::reject("missing premise for M");
    auto m_names = child_subject(ctx.n.children.back());
    auto m_elems = elements(m_names);
    auto a = elements(a_names);
    const int kmax = std::min(d, n);
    Orbits o = symmetry(ctx, a, 1, kmax);
    cover_orbits(ctx, o, a_names, 1, kmax, {"split", "norm2"},
                 [&](const std::string& kind, const std::string& value, std::uint32_t m) {
                   if (kind == "split") {
                     check_split(ctx, value, m, a_names);
                     return;
                   }
                   // gamma^-1 M gamma, normalized by <S>, containing some a outside S.
                   G gamma = eval_word(value);
                   std::vector<G> conj_m;
                   for (const auto& x : m_elems)
                     conj_m.push_back(conjugate(gamma.inverse(), x));
                   auto s_names = names_of(m, a_names);
                   auto oracle = oracle_for(m_names);
                   auto member = [&](const G& x) {
                     if (x.is_identity() || find_inv(x, conj_m))
                       return true;
                     return oracle && (*oracle)(gamma * x * gamma.inverse());
                   };
                   for (const auto& sn : s_names)
                     for (const auto& x : m_elems)
                       for (int sign : {1, -1}) {
                         G g = sign > 0 ? gen(sn) : gen(sn).inverse();
                         if (!member(conjugate(g, conjugate(gamma.inverse(), x))))
                           impl::reject("<S> does not normalize the conjugate of M for " + value);
                       }
                   bool outside = false;
                   for (int i = 0; i < n && !outside; ++i)
                     if (!(m >> i & 1) && member(a[i]))
                       outside = true;
                   if (!outside)
                     impl::reject("conjugate of M meets A only inside S");
                 });
    // Premises: one per singleton orbit, then M.
    Node base = ctx.n;
    base.children.pop_back();
    Ctx bctx{base, {}, {}, {}};
    cover_base(bctx, o, a_names, 1);
    dimension(ctx, d - 1, "d - 1");
  }

  void rule_nielsen_chain(Ctx& ctx) {
    if constexpr (std::is_same_v<G, FreeAutomorphism>) {
      const int n = c_.size;
      if (n < 3)
        impl::reject("NIELSEN_CHAIN needs rank at least 3");
      need_children(ctx.n, 1);
      auto m_names = child_subject(ctx.n.children[0]);
      auto m = elements(m_names);
      if (!B::column_product(m, n))
        impl::reject("premise is not the column product M_n(n-1) x Mbar_n(n-1)");
      for (const auto& x : niel_set(n, n))
        if (!in_column_product(x))
          impl::reject("Niel_n is not contained in M");
      for (int l = 2; l <= n; ++l)
        for (const auto& g : niel_set(l, n))
          for (const auto& h : m)
            for (int sign : {1, -1})
              if (!in_column_product(conjugate(sign > 0 ? g : g.inverse(), h)))
                impl::reject("Niel_" + std::to_string(l) + " does not normalize M");
      for (int s = 2; s <= n; ++s)
        for (int t = s + 2; t <= n; ++t) {
          auto rep = pairwise_commuting(std::vector<std::vector<G>>{niel_set(s, n), niel_set(t, n)});
          if (!rep.ok)
            impl::reject("Niel_" + std::to_string(s) + " and Niel_" + std::to_string(t) + " do not commute");
        }
      G shift = eval_word(ctx.need_w("shift"));
      for (int i = 2; i < n; ++i) {
        auto from = niel_set(i, n), to = niel_set(i + 1, n);
        for (const auto& x : from)
          if (!find_inv(conjugate(shift, x), to))
            impl::reject("shift does not carry Niel_" + std::to_string(i) + " to Niel_" + std::to_string(i + 1));
      }
      std::vector<G> pool;
      for (int l = 2; l <= n; ++l)
        for (const auto& x : niel_set(l, n))
          pool.push_back(x);
      require_subject_within(ctx, pool, {}, false);
    } else {
      impl::reject("NIELSEN_CHAIN applies to automorphisms of free groups");
    }
  }

  void rule_eenough(Ctx& ctx) {
    if constexpr (std::is_same_v<G, IntegerMatrix>) {
      const int n = c_.size;
      if (n < 3)
        impl::reject("EENOUGH needs n >= 3");
      need_children(ctx.n, 1);
      auto t = child_subject(ctx.n.children[0]);
      if (t.size() != 1)
        impl::reject("premise must be a single elementary matrix");
      bool elem = false;
      for (int i = 1; i <= n && !elem; ++i)
        for (int j = 1; j <= n && !elem; ++j)
          if (i != j && eq_inv(gen(t[0]), elementary(n, i, j)))
            elem = true;
      if (!elem)
        impl::reject(t[0] + " is not an elementary matrix");
      for (const auto& s : ctx.n.subject)
        if (gen(s).determinant() != 1)
          impl::reject(s + " does not lie in SL(n,Z)");
      ctx.out.axioms.insert("EENOUGH (bounded generation of SL(n,Z))");
    } else {
      impl::reject("EENOUGH applies to integer matrices");
    }
  }

  const Certificate& c_;
  CheckCache* cache_;
  G id_;
  std::map<std::string, G> gens_;
  std::map<std::string, bool> valid_;
  std::map<std::string, std::optional<std::function<bool(const G&)>>> oracles_;
  std::string header_;
  std::map<std::string, std::string> lemma_text_;
  std::set<std::string> lemma_used_, lemma_active_;
  std::map<std::string, Outcome> lemma_done_;
  std::size_t nodes_ = 0;
};

// Checks a certificate on the backend its ambient kind selects.
inline Verdict check_certificate(const Certificate& c, CheckCache* cache = nullptr) {
  if (Backend<FreeAutomorphism>::supports(c.ambient))
    return Checker<FreeAutomorphism>(c, cache).run();
  if (Backend<IntegerMatrix>::supports(c.ambient))
    return Checker<IntegerMatrix>(c, cache).run();
  Verdict v;
  v.bound = c.bound;
  v.failure = NodeFailure{"preamble", "", "unknown ambient kind '" + c.ambient + "'"};
  return v;
}

} // namespace hellyfix

#endif
