// Certificate files: a preamble of generator declarations followed by
// derivation trees of fixed-point rules.
//
//   ambient aut 6;
//   bound 3;
//   assume nielsen-elliptic;
//   gen L21 = lambda 2 1;
//   gen G = word L21 E1^-1;
//   lemma chain { node NIELSEN_CHAIN { subject ...; witness shift = "P"; child { ... } } }
//   root { node DELTA { subject ...; param d = 4; witness part[1] = "A B"; use chain; } }
//
// Atoms are runs of characters other than whitespace and ; { } = " #.
// Strings are double-quoted without escapes. # starts a comment.
// print(parse(text)) is a fixed point of print.

#ifndef HELLYFIX_CERTIFICATE_HPP_
#define HELLYFIX_CERTIFICATE_HPP_

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hellyfix {

class CertificateParseError : public std::runtime_error {
public:
  CertificateParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

struct Entry {
  std::string key, value;
  bool operator==(const Entry&) const = default;
};

struct Node {
  std::string rule;                 // empty when this is a reference
  std::string ref;                  // lemma name for `use NAME;`
  std::vector<std::string> subject;
  std::vector<Entry> params;
  std::vector<Entry> witnesses;
  std::vector<Node> children;

  bool is_ref() const { return !ref.empty(); }
  const Entry* param(const std::string& key) const {
    for (const auto& e : params)
      if (e.key == key)
        return &e;
    return nullptr;
  }
  const Entry* witness(const std::string& key) const {
    for (const auto& e : witnesses)
      if (e.key == key)
        return &e;
    return nullptr;
  }
  bool operator==(const Node&) const = default;
};

struct GenDecl {
  std::string name;
  std::vector<std::string> spec;
  bool operator==(const GenDecl&) const = default;
};

struct Lemma {
  std::string name;
  Node node;
  bool operator==(const Lemma&) const = default;
};

struct Certificate {
  std::string ambient;  // aut, saut, braid, aut-sub, gl, sl, gl-sub
  int size = 0;         // rank, strand count or matrix size
  int bound = 0;        // fixed point whenever dim <= bound
  std::vector<std::string> assumptions;
  std::vector<GenDecl> gens;
  std::vector<Lemma> lemmas;
  Node root;

  const Lemma* lemma(const std::string& name) const {
    for (const auto& l : lemmas)
      if (l.name == name)
        return &l;
    return nullptr;
  }
  bool operator==(const Certificate&) const = default;
};

namespace impl {

inline bool atom_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != ';' && c != '{' && c != '}' &&
         c != '=' && c != '"' && c != '#';
}

inline bool is_atom(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), atom_char);
}

struct Token {
  enum Kind { atom, string, punct, end } kind = end;
  std::string text;
  int line = 0;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : s_(text) {}

  Token next() {
    skip();
    Token t;
    t.line = line_;
    if (pos_ >= s_.size())
      return t;
    char c = s_[pos_];
    if (c == ';' || c == '{' || c == '}' || c == '=') {
      ++pos_;
      t.kind = Token::punct;
      t.text = std::string(1, c);
    } else if (c == '"') {
      std::size_t close = s_.find('"', pos_ + 1);
      if (close == std::string::npos)
        throw CertificateParseError(line_, "unterminated string");
      t.kind = Token::string;
      t.text = s_.substr(pos_ + 1, close - pos_ - 1);
      if (t.text.find('\n') != std::string::npos)
        throw CertificateParseError(line_, "newline inside string");
      pos_ = close + 1;
    } else {
      std::size_t start = pos_;
      while (pos_ < s_.size() && atom_char(s_[pos_]))
        ++pos_;
      t.kind = Token::atom;
      t.text = s_.substr(start, pos_ - start);
    }
    return t;
  }

private:
  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n')
          ++pos_;
      } else {
        return;
      }
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class Parser {
public:
  explicit Parser(const std::string& text) : lex_(text) { advance(); }

  Certificate certificate() {
    Certificate c;
    bool ambient = false, bound = false, root = false;
    while (cur_.kind != Token::end) {
      std::string kw = expect_atom("statement keyword");
      if (kw == "ambient") {
        if (ambient)
          fail("duplicate ambient");
        c.ambient = expect_atom("ambient kind");
        c.size = expect_int("ambient size");
        expect(";");
        ambient = true;
      } else if (kw == "bound") {
        if (bound)
          fail("duplicate bound");
        c.bound = expect_int("bound");
        expect(";");
        bound = true;
      } else if (kw == "assume") {
        c.assumptions.push_back(expect_atom("assumption flag"));
        expect(";");
      } else if (kw == "gen") {
        GenDecl g;
        g.name = expect_atom("generator name");
        for (const auto& other : c.gens)
          if (other.name == g.name)
            fail("duplicate generator '" + g.name + "'");
        expect("=");
        while (cur_.kind == Token::atom) {
          g.spec.push_back(cur_.text);
          advance();
        }
        if (g.spec.empty())
          fail("empty generator specification");
        expect(";");
        c.gens.push_back(std::move(g));
      } else if (kw == "lemma") {
        Lemma l;
        l.name = expect_atom("lemma name");
        if (c.lemma(l.name))
          fail("duplicate lemma '" + l.name + "'");
        expect("{");
        l.node = node();
        expect("}");
        c.lemmas.push_back(std::move(l));
      } else if (kw == "root") {
        if (root)
          fail("duplicate root");
        expect("{");
        c.root = node();
        expect("}");
        root = true;
      } else {
        fail("unknown statement '" + kw + "'");
      }
    }
    if (!ambient || !bound || !root)
      fail("certificate needs ambient, bound and root");
    return c;
  }

private:
  Node node() {
    if (expect_atom("'node'") != "node")
      fail("expected 'node'");
    Node n;
    n.rule = expect_atom("rule name");
    expect("{");
    while (!(cur_.kind == Token::punct && cur_.text == "}")) {
      std::string kw = expect_atom("node item");
      if (kw == "subject") {
        while (cur_.kind == Token::atom) {
          n.subject.push_back(cur_.text);
          advance();
        }
        expect(";");
      } else if (kw == "param") {
        Entry e;
        e.key = expect_atom("parameter key");
        expect("=");
        if (cur_.kind != Token::atom && cur_.kind != Token::string)
          fail("parameter value expected");
        e.value = cur_.text;
        advance();
        expect(";");
        n.params.push_back(std::move(e));
      } else if (kw == "witness") {
        Entry e;
        e.key = expect_atom("witness key");
        expect("=");
        if (cur_.kind != Token::string)
          fail("witness value must be a quoted string");
        e.value = cur_.text;
        advance();
        expect(";");
        n.witnesses.push_back(std::move(e));
      } else if (kw == "child") {
        expect("{");
        n.children.push_back(node());
        expect("}");
      } else if (kw == "use") {
        Node r;
        r.ref = expect_atom("lemma name");
        expect(";");
        n.children.push_back(std::move(r));
      } else {
        fail("unknown node item '" + kw + "'");
      }
    }
    advance();
    return n;
  }

  void advance() { cur_ = lex_.next(); }
  [[noreturn]] void fail(const std::string& msg) const { throw CertificateParseError(cur_.line, msg); }
  std::string expect_atom(const char* what) {
    if (cur_.kind != Token::atom)
      fail(std::string("expected ") + what);
    std::string s = cur_.text;
    advance();
    return s;
  }
  int expect_int(const char* what) {
    std::string s = expect_atom(what);
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used == s.size())
        return v;
    } catch (const std::exception&) {
    }
    fail(std::string("expected integer for ") + what);
  }
  void expect(const char* punct) {
    if (cur_.kind != Token::punct || cur_.text != punct)
      fail(std::string("expected '") + punct + "'");
    advance();
  }

  Lexer lex_;
  Token cur_;
};

inline void print_node(std::ostringstream& os, const Node& n, int depth) {
  const std::string pad(2 * depth, ' ');
  os << pad << "node " << n.rule << " {\n";
  if (!n.subject.empty()) {
    os << pad << "  subject";
    for (const auto& s : n.subject)
      os << ' ' << s;
    os << ";\n";
  }
  for (const auto& p : n.params)
    os << pad << "  param " << p.key << " = "
       << (is_atom(p.value) ? p.value : "\"" + p.value + "\"") << ";\n";
  for (const auto& w : n.witnesses)
    os << pad << "  witness " << w.key << " = \"" << w.value << "\";\n";
  for (const auto& c : n.children) {
    if (c.is_ref()) {
      os << pad << "  use " << c.ref << ";\n";
    } else {
      os << pad << "  child {\n";
      print_node(os, c, depth + 2);
      os << pad << "  }\n";
    }
  }
  os << pad << "}\n";
}

} // namespace impl

inline Certificate parse_certificate(const std::string& text) { return impl::Parser(text).certificate(); }

inline std::string print_node(const Node& n) {
  std::ostringstream os;
  impl::print_node(os, n, 0);
  return os.str();
}

// Preamble only: ambient, bound, assumptions, generators.
inline std::string print_header(const Certificate& c) {
  std::ostringstream os;
  os << "ambient " << c.ambient << ' ' << c.size << ";\n";
  os << "bound " << c.bound << ";\n";
  for (const auto& a : c.assumptions)
    os << "assume " << a << ";\n";
  for (const auto& g : c.gens) {
    os << "gen " << g.name << " =";
    for (const auto& t : g.spec)
      os << ' ' << t;
    os << ";\n";
  }
  return os.str();
}

inline std::string print_certificate(const Certificate& c) {
  std::ostringstream os;
  os << print_header(c);
  for (const auto& l : c.lemmas) {
    os << "lemma " << l.name << " {\n";
    impl::print_node(os, l.node, 1);
    os << "}\n";
  }
  os << "root {\n";
  impl::print_node(os, c.root, 1);
  os << "}\n";
  return os.str();
}

// Space-separated names.
inline std::vector<std::string> split_names(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;)
    out.push_back(t);
  return out;
}

// Splits on a separator character, trimming nothing; empty pieces kept.
inline std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// A letter of a word over named generators: NAME, NAME^-1, NAME^k. The
// token "1" is the empty word.
struct WordLetter {
  std::string name;
  int exponent = 1;
};

inline std::vector<WordLetter> parse_word(const std::string& s) {
  std::vector<WordLetter> out;
  for (const auto& tok : split_names(s)) {
    if (tok == "1")
      continue;
    auto caret = tok.find('^');
    WordLetter l;
    l.name = tok.substr(0, caret);
    if (l.name.empty())
      throw std::invalid_argument("word letter without a name: '" + tok + "'");
    if (caret != std::string::npos) {
      std::string e = tok.substr(caret + 1);
      std::size_t used = 0;
      try {
        l.exponent = std::stoi(e, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (e.empty() || used != e.size())
        throw std::invalid_argument("bad exponent in '" + tok + "'");
    }
    out.push_back(std::move(l));
  }
  return out;
}

// Key "name[a,b,c]" -> ("name", {"a","b","c"}); plain keys have no indices.
inline std::pair<std::string, std::vector<std::string>> split_key(const std::string& key) {
  auto open = key.find('[');
  if (open == std::string::npos || key.back() != ']')
    return {key, {}};
  return {key.substr(0, open), split_on(key.substr(open + 1, key.size() - open - 2), ',')};
}

// ---------------------------------------------------------------------------
// Mutations

struct Mutation {
  std::string description;
  Certificate certificate;
};

namespace impl {

inline void for_each_node(Node& n, const std::string& path,
                          const std::function<void(Node&, const std::string&)>& f) {
  f(n, path);
  for (std::size_t i = 0; i < n.children.size(); ++i)
    if (!n.children[i].is_ref())
      for_each_node(n.children[i], path + "/" + std::to_string(i), f);
}

inline void for_each_node(Certificate& c,
                          const std::function<void(Node&, const std::string&)>& f) {
  for (auto& l : c.lemmas)
    for_each_node(l.node, "lemma:" + l.name, f);
  for_each_node(c.root, "root", f);
}

inline std::string perturb_param(const std::string& v) {
  try {
    std::size_t used = 0;
    long x = std::stol(v, &used);
    if (used == v.size())
      return std::to_string(x + 1);
  } catch (const std::exception&) {
  }
  return v + "-x";
}

} // namespace impl

// Every single-edit variant of a certificate: each witness deleted, each
// witness extended by a fresh ambient element outside the obvious group (a
// transvection, declared as an extra gen), each parameter perturbed, each
// lemma reference redirected to the next lemma. A custom noise word replaces
// the transvection.
inline std::vector<Mutation> single_mutations(const Certificate& c,
                                              std::optional<std::string> noise_word = {}) {
  std::string noise_name = "noise";
  while (std::any_of(c.gens.begin(), c.gens.end(),
                     [&](const GenDecl& g) { return g.name == noise_name; }))
    noise_name += "_";
  const bool matrix = c.ambient == "gl" || c.ambient == "sl" || c.ambient == "gl-sub";
  GenDecl noise_gen{noise_name, {matrix ? "elementary" : "lambda", "1", "2"}};
  std::string noise;
  if (noise_word) {
    noise = " " + *noise_word;
  } else {
    if (!c.root.subject.empty())
      noise = " " + c.root.subject.back();
    for (const auto& s : c.root.subject)
      noise += " " + s;
    noise += " " + noise_name;
  }
  std::vector<std::string> lemma_names;
  for (const auto& l : c.lemmas)
    lemma_names.push_back(l.name);

  // Enumerate positions on a scratch copy, then apply each edit to a fresh copy.
  struct Site {
    std::string path;
    enum Kind { drop_witness, noise_witness, bump_param, redirect } kind;
    std::size_t index;
  };
  std::vector<Site> sites;
  Certificate scratch = c;
  impl::for_each_node(scratch, [&](Node& n, const std::string& path) {
    for (std::size_t i = 0; i < n.witnesses.size(); ++i) {
      sites.push_back({path, Site::drop_witness, i});
      sites.push_back({path, Site::noise_witness, i});
    }
    for (std::size_t i = 0; i < n.params.size(); ++i)
      sites.push_back({path, Site::bump_param, i});
    if (lemma_names.size() > 1)
      for (std::size_t i = 0; i < n.children.size(); ++i)
        if (n.children[i].is_ref())
          sites.push_back({path, Site::redirect, i});
  });

  std::vector<Mutation> out;
  for (const auto& site : sites) {
    Mutation m{"", c};
    impl::for_each_node(m.certificate, [&](Node& n, const std::string& path) {
      if (path != site.path)
        return;
      switch (site.kind) {
      case Site::drop_witness:
        m.description = path + ": delete witness " + n.witnesses[site.index].key;
        n.witnesses.erase(n.witnesses.begin() + static_cast<long>(site.index));
        break;
      case Site::noise_witness:
        m.description = path + ": extend witness " + n.witnesses[site.index].key;
        n.witnesses[site.index].value += noise;
        if (!noise_word)
          m.certificate.gens.push_back(noise_gen);
        break;
      case Site::bump_param:
        m.description = path + ": perturb param " + n.params[site.index].key;
        n.params[site.index].value = impl::perturb_param(n.params[site.index].value);
        break;
      case Site::redirect: {
        auto& ref = n.children[site.index].ref;
        auto it = std::find(lemma_names.begin(), lemma_names.end(), ref);
        std::size_t next = it == lemma_names.end()
                               ? 0
                               : (static_cast<std::size_t>(it - lemma_names.begin()) + 1) %
                                     lemma_names.size();
        m.description = path + ": redirect use " + ref + " -> " + lemma_names[next];
        ref = lemma_names[next];
        break;
      }
      }
    });
    out.push_back(std::move(m));
  }
  return out;
}

} // namespace hellyfix

#endif
