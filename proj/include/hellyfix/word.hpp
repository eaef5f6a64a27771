// Freely reduced words in a free group of fixed rank.

#ifndef HELLYFIX_WORD_HPP_
#define HELLYFIX_WORD_HPP_

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hellyfix {

// A letter is a signed basis index: +i stands for x_i, -i for x_i^-1.
using Letter = int;

class ReducedWord {
public:
  ReducedWord() = default;
  explicit ReducedWord(int rank) : rank_(rank) {
    if (rank < 1)
      throw std::invalid_argument("ReducedWord: rank must be positive");
  }

  // Free reduction of an arbitrary letter sequence.
  static ReducedWord reduce(std::span<const Letter> raw, int rank) {
    ReducedWord w(rank);
    for (Letter l : raw)
      w.push(l);
    return w;
  }
  static ReducedWord reduce(std::initializer_list<Letter> raw, int rank) {
    return reduce(std::span<const Letter>(raw.begin(), raw.size()), rank);
  }

  static ReducedWord generator(int index, int rank, int sign = 1) {
    ReducedWord w(rank);
    w.push(sign > 0 ? index : -index);
    return w;
  }

  int rank() const { return rank_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }

  // Appends one letter, cancelling against the last one when possible.
  void push(Letter l) {
    if (l == 0 || std::abs(l) > rank_)
      throw std::out_of_range("ReducedWord: letter index " + std::to_string(l) +
                              " outside rank " + std::to_string(rank_));
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  void append(const ReducedWord& w) {
    for (Letter l : w.letters_)
      push(l);
  }
  void append_inverse(const ReducedWord& w) {
    for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it)
      push(-*it);
  }

  ReducedWord inverse() const {
    ReducedWord r(rank_);
    r.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      r.letters_.push_back(-*it);
    return r;
  }

  friend ReducedWord operator*(const ReducedWord& a, const ReducedWord& b) {
    if (a.rank_ != b.rank_)
      throw std::invalid_argument("ReducedWord: rank mismatch");
    ReducedWord r = a;
    r.append(b);
    return r;
  }

  bool operator==(const ReducedWord& o) const = default;

  // Exponent sum of x_index.
  int exponent_sum(int index) const {
    int s = 0;
    for (Letter l : letters_)
      if (std::abs(l) == index)
        s += l > 0 ? 1 : -1;
    return s;
  }

  bool mentions(int index) const {
    for (Letter l : letters_)
      if (std::abs(l) == index)
        return true;
    return false;
  }

  std::string str() const {
    if (letters_.empty())
      return "1";
    std::string s;
    for (Letter l : letters_) {
      if (!s.empty())
        s += ' ';
      s += 'x';
      s += std::to_string(std::abs(l));
      if (l < 0)
        s += "^-1";
    }
    return s;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(rank_) * 0x9e3779b97f4a7c15ULL;
    for (Letter l : letters_)
      h = (h ^ static_cast<std::size_t>(l + 1024)) * 0x100000001b3ULL;
    return h;
  }

private:
  int rank_ = 1;
  std::vector<Letter> letters_;
};

} // namespace hellyfix

template <> struct std::hash<hellyfix::ReducedWord> {
  std::size_t operator()(const hellyfix::ReducedWord& w) const { return w.hash(); }
};

#endif
