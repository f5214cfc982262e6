#pragma once

// Reduced words in a free group of finite rank.
//
// A Word is always stored in reduced normal form, so two Words are equal as
// group elements exactly when they compare equal.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <span>
#include <vector>

#include "error.hpp"

namespace fgorbits {

// A generator or its formal inverse. Encoded as 2*generator + (inverse ? 1 : 0)
// so that the encoding doubles as an index into signed-letter tables.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int sign)
      : code_(static_cast<std::uint16_t>(2 * generator + (sign < 0 ? 1 : 0))) {}

  static constexpr Letter from_code(int code) {
    Letter l;
    l.code_ = static_cast<std::uint16_t>(code);
    return l;
  }

  constexpr int generator() const { return code_ >> 1; }
  constexpr int sign() const { return (code_ & 1) ? -1 : 1; }
  constexpr bool positive() const { return (code_ & 1) == 0; }
  constexpr int code() const { return code_; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1); }

  char to_char() const {
    return static_cast<char>((positive() ? 'a' : 'A') + generator());
  }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint16_t code_ = 0;
};

inline constexpr Letter kA{0, 1};
inline constexpr Letter kB{1, 1};

class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(rank) {}

  // Freely reduces `raw`. Throws invalid_input if a letter is outside `rank`.
  static Word reduce(std::span<const Letter> raw, int rank) {
    Word w(rank);
    w.letters_.reserve(raw.size());
    for (Letter l : raw) {
      if (l.generator() < 0 || l.generator() >= rank)
        throw invalid_input("letter outside alphabet of rank " + std::to_string(rank));
      w.push_reduced(l);
    }
    return w;
  }

  static Word letter(Letter l, int rank) {
    Letter one[1] = {l};
    return reduce(one, rank);
  }

  // Text syntax: lowercase letters are generators, uppercase their inverses;
  // "1" or "" is the identity.
  static Word parse(std::string_view text, int rank = 2) {
    if (rank < 1 || rank > 26) throw invalid_input("text words support rank 1..26");
    std::vector<Letter> raw;
    if (text == "1") return Word(rank);
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      int g;
      int s;
      if (c >= 'a' && c <= 'z') {
        g = c - 'a';
        s = 1;
      } else if (c >= 'A' && c <= 'Z') {
        g = c - 'A';
        s = -1;
      } else {
        throw invalid_input("bad character '" + std::string(1, c) + "' at position " +
                            std::to_string(i) + " in word \"" + std::string(text) + "\"");
      }
      if (g >= rank)
        throw invalid_input("letter '" + std::string(1, c) + "' outside alphabet of rank " +
                            std::to_string(rank));
      raw.emplace_back(g, s);
    }
    return reduce(raw, rank);
  }

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool is_identity() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  std::span<const Letter> letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  bool is_positive() const {
    return std::all_of(letters_.begin(), letters_.end(), [](Letter l) { return l.positive(); });
  }

  bool is_cyclically_reduced() const {
    return letters_.size() < 2 || letters_.front() != letters_.back().inverse();
  }

  Word inverse() const {
    Word w(rank_);
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
  }

  Word subword(std::size_t pos, std::size_t count) const {
    Word w(rank_);
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                      letters_.begin() + static_cast<std::ptrdiff_t>(pos + count));
    return w;
  }

  // Appends with cancellation; the receiver stays reduced.
  Word& operator*=(const Word& rhs) {
    if (rhs.rank_ != rank_) throw invalid_input("rank mismatch in product");
    for (Letter l : rhs.letters_) push_reduced(l);
    return *this;
  }

  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  std::string to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(l.to_char());
    return s;
  }

  friend bool operator==(const Word& x, const Word& y) {
    return x.rank_ == y.rank_ && x.letters_ == y.letters_;
  }
  friend auto operator<=>(const Word& x, const Word& y) {
    if (auto c = x.rank_ <=> y.rank_; c != 0) return c;
    return std::lexicographical_compare_three_way(x.letters_.begin(), x.letters_.end(),
                                                  y.letters_.begin(), y.letters_.end());
  }

 private:
  void push_reduced(Letter l) {
    if (!letters_.empty() && letters_.back() == l.inverse())
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  int rank_ = 2;
  std::vector<Letter> letters_;
};

inline Word reduce(std::span<const Letter> raw, int rank) { return Word::reduce(raw, rank); }

inline Word multiply(const Word& u, const Word& v) { return u * v; }

inline Word invert(const Word& u) { return u.inverse(); }

inline Word power(const Word& u, long n) {
  Word base = n < 0 ? u.inverse() : u;
  Word r(u.rank());
  for (long i = 0; i < (n < 0 ? -n : n); ++i) r *= base;
  return r;
}

struct CyclicCore {
  Word core;
  Word conjugator;  // u = conjugator^-1 * core * conjugator
};

inline CyclicCore cyclic_core(const Word& u) {
  auto ls = u.letters();
  std::size_t i = 0;
  std::size_t j = ls.size();
  while (j - i >= 2 && ls[i] == ls[j - 1].inverse()) {
    ++i;
    --j;
  }
  Word prefix = u.subword(0, i);
  return {u.subword(i, j - i), prefix.inverse()};
}

inline Word conjugate(const Word& u, const Word& w) { return w.inverse() * u * w; }

// Rotation u[k..] u[..k] of a cyclically reduced word.
inline Word rotate(const Word& u, std::size_t k) {
  if (u.empty()) return u;
  k %= u.size();
  return u.subword(k, u.size() - k) * u.subword(0, k);
}

// Exponent sums of each generator.
inline std::vector<long> abelianization(const Word& u) {
  std::vector<long> e(static_cast<std::size_t>(u.rank()), 0);
  for (Letter l : u) e[static_cast<std::size_t>(l.generator())] += l.sign();
  return e;
}

}  // namespace fgorbits
