#pragma once

// Endomorphisms of the free group F(a, b), the generator families used to
// factor Aut F2, primitivity testing and a grammar for endomorphism closures.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stallings.hpp"
#include "words.hpp"

namespace fgorbits {

// The endomorphism a -> image_a, b -> image_b.
struct Endo2 {
  Word image_a = Word::parse("a");
  Word image_b = Word::parse("b");

  Endo2() = default;
  Endo2(Word x, Word y) : image_a(std::move(x)), image_b(std::move(y)) {
    if (image_a.rank() != 2 || image_b.rank() != 2) throw invalid_input("endomorphism images must have rank 2");
  }
  Endo2(std::string_view x, std::string_view y) : Endo2(Word::parse(x), Word::parse(y)) {}

  Word apply(const Word& u) const {
    if (u.rank() != 2) throw unsupported_rank("endomorphisms act on rank 2 words");
    Word r(2);
    for (Letter l : u) {
      const Word& img = l.generator() == 0 ? image_a : image_b;
      r *= l.positive() ? img : img.inverse();
    }
    return r;
  }

  Word operator()(const Word& u) const { return apply(u); }

  std::string to_string() const { return image_a.to_string() + " ; " + image_b.to_string(); }
  std::string compact() const { return image_a.to_string() + ";" + image_b.to_string(); }

  friend bool operator==(const Endo2&, const Endo2&) = default;
  friend auto operator<=>(const Endo2& x, const Endo2& y) {
    if (auto c = x.image_a <=> y.image_a; c != 0) return c;
    return x.image_b <=> y.image_b;
  }
};

// "x ; y" (spaces optional).
inline Endo2 parse_endo(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos) throw invalid_input("endomorphism must be written \"x ; y\"");
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  return Endo2(Word::parse(trim(text.substr(0, semi))), Word::parse(trim(text.substr(semi + 1))));
}

inline Word apply_endo(const Endo2& e, const Word& u) { return e.apply(u); }

// (f g)(x) = f(g(x)).
inline Endo2 compose(const Endo2& f, const Endo2& g) { return Endo2(f(g.image_a), f(g.image_b)); }

template <typename... Rest>
Endo2 compose(const Endo2& f, const Endo2& g, const Rest&... rest) {
  return compose(f, compose(g, rest...));
}

inline Endo2 identity_endo() { return Endo2{}; }

// The inner automorphism u -> w^-1 u w.
inline Endo2 inner(const Word& w) {
  return Endo2(conjugate(Word::parse("a"), w), conjugate(Word::parse("b"), w));
}

inline bool is_automorphism(const Endo2& e) {
  return fold_generators({e.image_a, e.image_b}, 2).is_bouquet();
}

// ---------------------------------------------------------------------------
// Named generator sets.

// Sigma letters: S = phi_{a,ba}, I = phi_{b^-1,a^-1}, X = phi_{b,a}.
enum class SigmaLetter : std::uint8_t { S = 0, I = 1, X = 2 };

inline constexpr std::array<SigmaLetter, 3> kSigma{SigmaLetter::S, SigmaLetter::I, SigmaLetter::X};
inline constexpr std::array<SigmaLetter, 2> kSigma0{SigmaLetter::S, SigmaLetter::I};

inline char to_char(SigmaLetter s) { return "SIX"[static_cast<int>(s)]; }

inline std::optional<SigmaLetter> sigma_from_char(char c) {
  switch (c) {
    case 'S': return SigmaLetter::S;
    case 'I': return SigmaLetter::I;
    case 'X': return SigmaLetter::X;
    default: return std::nullopt;
  }
}

inline Endo2 sigma_endo(SigmaLetter s) {
  switch (s) {
    case SigmaLetter::S: return Endo2("a", "ba");
    case SigmaLetter::I: return Endo2("B", "A");
    case SigmaLetter::X: return Endo2("b", "a");
  }
  return {};
}

inline Endo2 sigma_inverse_endo(SigmaLetter s) {
  if (s == SigmaLetter::S) return Endo2("a", "bA");
  return sigma_endo(s);  // I and X are involutions
}

using SigmaWord = std::vector<SigmaLetter>;

inline std::string to_string(const SigmaWord& w) {
  std::string s;
  for (auto c : w) s.push_back(to_char(c));
  return s;
}

inline SigmaWord parse_sigma_word(std::string_view text) {
  SigmaWord w;
  if (text == "e" || text == "1") return w;
  for (char c : text) {
    auto s = sigma_from_char(c);
    if (!s) throw invalid_input("bad Sigma letter '" + std::string(1, c) + "'");
    w.push_back(*s);
  }
  return w;
}

// c1 c2 ... cn denotes cn o ... o c1: the leftmost letter acts first.
inline Endo2 sigma_word_endo(const SigmaWord& w) {
  Endo2 e;
  for (auto c : w) e = compose(sigma_endo(c), e);
  return e;
}

inline Endo2 sigma_word_inverse(const SigmaWord& w) {
  Endo2 e;
  for (auto c : w) e = compose(e, sigma_inverse_endo(c));
  return e;
}

// Phi = {phi_{a,ba}, phi_{ab,b}, phi_{a,ab}, phi_{ba,b}}.
enum class PhiLetter : std::uint8_t { a_ba = 0, ab_b = 1, a_ab = 2, ba_b = 3 };

inline constexpr std::array<PhiLetter, 4> kPhi{PhiLetter::a_ba, PhiLetter::ab_b, PhiLetter::a_ab, PhiLetter::ba_b};

inline Endo2 phi_endo(PhiLetter p) {
  switch (p) {
    case PhiLetter::a_ba: return Endo2("a", "ba");
    case PhiLetter::ab_b: return Endo2("ab", "b");
    case PhiLetter::a_ab: return Endo2("a", "ab");
    case PhiLetter::ba_b: return Endo2("ba", "b");
  }
  return {};
}

inline Endo2 phi_inverse_endo(PhiLetter p) {
  switch (p) {
    case PhiLetter::a_ba: return Endo2("a", "bA");
    case PhiLetter::ab_b: return Endo2("aB", "b");
    case PhiLetter::a_ab: return Endo2("a", "Ab");
    case PhiLetter::ba_b: return Endo2("Ba", "b");
  }
  return {};
}

inline std::string to_string(PhiLetter p) {
  switch (p) {
    case PhiLetter::a_ba: return "phi[a;ba]";
    case PhiLetter::ab_b: return "phi[ab;b]";
    case PhiLetter::a_ab: return "phi[a;ab]";
    case PhiLetter::ba_b: return "phi[ba;b]";
  }
  return "?";
}

using PhiWord = std::vector<PhiLetter>;

inline std::string to_string(const PhiWord& w) {
  if (w.empty()) return "id";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + to_string(w[i]);
  return s;
}

// f1 f2 ... fk as the composite f1 o f2 o ... o fk.
inline Endo2 phi_product(const PhiWord& w) {
  Endo2 e;
  for (auto p : w) e = compose(e, phi_endo(p));
  return e;
}

inline Endo2 phi_product_inverse(const PhiWord& w) {
  Endo2 e;
  for (auto p : w) e = compose(phi_inverse_endo(p), e);
  return e;
}

// Psi: the 8 automorphisms sending letters to letters, identity first.
inline const std::vector<Endo2>& psi_set() {
  static const std::vector<Endo2> psi = {
      Endo2("a", "b"), Endo2("a", "B"), Endo2("A", "b"), Endo2("A", "B"),
      Endo2("b", "a"), Endo2("b", "A"), Endo2("B", "a"), Endo2("B", "A"),
  };
  return psi;
}

inline Endo2 psi_inverse(const Endo2& psi) {
  Word images[2] = {Word(2), Word(2)};
  for (int g = 0; g < 2; ++g) {
    Letter img = (g == 0 ? psi.image_a : psi.image_b)[0];
    // psi(g) = img  =>  psi^-1(img.generator) = g^(img.sign)
    images[img.generator()] = Word::letter(Letter(g, img.sign()), 2);
  }
  return Endo2(images[0], images[1]);
}

// ---------------------------------------------------------------------------
// Primitivity.

namespace detail {

// Preimage of a positive word under a Phi generator, if it exists and is
// strictly shorter.
inline std::optional<Word> phi_preimage(const Word& u, PhiLetter p) {
  std::vector<Letter> out;
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n;) {
    bool is_a = u[i] == kA;
    bool next_b = i + 1 < n && u[i + 1] == kB;
    bool next_a = i + 1 < n && u[i + 1] == kA;
    switch (p) {
      case PhiLetter::a_ba:  // b -> ba
        if (is_a) { out.push_back(kA); i += 1; }
        else if (next_a) { out.push_back(kB); i += 2; }
        else return std::nullopt;
        break;
      case PhiLetter::a_ab:  // b -> ab
        if (is_a && next_b) { out.push_back(kB); i += 2; }
        else if (is_a) { out.push_back(kA); i += 1; }
        else return std::nullopt;
        break;
      case PhiLetter::ab_b:  // a -> ab
        if (!is_a) { out.push_back(kB); i += 1; }
        else if (next_b) { out.push_back(kA); i += 2; }
        else return std::nullopt;
        break;
      case PhiLetter::ba_b:  // a -> ba
        if (!is_a && next_a) { out.push_back(kA); i += 2; }
        else if (!is_a) { out.push_back(kB); i += 1; }
        else return std::nullopt;
        break;
    }
  }
  if (out.size() >= n) return std::nullopt;
  return Word::reduce(out, 2);
}

}  // namespace detail

struct PositivePrimitive {
  bool is_letter_b = false;  // u = b, which lies outside Phi*(a)
  PhiWord factors;           // otherwise phi_product(factors)(a) = u
};

// Decides whether a positive word is primitive by peeling Phi generators.
inline std::optional<PositivePrimitive> is_positive_primitive(const Word& u) {
  if (u.rank() != 2) throw unsupported_rank("primitivity is implemented for rank 2");
  if (u.empty() || !u.is_positive()) throw invalid_input("is_positive_primitive needs a nonempty positive word");
  static const Word a = Word::parse("a"), b = Word::parse("b"), ab = Word::parse("ab"), ba = Word::parse("ba");
  if (u == b) return PositivePrimitive{true, {}};
  PositivePrimitive r;
  Word cur = u;
  for (;;) {
    if (cur == a) return r;
    if (cur == ab) {
      r.factors.push_back(PhiLetter::ab_b);
      return r;
    }
    if (cur == ba) {
      r.factors.push_back(PhiLetter::ba_b);
      return r;
    }
    bool peeled = false;
    for (PhiLetter p : {PhiLetter::a_ba, PhiLetter::a_ab, PhiLetter::ab_b, PhiLetter::ba_b}) {
      if (auto pre = detail::phi_preimage(cur, p)) {
        r.factors.push_back(p);
        cur = std::move(*pre);
        peeled = true;
        break;
      }
    }
    if (!peeled) return std::nullopt;
  }
}

// u = lambda_w psi phi_product(phi) (a), i.e. u = w^-1 psi(phi(a)) w.
struct PrimitiveWitness {
  Word w;
  Endo2 psi;
  PhiWord phi;

  Endo2 automorphism() const { return compose(inner(w), psi, phi_product(phi)); }
};

inline std::optional<PrimitiveWitness> is_primitive(const Word& u) {
  if (u.rank() != 2) throw unsupported_rank("primitivity is implemented for rank 2");
  if (u.empty()) return std::nullopt;
  auto [core, c] = cyclic_core(u);
  if (core.size() == 1) {
    for (const auto& psi : psi_set())
      if (psi.image_a == core) return PrimitiveWitness{c, psi, {}};
  }
  for (const auto& psi : psi_set()) {
    Word p = psi_inverse(psi)(core);
    if (!p.is_positive()) continue;
    for (std::size_t k = 0; k < p.size(); ++k) {
      Word r = rotate(p, k);
      auto pp = is_positive_primitive(r);
      if (!pp || pp->is_letter_b) continue;
      // p = x r x^-1 with x = p[0..k)
      Word x = p.subword(0, k);
      return PrimitiveWitness{psi(x).inverse() * c, psi, pp->factors};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Factorization Aut F2 = Lambda Psi Phi* Delta.

struct DecoFactorization {
  Word w;
  Endo2 psi;
  PhiWord phi_word;
  long m = 0;
  long n = 0;
  int eps = 1;

  // phi_{a, a^m b^eps a^n}
  Endo2 delta() const {
    Word y = power(Word::parse("a"), m) * power(Word::parse("b"), eps) * power(Word::parse("a"), n);
    return Endo2(Word::parse("a"), y);
  }

  Endo2 recompose() const { return compose(inner(w), psi, phi_product(phi_word), delta()); }

  Endo2 inverse() const {
    Word a = Word::parse("a");
    Word y = power(power(a, -m) * Word::parse("b") * power(a, -n), eps);
    Endo2 delta_inv(a, y);
    return compose(delta_inv, phi_product_inverse(phi_word), psi_inverse(psi), inner(w.inverse()));
  }
};

inline DecoFactorization factorize_automorphism(const Endo2& theta) {
  if (!is_automorphism(theta)) throw invalid_input("not an automorphism: " + theta.to_string());
  auto pw = is_primitive(theta.image_a);
  if (!pw) throw std::logic_error("image of a under an automorphism is not primitive");
  Endo2 sigma_inv = compose(phi_product_inverse(pw->phi), psi_inverse(pw->psi), inner(pw->w.inverse()));
  Endo2 rest = compose(sigma_inv, theta);
  if (rest.image_a != Word::parse("a")) throw std::logic_error("residual does not fix a");
  const Word& y = rest.image_b;
  DecoFactorization f{pw->w, pw->psi, pw->phi};
  std::size_t i = 0;
  while (i < y.size() && y[i].generator() == 0) f.m += y[i++].sign();
  if (i >= y.size() || y[i].generator() != 1) throw std::logic_error("residual image of b has no b");
  f.eps = y[i++].sign();
  while (i < y.size() && y[i].generator() == 0) f.n += y[i++].sign();
  if (i != y.size()) throw std::logic_error("residual image of b is not a^m b^e a^n");
  return f;
}

inline Endo2 invert_automorphism(const Endo2& e) { return factorize_automorphism(e).inverse(); }

// ---------------------------------------------------------------------------
// Context-sensitive grammar for closures Gamma*(u).

struct Grammar {
  using Symbol = std::string;
  struct Rule {
    std::vector<Symbol> lhs;
    std::vector<Symbol> rhs;
  };

  std::set<Symbol> nonterminals;
  std::set<Symbol> terminals;
  Symbol start = "S";
  std::vector<Rule> rules;

  bool is_terminal(const Symbol& s) const { return terminals.count(s) != 0; }

  // Non-contracting rules whose left side holds a nonterminal.
  void validate() const {
    for (const auto& r : rules) {
      if (r.lhs.empty() || r.lhs.size() > r.rhs.size())
        throw invalid_input("rule is not context-sensitive (|lhs| > |rhs|)");
      bool has_nt = false;
      for (const auto& s : r.lhs) has_nt |= nonterminals.count(s) != 0;
      if (!has_nt) throw invalid_input("rule left side has no nonterminal");
      for (const auto* side : {&r.lhs, &r.rhs})
        for (const auto& s : *side)
          if (!nonterminals.count(s) && !terminals.count(s)) throw invalid_input("unknown symbol " + s);
    }
  }

  // One "lhs -> rhs" per line; nonterminals are bracketed.
  std::string to_text() const {
    auto side = [&](const std::vector<Symbol>& v) {
      std::string s;
      for (const auto& x : v) s += nonterminals.count(x) ? "[" + x + "]" : x;
      return s;
    };
    std::string out;
    for (const auto& r : rules) out += side(r.lhs) + " -> " + side(r.rhs) + "\n";
    return out;
  }
};

// The fresh marker terminal framing every generated word.
inline constexpr const char* kGrammarMarker = "$";

// Grammar generating $ Gamma*(u) $$ for positive 1-free endomorphisms Gamma.
inline Grammar emit_closure_grammar(const std::vector<Endo2>& endos, const Word& u) {
  if (u.empty() || !u.is_positive()) throw invalid_input("u must be a nonempty positive word");
  for (const auto& e : endos)
    if (e.image_a.empty() || e.image_b.empty() || !e.image_a.is_positive() || !e.image_b.is_positive())
      throw invalid_input("endomorphism " + e.to_string() + " is not positive and 1-free");

  const std::string m = kGrammarMarker;
  Grammar g;
  g.terminals = {"a", "b", m};
  g.nonterminals = {"S", "R", "T"};
  auto letters = [](const Word& w) {
    std::vector<std::string> v;
    for (Letter l : w) v.emplace_back(1, l.to_char());
    return v;
  };
  auto cat = [](std::vector<std::string> x, const std::vector<std::string>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  const auto uw = letters(u);
  g.rules.push_back({{"S"}, cat(cat({m}, uw), {m, m})});
  for (std::size_t i = 0; i < endos.size(); ++i) {
    std::string f = "F" + std::to_string(i + 1);
    g.nonterminals.insert(f);
    g.rules.push_back({{"S"}, cat(cat({m, f}, uw), {"R"})});
    g.rules.push_back({{f, "a"}, cat(letters(endos[i].image_a), {f})});
    g.rules.push_back({{f, "b"}, cat(letters(endos[i].image_b), {f})});
    g.rules.push_back({{f, "R"}, {"T", "R"}});
    g.rules.push_back({{f, "R"}, {m, m}});
    g.rules.push_back({{m, "T"}, {m, f}});
  }
  g.rules.push_back({{"a", "T"}, {"T", "a"}});
  g.rules.push_back({{"b", "T"}, {"T", "b"}});
  g.validate();
  return g;
}

// All terminal words of length <= max_len derivable from the start symbol.
// Rules never shorten a sentential form, so longer forms are pruned.
inline std::set<std::string> bounded_language(const Grammar& g, std::size_t max_len) {
  std::set<std::string> words;
  if (max_len == 0) return words;
  std::set<std::vector<std::string>> seen;
  std::vector<std::vector<std::string>> frontier{{g.start}};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<std::vector<std::string>> next;
    for (const auto& form : frontier) {
      bool terminal = true;
      for (const auto& s : form) terminal &= g.is_terminal(s);
      if (terminal) {
        std::string w;
        for (const auto& s : form) w += s;
        words.insert(w);
        continue;
      }
      for (const auto& r : g.rules) {
        if (form.size() - r.lhs.size() + r.rhs.size() > max_len) continue;
        for (std::size_t pos = 0; pos + r.lhs.size() <= form.size(); ++pos) {
          if (!std::equal(r.lhs.begin(), r.lhs.end(), form.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
          std::vector<std::string> nf(form.begin(), form.begin() + static_cast<std::ptrdiff_t>(pos));
          nf.insert(nf.end(), r.rhs.begin(), r.rhs.end());
          nf.insert(nf.end(), form.begin() + static_cast<std::ptrdiff_t>(pos + r.lhs.size()), form.end());
          if (seen.insert(nf).second) next.push_back(std::move(nf));
        }
      }
    }
    frontier = std::move(next);
  }
  return words;
}

}  // namespace fgorbits
