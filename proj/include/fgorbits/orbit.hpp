#pragma once

// Orbit decision procedures over rational families of automorphisms.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dynamics.hpp"
#include "endo2.hpp"
#include "stallings.hpp"

namespace fgorbits {

// ---------------------------------------------------------------------------
// Rational languages over small alphabets.

// An epsilon-free NFA over the letters 0 .. alphabet.size()-1.
struct LetterNfa {
  std::string alphabet;
  int initial = 0;
  std::vector<char> terminal;
  std::vector<std::vector<std::pair<int, int>>> edges;  // (letter, target), sorted

  int size() const { return static_cast<int>(terminal.size()); }

  bool accepts(const std::vector<int>& word) const {
    std::set<int> cur{initial};
    for (int c : word) {
      std::set<int> next;
      for (int q : cur)
        for (auto [l, r] : edges[static_cast<std::size_t>(q)])
          if (l == c) next.insert(r);
      cur = std::move(next);
    }
    for (int q : cur)
      if (terminal[static_cast<std::size_t>(q)]) return true;
    return false;
  }
};

namespace detail {

// Thompson construction by recursive descent, then epsilon removal.
//   union  := concat ('|' concat)*
//   concat := post*
//   post   := atom ('*' | '+' | '?')*
//   atom   := letter | 'e' | '(' union ')'
class RegexCompiler {
 public:
  RegexCompiler(std::string_view text, std::string alphabet) : text_(text), alphabet_(std::move(alphabet)) {}

  LetterNfa compile() {
    auto [s, f] = parse_union();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return remove_epsilon(s, f);
  }

 private:
  struct Edge {
    int letter;  // -1 = epsilon
    int to;
  };
  using Frag = std::pair<int, int>;

  int node() {
    adj_.emplace_back();
    return static_cast<int>(adj_.size()) - 1;
  }
  void link(int from, int letter, int to) { adj_[static_cast<std::size_t>(from)].push_back({letter, to}); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw invalid_input("regex syntax error at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Frag parse_union() {
    Frag left = parse_concat();
    while (peek() == '|') {
      ++pos_;
      Frag right = parse_concat();
      int s = node(), f = node();
      link(s, -1, left.first);
      link(s, -1, right.first);
      link(left.second, -1, f);
      link(right.second, -1, f);
      left = {s, f};
    }
    return left;
  }

  Frag parse_concat() {
    int s = node();
    int cur = s;
    for (char c = peek(); c != '\0' && c != '|' && c != ')'; c = peek()) {
      Frag p = parse_post();
      link(cur, -1, p.first);
      cur = p.second;
    }
    return {s, cur};
  }

  Frag parse_post() {
    Frag a = parse_atom();
    for (char c = peek(); c == '*' || c == '+' || c == '?'; c = peek()) {
      ++pos_;
      int s = node(), f = node();
      link(s, -1, a.first);
      link(a.second, -1, f);
      if (c != '?') link(a.second, -1, a.first);
      if (c != '+') link(s, -1, f);
      a = {s, f};
    }
    return a;
  }

  Frag parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Frag inner = parse_union();
      if (peek() != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == 'e') {
      ++pos_;
      int s = node();
      return {s, s};
    }
    auto k = alphabet_.find(c);
    if (c == '\0' || k == std::string::npos) {
      if (c == '\0') fail("unexpected end of expression");
      fail("unexpected '" + std::string(1, c) + "' (letters are " + alphabet_ + ")");
    }
    ++pos_;
    int s = node(), f = node();
    link(s, static_cast<int>(k), f);
    return {s, f};
  }

  std::vector<char> eclosure(int q) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> stack{q};
    seen[static_cast<std::size_t>(q)] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto e : adj_[static_cast<std::size_t>(v)])
        if (e.letter < 0 && !seen[static_cast<std::size_t>(e.to)]) {
          seen[static_cast<std::size_t>(e.to)] = 1;
          stack.push_back(e.to);
        }
    }
    return seen;
  }

  LetterNfa remove_epsilon(int start, int final_state) const {
    // Keep the start and every letter-edge target; renumber by discovery.
    std::vector<int> id(adj_.size(), kNoState);
    std::vector<int> order{start};
    id[static_cast<std::size_t>(start)] = 0;
    LetterNfa n;
    n.alphabet = alphabet_;
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto cl = eclosure(order[i]);
      std::set<std::pair<int, int>> out;
      bool term = false;
      for (std::size_t p = 0; p < adj_.size(); ++p) {
        if (!cl[p]) continue;
        term |= static_cast<int>(p) == final_state;
        for (auto e : adj_[p]) {
          if (e.letter < 0) continue;
          if (id[static_cast<std::size_t>(e.to)] == kNoState) {
            id[static_cast<std::size_t>(e.to)] = static_cast<int>(order.size());
            order.push_back(e.to);
          }
          out.emplace(e.letter, id[static_cast<std::size_t>(e.to)]);
        }
      }
      n.terminal.push_back(term);
      n.edges.emplace_back(out.begin(), out.end());
    }
    return n;
  }

  std::string_view text_;
  std::string alphabet_;
  std::size_t pos_ = 0;
  std::vector<std::vector<Edge>> adj_;
};

}  // namespace detail

inline LetterNfa parse_regex(std::string_view text, const std::string& alphabet) {
  return detail::RegexCompiler(text, alphabet).compile();
}

// Rational subsets of Sigma*; letter k is SigmaLetter(k) with alphabet "SIX".
struct SigmaRational {
  LetterNfa nfa;

  bool accepts(const SigmaWord& w) const {
    std::vector<int> v;
    for (auto s : w) v.push_back(static_cast<int>(s));
    return nfa.accepts(v);
  }

  std::vector<SigmaLetter> letters_used() const {
    std::set<int> used;
    for (const auto& es : nfa.edges)
      for (auto [l, r] : es) used.insert(l);
    std::vector<SigmaLetter> r;
    for (int l : used) r.push_back(static_cast<SigmaLetter>(l));
    return r;
  }
};

inline SigmaRational parse_sigma_regex(std::string_view text) { return {parse_regex(text, "SIX")}; }

// ---------------------------------------------------------------------------
// Decisions.

enum class ProblemKind {
  member,             // (1)  u in mu(H)
  member_conjugate,   // (1') a conjugate of u in mu(H)
  contains,           // (2)  K <= mu(H)
  contains_conjugate, // (2') a conjugate of K <= mu(H)
  equals,             // (3)  K = mu(H)
  equals_conjugate,   // (3') a conjugate of K = mu(H)
  multi_conjugate,    // (4)  conjugates of every u_i in mu(H)
};

inline std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::member: return "1";
    case ProblemKind::member_conjugate: return "1'";
    case ProblemKind::contains: return "2";
    case ProblemKind::contains_conjugate: return "2'";
    case ProblemKind::equals: return "3";
    case ProblemKind::equals_conjugate: return "3'";
    case ProblemKind::multi_conjugate: return "4";
  }
  return "?";
}

inline ProblemKind parse_problem_kind(std::string_view s) {
  for (auto k : {ProblemKind::member, ProblemKind::member_conjugate, ProblemKind::contains,
                 ProblemKind::contains_conjugate, ProblemKind::equals, ProblemKind::equals_conjugate,
                 ProblemKind::multi_conjugate})
    if (to_string(k) == s) return k;
  throw invalid_input("unknown problem kind '" + std::string(s) + "' (expected 1, 1', 2, 2', 3, 3' or 4)");
}

struct Instance {
  ProblemKind kind = ProblemKind::member;
  std::vector<Word> words;  // u for (1)/(1'), u_1..u_k for (4)
  StallingsAutomaton k;     // K for (2)..(3')
  StallingsAutomaton h;
};

struct Witness {
  SigmaWord sigma_word;
  std::string psi = "id";
  std::string prefix = "id";
  long n = 0;
  Word conjugator;
};

struct Decision {
  bool answer = false;
  std::optional<Witness> witness;
  std::size_t states = 0;
  int t = 0;
};

inline std::string sigma_word_text(const SigmaWord& w) { return w.empty() ? "e" : to_string(w); }

namespace detail {

struct Query {
  int t = 1;
  std::function<bool(const TruncatedAutomaton&)> accept;
};

inline bool is_simple_path_from_origin(const LabeledGraph& g, const std::vector<int>& comp) {
  std::size_t edges = 0;
  for (int v : comp) {
    int d = g.degree(v);
    if (d > 2 || d == 0) return false;
    edges += static_cast<std::size_t>(d);
  }
  return edges / 2 + 1 == comp.size() && g.degree(0) == 1;
}

inline LabeledGraph component_graph(const LabeledGraph& g, const std::vector<int>& comp) {
  std::vector<char> keep(static_cast<std::size_t>(g.size()), 0);
  for (int v : comp) keep[static_cast<std::size_t>(v)] = 1;
  return g.induced(keep);
}

// Does the truncation show an automaton whose core is that of `kprime`?
// Only a long stem from the origin can be cut once t covers A(K').
inline bool conjugate_shape(const TruncatedAutomaton& tr, const StallingsAutomaton& kprime) {
  const auto& g = tr.graph();
  if (kprime.is_trivial()) return g.size() == 1 && g.edge_count() == 0;
  auto cuts = tr.cut_ends();
  auto comps = components(g);
  if (cuts.empty()) {
    if (comps.size() != 1) return false;
    return same_core_graph(trim_pendants(g, kNoState), kprime);
  }
  if (cuts.size() != 2 || comps.size() != 2) return false;
  const auto& head = comps[0].front() == 0 ? comps[0] : comps[1];
  const auto& tail = comps[0].front() == 0 ? comps[1] : comps[0];
  if (!is_simple_path_from_origin(g, head)) return false;
  return same_core_graph(trim_pendants(component_graph(g, tail), kNoState), kprime);
}

inline Query make_query(const Instance& in) {
  require_rank2(in.h);
  Query q;
  auto need_words = [&](std::size_t n) {
    if (in.words.size() < n) throw invalid_input("problem " + to_string(in.kind) + " needs a word");
  };
  switch (in.kind) {
    case ProblemKind::member: {
      need_words(1);
      Word u = in.words[0];
      q.t = choose_t(in.h, {u});
      q.accept = [u](const TruncatedAutomaton& tr) { return tr.loops_at(0, u); };
      break;
    }
    case ProblemKind::member_conjugate: {
      need_words(1);
      Word c = cyclic_core(in.words[0]).core;
      q.t = choose_t(in.h, {c});
      q.accept = [c](const TruncatedAutomaton& tr) { return tr.loops_anywhere(c); };
      break;
    }
    case ProblemKind::multi_conjugate: {
      std::vector<Word> cs;
      for (const auto& u : in.words) cs.push_back(cyclic_core(u).core);
      q.t = choose_t(in.h, cs);
      q.accept = [cs](const TruncatedAutomaton& tr) {
        return std::all_of(cs.begin(), cs.end(), [&](const Word& c) { return tr.loops_anywhere(c); });
      };
      break;
    }
    case ProblemKind::contains: {
      auto gens = generators(in.k);
      q.t = choose_t(in.h, gens);
      q.accept = [gens](const TruncatedAutomaton& tr) {
        return std::all_of(gens.begin(), gens.end(), [&](const Word& w) { return tr.loops_at(0, w); });
      };
      break;
    }
    case ProblemKind::contains_conjugate: {
      auto gens = generators(core_conjugate(in.k).automaton);
      q.t = choose_t(in.h, gens);
      q.accept = [gens](const TruncatedAutomaton& tr) {
        for (int v = 0; v < tr.size(); ++v)
          if (std::all_of(gens.begin(), gens.end(), [&](const Word& w) { return tr.loops_at(v, w); })) return true;
        return false;
      };
      break;
    }
    case ProblemKind::equals: {
      q.t = std::max(choose_t(in.h, generators(in.k)), truncation_eccentricity(in.k));
      std::string key = truncate(in.k, q.t).key();
      q.accept = [key](const TruncatedAutomaton& tr) { return tr.key() == key; };
      break;
    }
    case ProblemKind::equals_conjugate: {
      StallingsAutomaton kp = core_conjugate(in.k).automaton;
      q.t = std::max({choose_t(in.h, generators(kp)), diameter(kp.graph()), 1});
      q.accept = [kp](const TruncatedAutomaton& tr) { return conjugate_shape(tr, kp); };
      break;
    }
  }
  return q;
}

}  // namespace detail

// Emptiness of R intersected with the accepted states of the transition
// system, by breadth-first search of the product. Yes-answers carry a
// shortest witness.
inline Decision decide_rational(const Instance& in, const SigmaRational& r, Limits limits = {}) {
  auto q = detail::make_query(in);
  TransitionSystem ts(in.h, q.t, limits);
  std::vector<signed char> verdict;
  auto accepted = [&](int s) {
    if (verdict.size() < ts.size()) verdict.resize(ts.size(), -1);
    auto& v = verdict[static_cast<std::size_t>(s)];
    if (v < 0) v = q.accept(ts.state(s)) ? 1 : 0;
    return v == 1;
  };

  const auto& nfa = r.nfa;
  struct Node {
    int nfa_state;
    int ts_state;
    int parent;
    SigmaLetter via;
  };
  std::vector<Node> nodes{{nfa.initial, 0, -1, SigmaLetter::S}};
  std::unordered_map<std::uint64_t, int> seen;
  auto key = [](int a, int b) { return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b); };
  seen.emplace(key(nfa.initial, 0), 0);
  Decision d;
  d.t = q.t;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Node cur = nodes[i];
    if (nfa.terminal[static_cast<std::size_t>(cur.nfa_state)] && accepted(cur.ts_state)) {
      Witness w;
      for (int j = static_cast<int>(i); nodes[static_cast<std::size_t>(j)].parent >= 0; j = nodes[static_cast<std::size_t>(j)].parent)
        w.sigma_word.push_back(nodes[static_cast<std::size_t>(j)].via);
      std::reverse(w.sigma_word.begin(), w.sigma_word.end());
      w.conjugator = Word(2);
      d.answer = true;
      d.witness = std::move(w);
      break;
    }
    for (auto [letter, target] : nfa.edges[static_cast<std::size_t>(cur.nfa_state)]) {
      auto s = static_cast<SigmaLetter>(letter);
      int next = ts.step(cur.ts_state, s);
      if (seen.emplace(key(target, next), static_cast<int>(nodes.size())).second)
        nodes.push_back({target, next, static_cast<int>(i), s});
    }
  }
  d.states = ts.size();
  return d;
}

// Checks the kind's condition on the untruncated automaton mu(H).
inline bool verify_witness(const Instance& in, const SigmaWord& w) {
  StallingsAutomaton img = sigma_apply_direct(in.h, w);
  switch (in.kind) {
    case ProblemKind::member: return contains(img, in.words.at(0));
    case ProblemKind::member_conjugate: return contains_conjugate(img, in.words.at(0));
    case ProblemKind::multi_conjugate:
      return std::all_of(in.words.begin(), in.words.end(), [&](const Word& u) { return contains_conjugate(img, u); });
    case ProblemKind::contains: {
      auto gens = generators(in.k);
      return std::all_of(gens.begin(), gens.end(), [&](const Word& g) { return contains(img, g); });
    }
    case ProblemKind::contains_conjugate: {
      auto gens = generators(core_conjugate(in.k).automaton);
      for (int v = 0; v < img.state_count(); ++v)
        if (std::all_of(gens.begin(), gens.end(), [&](const Word& g) { return img.read(v, g) == v; })) return true;
      return false;
    }
    case ProblemKind::equals: return equal_subgroups(img, in.k);
    case ProblemKind::equals_conjugate: {
      auto kp = core_conjugate(in.k).automaton;
      auto ip = core_conjugate(img).automaton;
      return kp.is_trivial() ? ip.is_trivial() : same_core_graph(ip.graph(), kp);
    }
  }
  return false;
}

// Sigma-words accepted as witnesses, as a deterministic automaton over the
// full closure.
enum class WitnessMode { at_origin, conjugate };

inline SigmaRational witness_language(const Word& u, const StallingsAutomaton& h, WitnessMode mode,
                                      Limits limits = {}) {
  Instance in;
  in.kind = mode == WitnessMode::at_origin ? ProblemKind::member : ProblemKind::member_conjugate;
  in.words = {u};
  in.h = h;
  auto q = detail::make_query(in);
  TransitionSystem ts = closure_system(h, q.t, {kSigma.begin(), kSigma.end()}, limits);
  SigmaRational r;
  r.nfa.alphabet = "SIX";
  r.nfa.initial = 0;
  for (std::size_t s = 0; s < ts.size(); ++s) {
    r.nfa.terminal.push_back(q.accept(ts.state(static_cast<int>(s))));
    std::vector<std::pair<int, int>> es;
    for (auto l : kSigma) es.emplace_back(static_cast<int>(l), ts.transition(static_cast<int>(s), l));
    r.nfa.edges.push_back(std::move(es));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Invertible substitutions.

enum class SubstitutionKind { is, is_inverse };

struct SubstitutionEncoding {
  std::string sigma_regex;
  SigmaRational rational;
  // Applied to u and H before solving: phi_{a,b^-1} for the inverse monoid.
  std::optional<Endo2> outer;

  Instance transform(Instance in) const {
    if (!outer) return in;
    for (auto& w : in.words) w = (*outer)(w);
    auto map_sub = [&](const StallingsAutomaton& a) {
      std::vector<Word> imgs;
      for (const auto& g : generators(a)) imgs.push_back((*outer)(g));
      return fold_generators(imgs);
    };
    in.h = map_sub(in.h);
    in.k = map_sub(in.k);
    return in;
  }
};

// Letters P = phi_{b,a}, S = phi_{a,ba}, T = phi_{a,ab}. For the inverse
// monoid a word c1..cn denotes cn^-1 o ... o c1^-1.
inline SubstitutionEncoding encode_invertible_substitutions(SubstitutionKind kind, std::string_view pst_regex) {
  parse_regex(pst_regex, "PST");  // validates syntax and alphabet
  const bool inv = kind == SubstitutionKind::is_inverse;
  auto image = [&](char c) -> std::string {
    switch (c) {
      case 'P': return inv ? "I" : "X";
      case 'S': return inv ? "XISIX" : "S";
      case 'T': return inv ? "S" : "XISIX";
    }
    return std::string(1, c);
  };
  std::string out;
  for (std::size_t i = 0; i < pst_regex.size(); ++i) {
    char c = pst_regex[i];
    if (c != 'P' && c != 'S' && c != 'T') {
      out.push_back(c);
      continue;
    }
    std::string img = image(c);
    std::size_t j = i + 1;
    while (j < pst_regex.size() && pst_regex[j] == ' ') ++j;
    bool postfix = j < pst_regex.size() && (pst_regex[j] == '*' || pst_regex[j] == '+' || pst_regex[j] == '?');
    out += (postfix && img.size() > 1) ? "(" + img + ")" : img;
  }
  SubstitutionEncoding e{out, parse_sigma_regex(out), std::nullopt};
  if (inv) e.outer = Endo2("a", "B");
  return e;
}

// ---------------------------------------------------------------------------
// The orbit of u under all of Aut F2.

struct FullAutWitness {
  SigmaWord sigma_word;
  Endo2 psi;
  Endo2 prefix;
  long n = 0;
  Word conjugator;

  // theta = psi^-1 nu^-1 lambda_w phi_{a,ba}^n p, with theta(u) in H.
  Endo2 automorphism() const {
    Endo2 phin;
    for (long i = 0; i < n; ++i) phin = compose(sigma_endo(SigmaLetter::S), phin);
    return compose(psi_inverse(psi), sigma_word_inverse(sigma_word), inner(conjugator), phin, prefix);
  }

  Witness summary() const { return {sigma_word, psi.compact(), prefix.compact(), n, conjugator}; }
};

struct FullAutDecision {
  bool answer = false;
  std::optional<FullAutWitness> witness;
  std::size_t states = 0;
  int t = 0;

  Decision summary() const {
    Decision d{answer, std::nullopt, states, t};
    if (witness) d.witness = witness->summary();
    return d;
  }
};

inline std::uint64_t lcm_upto(int k, std::uint64_t cap) {
  std::uint64_t m = 1;
  for (int i = 2; i <= k; ++i) {
    m = std::lcm(m, static_cast<std::uint64_t>(i));
    if (m > cap) throw resource_limit("lcm(1.." + std::to_string(k) + ") exceeds the cap " + std::to_string(cap));
  }
  return m;
}

inline constexpr std::uint64_t kLcmCap = 1'000'000;

inline FullAutDecision decide_full_aut(const Word& u, const StallingsAutomaton& h, Limits limits = {}) {
  require_rank2(h);
  if (u.rank() != 2) throw unsupported_rank("words must have rank 2");
  FullAutDecision d;
  if (u.empty()) {
    d.answer = true;
    d.witness = FullAutWitness{{}, Endo2{}, Endo2{}, 0, Word(2)};
    return d;
  }
  const Endo2 s_endo = sigma_endo(SigmaLetter::S);
  const std::vector<Endo2> prefixes = {Endo2("A", "b"), Endo2("A", "B")};
  for (const Endo2& psi : psi_set()) {
    StallingsAutomaton hp = sigma_apply_refold(h, psi);
    MetricBundle m = metrics(hp);
    std::uint64_t big_m = lcm_upto(m.delta0, kLcmCap);

    struct Candidate {
      std::size_t prefix;
      long n;
      Word x;     // phi^n(p(u))
      Word core;  // cc(x)
    };
    std::vector<Candidate> cands;
    for (std::size_t pi = 0; pi < prefixes.size(); ++pi) {
      Word x = prefixes[pi](u);
      Word c = cyclic_core(x).core;
      bool only_a = std::all_of(c.begin(), c.end(), [](Letter l) { return l.generator() == 0; });
      long bound = only_a ? 1 : static_cast<long>(c.size()) + static_cast<long>(std::max<std::uint64_t>(big_m, static_cast<std::uint64_t>(m.delta)));
      for (long n = 0; n < bound; ++n) {
        if (x.size() > limits.max_aut_size)
          throw resource_limit("word length exceeds the automaton size cap " + std::to_string(limits.max_aut_size));
        cands.push_back({pi, n, x, cyclic_core(x).core});
        x = s_endo(x);
      }
    }
    std::vector<Word> cores;
    for (const auto& c : cands) cores.push_back(c.core);
    int t = choose_t(hp, cores);
    TransitionSystem ts(hp, t, limits);
    ts.close({kSigma0.begin(), kSigma0.end()});
    d.states += ts.size();
    d.t = std::max(d.t, t);

    for (const auto& c : cands) {
      for (std::size_t s = 0; s < ts.size(); ++s) {
        if (!ts.state(static_cast<int>(s)).loops_anywhere(c.core)) continue;
        FullAutWitness w;
        w.sigma_word = ts.word_to(static_cast<int>(s));
        w.psi = psi;
        w.prefix = prefixes[c.prefix];
        w.n = c.n;
        StallingsAutomaton img = sigma_apply_direct(hp, w.sigma_word);
        auto [core, conj] = cyclic_core(c.x);
        auto labels = geodesic_labels(img);
        int q = kNoState;
        for (int v = 0; v < img.state_count() && q == kNoState; ++v)
          if (img.read(v, core) == v) q = v;
        if (q == kNoState) throw std::logic_error("truncated loop has no counterpart in the full automaton");
        w.conjugator = conj.inverse() * labels[static_cast<std::size_t>(q)].inverse();
        d.answer = true;
        d.witness = std::move(w);
        return d;
      }
    }
  }
  return d;
}

inline bool verify_full_aut(const Word& u, const StallingsAutomaton& h, const FullAutWitness& w) {
  Endo2 theta = w.automorphism();
  return is_automorphism(theta) && contains(h, theta(u));
}

inline FullAutDecision contains_primitive(const StallingsAutomaton& h, Limits limits = {}) {
  return decide_full_aut(Word::parse("a"), h, limits);
}

}  // namespace fgorbits
