#pragma once

// The action of Sigma = {S, I, X} on Stallings automata, t-truncations and
// the finite transition system they generate.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "endo2.hpp"
#include "graph.hpp"
#include "stallings.hpp"

namespace fgorbits {

struct Limits {
  std::size_t max_states = 1'000'000;
  std::size_t max_aut_size = 10'000;

  // FGORBITS_MAX_STATES and FGORBITS_MAX_AUT_SIZE override the defaults.
  static Limits from_env() {
    Limits l;
    auto read = [](const char* name, std::size_t& slot) {
      const char* v = std::getenv(name);
      if (!v || !*v) return;
      char* end = nullptr;
      unsigned long long x = std::strtoull(v, &end, 10);
      if (*end != '\0' || x == 0) throw invalid_input(std::string(name) + " must be a positive integer");
      slot = static_cast<std::size_t>(x);
    };
    read("FGORBITS_MAX_STATES", l.max_states);
    read("FGORBITS_MAX_AUT_SIZE", l.max_aut_size);
    return l;
  }
};

namespace detail {

// One Sigma letter on a deterministic rank-2 graph; the result is folded,
// trimmed around `origin` and renumbered.
inline StallingsAutomaton sigma_apply_graph(const LabeledGraph& g, int origin, SigmaLetter s) {
  if (g.rank != 2) throw unsupported_rank("Sigma acts on rank 2 automata");
  LabeledGraph h(2, g.size());
  switch (s) {
    case SigmaLetter::X:  // labels exchanged
      h.out = {g.out[1], g.out[0]};
      h.in = {g.in[1], g.in[0]};
      break;
    case SigmaLetter::I:  // p -a-> q becomes q -b-> p, p -b-> q becomes q -a-> p
      h.out = {g.in[1], g.in[0]};
      h.in = {g.out[1], g.out[0]};
      break;
    case SigmaLetter::S: {
      h.out[0] = g.out[0];
      h.in[0] = g.in[0];
      for (int p = 0; p < g.size(); ++p) {
        int q = g.out[1][static_cast<std::size_t>(p)];
        if (q == kNoState) continue;
        int r = g.in[0][static_cast<std::size_t>(q)];
        if (r != kNoState) {
          h.add_edge(p, 1, r);  // q is a sink: the new vertex folds onto r
        } else {
          int m = h.add_vertex();
          h.add_edge(p, 1, m);
          h.add_edge(m, 0, q);
        }
      }
      break;
    }
  }
  return StallingsAutomaton::from_graph(h, origin);
}

}  // namespace detail

inline StallingsAutomaton sigma_apply_direct(const StallingsAutomaton& a, SigmaLetter s) {
  require_rank2(a);
  return detail::sigma_apply_graph(a.graph(), a.origin(), s);
}

inline StallingsAutomaton sigma_apply_direct(const StallingsAutomaton& a, const SigmaWord& w) {
  StallingsAutomaton r = a;
  for (auto s : w) r = sigma_apply_direct(r, s);
  return r;
}

// Reference implementation: fold the images of a basis.
inline StallingsAutomaton sigma_apply_refold(const StallingsAutomaton& a, const Endo2& e) {
  require_rank2(a);
  std::vector<Word> imgs;
  for (const auto& g : generators(a)) imgs.push_back(e(g));
  return fold_generators(imgs);
}

// ---------------------------------------------------------------------------
// Truncations.

class TruncatedAutomaton {
 public:
  const LabeledGraph& graph() const { return graph_; }
  static constexpr int origin() { return 0; }
  int radius() const { return radius_; }
  int zeta_bound() const { return zeta_bound_; }
  const std::string& key() const { return key_; }
  int size() const { return graph_.size(); }

  bool is_singular(int v) const { return v == 0 || is_source(graph_, v) || is_sink(graph_, v); }

  // Non-origin vertices of degree 1: the ends of removed bridge middles.
  std::vector<int> cut_ends() const {
    std::vector<int> r;
    for (int v = 1; v < graph_.size(); ++v)
      if (graph_.degree(v) == 1) r.push_back(v);
    return r;
  }

  bool loops_at(int v, const Word& w) const { return graph_.read(v, w) == v; }

  bool loops_anywhere(const Word& w) const {
    for (int v = 0; v < graph_.size(); ++v)
      if (loops_at(v, w)) return true;
    return false;
  }

  friend bool operator==(const TruncatedAutomaton& x, const TruncatedAutomaton& y) { return x.key_ == y.key_; }

  // Canonicalizes an arbitrary truncation-shaped graph.
  static TruncatedAutomaton make(const LabeledGraph& g, int origin, int radius, int zeta_bound);

 private:
  LabeledGraph graph_;
  int radius_ = 1;
  int zeta_bound_ = 1;
  std::string key_;
};

namespace detail {

inline void append_ints(std::string& s, const std::vector<int>& v) {
  for (int x : v) {
    auto u = static_cast<std::uint32_t>(x);
    for (int k = 0; k < 4; ++k) s.push_back(static_cast<char>((u >> (8 * k)) & 0xff));
  }
}

}  // namespace detail

// The origin component is coded from the origin, every other component by its
// least code over its singular roots; other components are sorted by code.
inline TruncatedAutomaton TruncatedAutomaton::make(const LabeledGraph& g, int origin, int radius, int zeta_bound) {
  struct Part {
    std::vector<int> code;
    std::vector<int> order;
  };
  std::vector<char> is_origin_comp(static_cast<std::size_t>(g.size()), 0);
  Part head;
  head.code = rooted_code(g, origin, nullptr, &head.order);
  for (int v : head.order) is_origin_comp[static_cast<std::size_t>(v)] = 1;
  std::vector<Part> rest;
  for (const auto& comp : components(g)) {
    if (is_origin_comp[static_cast<std::size_t>(comp.front())]) continue;
    Part best;
    bool have = false;
    for (int pass = 0; pass < 2 && !have; ++pass) {
      for (int r : comp) {
        if (pass == 0 && !(is_source(g, r) || is_sink(g, r))) continue;
        std::vector<int> order;
        auto code = rooted_code(g, r, nullptr, &order);
        if (!have || code < best.code) {
          best = {std::move(code), std::move(order)};
          have = true;
        }
      }
    }
    rest.push_back(std::move(best));
  }
  std::sort(rest.begin(), rest.end(), [](const Part& x, const Part& y) { return x.code < y.code; });

  std::vector<int> perm(static_cast<std::size_t>(g.size()), kNoState);
  int n = 0;
  for (int v : head.order) perm[static_cast<std::size_t>(v)] = n++;
  for (const auto& p : rest)
    for (int v : p.order) perm[static_cast<std::size_t>(v)] = n++;

  TruncatedAutomaton t;
  t.graph_ = g.permuted(perm, n);
  t.radius_ = radius;
  t.zeta_bound_ = zeta_bound;
  detail::append_ints(t.key_, {radius, static_cast<int>(rest.size())});
  detail::append_ints(t.key_, head.code);
  for (const auto& p : rest) detail::append_ints(t.key_, p.code);
  return t;
}

namespace detail {

// The induced subgraph of A(H) within distance t of Sing(H) and the origin,
// with the new number of the origin.
inline std::pair<LabeledGraph, int> truncation_graph(const StallingsAutomaton& a, int t) {
  auto mask = singular_mask(a);
  std::vector<int> sources;
  for (int v = 0; v < a.state_count(); ++v)
    if (mask[static_cast<std::size_t>(v)]) sources.push_back(v);
  auto dist = distances_from(a.graph(), sources);
  std::vector<char> keep(static_cast<std::size_t>(a.state_count()), 0);
  for (int v = 0; v < a.state_count(); ++v) keep[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(v)] <= t;
  std::vector<int> renumber;
  LabeledGraph g = a.graph().induced(keep, &renumber);
  return {std::move(g), renumber[0]};
}

}  // namespace detail

// Removes every state farther than t from Sing(H) and the origin.
inline TruncatedAutomaton truncate(const StallingsAutomaton& a, int t) {
  require_rank2(a);
  if (t < 1) throw invalid_input("truncation radius must be at least 1");
  auto [g, origin] = detail::truncation_graph(a, t);
  return TruncatedAutomaton::make(g, origin, t, metrics(a).zeta);
}

// Largest distance from Sing(H) and the origin; truncation at this radius is
// the identity.
inline int truncation_eccentricity(const StallingsAutomaton& a) {
  auto mask = singular_mask(a);
  std::vector<int> sources;
  for (int v = 0; v < a.state_count(); ++v)
    if (mask[static_cast<std::size_t>(v)]) sources.push_back(v);
  auto dist = distances_from(a.graph(), sources);
  return std::max(1, *std::max_element(dist.begin(), dist.end()));
}

inline int diameter(const LabeledGraph& g) {
  int d = 0;
  for (int v = 0; v < g.size(); ++v) {
    auto dist = distances_from(g, {v});
    for (int x : dist) d = std::max(d, x);
  }
  return d;
}

inline int choose_t(const StallingsAutomaton& h, const std::vector<Word>& words) {
  int m = metrics(h).zeta;
  for (const auto& w : words) m = std::max(m, static_cast<int>(w.size()));
  return m / 2 + 1;
}

namespace detail {

// A full automaton whose truncation is T: every out-end (single incoming
// edge) is joined to an in-end (single outgoing edge) by a path labeled
// "ab", so each rebuilt bridge is a mixed word of length 2t + 2. Joins are
// re-paired until the result is connected.
inline LabeledGraph complete_truncation(const TruncatedAutomaton& t, std::size_t max_size) {
  const LabeledGraph& g = t.graph();
  std::vector<int> outs, ins;
  for (int v : t.cut_ends()) {
    bool has_in = g.in[0][static_cast<std::size_t>(v)] != kNoState || g.in[1][static_cast<std::size_t>(v)] != kNoState;
    (has_in ? outs : ins).push_back(v);
  }
  if (outs.size() != ins.size()) throw invalid_input("truncated automaton has unbalanced cut ends");
  const std::size_t k = outs.size();
  if (static_cast<std::size_t>(g.size()) + 2 * k > max_size)
    throw resource_limit("automaton size cap " + std::to_string(max_size) + " exceeded");

  std::vector<int> comp(static_cast<std::size_t>(g.size()), 0);
  auto comps = components(g);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp[static_cast<std::size_t>(v)] = static_cast<int>(c);

  // Union-find over components, optionally ignoring one join.
  auto linked = [&](std::size_t skip) {
    std::vector<int> parent(comps.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
    for (std::size_t i = 0; i < k; ++i) {
      if (i == skip) continue;
      parent[static_cast<std::size_t>(find(comp[static_cast<std::size_t>(outs[i])]))] = find(comp[static_cast<std::size_t>(ins[i])]);
    }
    std::vector<int> root(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) root[c] = find(static_cast<int>(c));
    return root;
  };
  for (;;) {
    auto root = linked(k);
    std::size_t classes = 0;
    for (std::size_t c = 0; c < comps.size(); ++c) classes += root[c] == static_cast<int>(c);
    if (classes <= 1) break;
    // A join on a cycle of the component graph can be swapped with a join of
    // another class without disconnecting anything.
    std::size_t i = k;
    for (std::size_t c = 0; c < k && i == k; ++c) {
      auto r = linked(c);
      if (r[static_cast<std::size_t>(comp[static_cast<std::size_t>(outs[c])])] ==
          r[static_cast<std::size_t>(comp[static_cast<std::size_t>(ins[c])])])
        i = c;
    }
    std::size_t j = k;
    if (i < k) {
      int ri = root[static_cast<std::size_t>(comp[static_cast<std::size_t>(outs[i])])];
      for (std::size_t c = 0; c < k && j == k; ++c)
        if (root[static_cast<std::size_t>(comp[static_cast<std::size_t>(outs[c])])] != ri) j = c;
    }
    if (i == k || j == k) throw invalid_input("truncated automaton cannot come from a connected automaton");
    std::swap(ins[i], ins[j]);
  }

  LabeledGraph full = g;
  for (std::size_t i = 0; i < k; ++i) {
    int m = full.add_vertex();
    full.add_edge(outs[i], 0, m);
    full.add_edge(m, 1, ins[i]);
  }
  return full;
}

}  // namespace detail

// A_t(g(K)) computed from A_t(K) alone.
inline TruncatedAutomaton truncated_step(const TruncatedAutomaton& t, SigmaLetter s,
                                         std::size_t max_aut_size = Limits{}.max_aut_size) {
  if (2 * t.radius() <= t.zeta_bound())
    throw invalid_input("truncation radius " + std::to_string(t.radius()) + " does not exceed zeta/2 = " +
                        std::to_string(t.zeta_bound()) + "/2");
  LabeledGraph full = detail::complete_truncation(t, max_aut_size);
  StallingsAutomaton next = detail::sigma_apply_graph(full, t.origin(), s);
  if (static_cast<std::size_t>(next.state_count()) > max_aut_size)
    throw resource_limit("automaton size cap " + std::to_string(max_aut_size) + " exceeded");
  auto [g, origin] = detail::truncation_graph(next, t.radius());
  return TruncatedAutomaton::make(g, origin, t.radius(), t.zeta_bound());
}

// ---------------------------------------------------------------------------
// Transition systems.

// Lazily explored Sigma-transition system on truncations of Sigma*(H).
class TransitionSystem {
 public:
  static constexpr int kUnknown = -2;

  TransitionSystem(const StallingsAutomaton& h, int t, Limits limits = {}) : limits_(limits), t_(t) {
    require_rank2(h);
    auto m = metrics(h);
    if (2 * t <= m.zeta)
      throw invalid_input("t = " + std::to_string(t) + " must exceed zeta/2 = " + std::to_string(m.zeta) + "/2");
    intern(truncate(h, t));
  }

  int radius() const { return t_; }
  static constexpr int initial() { return 0; }
  std::size_t size() const { return states_.size(); }
  const TruncatedAutomaton& state(int i) const { return states_[static_cast<std::size_t>(i)]; }
  const std::vector<TruncatedAutomaton>& states() const { return states_; }

  int transition(int from, SigmaLetter s) const {
    return trans_[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)];
  }

  int step(int from, SigmaLetter s) {
    int& slot = trans_[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)];
    if (slot == kUnknown) {
      TruncatedAutomaton next = truncated_step(states_[static_cast<std::size_t>(from)], s, limits_.max_aut_size);
      int id = intern(std::move(next), from, s);
      trans_[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)] = id;
      return id;
    }
    return slot;
  }

  // Explores everything reachable over `alphabet`.
  void close(const std::vector<SigmaLetter>& alphabet) {
    alphabet_ = alphabet;
    for (std::size_t i = 0; i < states_.size(); ++i)
      for (auto s : alphabet) step(static_cast<int>(i), s);
  }

  const std::vector<SigmaLetter>& alphabet() const { return alphabet_; }

  // The word along which a state was first discovered. After close() this
  // is a shortest word, with ties broken by letter order.
  SigmaWord word_to(int id) const {
    SigmaWord w;
    while (id != initial()) {
      auto [from, s] = parent_[static_cast<std::size_t>(id)];
      w.push_back(s);
      id = from;
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

  int find(const TruncatedAutomaton& t) const {
    auto it = index_.find(t.key());
    return it == index_.end() ? kNoState : it->second;
  }

 private:
  int intern(TruncatedAutomaton t, int from = kNoState, SigmaLetter s = SigmaLetter::S) {
    auto [it, fresh] = index_.emplace(t.key(), static_cast<int>(states_.size()));
    if (fresh) {
      if (states_.size() >= limits_.max_states) {
        index_.erase(it);
        throw resource_limit("state cap " + std::to_string(limits_.max_states) + " exceeded");
      }
      states_.push_back(std::move(t));
      trans_.push_back({kUnknown, kUnknown, kUnknown});
      parent_.emplace_back(from, s);
    }
    return it->second;
  }

  Limits limits_;
  int t_;
  std::vector<TruncatedAutomaton> states_;
  std::vector<std::array<int, 3>> trans_;
  std::vector<std::pair<int, SigmaLetter>> parent_;
  std::unordered_map<std::string, int> index_;
  std::vector<SigmaLetter> alphabet_;
};

inline TransitionSystem closure_system(const StallingsAutomaton& h, int t, const std::vector<SigmaLetter>& alphabet,
                                       Limits limits = {}) {
  TransitionSystem ts(h, t, limits);
  ts.close(alphabet);
  return ts;
}

// Stable 64-bit FNV-1a, used to name states in exports.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace fgorbits
