#pragma once

// Stallings automata of finitely generated subgroups.
//
// A StallingsAutomaton is kept in canonical form: it is folded, trimmed to
// its core (every state other than the origin has degree at least 2) and its
// states are numbered in BFS order from the origin, which is state 0. Two
// automata therefore represent the same subgroup exactly when they are equal
// as data.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"
#include "words.hpp"

namespace fgorbits {

class StallingsAutomaton {
 public:
  // The trivial subgroup of rank 2.
  StallingsAutomaton() : StallingsAutomaton(2) {}
  explicit StallingsAutomaton(int rank) : graph_(rank, 1) {}

  // Takes a deterministic graph, trims it to the core around `origin` and
  // renumbers it canonically. Components not containing the origin are
  // dropped.
  static StallingsAutomaton from_graph(const LabeledGraph& g, int origin) {
    std::vector<int> renumber;
    LabeledGraph core = trim_pendants(g, origin, &renumber);
    int o = renumber[static_cast<std::size_t>(origin)];
    auto order = bfs_order(core, o);
    std::vector<int> perm(static_cast<std::size_t>(core.size()), kNoState);
    for (std::size_t i = 0; i < order.size(); ++i) perm[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    StallingsAutomaton a(g.rank);
    a.graph_ = core.permuted(perm, static_cast<int>(order.size()));
    return a;
  }

  int rank() const { return graph_.rank; }
  int state_count() const { return graph_.size(); }
  int size() const { return graph_.size(); }
  static constexpr int origin() { return 0; }
  const LabeledGraph& graph() const { return graph_; }

  int target(int state, Letter l) const { return graph_.step(state, l); }
  int read(int state, const Word& w) const { return graph_.read(state, w); }
  int degree(int state) const { return graph_.degree(state); }
  std::size_t edge_count() const { return graph_.edge_count(); }

  bool is_bouquet() const {
    if (state_count() != 1) return false;
    for (int g = 0; g < rank(); ++g)
      if (graph_.out[static_cast<std::size_t>(g)][0] != 0) return false;
    return true;
  }

  bool is_trivial() const { return state_count() == 1 && edge_count() == 0; }

  std::vector<int> code() const { return rooted_code(graph_, 0); }

  friend bool operator==(const StallingsAutomaton& x, const StallingsAutomaton& y) {
    return x.graph_.rank == y.graph_.rank && x.graph_.out == y.graph_.out;
  }

 private:
  LabeledGraph graph_;
};

inline void require_rank2(const StallingsAutomaton& a) {
  if (a.rank() != 2)
    throw unsupported_rank("operation is defined for rank 2 only (got rank " + std::to_string(a.rank()) + ")");
}

// Builds A(<gens>) by folding a bouquet of petals. With `seed`, folding and
// generator order are randomized (the result does not depend on either).
inline StallingsAutomaton fold_generators(const std::vector<Word>& gens, int rank = 2,
                                          std::optional<std::uint64_t> seed = std::nullopt) {
  for (const Word& w : gens)
    if (w.rank() != rank) throw invalid_input("generator rank does not match automaton rank");
  detail::Folder folder(rank);
  int origin = folder.add_vertex();
  std::vector<std::size_t> order(gens.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed.value_or(0));
  if (seed) std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i : order)
    if (!gens[i].empty()) folder.add_path(origin, gens[i], origin);
  folder.fold(seed ? &rng : nullptr);
  std::vector<int> map;
  LabeledGraph g = folder.result(&map);
  return StallingsAutomaton::from_graph(g, map[static_cast<std::size_t>(origin)]);
}

inline bool contains(const StallingsAutomaton& a, const Word& u) {
  if (u.rank() != a.rank()) throw invalid_input("word rank does not match automaton rank");
  return a.read(a.origin(), u) == a.origin();
}

// True iff the cyclic core of u labels a loop at some state, i.e. some
// conjugate of u lies in the subgroup.
inline bool contains_conjugate(const StallingsAutomaton& a, const Word& u) {
  if (u.rank() != a.rank()) throw invalid_input("word rank does not match automaton rank");
  Word c = cyclic_core(u).core;
  for (int s = 0; s < a.state_count(); ++s)
    if (a.read(s, c) == s) return true;
  return false;
}

inline bool equal_subgroups(const StallingsAutomaton& x, const StallingsAutomaton& y) {
  if (x.rank() != y.rank()) throw invalid_input("rank mismatch");
  return x.code() == y.code();
}

// Labels of BFS-tree (geodesic) paths from the origin to each state.
inline std::vector<Word> geodesic_labels(const StallingsAutomaton& a) {
  std::vector<Word> label(static_cast<std::size_t>(a.state_count()), Word(a.rank()));
  std::vector<char> seen(static_cast<std::size_t>(a.state_count()), 0);
  std::vector<int> queue{a.origin()};
  seen[0] = 1;
  const auto letters = visiting_order(a.rank());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    for (Letter l : letters) {
      int t = a.target(v, l);
      if (t != kNoState && !seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = 1;
        label[static_cast<std::size_t>(t)] = label[static_cast<std::size_t>(v)] * Word::letter(l, a.rank());
        queue.push_back(t);
      }
    }
  }
  return label;
}

// A free basis read off a spanning tree: one generator per non-tree edge.
inline std::vector<Word> generators(const StallingsAutomaton& a) {
  auto label = geodesic_labels(a);
  std::vector<Word> gens;
  const auto& g = a.graph();
  for (int gen = 0; gen < a.rank(); ++gen) {
    for (int p = 0; p < a.state_count(); ++p) {
      int q = g.out[static_cast<std::size_t>(gen)][static_cast<std::size_t>(p)];
      if (q == kNoState) continue;
      Word x = label[static_cast<std::size_t>(p)] * Word::letter(Letter(gen, 1), a.rank()) *
               label[static_cast<std::size_t>(q)].inverse();
      if (!x.empty()) gens.push_back(std::move(x));
    }
  }
  return gens;
}

// ---------------------------------------------------------------------------
// Singularities, bridges and homogeneous-path metrics (rank 2).

struct SingularityProfile {
  std::vector<int> sources;
  std::vector<int> sinks;
  int sigma = 1;
};

inline bool is_source(const LabeledGraph& g, int v) {
  return g.out[0][static_cast<std::size_t>(v)] != kNoState && g.out[1][static_cast<std::size_t>(v)] != kNoState;
}

inline bool is_sink(const LabeledGraph& g, int v) {
  return g.in[0][static_cast<std::size_t>(v)] != kNoState && g.in[1][static_cast<std::size_t>(v)] != kNoState;
}

inline SingularityProfile singularity_profile(const StallingsAutomaton& a) {
  require_rank2(a);
  SingularityProfile p;
  for (int v = 0; v < a.state_count(); ++v) {
    if (is_source(a.graph(), v)) p.sources.push_back(v);
    if (is_sink(a.graph(), v)) p.sinks.push_back(v);
  }
  p.sigma = std::max<int>(1, static_cast<int>(p.sources.size() + p.sinks.size()));
  return p;
}

// Sing(H): the sources, the sinks and the origin.
inline std::vector<char> singular_mask(const StallingsAutomaton& a) {
  std::vector<char> m(static_cast<std::size_t>(a.state_count()), 0);
  m[0] = 1;
  for (int v = 0; v < a.state_count(); ++v)
    if (is_source(a.graph(), v) || is_sink(a.graph(), v)) m[static_cast<std::size_t>(v)] = 1;
  return m;
}

struct Bridge {
  int start = 0;
  int end = 0;
  Word label;
  std::vector<int> vertices;  // start, interior..., end
};

inline std::vector<Bridge> bridge_decomposition(const StallingsAutomaton& a) {
  require_rank2(a);
  const auto& g = a.graph();
  auto sing = singular_mask(a);
  std::vector<Bridge> bridges;
  for (int s = 0; s < a.state_count(); ++s) {
    if (!sing[static_cast<std::size_t>(s)]) continue;
    for (int gen = 0; gen < 2; ++gen) {
      int cur = g.out[static_cast<std::size_t>(gen)][static_cast<std::size_t>(s)];
      if (cur == kNoState) continue;
      Bridge b;
      b.start = s;
      b.label = Word::letter(Letter(gen, 1), 2);
      b.vertices = {s, cur};
      std::size_t guard = 0;
      while (!sing[static_cast<std::size_t>(cur)]) {
        if (++guard > static_cast<std::size_t>(a.state_count()))
          throw std::logic_error("bridge walk did not reach a singularity");
        int next_gen = g.out[0][static_cast<std::size_t>(cur)] != kNoState ? 0 : 1;
        int next = g.out[static_cast<std::size_t>(next_gen)][static_cast<std::size_t>(cur)];
        b.label *= Word::letter(Letter(next_gen, 1), 2);
        cur = next;
        b.vertices.push_back(cur);
      }
      b.end = cur;
      bridges.push_back(std::move(b));
    }
  }
  return bridges;
}

struct MetricBundle {
  int sigma = 1;
  int hc = 0;      // longest homogeneous cycle
  int hcfp = 0;    // longest homogeneous cycle-free path
  int shcfp = 0;   // longest special homogeneous cycle-free path (positive labels)
  int delta0 = 1;
  int delta = 1;
  int zeta = 1;
  friend bool operator==(const MetricBundle&, const MetricBundle&) = default;
};

namespace detail {

// Splits the partial injection of one letter into maximal chains and cycles.
struct LetterOrbits {
  std::vector<std::vector<int>> chains;  // v0 -> v1 -> ... (at least one edge)
  std::vector<std::vector<int>> cycles;  // c0 -> c1 -> ... -> c0
};

inline LetterOrbits letter_orbits(const LabeledGraph& g, int gen) {
  const auto& out = g.out[static_cast<std::size_t>(gen)];
  const auto& in = g.in[static_cast<std::size_t>(gen)];
  LetterOrbits r;
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  for (int v = 0; v < g.size(); ++v) {
    if (in[static_cast<std::size_t>(v)] != kNoState || out[static_cast<std::size_t>(v)] == kNoState) continue;
    std::vector<int> chain;
    for (int c = v; c != kNoState; c = out[static_cast<std::size_t>(c)]) {
      chain.push_back(c);
      seen[static_cast<std::size_t>(c)] = 1;
    }
    r.chains.push_back(std::move(chain));
  }
  for (int v = 0; v < g.size(); ++v) {
    if (seen[static_cast<std::size_t>(v)] || out[static_cast<std::size_t>(v)] == kNoState) continue;
    std::vector<int> cyc;
    for (int c = v; !seen[static_cast<std::size_t>(c)]; c = out[static_cast<std::size_t>(c)]) {
      cyc.push_back(c);
      seen[static_cast<std::size_t>(c)] = 1;
    }
    r.cycles.push_back(std::move(cyc));
  }
  return r;
}

}  // namespace detail

inline MetricBundle metrics(const StallingsAutomaton& a) {
  require_rank2(a);
  const auto& g = a.graph();
  MetricBundle m;
  m.sigma = singularity_profile(a).sigma;
  auto start_ok = [&](int v) { return v == 0 || is_source(g, v); };
  auto end_ok = [&](int v) { return v == 0 || is_sink(g, v); };
  for (int gen = 0; gen < 2; ++gen) {
    auto orbits = detail::letter_orbits(g, gen);
    for (const auto& ch : orbits.chains) {
      int len = static_cast<int>(ch.size()) - 1;
      m.hcfp = std::max(m.hcfp, len);
      int best_start = -1;
      for (int j = 0; j < static_cast<int>(ch.size()); ++j) {
        if (best_start >= 0 && end_ok(ch[static_cast<std::size_t>(j)])) m.shcfp = std::max(m.shcfp, j - best_start);
        if (best_start < 0 && start_ok(ch[static_cast<std::size_t>(j)])) best_start = j;
      }
    }
    for (const auto& cyc : orbits.cycles) {
      int L = static_cast<int>(cyc.size());
      m.hc = std::max(m.hc, L);
      m.hcfp = std::max(m.hcfp, L - 1);
      // For each end j, the farthest admissible start is the first start
      // strictly after j going forward; its forward distance to j is L - gap.
      std::vector<int> next_start(static_cast<std::size_t>(2 * L + 1), -1);
      for (int p = 2 * L - 1; p >= 0; --p)
        next_start[static_cast<std::size_t>(p)] =
            start_ok(cyc[static_cast<std::size_t>(p % L)]) ? p : next_start[static_cast<std::size_t>(p + 1)];
      for (int j = 0; j < L; ++j) {
        if (!end_ok(cyc[static_cast<std::size_t>(j)])) continue;
        int i = next_start[static_cast<std::size_t>(j + 1)];
        if (i < 0 || i >= j + L) continue;
        m.shcfp = std::max(m.shcfp, L - (i - j));
      }
    }
  }
  m.delta0 = std::max(m.sigma, m.hc);
  m.delta = std::max(m.delta0, m.hcfp);
  m.zeta = std::max(m.delta0, m.shcfp);
  return m;
}

// ---------------------------------------------------------------------------
// Cores and conjugates.

// Strips the stem hanging from the origin and re-roots at the first state of
// degree >= 2. Returns the automaton of a cyclically reduced conjugate K' of K
// together with the label w of the stem, so that K = w K' w^-1.
struct CoreConjugate {
  StallingsAutomaton automaton;
  Word stem;
};

inline CoreConjugate core_conjugate(const StallingsAutomaton& a) {
  if (a.is_trivial()) return {a, Word(a.rank())};
  std::vector<int> on_core;
  trim_pendants(a.graph(), kNoState, &on_core);
  int v = a.origin();
  int prev = kNoState;
  Word stem(a.rank());
  const auto letters = visiting_order(a.rank());
  while (on_core[static_cast<std::size_t>(v)] == kNoState) {
    for (Letter l : letters) {
      int t = a.target(v, l);
      if (t != kNoState && t != prev) {
        stem *= Word::letter(l, a.rank());
        prev = v;
        v = t;
        break;
      }
    }
  }
  return {StallingsAutomaton::from_graph(a.graph(), v), stem};
}

// Rooted codes of the cycle core at every root; used for unrooted isomorphism.
inline bool same_core_graph(const LabeledGraph& core, const StallingsAutomaton& reference) {
  if (core.size() != reference.state_count()) return false;
  auto ref = reference.code();
  for (int r = 0; r < core.size(); ++r)
    if (rooted_code(core, r) == ref) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Basis completion for a corank-1 free factor.

namespace detail {

// Epsilon-saturated automaton deciding membership of reduced words in the
// rational subset V z V (V a subgroup given by its Stallings automaton).
class DoubleCosetRecognizer {
 public:
  DoubleCosetRecognizer(const StallingsAutomaton& v, const Word& z) : rank_(v.rank()) {
    int n = v.state_count();
    // copy 1: states [0, n); copy 2: states [n, 2n); then interior of z.
    states_ = 2 * n;
    initial_ = 0;
    final_ = n;
    for (int copy = 0; copy < 2; ++copy)
      for (int gen = 0; gen < rank_; ++gen)
        for (int p = 0; p < n; ++p) {
          int q = v.graph().out[static_cast<std::size_t>(gen)][static_cast<std::size_t>(p)];
          if (q == kNoState) continue;
          edges_.push_back({p + copy * n, Letter(gen, 1), q + copy * n});
          edges_.push_back({q + copy * n, Letter(gen, -1), p + copy * n});
        }
    int cur = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      int next = (i + 1 == z.size()) ? n : states_++;
      edges_.push_back({cur, z[i], next});
      cur = next;
    }
    eps_.assign(static_cast<std::size_t>(states_), std::vector<char>(static_cast<std::size_t>(states_), 0));
    for (int s = 0; s < states_; ++s) eps_[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] = 1;
    if (z.empty()) eps_[0][static_cast<std::size_t>(n)] = 1;
    saturate();
  }

  bool accepts(const Word& x) const {
    std::vector<char> cur(static_cast<std::size_t>(states_), 0);
    cur = closure_of(initial_);
    for (Letter l : x) {
      std::vector<char> next(static_cast<std::size_t>(states_), 0);
      for (const auto& e : edges_)
        if (e.label == l && cur[static_cast<std::size_t>(e.from)])
          for (int s = 0; s < states_; ++s)
            if (eps_[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(s)]) next[static_cast<std::size_t>(s)] = 1;
      cur = std::move(next);
    }
    return cur[static_cast<std::size_t>(final_)];
  }

 private:
  struct Edge {
    int from;
    Letter label;
    int to;
  };

  std::vector<char> closure_of(int s) const { return eps_[static_cast<std::size_t>(s)]; }

  void close() {
    for (int k = 0; k < states_; ++k)
      for (int i = 0; i < states_; ++i)
        if (eps_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
          for (int j = 0; j < states_; ++j)
            if (eps_[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) eps_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
  }

  // Adds p ~> q whenever p -x-> r ~> r' -x^-1-> q.
  void saturate() {
    bool changed = true;
    while (changed) {
      changed = false;
      close();
      for (const auto& e1 : edges_)
        for (const auto& e2 : edges_) {
          if (e2.label != e1.label.inverse()) continue;
          if (!eps_[static_cast<std::size_t>(e1.to)][static_cast<std::size_t>(e2.from)]) continue;
          auto& cell = eps_[static_cast<std::size_t>(e1.from)][static_cast<std::size_t>(e2.to)];
          if (!cell) {
            cell = 1;
            changed = true;
          }
        }
    }
  }

  int rank_;
  int states_ = 0;
  int initial_ = 0;
  int final_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<char>> eps_;
};

}  // namespace detail

// All completions of a corank-1 free factor V to a basis: X = V (z | z^-1) V.
struct BasisCompletion {
  Word z;
  std::vector<Word> factor;  // generators of V
  int rank = 2;

  // Membership of x in V z V or V z^-1 V.
  bool contains(const Word& x) const {
    auto v = fold_generators(factor, rank);
    return detail::DoubleCosetRecognizer(v, z).accepts(x) ||
           detail::DoubleCosetRecognizer(v, z.inverse()).accepts(x);
  }

  std::string describe() const {
    std::string s = "V(z | z^-1)V with z = " + z.to_string() + ", V = <";
    for (std::size_t i = 0; i < factor.size(); ++i) s += (i ? "," : "") + factor[i].to_string();
    return s + ">";
  }
};

inline bool is_basis(const std::vector<Word>& words, int rank) {
  return static_cast<int>(words.size()) == rank && fold_generators(words, rank).is_bouquet();
}

// Searches for z completing `gens` (m-1 words in rank m) to a basis. The
// candidates are u_p u_q^-1 for distinct states p < q of A(<gens>) (vertex
// identification) and u_p x u_q^-1 for a letter x (edge insertion), where u_p
// is the geodesic label of p; the first candidate in this order wins.
inline std::optional<BasisCompletion> basis_completion(const std::vector<Word>& gens, int rank) {
  if (rank < 1) throw invalid_input("rank must be positive");
  if (static_cast<int>(gens.size()) != rank - 1)
    throw invalid_input("basis completion needs exactly rank-1 generators (got " +
                        std::to_string(gens.size()) + " for rank " + std::to_string(rank) + ")");
  auto a = fold_generators(gens, rank);
  auto label = geodesic_labels(a);
  auto works = [&](const Word& z) {
    auto all = gens;
    all.push_back(z);
    return is_basis(all, rank);
  };
  const int n = a.state_count();
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      Word z = label[static_cast<std::size_t>(p)] * label[static_cast<std::size_t>(q)].inverse();
      if (works(z)) return BasisCompletion{z, gens, rank};
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int gen = 0; gen < rank; ++gen) {
        Word z = label[static_cast<std::size_t>(p)] * Word::letter(Letter(gen, 1), rank) *
                 label[static_cast<std::size_t>(q)].inverse();
        if (works(z)) return BasisCompletion{z, gens, rank};
      }
  return std::nullopt;
}

}  // namespace fgorbits
