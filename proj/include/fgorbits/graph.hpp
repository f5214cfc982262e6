#pragma once

// Labeled graphs whose edges, per generator, form a partial injection.
// This is the common carrier for Stallings automata and their truncations.

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>
#include <vector>

#include "words.hpp"

namespace fgorbits {

inline constexpr int kNoState = -1;

struct LabeledGraph {
  int rank = 2;
  std::vector<std::vector<int>> out;  // out[g][v]: target of the g-edge leaving v
  std::vector<std::vector<int>> in;   // in[g][v]:  source of the g-edge entering v

  LabeledGraph() : LabeledGraph(2, 0) {}
  LabeledGraph(int r, int n)
      : rank(r),
        out(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(n), kNoState)),
        in(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(n), kNoState)) {}

  int size() const { return out.empty() ? 0 : static_cast<int>(out[0].size()); }

  int add_vertex() {
    for (auto& m : out) m.push_back(kNoState);
    for (auto& m : in) m.push_back(kNoState);
    return size() - 1;
  }

  // Throws std::logic_error if the edge would break determinism.
  void add_edge(int from, int g, int to) {
    auto& o = out[static_cast<std::size_t>(g)][static_cast<std::size_t>(from)];
    auto& i = in[static_cast<std::size_t>(g)][static_cast<std::size_t>(to)];
    if ((o != kNoState && o != to) || (i != kNoState && i != from))
      throw std::logic_error("edge insertion breaks determinism");
    o = to;
    i = from;
  }

  int step(int v, Letter l) const {
    if (v == kNoState) return kNoState;
    const auto& m = l.positive() ? out : in;
    return m[static_cast<std::size_t>(l.generator())][static_cast<std::size_t>(v)];
  }

  int read(int v, const Word& w) const {
    for (Letter l : w) {
      v = step(v, l);
      if (v == kNoState) return kNoState;
    }
    return v;
  }

  int degree(int v) const {
    int d = 0;
    for (int g = 0; g < rank; ++g) {
      d += out[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)] != kNoState;
      d += in[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)] != kNoState;
    }
    return d;
  }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (const auto& m : out)
      for (int t : m) c += t != kNoState;
    return c;
  }

  // Keeps the vertices with keep[v] set, renumbered in increasing order.
  LabeledGraph induced(const std::vector<char>& keep, std::vector<int>* renumber = nullptr) const {
    std::vector<int> idx(static_cast<std::size_t>(size()), kNoState);
    int n = 0;
    for (int v = 0; v < size(); ++v)
      if (keep[static_cast<std::size_t>(v)]) idx[static_cast<std::size_t>(v)] = n++;
    LabeledGraph h(rank, n);
    for (int g = 0; g < rank; ++g)
      for (int v = 0; v < size(); ++v) {
        int t = out[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)];
        if (t == kNoState) continue;
        int a = idx[static_cast<std::size_t>(v)];
        int b = idx[static_cast<std::size_t>(t)];
        if (a != kNoState && b != kNoState) h.add_edge(a, g, b);
      }
    if (renumber) *renumber = std::move(idx);
    return h;
  }

  // Applies a vertex permutation: perm[old] = new, over the vertices with perm != kNoState.
  LabeledGraph permuted(const std::vector<int>& perm, int new_size) const {
    LabeledGraph h(rank, new_size);
    for (int g = 0; g < rank; ++g)
      for (int v = 0; v < size(); ++v) {
        int t = out[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)];
        if (t == kNoState) continue;
        int a = perm[static_cast<std::size_t>(v)];
        int b = perm[static_cast<std::size_t>(t)];
        if (a != kNoState && b != kNoState) h.add_edge(a, g, b);
      }
    return h;
  }
};

// Letters in canonical visiting order: a < b < ... < a^-1 < b^-1 < ...
inline std::vector<Letter> visiting_order(int rank) {
  std::vector<Letter> order;
  for (int g = 0; g < rank; ++g) order.emplace_back(g, 1);
  for (int g = 0; g < rank; ++g) order.emplace_back(g, -1);
  return order;
}

// BFS numbering of the component of `root`, in canonical letter order.
inline std::vector<int> bfs_order(const LabeledGraph& gr, int root) {
  std::vector<int> order;
  std::vector<char> seen(static_cast<std::size_t>(gr.size()), 0);
  order.push_back(root);
  seen[static_cast<std::size_t>(root)] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto v = static_cast<std::size_t>(order[i]);
    for (const auto* side : {&gr.out, &gr.in})
      for (const auto& m : *side) {
        int t = m[v];
        if (t != kNoState && !seen[static_cast<std::size_t>(t)]) {
          seen[static_cast<std::size_t>(t)] = 1;
          order.push_back(t);
        }
      }
  }
  return order;
}

// Canonical code of the rooted component of `root`: vertex count, then per
// vertex in BFS order its positive-letter targets (BFS index or -1), then
// the optional per-vertex tags. The BFS order is stored in `order_out`.
inline std::vector<int> rooted_code(const LabeledGraph& gr, int root, const std::vector<int>* tags = nullptr,
                                    std::vector<int>* order_out = nullptr) {
  auto order = bfs_order(gr, root);
  std::vector<int> index(static_cast<std::size_t>(gr.size()), kNoState);
  for (std::size_t i = 0; i < order.size(); ++i) index[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::vector<int> code;
  code.reserve(1 + order.size() * static_cast<std::size_t>(gr.rank + 1));
  code.push_back(static_cast<int>(order.size()));
  for (int v : order) {
    for (int g = 0; g < gr.rank; ++g) {
      int t = gr.out[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)];
      code.push_back(t == kNoState ? -1 : index[static_cast<std::size_t>(t)]);
    }
    if (tags) code.push_back((*tags)[static_cast<std::size_t>(v)]);
  }
  if (order_out) *order_out = std::move(order);
  return code;
}

// Connected components, each listed in increasing vertex order.
inline std::vector<std::vector<int>> components(const LabeledGraph& gr) {
  std::vector<int> comp(static_cast<std::size_t>(gr.size()), kNoState);
  std::vector<std::vector<int>> result;
  for (int s = 0; s < gr.size(); ++s) {
    if (comp[static_cast<std::size_t>(s)] != kNoState) continue;
    auto order = bfs_order(gr, s);
    for (int v : order) comp[static_cast<std::size_t>(v)] = static_cast<int>(result.size());
    std::sort(order.begin(), order.end());
    result.push_back(std::move(order));
  }
  return result;
}

// Undirected BFS distances from a source set (kNoState = unreachable).
inline std::vector<int> distances_from(const LabeledGraph& gr, const std::vector<int>& sources) {
  std::vector<int> dist(static_cast<std::size_t>(gr.size()), kNoState);
  std::deque<int> queue;
  for (int s : sources) {
    if (dist[static_cast<std::size_t>(s)] == kNoState) {
      dist[static_cast<std::size_t>(s)] = 0;
      queue.push_back(s);
    }
  }
  const auto letters = visiting_order(gr.rank);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (Letter l : letters) {
      int t = gr.step(v, l);
      if (t != kNoState && dist[static_cast<std::size_t>(t)] == kNoState) {
        dist[static_cast<std::size_t>(t)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(t);
      }
    }
  }
  return dist;
}

// Repeatedly removes vertices of degree <= 1 other than `keep` (pass kNoState
// to strip everything that is not on a cycle).
inline LabeledGraph trim_pendants(const LabeledGraph& gr, int keep, std::vector<int>* renumber = nullptr) {
  std::vector<char> alive(static_cast<std::size_t>(gr.size()), 1);
  std::vector<int> deg(static_cast<std::size_t>(gr.size()));
  std::vector<int> stack;
  for (int v = 0; v < gr.size(); ++v) {
    deg[static_cast<std::size_t>(v)] = gr.degree(v);
    if (v != keep && deg[static_cast<std::size_t>(v)] <= 1) stack.push_back(v);
  }
  const auto letters = visiting_order(gr.rank);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (!alive[static_cast<std::size_t>(v)]) continue;
    alive[static_cast<std::size_t>(v)] = 0;
    for (Letter l : letters) {
      int t = gr.step(v, l);
      if (t == kNoState || !alive[static_cast<std::size_t>(t)] || t == v) continue;
      if (--deg[static_cast<std::size_t>(t)] <= 1 && t != keep) stack.push_back(t);
    }
  }
  return gr.induced(alive, renumber);
}

namespace detail {

// Stallings folding of an arbitrary labeled multigraph. Vertices are merged
// with a union-find; adjacency lists are merged on union and deduplicated
// lazily when a vertex is inspected.
class Folder {
 public:
  explicit Folder(int rank) : rank_(rank) {}

  int add_vertex() {
    parent_.push_back(static_cast<int>(parent_.size()));
    adj_.emplace_back(static_cast<std::size_t>(2 * rank_));
    return static_cast<int>(parent_.size()) - 1;
  }

  void add_edge(int from, Letter l, int to) {
    adj_[static_cast<std::size_t>(from)][static_cast<std::size_t>(l.code())].push_back(to);
    adj_[static_cast<std::size_t>(to)][static_cast<std::size_t>(l.inverse().code())].push_back(from);
  }

  // Adds a path spelling `w` from `from` to `to`, creating interior vertices.
  void add_path(int from, const Word& w, int to) {
    if (w.empty()) {
      merge(from, to);
      return;
    }
    int cur = from;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int next = (i + 1 == w.size()) ? to : add_vertex();
      add_edge(cur, w[i], next);
      cur = next;
    }
  }

  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
      v = parent_[static_cast<std::size_t>(v)];
    }
    return v;
  }

  void merge(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (weight(x) < weight(y)) std::swap(x, y);
    parent_[static_cast<std::size_t>(y)] = x;
    auto& ax = adj_[static_cast<std::size_t>(x)];
    auto& ay = adj_[static_cast<std::size_t>(y)];
    for (std::size_t c = 0; c < ax.size(); ++c) {
      ax[c].insert(ax[c].end(), ay[c].begin(), ay[c].end());
      ay[c].clear();
      ay[c].shrink_to_fit();
    }
    worklist_.push_back(x);
  }

  // Folds until deterministic. With `rng`, the order in which vertices and
  // letters are examined is randomized.
  void fold(std::mt19937_64* rng = nullptr) {
    for (int v = 0; v < static_cast<int>(parent_.size()); ++v) worklist_.push_back(v);
    if (rng) std::shuffle(worklist_.begin(), worklist_.end(), *rng);
    std::vector<int> codes(static_cast<std::size_t>(2 * rank_));
    for (std::size_t c = 0; c < codes.size(); ++c) codes[c] = static_cast<int>(c);
    while (!worklist_.empty()) {
      int v;
      if (rng) {
        std::uniform_int_distribution<std::size_t> pick(0, worklist_.size() - 1);
        std::size_t k = pick(*rng);
        std::swap(worklist_[k], worklist_.back());
      }
      v = find(worklist_.back());
      worklist_.pop_back();
      if (rng) std::shuffle(codes.begin(), codes.end(), *rng);
      for (int c : codes) {
        auto& lst = adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)];
        for (int& t : lst) t = find(t);
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
        if (lst.size() > 1) {
          std::vector<int> targets = lst;
          for (std::size_t i = 1; i < targets.size(); ++i) merge(targets[0], targets[i]);
          worklist_.push_back(find(v));
          break;
        }
      }
    }
  }

  // Deterministic graph over the representatives; map[v] gives the new index
  // of original vertex v.
  LabeledGraph result(std::vector<int>* map = nullptr) {
    std::vector<int> idx(parent_.size(), kNoState);
    int n = 0;
    for (std::size_t v = 0; v < parent_.size(); ++v)
      if (find(static_cast<int>(v)) == static_cast<int>(v)) idx[v] = n++;
    LabeledGraph g(rank_, n);
    for (std::size_t v = 0; v < parent_.size(); ++v) {
      if (find(static_cast<int>(v)) != static_cast<int>(v)) continue;
      for (int gen = 0; gen < rank_; ++gen) {
        auto& lst = adj_[v][static_cast<std::size_t>(Letter(gen, 1).code())];
        for (int t : lst) g.add_edge(idx[v], gen, idx[static_cast<std::size_t>(find(t))]);
      }
    }
    if (map) {
      map->assign(parent_.size(), kNoState);
      for (std::size_t v = 0; v < parent_.size(); ++v) (*map)[v] = idx[static_cast<std::size_t>(find(static_cast<int>(v)))];
    }
    return g;
  }

 private:
  std::size_t weight(int v) const {
    std::size_t w = 0;
    for (const auto& l : adj_[static_cast<std::size_t>(v)]) w += l.size();
    return w;
  }

  int rank_;
  std::vector<int> parent_;
  std::vector<std::vector<std::vector<int>>> adj_;
  std::vector<int> worklist_;
};

}  // namespace detail
}  // namespace fgorbits
