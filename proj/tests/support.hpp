#pragma once

// Random inputs and brute-force oracles shared by the test binaries. None of
// the oracles call the library routine they are used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fgorbits/fgorbits.hpp>

namespace fgtest {

using namespace fgorbits;

inline Word W(const std::string& s) { return Word::parse(s); }

inline StallingsAutomaton sub(std::initializer_list<const char*> gens) {
  std::vector<Word> ws;
  for (const char* g : gens) ws.push_back(W(g));
  return fold_generators(ws);
}

inline Word random_word(std::mt19937_64& rng, int max_len, int rank = 2, int min_len = 1) {
  std::uniform_int_distribution<int> len(min_len, max_len);
  std::uniform_int_distribution<int> code(0, 2 * rank - 1);
  std::vector<Letter> ls;
  int n = len(rng);
  for (int i = 0; i < n; ++i) ls.push_back(Letter::from_code(code(rng)));
  return Word::reduce(ls, rank);
}

inline std::vector<Word> random_gens(std::mt19937_64& rng, int max_gens, int max_len) {
  std::uniform_int_distribution<int> k(1, max_gens);
  std::vector<Word> gens;
  int n = k(rng);
  for (int i = 0; i < n; ++i) gens.push_back(random_word(rng, max_len));
  return gens;
}

inline SigmaWord random_sigma_word(std::mt19937_64& rng, int max_len, int min_len = 0) {
  std::uniform_int_distribution<int> len(min_len, max_len);
  std::uniform_int_distribution<int> c(0, 2);
  SigmaWord w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) w.push_back(static_cast<SigmaLetter>(c(rng)));
  return w;
}

// Free reduction by repeated deletion of adjacent inverse pairs in text.
inline std::string naive_reduce(std::string s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      char x = s[i], y = s[i + 1];
      if (x != y && (x ^ 0x20) == y) {
        s.erase(i, 2);
        changed = true;
        break;
      }
    }
  }
  return s.empty() ? "1" : s;
}

// Reduced products of at most `depth` generators and their inverses.
inline std::set<Word> products(const std::vector<Word>& gens, int depth) {
  std::vector<Word> alphabet;
  for (const auto& g : gens) {
    alphabet.push_back(g);
    alphabet.push_back(g.inverse());
  }
  std::set<Word> all{Word(2)};
  std::vector<Word> layer{Word(2)};
  for (int d = 0; d < depth; ++d) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (const auto& x : alphabet) {
        Word y = w * x;
        if (all.insert(y).second) next.push_back(y);
      }
    layer = std::move(next);
  }
  return all;
}

// All reduced words of length <= n.
inline std::vector<Word> all_words(int n) {
  std::vector<Word> out{Word(2)};
  std::vector<Word> layer{Word(2)};
  for (int d = 0; d < n; ++d) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (int c = 0; c < 4; ++c) {
        Letter l = Letter::from_code(c);
        if (!w.empty() && w.back() == l.inverse()) continue;
        next.push_back(w * Word::letter(l, 2));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// Metrics by walking every homogeneous positive path from every vertex.
inline MetricBundle metrics_oracle(const StallingsAutomaton& a) {
  const auto& g = a.graph();
  const int n = a.state_count();
  MetricBundle m;
  int src = 0, snk = 0;
  auto source = [&](int v) { return g.out[0][static_cast<std::size_t>(v)] >= 0 && g.out[1][static_cast<std::size_t>(v)] >= 0; };
  auto sink = [&](int v) { return g.in[0][static_cast<std::size_t>(v)] >= 0 && g.in[1][static_cast<std::size_t>(v)] >= 0; };
  for (int v = 0; v < n; ++v) {
    src += source(v);
    snk += sink(v);
  }
  m.sigma = std::max(1, src + snk);
  for (int gen = 0; gen < 2; ++gen) {
    for (int p = 0; p < n; ++p) {
      std::vector<int> path{p};
      int cur = p;
      for (;;) {
        int nx = g.out[static_cast<std::size_t>(gen)][static_cast<std::size_t>(cur)];
        if (nx < 0) break;
        if (nx == p) {
          m.hc = std::max(m.hc, static_cast<int>(path.size()));
          break;
        }
        if (std::find(path.begin(), path.end(), nx) != path.end()) break;
        path.push_back(nx);
        cur = nx;
        int k = static_cast<int>(path.size()) - 1;
        m.hcfp = std::max(m.hcfp, k);
        if ((p == 0 || source(p)) && (nx == 0 || sink(nx))) m.shcfp = std::max(m.shcfp, k);
      }
    }
  }
  m.delta0 = std::max(m.sigma, m.hc);
  m.delta = std::max(m.delta0, m.hcfp);
  m.zeta = std::max(m.delta0, m.shcfp);
  return m;
}

// Phi*(a) restricted to length <= n. Phi maps never shorten positive words.
inline std::set<Word> phi_orbit_of_a(int n) {
  std::set<Word> seen{W("a")};
  std::vector<Word> queue{W("a")};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto p : kPhi) {
      Word y = phi_endo(p)(queue[i]);
      if (static_cast<int>(y.size()) <= n && seen.insert(y).second) queue.push_back(y);
    }
  return seen;
}

// Primitive words of length <= n: images of a under products of Nielsen
// moves, filtered by length at each step (the orbit of a under the group
// generated by psi and phi maps, explored while staying short).
inline std::set<Word> short_primitives(int n, int slack = 4) {
  std::vector<Endo2> moves(psi_set().begin(), psi_set().end());
  for (auto p : kPhi) {
    moves.push_back(phi_endo(p));
    moves.push_back(phi_inverse_endo(p));
  }
  std::set<Word> seen{W("a")};
  std::vector<Word> queue{W("a")};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& m : moves) {
      Word y = m(queue[i]);
      if (static_cast<int>(y.size()) <= n + slack && seen.insert(y).second) queue.push_back(y);
    }
  std::set<Word> out;
  for (const auto& w : seen)
    if (static_cast<int>(w.size()) <= n) {
      // close under conjugation by short words
      for (const auto& c : all_words(2)) {
        Word x = conjugate(w, c);
        if (static_cast<int>(x.size()) <= n) out.insert(x);
      }
    }
  return out;
}

// Visits mu(H) for every Sigma-word mu of length <= depth (depth first,
// sharing prefixes). The callback returns true to stop.
inline bool for_sigma_words(const StallingsAutomaton& h, int depth,
                            const std::function<bool(const SigmaWord&, const StallingsAutomaton&)>& f) {
  SigmaWord w;
  std::function<bool(const StallingsAutomaton&)> rec = [&](const StallingsAutomaton& a) {
    if (f(w, a)) return true;
    if (static_cast<int>(w.size()) == depth) return false;
    for (auto s : kSigma) {
      w.push_back(s);
      bool stop = rec(sigma_apply_refold(a, sigma_endo(s)));
      w.pop_back();
      if (stop) return true;
    }
    return false;
  };
  return rec(h);
}

// Conjugacy of the cycle cores of two subgroups by brute force over roots.
inline bool conjugate_subgroups_oracle(const StallingsAutomaton& x, const StallingsAutomaton& y) {
  auto strip = [](const StallingsAutomaton& a) { return trim_pendants(a.graph(), kNoState); };
  LabeledGraph cx = strip(x), cy = strip(y);
  if (cx.size() != cy.size()) return false;
  if (cx.size() == 0) return true;
  for (int r = 0; r < cy.size(); ++r)
    if (rooted_code(cx, 0) == rooted_code(cy, r)) return true;
  return false;
}

}  // namespace fgtest
