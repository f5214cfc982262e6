#pragma once

// Text, DOT and JSON formats.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynamics.hpp"
#include "endo2.hpp"
#include "orbit.hpp"
#include "stallings.hpp"

namespace fgorbits {

// Words separated by commas, whitespace or newlines; '#' comments to end of line.
inline std::vector<Word> parse_word_list(std::string_view text, int rank = 2) {
  std::vector<Word> words;
  std::string tok;
  bool comment = false;
  auto flush = [&] {
    if (!tok.empty()) words.push_back(Word::parse(tok, rank));
    tok.clear();
  };
  for (char c : text) {
    if (c == '\n') comment = false;
    if (comment) continue;
    if (c == '#') {
      flush();
      comment = true;
    } else if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      flush();
    } else {
      tok.push_back(c);
    }
  }
  flush();
  return words;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot read file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "-" reads stdin, "@path" reads a file, anything else is inline text.
inline std::string resolve_source(const std::string& arg) {
  if (arg == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  if (!arg.empty() && arg[0] == '@') return read_file(arg.substr(1));
  return arg;
}

inline std::vector<Word> load_words(const std::string& arg, int rank = 2) {
  return parse_word_list(resolve_source(arg), rank);
}

// ---------------------------------------------------------------------------
// DOT.

inline std::string to_dot(const LabeledGraph& g, int origin, const std::string& name = "A") {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int v = 0; v < g.size(); ++v)
    os << "  " << v << (v == origin ? " [shape=doublecircle]" : "") << ";\n";
  for (int v = 0; v < g.size(); ++v)
    for (int gen = 0; gen < g.rank; ++gen) {
      int t = g.out[static_cast<std::size_t>(gen)][static_cast<std::size_t>(v)];
      if (t != kNoState)
        os << "  " << v << " -> " << t << " [label=\"" << Letter(gen, 1).to_char() << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const StallingsAutomaton& a, const std::string& name = "A") {
  return to_dot(a.graph(), a.origin(), name);
}

// Reads the subset of DOT written by to_dot.
inline StallingsAutomaton automaton_from_dot(const std::string& text, int rank = 2) {
  static const std::regex node_re(R"re(^\s*(\d+)\s*(\[([^\]]*)\])?\s*;?\s*$)re");
  static const std::regex edge_re(R"re(^\s*(\d+)\s*->\s*(\d+)\s*\[\s*label\s*=\s*"([a-z])"\s*\]\s*;?\s*$)re");
  LabeledGraph g(rank, 0);
  int origin = kNoState;
  auto ensure = [&](int v) {
    while (g.size() <= v) g.add_vertex();
  };
  std::istringstream in(text);
  std::string line;
  std::smatch m;
  while (std::getline(in, line)) {
    if (std::regex_match(line, m, edge_re)) {
      int p = std::stoi(m[1]), q = std::stoi(m[2]);
      int gen = m[3].str()[0] - 'a';
      if (gen >= rank) throw invalid_input("edge label outside rank");
      ensure(std::max(p, q));
      try {
        g.add_edge(p, gen, q);
      } catch (const std::logic_error&) {
        throw invalid_input("DOT graph is not deterministic");
      }
    } else if (std::regex_match(line, m, node_re)) {
      int v = std::stoi(m[1]);
      ensure(v);
      if (m[3].str().find("doublecircle") != std::string::npos) origin = v;
    }
  }
  if (origin == kNoState) throw invalid_input("DOT graph has no doublecircle origin");
  return StallingsAutomaton::from_graph(g, origin);
}

inline std::string state_name(const TruncatedAutomaton& t) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(t.key())));
  return std::string(buf, 8);
}

// States are labeled by hash prefixes of their canonical keys; with `expand`
// each truncation is attached as a cluster.
inline std::string to_dot(const TransitionSystem& ts, bool expand = false) {
  std::ostringstream os;
  os << "digraph B {\n  node [shape=box];\n";
  for (std::size_t s = 0; s < ts.size(); ++s) {
    os << "  s" << s << " [label=\"" << state_name(ts.state(static_cast<int>(s))) << "\""
       << (s == 0 ? ", peripheries=2" : "") << "];\n";
  }
  for (std::size_t s = 0; s < ts.size(); ++s)
    for (auto l : kSigma) {
      int t = ts.transition(static_cast<int>(s), l);
      if (t >= 0) os << "  s" << s << " -> s" << t << " [label=\"" << to_char(l) << "\"];\n";
    }
  if (expand) {
    for (std::size_t s = 0; s < ts.size(); ++s) {
      const auto& g = ts.state(static_cast<int>(s)).graph();
      os << "  subgraph cluster_s" << s << " {\n    label=\"s" << s << "\";\n";
      for (int v = 0; v < g.size(); ++v)
        os << "    s" << s << "_" << v << " [shape=" << (v == 0 ? "doublecircle" : "circle") << ", label=\"" << v
           << "\"];\n";
      for (int v = 0; v < g.size(); ++v)
        for (int gen = 0; gen < 2; ++gen) {
          int t = g.out[static_cast<std::size_t>(gen)][static_cast<std::size_t>(v)];
          if (t != kNoState)
            os << "    s" << s << "_" << v << " -> s" << s << "_" << t << " [label=\""
               << Letter(gen, 1).to_char() << "\"];\n";
        }
      os << "  }\n";
    }
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// JSON.

inline nlohmann::ordered_json to_json(const Decision& d) {
  nlohmann::ordered_json j;
  j["answer"] = d.answer;
  if (d.witness) {
    j["witness"] = {{"sigma_word", sigma_word_text(d.witness->sigma_word)},
                    {"psi", d.witness->psi},
                    {"prefix", d.witness->prefix},
                    {"n", d.witness->n},
                    {"conjugator", d.witness->conjugator.to_string()}};
  }
  j["stats"] = {{"states", d.states}, {"t", d.t}};
  return j;
}

// Validates a document against the decision schema.
inline bool is_decision_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("answer") || !j["answer"].is_boolean()) return false;
  if (!j.contains("stats") || !j["stats"].is_object()) return false;
  const auto& s = j["stats"];
  if (!s.contains("states") || !s["states"].is_number_integer() || !s.contains("t") || !s["t"].is_number_integer())
    return false;
  if (j.contains("witness")) {
    const auto& w = j["witness"];
    for (const char* k : {"sigma_word", "psi", "prefix", "conjugator"})
      if (!w.contains(k) || !w[k].is_string()) return false;
    if (!w.contains("n") || !w["n"].is_number_integer()) return false;
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "answer" && it.key() != "witness" && it.key() != "stats") return false;
  return true;
}

inline Decision decision_from_json(const nlohmann::json& j) {
  if (!is_decision_json(j)) throw invalid_input("document does not match the decision schema");
  Decision d;
  d.answer = j["answer"].get<bool>();
  d.states = j["stats"]["states"].get<std::size_t>();
  d.t = j["stats"]["t"].get<int>();
  if (j.contains("witness")) {
    const auto& w = j["witness"];
    Witness x;
    x.sigma_word = parse_sigma_word(w["sigma_word"].get<std::string>());
    x.psi = w["psi"].get<std::string>();
    x.prefix = w["prefix"].get<std::string>();
    x.n = w["n"].get<long>();
    x.conjugator = Word::parse(w["conjugator"].get<std::string>());
    d.witness = std::move(x);
  }
  return d;
}

}  // namespace fgorbits
