// fg-orbits: command-line front end for the fgorbits library.
//
// Exit status: 0 computed (the answer may be "no"), 1 invalid input,
// 2 resource limit, 3 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fgorbits/fgorbits.hpp>

using namespace fgorbits;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  bool json = false;
  std::optional<std::size_t> max_states;
  std::optional<std::size_t> max_aut_size;

  Limits limits() const {
    Limits l = Limits::from_env();
    if (max_states) l.max_states = *max_states;
    if (max_aut_size) l.max_aut_size = *max_aut_size;
    return l;
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_input("cannot write file '" + path + "'");
  out << text;
}

StallingsAutomaton load_subgroup(const std::string& arg) { return fold_generators(load_words(arg)); }

Word load_word(const std::string& arg) {
  auto ws = load_words(arg);
  if (ws.empty()) return Word(2);
  if (ws.size() != 1) throw invalid_input("expected a single word, got " + std::to_string(ws.size()));
  return ws[0];
}

std::string join(const std::vector<Word>& ws) {
  std::string s;
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? ", " : "") + ws[i].to_string();
  return s;
}

json word_array(const std::vector<Word>& ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back(w.to_string());
  return a;
}

void print_decision(const Globals& g, const Decision& d, const std::vector<std::pair<std::string, std::string>>& extra = {}) {
  if (g.json) {
    std::cout << to_json(d).dump() << "\n";
    return;
  }
  std::cout << (d.answer ? "yes" : "no") << "\n";
  if (d.witness) {
    std::cout << "witness: " << sigma_word_text(d.witness->sigma_word) << "\n";
    if (d.witness->psi != "id") std::cout << "psi: " << d.witness->psi << "\n";
    if (d.witness->prefix != "id") std::cout << "prefix: " << d.witness->prefix << "\n";
    if (d.witness->prefix != "id") std::cout << "n: " << d.witness->n << "\n";
    if (!d.witness->conjugator.empty() || d.witness->prefix != "id")
      std::cout << "conjugator: " << d.witness->conjugator.to_string() << "\n";
  }
  for (const auto& [k, v] : extra) std::cout << k << ": " << v << "\n";
  std::cout << "states: " << d.states << "\nt: " << d.t << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit problems in the free group of rank 2"};
  app.name("fg-orbits");
  app.require_subcommand(1, 1);
  app.fallthrough();

  Globals g;
  app.add_flag("--json", g.json, "Emit JSON");
  app.add_option("--max-states", g.max_states, "Cap on transition-system states (default 1000000)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-aut-size", g.max_aut_size, "Cap on automaton size (default 10000)")
      ->check(CLI::PositiveNumber);

  std::function<void()> run;

  // fold
  {
    auto* c = app.add_subcommand("fold", "Stallings automaton of a subgroup");
    static std::string gens, dot;
    c->add_option("-g,--gens", gens, "Generators: inline list, '-' or @file")->required();
    c->add_option("--dot", dot, "Write DOT to a file ('-' = stdout)");
    c->callback([&] {
      run = [&] {
        auto a = load_subgroup(gens);
        if (!dot.empty()) write_output(dot, to_dot(a));
        if (dot == "-") return;
        auto basis = generators(a);
        if (g.json) {
          json edges = json::array();
          for (int gen = 0; gen < 2; ++gen)
            for (int v = 0; v < a.state_count(); ++v) {
              int t = a.graph().out[static_cast<std::size_t>(gen)][static_cast<std::size_t>(v)];
              if (t != kNoState) edges.push_back({v, std::string(1, Letter(gen, 1).to_char()), t});
            }
          std::cout << json{{"states", a.state_count()}, {"origin", 0}, {"edges", edges}, {"basis", word_array(basis)}}.dump()
                    << "\n";
          return;
        }
        std::cout << "states: " << a.state_count() << "\norigin: 0\nedges: " << a.edge_count() << "\n";
        for (int gen = 0; gen < 2; ++gen)
          for (int v = 0; v < a.state_count(); ++v) {
            int t = a.graph().out[static_cast<std::size_t>(gen)][static_cast<std::size_t>(v)];
            if (t != kNoState) std::cout << "  " << v << " -" << Letter(gen, 1).to_char() << "-> " << t << "\n";
          }
        std::cout << "basis: " << join(basis) << "\n";
      };
    });
  }

  // member
  {
    auto* c = app.add_subcommand("member", "Subgroup membership");
    static std::string gens, word;
    static bool conj = false;
    c->add_option("-g,--gens", gens, "Generators")->required();
    c->add_option("-w,--word", word, "Word")->required();
    c->add_flag("--conjugate", conj, "Test whether some conjugate is a member");
    c->callback([&] {
      run = [&] {
        auto a = load_subgroup(gens);
        Word u = load_word(word);
        bool r = conj ? contains_conjugate(a, u) : contains(a, u);
        if (g.json)
          std::cout << json{{"answer", r}}.dump() << "\n";
        else
          std::cout << (r ? "yes" : "no") << "\n";
      };
    });
  }

  // metrics
  {
    auto* c = app.add_subcommand("metrics", "Singularities, bridges and homogeneous-path metrics");
    static std::string gens;
    c->add_option("-g,--gens", gens, "Generators")->required();
    c->callback([&] {
      run = [&] {
        auto a = load_subgroup(gens);
        auto p = singularity_profile(a);
        auto m = metrics(a);
        auto bridges = bridge_decomposition(a);
        if (g.json) {
          json bs = json::array();
          for (const auto& b : bridges) bs.push_back({{"start", b.start}, {"end", b.end}, {"label", b.label.to_string()}});
          std::cout << json{{"sources", p.sources}, {"sinks", p.sinks}, {"sigma", m.sigma}, {"hc", m.hc},
                            {"hcfp", m.hcfp}, {"shcfp", m.shcfp}, {"delta0", m.delta0}, {"delta", m.delta},
                            {"zeta", m.zeta}, {"bridges", bs}}
                           .dump()
                    << "\n";
          return;
        }
        auto list = [](const std::vector<int>& v) {
          std::string s;
          for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
          return s.empty() ? std::string("-") : s;
        };
        std::cout << "sources: " << list(p.sources) << "\nsinks: " << list(p.sinks) << "\nsigma: " << m.sigma
                  << "\nhc: " << m.hc << "\nhcfp: " << m.hcfp << "\nshcfp: " << m.shcfp << "\ndelta0: " << m.delta0
                  << "\ndelta: " << m.delta << "\nzeta: " << m.zeta << "\nbridges:\n";
        for (const auto& b : bridges) std::cout << "  " << b.start << " -> " << b.end << " : " << b.label.to_string() << "\n";
      };
    });
  }

  // primitive
  {
    auto* c = app.add_subcommand("primitive", "Primitivity test with a factorization");
    static std::string word;
    c->add_option("-w,--word", word, "Word")->required();
    c->callback([&] {
      run = [&] {
        Word u = load_word(word);
        auto p = is_primitive(u);
        if (g.json) {
          json j{{"answer", p.has_value()}};
          if (p) j["factorization"] = {{"w", p->w.to_string()}, {"psi", p->psi.compact()}, {"phi", to_string(p->phi)}};
          std::cout << j.dump() << "\n";
          return;
        }
        if (!p) {
          std::cout << "no\n";
          return;
        }
        std::cout << "yes\nw: " << p->w.to_string() << "\npsi: " << p->psi.to_string() << "\nphi: " << to_string(p->phi)
                  << "\n";
      };
    });
  }

  // orbit-elem
  {
    auto* c = app.add_subcommand("orbit-elem", "Is u (or a conjugate) in mu(H) for some mu in R?");
    static std::vector<std::string> words;
    static std::string gens, regex = "(S|I|X)*", subst;
    static bool conj = false;
    c->add_option("-w,--word", words, "Word; repeat for several words (conjugates of each)")->required();
    c->add_option("-g,--gens", gens, "Generators of H")->required();
    c->add_option("-R,--rational", regex, "Rational set over S, I, X (or P, S, T with --substitutions)");
    c->add_flag("--conjugate", conj, "Ask for a conjugate of u");
    c->add_option("--substitutions", subst, "Read R over P, S, T as invertible substitutions")
        ->check(CLI::IsMember({"is", "is-inverse"}));
    c->callback([&] {
      run = [&] {
        Instance in;
        for (const auto& w : words) in.words.push_back(load_word(w));
        in.h = load_subgroup(gens);
        in.kind = in.words.size() > 1 ? ProblemKind::multi_conjugate
                  : conj              ? ProblemKind::member_conjugate
                                      : ProblemKind::member;
        SigmaRational r;
        if (subst.empty()) {
          r = parse_sigma_regex(regex);
        } else {
          auto enc = encode_invertible_substitutions(subst == "is" ? SubstitutionKind::is : SubstitutionKind::is_inverse, regex);
          r = enc.rational;
          in = enc.transform(in);
        }
        auto d = decide_rational(in, r, g.limits());
        if (d.witness && !verify_witness(in, d.witness->sigma_word))
          throw std::logic_error("witness failed re-verification");
        print_decision(g, d);
      };
    });
  }

  // orbit-subgroup
  {
    auto* c = app.add_subcommand("orbit-subgroup", "Subgroup orbit problems (2), (2'), (3), (3')");
    static std::string kgens, hgens, regex = "(S|I|X)*", kind = "2";
    c->add_option("-k,--kgens", kgens, "Generators of K")->required();
    c->add_option("-g,--gens", hgens, "Generators of H")->required();
    c->add_option("-R,--rational", regex, "Rational set over S, I, X");
    c->add_option("--kind", kind, "2: K <= mu(H); 3: K = mu(H); primed: up to conjugacy")
        ->check(CLI::IsMember({"2", "2'", "3", "3'"}));
    c->callback([&] {
      run = [&] {
        Instance in;
        in.kind = parse_problem_kind(kind);
        in.k = load_subgroup(kgens);
        in.h = load_subgroup(hgens);
        auto d = decide_rational(in, parse_sigma_regex(regex), g.limits());
        if (d.witness && !verify_witness(in, d.witness->sigma_word))
          throw std::logic_error("witness failed re-verification");
        print_decision(g, d);
      };
    });
  }

  // orbit-aut and contains-primitive
  auto full_aut = [&](const Word& u, const StallingsAutomaton& h) {
    auto d = decide_full_aut(u, h, g.limits());
    if (d.witness && !verify_full_aut(u, h, *d.witness)) throw std::logic_error("witness failed re-verification");
    std::vector<std::pair<std::string, std::string>> extra;
    if (d.witness) extra.emplace_back("automorphism", d.witness->automorphism().to_string());
    print_decision(g, d.summary(), extra);
  };
  {
    auto* c = app.add_subcommand("orbit-aut", "Is phi(u) in H for some automorphism phi?");
    static std::string word, gens;
    c->add_option("-w,--word", word, "Word")->required();
    c->add_option("-g,--gens", gens, "Generators of H")->required();
    c->callback([&] { run = [&] { full_aut(load_word(word), load_subgroup(gens)); }; });
  }
  {
    auto* c = app.add_subcommand("contains-primitive", "Does H contain a primitive element?");
    static std::string gens;
    c->add_option("-g,--gens", gens, "Generators of H")->required();
    c->callback([&] { run = [&] { full_aut(Word::parse("a"), load_subgroup(gens)); }; });
  }

  // transition-system
  {
    auto* c = app.add_subcommand("transition-system", "Closure of truncated automata under Sigma or Sigma0");
    static std::string gens, alphabet = "SIX", dot, words;
    static int t = 0;
    static bool expand = false;
    c->add_option("-g,--gens", gens, "Generators of H")->required();
    c->add_option("-t,--radius", t, "Truncation radius (default: least admissible)");
    c->add_option("-w,--words", words, "Words whose length the radius must cover");
    c->add_option("--alphabet", alphabet, "SIX or SI")->check(CLI::IsMember({"SIX", "SI"}));
    c->add_option("--dot", dot, "Write DOT to a file ('-' = stdout)");
    c->add_flag("--expand", expand, "Include each truncated automaton in the DOT output");
    c->callback([&] {
      run = [&] {
        auto h = load_subgroup(gens);
        std::vector<Word> ws = words.empty() ? std::vector<Word>{} : load_words(words);
        int radius = t > 0 ? t : choose_t(h, ws);
        std::vector<SigmaLetter> al = alphabet == "SI" ? std::vector<SigmaLetter>{kSigma0.begin(), kSigma0.end()}
                                                       : std::vector<SigmaLetter>{kSigma.begin(), kSigma.end()};
        auto ts = closure_system(h, radius, al, g.limits());
        if (!dot.empty()) write_output(dot, to_dot(ts, expand));
        if (dot == "-") return;
        std::size_t edges = ts.size() * al.size();
        if (g.json) {
          json tr = json::array();
          for (std::size_t s = 0; s < ts.size(); ++s)
            for (auto l : al) tr.push_back({s, std::string(1, to_char(l)), ts.transition(static_cast<int>(s), l)});
          json names = json::array();
          for (const auto& st : ts.states()) names.push_back(state_name(st));
          std::cout << json{{"states", ts.size()}, {"t", radius}, {"alphabet", alphabet}, {"initial", 0},
                            {"names", names}, {"transitions", tr}}
                           .dump()
                    << "\n";
          return;
        }
        std::cout << "states: " << ts.size() << "\nt: " << radius << "\nalphabet: " << alphabet
                  << "\ntransitions: " << edges << "\n";
      };
    });
  }

  // basis-completion
  {
    auto* c = app.add_subcommand("basis-completion", "Complete m-1 words to a basis of F_m");
    static std::string gens;
    static int rank = 2;
    c->add_option("-g,--gens", gens, "The m-1 words")->required();
    c->add_option("-m,--rank", rank, "Rank m")->check(CLI::Range(1, 26));
    c->callback([&] {
      run = [&] {
        auto ws = load_words(gens, rank);
        auto r = basis_completion(ws, rank);
        if (g.json) {
          json j{{"answer", r.has_value()}};
          if (r) j["z"] = r->z.to_string(), j["completions"] = r->describe();
          std::cout << j.dump() << "\n";
          return;
        }
        if (!r) {
          std::cout << "none\n";
          return;
        }
        std::cout << "z: " << r->z.to_string() << "\ncompletions: " << r->describe() << "\n";
      };
    });
  }

  // grammar
  {
    auto* c = app.add_subcommand("grammar", "Grammar for the closure of u under positive endomorphisms");
    static std::vector<std::string> endos;
    static std::string word;
    static int max_len = 0;
    c->add_option("-e,--endo", endos, "Endomorphism \"x ; y\" (repeatable)");
    c->add_option("-w,--word", word, "Positive word u")->required();
    c->add_option("--max-len", max_len, "Also list generated words up to this length")->check(CLI::NonNegativeNumber);
    c->callback([&] {
      run = [&] {
        std::vector<Endo2> es;
        for (const auto& e : endos) es.push_back(parse_endo(e));
        auto gr = emit_closure_grammar(es, load_word(word));
        std::vector<std::string> lang;
        if (max_len > 0) {
          auto set = bounded_language(gr, static_cast<std::size_t>(max_len));
          lang.assign(set.begin(), set.end());
          std::stable_sort(lang.begin(), lang.end(),
                           [](const std::string& x, const std::string& y) { return x.size() < y.size(); });
        }
        if (g.json) {
          json rules = json::array();
          for (const auto& r : gr.rules) rules.push_back({{"lhs", r.lhs}, {"rhs", r.rhs}});
          json j{{"start", gr.start}, {"rules", rules}};
          if (max_len > 0) j["language"] = lang;
          std::cout << j.dump() << "\n";
          return;
        }
        std::cout << gr.to_text();
        if (max_len > 0) {
          std::cout << "language:\n";
          for (const auto& w : lang) std::cout << "  " << w << "\n";
        }
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::cerr << "error: invalid-input: " << msg << "\n";
    return 1;
  } catch (const fgorbits::error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == error_kind::resource_limit ? 2 : 1;
  }

  try {
    run();
  } catch (const fgorbits::error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == error_kind::resource_limit ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 3;
  }
  std::cout.flush();
  return 0;
}
