#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "support.hpp"

using namespace fgorbits;
using namespace fgtest;

TEST(WordList, Parsing) {
  auto ws = parse_word_list("aa, b\nabA  # comment, ignored\n\tBB");
  ASSERT_EQ(ws.size(), 4u);
  EXPECT_EQ(ws[0], W("aa"));
  EXPECT_EQ(ws[2], W("abA"));
  EXPECT_EQ(ws[3], W("BB"));
  EXPECT_TRUE(parse_word_list("  # nothing\n").empty());
  EXPECT_THROW(parse_word_list("ab, a?b"), invalid_input);
}

TEST(WordList, FromFile) {
  std::string path = testing::TempDir() + "fgorbits_words.txt";
  {
    std::ofstream out(path);
    out << "aa\nb\n";
  }
  auto ws = load_words("@" + path);
  EXPECT_EQ(ws, (std::vector<Word>{W("aa"), W("b")}));
  EXPECT_EQ(load_words("ab,ba").size(), 2u);
  EXPECT_THROW(load_words("@/nonexistent/file"), invalid_input);
  std::remove(path.c_str());
}

TEST(Dot, AutomatonRoundTrip) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    auto h = fold_generators(random_gens(rng, 4, 8));
    auto text = to_dot(h);
    EXPECT_NE(text.find("doublecircle"), std::string::npos);
    EXPECT_TRUE(equal_subgroups(automaton_from_dot(text), h));
  }
  EXPECT_THROW(automaton_from_dot("digraph A {\n  0;\n}\n"), invalid_input);
  EXPECT_THROW(automaton_from_dot("digraph A {\n  0 [shape=doublecircle];\n  0 -> 0 [label=\"a\"];\n"
                                  "  1;\n  0 -> 1 [label=\"a\"];\n}\n"),
               invalid_input);
}

TEST(Dot, AutomatonShape) {
  auto text = to_dot(sub({"aa", "b"}));
  EXPECT_NE(text.find("0 -> 0 [label=\"b\"]"), std::string::npos);
  EXPECT_NE(text.find("0 -> 1 [label=\"a\"]"), std::string::npos);
  EXPECT_NE(text.find("1 -> 0 [label=\"a\"]"), std::string::npos);
}

TEST(Dot, TransitionSystem) {
  auto ts = closure_system(sub({"a"}), 1, {kSigma.begin(), kSigma.end()});
  auto text = to_dot(ts);
  EXPECT_NE(text.find("peripheries=2"), std::string::npos);
  std::size_t edges = 0;
  for (std::size_t p = text.find("->"); p != std::string::npos; p = text.find("->", p + 2)) ++edges;
  EXPECT_EQ(edges, 3 * ts.size());
  auto expanded = to_dot(ts, true);
  EXPECT_NE(expanded.find("subgraph cluster_s0"), std::string::npos);
  EXPECT_EQ(state_name(ts.state(0)).size(), 8u);
}

TEST(Json, RoundTrip) {
  Decision d;
  d.answer = true;
  d.states = 17;
  d.t = 3;
  d.witness = Witness{parse_sigma_word("SIX"), "a;B", "A;b", 4, W("ab")};
  auto j = to_json(d);
  EXPECT_TRUE(is_decision_json(nlohmann::json::parse(j.dump())));
  auto back = decision_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.answer, true);
  EXPECT_EQ(back.states, 17u);
  EXPECT_EQ(back.t, 3);
  ASSERT_TRUE(back.witness);
  EXPECT_EQ(back.witness->sigma_word, parse_sigma_word("SIX"));
  EXPECT_EQ(back.witness->psi, "a;B");
  EXPECT_EQ(back.witness->prefix, "A;b");
  EXPECT_EQ(back.witness->n, 4);
  EXPECT_EQ(back.witness->conjugator, W("ab"));

  Decision no;
  no.states = 5;
  no.t = 1;
  auto jn = to_json(no);
  EXPECT_FALSE(jn.contains("witness"));
  EXPECT_EQ(jn.dump(), R"({"answer":false,"stats":{"states":5,"t":1}})");
  EXPECT_FALSE(decision_from_json(jn).witness);
}

TEST(Json, EmptyWitnessWord) {
  Decision d;
  d.answer = true;
  d.witness = Witness{};
  auto j = to_json(d);
  EXPECT_EQ(j["witness"]["sigma_word"], "e");
  EXPECT_EQ(j["witness"]["conjugator"], "1");
  EXPECT_TRUE(decision_from_json(j).witness->sigma_word.empty());
}

TEST(Json, SchemaRejects) {
  using nlohmann::json;
  EXPECT_FALSE(is_decision_json(json::parse(R"({"answer":"yes","stats":{"states":1,"t":1}})")));
  EXPECT_FALSE(is_decision_json(json::parse(R"({"answer":true})")));
  EXPECT_FALSE(is_decision_json(json::parse(R"({"answer":true,"stats":{"states":1,"t":1},"extra":0})")));
  EXPECT_FALSE(is_decision_json(json::parse(R"({"answer":true,"stats":{"states":1,"t":1},"witness":{"n":0}})")));
  EXPECT_FALSE(is_decision_json(json::parse("[1,2]")));
  EXPECT_THROW(decision_from_json(json::parse(R"({"answer":true})")), invalid_input);
}

TEST(Json, DecisionsFromTheSolver) {
  Instance in;
  in.kind = ProblemKind::member;
  in.words = {W("b")};
  in.h = sub({"a"});
  auto d = decide_rational(in, parse_sigma_regex("(S|I|X)*"));
  auto back = decision_from_json(nlohmann::json::parse(to_json(d).dump()));
  ASSERT_TRUE(back.witness);
  EXPECT_TRUE(verify_witness(in, back.witness->sigma_word));
  auto f = decide_full_aut(W("a"), sub({"bab"})).summary();
  EXPECT_TRUE(is_decision_json(nlohmann::json::parse(to_json(f).dump())));
}
