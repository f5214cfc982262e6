#include <gtest/gtest.h>

#include "support.hpp"

using namespace fgorbits;
using namespace fgtest;

TEST(Words, ReduceExamples) {
  EXPECT_EQ(W("abBA").to_string(), "1");
  EXPECT_TRUE(W("abBA").empty());
  EXPECT_EQ(W("abA").to_string(), "abA");
  EXPECT_EQ(W("aAa").to_string(), "a");
  EXPECT_EQ(W("").to_string(), "1");
  EXPECT_EQ(W("1"), Word(2));
}

TEST(Words, MultiplyExamples) {
  EXPECT_EQ(W("ab") * W("Ba"), W("aa"));
  EXPECT_EQ(W("abA") * W("abA").inverse(), Word(2));
  EXPECT_EQ(W("a") * W("b"), W("ab"));
  EXPECT_EQ(multiply(W("ab"), W("Ba")).to_string(), "aa");
}

TEST(Words, InverseExamples) {
  EXPECT_EQ(W("ab").inverse().to_string(), "BA");
  EXPECT_EQ(invert(Word(2)), Word(2));
  EXPECT_EQ(W("A").inverse(), W("a"));
}

TEST(Words, CyclicCoreExamples) {
  auto c = cyclic_core(W("abA"));
  EXPECT_EQ(c.core, W("b"));
  EXPECT_EQ(c.conjugator, W("A"));
  c = cyclic_core(W("ab"));
  EXPECT_EQ(c.core, W("ab"));
  EXPECT_EQ(c.conjugator, Word(2));
  c = cyclic_core(W("AbaBa"));
  EXPECT_EQ(c.core, W("a"));
  EXPECT_EQ(c.conjugator, W("Ba"));
}

TEST(Words, ParseErrors) {
  EXPECT_THROW(W("ab3"), invalid_input);
  EXPECT_THROW(W("abc"), invalid_input);
  EXPECT_NO_THROW(Word::parse("abc", 3));
  EXPECT_THROW(Word::parse("a", 0), invalid_input);
}

TEST(Words, ReduceMatchesNaiveOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(0, 20), c(0, 3);
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    int n = len(rng);
    for (int k = 0; k < n; ++k) s.push_back("abAB"[c(rng)]);
    EXPECT_EQ(W(s).to_string(), naive_reduce(s)) << s;
  }
}

TEST(Words, GroupLaws) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    Word x = random_word(rng, 10, 2, 0), y = random_word(rng, 10, 2, 0), z = random_word(rng, 10, 2, 0);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * x.inverse(), Word(2));
    EXPECT_EQ((x * y).inverse(), y.inverse() * x.inverse());
    EXPECT_EQ(x.inverse().inverse(), x);
    EXPECT_EQ(Word::parse(x.to_string()), x);
  }
}

TEST(Words, CyclicCoreReconstructs) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    Word u = random_word(rng, 14, 2, 0);
    auto [core, conj] = cyclic_core(u);
    EXPECT_EQ(conj.inverse() * core * conj, u);
    EXPECT_TRUE(core.is_cyclically_reduced());
    EXPECT_EQ(core.size() + 2 * conj.size(), u.size());
  }
}

TEST(Words, PowerRotateAbelianization) {
  EXPECT_EQ(power(W("ab"), 3), W("ababab"));
  EXPECT_EQ(power(W("ab"), -2), W("BABA"));
  EXPECT_EQ(power(W("ab"), 0), Word(2));
  EXPECT_EQ(rotate(W("aab"), 1), W("aba"));
  EXPECT_EQ(rotate(W("aab"), 3), W("aab"));
  EXPECT_EQ(abelianization(W("abAAbb")), (std::vector<long>{-1, 3}));
}

TEST(Words, LetterEncoding) {
  Letter a(0, 1), A(0, -1), b(1, 1);
  EXPECT_EQ(a.code(), 0);
  EXPECT_EQ(A.code(), 1);
  EXPECT_EQ(b.code(), 2);
  EXPECT_EQ(a.inverse(), A);
  EXPECT_EQ(A.to_char(), 'A');
}

TEST(Words, InverseCancelsOnLongWords) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 10000; ++i) {
    Word u = random_word(rng, 64, 2, 0);
    EXPECT_TRUE((u * u.inverse()).empty());
    EXPECT_EQ(Word::reduce(std::vector<Letter>(u.begin(), u.end()), 2), u);
  }
}
