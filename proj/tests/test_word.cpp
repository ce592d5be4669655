#include <gtest/gtest.h>

#include <random>

#include "mcg/corpus.hpp"
#include "mcg/word.hpp"
#include "mcg/zg.hpp"
#include "oracles.hpp"

using namespace mcg;

namespace {

Word W(const char* s) { return parse_word(s); }
Letter L(const char* c, int s = 1) { return {c, s}; }

const std::vector<std::string> kAlphabet = {"c1", "c2", "c3", "x1", "e1", "f1", "t2_4", "xbar3"};
constexpr int kCases = 1000;

} // namespace

TEST(Parse, SimpleLetters) { EXPECT_EQ(W("c1 c2 c1^-1"), (Word{L("c1"), L("c2"), L("c1", -1)})); }

TEST(Parse, GroupPower) { EXPECT_EQ(W("(c1 c2)^2"), (Word{L("c1"), L("c2"), L("c1"), L("c2")})); }

TEST(Parse, NegativeGroupPowerReversesAndFlips) {
    EXPECT_EQ(W("(c5 c4)^-2"), (Word{L("c4", -1), L("c5", -1), L("c4", -1), L("c5", -1)}));
}

TEST(Parse, AtomPowerAndNesting) {
    EXPECT_EQ(W("e1^3"), (Word{L("e1"), L("e1"), L("e1")}));
    EXPECT_EQ(W("((a b)^2 c)^-1"), W("c^-1 b^-1 a^-1 b^-1 a^-1"));
}

TEST(Parse, CommentsAndNewlines) { EXPECT_EQ(W("c1 # first\n  c2\n# whole line\nc3"), W("c1 c2 c3")); }

TEST(Parse, EmptyIsIdentity) {
    EXPECT_TRUE(W("").empty());
    EXPECT_TRUE(W("  # nothing\n").empty());
}

TEST(Parse, PowerZeroRejected) {
    EXPECT_THROW(W("c1^0"), ParseError);
    EXPECT_THROW(W("(c1 c2)^0"), ParseError);
}

TEST(Parse, SyntaxErrorsCarryPosition) {
    try {
        W("c1 c2\n  C3");
        FAIL() << "no error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(e.column(), 3);
    }
    EXPECT_THROW(W("(c1 c2"), ParseError);
    EXPECT_THROW(W("(c1 c2)"), ParseError);
    EXPECT_THROW(W("c1^"), ParseError);
    EXPECT_THROW(W("1c"), ParseError);
    EXPECT_THROW(W("c1)"), ParseError);
}

TEST(Render, CanonicalFlatForm) {
    EXPECT_EQ(render_word({}), "");
    EXPECT_EQ(render_word({L("c1"), L("c1", -1)}), "c1 c1^-1");
    EXPECT_EQ(render_word({L("x1")}), "x1");
    EXPECT_EQ(render_word(W("(t2_4 xbar3)^2")), "t2_4 xbar3 t2_4 xbar3");
}

TEST(FreeReduce, Examples) {
    EXPECT_TRUE(free_reduce({L("c1"), L("c1", -1)}).empty());
    EXPECT_EQ(free_reduce({L("c7", -1), L("c7"), L("c6")}), (Word{L("c6")}));
    EXPECT_EQ(free_reduce({L("c1"), L("c2")}), (Word{L("c1"), L("c2")}));
    EXPECT_TRUE(free_reduce(W("a b c c^-1 b^-1 a^-1")).empty());
}

TEST(Invert, Examples) {
    EXPECT_EQ(invert({L("c4"), L("e1"), L("c4"), L("f1")}), (Word{L("f1", -1), L("c4", -1), L("e1", -1), L("c4", -1)}));
    EXPECT_TRUE(invert({}).empty());
    EXPECT_EQ(invert({L("c1", -1)}), (Word{L("c1")}));
}

TEST(Rotate, Examples) {
    Word w = {L("c1"), L("c2"), L("x")};
    EXPECT_EQ(cyclic_rotate(w, 1), (Word{L("c2"), L("x"), L("c1")}));
    EXPECT_EQ(cyclic_rotate(w, 0), w);
    EXPECT_EQ(cyclic_rotate(w, 3), w);
    EXPECT_EQ(cyclic_rotate(w, -1), (Word{L("x"), L("c1"), L("c2")}));
    EXPECT_TRUE(cyclic_rotate({}, 5).empty());
}

TEST(Expand, Examples) {
    DefinitionTable defs = {{"d", W("c1 c2 c1^-1")}, {"r1", W("f1^-1 c4 f1")}};
    EXPECT_EQ(expand_definitions({L("d")}, defs), (Word{L("c1"), L("c2"), L("c1", -1)}));
    EXPECT_EQ(expand_definitions({L("r1")}, defs), (Word{L("f1", -1), L("c4"), L("f1")}));
    EXPECT_EQ(expand_definitions({L("c1")}, defs), (Word{L("c1")}));
    EXPECT_EQ(expand_definitions({L("d", -1)}, defs), W("c1 c2^-1 c1^-1"));
}

TEST(Expand, NestedAndErrors) {
    DefinitionTable defs = {{"u", W("c3^-1 d c3")}, {"d", W("c1 c2 c1^-1")}};
    EXPECT_EQ(expand_definitions(W("u"), defs), W("c3^-1 c1 c2 c1^-1 c3"));
    DefinitionTable cyc = {{"p", W("c1 q c1^-1")}, {"q", W("c2 p c2^-1")}};
    EXPECT_THROW(expand_definitions(W("p"), cyc), DefinitionError);
    EXPECT_FALSE(check_definitions(cyc).empty());
    EXPECT_THROW(expand_definitions(W("zz"), defs, {"c1", "c2", "c3"}), DefinitionError);
    EXPECT_FALSE(check_definitions({{"bad", W("c1 c2")}}).empty());
}

TEST(Positivity, Examples) {
    EXPECT_TRUE(is_positive(W("c1 c2 x c3 c4 c5 c5 c4 c5 c4")));
    auto z = detail::zg_word(8);
    EXPECT_FALSE(is_positive(z));
    EXPECT_TRUE(is_positive({}));
    DefinitionTable defs = {{"d", W("c1 c2 c1^-1")}};
    auto p = positivity(W("c1 d"), defs);
    EXPECT_TRUE(p.raw);
    EXPECT_FALSE(p.expanded);
}

TEST(LetterCount, CubedRelators) {
    EXPECT_EQ(letter_count(power(W("c1 c2 x c3 c4 c5 c5 c4 c5 c4"), 3)), 30);
    EXPECT_EQ(letter_count(power(load_entry("X3").word, 3)), 36);
    // 14 letters in the genus-4 rose word, three times
    Word rose = W("a1 b1 a2 b2 a3 b3 x1 c1 x2 c2 x3 c3 r d");
    EXPECT_EQ(rose.size(), 14u);
    EXPECT_EQ(letter_count(power(rose, 3)), 42);
    EXPECT_EQ(load_entry("X4").word, rose);
    EXPECT_THROW(letter_count(W("c1^-1")), std::domain_error);
}

// ---- properties ----

TEST(WordProperty, ParseRenderRoundTrip) {
    std::mt19937 rng(11);
    for (int i = 0; i < kCases; ++i) {
        Word w = oracle::random_word(rng, kAlphabet, 30);
        ASSERT_EQ(parse_word(render_word(w)), w);
        std::string s = render_word(w);
        ASSERT_EQ(render_word(parse_word(s)), s);
    }
}

TEST(WordProperty, FreeReduceMatchesOracleAndIsIdempotent) {
    std::mt19937 rng(12);
    std::vector<std::string> small = {"a", "b", "c"};
    for (int i = 0; i < kCases; ++i) {
        Word w = oracle::random_word(rng, small, 40);
        Word r = free_reduce(w);
        ASSERT_EQ(r, oracle::free_reduce(w));
        ASSERT_EQ(free_reduce(r), r);
        ASSERT_LE(r.size(), w.size());
        ASSERT_TRUE(is_freely_reduced(r));
    }
}

TEST(WordProperty, InvertInvolutionAndCancellation) {
    std::mt19937 rng(13);
    for (int i = 0; i < kCases; ++i) {
        Word w = oracle::random_word(rng, kAlphabet, 30);
        ASSERT_EQ(invert(invert(w)), w);
        ASSERT_TRUE(free_reduce(concat(w, invert(w))).empty());
    }
}

TEST(WordProperty, RotationInverse) {
    std::mt19937 rng(14);
    std::uniform_int_distribution<long> k(-50, 50);
    for (int i = 0; i < kCases; ++i) {
        Word w = free_reduce(oracle::random_word(rng, kAlphabet, 25));
        long s = k(rng);
        ASSERT_EQ(cyclic_rotate(cyclic_rotate(w, s), -s), w);
    }
}

TEST(WordProperty, ExpansionCommutesWithInvert) {
    DefinitionTable defs = {{"d", W("c1 c2 c1^-1")}, {"r1", W("f1^-1 c3 f1")}, {"u", W("c3^-1 d c3")}};
    std::vector<std::string> alpha = {"c1", "c2", "c3", "f1", "d", "r1", "u"};
    std::mt19937 rng(15);
    for (int i = 0; i < kCases; ++i) {
        Word w = oracle::random_word(rng, alpha, 20);
        ASSERT_EQ(expand_definitions(invert(w), defs), invert(expand_definitions(w, defs)));
        for (const auto& l : expand_definitions(w, defs)) ASSERT_FALSE(defs.count(l.curve));
    }
}
