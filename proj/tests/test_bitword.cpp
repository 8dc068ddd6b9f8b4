#include <catch2/catch_amalgamated.hpp>

#include "guesslab/bitword.hpp"
#include "guesslab/rng.hpp"

using namespace guesslab;

TEST_CASE("lex rank reads the word as a binary numeral") {
    CHECK(lex_rank_value(BitWord::from_string("101")) == 5);
    CHECK(lex_rank_value(BitWord()) == 0);
    // Appending a 1 doubles the rank and adds one.
    CHECK(lex_rank_value(BitWord::from_string("1011")) == 11);
    CHECK(lex_rank(BitWord::from_string("101")).level == 3);
}

TEST_CASE("lex unrank inverts rank") {
    CHECK(lex_unrank(LexPosition{5, 3}) == BitWord::from_string("101"));
    CHECK(lex_unrank(LexPosition{0, 4}) == BitWord::from_string("0000"));
    for (std::size_t n = 0; n <= 16; ++n)
        CHECK(lex_unrank(LexPosition{pow2(n) - 1, n}) == BitWord::ones(n));
}

TEST_CASE("unrank rejects out-of-range positions") {
    CHECK_THROWS_AS(lex_unrank(LexPosition{8, 3}), std::out_of_range);
    CHECK_THROWS_AS(lex_unrank(LexPosition{1, 0}), std::out_of_range);
    CHECK_THROWS_AS(lex_unrank_u64(4, 2), std::out_of_range);
}

TEST_CASE("rank and unrank are mutually inverse, exhaustively to level 20") {
    for (std::size_t n = 0; n <= 20; ++n) {
        const std::uint64_t top = std::uint64_t{1} << n;
        // Spot-check the bijection densely at small n, sparsely at large n.
        const std::uint64_t stride = n <= 12 ? 1 : (top >> 12);
        for (std::uint64_t r = 0; r < top; r += stride) {
            const BitWord w = lex_unrank_u64(r, n);
            REQUIRE(lex_rank_u64(w) == r);
        }
        if (stride > 1) {
            for (std::uint64_t r = 0; r < top; ++r)
                REQUIRE(lex_rank_u64(lex_unrank_u64(r, n)) == r);
        }
    }
}

TEST_CASE("rank and unrank round-trip on long random words") {
    RandomStream rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(1000);
        const BitWord w = BitWord::random(n, rng);
        CHECK(lex_unrank(lex_rank(w)) == w);
    }
}

TEST_CASE("lex order satisfies the append recurrence, exhaustively to length 16") {
    for (std::size_t n = 0; n <= 15; ++n) {
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << n); ++r) {
            BitWord t = lex_unrank_u64(r, n);
            BitWord t0 = t;
            t0.append(false);
            BitWord t1 = t;
            t1.append(true);
            REQUIRE(lex_rank_u64(t0) == 2 * r);
            REQUIRE(lex_rank_u64(t1) == 2 * r + 1);
        }
    }
}

TEST_CASE("text round-trip and subset view") {
    const BitWord w = BitWord::from_string("01101");
    CHECK(w.str() == "01101");
    CHECK_FALSE(w.bit(0));
    CHECK(w.bit(1));
    CHECK(w.count_ones() == 3);
    CHECK(w.count_ones(2) == 1);
    CHECK_THROWS_AS(BitWord::from_string("01x"), std::invalid_argument);

    RandomStream rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const BitWord v = BitWord::random(rng.below(200), rng);
        CHECK(BitWord::from_string(v.str()) == v);
    }
}

TEST_CASE("prefix, padding and extension") {
    const BitWord w = BitWord::from_string("1100101");
    CHECK(w.prefix(4) == BitWord::from_string("1100"));
    CHECK(w.prefix(0) == BitWord());
    CHECK(w.extends(BitWord::from_string("110")));
    CHECK(w.extends(w));
    CHECK_FALSE(w.extends(BitWord::from_string("111")));
    CHECK_FALSE(BitWord::from_string("11").extends(w));
    CHECK(BitWord::from_string("10").padded(5) == BitWord::from_string("10000"));

    // Words longer than one storage block.
    const BitWord longw = BitWord::ones(70);
    CHECK(longw.prefix(65) == BitWord::ones(65));
    CHECK(longw.extends(BitWord::ones(64)));
    CHECK_FALSE(longw.extends(BitWord::zeros(64)));
}

TEST_CASE("length-lex enumeration covers every word exactly once") {
    // Indices 0..2^{L+1}-2 enumerate all words of length <= L.
    CHECK(length_lex_word(0) == BitWord());
    CHECK(length_lex_word(1) == BitWord::from_string("0"));
    CHECK(length_lex_word(2) == BitWord::from_string("1"));
    CHECK(length_lex_word(3) == BitWord::from_string("00"));
    for (std::uint64_t i = 0; i < (1u << 7) - 1; ++i)
        CHECK(length_lex_index(length_lex_word(i)) == i);
}
