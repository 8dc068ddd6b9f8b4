#pragma once

// Finite binary words t in 2^n, identified with subsets of {0, ..., n-1}:
// position i holds 1 iff i is in the encoded subset. Words of arbitrary
// length are supported (the tree module produces words thousands of bits
// long). The canonical textual form is an ASCII string of '0'/'1' with
// index 0 leftmost.
//
// Lexicographic order on 2^n is the numeric order of the binary numeral
// read with index 0 as the most significant bit, so appending a bit obeys
// rank(t.0) = 2 rank(t) and rank(t.1) = 2 rank(t) + 1.

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "guesslab/rng.hpp"
#include "guesslab/scalar.hpp"

namespace guesslab {

class BitWord {
  public:
    BitWord() = default;

    static BitWord zeros(std::size_t n) {
        BitWord w;
        w.len_ = n;
        w.words_.assign(word_count(n), 0);
        return w;
    }

    static BitWord ones(std::size_t n) {
        BitWord w = zeros(n);
        for (auto& blk : w.words_) blk = ~std::uint64_t{0};
        w.mask_tail();
        return w;
    }

    static BitWord from_string(std::string_view text) {
        BitWord w = zeros(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '1') {
                w.set_bit(i, true);
            } else if (text[i] != '0') {
                throw std::invalid_argument("BitWord::from_string: expected only '0'/'1'");
            }
        }
        return w;
    }

    static BitWord random(std::size_t n, RandomStream& rng) {
        BitWord w = zeros(n);
        for (std::size_t i = 0; i < n; ++i) w.set_bit(i, rng.next_bit());
        return w;
    }

    std::size_t length() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool bit(std::size_t i) const {
        check_index(i);
        return ((words_[i >> 6] >> (i & 63)) & 1u) != 0;
    }

    void set_bit(std::size_t i, bool v) {
        check_index(i);
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }

    void append(bool b) {
        if ((len_ & 63) == 0) words_.push_back(0);
        ++len_;
        set_bit(len_ - 1, b);
    }

    BitWord prefix(std::size_t n) const {
        if (n > len_) throw std::out_of_range("BitWord::prefix: longer than word");
        BitWord w;
        w.len_ = n;
        w.words_.assign(words_.begin(), words_.begin() + word_count(n));
        w.mask_tail();
        return w;
    }

    // Zero-extended copy of length n >= length().
    BitWord padded(std::size_t n) const {
        if (n < len_) throw std::invalid_argument("BitWord::padded: target shorter than word");
        BitWord w = *this;
        w.words_.resize(word_count(n), 0);
        w.len_ = n;
        return w;
    }

    // True iff g is an initial segment of *this.
    bool extends(const BitWord& g) const {
        if (g.len_ > len_) return false;
        return compare_prefix(*this, g.len_, g) == 0;
    }

    std::size_t count_ones() const { return count_ones(len_); }

    std::size_t count_ones(std::size_t prefix_len) const {
        if (prefix_len > len_) throw std::out_of_range("BitWord::count_ones: prefix too long");
        std::size_t total = 0;
        const std::size_t full = prefix_len >> 6;
        for (std::size_t w = 0; w < full; ++w) total += std::popcount(words_[w]);
        const std::size_t rest = prefix_len & 63;
        if (rest != 0) total += std::popcount(words_[full] & ((std::uint64_t{1} << rest) - 1));
        return total;
    }

    std::string str() const {
        std::string s(len_, '0');
        for (std::size_t i = 0; i < len_; ++i)
            if (bit(i)) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitWord& a, const BitWord& b) {
        return a.len_ == b.len_ && a.words_ == b.words_;
    }

    // Total order: by length, then lexicographically (rank order within a length).
    friend bool operator<(const BitWord& a, const BitWord& b) {
        if (a.len_ != b.len_) return a.len_ < b.len_;
        return lex_compare_equal_length(a, b) < 0;
    }

    // Three-way lexicographic comparison of the first n bits of w against the
    // length-n word m. Requires w.length() >= n and m.length() == n.
    static int compare_prefix(const BitWord& w, std::size_t n, const BitWord& m) {
        for (std::size_t blk = 0; blk * 64 < n; ++blk) {
            std::uint64_t x = w.words_[blk];
            std::uint64_t y = m.words_[blk];
            const std::size_t remaining = n - blk * 64;
            if (remaining < 64) {
                const std::uint64_t mask = (std::uint64_t{1} << remaining) - 1;
                x &= mask;
                y &= mask;
            }
            if (x != y) {
                // Lowest differing stored bit is the most significant position.
                const int pos = std::countr_zero(x ^ y);
                return ((x >> pos) & 1u) != 0 ? 1 : -1;
            }
        }
        return 0;
    }

  private:
    static std::size_t word_count(std::size_t n) { return (n + 63) >> 6; }

    static int lex_compare_equal_length(const BitWord& a, const BitWord& b) {
        return compare_prefix(a, a.len_, b);
    }

    void check_index(std::size_t i) const {
        if (i >= len_) throw std::out_of_range("BitWord: index past end");
    }

    void mask_tail() {
        const std::size_t rest = len_ & 63;
        if (rest != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << rest) - 1;
    }

    std::vector<std::uint64_t> words_;
    std::size_t len_ = 0;
};

// Position of a word in the lexicographic order of 2^level.
struct LexPosition {
    BigInt value;
    std::size_t level = 0;

    friend bool operator==(const LexPosition& a, const LexPosition& b) {
        return a.level == b.level && a.value == b.value;
    }
};

inline BigInt lex_rank_value(const BitWord& t) {
    BigInt v = 0;
    for (std::size_t i = 0; i < t.length(); ++i) {
        v <<= 1;
        if (t.bit(i)) v |= 1;
    }
    return v;
}

inline LexPosition lex_rank(const BitWord& t) { return LexPosition{lex_rank_value(t), t.length()}; }

inline BitWord lex_unrank(const LexPosition& p) {
    if (p.value < 0 || p.value >= pow2(p.level))
        throw std::out_of_range("lex_unrank: value not below 2^level");
    BitWord w = BitWord::zeros(p.level);
    for (std::size_t i = 0; i < p.level; ++i)
        if (boost::multiprecision::bit_test(p.value, static_cast<unsigned>(p.level - 1 - i)))
            w.set_bit(i, true);
    return w;
}

// Fast paths for levels that fit a machine word.
inline std::uint64_t lex_rank_u64(const BitWord& t) {
    if (t.length() > 63) throw std::invalid_argument("lex_rank_u64: word longer than 63 bits");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < t.length(); ++i) v = (v << 1) | (t.bit(i) ? 1u : 0u);
    return v;
}

inline BitWord lex_unrank_u64(std::uint64_t value, std::size_t level) {
    if (level > 63 || value >= (std::uint64_t{1} << level))
        throw std::out_of_range("lex_unrank_u64: value not below 2^level");
    BitWord w = BitWord::zeros(level);
    for (std::size_t i = 0; i < level; ++i)
        if ((value >> (level - 1 - i)) & 1u) w.set_bit(i, true);
    return w;
}

// Length-lexicographic enumeration of all finite words: the empty word,
// then both length-1 words in lex order, then length 2, and so on. The
// words of length L occupy indices [2^L - 1, 2^{L+1} - 1).
inline BitWord length_lex_word(std::uint64_t index) {
    std::size_t level = 0;
    std::uint64_t first = 0;  // index of the first length-`level` word
    while (index - first >= (std::uint64_t{1} << level)) {
        first += std::uint64_t{1} << level;
        ++level;
        if (level > 62) throw std::out_of_range("length_lex_word: index too large");
    }
    return lex_unrank_u64(index - first, level);
}

inline std::uint64_t length_lex_index(const BitWord& t) {
    return ((std::uint64_t{1} << t.length()) - 1) + lex_rank_u64(t);
}

}  // namespace guesslab
