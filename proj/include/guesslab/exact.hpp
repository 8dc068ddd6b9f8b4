#pragma once

// Exact analysis: per-level hit probabilities, the avoider-counting dynamic
// program, partial sums of pi(n)/2^n, and the central-binomial asymptotic
// ratio at 50-digit precision.
//
// The avoider DP keeps the surviving prefixes of length n as a dense bitmap
// of 2^n flags indexed by lexicographic rank. Extending every prefix by one
// bit is a single backward in-place pass (each source bit spreads to the
// adjacent rank pair 2r, 2r+1), and removing the members of A_{n+1} is a
// masked AND per 64-rank block. Arbitrary families are not Markovian, so the
// bitmap — not a count vector — is the state; the depth cap of 30 keeps it
// at or below 128 MiB.
//
// Avoider counts and hit statistics range over the levels 1..N: the level-0
// family either guesses every real or none (P(0) has one element), so it
// carries no information about a word. Partial sums of pi(n)/2^n do include
// the n = 0 term.

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include <boost/math/constants/constants.hpp>

#include "guesslab/family.hpp"
#include "guesslab/pibound.hpp"
#include "guesslab/scalar.hpp"
#include "guesslab/sequence.hpp"

namespace guesslab {

inline Rational level_hit_probability(const LevelFamily& f) {
    return Rational(f.cardinality(), pow2(f.level()));
}

// a_N = number of length-N words none of whose positive-length prefixes is
// guessed, for N = 0..depth.
struct AvoiderTable {
    std::string family_id;
    std::vector<std::uint64_t> counts;

    std::size_t depth() const { return counts.size() - 1; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["family"] = family_id;
        j["depth"] = depth();
        auto counts_json = nlohmann::json::array();
        auto probs = nlohmann::json::array();
        auto probs_float = nlohmann::json::array();
        for (std::size_t n = 0; n < counts.size(); ++n) {
            counts_json.push_back(std::to_string(counts[n]));
            const Rational p(counts[n], pow2(n));
            probs.push_back(fraction_string(p));
            probs_float.push_back(float17_string(p));
        }
        j["counts"] = std::move(counts_json);
        j["probabilities"] = std::move(probs);
        j["probabilities_float"] = std::move(probs_float);
        return j;
    }

    std::string to_csv() const {
        std::ostringstream out;
        out << "N,count,probability,probability_float\n";
        for (std::size_t n = 0; n < counts.size(); ++n) {
            const Rational p(counts[n], pow2(n));
            out << n << ',' << counts[n] << ',' << fraction_string(p) << ','
                << float17_string(p) << '\n';
        }
        return out.str();
    }
};

namespace detail {

// Bit i of a 32-bit value lands on bits 2i and 2i+1.
inline std::uint64_t spread_pair(std::uint64_t x) {
    x &= 0xFFFFFFFFULL;
    x = (x | (x << 16)) & 0x0000FFFF0000FFFFULL;
    x = (x | (x << 8)) & 0x00FF00FF00FF00FFULL;
    x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0FULL;
    x = (x | (x << 2)) & 0x3333333333333333ULL;
    x = (x | (x << 1)) & 0x5555555555555555ULL;
    return x | (x << 1);
}

// In-place doubling of the live region from 2^(n-1) to 2^n bits.
inline void expand_bitmap(std::vector<std::uint64_t>& bits, std::size_t n) {
    const std::size_t dest_words = n < 6 ? 1 : (std::size_t{1} << (n - 6));
    for (std::size_t w = dest_words; w-- > 0;) {
        const std::uint64_t src = bits[w >> 1];
        const std::uint64_t half = (w & 1) ? (src >> 32) : (src & 0xFFFFFFFFULL);
        bits[w] = spread_pair(half);
    }
}

}  // namespace detail

inline AvoiderTable count_avoiders(const GuessingSequence& seq, std::size_t depth) {
    if (depth > 30) throw std::invalid_argument("count_avoiders: depth capped at 30");
    AvoiderTable table;
    table.family_id = seq.id();
    table.counts.assign(depth + 1, 0);

    const std::size_t words = depth < 6 ? 1 : (std::size_t{1} << (depth - 6));
    std::vector<std::uint64_t> bits(words, 0);
    bits[0] = 1;
    table.counts[0] = 1;

    for (std::size_t n = 1; n <= depth; ++n) {
        detail::expand_bitmap(bits, n);
        const LevelFamily& fam = seq.level(n);
        if (n < 6) {
            for (std::uint64_t r = 0; r < (std::uint64_t{1} << n); ++r)
                if (((bits[0] >> r) & 1u) != 0 && fam.contains_rank(r))
                    bits[0] &= ~(std::uint64_t{1} << r);
        } else {
            const std::size_t live_words = std::size_t{1} << (n - 6);
            for (std::size_t b = 0; b < live_words; ++b)
                if (bits[b] != 0) bits[b] &= ~fam.member_mask(b);
        }
        std::uint64_t total = 0;
        const std::size_t live_words = n < 6 ? 1 : (std::size_t{1} << (n - 6));
        for (std::size_t w = 0; w < live_words; ++w)
            total += static_cast<std::uint64_t>(std::popcount(bits[w]));
        table.counts[n] = total;
    }
    return table;
}

inline Rational avoider_probability(const AvoiderTable& table, std::size_t n) {
    if (n >= table.counts.size())
        throw std::out_of_range("avoider_probability: level beyond table depth");
    return Rational(table.counts[n], pow2(n));
}

// Partial sums S_N = sum_{n<=N} pi(n)/2^n; undefined budget values add 0.
struct BCReport {
    std::string pi_name;
    std::vector<Rational> partial_sums;

    std::size_t depth() const { return partial_sums.size() - 1; }

    const Rational& sum(std::size_t n) const { return partial_sums.at(n); }

    // (N, S_2N / S_N) wherever both are in range and S_N > 0.
    std::vector<std::pair<std::size_t, double>> doubling_ratios() const {
        std::vector<std::pair<std::size_t, double>> out;
        for (std::size_t n = 1; 2 * n <= depth(); ++n) {
            if (partial_sums[n] == 0) continue;
            const Rational ratio = partial_sums[2 * n] / partial_sums[n];
            out.push_back({n, ratio.convert_to<double>()});
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["pi"] = pi_name;
        j["depth"] = depth();
        auto sums = nlohmann::json::array();
        auto sums_float = nlohmann::json::array();
        for (const auto& s : partial_sums) {
            sums.push_back(fraction_string(s));
            sums_float.push_back(float17_string(s));
        }
        j["partial_sums"] = std::move(sums);
        j["partial_sums_float"] = std::move(sums_float);
        auto ratios = nlohmann::json::array();
        for (const auto& [n, r] : doubling_ratios()) ratios.push_back({{"N", n}, {"ratio", r}});
        j["doubling_ratios"] = std::move(ratios);
        return j;
    }

    std::string to_csv() const {
        std::ostringstream out;
        out << "N,sum,sum_float\n";
        for (std::size_t n = 0; n < partial_sums.size(); ++n)
            out << n << ',' << fraction_string(partial_sums[n]) << ','
                << float17_string(partial_sums[n]) << '\n';
        return out.str();
    }
};

inline BCReport bc_partial_sums(const PiBound& pi, std::size_t depth) {
    BCReport report;
    report.pi_name = pi.name();
    report.partial_sums.reserve(depth + 1);
    Rational sum = 0;
    for (std::size_t n = 0; n <= depth; ++n) {
        sum += Rational(pi.value_or_zero(n), pow2(n));
        report.partial_sums.push_back(sum);
    }
    return report;
}

// Exact central binomial next to its Stirling estimate sqrt(2) 2^n/sqrt(pi n);
// the ratio tends to 1 from below.
struct StirlingRatio {
    unsigned n = 0;
    BigInt exact;          // C(n, n/2)
    Decimal50 asymptotic;  // sqrt(2) * 2^n / sqrt(pi * n)
    Decimal50 ratio;       // exact / asymptotic
};

inline StirlingRatio stirling_ratio(unsigned n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("stirling_ratio: n must be even, >= 2");
    StirlingRatio result;
    result.n = n;
    result.exact = binomial(n, n / 2);
    const Decimal50 pi_n = boost::math::constants::pi<Decimal50>() * Decimal50(n);
    const Decimal50 power(pow2(n));
    result.asymptotic = sqrt(Decimal50(2)) * power / sqrt(pi_n);
    result.ratio = Decimal50(result.exact) / result.asymptotic;
    return result;
}

}  // namespace guesslab
