#pragma once

// The explicit guessing-sequence constructions: the tail family, frozen
// suffixes, the moving lexicographic interval, the central-binomial walk
// families in one and two dimensions, dense singletons, uniform random
// families, and the finite dominance modification.
//
// Family identifier grammar:
//   tail | frozen:<bits> | cycling:<pi-id> | cb1[:mode] | cb2[:mode]
//   | dense1 | random:<pi-id>:<seed>

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "guesslab/bitword.hpp"
#include "guesslab/family.hpp"
#include "guesslab/pibound.hpp"
#include "guesslab/rng.hpp"
#include "guesslab/scalar.hpp"
#include "guesslab/sequence.hpp"

namespace guesslab {

namespace detail {

inline constexpr std::uint64_t kOddBits = 0xAAAAAAAAAAAAAAAAULL;
inline constexpr std::uint64_t kEvenBits = 0x5555555555555555ULL;

// Masks of j in [0,64) with popcount(j) == v.
inline const std::array<std::uint64_t, 7>& popcount6_masks() {
    static const std::array<std::uint64_t, 7> table = [] {
        std::array<std::uint64_t, 7> t{};
        for (unsigned j = 0; j < 64; ++j) t[std::popcount(j)] |= std::uint64_t{1} << j;
        return t;
    }();
    return table;
}

// Number of ones among prefix positions of a given parity.
inline std::size_t count_parity_ones(const BitWord& w, std::size_t prefix_len, unsigned parity) {
    std::size_t total = 0;
    for (std::size_t i = parity; i < prefix_len; i += 2)
        if (w.bit(i)) ++total;
    return total;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tail family: A_n = { X in P(n) : n-1 in X }, budget 2^(n-1).
// ---------------------------------------------------------------------------
inline GuessingSequence gen_tail(std::size_t n_max) {
    return GuessingSequence(
        "tail", PiBound::pow2_minus(1), n_max, [](std::size_t n) -> LevelFamily {
            if (n == 0) return LevelFamily::make_empty(0);
            return LevelFamily::make_predicate(
                n, "tail",
                [](const BitWord& w, std::size_t level) { return w.bit(level - 1); },
                pow2(n - 1),
                [](std::uint64_t) { return detail::kOddBits; });
        });
}

// ---------------------------------------------------------------------------
// Frozen suffix: A_n fixes the last k bits of the word to t; empty below k.
// ---------------------------------------------------------------------------
inline GuessingSequence gen_frozen_suffix(const BitWord& t, std::size_t n_max) {
    const std::size_t k = t.length();
    if (k == 0) throw std::invalid_argument("gen_frozen_suffix: pattern must be nonempty");
    const std::string id = "frozen:" + t.str();
    return GuessingSequence(
        id, PiBound::pow2_minus(static_cast<unsigned>(k)), n_max,
        [t, k, id](std::size_t n) -> LevelFamily {
            if (n < k) return LevelFamily::make_empty(n);
            LevelFamily::BlockMaskFn block_fn;
            if (n <= 63) {
                const std::uint64_t rt = lex_rank_u64(t);
                if (k <= 6) {
                    std::uint64_t mask = 0;
                    for (unsigned j = 0; j < 64; ++j)
                        if ((j & ((std::uint64_t{1} << k) - 1)) == rt)
                            mask |= std::uint64_t{1} << j;
                    block_fn = [mask](std::uint64_t) { return mask; };
                } else {
                    block_fn = [rt, k](std::uint64_t block) -> std::uint64_t {
                        const std::uint64_t hi_mod = (std::uint64_t{1} << (k - 6)) - 1;
                        if ((block & hi_mod) != (rt >> 6)) return 0;
                        return std::uint64_t{1} << (rt & 63);
                    };
                }
            }
            return LevelFamily::make_predicate(
                n, id,
                [t, k](const BitWord& w, std::size_t level) {
                    for (std::size_t q = 0; q < k; ++q)
                        if (w.bit(level - k + q) != t.bit(q)) return false;
                    return true;
                },
                pow2(n - k), std::move(block_fn));
        });
}

// ---------------------------------------------------------------------------
// Central binomial, one dimension: A_n = { X : |X| = n/2 }. Strict mode is
// empty at odd n; rounded mode requires |X| = ceil(n/2).
// ---------------------------------------------------------------------------
inline GuessingSequence gen_central_binomial_1d(Mode mode, std::size_t n_max) {
    const std::string id = mode == Mode::Strict ? "cb1:strict" : "cb1:rounded";
    return GuessingSequence(
        id, PiBound::central_binomial_1d(mode), n_max, [mode, id](std::size_t n) -> LevelFamily {
            if (mode == Mode::Strict && n % 2 != 0) return LevelFamily::make_empty(n);
            const std::size_t target = (n + (mode == Mode::Rounded ? 1 : 0)) / 2;
            LevelFamily::BlockMaskFn block_fn;
            if (n <= 63) {
                block_fn = [target](std::uint64_t block) -> std::uint64_t {
                    const int need = static_cast<int>(target) - std::popcount(block);
                    if (need < 0 || need > 6) return 0;
                    return detail::popcount6_masks()[static_cast<std::size_t>(need)];
                };
            }
            return LevelFamily::make_predicate(
                n, id,
                [target](const BitWord& w, std::size_t level) {
                    return w.count_ones(level) == target;
                },
                binomial(n, target), std::move(block_fn));
        });
}

// ---------------------------------------------------------------------------
// Central binomial, two dimensions: split positions into evens and odds and
// require |X ∩ evens| = |X ∩ odds| = n/4 (strict, needs 4 | n) or ceil(n/4)
// (rounded).
// ---------------------------------------------------------------------------
inline GuessingSequence gen_central_binomial_2d(Mode mode, std::size_t n_max) {
    const std::string id = mode == Mode::Strict ? "cb2:strict" : "cb2:rounded";
    return GuessingSequence(
        id, PiBound::central_binomial_2d(mode), n_max, [mode, id](std::size_t n) -> LevelFamily {
            if (mode == Mode::Strict && n % 4 != 0) return LevelFamily::make_empty(n);
            const std::size_t target = mode == Mode::Strict ? n / 4 : (n + 3) / 4;
            const std::size_t evens = (n + 1) / 2;
            const std::size_t odds = n / 2;
            const BigInt card = binomial(evens, target) * binomial(odds, target);

            LevelFamily::BlockMaskFn block_fn;
            if (n >= 6 && n <= 63) {
                // Position i maps to rank bit n-1-i, so even positions sit on
                // rank bits of parity (n-1) mod 2.
                const std::uint64_t mask_e =
                    ((n - 1) % 2 == 0) ? detail::kEvenBits : detail::kOddBits;
                const std::uint64_t mask_o = ~mask_e;
                auto table = std::make_shared<std::array<std::array<std::uint64_t, 7>, 7>>();
                for (std::uint64_t j = 0; j < 64; ++j) {
                    const int e = std::popcount(j & mask_e);
                    const int o = std::popcount(j & mask_o);
                    (*table)[static_cast<std::size_t>(e)][static_cast<std::size_t>(o)] |=
                        std::uint64_t{1} << j;
                }
                block_fn = [target, mask_e, mask_o, table](std::uint64_t block) -> std::uint64_t {
                    const std::uint64_t hi = block << 6;
                    const int need_e = static_cast<int>(target) - std::popcount(hi & mask_e);
                    const int need_o = static_cast<int>(target) - std::popcount(hi & mask_o);
                    if (need_e < 0 || need_e > 6 || need_o < 0 || need_o > 6) return 0;
                    return (*table)[static_cast<std::size_t>(need_e)]
                                   [static_cast<std::size_t>(need_o)];
                };
            }
            return LevelFamily::make_predicate(
                n, id,
                [target](const BitWord& w, std::size_t level) {
                    return detail::count_parity_ones(w, level, 0) == target &&
                           detail::count_parity_ones(w, level, 1) == target;
                },
                card, std::move(block_fn));
        });
}

// ---------------------------------------------------------------------------
// Interval cycling: a moving lexicographic window of width pi(n) that wraps
// around 2^n, guessing every real once per completed round.
// ---------------------------------------------------------------------------
struct IntervalCyclingState {
    std::size_t n = 0;
    BitWord s;                    // interval start s_n
    BitWord t;                    // interval end t_n
    BigInt rounds_completed = 0;  // number of wraps so far
    Rational partial_sum = 0;     // sum of pi(i)/2^i for i <= n
    bool wrapped = false;         // this level completed a round
    std::vector<std::pair<BigInt, BigInt>> intervals;  // rank form of I_n
};

inline std::vector<IntervalCyclingState> interval_cycling_trace(const PiBound& pi,
                                                                std::size_t n_max) {
    std::vector<IntervalCyclingState> trace;
    trace.reserve(n_max + 1);
    BigInt t_rank = 0;
    Rational sum = 0;
    BigInt rounds = 0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const BigInt budget = pi.value_or_zero(n);
        const BigInt top = pow2(n);
        if (budget > top)
            throw std::invalid_argument("interval cycling: pi(n) > 2^n at level " +
                                        std::to_string(n));
        const BigInt s_rank = n == 0 ? BigInt(0) : BigInt(2 * t_rank);
        const BigInt reach = s_rank + budget;
        const bool wrapped = reach >= top;
        t_rank = wrapped ? reach - top : reach;

        IntervalCyclingState st;
        st.n = n;
        st.s = lex_unrank(LexPosition{s_rank, n});
        st.t = lex_unrank(LexPosition{t_rank, n});
        if (!wrapped) {
            if (budget > 0) st.intervals.push_back({s_rank, reach});
        } else {
            st.intervals.push_back({s_rank, top});
            if (t_rank > 0) st.intervals.push_back({BigInt(0), t_rank});
        }
        sum += Rational(budget, top);
        if (wrapped) ++rounds;
        st.partial_sum = sum;
        st.rounds_completed = rounds;
        st.wrapped = wrapped;
        trace.push_back(std::move(st));
    }
    return trace;
}

inline GuessingSequence gen_interval_cycling(const PiBound& pi, std::size_t n_max) {
    auto trace = std::make_shared<const std::vector<IntervalCyclingState>>(
        interval_cycling_trace(pi, n_max));
    return GuessingSequence("cycling:" + pi.name(), pi, n_max,
                            [trace](std::size_t n) -> LevelFamily {
                                return LevelFamily::make_intervals(n, (*trace)[n].intervals);
                            });
}

// ---------------------------------------------------------------------------
// Dense singletons: enumerate all finite words in length-lex order, pick the
// zero-padded point above the n-th word, and let it be guessed on the levels
// whose 2-adic valuation is n. The chosen points form a dense set.
// ---------------------------------------------------------------------------
struct DenseSingletonScheme {
    // n-th finite word in the length-lex enumeration of all finite words.
    static BitWord enumeration_word(std::uint64_t n) { return length_lex_word(n); }

    // Which point is guessed at level m >= 1: the 2-adic valuation of m.
    static std::uint64_t stream_of_level(std::size_t m) {
        if (m == 0) throw std::invalid_argument("stream_of_level: level must be positive");
        return static_cast<std::uint64_t>(std::countr_zero(static_cast<std::uint64_t>(m)));
    }

    // The length-len prefix of the n-th chosen point (its word, zero-padded).
    static BitWord chosen_point_prefix(std::uint64_t n, std::size_t len) {
        BitWord base = enumeration_word(n);
        if (base.length() >= len) return base.prefix(len);
        return base.padded(len);
    }
};

inline GuessingSequence gen_dense_singletons(std::size_t n_max) {
    return GuessingSequence("dense1", PiBound::constant(1), n_max,
                            [](std::size_t m) -> LevelFamily {
                                if (m == 0) return LevelFamily::make_empty(0);
                                const std::uint64_t n = DenseSingletonScheme::stream_of_level(m);
                                return LevelFamily::make_explicit(
                                    m, {DenseSingletonScheme::chosen_point_prefix(n, m)});
                            });
}

// ---------------------------------------------------------------------------
// Uniform random families: A_n drawn uniformly among the size-pi(n) subsets
// of 2^n, independently across levels, from a per-level substream of the
// seed. Levels with pi(n) > 2^20 are rejected (explicit-sampling bound).
// ---------------------------------------------------------------------------
inline constexpr std::uint64_t kExplicitSamplingBound = std::uint64_t{1} << 20;

inline GuessingSequence gen_random_family(const PiBound& pi, std::size_t n_max,
                                          std::uint64_t seed) {
    const std::string id = "random:" + pi.name() + ":" + std::to_string(seed);
    return GuessingSequence(id, pi, n_max, [pi, seed](std::size_t n) -> LevelFamily {
        const BigInt count = pi.value_or_zero(n);
        const BigInt top = pow2(n);
        if (count > top)
            throw std::invalid_argument("gen_random_family: pi(n) > 2^n at level " +
                                        std::to_string(n));
        if (count > kExplicitSamplingBound)
            throw std::domain_error("gen_random_family: pi(n) exceeds explicit-sampling bound");
        const std::uint64_t k = count.convert_to<std::uint64_t>();
        RandomStream rng = RandomStream::substream(seed, n);
        // Floyd's sampler: k distinct ranks in [0, 2^n), uniform over subsets.
        std::set<BigInt> chosen;
        for (BigInt j = top - k; j < top; ++j) {
            BigInt r = rng.below_big(j + 1);
            if (!chosen.insert(r).second) chosen.insert(j);
        }
        std::vector<BitWord> members;
        members.reserve(k);
        for (const auto& r : chosen) members.push_back(lex_unrank(LexPosition{r, n}));
        return LevelFamily::make_explicit(n, std::move(members));
    });
}

// ---------------------------------------------------------------------------
// Dominance modification: once pi_big dominates the sequence's own budget
// from level N on, emptying the first N levels yields a witness for pi_big
// with the same guessed set.
// ---------------------------------------------------------------------------
inline GuessingSequence apply_dominance_modification(
    const GuessingSequence& seq, const PiBound& pi_big,
    std::optional<std::size_t> start = std::nullopt) {
    const std::size_t n_max = seq.max_depth();
    std::size_t cutover = 0;
    if (start) {
        cutover = *start;
        for (std::size_t n = cutover; n <= n_max; ++n)
            if (seq.pi().value_or_zero(n) > pi_big.value_or_zero(n))
                throw std::domain_error("dominance modification: pi not dominated at level " +
                                        std::to_string(n));
    } else {
        std::optional<std::size_t> last_violation;
        for (std::size_t n = 0; n <= n_max; ++n)
            if (seq.pi().value_or_zero(n) > pi_big.value_or_zero(n)) last_violation = n;
        if (last_violation && *last_violation == n_max)
            throw std::domain_error(
                "dominance modification: no dominance threshold within scan depth");
        cutover = last_violation ? *last_violation + 1 : 0;
    }
    return GuessingSequence(seq.id() + "|from:" + std::to_string(cutover), pi_big, n_max,
                            [seq, cutover](std::size_t n) -> LevelFamily {
                                if (n < cutover) return LevelFamily::make_empty(n);
                                return seq.level(n);
                            });
}

// ---------------------------------------------------------------------------
// Identifier parsing.
// ---------------------------------------------------------------------------
inline GuessingSequence parse_family_id(std::string_view id, std::size_t depth) {
    if (id == "tail") return gen_tail(depth);
    if (id == "dense1") return gen_dense_singletons(depth);
    if (id == "cb1") return gen_central_binomial_1d(Mode::Rounded, depth);
    if (id == "cb2") return gen_central_binomial_2d(Mode::Rounded, depth);
    if (id.starts_with("cb1:")) return gen_central_binomial_1d(parse_mode(id.substr(4)), depth);
    if (id.starts_with("cb2:")) return gen_central_binomial_2d(parse_mode(id.substr(4)), depth);
    if (id.starts_with("frozen:")) {
        const auto bits = id.substr(7);
        if (bits.empty()) throw std::invalid_argument("frozen: missing bit pattern");
        return gen_frozen_suffix(BitWord::from_string(bits), depth);
    }
    if (id.starts_with("cycling:")) return gen_interval_cycling(parse_pi_id(id.substr(8)), depth);
    if (id.starts_with("random:")) {
        const auto rest = id.substr(7);
        const auto last_colon = rest.rfind(':');
        if (last_colon == std::string_view::npos)
            throw std::invalid_argument("random: expected random:<pi-id>:<seed>");
        const auto pi_id = rest.substr(0, last_colon);
        const auto seed_text = rest.substr(last_colon + 1);
        std::uint64_t seed = 0;
        try {
            seed = std::stoull(std::string(seed_text));
        } catch (const std::exception&) {
            throw std::invalid_argument("random: bad seed: " + std::string(seed_text));
        }
        return gen_random_family(parse_pi_id(pi_id), depth, seed);
    }
    throw std::invalid_argument("unknown family id: " + std::string(id));
}

}  // namespace guesslab
