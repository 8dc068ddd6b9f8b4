#pragma once

// One level of a guessing sequence: a set A_n of length-n words, stored
// extensionally (sorted word list), intensionally (membership predicate with
// a closed-form cardinality), or as at most two half-open lexicographic rank
// intervals. All representations answer membership in time polynomial in n
// and report an exact cardinality.
//
// For the counting DP, families additionally expose membership as 64-rank
// bitmask blocks over the lexicographic order: block b covers ranks
// [64b, 64b + 64). Built-in predicate families install O(1) mask functions;
// everything else falls back to per-rank evaluation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "guesslab/bitword.hpp"
#include "guesslab/scalar.hpp"

namespace guesslab {

class LevelFamily {
  public:
    enum class Repr { Explicit, Predicate, LexIntervals };

    // Tests whether the length-`level` prefix of w is a member.
    using PrefixPredicate = std::function<bool(const BitWord& w, std::size_t level)>;
    // 64-bit membership mask for ranks [64 * block, 64 * block + 64).
    using BlockMaskFn = std::function<std::uint64_t(std::uint64_t block)>;

    static LevelFamily make_empty(std::size_t level) {
        return make_explicit(level, {});
    }

    static LevelFamily make_explicit(std::size_t level, std::vector<BitWord> members) {
        LevelFamily f(level, Repr::Explicit);
        for (const auto& m : members)
            if (m.length() != level)
                throw std::invalid_argument("LevelFamily: member length differs from level");
        std::sort(members.begin(), members.end());
        if (std::adjacent_find(members.begin(), members.end()) != members.end())
            throw std::invalid_argument("LevelFamily: duplicate member");
        f.cardinality_ = BigInt(members.size());
        if (level <= 63) {
            f.ranks_.reserve(members.size());
            for (const auto& m : members) f.ranks_.push_back(lex_rank_u64(m));
        }
        f.members_ = std::move(members);
        return f;
    }

    static LevelFamily make_predicate(std::size_t level, std::string id, PrefixPredicate pred,
                                      BigInt cardinality, BlockMaskFn block_fn = nullptr) {
        LevelFamily f(level, Repr::Predicate);
        f.predicate_id_ = std::move(id);
        f.pred_ = std::move(pred);
        f.cardinality_ = std::move(cardinality);
        f.block_fn_ = std::move(block_fn);
        if (f.cardinality_ < 0 || f.cardinality_ > pow2(level))
            throw std::invalid_argument("LevelFamily: cardinality outside [0, 2^level]");
        return f;
    }

    // Half-open rank intervals [lo, hi); at most two, pairwise disjoint.
    static LevelFamily make_intervals(std::size_t level,
                                      std::vector<std::pair<BigInt, BigInt>> intervals) {
        LevelFamily f(level, Repr::LexIntervals);
        if (intervals.size() > 2)
            throw std::invalid_argument("LevelFamily: more than two intervals");
        const BigInt top = pow2(level);
        BigInt card = 0;
        for (const auto& [lo, hi] : intervals) {
            if (lo < 0 || hi < lo || hi > top)
                throw std::invalid_argument("LevelFamily: interval out of range");
            card += hi - lo;
        }
        if (intervals.size() == 2) {
            const auto& a = intervals[0];
            const auto& b = intervals[1];
            if (!(a.second <= b.first || b.second <= a.first))
                throw std::invalid_argument("LevelFamily: overlapping intervals");
        }
        f.intervals_ = std::move(intervals);
        f.cardinality_ = card;
        return f;
    }

    std::size_t level() const { return level_; }
    Repr repr() const { return repr_; }
    const BigInt& cardinality() const { return cardinality_; }
    const std::string& predicate_id() const { return predicate_id_; }
    const std::vector<BitWord>& members() const { return members_; }
    const std::vector<std::pair<BigInt, BigInt>>& intervals() const { return intervals_; }

    bool contains(const BitWord& t) const {
        if (t.length() != level_)
            throw std::invalid_argument("LevelFamily::contains: word length differs from level");
        return contains_prefix(t);
    }

    // Membership of the length-`level` prefix of w (w.length() >= level).
    bool contains_prefix(const BitWord& w) const {
        if (w.length() < level_)
            throw std::invalid_argument("LevelFamily::contains_prefix: word shorter than level");
        switch (repr_) {
            case Repr::Explicit: {
                auto it = std::lower_bound(
                    members_.begin(), members_.end(), w,
                    [this](const BitWord& m, const BitWord& probe) {
                        return BitWord::compare_prefix(probe, level_, m) > 0;
                    });
                return it != members_.end() && BitWord::compare_prefix(w, level_, *it) == 0;
            }
            case Repr::Predicate:
                return pred_(w, level_);
            case Repr::LexIntervals: {
                const BigInt r = lex_rank_value(w.length() == level_ ? w : w.prefix(level_));
                return rank_in_intervals(r);
            }
        }
        return false;
    }

    // Membership by lexicographic rank; requires level <= 63.
    bool contains_rank(std::uint64_t rank) const {
        switch (repr_) {
            case Repr::Explicit:
                return std::binary_search(ranks_.begin(), ranks_.end(), rank);
            case Repr::Predicate:
                return pred_(lex_unrank_u64(rank, level_), level_);
            case Repr::LexIntervals:
                return rank_in_intervals(BigInt(rank));
        }
        return false;
    }

    bool has_fast_blocks() const {
        return repr_ != Repr::Predicate || static_cast<bool>(block_fn_);
    }

    // Membership mask of ranks [64 * block, 64 * block + 64); requires level >= 6.
    std::uint64_t member_mask(std::uint64_t block) const {
        switch (repr_) {
            case Repr::Explicit: {
                const std::uint64_t base = block << 6;
                auto it = std::lower_bound(ranks_.begin(), ranks_.end(), base);
                std::uint64_t mask = 0;
                for (; it != ranks_.end() && *it < base + 64; ++it)
                    mask |= std::uint64_t{1} << (*it - base);
                return mask;
            }
            case Repr::Predicate: {
                if (block_fn_) return block_fn_(block);
                std::uint64_t mask = 0;
                for (unsigned j = 0; j < 64; ++j)
                    if (contains_rank((block << 6) | j)) mask |= std::uint64_t{1} << j;
                return mask;
            }
            case Repr::LexIntervals: {
                const BigInt base = BigInt(block) << 6;
                std::uint64_t mask = 0;
                for (const auto& [lo, hi] : intervals_) {
                    if (hi <= base || lo >= base + 64) continue;
                    const std::uint64_t from =
                        lo <= base ? 0 : (lo - base).convert_to<std::uint64_t>();
                    const std::uint64_t to =
                        hi >= base + 64 ? 64 : (hi - base).convert_to<std::uint64_t>();
                    for (std::uint64_t j = from; j < to; ++j) mask |= std::uint64_t{1} << j;
                }
                return mask;
            }
        }
        return 0;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["level"] = level_;
        j["cardinality"] = cardinality_.str();
        switch (repr_) {
            case Repr::Explicit: {
                j["repr"] = "explicit";
                auto arr = nlohmann::json::array();
                for (const auto& m : members_) arr.push_back(m.str());
                j["members"] = std::move(arr);
                break;
            }
            case Repr::Predicate:
                j["repr"] = "predicate";
                j["predicate"] = predicate_id_;
                break;
            case Repr::LexIntervals: {
                j["repr"] = "lex_intervals";
                auto arr = nlohmann::json::array();
                for (const auto& [lo, hi] : intervals_)
                    arr.push_back({{"lo", lo.str()}, {"hi", hi.str()}});
                j["intervals"] = std::move(arr);
                break;
            }
        }
        return j;
    }

  private:
    LevelFamily(std::size_t level, Repr repr) : level_(level), repr_(repr) {}

    bool rank_in_intervals(const BigInt& r) const {
        for (const auto& [lo, hi] : intervals_)
            if (r >= lo && r < hi) return true;
        return false;
    }

    std::size_t level_;
    Repr repr_;
    BigInt cardinality_ = 0;
    std::vector<BitWord> members_;          // Explicit, sorted
    std::vector<std::uint64_t> ranks_;      // Explicit, level <= 63, sorted
    std::string predicate_id_;
    PrefixPredicate pred_;
    BlockMaskFn block_fn_;
    std::vector<std::pair<BigInt, BigInt>> intervals_;
};

// All members in rank order, by exhaustive scan; only sensible for small levels.
inline std::vector<BitWord> enumerate_members(const LevelFamily& f) {
    if (f.level() > 20) throw std::invalid_argument("enumerate_members: level too large");
    std::vector<BitWord> out;
    const std::uint64_t total = std::uint64_t{1} << f.level();
    for (std::uint64_t r = 0; r < total; ++r) {
        BitWord w = lex_unrank_u64(r, f.level());
        if (f.contains(w)) out.push_back(std::move(w));
    }
    return out;
}

}  // namespace guesslab
