#pragma once

// Seeded stochastic estimation of guess statistics. Words are drawn from
// the uniform product measure (one independent fair bit per position), and
// each sample uses its own substream of the seed, so results do not depend
// on evaluation order. Hits are counted over the levels 1..depth, matching
// the avoider DP.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "guesslab/bitword.hpp"
#include "guesslab/exact.hpp"
#include "guesslab/generators.hpp"
#include "guesslab/rng.hpp"
#include "guesslab/sequence.hpp"

namespace guesslab {

struct HitStats {
    std::string family_id;
    std::size_t depth = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> hit_counts;   // per sample
    std::vector<std::uint64_t> level_hits;   // index n = 1..depth; [0] unused

    double mean_hits() const {
        if (hit_counts.empty()) return 0.0;
        double total = 0;
        for (auto c : hit_counts) total += c;
        return total / static_cast<double>(hit_counts.size());
    }

    // Empirical P(at least k hits) for k = 1..k_max; nonincreasing in k.
    std::vector<double> ge_fractions(std::size_t k_max) const {
        std::vector<double> out(k_max, 0.0);
        for (auto c : hit_counts)
            for (std::size_t k = 1; k <= std::min<std::size_t>(c, k_max); ++k) out[k - 1] += 1.0;
        for (auto& v : out) v /= static_cast<double>(hit_counts.size());
        return out;
    }

    double level_frequency(std::size_t n) const {
        return static_cast<double>(level_hits.at(n)) / static_cast<double>(samples);
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["family"] = family_id;
        j["depth"] = depth;
        j["samples"] = samples;
        j["seed"] = seed;
        j["mean_hits"] = mean_hits();
        j["ge_fractions"] = ge_fractions(4);
        auto freq = nlohmann::json::array();
        for (std::size_t n = 1; n < level_hits.size(); ++n)
            freq.push_back(level_frequency(n));
        j["level_frequencies"] = std::move(freq);
        j["histogram"] = histogram();
        return j;
    }

    std::vector<std::uint64_t> histogram() const {
        std::uint32_t top = 0;
        for (auto c : hit_counts) top = std::max(top, c);
        std::vector<std::uint64_t> h(top + 1, 0);
        for (auto c : hit_counts) ++h[c];
        return h;
    }

    std::string histogram_csv() const {
        std::ostringstream out;
        out << "hit_count,frequency\n";
        const auto h = histogram();
        for (std::size_t c = 0; c < h.size(); ++c) out << c << ',' << h[c] << '\n';
        return out.str();
    }
};

inline HitStats sample_hits(const GuessingSequence& seq, std::size_t depth, std::uint64_t samples,
                            std::uint64_t seed) {
    HitStats stats;
    stats.family_id = seq.id();
    stats.depth = depth;
    stats.samples = samples;
    stats.seed = seed;
    stats.hit_counts.reserve(samples);
    stats.level_hits.assign(depth + 1, 0);
    for (std::uint64_t i = 0; i < samples; ++i) {
        RandomStream rng = RandomStream::substream(seed, i);
        const BitWord w = BitWord::random(depth, rng);
        std::uint32_t hits = 0;
        for (std::size_t n = 1; n <= depth; ++n) {
            if (seq.level(n).contains_prefix(w)) {
                ++hits;
                ++stats.level_hits[n];
            }
        }
        stats.hit_counts.push_back(hits);
    }
    return stats;
}

// Empirical reflection of the random-family construction: draw families with
// per-level uniform size-pi(n) sets, then estimate hit fractions over fresh
// words for each family.
struct Thm33Summary {
    std::string pi_name;
    std::size_t depth = 0;
    std::uint64_t family_samples = 0;
    std::uint64_t word_samples = 0;
    std::uint64_t seed = 0;
    std::size_t k_max = 4;
    std::vector<std::uint64_t> family_seeds;
    std::vector<std::vector<double>> ge_fractions;  // [family][k-1]

    double mean_ge_fraction(std::size_t k) const {
        double total = 0;
        for (const auto& f : ge_fractions) total += f[k - 1];
        return ge_fractions.empty() ? 0.0 : total / static_cast<double>(ge_fractions.size());
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["pi"] = pi_name;
        j["depth"] = depth;
        j["family_samples"] = family_samples;
        j["word_samples"] = word_samples;
        j["seed"] = seed;
        j["family_seeds"] = family_seeds;
        j["ge_fractions"] = ge_fractions;
        auto means = nlohmann::json::array();
        for (std::size_t k = 1; k <= k_max; ++k) means.push_back(mean_ge_fraction(k));
        j["mean_ge_fractions"] = std::move(means);
        return j;
    }
};

inline Thm33Summary estimate_thm33(const PiBound& pi, std::size_t depth,
                                   std::uint64_t family_samples, std::uint64_t word_samples,
                                   std::uint64_t seed, std::size_t k_max = 4) {
    Thm33Summary summary;
    summary.pi_name = pi.name();
    summary.depth = depth;
    summary.family_samples = family_samples;
    summary.word_samples = word_samples;
    summary.seed = seed;
    summary.k_max = k_max;
    for (std::uint64_t f = 0; f < family_samples; ++f) {
        const std::uint64_t family_seed = derive_seed(seed, 1, f);
        const GuessingSequence seq = gen_random_family(pi, depth, family_seed);
        const HitStats stats = sample_hits(seq, depth, word_samples, derive_seed(seed, 2, f));
        summary.family_seeds.push_back(family_seed);
        summary.ge_fractions.push_back(stats.ge_fractions(k_max));
    }
    return summary;
}

}  // namespace guesslab
