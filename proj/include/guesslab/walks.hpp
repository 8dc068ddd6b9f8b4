#pragma once

// Simple random walks on the integer lattice and the word-to-walk
// correspondence: a word drives a 1-D walk by one +-1 step per bit, and a
// 2-D product walk by routing even-indexed bits to the first axis and
// odd-indexed bits to the second. A word's length-n prefix lies in the
// strict central-binomial family exactly when the corresponding walk is
// back at the origin after n bits.
//
// simulate_recurrence runs the uniform nearest-neighbor walk (each of the
// 2d unit steps with probability 1/(2d)). For d = 2 this differs from the
// product walk by a lattice rotation; family membership is tied to the
// product walk, recurrence statistics to the nearest-neighbor walk.

#include <array>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "guesslab/bitword.hpp"
#include "guesslab/rng.hpp"
#include "guesslab/scalar.hpp"

namespace guesslab {

struct WalkPath {
    int dimension = 1;
    std::vector<std::array<std::int64_t, 2>> positions;  // S_0..S_N

    std::size_t steps() const { return positions.size() - 1; }

    bool at_origin(std::size_t n) const {
        return positions.at(n)[0] == 0 && positions.at(n)[1] == 0;
    }

    // Number of n in [1, N] with S_n = origin.
    std::size_t returns_to_origin() const {
        std::size_t count = 0;
        for (std::size_t n = 1; n < positions.size(); ++n)
            if (at_origin(n)) ++count;
        return count;
    }
};

inline WalkPath word_to_walk_1d(const BitWord& w) {
    WalkPath path;
    path.dimension = 1;
    path.positions.reserve(w.length() + 1);
    std::int64_t pos = 0;
    path.positions.push_back({0, 0});
    for (std::size_t i = 0; i < w.length(); ++i) {
        pos += w.bit(i) ? 1 : -1;
        path.positions.push_back({pos, 0});
    }
    return path;
}

inline WalkPath word_to_walk_2d(const BitWord& w) {
    WalkPath path;
    path.dimension = 2;
    path.positions.reserve(w.length() + 1);
    std::array<std::int64_t, 2> pos{0, 0};
    path.positions.push_back(pos);
    for (std::size_t i = 0; i < w.length(); ++i) {
        pos[i % 2] += w.bit(i) ? 1 : -1;
        path.positions.push_back(pos);
    }
    return path;
}

struct RecurrenceStats {
    int dimension = 1;
    std::uint64_t walks = 0;
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    double return_fraction = 0.0;
    double mean_returns = 0.0;
    std::vector<std::int64_t> first_return_steps;  // per walk; -1 if none

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["dimension"] = dimension;
        j["walks"] = walks;
        j["steps"] = steps;
        j["seed"] = seed;
        j["return_fraction"] = return_fraction;
        j["mean_returns"] = mean_returns;
        return j;
    }

    std::string times_csv() const {
        std::ostringstream out;
        out << "walk,first_return_step\n";
        for (std::size_t i = 0; i < first_return_steps.size(); ++i)
            out << i << ',' << first_return_steps[i] << '\n';
        return out.str();
    }
};

inline RecurrenceStats simulate_recurrence(int d, std::uint64_t steps, std::uint64_t walks,
                                           std::uint64_t seed) {
    if (d < 1 || d > 3) throw std::invalid_argument("simulate_recurrence: dimension must be 1..3");
    RecurrenceStats stats;
    stats.dimension = d;
    stats.walks = walks;
    stats.steps = steps;
    stats.seed = seed;
    stats.first_return_steps.assign(walks, -1);

    std::uint64_t returned = 0;
    std::uint64_t total_returns = 0;
    for (std::uint64_t i = 0; i < walks; ++i) {
        RandomStream rng = RandomStream::substream(seed, i);
        std::array<std::int64_t, 3> pos{0, 0, 0};
        bool first_seen = false;
        for (std::uint64_t step = 1; step <= steps; ++step) {
            const std::uint64_t move = d == 1 ? (rng.next_bit() ? 1 : 0)
                                              : rng.below(static_cast<std::uint64_t>(2 * d));
            const std::size_t axis = move >> 1;
            pos[axis] += (move & 1) ? 1 : -1;
            if (pos[0] == 0 && pos[1] == 0 && pos[2] == 0) {
                ++total_returns;
                if (!first_seen) {
                    first_seen = true;
                    ++returned;
                    stats.first_return_steps[i] = static_cast<std::int64_t>(step);
                }
            }
        }
    }
    stats.return_fraction = walks == 0 ? 0.0 : static_cast<double>(returned) / walks;
    stats.mean_returns = walks == 0 ? 0.0 : static_cast<double>(total_returns) / walks;
    return stats;
}

// C(n, n/2) / 2^n for even n, 0 for odd: the probability that the 1-D walk
// sits at the origin after n steps.
inline Rational exact_return_probability_1d(std::size_t n) {
    if (n % 2 != 0) return Rational(0);
    return Rational(binomial(n, n / 2), pow2(n));
}

}  // namespace guesslab
