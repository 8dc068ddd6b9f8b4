#pragma once

// Deterministic, splittable pseudo-random streams.
//
// Every stochastic routine in the library derives an independent substream
// from (seed, index...) via the splitmix64 finalizer, so parallel and serial
// evaluation orders produce identical results and reruns are byte-identical.
// Standard-library distributions are deliberately avoided: their output is
// implementation-defined, which would break cross-platform reproducibility.

#include <cstdint>
#include <stdexcept>

#include "guesslab/scalar.hpp"

namespace guesslab {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace detail

// Collapses (seed, a, b) into a single substream seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = detail::mix64(seed + detail::kGolden);
    h = detail::mix64(h ^ (a + detail::kGolden));
    h = detail::mix64(h ^ (b + detail::kGolden));
    return h;
}

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : state_(detail::mix64(seed + detail::kGolden)) {}

    static RandomStream substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
        return RandomStream(derive_seed(seed, a, b));
    }

    std::uint64_t next_u64() {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    // One fair bit, drawn from a 64-bit buffer.
    bool next_bit() {
        if (bits_left_ == 0) {
            bit_buffer_ = next_u64();
            bits_left_ = 64;
        }
        bool b = (bit_buffer_ & 1u) != 0;
        bit_buffer_ >>= 1;
        --bits_left_;
        return b;
    }

    // Unbiased uniform draw from [0, bound) by threshold rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("RandomStream::below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform draw from [0, 2^nbits).
    BigInt bits(unsigned nbits) {
        BigInt value = 0;
        unsigned produced = 0;
        while (produced + 64 <= nbits) {
            value <<= 64;
            value |= BigInt(next_u64());
            produced += 64;
        }
        if (produced < nbits) {
            const unsigned rest = nbits - produced;
            value <<= rest;
            value |= BigInt(next_u64() >> (64 - rest));
        }
        return value;
    }

    // Unbiased uniform draw from [0, bound) for arbitrary-precision bounds.
    BigInt below_big(const BigInt& bound) {
        if (bound <= 0) throw std::invalid_argument("RandomStream::below_big: bound must be positive");
        if (bound <= (std::numeric_limits<std::uint64_t>::max)()) {
            return BigInt(below(bound.convert_to<std::uint64_t>()));
        }
        const unsigned width = static_cast<unsigned>(boost::multiprecision::msb(bound)) + 1;
        for (;;) {
            BigInt candidate = bits(width);
            if (candidate < bound) return candidate;
        }
    }

  private:
    std::uint64_t state_;
    std::uint64_t bit_buffer_ = 0;
    int bits_left_ = 0;
};

}  // namespace guesslab
