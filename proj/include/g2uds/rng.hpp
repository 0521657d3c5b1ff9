#pragma once

// Deterministic seeded randomness stream. All sampling in the library goes
// through this type so identical seeds reproduce identical artifacts across
// platforms (mt19937_64 output is fully specified by the standard).

#include "g2uds/bigint.hpp"

#include <cstdint>
#include <random>

namespace g2uds {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform value in [0, bound) via rejection; bound > 0.
    Int below(const Int& bound) {
        std::size_t bits = msb(bound) + 1;
        std::size_t words = (bits + 63) / 64;
        for (;;) {
            Int x = 0;
            for (std::size_t i = 0; i < words; ++i) x = (x << 64) | gen_();
            x >>= (words * 64 - bits);
            if (x < bound) return x;
        }
    }

    std::uint64_t below_u64(std::uint64_t bound) { return static_cast<std::uint64_t>(below(Int(bound))); }

    bool coin() { return (gen_() & 1) != 0; }

    // Derive an independent child stream; used for per-round randomness.
    Rng fork() { return Rng(gen_() ^ 0x9e3779b97f4a7c15ull); }

  private:
    std::mt19937_64 gen_;
};

} // namespace g2uds
