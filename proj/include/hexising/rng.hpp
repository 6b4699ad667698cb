// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace hexising {

// Stream splitting rule used across the project: every independent random
// stream is keyed as derive_seed(master, salt) with a documented salt.
// Salts in use:
//   instance coefficients: 0 = linear, 1 = quadratic, 2 = cubic
//   grid search:           salt = combo index
//   annealing proxy:       salt = read index
//   random baseline:       salt = 0

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    return splitmix64(master + 0x9e3779b97f4a7c15ULL * (salt + 1));
}

/// mt19937_64 wrapper with portable helpers.  The standard distributions are
/// implementation-defined, so all draws go through these fixed mappings.
class Prng {
  public:
    explicit Prng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n) via 128-bit multiply-shift.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Fair coin as a spin value, +1 or -1.
    int next_spin() { return (next_u64() >> 63) ? -1 : +1; }

  private:
    std::mt19937_64 eng_;
};

} // namespace hexising
