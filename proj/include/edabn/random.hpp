#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace edabn {

/// Finalizer of the SplitMix64 generator; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Combine a seed with one path word. Injective in `word` for a fixed seed,
/// so distinct draw sites get distinct streams.
inline std::uint64_t combine_seed(std::uint64_t seed, std::uint64_t word) {
    return mix64(seed + 0x9e3779b97f4a7c15ULL * (word + 1));
}

/// Fold a label path into a seed: derive_seed(s, {a, b}) != derive_seed(s, {b, a}).
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    for (std::uint64_t word : path) seed = combine_seed(seed, word);
    return seed;
}

/// Small deterministic PRNG (SplitMix64 stream). Every stochastic operation in
/// the library owns one of these, derived from an explicit seed, so results
/// never depend on global state or scheduling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits. Never returns 1.0, so the
    /// strict comparison `p > u` fires always for p = 1 and never for p = 0.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::uint64_t state_;
};

inline Rng derive_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    return Rng(derive_seed(seed, path));
}

/// Draw-site labels. Each stochastic site mixes one of these into its seed so
/// streams at different sites are independent even within one generation.
namespace site {
inline constexpr std::uint64_t init_cells = 0x10;
inline constexpr std::uint64_t init_repair = 0x11;
inline constexpr std::uint64_t offspring_cells = 0x20;
inline constexpr std::uint64_t offspring_repair = 0x21;
inline constexpr std::uint64_t mutation = 0x30;
inline constexpr std::uint64_t mutation_repair = 0x31;
inline constexpr std::uint64_t dataset = 0x40;
inline constexpr std::uint64_t child_seed = 0x50;
}  // namespace site

}  // namespace edabn
