#pragma once

// Deterministic randomness for tests and scenario checks.  mt19937_64 with an
// explicit 53-bit mapping to doubles so the generated streams are bit-stable
// across standard libraries (uniform_real_distribution is not portable).

#include <cstdint>
#include <random>
#include <string_view>

namespace bck {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Uniform integer in [0, n).
    std::uint64_t index(std::uint64_t n) { return eng_() % n; }

    std::uint64_t raw() { return eng_(); }

    /// Stable per-purpose seed derivation (FNV-1a over the tag, mixed with
    /// the base seed) so independent checks get independent streams that do
    /// not depend on evaluation order.
    static std::uint64_t derive(std::uint64_t base, std::string_view tag) {
        std::uint64_t h = 1469598103934665603ull ^ base;
        for (char c : tag) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 33;
        return h;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace bck
