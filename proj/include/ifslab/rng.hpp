#pragma once

#include <cstdint>
#include <span>

namespace ifslab {

/// SplitMix64 finalizer. Used both as a generator step and as a stateless
/// hash for counter-based streams, so that symbol n of a random stream is a
/// pure function of (seed, n).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the i-th independent substream of a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(mix64(master) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

/// Uniform double in [0,1) from the top 53 bits.
constexpr double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() noexcept { return to_unit(next()); }

private:
    std::uint64_t state_;
};

/// Inverse-CDF draw of a 0-based category. Weights need not be normalized.
inline int draw_category(std::span<const double> weights, double u) noexcept {
    double total = 0.0;
    for (double w : weights) total += w;
    double target = u * total;
    double acc = 0.0;
    int last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        last_positive = static_cast<int>(i);
        acc += weights[i];
        if (target < acc) return static_cast<int>(i);
    }
    return last_positive;
}

}  // namespace ifslab
