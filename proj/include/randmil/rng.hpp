#pragma once

#include <cstdint>

namespace randmil {

/// SplitMix64 finalizer (Steele, Lea, Flood / Vigna). Bijective on 64-bit
/// words; used both as the output function of the counter-based generator
/// and as the key-derivation hash for substreams.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

/// Counter-based random stream with pure key derivation.
///
/// Output i of a stream with key k is mix64(k + (i+1)*golden), i.e. the
/// classic SplitMix64 sequence. Substreams are derived by hashing a tag into
/// the key, so a (seed, path, purpose) triple addresses a statistically
/// independent stream without any sequential dependence between streams.
/// A fixed key yields a bit-identical sequence on every platform: the
/// generator uses only 64-bit integer arithmetic.
class RngStream {
public:
    RngStream() = default;
    explicit RngStream(std::uint64_t seed) : key_(mix64(seed + kGolden)) {}

    /// Pure derivation: child stream identified by (this stream, tag).
    /// Derivation order matters: derive(a).derive(b) != derive(b).derive(a).
    [[nodiscard]] RngStream derive(std::uint64_t tag) const {
        RngStream child;
        child.key_ = mix64(key_ ^ (mix64(tag + kGolden) + kGolden));
        return child;
    }

    [[nodiscard]] RngStream derive(std::uint64_t tag_a, std::uint64_t tag_b) const {
        return derive(tag_a).derive(tag_b);
    }

    /// i-th word of the stream, independent of any draws made so far.
    [[nodiscard]] std::uint64_t word_at(std::uint64_t i) const {
        return mix64(key_ + (i + 1) * kGolden);
    }

    std::uint64_t next_u64() { return word_at(counter_++); }

    /// Uniform draw strictly inside (0,1): a 53-bit mantissa offset by 1/2,
    /// so neither endpoint is ever returned.
    double next_uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw via the inverse CDF (Wichura's AS 241),
    /// the reproducible Gaussian method used throughout this library.
    double next_normal() { return inverse_normal_cdf(next_uniform01()); }

    /// Inverse of the standard normal CDF, |relative error| < 1e-15 on (0,1).
    static double inverse_normal_cdf(double p) noexcept;

    std::uint64_t key() const { return key_; }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace randmil
