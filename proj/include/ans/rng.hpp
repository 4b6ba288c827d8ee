#pragma once

#include <cmath>
#include <cstdint>

namespace ans::rng {

/// Philox4x32-10 counter-based generator (Salmon et al. bijection). Each call
/// maps a (key, counter) pair to four 32-bit words with no carried state, so
/// any sample can be regenerated from its absolute index alone. That is what
/// makes Wiener paths stable under left-extension of the time window.
struct Philox4x32 {
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    struct Block {
        std::uint32_t w[4];
    };

    static Block generate(std::uint64_t key, std::uint64_t ctr_lo, std::uint64_t ctr_hi) {
        std::uint32_t c0 = static_cast<std::uint32_t>(ctr_lo);
        std::uint32_t c1 = static_cast<std::uint32_t>(ctr_lo >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(ctr_hi);
        std::uint32_t c3 = static_cast<std::uint32_t>(ctr_hi >> 32);
        std::uint32_t k0 = static_cast<std::uint32_t>(key);
        std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
            std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
            std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1 ^ k0;
            std::uint32_t n1 = static_cast<std::uint32_t>(p1);
            std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3 ^ k1;
            std::uint32_t n3 = static_cast<std::uint32_t>(p0);
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return Block{{c0, c1, c2, c3}};
    }
};

/// Stream tags keep samples for different purposes statistically independent
/// under the same user seed.
enum class Stream : std::uint32_t {
    Wiener = 0x57494E52u,
    NoiseInit = 0x4E5A3052u,
    Field = 0x464C4452u,
    Cloud = 0x434C4452u,
};

struct GaussPair {
    double g0, g1;
};

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
    std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    // 53-bit mantissa, offset by half an ulp so the result lies strictly in (0,1)
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Two independent N(0,1) samples addressed by (seed, stream tag, index).
/// index may be negative (absolute step index of a two-sided time window).
inline GaussPair gaussian_pair(std::uint64_t seed, Stream tag, std::int64_t index) {
    std::uint64_t ctr_hi = static_cast<std::uint64_t>(static_cast<std::uint32_t>(tag));
    auto b = Philox4x32::generate(seed, static_cast<std::uint64_t>(index), ctr_hi);
    double u1 = to_unit(b.w[0], b.w[1]);
    double u2 = to_unit(b.w[2], b.w[3]);
    double r = std::sqrt(-2.0 * std::log(u1));
    double phi = 2.0 * M_PI * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

inline double gaussian(std::uint64_t seed, Stream tag, std::int64_t index) {
    return gaussian_pair(seed, tag, index).g0;
}

}  // namespace ans::rng
