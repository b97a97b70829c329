#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace alohacorr {

// Deterministic stream addressing: (master_seed, replication_index) selects
// a replication; labelled sub-streams inside it never share state, so any
// traversal or worker schedule reproduces the same draws bit for bit.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t replication_index = 0;
};

enum class StreamLabel : std::uint32_t {
    positions = 1,
    indicators = 2,
    fading = 3,
    link_fading = 4,
    bootstrap = 5,
    generic = 6,
};

namespace rng {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

// Philox-4x32-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3", SC 2011). Counter layout here:
//   c0 = block sequence number, c1/c2 = lane words, c3 = replication index.
struct Philox4x32 {
    static constexpr std::uint32_t kMult0 = 0xD2511F53u;
    static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t product0 = std::uint64_t(kMult0) * ctr[0];
            const std::uint64_t product1 = std::uint64_t(kMult1) * ctr[2];
            ctr = {
                static_cast<std::uint32_t>(product1 >> 32) ^ ctr[1] ^ key[0],
                static_cast<std::uint32_t>(product1),
                static_cast<std::uint32_t>(product0 >> 32) ^ ctr[3] ^ key[1],
                static_cast<std::uint32_t>(product0),
            };
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }
};

inline double log_factorial(std::uint64_t k) {
    static constexpr std::array<double, 10> table = {
        0.0,
        0.0,
        0.69314718055994530942,   // ln 2!
        1.79175946922805500081,   // ln 3!
        3.17805383034794561965,
        4.78749174278204599425,
        6.57925121201010099506,
        8.52516136106541430017,
        10.60460290274525022842,
        12.80182748008146961121,  // ln 9!
    };
    if (k < table.size()) return table[k];
    // Stirling series; below 1e-12 absolute error for k >= 10.
    const double x = static_cast<double>(k);
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    return (x + 0.5) * std::log(x) - x + 0.91893853320467274178 +
           inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
}

}  // namespace rng

// Sequential view of one Philox sub-stream plus the samplers the simulator
// needs. Streams are cheap to construct; make one per addressable object
// (replication, point, slot, receiver) instead of sharing.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, StreamLabel label, std::uint64_t replication,
                 std::uint32_t lane_a = 0, std::uint32_t lane_b = 0) {
        std::uint64_t key64 = rng::mix64(
            master_seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(label) + 1)));
        if (replication > 0xFFFFFFFFULL) {
            key64 = rng::mix64(key64 ^ (replication >> 32));
        }
        key_ = {static_cast<std::uint32_t>(key64), static_cast<std::uint32_t>(key64 >> 32)};
        counter_ = {0, lane_b, lane_a, static_cast<std::uint32_t>(replication)};
    }

    RandomStream(const SeedSpec& seed, StreamLabel label, std::uint32_t lane_a = 0,
                 std::uint32_t lane_b = 0)
        : RandomStream(seed.master_seed, label, seed.replication_index, lane_a, lane_b) {}

    std::uint64_t next_u64() {
        if (word_index_ >= 4) {
            buffer_ = rng::Philox4x32::block(counter_, key_);
            ++counter_[0];
            word_index_ = 0;
        }
        const std::uint64_t hi = buffer_[word_index_];
        const std::uint64_t lo = buffer_[word_index_ + 1];
        word_index_ += 2;
        return (hi << 32) | lo;
    }

    // uniform on [0, 1), 53-bit resolution
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform on (0, 1]; safe under log
    double next_unit_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    double next_exponential() { return -std::log(next_unit_open()); }

    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double x, y, s;
        do {
            x = 2.0 * next_double() - 1.0;
            y = 2.0 * next_double() - 1.0;
            s = x * x + y * y;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = y * f;
        has_spare_ = true;
        return x * f;
    }

    // Gamma(shape, scale 1) via Marsaglia & Tsang (2000); the shape < 1 case
    // uses the standard boosting identity.
    double next_gamma(double shape) {
        if (!(shape > 0.0)) {
            throw std::invalid_argument("gamma shape must be > 0");
        }
        if (shape < 1.0) {
            return next_gamma(shape + 1.0) * std::pow(next_unit_open(), 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = next_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_unit_open();
            if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // Poisson(mean): exponential-gap counting for small means, Hoermann's
    // PTRS transformed rejection for mean >= 10.
    std::uint64_t next_poisson(double mean) {
        if (!(mean >= 0.0)) {
            throw std::invalid_argument("poisson mean must be >= 0");
        }
        if (mean == 0.0) return 0;
        if (mean < 10.0) {
            std::uint64_t count = 0;
            double sum = next_exponential();
            while (sum <= mean) {
                ++count;
                sum += next_exponential();
            }
            return count;
        }
        const double slam = std::sqrt(mean);
        const double loglam = std::log(mean);
        const double b = 0.931 + 2.53 * slam;
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            const double u = next_double() - 0.5;
            const double v = next_double();
            const double us = 0.5 - std::abs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            const auto k = static_cast<std::uint64_t>(kf);
            if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
                kf * loglam - mean - rng::log_factorial(k)) {
                return k;
            }
        }
    }

private:
    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> counter_{};
    std::array<std::uint32_t, 4> buffer_{};
    int word_index_ = 4;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace alohacorr
