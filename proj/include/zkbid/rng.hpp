#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "zkbid/secp256k1.hpp"

namespace zkbid {

// xoshiro256** seeded through splitmix64. Hand-rolled so that seeded streams
// are identical across platforms and standard-library versions; std::
// distributions make no such guarantee.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& s : s_) {
            x += 0x9e3779b97f4a7c15ull;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            s = z ^ (z >> 31);
        }
    }

    static Rng from_entropy() {
        std::random_device rd;
        uint64_t seed = (uint64_t(rd()) << 32) ^ rd();
        Rng r(seed);
        for (int i = 0; i < 4; ++i) r.s_[i] ^= (uint64_t(rd()) << 32) ^ rd();
        return r;
    }

    uint64_t u64() {
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, bound) by rejection; bound > 0
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = u64();
            if (r >= threshold) return r % bound;
        }
    }

    void fill(uint8_t* p, size_t n) {
        while (n >= 8) {
            uint64_t v = u64();
            for (int i = 0; i < 8; ++i) p[i] = uint8_t(v >> (8 * i));
            p += 8;
            n -= 8;
        }
        if (n) {
            uint64_t v = u64();
            for (size_t i = 0; i < n; ++i) p[i] = uint8_t(v >> (8 * i));
        }
    }

    template <size_t N>
    std::array<uint8_t, N> bytes() {
        std::array<uint8_t, N> out;
        fill(out.data(), N);
        return out;
    }

    double uniform01() { return double(u64() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * M_PI * u2);
    }

    // uniform nonzero scalar of the account group
    Scalar scalar() {
        auto wide = bytes<64>();
        Scalar s = Scalar::from_bytes_wide(wide);
        return s.is_zero() ? Scalar::one() : s;
    }

    template <class FieldT>
    FieldT field_element() {
        auto wide = bytes<64>();
        return FieldT::from_bytes_wide(wide);
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace zkbid
