#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "zkbid/bytes.hpp"

namespace zkbid {

using Limbs = std::array<uint64_t, 4>;  // little-endian

namespace detail {

constexpr bool geq(const Limbs& a, const Limbs& b) {
    for (int i = 3; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return true;
}

// returns carry-out
constexpr uint64_t add_limbs(Limbs& a, const Limbs& b) {
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        carry += (unsigned __int128)a[i] + b[i];
        a[i] = uint64_t(carry);
        carry >>= 64;
    }
    return uint64_t(carry);
}

// returns borrow-out
constexpr uint64_t sub_limbs(Limbs& a, const Limbs& b) {
    unsigned __int128 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 d = (unsigned __int128)a[i] - b[i] - borrow;
        a[i] = uint64_t(d);
        borrow = (d >> 64) & 1;
    }
    return uint64_t(borrow);
}

constexpr bool is_zero(const Limbs& a) { return !(a[0] | a[1] | a[2] | a[3]); }

// -m^{-1} mod 2^64 by Newton iteration (m odd)
constexpr uint64_t mont_inv64(uint64_t m) {
    uint64_t inv = 1;
    for (int i = 0; i < 6; ++i) inv *= 2 - m * inv;
    return 0 - inv;
}

struct MontParams {
    Limbs modulus;
    Limbs r1;        // 2^256 mod m  (montgomery form of 1)
    Limbs r2;        // 2^512 mod m
    uint64_t n0;     // -m^{-1} mod 2^64
    Limbs m_minus_2; // exponent for Fermat inversion
};

constexpr MontParams make_mont_params(const Limbs& m) {
    MontParams p{};
    p.modulus = m;
    p.n0 = mont_inv64(m[0]);

    // 2^256 mod m: start from 2^255 fit trick; build by doubling 1, 256 times.
    Limbs x{1, 0, 0, 0};
    for (int i = 0; i < 512; ++i) {
        uint64_t carry = add_limbs(x, x);
        if (carry || geq(x, m)) sub_limbs(x, m);
        if (i == 255) p.r1 = x;
    }
    p.r2 = x;

    Limbs e = m;
    Limbs two{2, 0, 0, 0};
    sub_limbs(e, two);
    p.m_minus_2 = e;
    return p;
}

// CIOS Montgomery multiplication: returns a*b*2^{-256} mod m.
inline Limbs mont_mul(const Limbs& a, const Limbs& b, const Limbs& m, uint64_t n0) {
    uint64_t t[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 carry = 0;
        for (int j = 0; j < 4; ++j) {
            carry += (unsigned __int128)a[i] * b[j] + t[j];
            t[j] = uint64_t(carry);
            carry >>= 64;
        }
        carry += t[4];
        t[4] = uint64_t(carry);
        t[5] = uint64_t(carry >> 64);

        uint64_t q = t[0] * n0;
        carry = (unsigned __int128)q * m[0] + t[0];
        carry >>= 64;
        for (int j = 1; j < 4; ++j) {
            carry += (unsigned __int128)q * m[j] + t[j];
            t[j - 1] = uint64_t(carry);
            carry >>= 64;
        }
        carry += t[4];
        t[3] = uint64_t(carry);
        t[4] = t[5] + uint64_t(carry >> 64);
    }
    Limbs r{t[0], t[1], t[2], t[3]};
    if (t[4] || geq(r, m)) sub_limbs(r, m);
    return r;
}

}  // namespace detail

// Prime-field element in Montgomery form. Tag supplies the modulus; all
// derived constants are computed at compile time.
template <class Tag>
class Fp {
public:
    static constexpr detail::MontParams P = detail::make_mont_params(Tag::modulus);

    constexpr Fp() : v_{0, 0, 0, 0} {}

    static Fp zero() { return Fp(); }
    static Fp one() {
        Fp r;
        r.v_ = P.r1;
        return r;
    }

    static Fp from_u64(uint64_t x) {
        Fp r;
        r.v_ = detail::mont_mul({x, 0, 0, 0}, P.r2, P.modulus, P.n0);
        return r;
    }

    // value must already be reduced mod m
    static Fp from_limbs(const Limbs& x) {
        Fp r;
        r.v_ = detail::mont_mul(x, P.r2, P.modulus, P.n0);
        return r;
    }

    static std::optional<Fp> from_bytes(const std::array<uint8_t, 32>& be) {
        Limbs x{};
        for (int i = 0; i < 4; ++i) {
            uint64_t w = 0;
            for (int j = 0; j < 8; ++j) w = w << 8 | be[8 * i + j];
            x[3 - i] = w;
        }
        if (detail::geq(x, P.modulus)) return std::nullopt;
        return from_limbs(x);
    }

    // reduces an arbitrary 64-byte big-endian integer mod m
    static Fp from_bytes_wide(const std::array<uint8_t, 64>& be) {
        Limbs hi{}, lo{};
        for (int i = 0; i < 4; ++i) {
            uint64_t w = 0;
            for (int j = 0; j < 8; ++j) w = w << 8 | be[8 * i + j];
            hi[3 - i] = w;
        }
        for (int i = 0; i < 4; ++i) {
            uint64_t w = 0;
            for (int j = 0; j < 8; ++j) w = w << 8 | be[32 + 8 * i + j];
            lo[3 - i] = w;
        }
        // value = hi*2^256 + lo; mont form needed is hi*R^2 + lo*R
        Fp h;
        h.v_ = detail::mont_mul(hi, P.r2, P.modulus, P.n0);    // hi*R
        h.v_ = detail::mont_mul(h.v_, P.r2, P.modulus, P.n0);  // hi*R^2
        Fp l;
        l.v_ = detail::mont_mul(lo, P.r2, P.modulus, P.n0);    // lo*R
        return h + l;
    }

    std::array<uint8_t, 32> to_bytes() const {
        Limbs n = detail::mont_mul(v_, {1, 0, 0, 0}, P.modulus, P.n0);
        std::array<uint8_t, 32> out;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 8; ++j) out[8 * i + j] = uint8_t(n[3 - i] >> (8 * (7 - j)));
        return out;
    }

    Limbs to_limbs() const { return detail::mont_mul(v_, {1, 0, 0, 0}, P.modulus, P.n0); }

    uint64_t to_u64() const { return to_limbs()[0]; }

    bool is_zero() const { return detail::is_zero(v_); }
    bool operator==(const Fp& o) const { return v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(v_ == o.v_); }

    Fp operator+(const Fp& o) const {
        Fp r = *this;
        uint64_t carry = detail::add_limbs(r.v_, o.v_);
        if (carry || detail::geq(r.v_, P.modulus)) detail::sub_limbs(r.v_, P.modulus);
        return r;
    }
    Fp operator-(const Fp& o) const {
        Fp r = *this;
        if (detail::sub_limbs(r.v_, o.v_)) detail::add_limbs(r.v_, P.modulus);
        return r;
    }
    Fp operator-() const {
        if (is_zero()) return *this;
        Fp r;
        r.v_ = P.modulus;
        detail::sub_limbs(r.v_, v_);
        return r;
    }
    Fp operator*(const Fp& o) const {
        Fp r;
        r.v_ = detail::mont_mul(v_, o.v_, P.modulus, P.n0);
        return r;
    }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    Fp square() const { return *this * *this; }

    Fp dbl() const { return *this + *this; }

    template <size_t N>
    Fp pow(const std::array<uint64_t, N>& exp) const {
        Fp acc = one();
        bool started = false;
        for (int i = int(N) - 1; i >= 0; --i) {
            for (int b = 63; b >= 0; --b) {
                if (started) acc = acc.square();
                if ((exp[i] >> b) & 1) {
                    acc = acc * *this;
                    started = true;
                }
            }
        }
        return started ? acc : one();
    }

    Fp pow(const std::vector<uint64_t>& exp) const {
        Fp acc = one();
        for (int i = int(exp.size()) - 1; i >= 0; --i) {
            for (int b = 63; b >= 0; --b) {
                acc = acc.square();
                if ((exp[i] >> b) & 1) acc = acc * *this;
            }
        }
        return acc;
    }

    Fp inverse() const { return pow(P.m_minus_2); }

    // valid when m % 4 == 3; returns nullopt if not a square
    std::optional<Fp> sqrt() const {
        Limbs e = P.modulus;
        Limbs one_l{1, 0, 0, 0};
        detail::add_limbs(e, one_l);  // m+1; m < 2^256-1 so no overflow for our moduli
        // shift right by 2
        for (int i = 0; i < 4; ++i) {
            e[i] >>= 2;
            if (i < 3) e[i] |= e[i + 1] << 62;
        }
        Fp r = pow(e);
        if (r * r == *this) return r;
        return std::nullopt;
    }

    bool is_odd() const { return to_limbs()[0] & 1; }

    // raw montgomery limbs (for hashing/serialization use to_bytes instead)
    const Limbs& raw() const { return v_; }

private:
    Limbs v_;
};

template <class Tag>
constexpr detail::MontParams Fp<Tag>::P;

}  // namespace zkbid
