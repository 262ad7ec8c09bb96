#pragma once

#include <vector>

#include "zkbid/ec.hpp"
#include "zkbid/fp.hpp"

namespace zkbid::bn254 {

struct BaseTag {
    static constexpr Limbs modulus = {0x3c208c16d87cfd47ull, 0x97816a916871ca8dull,
                                      0xb85045b68181585dull, 0x30644e72e131a029ull};
};
struct ScalarTag {
    static constexpr Limbs modulus = {0x43e1f593f0000001ull, 0x2833e84879b97091ull,
                                      0xb85045b68181585dull, 0x30644e72e131a029ull};
};

using Fq = Fp<BaseTag>;
using Fr = Fp<ScalarTag>;

// ------------------------------------------------------------------- Fq2
// Fq[u] / (u^2 + 1)

struct Fq2 {
    Fq c0, c1;

    static Fq2 zero() { return {Fq::zero(), Fq::zero()}; }
    static Fq2 one() { return {Fq::one(), Fq::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    bool operator==(const Fq2& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fq2& o) const { return !(*this == o); }

    Fq2 operator+(const Fq2& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Fq2 operator-(const Fq2& o) const { return {c0 - o.c0, c1 - o.c1}; }
    Fq2 operator-() const { return {-c0, -c1}; }

    Fq2 operator*(const Fq2& o) const {
        Fq a = c0 * o.c0;
        Fq b = c1 * o.c1;
        Fq t = (c0 + c1) * (o.c0 + o.c1);
        return {a - b, t - a - b};
    }
    Fq2& operator+=(const Fq2& o) { return *this = *this + o; }
    Fq2& operator-=(const Fq2& o) { return *this = *this - o; }
    Fq2& operator*=(const Fq2& o) { return *this = *this * o; }

    Fq2 square() const {
        Fq t = c0 * c1;
        return {(c0 + c1) * (c0 - c1), t + t};
    }
    Fq2 dbl() const { return {c0 + c0, c1 + c1}; }
    Fq2 conjugate() const { return {c0, -c1}; }

    Fq2 scale(const Fq& s) const { return {c0 * s, c1 * s}; }

    // * (9 + u)
    Fq2 mul_by_xi() const {
        Fq nine0 = c0.dbl().dbl().dbl() + c0;
        Fq nine1 = c1.dbl().dbl().dbl() + c1;
        return {nine0 - c1, nine1 + c0};
    }

    Fq2 inverse() const {
        Fq norm = c0.square() + c1.square();
        Fq ni = norm.inverse();
        return {c0 * ni, -(c1 * ni)};
    }

    template <class E>
    Fq2 pow(const E& exp) const {
        Fq2 acc = one();
        Fq2 base = *this;
        // LSB-first to keep E generic over limb containers
        for (size_t i = 0; i < exp.size(); ++i) {
            uint64_t w = exp[i];
            for (int b = 0; b < 64; ++b) {
                if ((w >> b) & 1) acc *= base;
                base = base.square();
            }
        }
        return acc;
    }

    // complex method; nullopt when not a square
    std::optional<Fq2> sqrt() const;

    bool is_odd() const {  // parity convention for compressed encoding
        if (!c0.is_zero()) return c0.is_odd();
        return c1.is_odd();
    }
};

// ------------------------------------------------------------------- Fq6
// Fq2[v] / (v^3 - xi), xi = 9 + u

struct Fq6 {
    Fq2 c0, c1, c2;

    static Fq6 zero() { return {Fq2::zero(), Fq2::zero(), Fq2::zero()}; }
    static Fq6 one() { return {Fq2::one(), Fq2::zero(), Fq2::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
    bool operator==(const Fq6& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }
    bool operator!=(const Fq6& o) const { return !(*this == o); }

    Fq6 operator+(const Fq6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Fq6 operator-(const Fq6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Fq6 operator-() const { return {-c0, -c1, -c2}; }

    Fq6 operator*(const Fq6& o) const {
        Fq2 v0 = c0 * o.c0;
        Fq2 v1 = c1 * o.c1;
        Fq2 v2 = c2 * o.c2;
        Fq2 t0 = ((c1 + c2) * (o.c1 + o.c2) - v1 - v2).mul_by_xi() + v0;
        Fq2 t1 = (c0 + c1) * (o.c0 + o.c1) - v0 - v1 + v2.mul_by_xi();
        Fq2 t2 = (c0 + c2) * (o.c0 + o.c2) - v0 - v2 + v1;
        return {t0, t1, t2};
    }
    Fq6& operator+=(const Fq6& o) { return *this = *this + o; }
    Fq6& operator-=(const Fq6& o) { return *this = *this - o; }
    Fq6& operator*=(const Fq6& o) { return *this = *this * o; }

    Fq6 square() const { return *this * *this; }

    // * v
    Fq6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }

    Fq6 inverse() const {
        Fq2 a = c0.square() - (c1 * c2).mul_by_xi();
        Fq2 b = c2.square().mul_by_xi() - c0 * c1;
        Fq2 c = c1.square() - c0 * c2;
        Fq2 f = (c1 * c + c2 * b).mul_by_xi() + c0 * a;
        Fq2 fi = f.inverse();
        return {a * fi, b * fi, c * fi};
    }
};

// ------------------------------------------------------------------ Fq12
// Fq6[w] / (w^2 - v)

struct Fq12 {
    Fq6 c0, c1;

    static Fq12 zero() { return {Fq6::zero(), Fq6::zero()}; }
    static Fq12 one() { return {Fq6::one(), Fq6::zero()}; }

    bool operator==(const Fq12& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fq12& o) const { return !(*this == o); }
    bool is_one() const { return *this == one(); }

    Fq12 operator*(const Fq12& o) const {
        Fq6 a = c0 * o.c0;
        Fq6 b = c1 * o.c1;
        Fq6 t = (c0 + c1) * (o.c0 + o.c1);
        return {a + b.mul_by_v(), t - a - b};
    }
    Fq12& operator*=(const Fq12& o) { return *this = *this * o; }

    Fq12 square() const {
        Fq6 t = c0 * c1;
        Fq6 s = (c0 + c1) * (c0 + c1.mul_by_v());
        return {s - t - t.mul_by_v(), t + t};
    }

    Fq12 conjugate() const { return {c0, -c1}; }

    Fq12 inverse() const {
        Fq6 norm = c0.square() - c1.square().mul_by_v();
        Fq6 ni = norm.inverse();
        return {c0 * ni, -(c1 * ni)};
    }

    template <class E>
    Fq12 pow(const E& exp) const {
        Fq12 acc = one();
        Fq12 base = *this;
        for (size_t i = 0; i < exp.size(); ++i) {
            uint64_t w = exp[i];
            for (int b = 0; b < 64; ++b) {
                if ((w >> b) & 1) acc *= base;
                base = base.square();
            }
        }
        return acc;
    }

    Fq12 frobenius() const;  // x -> x^p
};

// ------------------------------------------------------------------ groups

using G1 = ec::Point<Fq>;
using G2 = ec::Point<Fq2>;
using G1Affine = ec::Affine<Fq>;
using G2Affine = ec::Affine<Fq2>;

G1 g1_generator();
G2 g2_generator();
Fq g1_b();
Fq2 g2_b();

inline G1 g1_mul(const G1& p, const Fr& k) { return ec::scalar_mul(p, k.to_limbs()); }
inline G2 g2_mul(const G2& p, const Fr& k) { return ec::scalar_mul(p, k.to_limbs()); }

bool g1_valid(const G1& p);   // on curve (prime-order group, cofactor 1)
bool g2_valid(const G2& p);   // on twist and in the order-r subgroup

// G1: 33 bytes, G2: 65 bytes; leading 0x00 block encodes the identity
std::array<uint8_t, 33> g1_encode(const G1& p);
std::optional<G1> g1_decode(const std::array<uint8_t, 33>& enc);
std::array<uint8_t, 65> g2_encode(const G2& p);
std::optional<G2> g2_decode(const std::array<uint8_t, 65>& enc);

// ----------------------------------------------------------------- pairing

// optimal ate pairing; bilinear, non-degenerate on valid inputs
Fq12 pairing(const G1& p, const G2& q);

Fq12 miller_loop(const G1Affine& p, const G2Affine& q);
Fq12 final_exponentiation(const Fq12& f);

// true iff the product of pairings over all (G1, G2) pairs equals one;
// infinite entries contribute the identity
bool pairing_product_is_one(const std::vector<std::pair<G1, G2>>& pairs);

}  // namespace zkbid::bn254
