#include "zkbid/bn254.hpp"

#include "zkbid/errors.hpp"

namespace zkbid::bn254 {

namespace {

// gamma[k] = xi^(k (p-1) / 6) for k in 0..5, the Frobenius twist factors
struct FrobCtx {
    Fq2 gamma[6];

    FrobCtx() {
        // (p - 1) / 6: p = 1 mod 6, exact division of limbs by 6
        Limbs e = Fq::P.modulus;
        e[0] -= 1;  // p odd, no borrow
        unsigned __int128 rem = 0;
        Limbs q{};
        for (int i = 3; i >= 0; --i) {
            unsigned __int128 cur = (rem << 64) | e[i];
            q[i] = uint64_t(cur / 6);
            rem = cur % 6;
        }
        Fq2 xi{Fq::from_u64(9), Fq::one()};
        Fq2 base = xi.pow(q);
        gamma[0] = Fq2::one();
        for (int k = 1; k < 6; ++k) gamma[k] = gamma[k - 1] * base;
    }
};

const FrobCtx& frob_ctx() {
    static const FrobCtx ctx;
    return ctx;
}

}  // namespace

std::optional<Fq2> Fq2::sqrt() const {
    if (is_zero()) return zero();
    if (c1.is_zero()) {
        if (auto r = c0.sqrt()) return Fq2{*r, Fq::zero()};
        if (auto r = (-c0).sqrt()) return Fq2{Fq::zero(), *r};
        return std::nullopt;
    }
    // complex method: (a + bu)^2 = (a^2 - b^2) + 2ab u with u^2 = -1
    Fq norm = c0.square() + c1.square();
    auto lambda = norm.sqrt();
    if (!lambda) return std::nullopt;
    Fq half = (Fq::one() + Fq::one()).inverse();
    auto a = ((c0 + *lambda) * half).sqrt();
    if (!a || a->is_zero()) a = ((c0 - *lambda) * half).sqrt();
    if (!a || a->is_zero()) return std::nullopt;
    Fq b = c1 * half * a->inverse();
    Fq2 cand{*a, b};
    if (cand.square() == *this) return cand;
    return std::nullopt;
}

Fq12 Fq12::frobenius() const {
    const auto& g = frob_ctx().gamma;
    Fq12 r;
    r.c0.c0 = c0.c0.conjugate();
    r.c0.c1 = c0.c1.conjugate() * g[2];
    r.c0.c2 = c0.c2.conjugate() * g[4];
    r.c1.c0 = c1.c0.conjugate() * g[1];
    r.c1.c1 = c1.c1.conjugate() * g[3];
    r.c1.c2 = c1.c2.conjugate() * g[5];
    return r;
}

Fq g1_b() { return Fq::from_u64(3); }

Fq2 g2_b() {
    static const Fq2 b = [] {
        Fq2 xi{Fq::from_u64(9), Fq::one()};
        return Fq2{Fq::from_u64(3), Fq::zero()} * xi.inverse();
    }();
    return b;
}

G1 g1_generator() { return {Fq::from_u64(1), Fq::from_u64(2), Fq::one()}; }

G2 g2_generator() {
    static const G2 g = [] {
        Fq2 x{Fq::from_limbs({0x46debd5cd992f6edull, 0x674322d4f75edaddull,
                              0x426a00665e5c4479ull, 0x1800deef121f1e76ull}),
              Fq::from_limbs({0x97e485b7aef312c2ull, 0xf1aa493335a9e712ull,
                              0x7260bfb731fb5d25ull, 0x198e9393920d483aull})};
        Fq2 y{Fq::from_limbs({0x4ce6cc0166fa7daaull, 0xe3d1e7690c43d37bull,
                              0x4aab71808dcb408full, 0x12c85ea5db8c6debull}),
              Fq::from_limbs({0x55acdadcd122975bull, 0xbc4b313370b38ef3ull,
                              0xec9e99ad690c3395ull, 0x090689d0585ff075ull})};
        G2 gen{x, y, Fq2::one()};
        if (!ec::on_curve(gen, g2_b())) throw ConfigError("bad g2 generator constants");
        return gen;
    }();
    return g;
}

bool g1_valid(const G1& p) { return ec::on_curve(p, g1_b()); }

bool g2_valid(const G2& p) {
    if (!ec::on_curve(p, g2_b())) return false;
    if (p.is_infinity()) return true;
    return ec::scalar_mul(p, Fr::P.modulus).is_infinity();
}

std::array<uint8_t, 33> g1_encode(const G1& p) {
    std::array<uint8_t, 33> out{};
    if (p.is_infinity()) return out;
    auto a = ec::to_affine(p);
    out[0] = a.y.is_odd() ? 0x03 : 0x02;
    auto xb = a.x.to_bytes();
    std::copy(xb.begin(), xb.end(), out.begin() + 1);
    return out;
}

std::optional<G1> g1_decode(const std::array<uint8_t, 33>& enc) {
    if (enc[0] == 0x00) {
        for (auto b : enc)
            if (b) return std::nullopt;
        return G1::infinity();
    }
    if (enc[0] != 0x02 && enc[0] != 0x03) return std::nullopt;
    std::array<uint8_t, 32> xb;
    std::copy(enc.begin() + 1, enc.end(), xb.begin());
    auto x = Fq::from_bytes(xb);
    if (!x) return std::nullopt;
    auto y = (x->square() * *x + g1_b()).sqrt();
    if (!y) return std::nullopt;
    if (y->is_odd() != (enc[0] == 0x03)) *y = -*y;
    return G1{*x, *y, Fq::one()};
}

std::array<uint8_t, 65> g2_encode(const G2& p) {
    std::array<uint8_t, 65> out{};
    if (p.is_infinity()) return out;
    auto a = ec::to_affine(p);
    out[0] = a.y.is_odd() ? 0x03 : 0x02;
    auto x0 = a.x.c0.to_bytes();
    auto x1 = a.x.c1.to_bytes();
    std::copy(x0.begin(), x0.end(), out.begin() + 1);
    std::copy(x1.begin(), x1.end(), out.begin() + 33);
    return out;
}

std::optional<G2> g2_decode(const std::array<uint8_t, 65>& enc) {
    if (enc[0] == 0x00) {
        for (auto b : enc)
            if (b) return std::nullopt;
        return G2::infinity();
    }
    if (enc[0] != 0x02 && enc[0] != 0x03) return std::nullopt;
    std::array<uint8_t, 32> b0, b1;
    std::copy(enc.begin() + 1, enc.begin() + 33, b0.begin());
    std::copy(enc.begin() + 33, enc.end(), b1.begin());
    auto x0 = Fq::from_bytes(b0);
    auto x1 = Fq::from_bytes(b1);
    if (!x0 || !x1) return std::nullopt;
    Fq2 x{*x0, *x1};
    auto y = (x.square() * x + g2_b()).sqrt();
    if (!y) return std::nullopt;
    if (y->is_odd() != (enc[0] == 0x03)) *y = -*y;
    G2 p{x, *y, Fq2::one()};
    if (!g2_valid(p)) return std::nullopt;
    return p;
}

}  // namespace zkbid::bn254
