#include <gmp.h>

#include "zkbid/bn254.hpp"
#include "zkbid/errors.hpp"

namespace zkbid::bn254 {

namespace {

// 6z + 2 for the curve parameter z = 4965661367192848881 (65 bits)
constexpr unsigned __int128 ate_loop_count =
    (unsigned __int128)6 * 4965661367192848881ull + 2;

struct PairingCtx {
    Fq2 twist_mul_q_x;   // xi^((p-1)/3)
    Fq2 twist_mul_q_y;   // xi^((p-1)/2)
    std::vector<uint64_t> hard_exp;  // (p^4 - p^2 + 1) / r

    PairingCtx() {
        Fq2 xi{Fq::from_u64(9), Fq::one()};
        auto div_exact = [](Limbs e, uint64_t d) {
            unsigned __int128 rem = 0;
            Limbs q{};
            for (int i = 3; i >= 0; --i) {
                unsigned __int128 cur = (rem << 64) | e[i];
                q[i] = uint64_t(cur / d);
                rem = cur % d;
            }
            if (rem) throw ConfigError("pairing constant division not exact");
            return q;
        };
        Limbs pm1 = Fq::P.modulus;
        pm1[0] -= 1;
        twist_mul_q_x = xi.pow(div_exact(pm1, 3));
        twist_mul_q_y = xi.pow(div_exact(pm1, 2));

        mpz_t p, r, h, chk;
        mpz_inits(p, r, h, chk, nullptr);
        mpz_import(p, 4, -1, 8, 0, 0, Fq::P.modulus.data());
        mpz_import(r, 4, -1, 8, 0, 0, Fr::P.modulus.data());
        mpz_pow_ui(h, p, 4);          // p^4
        mpz_pow_ui(chk, p, 2);        // p^2
        mpz_sub(h, h, chk);
        mpz_add_ui(h, h, 1);
        mpz_t quot;
        mpz_init(quot);
        mpz_fdiv_qr(quot, chk, h, r);
        if (mpz_sgn(chk) != 0) throw ConfigError("hard exponent not divisible by r");
        size_t nlimbs = (mpz_sizeinbase(quot, 2) + 63) / 64;
        hard_exp.assign(nlimbs, 0);
        size_t count = 0;
        mpz_export(hard_exp.data(), &count, -1, 8, 0, 0, quot);
        mpz_clears(p, r, h, chk, quot, nullptr);
    }
};

const PairingCtx& ctx() {
    static const PairingCtx c;
    return c;
}

struct AffineQ {
    Fq2 x, y;
};

// frobenius endomorphism mapped through the twist
AffineQ mul_by_q(const AffineQ& q) {
    return {q.x.conjugate() * ctx().twist_mul_q_x, q.y.conjugate() * ctx().twist_mul_q_y};
}

// line through the (possibly equal) twist points evaluated at p, as a sparse
// Fq12 element 1*a + w*b + w^3*c; the Fq2 factors killed by the final
// exponentiation are dropped
Fq12 sparse_line(const Fq2& a, const Fq2& b, const Fq2& c) {
    Fq12 l = Fq12::zero();
    l.c0.c0 = a;
    l.c1.c0 = b;
    l.c1.c1 = c;
    return l;
}

// tangent at t, evaluated at affine p; t <- 2t
Fq12 line_double(AffineQ& t, const G1Affine& p) {
    Fq2 lambda = t.x.square().scale(Fq::from_u64(3)) * t.y.dbl().inverse();
    Fq2 x3 = lambda.square() - t.x.dbl();
    Fq2 y3 = lambda * (t.x - x3) - t.y;
    Fq2 a{p.y, Fq::zero()};
    Fq2 b = -(lambda.scale(p.x));
    Fq2 c = lambda * t.x - t.y;
    t = {x3, y3};
    return sparse_line(a, b, c);
}

// chord through t and q, evaluated at affine p; t <- t + q
Fq12 line_add(AffineQ& t, const AffineQ& q, const G1Affine& p) {
    Fq2 lambda = (q.y - t.y) * (q.x - t.x).inverse();
    Fq2 x3 = lambda.square() - t.x - q.x;
    Fq2 y3 = lambda * (t.x - x3) - t.y;
    Fq2 a{p.y, Fq::zero()};
    Fq2 b = -(lambda.scale(p.x));
    Fq2 c = lambda * t.x - t.y;
    t = {x3, y3};
    return sparse_line(a, b, c);
}

}  // namespace

Fq12 miller_loop(const G1Affine& p, const G2Affine& q) {
    if (p.infinity || q.infinity) return Fq12::one();
    AffineQ base{q.x, q.y};
    AffineQ t = base;
    Fq12 f = Fq12::one();

    int top = 0;
    for (int i = 127; i >= 0; --i) {
        if ((ate_loop_count >> i) & 1) {
            top = i;
            break;
        }
    }
    for (int i = top - 1; i >= 0; --i) {
        f = f.square() * line_double(t, p);
        if ((ate_loop_count >> i) & 1) f *= line_add(t, base, p);
    }

    AffineQ q1 = mul_by_q(base);
    AffineQ q2 = mul_by_q(q1);
    q2.y = -q2.y;
    f *= line_add(t, q1, p);
    f *= line_add(t, q2, p);
    return f;
}

Fq12 final_exponentiation(const Fq12& f) {
    // easy part: f^((p^6 - 1)(p^2 + 1))
    Fq12 t = f.conjugate() * f.inverse();          // f^(p^6 - 1)
    t = t.frobenius().frobenius() * t;             // ^(p^2 + 1)
    // hard part, by plain exponentiation with the exact integer exponent
    return t.pow(ctx().hard_exp);
}

Fq12 pairing(const G1& p, const G2& q) {
    if (p.is_infinity() || q.is_infinity()) return Fq12::one();
    return final_exponentiation(miller_loop(ec::to_affine(p), ec::to_affine(q)));
}

bool pairing_product_is_one(const std::vector<std::pair<G1, G2>>& pairs) {
    Fq12 acc = Fq12::one();
    for (const auto& [p, q] : pairs) {
        if (p.is_infinity() || q.is_infinity()) continue;
        acc *= miller_loop(ec::to_affine(p), ec::to_affine(q));
    }
    return final_exponentiation(acc).is_one();
}

}  // namespace zkbid::bn254
