#include "zkbid/ntt.hpp"

#include "zkbid/errors.hpp"

namespace zkbid::bn254 {

namespace {

constexpr size_t kTwoAdicity = 28;

// 5^((r-1)/2^28), order exactly 2^28
Fr two_adic_root() {
    static const Fr root = [] {
        Fr r = Fr::from_limbs({0x9bd61b6e725b19f0ull, 0x402d111e41112ed4ull,
                               0x00e0a7eb8ef62abcull, 0x2a3c09f0a58a7e85ull});
        Fr t = r;
        for (size_t i = 0; i < kTwoAdicity - 1; ++i) t = t.square();
        if (t == Fr::one()) throw ConfigError("two-adic root has too small an order");
        if (t.square() != Fr::one()) throw ConfigError("two-adic root has wrong order");
        return r;
    }();
    return root;
}

}  // namespace

EvalDomain EvalDomain::of_min_size(size_t n) {
    size_t size = 1;
    size_t log = 0;
    while (size < n) {
        size <<= 1;
        ++log;
    }
    if (log > kTwoAdicity) throw ConfigError("domain exceeds the two-adic subgroup");
    EvalDomain d;
    d.size = size;
    d.omega = two_adic_root();
    for (size_t i = log; i < kTwoAdicity; ++i) d.omega = d.omega.square();
    d.omega_inv = d.omega.inverse();
    d.size_inv = Fr::from_u64(uint64_t(size)).inverse();
    d.coset_gen = Fr::from_u64(5);
    d.coset_gen_inv = d.coset_gen.inverse();
    return d;
}

std::vector<Fr> EvalDomain::elements() const {
    std::vector<Fr> out(size);
    Fr cur = Fr::one();
    for (size_t i = 0; i < size; ++i) {
        out[i] = cur;
        cur *= omega;
    }
    return out;
}

Fr EvalDomain::vanishing_at(const Fr& x) const {
    std::array<uint64_t, 1> e{uint64_t(size)};
    return x.pow(e) - Fr::one();
}

namespace {

void transform(std::vector<Fr>& a, const Fr& root) {
    const size_t n = a.size();
    if (n <= 1) return;
    // bit reversal
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // iterative butterflies; the stage twiddles are precomputed so the inner
    // loops can run in parallel
    std::vector<Fr> twiddle(n / 2);
    for (size_t len = 2; len <= n; len <<= 1) {
        Fr w = root;
        for (size_t l = len; l < n; l <<= 1) w = w.square();
        twiddle[0] = Fr::one();
        for (size_t k = 1; k < len / 2; ++k) twiddle[k] = twiddle[k - 1] * w;
        const size_t half = len / 2;
#pragma omp parallel for schedule(static) if (n >= 4096)
        for (size_t i = 0; i < n; i += len) {
            for (size_t k = 0; k < half; ++k) {
                Fr u = a[i + k];
                Fr v = a[i + k + half] * twiddle[k];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

}  // namespace

void ntt(std::vector<Fr>& a, const EvalDomain& d) {
    if (a.size() != d.size) throw ConfigError("ntt size mismatch");
    transform(a, d.omega);
}

void intt(std::vector<Fr>& a, const EvalDomain& d) {
    if (a.size() != d.size) throw ConfigError("intt size mismatch");
    transform(a, d.omega_inv);
    for (auto& x : a) x *= d.size_inv;
}

void coset_ntt(std::vector<Fr>& a, const EvalDomain& d) {
    Fr shift = Fr::one();
    for (auto& x : a) {
        x *= shift;
        shift *= d.coset_gen;
    }
    ntt(a, d);
}

void coset_intt(std::vector<Fr>& a, const EvalDomain& d) {
    intt(a, d);
    Fr shift = Fr::one();
    for (auto& x : a) {
        x *= shift;
        shift *= d.coset_gen_inv;
    }
}

std::vector<Fr> dft_reference(const std::vector<Fr>& a, const EvalDomain& d) {
    std::vector<Fr> out(a.size(), Fr::zero());
    Fr xi = Fr::one();
    for (size_t i = 0; i < a.size(); ++i) {
        out[i] = poly_eval(a, xi);
        xi *= d.omega;
    }
    return out;
}

Fr poly_eval(const std::vector<Fr>& coeffs, const Fr& x) {
    Fr acc = Fr::zero();
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

}  // namespace zkbid::bn254
