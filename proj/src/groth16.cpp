#include "zkbid/groth16.hpp"

#include "zkbid/errors.hpp"
#include "zkbid/hashing.hpp"

namespace zkbid::snark {

using namespace bn254;

namespace {

constexpr char kPkMagic[4] = {'Z', 'K', 'P', 'K'};
constexpr char kVkMagic[4] = {'Z', 'K', 'V', 'K'};
constexpr uint16_t kVersion = 1;

Fr nonzero(Rng& rng) {
    for (;;) {
        Fr v = rng.field_element<Fr>();
        if (!(v == Fr::zero())) return v;
    }
}

void put_g1(ByteWriter& w, const G1Affine& p) { w.raw(g1_encode(ec::from_affine(p))); }
void put_g2(ByteWriter& w, const G2Affine& p) { w.raw(g2_encode(ec::from_affine(p))); }

bool get_g1(ByteReader& r, G1Affine& out) {
    auto p = g1_decode(r.fixed<33>());
    if (!r.ok() || !p) return false;
    out = ec::to_affine(*p);
    return true;
}

bool get_g2(ByteReader& r, G2Affine& out) {
    auto p = g2_decode(r.fixed<65>());
    if (!r.ok() || !p) return false;
    out = ec::to_affine(*p);
    return true;
}

template <class Put, class Vec>
void put_points(ByteWriter& w, const Vec& v, Put put) {
    w.u32(static_cast<uint32_t>(v.size()));
    for (const auto& p : v) put(w, p);
}

template <class Get, class Vec>
bool get_points(ByteReader& r, Vec& v, Get get) {
    uint32_t n = r.u32();
    if (!r.ok() || uint64_t(n) * 33 > r.remaining()) return false;
    v.resize(n);
    for (auto& p : v)
        if (!get(r, p)) return false;
    return true;
}

bool check_magic(ByteReader& r, const char m[4]) {
    auto got = r.fixed<4>();
    return r.ok() && std::memcmp(got.data(), m, 4) == 0 && r.u16() == kVersion && r.ok();
}

}  // namespace

Bytes ProvingKey::to_bytes() const {
    ByteWriter w;
    w.raw(reinterpret_cast<const uint8_t*>(kPkMagic), 4);
    w.u16(kVersion);
    w.raw(circuit_digest);
    w.u32(num_public);
    w.u32(domain_size);
    put_g1(w, alpha1);
    put_g1(w, beta1);
    put_g1(w, delta1);
    put_g2(w, beta2);
    put_g2(w, delta2);
    put_points(w, a_query, put_g1);
    put_points(w, b1_query, put_g1);
    put_points(w, b2_query, put_g2);
    put_points(w, l_query, put_g1);
    put_points(w, h_query, put_g1);
    return w.take();
}

std::optional<ProvingKey> ProvingKey::from_bytes(const Bytes& data) {
    ByteReader r(data);
    if (!check_magic(r, kPkMagic)) return std::nullopt;
    ProvingKey pk;
    pk.circuit_digest = r.fixed<32>();
    pk.num_public = r.u32();
    pk.domain_size = r.u32();
    bool ok = get_g1(r, pk.alpha1) && get_g1(r, pk.beta1) && get_g1(r, pk.delta1) &&
              get_g2(r, pk.beta2) && get_g2(r, pk.delta2) &&
              get_points(r, pk.a_query, [](ByteReader& rr, G1Affine& p) { return get_g1(rr, p); }) &&
              get_points(r, pk.b1_query, [](ByteReader& rr, G1Affine& p) { return get_g1(rr, p); }) &&
              get_points(r, pk.b2_query, [](ByteReader& rr, G2Affine& p) { return get_g2(rr, p); }) &&
              get_points(r, pk.l_query, [](ByteReader& rr, G1Affine& p) { return get_g1(rr, p); }) &&
              get_points(r, pk.h_query, [](ByteReader& rr, G1Affine& p) { return get_g1(rr, p); });
    if (!ok || !r.ok() || !r.at_end()) return std::nullopt;
    if (pk.a_query.size() != pk.b1_query.size() || pk.a_query.size() != pk.b2_query.size())
        return std::nullopt;
    if (pk.a_query.size() < size_t(pk.num_public) + 1) return std::nullopt;
    if (pk.l_query.size() != pk.a_query.size() - pk.num_public - 1) return std::nullopt;
    if (pk.domain_size == 0 || pk.h_query.size() != size_t(pk.domain_size) - 1) return std::nullopt;
    return pk;
}

Bytes VerifyingKey::to_bytes() const {
    ByteWriter w;
    w.raw(reinterpret_cast<const uint8_t*>(kVkMagic), 4);
    w.u16(kVersion);
    w.raw(circuit_digest);
    w.u32(num_public);
    put_g1(w, alpha1);
    put_g2(w, beta2);
    put_g2(w, gamma2);
    put_g2(w, delta2);
    put_points(w, ic, put_g1);
    return w.take();
}

std::optional<VerifyingKey> VerifyingKey::from_bytes(const Bytes& data) {
    ByteReader r(data);
    if (!check_magic(r, kVkMagic)) return std::nullopt;
    VerifyingKey vk;
    vk.circuit_digest = r.fixed<32>();
    vk.num_public = r.u32();
    bool ok = get_g1(r, vk.alpha1) && get_g2(r, vk.beta2) && get_g2(r, vk.gamma2) &&
              get_g2(r, vk.delta2) &&
              get_points(r, vk.ic, [](ByteReader& rr, G1Affine& p) { return get_g1(rr, p); });
    if (!ok || !r.ok() || !r.at_end()) return std::nullopt;
    if (vk.ic.size() != size_t(vk.num_public) + 1) return std::nullopt;
    return vk;
}

Bytes Groth16Proof::to_bytes() const {
    ByteWriter w;
    put_g1(w, a);
    put_g2(w, b);
    put_g1(w, c);
    return w.take();
}

std::optional<Groth16Proof> Groth16Proof::from_bytes(const Bytes& data) {
    if (data.size() != 131) return std::nullopt;
    ByteReader r(data);
    Groth16Proof p;
    if (!get_g1(r, p.a) || !get_g2(r, p.b) || !get_g1(r, p.c)) return std::nullopt;
    return p;
}

Keypair groth16_keygen(const R1CS& r1cs, Rng& rng) {
    QAP q = QAP::from_r1cs(r1cs);
    const size_t n_vars = q.num_vars;
    const size_t n_pub = q.num_public;
    const size_t m = q.domain.size;

    Fr alpha = nonzero(rng), beta = nonzero(rng), gamma = nonzero(rng), delta = nonzero(rng);
    Fr x;
    do {
        x = nonzero(rng);
    } while (q.domain.vanishing_at(x) == Fr::zero());
    auto ev = q.evaluate_at(x);
    Fr gamma_inv = gamma.inverse(), delta_inv = delta.inverse();

    G1FixedBase base1(g1_generator(), 8);
    G2FixedBase base2(g2_generator(), 6);

    Keypair kp;
    ProvingKey& pk = kp.pk;
    VerifyingKey& vk = kp.vk;
    pk.circuit_digest = vk.circuit_digest = r1cs.digest();
    pk.num_public = vk.num_public = static_cast<uint32_t>(n_pub);
    pk.domain_size = static_cast<uint32_t>(m);

    pk.alpha1 = ec::to_affine(base1.mul(alpha));
    pk.beta1 = ec::to_affine(base1.mul(beta));
    pk.delta1 = ec::to_affine(base1.mul(delta));
    pk.beta2 = ec::to_affine(base2.mul(beta));
    pk.delta2 = ec::to_affine(base2.mul(delta));
    vk.alpha1 = pk.alpha1;
    vk.beta2 = pk.beta2;
    vk.gamma2 = ec::to_affine(base2.mul(gamma));
    vk.delta2 = pk.delta2;

    pk.a_query = ec::batch_to_affine(batch_mul(base1, ev.a));
    pk.b1_query = ec::batch_to_affine(batch_mul(base1, ev.b));
    pk.b2_query = ec::batch_to_affine(batch_mul(base2, ev.b));

    std::vector<Fr> combined(n_vars);
    for (size_t i = 0; i < n_vars; ++i) combined[i] = beta * ev.a[i] + alpha * ev.b[i] + ev.c[i];
    std::vector<Fr> ic_scalars(n_pub + 1), l_scalars(n_vars - n_pub - 1);
    for (size_t i = 0; i <= n_pub; ++i) ic_scalars[i] = combined[i] * gamma_inv;
    for (size_t i = n_pub + 1; i < n_vars; ++i) l_scalars[i - n_pub - 1] = combined[i] * delta_inv;
    vk.ic = ec::batch_to_affine(batch_mul(base1, ic_scalars));
    pk.l_query = ec::batch_to_affine(batch_mul(base1, l_scalars));

    std::vector<Fr> h_scalars(m - 1);
    Fr t_shift = ev.t * delta_inv;
    Fr xi = Fr::one();
    for (size_t i = 0; i + 1 < m; ++i) {
        h_scalars[i] = xi * t_shift;
        xi = xi * x;
    }
    pk.h_query = ec::batch_to_affine(batch_mul(base1, h_scalars));
    return kp;
}

Groth16Proof groth16_prove(const ProvingKey& pk, const R1CS& r1cs,
                           const std::vector<Fr>& assignment, Rng& rng) {
    if (pk.circuit_digest != r1cs.digest())
        throw KeyMismatch("proving key belongs to a different circuit");
    if (assignment.size() != pk.a_query.size())
        throw UnsatisfiedWitness("assignment length does not match the circuit");
    if (auto row = r1cs.first_violated(assignment))
        throw UnsatisfiedWitness("assignment violates constraint " + std::to_string(*row));

    QAP q = QAP::from_r1cs(r1cs);
    auto division = q.divide(assignment);
    if (!division.exact) throw UnsatisfiedWitness("constraint polynomial fails to divide");

    Fr r = rng.field_element<Fr>(), s = rng.field_element<Fr>();
    G1 delta1 = ec::from_affine(pk.delta1);
    G2 delta2 = ec::from_affine(pk.delta2);

    G1 a_pt = ec::add(ec::from_affine(pk.alpha1),
                      ec::add(msm(pk.a_query, assignment), g1_mul(delta1, r)));
    G2 b_pt = ec::add(ec::from_affine(pk.beta2),
                      ec::add(msm(pk.b2_query, assignment), g2_mul(delta2, s)));
    G1 b1_pt = ec::add(ec::from_affine(pk.beta1),
                       ec::add(msm(pk.b1_query, assignment), g1_mul(delta1, s)));

    std::vector<Fr> wit(assignment.begin() + pk.num_public + 1, assignment.end());
    G1 c_pt = ec::add(msm(pk.l_query, wit), msm(pk.h_query, division.quotient));
    c_pt = ec::add(c_pt, g1_mul(a_pt, s));
    c_pt = ec::add(c_pt, g1_mul(b1_pt, r));
    c_pt = ec::add(c_pt, ec::neg(g1_mul(delta1, r * s)));

    Groth16Proof proof;
    proof.a = ec::to_affine(a_pt);
    proof.b = ec::to_affine(b_pt);
    proof.c = ec::to_affine(c_pt);
    return proof;
}

bool groth16_verify(const VerifyingKey& vk, const std::vector<Fr>& public_inputs,
                    const Groth16Proof& proof) {
    if (public_inputs.size() != vk.num_public) return false;
    if (vk.ic.size() != size_t(vk.num_public) + 1) return false;

    G1 a = ec::from_affine(proof.a);
    G2 b = ec::from_affine(proof.b);
    G1 c = ec::from_affine(proof.c);
    if (!g1_valid(a) || !g2_valid(b) || !g1_valid(c)) return false;
    if (a.is_infinity() || b.is_infinity()) return false;

    G1 vk_x = ec::from_affine(vk.ic[0]);
    for (size_t i = 0; i < public_inputs.size(); ++i)
        vk_x = ec::add(vk_x, g1_mul(ec::from_affine(vk.ic[i + 1]), public_inputs[i]));

    return pairing_product_is_one({{ec::neg(a), b},
                                   {ec::from_affine(vk.alpha1), ec::from_affine(vk.beta2)},
                                   {vk_x, ec::from_affine(vk.gamma2)},
                                   {c, ec::from_affine(vk.delta2)}});
}

}  // namespace zkbid::snark
