#include "zkbid/r1cs.hpp"

#include "zkbid/hashing.hpp"

namespace zkbid::snark {

Fr eval_lc(const LinComb& lc, const std::vector<Fr>& z) {
    Fr acc = Fr::zero();
    for (const auto& t : lc) acc = acc + t.coeff * z[t.var];
    return acc;
}

std::optional<size_t> R1CS::first_violated(const std::vector<Fr>& z) const {
    if (z.size() != num_vars() || !(z[0] == Fr::one())) return constraints.size();
    for (size_t i = 0; i < constraints.size(); ++i) {
        const auto& c = constraints[i];
        if (!(eval_lc(c.a, z) * eval_lc(c.b, z) == eval_lc(c.c, z))) return i;
    }
    return std::nullopt;
}

bool R1CS::satisfied(const std::vector<Fr>& z) const { return !first_violated(z).has_value(); }

static void write_lc(ByteWriter& w, const LinComb& lc) {
    w.u32(static_cast<uint32_t>(lc.size()));
    for (const auto& t : lc) {
        w.u32(t.var);
        w.raw(t.coeff.to_bytes().data(), 32);
    }
}

Digest32 R1CS::digest() const {
    ByteWriter w;
    w.ascii("r1cs/v1");
    w.u32(static_cast<uint32_t>(num_public));
    w.u32(static_cast<uint32_t>(num_witness));
    w.u32(static_cast<uint32_t>(constraints.size()));
    for (const auto& c : constraints) {
        write_lc(w, c.a);
        write_lc(w, c.b);
        write_lc(w, c.c);
    }
    return zkbid::digest(w.bytes());
}

Fr fr_from_i64(int64_t v) {
    if (v >= 0) return Fr::from_u64(static_cast<uint64_t>(v));
    return Fr::zero() - Fr::from_u64(static_cast<uint64_t>(-v));
}

R1CS toy_circuit() {
    R1CS r;
    r.num_public = 1;   // out
    r.num_witness = 3;  // x, t1, t2
    const uint32_t one = 0, out = 1, x = 2, t1 = 3, t2 = 4;
    auto fr = [](int64_t v) { return fr_from_i64(v); };
    // x * x = t1
    r.constraints.push_back({{{x, fr(1)}}, {{x, fr(1)}}, {{t1, fr(1)}}});
    // t1 * x = t2
    r.constraints.push_back({{{t1, fr(1)}}, {{x, fr(1)}}, {{t2, fr(1)}}});
    // (t2 + x + 5) * 1 = out
    r.constraints.push_back({{{t2, fr(1)}, {x, fr(1)}, {one, fr(5)}}, {{one, fr(1)}}, {{out, fr(1)}}});
    return r;
}

std::vector<Fr> toy_assignment(int64_t x) {
    std::vector<Fr> z(5);
    z[0] = Fr::one();
    z[2] = fr_from_i64(x);
    z[3] = z[2] * z[2];
    z[4] = z[3] * z[2];
    z[1] = z[4] + z[2] + fr_from_i64(5);
    return z;
}

}  // namespace zkbid::snark
