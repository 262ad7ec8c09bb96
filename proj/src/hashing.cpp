#include "zkbid/hashing.hpp"

#include "zkbid/errors.hpp"

namespace zkbid {

namespace {

Bytes frame(const std::string& tag) {
    ByteWriter w;
    w.u32(uint32_t(tag.size()));
    w.ascii(tag);
    return w.take();
}

}  // namespace

Scalar hash_to_scalar(const std::string& tag, const Bytes& data) {
    Bytes pre = frame(tag);
    Bytes m0 = pre, m1 = pre;
    m0.push_back(0x00);
    m1.push_back(0x01);
    m0.insert(m0.end(), data.begin(), data.end());
    m1.insert(m1.end(), data.begin(), data.end());
    Digest32 h0 = keccak256(m0);
    Digest32 h1 = keccak256(m1);
    std::array<uint8_t, 64> wide;
    std::copy(h0.begin(), h0.end(), wide.begin());
    std::copy(h1.begin(), h1.end(), wide.begin() + 32);
    return Scalar::from_bytes_wide(wide);
}

GroupElement hash_to_point(const Bytes& data) {
    Bytes pre = frame("ZKBID/H2P/v1");
    for (uint32_t ctr = 0; ctr <= 0xFFFF; ++ctr) {
        ByteWriter w;
        w.raw(pre);
        w.u16(uint16_t(ctr));
        w.u8(0x00);
        w.raw(data);
        Digest32 cand = keccak256(w.bytes());
        auto x = FpSecp::from_bytes(cand);
        if (!x) continue;
        auto y = (x->square() * *x + secp256k1::curve_b()).sqrt();
        if (!y) continue;
        ByteWriter w2;
        w2.raw(pre);
        w2.u16(uint16_t(ctr));
        w2.u8(0x01);
        w2.raw(data);
        Digest32 par = keccak256(w2.bytes());
        if (y->is_odd() != bool(par[0] & 1)) *y = -*y;
        return GroupElement{*x, *y, FpSecp::one()};
    }
    throw AbortedHashToPoint("hash_to_point: counter space exhausted");
}

}  // namespace zkbid
