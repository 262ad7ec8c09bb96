#pragma once

#include "zkbid/ec.hpp"
#include "zkbid/fp.hpp"

namespace zkbid {

struct Secp256k1BaseTag {
    static constexpr Limbs modulus = {0xfffffffefffffc2full, 0xffffffffffffffffull,
                                      0xffffffffffffffffull, 0xffffffffffffffffull};
};
struct Secp256k1OrderTag {
    static constexpr Limbs modulus = {0xbfd25e8cd0364141ull, 0xbaaedce6af48a03bull,
                                      0xfffffffffffffffeull, 0xffffffffffffffffull};
};

using FpSecp = Fp<Secp256k1BaseTag>;

// scalar of the account/ring group: integer modulo the group order q
using Scalar = Fp<Secp256k1OrderTag>;

using GroupElement = ec::Point<FpSecp>;
using GroupAffine = ec::Affine<FpSecp>;

namespace secp256k1 {

inline FpSecp curve_b() { return FpSecp::from_u64(7); }

GroupElement generator();

inline GroupElement mul(const GroupElement& p, const Scalar& k) {
    return ec::scalar_mul(p, k.to_limbs());
}
inline GroupElement mul_base(const Scalar& k) { return mul(generator(), k); }

// 33 bytes: 0x02/0x03 prefix + x, or all-zero first byte for the identity
std::array<uint8_t, 33> encode(const GroupElement& p);
std::optional<GroupElement> decode(const std::array<uint8_t, 33>& enc);

bool valid(const GroupElement& p);

}  // namespace secp256k1

}  // namespace zkbid
