#include "zkbid/secp256k1.hpp"

namespace zkbid::secp256k1 {

GroupElement generator() {
    static const GroupElement g = [] {
        FpSecp x = FpSecp::from_limbs({0x59f2815b16f81798ull, 0x029bfcdb2dce28d9ull,
                                       0x55a06295ce870b07ull, 0x79be667ef9dcbbacull});
        FpSecp y = FpSecp::from_limbs({0x9c47d08ffb10d4b8ull, 0xfd17b448a6855419ull,
                                       0x5da4fbfc0e1108a8ull, 0x483ada7726a3c465ull});
        return GroupElement{x, y, FpSecp::one()};
    }();
    return g;
}

std::array<uint8_t, 33> encode(const GroupElement& p) {
    std::array<uint8_t, 33> out{};
    if (p.is_infinity()) return out;
    auto a = ec::to_affine(p);
    out[0] = a.y.is_odd() ? 0x03 : 0x02;
    auto xb = a.x.to_bytes();
    std::copy(xb.begin(), xb.end(), out.begin() + 1);
    return out;
}

std::optional<GroupElement> decode(const std::array<uint8_t, 33>& enc) {
    if (enc[0] == 0x00) {
        for (auto b : enc)
            if (b) return std::nullopt;
        return GroupElement::infinity();
    }
    if (enc[0] != 0x02 && enc[0] != 0x03) return std::nullopt;
    std::array<uint8_t, 32> xb;
    std::copy(enc.begin() + 1, enc.end(), xb.begin());
    auto x = FpSecp::from_bytes(xb);
    if (!x) return std::nullopt;
    auto y = (x->square() * *x + curve_b()).sqrt();
    if (!y) return std::nullopt;
    if (y->is_odd() != (enc[0] == 0x03)) *y = -*y;
    return GroupElement{*x, *y, FpSecp::one()};
}

bool valid(const GroupElement& p) { return ec::on_curve(p, curve_b()); }

}  // namespace zkbid::secp256k1
