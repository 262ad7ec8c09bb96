#pragma once

#include "zkbid/bytes.hpp"

namespace zkbid {

// Keccak-256 with the original 0x01 domain padding (the variant Ethereum
// uses), not FIPS-202 SHA3.
Digest32 keccak256(const uint8_t* data, size_t len);

inline Digest32 keccak256(const Bytes& b) { return keccak256(b.data(), b.size()); }
inline Digest32 keccak256(const std::string& s) {
    return keccak256(reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

}  // namespace zkbid
