#pragma once

#include "zkbid/bytes.hpp"
#include "zkbid/keccak.hpp"
#include "zkbid/secp256k1.hpp"

namespace zkbid {

inline Digest32 digest(const Bytes& data) { return keccak256(data); }
inline Digest32 digest(const uint8_t* p, size_t n) { return keccak256(p, n); }

// Domain-separated hash into the scalar field of the account group.
// Framing: keccak256(u32be(|tag|) || tag || ctr_byte || data) for ctr 0 and 1,
// concatenated to 64 bytes and reduced mod the group order.
Scalar hash_to_scalar(const std::string& tag, const Bytes& data);

// Deterministic try-and-increment onto the account group. Never returns the
// identity. Throws AbortedHashToPoint if no candidate is found within 2^16
// counter values (never observed; probability ~2^-65536).
GroupElement hash_to_point(const Bytes& data);

}  // namespace zkbid
