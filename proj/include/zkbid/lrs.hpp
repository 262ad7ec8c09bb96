#pragma once

#include "zkbid/accounts.hpp"

namespace zkbid::lrs {

using Ring = std::vector<GroupElement>;  // member public keys, order-sensitive

// Deterministic image of one secret key: sk * H_p(pk). Two signatures made
// with the same account carry the same image no matter the ring or message.
// Throws KeyMismatch when the account's key pair is inconsistent.
GroupElement key_image(const Account& acct);

struct RingSignature {
    GroupElement image;
    Scalar c1;
    std::vector<Scalar> s;

    Bytes encode() const;
    static std::optional<RingSignature> decode(const Bytes& data);
    std::string to_json() const;
    static std::optional<RingSignature> from_json(const std::string& text);
};

// canonical message binding for whatever contains a ring
Bytes ring_encode(const Ring& ring);
std::optional<Ring> ring_decode(const Bytes& data);

// Throws SignerNotInRing when the signer's public key is absent.
RingSignature ring_sign(const Ring& ring, const Account& signer, const Bytes& msg, Rng& rng);

bool ring_verify(const Ring& ring, const Bytes& msg, const RingSignature& sig);
// same, optionally exposing the recomputed challenge chain (c_2 .. c_{n+1})
bool ring_verify_traced(const Ring& ring, const Bytes& msg, const RingSignature& sig,
                        std::vector<Scalar>* challenges);

// two valid signatures are linked iff they spend the same key
bool linked(const RingSignature& a, const RingSignature& b);

// Builds a ring of n keys: the signer's own key at a uniform random position
// plus n-1 decoys drawn uniformly without replacement from the registry.
// Throws SignerNotInRing when own is absent from the registry and
// InsufficientAnonymitySet when the registry holds fewer than n keys.
Ring sample_ring(const std::vector<GroupElement>& registry, const GroupElement& own, size_t n,
                 Rng& rng);

}  // namespace zkbid::lrs
