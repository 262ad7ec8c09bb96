#include "zkbid/transparent.hpp"

#include "zkbid/hashing.hpp"

namespace zkbid::testing {

namespace {

const std::string kTag = "ZKBID/TEST-PROOF/v1";

Digest32 mac(const Bytes& key_id, const snark::PublicInputs& pub, const Digest32& nonce) {
    ByteWriter w;
    w.u32(static_cast<uint32_t>(kTag.size()));
    w.ascii(kTag);
    w.var_bytes(key_id);
    w.raw(pub.encode());
    w.raw(nonce);
    return digest(w.bytes());
}

Bytes transparent_keygen(Rng& rng) {
    auto id = rng.bytes<32>();
    return Bytes(id.begin(), id.end());
}

Bytes transparent_prove(const Bytes& key_id, const FeatureVector& probe,
                        const FeatureVector& enrolled, const snark::PublicInputs& pub, Rng& rng) {
    // same admission rules as the real prover, minus the proof
    static const snark::FaceMatchCircuit circuit = snark::FaceMatchCircuit::build();
    circuit.synthesize(probe, enrolled, pub);

    Digest32 nonce = rng.bytes<32>();
    ByteWriter w;
    w.raw(nonce);
    w.raw(mac(key_id, pub, nonce));
    return w.take();
}

bool transparent_verify(const Bytes& key_id, const snark::PublicInputs& pub, const Bytes& payload) {
    if (payload.size() != 64) return false;
    ByteReader r(payload);
    Digest32 nonce = r.fixed<32>();
    Digest32 tag = r.fixed<32>();
    return tag == mac(key_id, pub, nonce);
}

}  // namespace

void enable_transparent_backend() {
    zk::TransparentHooks hooks;
    hooks.keygen = &transparent_keygen;
    hooks.prove = &transparent_prove;
    hooks.verify = &transparent_verify;
    zk::register_transparent_backend(hooks);
}

}  // namespace zkbid::testing
