#include "zkbid/zk.hpp"

#include "zkbid/errors.hpp"
#include "zkbid/hashing.hpp"

namespace zkbid::zk {

namespace {

constexpr char kProofMagic[4] = {'Z', 'K', 'P', 'F'};
constexpr char kConfigMagic[4] = {'Z', 'K', 'V', 'C'};
constexpr uint16_t kVersion = 1;

TransparentHooks g_transparent{};

const TransparentHooks& transparent_hooks() {
    if (!g_transparent.verify)
        throw ConfigError("test proof backend requested but not registered in this build");
    return g_transparent;
}

}  // namespace

void register_transparent_backend(const TransparentHooks& hooks) { g_transparent = hooks; }

bool transparent_backend_available() { return g_transparent.verify != nullptr; }

Bytes VerifierConfig::encode() const {
    ByteWriter w;
    w.raw(reinterpret_cast<const uint8_t*>(kConfigMagic), 4);
    w.u16(kVersion);
    w.u8(static_cast<uint8_t>(backend));
    w.var_bytes(payload);
    return w.take();
}

std::optional<VerifierConfig> VerifierConfig::decode(const Bytes& data) {
    ByteReader r(data);
    auto magic = r.fixed<4>();
    if (!r.ok() || std::memcmp(magic.data(), kConfigMagic, 4) != 0) return std::nullopt;
    if (r.u16() != kVersion) return std::nullopt;
    uint8_t b = r.u8();
    if (b != uint8_t(Backend::kGroth16) && b != uint8_t(Backend::kTransparentTest))
        return std::nullopt;
    VerifierConfig cfg;
    cfg.backend = Backend(b);
    cfg.payload = r.var_bytes();
    if (!r.ok() || !r.at_end()) return std::nullopt;
    return cfg;
}

Digest32 VerifierConfig::digest() const { return zkbid::digest(encode()); }

Bytes wrap_proof(Backend backend, const Bytes& payload) {
    ByteWriter w;
    w.raw(reinterpret_cast<const uint8_t*>(kProofMagic), 4);
    w.u16(kVersion);
    w.u8(static_cast<uint8_t>(backend));
    w.var_bytes(payload);
    return w.take();
}

std::optional<std::pair<Backend, Bytes>> unwrap_proof(const Bytes& data) {
    ByteReader r(data);
    auto magic = r.fixed<4>();
    if (!r.ok() || std::memcmp(magic.data(), kProofMagic, 4) != 0) return std::nullopt;
    if (r.u16() != kVersion) return std::nullopt;
    uint8_t b = r.u8();
    if (b != uint8_t(Backend::kGroth16) && b != uint8_t(Backend::kTransparentTest))
        return std::nullopt;
    Bytes payload = r.var_bytes();
    if (!r.ok() || !r.at_end()) return std::nullopt;
    return std::make_pair(Backend(b), std::move(payload));
}

Digest32 face_circuit_digest() {
    static const Digest32 d = snark::FaceMatchCircuit::build().r1cs.digest();
    return d;
}

FaceProofSetup face_proof_setup(Backend backend, Rng& rng) {
    FaceProofSetup out;
    out.backend = backend;
    if (backend == Backend::kGroth16) {
        auto circuit = snark::FaceMatchCircuit::build();
        auto keys = snark::groth16_keygen(circuit.r1cs, rng);
        out.prover_blob = keys.pk.to_bytes();
        out.verifier = {backend, keys.vk.to_bytes()};
    } else {
        Bytes key_id = transparent_hooks().keygen(rng);
        out.prover_blob = key_id;
        out.verifier = {backend, key_id};
    }
    return out;
}

std::optional<FaceProver> FaceProver::load(Backend backend, const Bytes& prover_blob) {
    FaceProver p;
    p.backend_ = backend;
    p.circuit_ = snark::FaceMatchCircuit::build();
    if (backend == Backend::kGroth16) {
        auto pk = snark::ProvingKey::from_bytes(prover_blob);
        if (!pk) return std::nullopt;
        if (pk->circuit_digest != p.circuit_.r1cs.digest()) return std::nullopt;
        p.pk_ = std::move(*pk);
    } else {
        if (prover_blob.size() != 32) return std::nullopt;
        p.key_id_ = prover_blob;
    }
    return p;
}

Bytes FaceProver::prove(const FeatureVector& probe, const FeatureVector& enrolled,
                        const snark::PublicInputs& pub, Rng& rng) const {
    if (backend_ == Backend::kGroth16) {
        auto z = circuit_.synthesize(probe, enrolled, pub);
        auto proof = snark::groth16_prove(pk_, circuit_.r1cs, z, rng);
        return wrap_proof(backend_, proof.to_bytes());
    }
    return wrap_proof(backend_, transparent_hooks().prove(key_id_, probe, enrolled, pub, rng));
}

bool verify_face_proof(const VerifierConfig& cfg, const snark::PublicInputs& pub,
                       const Bytes& proof) {
    auto unwrapped = unwrap_proof(proof);
    if (!unwrapped || unwrapped->first != cfg.backend) return false;
    const Bytes& payload = unwrapped->second;
    if (cfg.backend == Backend::kGroth16) {
        auto vk = snark::VerifyingKey::from_bytes(cfg.payload);
        if (!vk) return false;
        auto parsed = snark::Groth16Proof::from_bytes(payload);
        if (!parsed) return false;
        return snark::groth16_verify(*vk, pub.to_field_elements(), *parsed);
    }
    return transparent_hooks().verify(cfg.payload, pub, payload);
}

}  // namespace zkbid::zk
