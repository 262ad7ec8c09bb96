#pragma once

#include "zkbid/facematch_circuit.hpp"
#include "zkbid/groth16.hpp"

namespace zkbid::zk {

enum class Backend : uint8_t {
    kGroth16 = 1,
    kTransparentTest = 2,  // forgeable stand-in, test builds only
};

// Verifier half of a proof system, embeddable in a chain's genesis config.
// Payload is a verifying key for the pairing backend and a bare key id for
// the test backend.
struct VerifierConfig {
    Backend backend = Backend::kGroth16;
    Bytes payload;

    Bytes encode() const;
    static std::optional<VerifierConfig> decode(const Bytes& data);
    Digest32 digest() const;

    bool operator==(const VerifierConfig& o) const {
        return backend == o.backend && payload == o.payload;
    }
};

// proof envelope: backend tag + backend-specific payload
Bytes wrap_proof(Backend backend, const Bytes& payload);
std::optional<std::pair<Backend, Bytes>> unwrap_proof(const Bytes& data);

// Everything produced by one setup run.
struct FaceProofSetup {
    Backend backend = Backend::kGroth16;
    Bytes prover_blob;  // proving key bytes / key id
    VerifierConfig verifier;
};

FaceProofSetup face_proof_setup(Backend backend, Rng& rng);

// Decoded prover, ready for repeated use.
class FaceProver {
public:
    static std::optional<FaceProver> load(Backend backend, const Bytes& prover_blob);

    // wrapped proof bytes; throws the witness errors on non-matching faces
    Bytes prove(const FeatureVector& probe, const FeatureVector& enrolled,
                const snark::PublicInputs& pub, Rng& rng) const;

    Backend backend() const { return backend_; }
    const snark::FaceMatchCircuit& circuit() const { return circuit_; }

private:
    FaceProver() = default;
    Backend backend_ = Backend::kGroth16;
    snark::ProvingKey pk_;
    Bytes key_id_;
    snark::FaceMatchCircuit circuit_;
};

// Total verification: malformed envelopes, wrong backends and bad points all
// come back false. Throws ConfigError only when the config names the test
// backend and no such backend was registered in this build.
bool verify_face_proof(const VerifierConfig& cfg, const snark::PublicInputs& pub,
                       const Bytes& proof);

// digest of the canonical face-match constraint system (cached)
Digest32 face_circuit_digest();

// Registration point for the test backend. Production binaries never call
// this; the hooks live in a separate library that only test targets link.
struct TransparentHooks {
    Bytes (*keygen)(Rng& rng) = nullptr;  // returns the shared key id
    Bytes (*prove)(const Bytes& key_id, const FeatureVector& probe, const FeatureVector& enrolled,
                   const snark::PublicInputs& pub, Rng& rng) = nullptr;
    bool (*verify)(const Bytes& key_id, const snark::PublicInputs& pub,
                   const Bytes& payload) = nullptr;
};
void register_transparent_backend(const TransparentHooks& hooks);
bool transparent_backend_available();

}  // namespace zkbid::zk
