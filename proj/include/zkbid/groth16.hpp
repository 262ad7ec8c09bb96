#pragma once

#include "zkbid/msm.hpp"
#include "zkbid/qap.hpp"
#include "zkbid/rng.hpp"

namespace zkbid::snark {

using bn254::G1;
using bn254::G1Affine;
using bn254::G2;
using bn254::G2Affine;

// Pairing-based proving/verifying key pair produced by a circuit-specific
// trusted setup. The digest field ties both keys to one exact constraint
// system; provers and verifiers refuse material from any other circuit.
struct ProvingKey {
    Digest32 circuit_digest{};
    uint32_t num_public = 0;
    uint32_t domain_size = 0;
    G1Affine alpha1, beta1, delta1;
    G2Affine beta2, delta2;
    std::vector<G1Affine> a_query;   // per-variable A polynomials at the trapdoor
    std::vector<G1Affine> b1_query;  // B polynomials over G1
    std::vector<G2Affine> b2_query;  // B polynomials over G2
    std::vector<G1Affine> l_query;   // witness-side combined column, delta-shifted
    std::vector<G1Affine> h_query;   // powers times the vanishing polynomial

    Bytes to_bytes() const;
    static std::optional<ProvingKey> from_bytes(const Bytes& data);
};

struct VerifyingKey {
    Digest32 circuit_digest{};
    uint32_t num_public = 0;
    G1Affine alpha1;
    G2Affine beta2, gamma2, delta2;
    std::vector<G1Affine> ic;  // input commitments, constant wire first

    Bytes to_bytes() const;
    static std::optional<VerifyingKey> from_bytes(const Bytes& data);
};

struct Groth16Proof {
    G1Affine a;
    G2Affine b;
    G1Affine c;

    Bytes to_bytes() const;  // 131 bytes
    static std::optional<Groth16Proof> from_bytes(const Bytes& data);
};

struct Keypair {
    ProvingKey pk;
    VerifyingKey vk;
};

Keypair groth16_keygen(const R1CS& r1cs, Rng& rng);

// Throws UnsatisfiedWitness when the assignment violates the constraints and
// KeyMismatch when the key belongs to a different circuit.
Groth16Proof groth16_prove(const ProvingKey& pk, const R1CS& r1cs,
                           const std::vector<Fr>& assignment, Rng& rng);

bool groth16_verify(const VerifyingKey& vk, const std::vector<Fr>& public_inputs,
                    const Groth16Proof& proof);

}  // namespace zkbid::snark
