#pragma once

#include "zkbid/facematch.hpp"
#include "zkbid/r1cs.hpp"

namespace zkbid::snark {

// Statement proved about a face pair, as seen by the verifier. The two
// digests ride along as public inputs so the proof is bound to one identity
// hash and one seed account; they take no part in the arithmetic itself.
struct PublicInputs {
    int64_t tau_fixed = 0;
    int64_t eps_norm = kNormTolerance;
    Digest32 id_hash{};
    Digest32 seed_pk_digest{};

    std::vector<Fr> to_field_elements() const;
    Bytes encode() const;
    static PublicInputs decode(ByteReader& r);

    std::string to_json() const;
    static std::optional<PublicInputs> from_json(const std::string& text);

    bool operator==(const PublicInputs& o) const;
};

// Constraints over two fixed-point feature vectors:
//   - every coordinate lies in (-2^17, 2^17), via sign/magnitude decomposition
//   - both squared norms lie within eps_norm of 2^32
//   - the inner product is at least tau_fixed
struct FaceMatchCircuit {
    R1CS r1cs;

    static FaceMatchCircuit build();

    // Full assignment [1, publics..., witness...]. Throws
    // SimilarityBelowThreshold or NormOutOfTolerance when the pair cannot
    // satisfy the constraints.
    std::vector<Fr> synthesize(const FeatureVector& probe, const FeatureVector& enrolled,
                               const PublicInputs& pub) const;
};

}  // namespace zkbid::snark
