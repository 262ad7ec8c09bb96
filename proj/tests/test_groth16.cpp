#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zkbid/errors.hpp"
#include "zkbid/hashing.hpp"
#include "zkbid/transparent.hpp"
#include "zkbid/zk.hpp"

using namespace zkbid;
using namespace zkbid::snark;

static PublicInputs test_publics() {
    auto cfg = ThresholdConfig::from_tau(0.90);
    PublicInputs pub;
    pub.tau_fixed = cfg.tau_fixed;
    pub.eps_norm = cfg.eps_norm;
    pub.id_hash = digest({'i', 'd'});
    pub.seed_pk_digest = digest({'p', 'k'});
    return pub;
}

// the test backend must be dormant until explicitly enabled, so this case
// stays first in the file
TEST_CASE("test backend is unavailable until registered") {
    CHECK_FALSE(zk::transparent_backend_available());
    Rng rng(1);
    CHECK_THROWS_AS(zk::face_proof_setup(zk::Backend::kTransparentTest, rng), ConfigError);
    zk::VerifierConfig cfg{zk::Backend::kTransparentTest, Bytes(32, 7)};
    CHECK_THROWS_AS(zk::verify_face_proof(cfg, test_publics(), zk::wrap_proof(cfg.backend, Bytes(64))),
                    ConfigError);
    zkbid::testing::enable_transparent_backend();
    CHECK(zk::transparent_backend_available());
}

TEST_CASE("toy circuit proof lifecycle") {
    R1CS toy = toy_circuit();
    Rng rng(42);
    auto keys = groth16_keygen(toy, rng);
    CHECK(keys.pk.circuit_digest == toy.digest());
    CHECK(keys.vk.ic.size() == 2);
    CHECK(keys.pk.h_query.size() == 7);

    auto proof = groth16_prove(keys.pk, toy, toy_assignment(3), rng);
    CHECK(groth16_verify(keys.vk, {fr_from_i64(35)}, proof));
    CHECK_FALSE(groth16_verify(keys.vk, {fr_from_i64(36)}, proof));
    CHECK_FALSE(groth16_verify(keys.vk, {}, proof));
    CHECK_FALSE(groth16_verify(keys.vk, {fr_from_i64(35), fr_from_i64(0)}, proof));

    auto proof2 = groth16_prove(keys.pk, toy, toy_assignment(-4), rng);
    CHECK(groth16_verify(keys.vk, {fr_from_i64(-63)}, proof2));
    // proofs are not interchangeable across statements
    CHECK_FALSE(groth16_verify(keys.vk, {fr_from_i64(-63)}, proof));
    CHECK_FALSE(groth16_verify(keys.vk, {fr_from_i64(35)}, proof2));

    // swapped elements break the pairing equation
    auto swapped = proof;
    std::swap(swapped.a, swapped.c);
    CHECK_FALSE(groth16_verify(keys.vk, {fr_from_i64(35)}, swapped));

    // a fresh ceremony for the same circuit does not accept old proofs
    Rng rng2(43);
    auto keys2 = groth16_keygen(toy, rng2);
    CHECK(groth16_verify(keys2.vk, {fr_from_i64(35)},
                         groth16_prove(keys2.pk, toy, toy_assignment(3), rng2)));
    CHECK_FALSE(groth16_verify(keys2.vk, {fr_from_i64(35)}, proof));
}

TEST_CASE("prover rejects bad assignments and foreign keys") {
    R1CS toy = toy_circuit();
    Rng rng(7);
    auto keys = groth16_keygen(toy, rng);

    auto bad = toy_assignment(3);
    bad[1] = fr_from_i64(36);
    CHECK_THROWS_AS(groth16_prove(keys.pk, toy, bad, rng), UnsatisfiedWitness);
    CHECK_THROWS_AS(groth16_prove(keys.pk, toy, std::vector<Fr>(4, Fr::one()), rng),
                    UnsatisfiedWitness);

    R1CS other = toy_circuit();
    other.constraints[0].a[0].coeff = fr_from_i64(2);
    CHECK_THROWS_AS(groth16_prove(keys.pk, other, toy_assignment(3), rng), KeyMismatch);
}

TEST_CASE("keygen is deterministic per seed") {
    R1CS toy = toy_circuit();
    Rng a(99), b(99), c(100);
    CHECK(groth16_keygen(toy, a).vk.to_bytes() == groth16_keygen(toy, b).vk.to_bytes());
    CHECK(groth16_keygen(toy, a).vk.to_bytes() != groth16_keygen(toy, c).vk.to_bytes());
}

TEST_CASE("key and proof serialization round-trips") {
    R1CS toy = toy_circuit();
    Rng rng(1234);
    auto keys = groth16_keygen(toy, rng);

    Bytes pkb = keys.pk.to_bytes();
    auto pk = ProvingKey::from_bytes(pkb);
    REQUIRE(pk.has_value());
    CHECK(pk->to_bytes() == pkb);

    Bytes vkb = keys.vk.to_bytes();
    auto vk = VerifyingKey::from_bytes(vkb);
    REQUIRE(vk.has_value());
    CHECK(vk->to_bytes() == vkb);

    auto proof = groth16_prove(*pk, toy, toy_assignment(6), rng);
    Bytes prb = proof.to_bytes();
    CHECK(prb.size() == 131);
    auto parsed = Groth16Proof::from_bytes(prb);
    REQUIRE(parsed.has_value());
    CHECK(parsed->to_bytes() == prb);
    CHECK(groth16_verify(*vk, {fr_from_i64(227)}, *parsed));

    // damaged inputs are rejected, not misparsed
    for (Bytes* blob : {&pkb, &vkb}) {
        Bytes bad = *blob;
        bad[0] ^= 0xff;  // magic
        CHECK_FALSE(ProvingKey::from_bytes(bad).has_value());
        CHECK_FALSE(VerifyingKey::from_bytes(bad).has_value());
        bad = *blob;
        bad[5] ^= 0xff;  // version
        CHECK_FALSE(ProvingKey::from_bytes(bad).has_value());
        CHECK_FALSE(VerifyingKey::from_bytes(bad).has_value());
        bad = *blob;
        bad.pop_back();
        CHECK_FALSE(ProvingKey::from_bytes(bad).has_value());
        CHECK_FALSE(VerifyingKey::from_bytes(bad).has_value());
        bad = *blob;
        bad.push_back(0);
        CHECK_FALSE(ProvingKey::from_bytes(bad).has_value());
        CHECK_FALSE(VerifyingKey::from_bytes(bad).has_value());
    }
    Bytes shortproof(130, 0);
    CHECK_FALSE(Groth16Proof::from_bytes(shortproof).has_value());
    Bytes junk(131, 0x5a);
    CHECK_FALSE(Groth16Proof::from_bytes(junk).has_value());
}

TEST_CASE("face circuit end-to-end with the pairing backend") {
    auto circuit = FaceMatchCircuit::build();
    Rng rng(2718);
    auto keys = groth16_keygen(circuit.r1cs, rng);
    auto pub = test_publics();

    DatasetParams params;
    params.n_subjects = 10;
    Dataset ds = generate_synthetic_dataset(params, 6001);
    const auto& probe = ds.subjects[0][0];
    const auto& enrolled = ds.subjects[0][1];
    REQUIRE(face_match(probe, enrolled, ThresholdConfig::from_tau(0.90)));

    auto z = circuit.synthesize(probe, enrolled, pub);
    auto proof = groth16_prove(keys.pk, circuit.r1cs, z, rng);
    CHECK(groth16_verify(keys.vk, pub.to_field_elements(), proof));

    // binding: same proof under a different identity hash fails
    auto other = pub;
    other.id_hash = digest({'x'});
    CHECK_FALSE(groth16_verify(keys.vk, other.to_field_elements(), proof));
    auto other2 = pub;
    other2.seed_pk_digest = digest({'y'});
    CHECK_FALSE(groth16_verify(keys.vk, other2.to_field_elements(), proof));
    auto other3 = pub;
    other3.tau_fixed += 1;
    CHECK_FALSE(groth16_verify(keys.vk, other3.to_field_elements(), proof));

    // proofs are randomized yet reproducible per seed
    Rng ra(555), rb(555), rc(556);
    auto pa = groth16_prove(keys.pk, circuit.r1cs, z, ra);
    auto pb = groth16_prove(keys.pk, circuit.r1cs, z, rb);
    auto pc = groth16_prove(keys.pk, circuit.r1cs, z, rc);
    CHECK(pa.to_bytes() == pb.to_bytes());
    CHECK(pa.to_bytes() != pc.to_bytes());
    CHECK(groth16_verify(keys.vk, pub.to_field_elements(), pa));
    CHECK(groth16_verify(keys.vk, pub.to_field_elements(), pc));

    // the facade wraps the same material
    auto prover = zk::FaceProver::load(zk::Backend::kGroth16, keys.pk.to_bytes());
    REQUIRE(prover.has_value());
    Bytes wrapped = prover->prove(probe, enrolled, pub, rng);
    zk::VerifierConfig cfg{zk::Backend::kGroth16, keys.vk.to_bytes()};
    CHECK(zk::verify_face_proof(cfg, pub, wrapped));
    CHECK_FALSE(zk::verify_face_proof(cfg, other, wrapped));
    Bytes mangled = wrapped;
    mangled.back() ^= 1;
    CHECK_FALSE(zk::verify_face_proof(cfg, pub, mangled));

    // non-matching pair never reaches the proof stage
    Dataset ds2 = generate_synthetic_dataset(params, 6002);
    CHECK_THROWS_AS(prover->prove(ds.subjects[0][0], ds2.subjects[1][0], pub, rng),
                    SimilarityBelowThreshold);

    // a proving key for a different circuit is refused on load
    Rng toy_rng(5);
    auto toy_keys = groth16_keygen(toy_circuit(), toy_rng);
    CHECK_FALSE(zk::FaceProver::load(zk::Backend::kGroth16, toy_keys.pk.to_bytes()).has_value());
    CHECK_FALSE(zk::FaceProver::load(zk::Backend::kGroth16, Bytes(100, 3)).has_value());
}

TEST_CASE("proof envelope and verifier config codecs") {
    Bytes payload = {1, 2, 3, 4};
    Bytes wrapped = zk::wrap_proof(zk::Backend::kGroth16, payload);
    auto un = zk::unwrap_proof(wrapped);
    REQUIRE(un.has_value());
    CHECK(un->first == zk::Backend::kGroth16);
    CHECK(un->second == payload);
    CHECK_FALSE(zk::unwrap_proof({}).has_value());
    CHECK_FALSE(zk::unwrap_proof(Bytes(3, 0)).has_value());
    Bytes badtag = wrapped;
    badtag[6] = 9;  // unknown backend
    CHECK_FALSE(zk::unwrap_proof(badtag).has_value());
    Bytes trailing = wrapped;
    trailing.push_back(0);
    CHECK_FALSE(zk::unwrap_proof(trailing).has_value());

    zk::VerifierConfig cfg{zk::Backend::kTransparentTest, Bytes(32, 9)};
    auto decoded = zk::VerifierConfig::decode(cfg.encode());
    REQUIRE(decoded.has_value());
    CHECK(*decoded == cfg);
    CHECK(decoded->digest() == cfg.digest());
    zk::VerifierConfig cfg2 = cfg;
    cfg2.payload[0] ^= 1;
    CHECK(cfg2.digest() != cfg.digest());
    CHECK_FALSE(zk::VerifierConfig::decode(Bytes(5, 1)).has_value());
}

TEST_CASE("transparent backend honors the same contract") {
    REQUIRE(zk::transparent_backend_available());
    Rng rng(31415);
    auto setup = zk::face_proof_setup(zk::Backend::kTransparentTest, rng);
    CHECK(setup.prover_blob.size() == 32);
    CHECK(setup.verifier.backend == zk::Backend::kTransparentTest);

    auto prover = zk::FaceProver::load(setup.backend, setup.prover_blob);
    REQUIRE(prover.has_value());
    auto pub = test_publics();

    DatasetParams params;
    params.n_subjects = 10;
    Dataset ds = generate_synthetic_dataset(params, 6003);
    Bytes proof = prover->prove(ds.subjects[2][0], ds.subjects[2][1], pub, rng);
    CHECK(zk::verify_face_proof(setup.verifier, pub, proof));

    // bound to the statement and the key
    auto other = pub;
    other.id_hash = digest({'z'});
    CHECK_FALSE(zk::verify_face_proof(setup.verifier, other, proof));
    auto setup2 = zk::face_proof_setup(zk::Backend::kTransparentTest, rng);
    CHECK_FALSE(zk::verify_face_proof(setup2.verifier, pub, proof));
    Bytes mangled = proof;
    mangled.back() ^= 1;
    CHECK_FALSE(zk::verify_face_proof(setup.verifier, pub, mangled));

    // same admission rules as the real prover
    Dataset far = generate_synthetic_dataset(params, 6004);
    CHECK_THROWS_AS(prover->prove(ds.subjects[2][0], far.subjects[3][0], pub, rng),
                    SimilarityBelowThreshold);
    FeatureVector tiny{};
    tiny[0] = 5;
    CHECK_THROWS_AS(prover->prove(tiny, ds.subjects[2][0], pub, rng), NormOutOfTolerance);

    // backend tags cannot be crossed
    CHECK_FALSE(zk::verify_face_proof(setup.verifier, pub,
                                      zk::wrap_proof(zk::Backend::kGroth16, Bytes(131, 1))));
}
