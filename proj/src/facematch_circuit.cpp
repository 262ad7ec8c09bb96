#include "zkbid/facematch_circuit.hpp"

#include <nlohmann/json.hpp>

#include "zkbid/errors.hpp"

namespace zkbid::snark {

namespace {

constexpr size_t kSlackBits = 35;  // inner product minus tau fits well under 2^35
constexpr size_t kNormBits = 21;   // norm slack lies in [0, 2^21] for eps = 2^20
constexpr size_t kMagBits = 17;    // coordinate magnitudes are below 2^17

// wire layout ------------------------------------------------------------
constexpr uint32_t kOne = 0;
constexpr uint32_t kTau = 1;
constexpr uint32_t kEps = 2;
constexpr uint32_t kIdHash = 3;
constexpr uint32_t kSeedPk = 4;
constexpr uint32_t kWitnessBase = 5;

constexpr uint32_t coord_a(size_t i) { return kWitnessBase + static_cast<uint32_t>(i); }
constexpr uint32_t coord_b(size_t i) { return kWitnessBase + 128 + static_cast<uint32_t>(i); }
constexpr uint32_t prod(size_t i) { return kWitnessBase + 256 + static_cast<uint32_t>(i); }
constexpr uint32_t sq_a(size_t i) { return kWitnessBase + 384 + static_cast<uint32_t>(i); }
constexpr uint32_t sq_b(size_t i) { return kWitnessBase + 512 + static_cast<uint32_t>(i); }
constexpr uint32_t kSlack = kWitnessBase + 640;
constexpr uint32_t slack_bit(size_t j) { return kSlack + 1 + static_cast<uint32_t>(j); }
constexpr uint32_t kNormSlackA = kSlack + 1 + kSlackBits;
constexpr uint32_t kNormSlackB = kNormSlackA + 1;
constexpr uint32_t norm_bit_a(size_t j) { return kNormSlackB + 1 + static_cast<uint32_t>(j); }
constexpr uint32_t kNormTopA = norm_bit_a(kNormBits);
constexpr uint32_t norm_bit_b(size_t j) { return kNormTopA + 1 + static_cast<uint32_t>(j); }
constexpr uint32_t kNormTopB = norm_bit_b(kNormBits);
// per coordinate (a's 128 first, then b's): kMagBits magnitude bits + sign
constexpr uint32_t sign_mag_base(size_t k) {
    return kNormTopB + 1 + static_cast<uint32_t>(k) * (kMagBits + 1);
}
constexpr uint32_t mag_bit(size_t k, size_t j) { return sign_mag_base(k) + static_cast<uint32_t>(j); }
constexpr uint32_t sign_of(size_t k) { return sign_mag_base(k) + kMagBits; }
constexpr uint32_t kNumVars = sign_mag_base(256);

Fr fr(int64_t v) { return fr_from_i64(v); }

void boolean_constraint(R1CS& r, uint32_t var) {
    // var * (var - 1) = 0
    r.constraints.push_back({{{var, fr(1)}}, {{var, fr(1)}, {kOne, fr(-1)}}, {}});
}

Fr digest_to_fr(const Digest32& d) {
    std::array<uint8_t, 64> wide{};
    std::copy(d.begin(), d.end(), wide.begin() + 32);
    return Fr::from_bytes_wide(wide);
}

}  // namespace

std::vector<Fr> PublicInputs::to_field_elements() const {
    return {fr(tau_fixed), fr(eps_norm), digest_to_fr(id_hash), digest_to_fr(seed_pk_digest)};
}

Bytes PublicInputs::encode() const {
    ByteWriter w;
    w.u64(static_cast<uint64_t>(tau_fixed));
    w.u64(static_cast<uint64_t>(eps_norm));
    w.raw(id_hash.data(), 32);
    w.raw(seed_pk_digest.data(), 32);
    return w.take();
}

PublicInputs PublicInputs::decode(ByteReader& r) {
    PublicInputs p;
    p.tau_fixed = static_cast<int64_t>(r.u64());
    p.eps_norm = static_cast<int64_t>(r.u64());
    p.id_hash = r.fixed<32>();
    p.seed_pk_digest = r.fixed<32>();
    return p;
}

bool PublicInputs::operator==(const PublicInputs& o) const {
    return tau_fixed == o.tau_fixed && eps_norm == o.eps_norm && id_hash == o.id_hash &&
           seed_pk_digest == o.seed_pk_digest;
}

std::string PublicInputs::to_json() const {
    nlohmann::json j;
    j["tau_fixed"] = tau_fixed;
    j["eps_norm"] = eps_norm;
    j["id_hash"] = to_hex(id_hash.data(), 32);
    j["seed_pk_digest"] = to_hex(seed_pk_digest.data(), 32);
    return j.dump(2);
}

std::optional<PublicInputs> PublicInputs::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (!j.is_object() || !j["tau_fixed"].is_number_integer() || !j["eps_norm"].is_number_integer() ||
        !j["id_hash"].is_string() || !j["seed_pk_digest"].is_string())
        return std::nullopt;
    PublicInputs p;
    p.tau_fixed = j["tau_fixed"].get<int64_t>();
    p.eps_norm = j["eps_norm"].get<int64_t>();
    auto id = from_hex_fixed<32>(j["id_hash"].get<std::string>());
    auto pk = from_hex_fixed<32>(j["seed_pk_digest"].get<std::string>());
    if (!id || !pk) return std::nullopt;
    p.id_hash = *id;
    p.seed_pk_digest = *pk;
    return p;
}

FaceMatchCircuit FaceMatchCircuit::build() {
    FaceMatchCircuit c;
    R1CS& r = c.r1cs;
    r.num_public = 4;
    r.num_witness = kNumVars - 5;

    // pairwise products and squares
    for (size_t i = 0; i < kFeatureDim; ++i)
        r.constraints.push_back({{{coord_a(i), fr(1)}}, {{coord_b(i), fr(1)}}, {{prod(i), fr(1)}}});
    for (size_t i = 0; i < kFeatureDim; ++i)
        r.constraints.push_back({{{coord_a(i), fr(1)}}, {{coord_a(i), fr(1)}}, {{sq_a(i), fr(1)}}});
    for (size_t i = 0; i < kFeatureDim; ++i)
        r.constraints.push_back({{{coord_b(i), fr(1)}}, {{coord_b(i), fr(1)}}, {{sq_b(i), fr(1)}}});

    // slack = inner product - tau; nonnegativity comes from the bit split
    {
        LinComb sum;
        for (size_t i = 0; i < kFeatureDim; ++i) sum.push_back({prod(i), fr(1)});
        sum.push_back({kTau, fr(-1)});
        r.constraints.push_back({sum, {{kOne, fr(1)}}, {{kSlack, fr(1)}}});
        for (size_t j = 0; j < kSlackBits; ++j) boolean_constraint(r, slack_bit(j));
        LinComb recomb;
        for (size_t j = 0; j < kSlackBits; ++j) recomb.push_back({slack_bit(j), fr(1ll << j)});
        r.constraints.push_back({recomb, {{kOne, fr(1)}}, {{kSlack, fr(1)}}});
    }

    // norm slack per vector: sum of squares - 2^32 + eps, ranged to [0, 2^21]
    // via kNormBits low bits plus a top flag that excludes the low bits
    auto norm_check = [&](auto square_of, uint32_t slack_var, auto bit_of, uint32_t top) {
        LinComb sum;
        for (size_t i = 0; i < kFeatureDim; ++i) sum.push_back({square_of(i), fr(1)});
        sum.push_back({kEps, fr(1)});
        sum.push_back({kOne, fr(-kSimScale)});
        r.constraints.push_back({sum, {{kOne, fr(1)}}, {{slack_var, fr(1)}}});
        for (size_t j = 0; j < kNormBits; ++j) boolean_constraint(r, bit_of(j));
        boolean_constraint(r, top);
        LinComb recomb;
        for (size_t j = 0; j < kNormBits; ++j) recomb.push_back({bit_of(j), fr(1ll << j)});
        recomb.push_back({top, fr(1ll << kNormBits)});
        r.constraints.push_back({recomb, {{kOne, fr(1)}}, {{slack_var, fr(1)}}});
        LinComb low;
        for (size_t j = 0; j < kNormBits; ++j) low.push_back({bit_of(j), fr(1ll << j)});
        r.constraints.push_back({{{top, fr(1)}}, low, {}});
    };
    norm_check([](size_t i) { return sq_a(i); }, kNormSlackA, [](size_t j) { return norm_bit_a(j); },
               kNormTopA);
    norm_check([](size_t i) { return sq_b(i); }, kNormSlackB, [](size_t j) { return norm_bit_b(j); },
               kNormTopB);

    // every coordinate equals (1 - 2*sign) * magnitude with magnitude < 2^17
    for (size_t k = 0; k < 2 * kFeatureDim; ++k) {
        uint32_t coord = k < kFeatureDim ? coord_a(k) : coord_b(k - kFeatureDim);
        for (size_t j = 0; j < kMagBits; ++j) boolean_constraint(r, mag_bit(k, j));
        boolean_constraint(r, sign_of(k));
        LinComb twice_mag, mag_minus_coord;
        for (size_t j = 0; j < kMagBits; ++j) {
            twice_mag.push_back({mag_bit(k, j), fr(1ll << (j + 1))});
            mag_minus_coord.push_back({mag_bit(k, j), fr(1ll << j)});
        }
        mag_minus_coord.push_back({coord, fr(-1)});
        r.constraints.push_back({{{sign_of(k), fr(1)}}, twice_mag, mag_minus_coord});
    }

    // keep the digests wired into the statement
    r.constraints.push_back({{{kIdHash, fr(1)}}, {{kOne, fr(1)}}, {{kIdHash, fr(1)}}});
    r.constraints.push_back({{{kSeedPk, fr(1)}}, {{kOne, fr(1)}}, {{kSeedPk, fr(1)}}});
    return c;
}

std::vector<Fr> FaceMatchCircuit::synthesize(const FeatureVector& probe, const FeatureVector& enrolled,
                                             const PublicInputs& pub) const {
    if (pub.eps_norm != kNormTolerance)
        throw ConfigError("norm tolerance is fixed by the circuit's range check width");
    if (pub.tau_fixed <= 0 || pub.tau_fixed > kSimScale) throw ConfigError("threshold out of range");

    for (const auto* vec : {&probe, &enrolled})
        for (int64_t c : *vec)
            if (c <= -kCoordBound || c >= kCoordBound)
                throw NormOutOfTolerance("feature coordinate exceeds the fixed-point range");
    if (feature_norm_error(probe) > pub.eps_norm)
        throw NormOutOfTolerance("probe vector is not close enough to unit norm");
    if (feature_norm_error(enrolled) > pub.eps_norm)
        throw NormOutOfTolerance("enrolled vector is not close enough to unit norm");

    int64_t dot = cosine_similarity_fixed(probe, enrolled);
    if (dot < pub.tau_fixed) throw SimilarityBelowThreshold("similarity below the configured threshold");

    std::vector<Fr> z(r1cs.num_vars());
    z[kOne] = Fr::one();
    auto pubs = pub.to_field_elements();
    for (size_t i = 0; i < pubs.size(); ++i) z[1 + i] = pubs[i];

    int64_t norm_a = 0, norm_b = 0;
    for (size_t i = 0; i < kFeatureDim; ++i) {
        z[coord_a(i)] = fr(probe[i]);
        z[coord_b(i)] = fr(enrolled[i]);
        z[prod(i)] = fr(probe[i] * enrolled[i]);
        z[sq_a(i)] = fr(probe[i] * probe[i]);
        z[sq_b(i)] = fr(enrolled[i] * enrolled[i]);
        norm_a += probe[i] * probe[i];
        norm_b += enrolled[i] * enrolled[i];
    }

    int64_t slack = dot - pub.tau_fixed;
    z[kSlack] = fr(slack);
    for (size_t j = 0; j < kSlackBits; ++j) z[slack_bit(j)] = fr((slack >> j) & 1);

    auto fill_norm = [&](int64_t norm, uint32_t slack_var, auto bit_of, uint32_t top) {
        int64_t ns = norm - kSimScale + pub.eps_norm;
        z[slack_var] = fr(ns);
        for (size_t j = 0; j < kNormBits; ++j) z[bit_of(j)] = fr((ns >> j) & 1);
        z[top] = fr((ns >> kNormBits) & 1);
    };
    fill_norm(norm_a, kNormSlackA, [](size_t j) { return norm_bit_a(j); }, kNormTopA);
    fill_norm(norm_b, kNormSlackB, [](size_t j) { return norm_bit_b(j); }, kNormTopB);

    for (size_t k = 0; k < 2 * kFeatureDim; ++k) {
        int64_t c = k < kFeatureDim ? probe[k] : enrolled[k - kFeatureDim];
        int64_t mag = c < 0 ? -c : c;
        for (size_t j = 0; j < kMagBits; ++j) z[mag_bit(k, j)] = fr((mag >> j) & 1);
        z[sign_of(k)] = fr(c < 0 ? 1 : 0);
    }
    return z;
}

}  // namespace zkbid::snark
