#include "zkbid/wallet.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "zkbid/errors.hpp"

namespace zkbid::wallet {

namespace {

constexpr char kIdTag[] = "ZKBID/ID/v1";
constexpr char kProverMagic[] = "ZKPR";
constexpr uint16_t kProverVersion = 1;

Bytes read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot read " + file.string());
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& file, const Bytes& data) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + file.string());
    out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
    if (!out) throw IoError("short write to " + file.string());
}

std::string read_text(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot read " + file.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

Bytes id_hash_bytes(const Digest32& d) { return Bytes(d.begin(), d.end()); }

}  // namespace

Digest32 identity_hash(const std::string& id_number) {
    Bytes buf(kIdTag, kIdTag + sizeof kIdTag - 1);
    buf.insert(buf.end(), id_number.begin(), id_number.end());
    return digest(buf);
}

void save_raw_features(const std::filesystem::path& file, const RawFeatures& v) {
    nlohmann::json j;
    j["version"] = 1;
    j["features"] = v;
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    out << j.dump() << "\n";
}

RawFeatures load_raw_features(const std::filesystem::path& file) {
    auto j = nlohmann::json::parse(read_text(file), nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.value("version", 0) != 1 ||
        !j.contains("features") || !j["features"].is_array() ||
        j["features"].size() != kFeatureDim)
        throw IoError("malformed feature file " + file.string());
    RawFeatures out{};
    for (size_t i = 0; i < kFeatureDim; ++i) {
        if (!j["features"][i].is_number()) throw IoError("malformed feature file " + file.string());
        out[i] = j["features"][i].get<double>();
    }
    return out;
}

bool Wallet::is_set_up() const { return std::filesystem::exists(paths_.chain_file()); }

bool Wallet::is_enrolled() const { return std::filesystem::exists(paths_.reg_info_file()); }

void Wallet::setup(double tau, zk::Backend backend, Rng& rng) {
    if (is_set_up()) throw IoError("wallet already set up at " + paths_.home.string());
    auto threshold = ThresholdConfig::from_tau(tau);

    auto materials = zk::face_proof_setup(backend, rng);
    chain::ChainConfig cfg;
    cfg.tau_fixed = threshold.tau_fixed;
    cfg.eps_norm = threshold.eps_norm;
    cfg.verifier = materials.verifier;

    std::filesystem::create_directories(paths_.chain_dir());
    std::filesystem::create_directories(paths_.wallet_dir());
    ByteWriter w;
    w.ascii(kProverMagic);
    w.u16(kProverVersion);
    w.u8(uint8_t(materials.backend));
    w.var_bytes(materials.prover_blob);
    write_file(paths_.prover_file(), w.bytes());
    save_chain(chain::Chain(cfg));
}

std::pair<zk::Backend, Bytes> Wallet::load_prover_blob() const {
    Bytes raw = read_file(paths_.prover_file());
    ByteReader r(raw);
    auto magic = r.fixed<4>();
    if (std::memcmp(magic.data(), kProverMagic, 4) != 0 || r.u16() != kProverVersion)
        throw IoError("malformed prover file");
    auto backend = zk::Backend(r.u8());
    Bytes blob = r.var_bytes();
    if (!r.ok() || !r.at_end()) throw IoError("malformed prover file");
    return {backend, std::move(blob)};
}

chain::Chain Wallet::load_chain() const {
    if (!is_set_up()) throw IoError("wallet not set up; run setup first");
    return chain::Chain::deserialize(read_file(paths_.chain_file()));
}

void Wallet::save_chain(const chain::Chain& c) const { write_file(paths_.chain_file(), c.serialize()); }

void Wallet::append_receipt(const chain::Receipt& r) const {
    std::ofstream out(paths_.receipts_file(), std::ios::app);
    if (!out) throw IoError("cannot write " + paths_.receipts_file().string());
    out << r.to_json_line() << "\n";
}

chain::RegInfo Wallet::enroll(const IdentityInput& input, Rng& rng) {
    if (input.id_number.empty()) throw ConfigError("id number must be non-empty");
    if (is_enrolled()) throw IoError("already enrolled; wallet holds a registration bundle");
    chain::Chain c = load_chain();
    const chain::ChainConfig& cfg = c.config();

    FeatureVector live = normalize_features(input.feature_live);
    FeatureVector card = normalize_features(input.feature_card);
    ThresholdConfig threshold;
    threshold.tau_fixed = cfg.tau_fixed;
    threshold.eps_norm = cfg.eps_norm;
    threshold.tau = double(cfg.tau_fixed) / double(kSimScale);
    if (!face_match(live, card, threshold))
        throw FaceMismatch("live and card features do not match");

    auto [backend, blob] = load_prover_blob();
    auto prover = zk::FaceProver::load(backend, blob);
    if (!prover) throw ConfigError("prover materials do not match this build");

    Account seed = generate_account(rng);
    chain::RegInfo reg;
    reg.id_hash = identity_hash(input.id_number);
    reg.pk_seed = seed.pk;
    reg.zkp = prover->prove(live, card, chain::statement_for(cfg, reg.id_hash, seed.pk), rng);
    reg.sig_seed = account_sign(seed.sk, id_hash_bytes(reg.id_hash), rng);

    // all checks passed: only now touch the disk
    std::filesystem::create_directories(paths_.vectors_dir());
    save_account(paths_.seed_account_file(), seed);
    save_feature_vector(paths_.live_vector_file(), live);
    save_feature_vector(paths_.card_vector_file(), card);
    write_file(paths_.reg_info_file(), reg.encode());
    return reg;
}

chain::Receipt Wallet::submit_and_mine(chain::Chain& c, const chain::Transaction& tx) const {
    c.submit_tx(tx);
    const chain::Receipt* receipt = nullptr;
    for (int i = 0; i < 100 && !(receipt = c.find_receipt(tx.digest())); ++i) c.produce_block();
    if (!receipt) throw Error("transaction never made it into a receipt");
    save_chain(c);
    append_receipt(*receipt);
    return *receipt;
}

chain::Receipt Wallet::register_identity(Rng& rng) {
    if (!is_enrolled()) throw NotEnrolled("no registration bundle; run enroll first");
    auto reg = chain::RegInfo::decode(read_file(paths_.reg_info_file()));
    if (!reg) throw IoError("malformed registration bundle on disk");
    Account seed = load_account(paths_.seed_account_file());
    chain::Chain c = load_chain();

    uint64_t nonce = 0;
    if (auto it = c.state().account_nonces.find(seed.addr); it != c.state().account_nonces.end())
        nonce = it->second;
    chain::Transaction tx = chain::build_registration_tx(seed, *reg, nonce, rng);
    return submit_and_mine(c, tx);
}

chain::Receipt Wallet::certify(size_t ring_size, Rng& rng) {
    if (!is_enrolled()) throw NotEnrolled("no registration bundle; run enroll first");
    Account seed = load_account(paths_.seed_account_file());
    chain::Chain c = load_chain();

    std::vector<GroupElement> registry;
    for (const auto& enc : c.state().seed_keys) registry.push_back(*secp256k1::decode(enc));

    Account soul = generate_account(rng);
    chain::CerInfo cer;
    cer.pk_soul = soul.pk;
    cer.ring = lrs::sample_ring(registry, seed.pk, ring_size, rng);
    auto soul_enc = secp256k1::encode(soul.pk);
    cer.sig = lrs::ring_sign(cer.ring, seed, Bytes(soul_enc.begin(), soul_enc.end()), rng);

    uint64_t nonce = 0;
    if (auto it = c.state().account_nonces.find(soul.addr); it != c.state().account_nonces.end())
        nonce = it->second;
    chain::Transaction tx = chain::build_certification_tx(soul, cer, nonce, rng);
    chain::Receipt receipt = submit_and_mine(c, tx);
    if (receipt.status == chain::TxStatus::kAccepted) {
        save_account(paths_.soul_account_file(), soul);
        write_file(paths_.cer_info_file(), cer.encode());
    }
    return receipt;
}

Wallet::Status Wallet::status() const {
    chain::Chain c = load_chain();
    Status st;
    st.height = c.height();
    st.seeds = c.state().seed_store.size();
    st.souls = c.state().soul_store.size();
    st.images = c.state().key_images.size();
    st.enrolled = is_enrolled();
    st.certified = std::filesystem::exists(paths_.cer_info_file());
    return st;
}

std::vector<BenchRow> run_operation_bench(zk::Backend backend, uint64_t rng_seed) {
    using clock = std::chrono::steady_clock;
    auto time_ms = [](int iters, auto&& fn) {
        auto t0 = clock::now();
        for (int i = 0; i < iters; ++i) fn();
        auto t1 = clock::now();
        return std::chrono::duration<double, std::milli>(t1 - t0).count() / iters;
    };

    Rng rng(rng_seed);
    auto ds = generate_synthetic_dataset({.n_subjects = 1, .per_subject = 2}, rng_seed);
    const FeatureVector& live = ds.subjects[0][0];
    const FeatureVector& card = ds.subjects[0][1];
    ThresholdConfig threshold = ThresholdConfig::from_tau(0.90);

    std::vector<BenchRow> rows;
    volatile bool sink = false;
    rows.push_back({"face comparison",
                    time_ms(200, [&] { sink = face_match(live, card, threshold); })});

    auto materials = zk::face_proof_setup(backend, rng);
    auto prover = zk::FaceProver::load(materials.backend, materials.prover_blob);
    if (!prover) throw ConfigError("prover setup failed");
    snark::PublicInputs pub;
    pub.tau_fixed = threshold.tau_fixed;
    pub.id_hash = digest(Bytes{1});
    pub.seed_pk_digest = digest(Bytes{2});
    Bytes proof;
    rows.push_back(
        {"ZKP generation", time_ms(1, [&] { proof = prover->prove(live, card, pub, rng); })});

    Account acct;
    rows.push_back({"account generation", time_ms(100, [&] { acct = generate_account(rng); })});

    std::vector<Account> members;
    for (int i = 0; i < 11; ++i) members.push_back(generate_account(rng));
    lrs::Ring ring;
    for (const auto& m : members) ring.push_back(m.pk);
    Bytes msg = id_hash_bytes(digest(Bytes{3}));
    lrs::RingSignature sig;
    rows.push_back(
        {"ring signing", time_ms(5, [&] { sig = lrs::ring_sign(ring, members[4], msg, rng); })});

    if (!zk::verify_face_proof(materials.verifier, pub, proof) ||
        !lrs::ring_verify(ring, msg, sig))
        throw Error("bench artifacts failed verification");
    return rows;
}

std::string bench_table(const std::vector<BenchRow>& rows) {
    std::string out = "operation            mean_ms\n";
    char line[80];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-20s %10.3f\n", r.name.c_str(), r.ms);
        out += line;
    }
    return out;
}

}  // namespace zkbid::wallet
