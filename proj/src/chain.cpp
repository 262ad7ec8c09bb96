#include "zkbid/chain.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "zkbid/errors.hpp"

namespace zkbid::chain {

namespace {

constexpr uint16_t kRegInfoFmt = 0x5201;
constexpr uint16_t kCerInfoFmt = 0x4301;
constexpr uint16_t kTxFmt = 0x5401;
constexpr uint16_t kBlockFmt = 0x4201;
constexpr uint16_t kConfigFmt = 0x4701;
constexpr uint16_t kStateFmt = 0x5301;
constexpr uint16_t kChainFileFmt = 0x4601;

Address contract_address(const char* name) {
    Bytes tag(name, name + std::strlen(name));
    Digest32 d = digest(tag);
    Address a{};
    std::copy_n(d.begin(), a.size(), a.begin());
    return a;
}

Bytes digest_bytes(const Digest32& d) { return Bytes(d.begin(), d.end()); }

bool verify_tx_author(const Transaction& tx, const GroupElement& pk) {
    if (pk.is_infinity() || derive_address(pk) != tx.sender) return false;
    return account_verify(pk, digest_bytes(tx.signing_digest()), tx.signature);
}

}  // namespace

Address identity_auth_address() {
    static const Address a = contract_address("ZKBID/CONTRACT/identity-auth/v1");
    return a;
}

Address soul_cert_address() {
    static const Address a = contract_address("ZKBID/CONTRACT/soul-cert/v1");
    return a;
}

Bytes RegInfo::encode() const {
    ByteWriter w;
    w.u16(kRegInfoFmt);
    w.var_bytes(zkp);
    w.raw(id_hash);
    w.raw(secp256k1::encode(pk_seed));
    w.raw(encode_signature(sig_seed));
    return w.take();
}

std::optional<RegInfo> RegInfo::decode(const Bytes& data) {
    ByteReader r(data);
    if (r.u16() != kRegInfoFmt) return std::nullopt;
    RegInfo out;
    out.zkp = r.var_bytes();
    out.id_hash = r.fixed<32>();
    auto pk = secp256k1::decode(r.fixed<33>());
    auto sig = decode_signature(r.fixed<64>());
    if (!r.ok() || !r.at_end() || !pk || pk->is_infinity() || !sig) return std::nullopt;
    out.pk_seed = *pk;
    out.sig_seed = *sig;
    return out;
}

Bytes CerInfo::encode() const {
    ByteWriter w;
    w.u16(kCerInfoFmt);
    w.raw(secp256k1::encode(pk_soul));
    w.var_bytes(lrs::ring_encode(ring));
    w.var_bytes(sig.encode());
    return w.take();
}

std::optional<CerInfo> CerInfo::decode(const Bytes& data) {
    ByteReader r(data);
    if (r.u16() != kCerInfoFmt) return std::nullopt;
    auto pk = secp256k1::decode(r.fixed<33>());
    auto ring = lrs::ring_decode(r.var_bytes());
    auto sig = lrs::RingSignature::decode(r.var_bytes());
    if (!r.ok() || !r.at_end() || !pk || pk->is_infinity() || !ring || !sig) return std::nullopt;
    CerInfo out;
    out.pk_soul = *pk;
    out.ring = std::move(*ring);
    out.sig = std::move(*sig);
    return out;
}

Digest32 Transaction::signing_digest() const {
    ByteWriter w;
    w.u16(kTxFmt);
    w.raw(sender);
    w.raw(recipient);
    w.u64(nonce);
    w.var_bytes(data);
    return zkbid::digest(w.bytes());
}

Digest32 Transaction::digest() const { return zkbid::digest(encode()); }

Bytes Transaction::encode() const {
    ByteWriter w;
    w.u16(kTxFmt);
    w.raw(sender);
    w.raw(recipient);
    w.u64(nonce);
    w.var_bytes(data);
    w.raw(encode_signature(signature));
    return w.take();
}

std::optional<Transaction> Transaction::decode(const Bytes& data) {
    ByteReader r(data);
    if (r.u16() != kTxFmt) return std::nullopt;
    Transaction tx;
    tx.sender = r.fixed<20>();
    tx.recipient = r.fixed<20>();
    tx.nonce = r.u64();
    tx.data = r.var_bytes();
    auto sig = decode_signature(r.fixed<64>());
    if (!r.ok() || !r.at_end() || !sig) return std::nullopt;
    tx.signature = *sig;
    return tx;
}

Digest32 Block::digest() const { return zkbid::digest(encode()); }

Bytes Block::encode() const {
    ByteWriter w;
    w.u16(kBlockFmt);
    w.u64(height);
    w.raw(parent_hash);
    w.u32(uint32_t(txs.size()));
    for (const auto& tx : txs) w.var_bytes(tx.encode());
    w.raw(state_root);
    return w.take();
}

std::optional<Block> Block::decode(const Bytes& data) {
    ByteReader r(data);
    if (r.u16() != kBlockFmt) return std::nullopt;
    Block b;
    b.height = r.u64();
    b.parent_hash = r.fixed<32>();
    uint32_t n = r.u32();
    // every entry costs at least its length prefix, so larger counts are lies
    if (!r.ok() || n > r.remaining() / 4) return std::nullopt;
    b.txs.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        auto tx = Transaction::decode(r.var_bytes());
        if (!r.ok() || !tx) return std::nullopt;
        b.txs.push_back(std::move(*tx));
    }
    b.state_root = r.fixed<32>();
    if (!r.ok() || !r.at_end()) return std::nullopt;
    return b;
}

const char* status_name(TxStatus s) {
    switch (s) {
        case TxStatus::kAccepted: return "accepted";
        case TxStatus::kBadTarget: return "bad-target";
        case TxStatus::kMalformedPayload: return "malformed-payload";
        case TxStatus::kBadSignature: return "bad-signature";
        case TxStatus::kBadNonce: return "bad-nonce";
        case TxStatus::kDuplicateIdentity: return "duplicate-identity";
        case TxStatus::kInvalidProof: return "invalid-proof";
        case TxStatus::kInvalidSeedSignature: return "invalid-seed-signature";
        case TxStatus::kUnregisteredRingMember: return "unregistered-ring-member";
        case TxStatus::kInvalidRingSignature: return "invalid-ring-signature";
        case TxStatus::kDuplicateKeyImage: return "duplicate-key-image";
        case TxStatus::kDuplicateSoulKey: return "duplicate-soul-key";
    }
    return "unknown";
}

std::string Receipt::to_json_line() const {
    nlohmann::json j;
    j["tx"] = to_hex(tx_digest);
    j["height"] = height;
    j["status"] = status_name(status);
    return j.dump();
}

Bytes ChainConfig::encode() const {
    ByteWriter w;
    w.u16(kConfigFmt);
    w.u64(uint64_t(tau_fixed));
    w.u64(uint64_t(eps_norm));
    w.u32(block_capacity);
    w.var_bytes(verifier.encode());
    return w.take();
}

std::optional<ChainConfig> ChainConfig::decode(const Bytes& data) {
    ByteReader r(data);
    if (r.u16() != kConfigFmt) return std::nullopt;
    ChainConfig cfg;
    cfg.tau_fixed = int64_t(r.u64());
    cfg.eps_norm = int64_t(r.u64());
    cfg.block_capacity = r.u32();
    auto verifier = zk::VerifierConfig::decode(r.var_bytes());
    if (!r.ok() || !r.at_end() || !verifier || cfg.block_capacity == 0) return std::nullopt;
    cfg.verifier = std::move(*verifier);
    return cfg;
}

Digest32 ChainConfig::digest() const { return zkbid::digest(encode()); }

Bytes ChainState::canonical_bytes(const ChainConfig& cfg) const {
    ByteWriter w;
    w.u16(kStateFmt);
    w.raw(cfg.digest());
    w.u32(uint32_t(seed_store.size()));
    for (const auto& [id, entry] : seed_store) {
        w.raw(id);
        w.raw(entry.first);
        w.var_bytes(entry.second);
    }
    w.u32(uint32_t(key_images.size()));
    for (const auto& img : key_images) w.raw(img);
    w.u32(uint32_t(soul_store.size()));
    for (const auto& pk : soul_store) w.raw(pk);
    w.u32(uint32_t(account_nonces.size()));
    for (const auto& [addr, n] : account_nonces) {
        w.raw(addr);
        w.u64(n);
    }
    return w.take();
}

Digest32 ChainState::root(const ChainConfig& cfg) const {
    return zkbid::digest(canonical_bytes(cfg));
}

Chain::Chain(ChainConfig cfg) : cfg_(std::move(cfg)) {}

Digest32 Chain::genesis_hash() const { return cfg_.digest(); }

Digest32 Chain::tip_hash() const {
    return blocks_.empty() ? genesis_hash() : blocks_.back().digest();
}

bool Chain::submit_tx(const Transaction& tx) {
    return seen_.insert(tx.digest()).second ? (pool_.push_back(tx), true) : false;
}

snark::PublicInputs statement_for(const ChainConfig& cfg, const Digest32& id_hash,
                                  const GroupElement& pk_seed) {
    snark::PublicInputs pub;
    pub.tau_fixed = cfg.tau_fixed;
    pub.eps_norm = cfg.eps_norm;
    pub.id_hash = id_hash;
    auto enc = secp256k1::encode(pk_seed);
    pub.seed_pk_digest = digest(enc.data(), enc.size());
    return pub;
}

uint64_t Chain::nonce_of(const Address& sender) const {
    auto it = state_.account_nonces.find(sender);
    return it == state_.account_nonces.end() ? 0 : it->second;
}

TxStatus Chain::exec_identity_auth(const Transaction& tx) {
    auto reg = RegInfo::decode(tx.data);
    if (!reg) return TxStatus::kMalformedPayload;
    if (!verify_tx_author(tx, reg->pk_seed)) return TxStatus::kBadSignature;
    // rejection paths must stay read-only or replay diverges
    if (tx.nonce != nonce_of(tx.sender)) return TxStatus::kBadNonce;

    if (state_.seed_store.count(reg->id_hash)) return TxStatus::kDuplicateIdentity;
    auto statement = statement_for(cfg_, reg->id_hash, reg->pk_seed);
    if (!zk::verify_face_proof(cfg_.verifier, statement, reg->zkp)) return TxStatus::kInvalidProof;
    if (!account_verify(reg->pk_seed, digest_bytes(reg->id_hash), reg->sig_seed))
        return TxStatus::kInvalidSeedSignature;

    EncodedKey pk_enc = secp256k1::encode(reg->pk_seed);
    state_.seed_store.emplace(reg->id_hash, std::make_pair(pk_enc, reg->zkp));
    state_.seed_keys.insert(pk_enc);
    state_.account_nonces[tx.sender] += 1;
    return TxStatus::kAccepted;
}

TxStatus Chain::exec_soul_cert(const Transaction& tx) {
    auto cer = CerInfo::decode(tx.data);
    if (!cer) return TxStatus::kMalformedPayload;
    if (!verify_tx_author(tx, cer->pk_soul)) return TxStatus::kBadSignature;
    if (tx.nonce != nonce_of(tx.sender)) return TxStatus::kBadNonce;

    for (const auto& member : cer->ring)
        if (!state_.seed_keys.count(secp256k1::encode(member)))
            return TxStatus::kUnregisteredRingMember;
    auto soul_enc = secp256k1::encode(cer->pk_soul);
    if (!lrs::ring_verify(cer->ring, Bytes(soul_enc.begin(), soul_enc.end()), cer->sig))
        return TxStatus::kInvalidRingSignature;
    EncodedKey image_enc = secp256k1::encode(cer->sig.image);
    if (state_.key_images.count(image_enc)) return TxStatus::kDuplicateKeyImage;
    if (state_.soul_store.count(soul_enc)) return TxStatus::kDuplicateSoulKey;

    state_.soul_store.insert(soul_enc);
    state_.key_images.insert(image_enc);
    state_.account_nonces[tx.sender] += 1;
    return TxStatus::kAccepted;
}

TxStatus Chain::execute_tx(const Transaction& tx) {
    if (tx.recipient == identity_auth_address()) return exec_identity_auth(tx);
    if (tx.recipient == soul_cert_address()) return exec_soul_cert(tx);
    return TxStatus::kBadTarget;
}

Block Chain::produce_block() {
    Block b;
    b.height = blocks_.size();
    b.parent_hash = tip_hash();
    size_t take = std::min<size_t>(pool_.size(), cfg_.block_capacity);
    for (size_t i = 0; i < take; ++i) {
        const Transaction& tx = pool_[i];
        TxStatus status = execute_tx(tx);
        receipt_index_[tx.digest()] = receipts_.size();
        receipts_.push_back({tx.digest(), b.height, status});
        if (status == TxStatus::kAccepted) b.txs.push_back(tx);
    }
    pool_.erase(pool_.begin(), pool_.begin() + take);
    b.state_root = state_.root(cfg_);
    blocks_.push_back(b);
    return b;
}

void Chain::apply_block(const Block& b) {
    if (b.height != blocks_.size() || b.parent_hash != tip_hash())
        throw BrokenLinkage("block does not extend the current tip");
    for (const auto& tx : b.txs) {
        TxStatus status = execute_tx(tx);
        if (status != TxStatus::kAccepted)
            throw StateRootMismatch(std::string("block carries a transaction that fails execution: ") +
                                    status_name(status));
        Digest32 d = tx.digest();
        receipt_index_[d] = receipts_.size();
        receipts_.push_back({d, b.height, status});
        seen_.insert(d);
        pool_.erase(std::remove_if(pool_.begin(), pool_.end(),
                                   [&](const Transaction& p) { return p.digest() == d; }),
                    pool_.end());
    }
    if (state_.root(cfg_) != b.state_root)
        throw StateRootMismatch("state root does not match the block header");
    blocks_.push_back(b);
}

const Receipt* Chain::find_receipt(const Digest32& tx_digest) const {
    auto it = receipt_index_.find(tx_digest);
    return it == receipt_index_.end() ? nullptr : &receipts_[it->second];
}

Bytes Chain::serialize() const {
    ByteWriter w;
    w.u16(kChainFileFmt);
    w.var_bytes(cfg_.encode());
    w.u32(uint32_t(blocks_.size()));
    for (const auto& b : blocks_) w.var_bytes(b.encode());
    return w.take();
}

Chain Chain::replay(const ChainConfig& cfg, const std::vector<Block>& blocks) {
    Chain c(cfg);
    for (const auto& b : blocks) c.apply_block(b);
    return c;
}

Chain Chain::deserialize(const Bytes& data) {
    ByteReader r(data);
    if (r.u16() != kChainFileFmt) throw IoError("not a chain file");
    auto cfg = ChainConfig::decode(r.var_bytes());
    if (!r.ok() || !cfg) throw IoError("chain file carries a malformed config");
    uint32_t n = r.u32();
    if (!r.ok() || n > r.remaining() / 4)
        throw IoError("chain file carries a malformed block count");
    std::vector<Block> blocks;
    blocks.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        auto b = Block::decode(r.var_bytes());
        if (!r.ok() || !b) throw IoError("chain file carries a malformed block");
        blocks.push_back(std::move(*b));
    }
    if (!r.at_end()) throw IoError("trailing bytes after chain file");
    return replay(*cfg, blocks);
}

Transaction build_registration_tx(const Account& seed, const RegInfo& reg, uint64_t nonce,
                                  Rng& rng) {
    if (secp256k1::encode(reg.pk_seed) != secp256k1::encode(seed.pk) ||
        derive_address(reg.pk_seed) != seed.addr)
        throw InconsistentRegInfo("registration bundle names a different seed key");
    if (!account_verify(reg.pk_seed, digest_bytes(reg.id_hash), reg.sig_seed))
        throw InconsistentRegInfo("seed signature over the identity hash does not check out");
    if (reg.zkp.empty()) throw InconsistentRegInfo("registration bundle carries no proof");
    Transaction tx;
    tx.sender = seed.addr;
    tx.recipient = identity_auth_address();
    tx.nonce = nonce;
    tx.data = reg.encode();
    tx.signature = account_sign(seed.sk, digest_bytes(tx.signing_digest()), rng);
    return tx;
}

Transaction build_certification_tx(const Account& soul, const CerInfo& cer, uint64_t nonce,
                                   Rng& rng) {
    if (secp256k1::encode(cer.pk_soul) != secp256k1::encode(soul.pk))
        throw InconsistentRegInfo("certification bundle names a different soul key");
    auto soul_enc = secp256k1::encode(cer.pk_soul);
    if (!lrs::ring_verify(cer.ring, Bytes(soul_enc.begin(), soul_enc.end()), cer.sig))
        throw InconsistentRegInfo("ring signature over the soul key does not check out");
    Transaction tx;
    tx.sender = soul.addr;
    tx.recipient = soul_cert_address();
    tx.nonce = nonce;
    tx.data = cer.encode();
    tx.signature = account_sign(soul.sk, digest_bytes(tx.signing_digest()), rng);
    return tx;
}

}  // namespace zkbid::chain
