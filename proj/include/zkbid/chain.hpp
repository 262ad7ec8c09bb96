#pragma once

#include <map>
#include <set>

#include "zkbid/accounts.hpp"
#include "zkbid/facematch_circuit.hpp"
#include "zkbid/lrs.hpp"
#include "zkbid/zk.hpp"

namespace zkbid::chain {

// fixed addresses of the two native contracts
Address identity_auth_address();
Address soul_cert_address();

// Registration bundle: proof that some face pair matches, the identity hash
// it is bound to, the fresh seed key and that key's signature over the hash.
struct RegInfo {
    Bytes zkp;
    Digest32 id_hash{};
    GroupElement pk_seed;
    AccountSignature sig_seed;

    Bytes encode() const;
    static std::optional<RegInfo> decode(const Bytes& data);
};

// Certification bundle: a soul key endorsed by a ring of seed keys.
struct CerInfo {
    GroupElement pk_soul;
    lrs::Ring ring;
    lrs::RingSignature sig;  // over the encoded soul key

    Bytes encode() const;
    static std::optional<CerInfo> decode(const Bytes& data);
};

struct Transaction {
    Address sender{};
    Address recipient{};
    uint64_t nonce = 0;
    Bytes data;
    AccountSignature signature;  // over signing_digest(), by the sender key

    Digest32 signing_digest() const;
    Digest32 digest() const;  // includes the signature; gossip/dedup id
    Bytes encode() const;
    static std::optional<Transaction> decode(const Bytes& data);
};

struct Block {
    uint64_t height = 0;
    Digest32 parent_hash{};
    std::vector<Transaction> txs;  // accepted transactions only
    Digest32 state_root{};

    Digest32 digest() const;
    Bytes encode() const;
    static std::optional<Block> decode(const Bytes& data);
};

enum class TxStatus : uint8_t {
    kAccepted = 0,
    kBadTarget,
    kMalformedPayload,
    kBadSignature,
    kBadNonce,
    kDuplicateIdentity,
    kInvalidProof,
    kInvalidSeedSignature,
    kUnregisteredRingMember,
    kInvalidRingSignature,
    kDuplicateKeyImage,
    kDuplicateSoulKey,
};
const char* status_name(TxStatus s);

struct Receipt {
    Digest32 tx_digest{};
    uint64_t height = 0;  // block height at which the tx was processed
    TxStatus status = TxStatus::kAccepted;

    std::string to_json_line() const;
};

struct ChainConfig {
    int64_t tau_fixed = 0;
    int64_t eps_norm = kNormTolerance;
    uint32_t block_capacity = 50;
    zk::VerifierConfig verifier;

    Bytes encode() const;
    static std::optional<ChainConfig> decode(const Bytes& data);
    Digest32 digest() const;
};

using EncodedKey = std::array<uint8_t, 33>;

// Append-only contract state. Everything is stored in canonical encoded
// form so serialization and equality stay byte-exact across nodes.
struct ChainState {
    std::map<Digest32, std::pair<EncodedKey, Bytes>> seed_store;  // id_hash -> (pk_seed, zkp)
    std::set<EncodedKey> seed_keys;                               // derived index over pk_seed
    std::set<EncodedKey> key_images;
    std::set<EncodedKey> soul_store;
    std::map<Address, uint64_t> account_nonces;

    Bytes canonical_bytes(const ChainConfig& cfg) const;
    Digest32 root(const ChainConfig& cfg) const;
};

// Single node's ledger: pool, state, blocks and receipt log. Blocks carry
// only accepted transactions; rejections live in receipts. Transport checks
// run in the order target, payload, signature, nonce; each contract then
// applies its own documented check order.
class Chain {
public:
    explicit Chain(ChainConfig cfg);

    const ChainConfig& config() const { return cfg_; }
    const ChainState& state() const { return state_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    const std::vector<Receipt>& receipts() const { return receipts_; }
    uint64_t height() const { return blocks_.size(); }
    Digest32 genesis_hash() const;
    Digest32 tip_hash() const;
    Digest32 state_root() const { return state_.root(cfg_); }

    // false when the tx digest was already seen (pool or processed)
    bool submit_tx(const Transaction& tx);
    size_t pool_size() const { return pool_.size(); }

    // packs up to block_capacity pool txs in arrival order; rejected ones
    // are dropped with receipts and never enter the block
    Block produce_block();

    // follower path: validates linkage, executes, compares the state root
    void apply_block(const Block& b);

    const Receipt* find_receipt(const Digest32& tx_digest) const;

    // append-only persistence of config + blocks
    Bytes serialize() const;
    static Chain replay(const ChainConfig& cfg, const std::vector<Block>& blocks);
    static Chain deserialize(const Bytes& data);  // parse + full replay

private:
    TxStatus execute_tx(const Transaction& tx);
    TxStatus exec_identity_auth(const Transaction& tx);
    TxStatus exec_soul_cert(const Transaction& tx);
    uint64_t nonce_of(const Address& sender) const;

    ChainConfig cfg_;
    ChainState state_;
    std::vector<Block> blocks_;
    std::vector<Transaction> pool_;
    std::set<Digest32> seen_;
    std::vector<Receipt> receipts_;
    std::map<Digest32, size_t> receipt_index_;
};

// public inputs the identity-auth contract checks a proof against
snark::PublicInputs statement_for(const ChainConfig& cfg, const Digest32& id_hash,
                                  const GroupElement& pk_seed);

// Throws InconsistentRegInfo when the bundle does not belong to the account.
Transaction build_registration_tx(const Account& seed, const RegInfo& reg, uint64_t nonce,
                                  Rng& rng);
Transaction build_certification_tx(const Account& soul, const CerInfo& cer, uint64_t nonce,
                                   Rng& rng);

}  // namespace zkbid::chain
