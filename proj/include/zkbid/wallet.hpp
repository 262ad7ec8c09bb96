#pragma once

#include <filesystem>

#include "zkbid/chain.hpp"
#include "zkbid/facematch.hpp"

namespace zkbid::wallet {

using RawFeatures = std::array<double, kFeatureDim>;

struct IdentityInput {
    std::string id_number;
    RawFeatures feature_live{};
    RawFeatures feature_card{};
};

// digest("ZKBID/ID/v1" || utf-8 id); raw id strings never leave the wallet
Digest32 identity_hash(const std::string& id_number);

// {"version":1,"features":[...]} with exactly 128 reals
void save_raw_features(const std::filesystem::path& file, const RawFeatures& v);
RawFeatures load_raw_features(const std::filesystem::path& file);

struct WalletPaths {
    std::filesystem::path home;

    std::filesystem::path chain_dir() const { return home / "chain"; }
    std::filesystem::path chain_file() const { return chain_dir() / "blocks.bin"; }
    std::filesystem::path receipts_file() const { return chain_dir() / "receipts.jsonl"; }
    std::filesystem::path prover_file() const { return home / "prover.bin"; }
    std::filesystem::path wallet_dir() const { return home / "wallet"; }
    std::filesystem::path vectors_dir() const { return wallet_dir() / "vectors"; }
    std::filesystem::path seed_account_file() const { return wallet_dir() / "seed_account.json"; }
    std::filesystem::path soul_account_file() const { return wallet_dir() / "soul_account.json"; }
    std::filesystem::path reg_info_file() const { return wallet_dir() / "reg_info.bin"; }
    std::filesystem::path cer_info_file() const { return wallet_dir() / "cer_info.bin"; }
    std::filesystem::path live_vector_file() const { return vectors_dir() / "live.json"; }
    std::filesystem::path card_vector_file() const { return vectors_dir() / "card.json"; }
};

// User-side orchestration over a wallet directory with an embedded
// single-node chain. Each command loads what it needs from disk, acts, and
// persists, so CLI invocations compose. Secret keys live only in the wallet
// files, never in command output.
class Wallet {
public:
    explicit Wallet(std::filesystem::path home) : paths_{std::move(home)} {}

    const WalletPaths& paths() const { return paths_; }
    bool is_set_up() const;

    // fresh chain genesis plus prover materials; refuses to clobber
    void setup(double tau, zk::Backend backend, Rng& rng);

    // face-match gate, then seed account + proof + bundle; on FaceMismatch
    // (or any earlier failure) no artifact is written
    chain::RegInfo enroll(const IdentityInput& input, Rng& rng);
    bool is_enrolled() const;

    // builds and submits the registration tx, mines until its receipt lands,
    // persists chain + receipt
    chain::Receipt register_identity(Rng& rng);

    // soul account + ring signature over its key, then tx as with register;
    // ring decoys come from the current registry snapshot
    chain::Receipt certify(size_t ring_size, Rng& rng);

    struct Status {
        uint64_t height = 0;
        size_t seeds = 0;
        size_t souls = 0;
        size_t images = 0;
        bool enrolled = false;
        bool certified = false;
    };
    Status status() const;

    chain::Chain load_chain() const;  // IoError when not set up

private:
    void save_chain(const chain::Chain& c) const;
    void append_receipt(const chain::Receipt& r) const;
    std::pair<zk::Backend, Bytes> load_prover_blob() const;
    chain::Receipt submit_and_mine(chain::Chain& c, const chain::Transaction& tx) const;

    WalletPaths paths_;
};

// operation timing rows, in a fixed report order
struct BenchRow {
    std::string name;
    double ms = 0;
};
std::vector<BenchRow> run_operation_bench(zk::Backend backend, uint64_t rng_seed);
std::string bench_table(const std::vector<BenchRow>& rows);

}  // namespace zkbid::wallet
