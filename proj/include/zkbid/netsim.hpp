#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <queue>

#include "zkbid/chain.hpp"

namespace zkbid::netsim {

enum class Topology : uint8_t { kFull = 0, kRing = 1, kStar = 2 };

const char* topology_name(Topology t);
std::optional<Topology> topology_from_name(const std::string& name);

struct SimConfig {
    size_t n_nodes = 6;
    Topology topology = Topology::kFull;
    uint64_t block_interval_ms = 1000;
    uint64_t link_delay_ms = 20;
    uint64_t link_jitter_ms = 10;
    uint64_t rng_seed = 0;
    bool produce_empty_blocks = true;
    uint64_t max_events = 1u << 22;  // event budget before SimTimeout

    std::string to_json() const;
    static std::optional<SimConfig> from_json(const std::string& text);
};

struct ProducedBlock {
    uint64_t time_ms = 0;
    size_t node = 0;
    uint64_t height = 0;
    size_t n_txs = 0;
};

// Deterministic discrete-event network of identical chains. Blocks are
// proposed round-robin at exact multiples of the interval; transactions and
// blocks flood the topology with per-message seeded jitter. Two simulations
// built from the same configs and fed the same submissions replay the exact
// same event sequence.
class Simulation {
public:
    Simulation(const SimConfig& sim_cfg, chain::ChainConfig chain_cfg);

    size_t n_nodes() const { return nodes_.size(); }
    uint64_t now_ms() const { return now_; }
    const chain::Chain& node(size_t i) const;
    const std::vector<std::pair<size_t, size_t>>& links() const { return links_; }
    const std::vector<ProducedBlock>& production_log() const { return produced_; }

    // fires on every append, for the proposer and each follower alike
    std::function<void(size_t node, const chain::Block&)> on_block;

    void submit_tx(size_t node, const chain::Transaction& tx);

    bool step();  // processes one event; false when only the far future remains
    void run_until_height(uint64_t height);  // every node at that height
    void run_until_idle();  // pools drained and no message in flight
    void run_for(uint64_t ms);

private:
    enum class EventKind : uint8_t { kTxDelivery = 0, kBlockProduction = 1, kBlockDelivery = 2 };
    struct Event {
        uint64_t time;
        EventKind kind;
        uint64_t seq;
        size_t node;
        std::shared_ptr<const chain::Transaction> tx;
        std::shared_ptr<const chain::Block> block;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            return std::tie(a.time, a.kind, a.seq) > std::tie(b.time, b.kind, b.seq);
        }
    };

    void schedule(Event ev);
    uint64_t link_latency(size_t src, size_t dst);
    void flood_tx(size_t from, const std::shared_ptr<const chain::Transaction>& tx);
    void flood_block(size_t from, const std::shared_ptr<const chain::Block>& block);
    void handle(const Event& ev);
    bool quiescent() const;

    SimConfig cfg_;
    std::vector<chain::Chain> nodes_;
    std::vector<std::vector<size_t>> neighbors_;
    std::vector<std::pair<size_t, size_t>> links_;
    std::vector<std::set<Digest32>> seen_blocks_;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::vector<ProducedBlock> produced_;
    uint64_t now_ = 0;
    uint64_t seq_ = 0;
    uint64_t slot_ = 1;
    uint64_t send_ctr_ = 0;
    size_t in_flight_ = 0;
    uint64_t processed_ = 0;
};

// One enrolled user ready to hit the network: accounts, a registration
// bundle, and the node it talks to.
struct PreparedUser {
    Account seed;
    Account soul;
    chain::RegInfo reg;
    size_t home_node = 0;
};

struct LatencyPoint {
    size_t n_users = 0;
    double mean_ms = 0;
    double median_ms = 0;
    double max_ms = 0;
    uint64_t blocks = 0;  // non-empty blocks consumed
};

// Full account-issuance round trip under load: every user submits its
// registration at t=0 and submits its certification the moment its home
// node holds the registration in a block. A user is complete when the
// certification lands in a produced block. Rings take min(ring_size,
// registered keys) members, decoys drawn from the home node's registry.
LatencyPoint measure_iaac_latency(const SimConfig& sim_cfg, const chain::ChainConfig& chain_cfg,
                                  const std::vector<PreparedUser>& users, size_t ring_size,
                                  uint64_t rng_seed);

std::string latency_csv(const std::vector<LatencyPoint>& points);
// two-column "users mean_ms" table, ready for gnuplot
void write_latency_plot(const std::filesystem::path& file,
                        const std::vector<LatencyPoint>& points);

}  // namespace zkbid::netsim
