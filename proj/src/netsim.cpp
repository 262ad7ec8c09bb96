#include "zkbid/netsim.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "zkbid/errors.hpp"

namespace zkbid::netsim {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

size_t topology_diameter(Topology t, size_t n) {
    if (n <= 1) return 0;
    switch (t) {
        case Topology::kFull: return 1;
        case Topology::kRing: return n / 2;
        case Topology::kStar: return n == 2 ? 1 : 2;
    }
    return n;
}

}  // namespace

const char* topology_name(Topology t) {
    switch (t) {
        case Topology::kFull: return "full";
        case Topology::kRing: return "ring";
        case Topology::kStar: return "star";
    }
    return "unknown";
}

std::optional<Topology> topology_from_name(const std::string& name) {
    if (name == "full") return Topology::kFull;
    if (name == "ring") return Topology::kRing;
    if (name == "star") return Topology::kStar;
    return std::nullopt;
}

std::string SimConfig::to_json() const {
    nlohmann::json j;
    j["n_nodes"] = n_nodes;
    j["topology"] = topology_name(topology);
    j["block_interval_ms"] = block_interval_ms;
    j["link_delay_ms"] = link_delay_ms;
    j["link_jitter_ms"] = link_jitter_ms;
    j["rng_seed"] = rng_seed;
    j["produce_empty_blocks"] = produce_empty_blocks;
    j["max_events"] = max_events;
    return j.dump(2);
}

std::optional<SimConfig> SimConfig::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    SimConfig cfg;
    try {
        if (j.contains("n_nodes")) cfg.n_nodes = j.at("n_nodes").get<size_t>();
        if (j.contains("topology")) {
            auto t = topology_from_name(j.at("topology").get<std::string>());
            if (!t) return std::nullopt;
            cfg.topology = *t;
        }
        if (j.contains("block_interval_ms"))
            cfg.block_interval_ms = j.at("block_interval_ms").get<uint64_t>();
        if (j.contains("link_delay_ms")) cfg.link_delay_ms = j.at("link_delay_ms").get<uint64_t>();
        if (j.contains("link_jitter_ms"))
            cfg.link_jitter_ms = j.at("link_jitter_ms").get<uint64_t>();
        if (j.contains("rng_seed")) cfg.rng_seed = j.at("rng_seed").get<uint64_t>();
        if (j.contains("produce_empty_blocks"))
            cfg.produce_empty_blocks = j.at("produce_empty_blocks").get<bool>();
        if (j.contains("max_events")) cfg.max_events = j.at("max_events").get<uint64_t>();
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    return cfg;
}

Simulation::Simulation(const SimConfig& sim_cfg, chain::ChainConfig chain_cfg) : cfg_(sim_cfg) {
    if (cfg_.n_nodes == 0) throw ConfigError("simulation needs at least one node");
    if (cfg_.block_interval_ms == 0) throw ConfigError("block interval must be positive");
    size_t diameter = topology_diameter(cfg_.topology, cfg_.n_nodes);
    if (diameter * (cfg_.link_delay_ms + cfg_.link_jitter_ms) >= cfg_.block_interval_ms)
        throw ConfigError("worst-case propagation must finish inside one block interval");

    nodes_.reserve(cfg_.n_nodes);
    for (size_t i = 0; i < cfg_.n_nodes; ++i) nodes_.emplace_back(chain_cfg);
    neighbors_.assign(cfg_.n_nodes, {});
    seen_blocks_.assign(cfg_.n_nodes, {});

    auto connect = [&](size_t a, size_t b) {
        if (a == b) return;
        neighbors_[a].push_back(b);
        neighbors_[b].push_back(a);
        links_.emplace_back(std::min(a, b), std::max(a, b));
    };
    switch (cfg_.topology) {
        case Topology::kFull:
            for (size_t i = 0; i < cfg_.n_nodes; ++i)
                for (size_t j = i + 1; j < cfg_.n_nodes; ++j) connect(i, j);
            break;
        case Topology::kRing:
            if (cfg_.n_nodes == 2)
                connect(0, 1);
            else
                for (size_t i = 0; i < cfg_.n_nodes && cfg_.n_nodes > 1; ++i)
                    connect(i, (i + 1) % cfg_.n_nodes);
            break;
        case Topology::kStar:
            for (size_t i = 1; i < cfg_.n_nodes; ++i) connect(0, i);
            break;
    }

    schedule({cfg_.block_interval_ms, EventKind::kBlockProduction, seq_++, 0, nullptr, nullptr});
}

const chain::Chain& Simulation::node(size_t i) const {
    if (i >= nodes_.size()) throw UnknownNode("node index out of range");
    return nodes_[i];
}

void Simulation::schedule(Event ev) { queue_.push(std::move(ev)); }

uint64_t Simulation::link_latency(size_t src, size_t dst) {
    uint64_t jitter = 0;
    if (cfg_.link_jitter_ms)
        jitter = splitmix64(cfg_.rng_seed ^ (uint64_t(src) << 40) ^ (uint64_t(dst) << 20) ^
                            ++send_ctr_) %
                 (cfg_.link_jitter_ms + 1);
    return cfg_.link_delay_ms + jitter;
}

void Simulation::flood_tx(size_t from, const std::shared_ptr<const chain::Transaction>& tx) {
    for (size_t to : neighbors_[from]) {
        schedule({now_ + link_latency(from, to), EventKind::kTxDelivery, seq_++, to, tx, nullptr});
        ++in_flight_;
    }
}

void Simulation::flood_block(size_t from, const std::shared_ptr<const chain::Block>& block) {
    for (size_t to : neighbors_[from]) {
        schedule(
            {now_ + link_latency(from, to), EventKind::kBlockDelivery, seq_++, to, nullptr, block});
        ++in_flight_;
    }
}

void Simulation::submit_tx(size_t node, const chain::Transaction& tx) {
    if (node >= nodes_.size()) throw UnknownNode("node index out of range");
    if (nodes_[node].submit_tx(tx))
        flood_tx(node, std::make_shared<const chain::Transaction>(tx));
}

void Simulation::handle(const Event& ev) {
    switch (ev.kind) {
        case EventKind::kTxDelivery:
            --in_flight_;
            if (nodes_[ev.node].submit_tx(*ev.tx)) flood_tx(ev.node, ev.tx);
            break;
        case EventKind::kBlockProduction: {
            size_t proposer = size_t((slot_ - 1) % cfg_.n_nodes);
            ++slot_;
            schedule({slot_ * cfg_.block_interval_ms, EventKind::kBlockProduction, seq_++,
                      size_t((slot_ - 1) % cfg_.n_nodes), nullptr, nullptr});
            chain::Chain& c = nodes_[proposer];
            if (c.pool_size() == 0 && !cfg_.produce_empty_blocks) break;
            auto block = std::make_shared<const chain::Block>(c.produce_block());
            seen_blocks_[proposer].insert(block->digest());
            produced_.push_back({ev.time, proposer, block->height, block->txs.size()});
            if (on_block) on_block(proposer, *block);
            flood_block(proposer, block);
            break;
        }
        case EventKind::kBlockDelivery: {
            --in_flight_;
            if (!seen_blocks_[ev.node].insert(ev.block->digest()).second) break;
            nodes_[ev.node].apply_block(*ev.block);
            if (on_block) on_block(ev.node, *ev.block);
            flood_block(ev.node, ev.block);
            break;
        }
    }
}

bool Simulation::step() {
    if (queue_.empty()) return false;
    if (++processed_ > cfg_.max_events) throw SimTimeout("event budget exhausted");
    Event ev = queue_.top();
    queue_.pop();
    now_ = ev.time;
    handle(ev);
    return true;
}

bool Simulation::quiescent() const {
    if (in_flight_) return false;
    for (const auto& n : nodes_)
        if (n.pool_size()) return false;
    return true;
}

void Simulation::run_until_height(uint64_t height) {
    auto reached = [&] {
        for (const auto& n : nodes_)
            if (n.height() < height) return false;
        return true;
    };
    while (!reached())
        if (!step()) throw SimTimeout("queue drained before the target height");
}

void Simulation::run_until_idle() {
    while (!quiescent())
        if (!step()) throw SimTimeout("queue drained with work outstanding");
}

void Simulation::run_for(uint64_t ms) {
    uint64_t deadline = now_ + ms;
    while (!queue_.empty() && queue_.top().time <= deadline) step();
    now_ = deadline;
}

LatencyPoint measure_iaac_latency(const SimConfig& sim_cfg, const chain::ChainConfig& chain_cfg,
                                  const std::vector<PreparedUser>& users, size_t ring_size,
                                  uint64_t rng_seed) {
    Simulation sim(sim_cfg, chain_cfg);
    Rng rng(rng_seed);
    const size_t n = users.size();

    std::map<Digest32, size_t> reg_of, cert_of;
    std::vector<bool> cert_submitted(n, false);
    std::vector<uint64_t> done(n, UINT64_MAX);
    size_t completed = 0;

    sim.on_block = [&](size_t node, const chain::Block& b) {
        for (const auto& tx : b.txs) {
            Digest32 d = tx.digest();
            if (auto it = cert_of.find(d); it != cert_of.end()) {
                if (done[it->second] == UINT64_MAX) {
                    done[it->second] = sim.now_ms();
                    ++completed;
                }
                continue;
            }
            auto it = reg_of.find(d);
            if (it == reg_of.end()) continue;
            const PreparedUser& u = users[it->second];
            if (node != u.home_node || cert_submitted[it->second]) continue;

            std::vector<GroupElement> registry;
            for (const auto& enc : sim.node(node).state().seed_keys)
                registry.push_back(*secp256k1::decode(enc));
            size_t n_eff = std::max<size_t>(1, std::min(ring_size, registry.size()));
            chain::CerInfo cer;
            cer.pk_soul = u.soul.pk;
            cer.ring = lrs::sample_ring(registry, u.seed.pk, n_eff, rng);
            auto soul_enc = secp256k1::encode(u.soul.pk);
            cer.sig =
                lrs::ring_sign(cer.ring, u.seed, Bytes(soul_enc.begin(), soul_enc.end()), rng);
            chain::Transaction cert_tx = chain::build_certification_tx(u.soul, cer, 0, rng);
            cert_of[cert_tx.digest()] = it->second;
            cert_submitted[it->second] = true;
            sim.submit_tx(node, cert_tx);
        }
    };

    for (size_t i = 0; i < n; ++i) {
        chain::Transaction tx = chain::build_registration_tx(users[i].seed, users[i].reg, 0, rng);
        reg_of[tx.digest()] = i;
        sim.submit_tx(users[i].home_node, tx);
    }

    while (completed < n)
        if (!sim.step()) throw SimTimeout("queue drained before every user completed");

    std::vector<uint64_t> lat(done);
    std::sort(lat.begin(), lat.end());
    LatencyPoint p;
    p.n_users = n;
    p.max_ms = double(lat.back());
    p.median_ms = n % 2 ? double(lat[n / 2]) : (double(lat[n / 2 - 1]) + double(lat[n / 2])) / 2.0;
    double sum = 0;
    for (uint64_t v : lat) sum += double(v);
    p.mean_ms = sum / double(n);
    for (const auto& pb : sim.production_log())
        if (pb.n_txs) ++p.blocks;
    return p;
}

std::string latency_csv(const std::vector<LatencyPoint>& points) {
    std::string out = "n_users,mean_ms,median_ms,max_ms,blocks\n";
    char line[160];
    for (const auto& p : points) {
        std::snprintf(line, sizeof line, "%zu,%.1f,%.1f,%.1f,%llu\n", p.n_users, p.mean_ms,
                      p.median_ms, p.max_ms, (unsigned long long)p.blocks);
        out += line;
    }
    return out;
}

void write_latency_plot(const std::filesystem::path& file,
                        const std::vector<LatencyPoint>& points) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    out << "# users mean_latency_ms\n";
    for (const auto& p : points) out << p.n_users << " " << p.mean_ms << "\n";
}

}  // namespace zkbid::netsim
