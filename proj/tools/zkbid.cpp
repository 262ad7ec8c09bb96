#include <cstdlib>
#include <iostream>
#include <string_view>

#include <CLI11.hpp>

#include "zkbid/errors.hpp"
#include "zkbid/hashing.hpp"
#include "zkbid/netsim.hpp"
#include "zkbid/wallet.hpp"

using namespace zkbid;

namespace {

int exit_code_for(chain::TxStatus s) {
    switch (s) {
        case chain::TxStatus::kAccepted: return 0;
        case chain::TxStatus::kInvalidProof: return 3;
        case chain::TxStatus::kDuplicateIdentity:
        case chain::TxStatus::kDuplicateKeyImage:
        case chain::TxStatus::kDuplicateSoulKey: return 4;
        case chain::TxStatus::kUnregisteredRingMember:
        case chain::TxStatus::kInvalidRingSignature: return 5;
        default: return 6;  // transport and signature classes
    }
}

// reusing one numeric seed across subcommands must not replay key material,
// or enroll and certify would mint the same keypair and link the accounts
Rng make_rng(uint64_t seed, std::string_view domain) {
    if (!seed) return Rng::from_entropy();
    Bytes m(domain.begin(), domain.end());
    for (int i = 0; i < 8; ++i) m.push_back(uint8_t(seed >> (8 * i)));
    Digest32 d = digest(m);
    uint64_t folded = 0;
    for (int i = 0; i < 8; ++i) folded |= uint64_t(d[i]) << (8 * i);
    return Rng(folded);
}

std::filesystem::path default_home() {
    if (const char* env = std::getenv("ZKBID_HOME")) return env;
    if (const char* home = std::getenv("HOME")) return std::filesystem::path(home) / ".zkbid";
    return ".zkbid";
}

int print_receipt(const chain::Receipt& r) {
    std::cout << "receipt: " << r.to_json_line() << "\n";
    std::cout << "status: " << chain::status_name(r.status) << "\n";
    return exit_code_for(r.status);
}

void make_demo_pair(uint64_t seed, bool impostor, wallet::RawFeatures& live,
                    wallet::RawFeatures& card) {
    Rng rng(seed ? seed : 1);
    double norm2 = 0;
    for (auto& x : live) {
        x = rng.gaussian();
        norm2 += x * x;
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : live) x *= inv;
    if (impostor) {
        for (auto& x : card) x = rng.gaussian();
    } else {
        // keep the perturbation norm near 0.05 so the pair stays a match
        double sigma = 0.05 / std::sqrt(double(kFeatureDim));
        for (size_t i = 0; i < kFeatureDim; ++i) card[i] = live[i] + sigma * rng.gaussian();
    }
}

struct SweepArgs {
    std::vector<size_t> users;
    size_t ring_size = 11;
    size_t n_nodes = 6;
    uint32_t capacity = 50;
    std::string csv_out;
    std::string plot_out;
};

int run_bench(zk::Backend backend, uint64_t seed, const SweepArgs& sweep) {
    std::cout << wallet::bench_table(wallet::run_operation_bench(backend, seed ? seed : 7))
              << std::flush;
    if (sweep.users.empty()) return 0;

    Rng rng = make_rng(seed, "bench");
    auto materials = zk::face_proof_setup(backend, rng);
    auto prover = zk::FaceProver::load(materials.backend, materials.prover_blob);
    if (!prover) throw ConfigError("prover setup failed");

    chain::ChainConfig cfg;
    cfg.tau_fixed = ThresholdConfig::from_tau(0.90).tau_fixed;
    cfg.block_capacity = sweep.capacity;
    cfg.verifier = materials.verifier;

    size_t max_users = *std::max_element(sweep.users.begin(), sweep.users.end());
    if (backend == zk::Backend::kGroth16 && max_users > 20)
        std::cerr << "note: generating " << max_users << " proofs; expect minutes of work\n";

    auto ds = generate_synthetic_dataset({.n_subjects = max_users, .per_subject = 2},
                                         seed ? seed : 7);
    std::vector<netsim::PreparedUser> users;
    users.reserve(max_users);
    for (size_t i = 0; i < max_users; ++i) {
        netsim::PreparedUser u;
        u.seed = generate_account(rng);
        u.soul = generate_account(rng);
        u.home_node = i % sweep.n_nodes;
        u.reg.id_hash = wallet::identity_hash("bench-user-" + std::to_string(i));
        u.reg.pk_seed = u.seed.pk;
        u.reg.zkp = prover->prove(ds.subjects[i][0], ds.subjects[i][1],
                                  chain::statement_for(cfg, u.reg.id_hash, u.seed.pk), rng);
        u.reg.sig_seed =
            account_sign(u.seed.sk, Bytes(u.reg.id_hash.begin(), u.reg.id_hash.end()), rng);
        users.push_back(std::move(u));
    }

    netsim::SimConfig sim_cfg;
    sim_cfg.n_nodes = sweep.n_nodes;
    sim_cfg.rng_seed = seed ? seed : 7;
    std::vector<netsim::LatencyPoint> points;
    for (size_t n : sweep.users) {
        std::vector<netsim::PreparedUser> slice(users.begin(), users.begin() + n);
        points.push_back(netsim::measure_iaac_latency(sim_cfg, cfg, slice, sweep.ring_size,
                                                      seed ? seed : 7));
    }
    std::string csv = netsim::latency_csv(points);
    std::cout << csv;
    if (!sweep.csv_out.empty()) {
        std::ofstream out(sweep.csv_out);
        if (!out) throw IoError("cannot write " + sweep.csv_out);
        out << csv;
    }
    if (!sweep.plot_out.empty()) netsim::write_latency_plot(sweep.plot_out, points);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"privacy-preserving identity wallet with an embedded chain"};
    app.require_subcommand(1);

    std::string home = default_home().string();
    app.add_option("--home", home, "wallet directory (default: $ZKBID_HOME or ~/.zkbid)");

    auto* setup = app.add_subcommand("setup", "initialize wallet, chain genesis and prover keys");
    double tau = 0.90;
    std::string backend_name = "groth16";
    uint64_t setup_seed = 0;
    setup->add_option("--tau", tau, "similarity threshold in [0.5, 1]");
    setup->add_option("--backend", backend_name, "proof backend: groth16 or transparent-test")
        ->check(CLI::IsMember({"groth16", "transparent-test"}));
    setup->add_option("--seed", setup_seed, "deterministic rng seed (0 = system entropy)");

    auto* enroll = app.add_subcommand("enroll", "face-match gate, seed account and proof bundle");
    std::string id_number, live_file, card_file;
    uint64_t enroll_seed = 0;
    enroll->add_option("--id", id_number, "identity number from the id card")->required();
    enroll->add_option("--live", live_file, "json file with 128 live-capture features")
        ->required();
    enroll->add_option("--card", card_file, "json file with 128 id-card features")->required();
    enroll->add_option("--seed", enroll_seed, "deterministic rng seed (0 = system entropy)");

    auto* reg = app.add_subcommand("register", "submit the registration tx and wait for receipt");
    uint64_t reg_seed = 0;
    reg->add_option("--seed", reg_seed, "deterministic rng seed (0 = system entropy)");

    auto* certify = app.add_subcommand("certify", "create and certify an anonymous soul account");
    size_t ring_size = 11;
    uint64_t cert_seed = 0;
    certify->add_option("--ring-size", ring_size, "ring members incl. the signer");
    certify->add_option("--seed", cert_seed, "deterministic rng seed (0 = system entropy)");

    auto* status = app.add_subcommand("status", "registry counts and wallet progress");
    bool reveal_secret = false;
    status->add_flag("--reveal-secret", reveal_secret,
                     "also print local account files incl. secret keys");

    auto* bench = app.add_subcommand("bench", "operation timings and optional latency sweep");
    std::string bench_backend = "groth16";
    uint64_t bench_seed = 0;
    SweepArgs sweep;
    bench->add_option("--backend", bench_backend, "proof backend: groth16 or transparent-test")
        ->check(CLI::IsMember({"groth16", "transparent-test"}));
    bench->add_option("--seed", bench_seed, "deterministic rng seed (0 = fixed default)");
    bench->add_option("--users", sweep.users, "simulated user counts, e.g. --users 1 10 50");
    bench->add_option("--ring-size", sweep.ring_size, "ring size for simulated certifications");
    bench->add_option("--nodes", sweep.n_nodes, "simulated network size");
    bench->add_option("--capacity", sweep.capacity, "block capacity in the simulation");
    bench->add_option("--csv", sweep.csv_out, "write the sweep table to this file");
    bench->add_option("--plot", sweep.plot_out, "write a gnuplot-ready dat file");

    auto* synth = app.add_subcommand("synth", "generate a demo live/card feature pair");
    std::string out_live, out_card;
    uint64_t synth_seed = 0;
    bool impostor = false;
    synth->add_option("--out-live", out_live, "output file for the live features")->required();
    synth->add_option("--out-card", out_card, "output file for the card features")->required();
    synth->add_option("--seed", synth_seed, "deterministic rng seed");
    synth->add_flag("--impostor", impostor, "make the pair a non-match");

    CLI11_PARSE(app, argc, argv);

    auto backend_of = [](const std::string& name) {
        return name == "transparent-test" ? zk::Backend::kTransparentTest : zk::Backend::kGroth16;
    };

    try {
        wallet::Wallet w{std::filesystem::path(home)};

        if (setup->parsed()) {
            if (tau < 0.5 || tau > 1.0) throw ConfigError("tau must lie in [0.5, 1]");
            Rng rng = make_rng(setup_seed, "setup");
            w.setup(tau, backend_of(backend_name), rng);
            std::cout << "wallet ready at " << home << "\n";
            std::cout << "backend: " << backend_name << ", tau: " << tau << "\n";
        } else if (enroll->parsed()) {
            wallet::IdentityInput input;
            input.id_number = id_number;
            input.feature_live = wallet::load_raw_features(live_file);
            input.feature_card = wallet::load_raw_features(card_file);
            Rng rng = make_rng(enroll_seed, "enroll");
            chain::RegInfo bundle = w.enroll(input, rng);
            std::cout << "enrolled: id_hash " << to_hex(bundle.id_hash) << "\n";
            std::cout << "seed address: " << to_hex(derive_address(bundle.pk_seed)) << "\n";
        } else if (reg->parsed()) {
            Rng rng = make_rng(reg_seed, "register");
            return print_receipt(w.register_identity(rng));
        } else if (certify->parsed()) {
            Rng rng = make_rng(cert_seed, "certify");
            chain::Receipt r = w.certify(ring_size, rng);
            if (r.status == chain::TxStatus::kAccepted) {
                Account soul = load_account(w.paths().soul_account_file());
                std::cout << "soul address: " << to_hex(soul.addr) << "\n";
            }
            return print_receipt(r);
        } else if (status->parsed()) {
            auto st = w.status();
            std::cout << "height: " << st.height << "\n";
            std::cout << "seed accounts: " << st.seeds << "\n";
            std::cout << "soul accounts: " << st.souls << "\n";
            std::cout << "key images: " << st.images << "\n";
            std::cout << "enrolled: " << (st.enrolled ? "yes" : "no") << "\n";
            std::cout << "certified: " << (st.certified ? "yes" : "no") << "\n";
            if (reveal_secret) {
                for (const auto& f :
                     {w.paths().seed_account_file(), w.paths().soul_account_file()})
                    if (std::filesystem::exists(f)) {
                        Account a = load_account(f);
                        std::cout << f.filename().string() << ": "
                                  << account_to_json(a, true) << "\n";
                    }
            }
        } else if (bench->parsed()) {
            return run_bench(backend_of(bench_backend), bench_seed, sweep);
        } else if (synth->parsed()) {
            wallet::RawFeatures live{}, card{};
            make_demo_pair(synth_seed, impostor, live, card);
            wallet::save_raw_features(out_live, live);
            wallet::save_raw_features(out_card, card);
            std::cout << "wrote " << out_live << " and " << out_card
                      << (impostor ? " (impostor pair)" : " (matching pair)") << "\n";
        }
        return 0;
    } catch (const FaceMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SimilarityBelowThreshold& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NormOutOfTolerance& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const UnsatisfiedWitness& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InsufficientAnonymitySet& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const SignerNotInRing& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const InconsistentRegInfo& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    } catch (const NotEnrolled& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 7;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
