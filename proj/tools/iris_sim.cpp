// Command-line front end for the Chord/Iris simulator.
//
//   iris_sim gen-networks --count 500 --address-bits 23 --nodes 1000 --seed 42 --out nets/
//   iris_sim run --experiment E1 --seed 42 --out results/
//   iris_sim run --alpha 0.25 --delta-frac 0.25 --attackers 0.5 --runs 500
//                --nodes 1000 --address-bits 23 --seed 7 --out results/
//   iris_sim summarize results/E1
//   iris_sim prob --kind eq-eq --o 35 --x 10 --delta 100

#include "CLI11.hpp"

#include "iris/experiments.hpp"
#include "iris/privacy.hpp"

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"Deterministic Chord ring simulator and query-privacy laboratory"};
    app.require_subcommand(1);

    // gen-networks
    std::size_t gn_count = 500;
    unsigned gn_bits = 23;
    std::size_t gn_nodes = 1000;
    double gn_f = 0.0;
    std::uint64_t gn_seed = 42;
    std::string gn_out = "networks";
    auto* gen = app.add_subcommand("gen-networks", "Generate persisted network files");
    gen->add_option("--count", gn_count, "Number of networks");
    gen->add_option("--address-bits", gn_bits, "Ring bit-width m");
    gen->add_option("--nodes", gn_nodes, "Nodes per network");
    gen->add_option("--attackers", gn_f, "Adversary fraction baked into the files");
    gen->add_option("--seed", gn_seed, "Master seed");
    gen->add_option("--out", gn_out, "Output directory")->required();

    // run
    std::string run_experiment_name;
    std::vector<double> run_alphas;
    std::vector<double> run_deltas;
    std::vector<double> run_fs;
    std::size_t run_runs = 100;
    std::size_t run_nodes = 1000;
    unsigned run_bits = 23;
    std::uint64_t run_seed = 42;
    std::string run_out = "results";
    std::string run_networks;
    auto* run = app.add_subcommand("run", "Run a built-in or custom experiment");
    run->add_option("--experiment", run_experiment_name, "Preset E1..E5");
    run->add_option("--alpha", run_alphas, "Interpolation fraction(s)");
    run->add_option("--delta-frac", run_deltas, "Offset fraction(s) of the address space");
    run->add_option("--attackers", run_fs, "Adversary fraction(s)");
    run->add_option("--runs", run_runs, "Monte-Carlo runs per combination");
    run->add_option("--nodes", run_nodes, "Nodes per network");
    run->add_option("--address-bits", run_bits, "Ring bit-width m");
    run->add_option("--seed", run_seed, "Master seed");
    run->add_option("--out", run_out, "Output directory");
    run->add_option("--networks", run_networks,
                    "Directory of persisted networks (otherwise regenerated from the seed)");
    bool run_baseline = false;
    run->add_flag("--chord-baseline", run_baseline, "Also run vanilla lookups on the same pairs");
    bool run_probs = false;
    run->add_flag("--probabilities", run_probs, "Emit per-step offset samples");

    // summarize
    std::string sum_dir;
    auto* sum = app.add_subcommand("summarize", "Summarize a finished experiment directory");
    sum->add_option("dir", sum_dir, "Directory containing manifest.json")->required();

    // prob
    std::string prob_kind = "eq-eq";
    std::uint64_t prob_o = 0, prob_x = 0, prob_delta = 0;
    auto* prob = app.add_subcommand("prob", "Evaluate an analytic attacker-advantage probability");
    prob->add_option("--kind", prob_kind, "eq-eq | le-eq | eq-le | le-le (target-ref)")
        ->check(CLI::IsMember({"eq-eq", "le-eq", "eq-le", "le-le"}));
    prob->add_option("--o", prob_o, "Target offset")->required();
    prob->add_option("--x", prob_x, "Reference-point offset")->required();
    prob->add_option("--delta", prob_delta, "Range size")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            iris::gen_networks(gn_count, gn_bits, gn_nodes, gn_f, gn_seed, gn_out);
            std::cout << "wrote " << gn_count << " networks to " << gn_out << "\n";
        } else if (run->parsed()) {
            iris::ExperimentConfig cfg;
            if (!run_experiment_name.empty()) {
                cfg = iris::experiment_preset(run_experiment_name, run_seed, run_out);
            } else {
                if (run_alphas.empty() || run_deltas.empty())
                    throw std::invalid_argument(
                        "custom runs need --alpha and --delta-frac (or use --experiment)");
                cfg.alphas = run_alphas;
                cfg.delta_fracs = run_deltas;
                cfg.fs = run_fs.empty() ? std::vector<double>{0.0} : run_fs;
                cfg.runs = run_runs;
                cfg.n = run_nodes;
                cfg.m = run_bits;
                cfg.master_seed = run_seed;
                cfg.out_dir = run_out;
                cfg.chord_baseline = run_baseline;
                cfg.emit_probabilities = run_probs;
            }
            if (!run_networks.empty())
                cfg.networks_dir = run_networks;
            iris::run_experiment(cfg);
            std::cout << "results in " << (cfg.out_dir / cfg.name).string() << "\n";
        } else if (sum->parsed()) {
            iris::summarize(sum_dir, std::cout);
        } else if (prob->parsed()) {
            iris::Cond target_cond =
                prob_kind.rfind("eq-", 0) == 0 ? iris::Cond::eq : iris::Cond::le;
            iris::Cond ref_cond =
                prob_kind.size() >= 2 && prob_kind.substr(prob_kind.size() - 2) == "eq"
                    ? iris::Cond::eq
                    : iris::Cond::le;
            double p = iris::analytic_probability(target_cond, ref_cond, prob_o, prob_x,
                                                  prob_delta);
            std::printf("%.12g\n", p);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
