#pragma once

#include "iris/chord.hpp"
#include "iris/iris.hpp"
#include "iris/privacy.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace iris {

struct ExperimentConfig {
    std::string name = "custom";
    unsigned m = 23;
    std::size_t n = 1000;
    std::size_t runs = 100;
    std::vector<double> alphas{0.25};
    std::vector<double> delta_fracs{1.0 / 16.0}; // fractions of 2^m
    std::vector<double> fs{0.0};
    std::uint64_t master_seed = 42;
    std::filesystem::path out_dir;
    bool chord_baseline = false;     // also run vanilla lookups on the same pairs
    bool emit_probabilities = false; // write per-step offset samples
    // When set, per-run networks are loaded from this directory (files made by
    // gen_networks); otherwise they are regenerated from the master seed.
    std::optional<std::filesystem::path> networks_dir;

    void validate() const;
};

// Built-in configurations E1..E5; see README for the parameter grids.
ExperimentConfig experiment_preset(const std::string& name, std::uint64_t master_seed,
                                   std::filesystem::path out_dir);

// Writes `count` network files net_00000 ... into dir, one per derived seed.
void gen_networks(std::size_t count, unsigned m, std::size_t n, double f,
                  std::uint64_t master_seed, const std::filesystem::path& dir);

// Executes every (alpha, delta, f) combination of the config and writes the
// CSV outputs plus a manifest.json under out_dir/name/.
void run_experiment(const ExperimentConfig& config);

struct SummaryRow {
    std::string combo;
    double alpha = 0.0;
    double delta_frac = 0.0;
    double f = 0.0;
    std::size_t runs = 0;
    double mean_hops = 0.0; // contacted nodes per run, terminal included
    std::size_t max_hops = 0;
    double mean_d0 = 0.0;
    double predicted_hops_value = 0.0;
    std::optional<double> min_ratio;
    std::optional<double> chi_square; // 20-bin uniformity statistic of d/delta
};

// Reads an experiment directory (the one holding manifest.json), prints a
// table to `out` and writes summary.csv next to the manifest.
std::vector<SummaryRow> summarize(const std::filesystem::path& experiment_dir,
                                  std::ostream& out);

// In-memory variant of the probability experiment: per-step
// (target_offset, reference_offset) pairs relative to each queried node,
// keeping only steps whose queried node is within delta of the target.
std::vector<std::pair<std::uint64_t, std::uint64_t>>
collect_offset_samples(unsigned m, std::size_t n, std::size_t runs, double alpha,
                       double delta_frac, std::uint64_t master_seed);

} // namespace iris
