#include "iris/experiments.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace iris {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string fmt_ratio(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string combo_label(double alpha, double delta_frac, double f) {
    return "alpha_" + fmt_double(alpha) + "__delta_" + fmt_double(delta_frac) +
           "__f_" + fmt_double(f);
}

std::ofstream open_csv(const std::filesystem::path& file, const char* header) {
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + file.string());
    out << header << "\n";
    return out;
}

std::filesystem::path network_file(const std::filesystem::path& dir, std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "net_%05zu.txt", index);
    return dir / buf;
}

Network network_for_run(const ExperimentConfig& cfg, std::size_t run, double f) {
    Network net;
    if (cfg.networks_dir) {
        auto files_begin = std::filesystem::directory_iterator(*cfg.networks_dir);
        std::size_t count = 0;
        for (auto it = files_begin; it != std::filesystem::directory_iterator(); ++it)
            if (it->path().filename().string().rfind("net_", 0) == 0)
                ++count;
        if (count == 0)
            throw std::runtime_error("no network files in " + cfg.networks_dir->string());
        net = load_network(network_file(*cfg.networks_dir, run % count));
        if (net.ring.m != cfg.m || net.nodes.size() != cfg.n)
            throw std::runtime_error("network file does not match experiment dimensions");
    } else {
        net = generate_network(RingParams{cfg.m}, cfg.n, 0.0,
                               derive_seed(cfg.master_seed, run, 10));
    }
    select_adversaries(net, f, derive_seed(cfg.master_seed, run, 2));
    return net;
}

struct RunSetup {
    Id requester;
    Id target;
};

RunSetup draw_pair(const Network& net, RandomSource& rng) {
    Id requester = 0;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 1 << 20)
            throw std::runtime_error("cannot find a non-adversarial requester");
        requester = net.nodes[rng.uniform_below(net.nodes.size())];
        if (!net.is_adversary(requester))
            break;
    }
    Id target = rng.uniform_below(net.ring.size());
    return {requester, target};
}

double chi_square_20(const std::vector<double>& normalized) {
    std::array<std::size_t, 20> bins{};
    for (double v : normalized) {
        auto b = static_cast<std::size_t>(v * 20.0);
        if (b > 19)
            b = 19;
        ++bins[b];
    }
    double expected = static_cast<double>(normalized.size()) / 20.0;
    double stat = 0.0;
    for (std::size_t b : bins) {
        double diff = static_cast<double>(b) - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

} // namespace

void ExperimentConfig::validate() const {
    RingParams{m}.validate();
    if (runs == 0)
        throw std::invalid_argument("need at least one run");
    if (alphas.empty() || delta_fracs.empty() || fs.empty())
        throw std::invalid_argument("parameter grids must be nonempty");
    for (double a : alphas)
        if (!(a >= 0.0 && a < 1.0))
            throw std::invalid_argument("alpha must lie in [0, 1)");
    for (double d : delta_fracs)
        if (!(d >= 0.0 && d <= 1.0))
            throw std::invalid_argument("delta fraction must lie in [0, 1]");
    for (double f : fs)
        if (!(f >= 0.0 && f <= 1.0))
            throw std::invalid_argument("adversary fraction must lie in [0, 1]");
    if (out_dir.empty())
        throw std::invalid_argument("output directory not set");
}

ExperimentConfig experiment_preset(const std::string& name, std::uint64_t master_seed,
                                   std::filesystem::path out_dir) {
    ExperimentConfig cfg;
    cfg.name = name;
    cfg.master_seed = master_seed;
    cfg.out_dir = std::move(out_dir);
    cfg.m = 23;
    cfg.n = 1000;
    if (name == "E1") {
        cfg.runs = 100;
        cfg.alphas = {0.25, 0.35, 0.5, 0.75};
        cfg.delta_fracs = {1.0 / 16.0};
        cfg.fs = {0.0};
        cfg.chord_baseline = true;
    } else if (name == "E2") {
        cfg.runs = 100;
        cfg.alphas = {0.35};
        cfg.delta_fracs = {1.0 / 4.0, 1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0};
        cfg.fs = {0.0};
        cfg.chord_baseline = true;
    } else if (name == "E3") {
        cfg.runs = 500;
        cfg.alphas = {0.25};
        cfg.delta_fracs = {1.0 / 4.0};
        cfg.fs = {0.0, 1.0 / 8.0, 1.0 / 6.0, 1.0 / 3.0, 1.0 / 2.0};
    } else if (name == "E4") {
        cfg.runs = 500;
        cfg.alphas = {0.75};
        cfg.delta_fracs = {1.0 / 128.0};
        cfg.fs = {0.0};
    } else if (name == "E5") {
        cfg.runs = 500;
        cfg.alphas = {0.75};
        cfg.delta_fracs = {1.0 / 128.0};
        cfg.fs = {0.0};
        cfg.emit_probabilities = true;
    } else {
        throw std::invalid_argument("unknown experiment preset: " + name);
    }
    return cfg;
}

void gen_networks(std::size_t count, unsigned m, std::size_t n, double f,
                  std::uint64_t master_seed, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < count; ++i) {
        Network net = generate_network(RingParams{m}, n, f, derive_seed(master_seed, i, 10));
        save_network(net, network_file(dir, i));
    }
}

void run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    RingParams ring{cfg.m};
    std::filesystem::path root = cfg.out_dir / cfg.name;
    std::filesystem::create_directories(root);

    json manifest;
    manifest["format"] = 1;
    manifest["name"] = cfg.name;
    manifest["m"] = cfg.m;
    manifest["n"] = cfg.n;
    manifest["runs"] = cfg.runs;
    manifest["master_seed"] = cfg.master_seed;
    manifest["chord_baseline"] = cfg.chord_baseline;
    manifest["emit_probabilities"] = cfg.emit_probabilities;
    manifest["combos"] = json::array();

    for (double f : cfg.fs) {
        for (double dfrac : cfg.delta_fracs) {
            for (double alpha : cfg.alphas) {
                std::string label = combo_label(alpha, dfrac, f);
                std::filesystem::path dir = root / label;
                std::filesystem::create_directories(dir);
                auto delta = static_cast<std::uint64_t>(
                    dfrac * static_cast<double>(ring.size()));

                auto distances = open_csv(dir / "distances.csv",
                                          "run_id,hop_index,distance_to_target");
                auto privacy = open_csv(
                    dir / "privacy.csv",
                    "run_id,step_index,node_id,is_colluder,prior,posterior,ratio,correct_estimate");
                std::optional<std::ofstream> probabilities;
                if (cfg.emit_probabilities)
                    probabilities = open_csv(dir / "probabilities.csv",
                                             "run_id,step_index,target_offset,r_offset,delta");

                IrisParams params;
                params.alpha = alpha;
                params.delta = delta;

                for (std::size_t run = 0; run < cfg.runs; ++run) {
                    Network net = network_for_run(cfg, run, f);
                    SeededSource rng(derive_seed(cfg.master_seed, run, 1));
                    RunSetup setup = draw_pair(net, rng);
                    auto [data, trace] =
                        iris_retrieve(net, setup.requester, setup.target, params, rng);
                    (void)data;

                    for (std::size_t i = 0; i < trace.steps.size(); ++i)
                        distances << run << ',' << i << ',' << trace.steps[i].distance << "\n";

                    ColluderModel model;
                    model.colluders.insert(net.adversaries.begin(), net.adversaries.end());
                    PrivacyReport report = analyze_trace(trace, params, model, ring);
                    for (std::size_t i = 0; i < report.observations.size(); ++i) {
                        const PrivacyObservation& obs = report.observations[i];
                        privacy << run << ',' << i << ',' << obs.node << ','
                                << (obs.is_colluder ? 1 : 0) << ',' << obs.prior << ','
                                << obs.posterior << ',' << fmt_ratio(obs.ratio) << ','
                                << (obs.correct_estimate ? 1 : 0) << "\n";
                    }

                    if (probabilities) {
                        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
                            const TraceStep& step = trace.steps[i];
                            *probabilities << run << ',' << i << ','
                                           << cw_distance(step.queried, setup.target, ring) << ','
                                           << cw_distance(step.queried, step.reference, ring)
                                           << ',' << delta << "\n";
                        }
                    }
                }

                json combo;
                combo["alpha"] = alpha;
                combo["delta_frac"] = dfrac;
                combo["f"] = f;
                combo["dir"] = label;
                manifest["combos"].push_back(combo);
            }
        }
    }

    if (cfg.chord_baseline) {
        std::filesystem::path dir = root / "chord";
        std::filesystem::create_directories(dir);
        auto distances = open_csv(dir / "distances.csv", "run_id,hop_index,distance_to_target");
        double f = cfg.fs.front();
        for (std::size_t run = 0; run < cfg.runs; ++run) {
            Network net = network_for_run(cfg, run, f);
            SeededSource rng(derive_seed(cfg.master_seed, run, 1));
            RunSetup setup = draw_pair(net, rng);
            auto [data, trace] = chord_retrieve(net, setup.requester, setup.target);
            (void)data;
            for (std::size_t i = 0; i < trace.steps.size(); ++i)
                distances << run << ',' << i << ',' << trace.steps[i].distance << "\n";
        }
    }

    std::ofstream mf(root / "manifest.json", std::ios::binary);
    if (!mf)
        throw std::runtime_error("cannot write manifest.json");
    mf << manifest.dump(2) << "\n";
}

namespace {

struct CsvStats {
    std::map<std::size_t, std::size_t> rows_per_run;
    std::map<std::size_t, std::uint64_t> d0_per_run;
    std::vector<std::uint64_t> distances;
};

CsvStats read_distances(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("missing " + file.string());
    CsvStats stats;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::size_t run, hop;
        std::uint64_t dist;
        if (std::sscanf(line.c_str(), "%zu,%zu,%llu", &run, &hop,
                        reinterpret_cast<unsigned long long*>(&dist)) != 3)
            throw std::runtime_error("malformed row in " + file.string());
        ++stats.rows_per_run[run];
        if (hop == 0)
            stats.d0_per_run[run] = dist;
        stats.distances.push_back(dist);
    }
    return stats;
}

std::optional<double> read_min_ratio(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("missing " + file.string());
    std::string line;
    std::getline(in, line);
    std::optional<double> best;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        // run_id,step_index,node_id,is_colluder,prior,posterior,ratio,correct_estimate
        std::size_t run, step, colluder, correct;
        unsigned long long node, prior, posterior;
        double ratio;
        if (std::sscanf(line.c_str(), "%zu,%zu,%llu,%zu,%llu,%llu,%lf,%zu", &run, &step,
                        &node, &colluder, &prior, &posterior, &ratio, &correct) != 8)
            throw std::runtime_error("malformed row in " + file.string());
        if (correct && (!best || ratio < *best))
            best = ratio;
    }
    return best;
}

} // namespace

std::vector<SummaryRow> summarize(const std::filesystem::path& experiment_dir,
                                  std::ostream& out) {
    std::filesystem::path manifest_file = experiment_dir / "manifest.json";
    std::ifstream mf(manifest_file);
    if (!mf)
        throw std::invalid_argument("no manifest.json in " + experiment_dir.string());
    json manifest = json::parse(mf);

    RingParams ring{manifest.at("m").get<unsigned>()};
    auto n = manifest.at("n").get<std::size_t>();
    auto runs = manifest.at("runs").get<std::size_t>();
    double nu = static_cast<double>(ring.mask()) / static_cast<double>(n);

    std::vector<SummaryRow> rows;
    for (const json& combo : manifest.at("combos")) {
        SummaryRow row;
        row.combo = combo.at("dir").get<std::string>();
        row.alpha = combo.at("alpha").get<double>();
        row.delta_frac = combo.at("delta_frac").get<double>();
        row.f = combo.at("f").get<double>();
        row.runs = runs;

        std::filesystem::path dir = experiment_dir / row.combo;
        CsvStats stats = read_distances(dir / "distances.csv");

        std::size_t total_rows = 0;
        std::size_t max_rows = 0;
        for (auto& [run, count] : stats.rows_per_run) {
            total_rows += count;
            max_rows = std::max(max_rows, count);
        }
        row.mean_hops =
            (static_cast<double>(total_rows) + static_cast<double>(runs)) /
            static_cast<double>(runs);
        row.max_hops = max_rows + 1;
        if (!stats.d0_per_run.empty()) {
            double sum = 0.0;
            for (auto& [run, d0] : stats.d0_per_run)
                sum += static_cast<double>(d0);
            row.mean_d0 = sum / static_cast<double>(stats.d0_per_run.size());
        }
        row.predicted_hops_value =
            predicted_hops(static_cast<double>(ring.size()) / 2.0, nu, row.alpha);
        row.min_ratio = read_min_ratio(dir / "privacy.csv");

        auto delta =
            static_cast<std::uint64_t>(row.delta_frac * static_cast<double>(ring.size()));
        if (delta > 0) {
            std::vector<double> normalized;
            for (std::uint64_t d : stats.distances)
                if (d <= delta)
                    normalized.push_back(static_cast<double>(d) / static_cast<double>(delta));
            if (normalized.size() >= 100)
                row.chi_square = chi_square_20(normalized);
        }
        rows.push_back(std::move(row));
    }

    if (manifest.value("chord_baseline", false)) {
        SummaryRow row;
        row.combo = "chord";
        row.runs = runs;
        CsvStats stats = read_distances(experiment_dir / "chord" / "distances.csv");
        std::size_t total_rows = 0;
        std::size_t max_rows = 0;
        for (auto& [run, count] : stats.rows_per_run) {
            total_rows += count;
            max_rows = std::max(max_rows, count);
        }
        row.mean_hops =
            (static_cast<double>(total_rows) + static_cast<double>(runs)) /
            static_cast<double>(runs);
        row.max_hops = max_rows + 1;
        rows.push_back(std::move(row));
    }

    out << "combo,alpha,delta_frac,f,runs,mean_hops,max_hops,mean_d0,predicted_hops,min_ratio,chi_square\n";
    std::ofstream csv(experiment_dir / "summary.csv", std::ios::binary);
    csv << "combo,alpha,delta_frac,f,runs,mean_hops,max_hops,mean_d0,predicted_hops,min_ratio,chi_square\n";
    for (const SummaryRow& row : rows) {
        std::ostringstream line;
        line << row.combo << ',' << fmt_double(row.alpha) << ',' << fmt_double(row.delta_frac)
             << ',' << fmt_double(row.f) << ',' << row.runs << ',' << fmt_ratio(row.mean_hops)
             << ',' << row.max_hops << ',' << fmt_ratio(row.mean_d0) << ','
             << fmt_ratio(row.predicted_hops_value) << ','
             << (row.min_ratio ? fmt_ratio(*row.min_ratio) : std::string("na")) << ','
             << (row.chi_square ? fmt_ratio(*row.chi_square) : std::string("na")) << "\n";
        out << line.str();
        csv << line.str();
    }
    return rows;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>>
collect_offset_samples(unsigned m, std::size_t n, std::size_t runs, double alpha,
                       double delta_frac, std::uint64_t master_seed) {
    RingParams ring{m};
    ring.validate();
    auto delta = static_cast<std::uint64_t>(delta_frac * static_cast<double>(ring.size()));
    IrisParams params;
    params.alpha = alpha;
    params.delta = delta;

    std::vector<std::pair<std::uint64_t, std::uint64_t>> samples;
    for (std::size_t run = 0; run < runs; ++run) {
        Network net = generate_network(ring, n, 0.0, derive_seed(master_seed, run, 10));
        SeededSource rng(derive_seed(master_seed, run, 1));
        RunSetup setup = draw_pair(net, rng);
        auto [data, trace] = iris_retrieve(net, setup.requester, setup.target, params, rng);
        (void)data;
        for (const TraceStep& step : trace.steps) {
            std::uint64_t target_off = cw_distance(step.queried, setup.target, ring);
            if (target_off <= delta)
                samples.emplace_back(target_off,
                                     cw_distance(step.queried, step.reference, ring));
        }
    }
    return samples;
}

} // namespace iris
