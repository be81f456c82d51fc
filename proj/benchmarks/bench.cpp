#include <benchmark/benchmark.h>

#include "iris/experiments.hpp"
#include "iris/iris.hpp"
#include "iris/privacy.hpp"

using namespace iris;

namespace {

const Network& desk_network() {
    static Network net = generate_network(RingParams{23}, 1000, 0.0, 42);
    return net;
}

void BM_lookup_step(benchmark::State& state) {
    const Network& net = desk_network();
    SeededSource rng(1);
    for (auto _ : state) {
        Id queried = net.nodes[rng.uniform_below(net.nodes.size())];
        Id target = rng.uniform_below(net.ring.size());
        benchmark::DoNotOptimize(lookup_step(net, queried, target));
    }
}
BENCHMARK(BM_lookup_step);

void BM_routing_table(benchmark::State& state) {
    const Network& net = desk_network();
    SeededSource rng(2);
    for (auto _ : state) {
        Id owner = net.nodes[rng.uniform_below(net.nodes.size())];
        benchmark::DoNotOptimize(routing_table(net, owner));
    }
}
BENCHMARK(BM_routing_table);

void BM_chord_retrieve(benchmark::State& state) {
    const Network& net = desk_network();
    SeededSource rng(3);
    for (auto _ : state) {
        Id requester = net.nodes[rng.uniform_below(net.nodes.size())];
        Id target = rng.uniform_below(net.ring.size());
        benchmark::DoNotOptimize(chord_retrieve(net, requester, target));
    }
}
BENCHMARK(BM_chord_retrieve);

void BM_iris_retrieve(benchmark::State& state) {
    const Network& net = desk_network();
    IrisParams params;
    params.alpha = static_cast<double>(state.range(0)) / 100.0;
    params.delta = net.ring.size() / 16;
    SeededSource rng(4);
    for (auto _ : state) {
        Id requester = net.nodes[rng.uniform_below(net.nodes.size())];
        Id target = rng.uniform_below(net.ring.size());
        benchmark::DoNotOptimize(iris_retrieve(net, requester, target, params, rng));
    }
}
BENCHMARK(BM_iris_retrieve)->Arg(25)->Arg(75);

void BM_analyze_trace(benchmark::State& state) {
    const Network& net = desk_network();
    IrisParams params;
    params.alpha = 0.25;
    params.delta = net.ring.size() / 4;
    SeededSource rng(5);
    auto [data, trace] =
        iris_retrieve(net, net.nodes[10], net.ring.size() / 2, params, rng);
    (void)data;
    ColluderModel model;
    for (std::size_t i = 0; i < net.nodes.size(); i += 2)
        model.colluders.insert(net.nodes[i]);
    for (auto _ : state)
        benchmark::DoNotOptimize(analyze_trace(trace, params, model, net.ring));
}
BENCHMARK(BM_analyze_trace);

void BM_generate_network(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_network(RingParams{23}, 1000, 0.0, seed++));
}
BENCHMARK(BM_generate_network);

} // namespace

BENCHMARK_MAIN();
