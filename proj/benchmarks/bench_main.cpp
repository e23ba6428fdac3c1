// Microbenchmarks for the hot paths: dof analysis, lattice closure, edit
// propagation, spec parsing, and the two exact searches (Fano bisection and
// max clique).  Inputs are seeded so runs are comparable.

#include <benchmark/benchmark.h>

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ssot/bounds.hpp"
#include "ssot/dof.hpp"
#include "ssot/model.hpp"
#include "ssot/simulate.hpp"
#include "ssot/spec_io.hpp"

using namespace ssot;

namespace {

std::string loc_id(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "l%05zu", i);
    return buf;
}

DerivationGraph forest_graph(std::size_t n, double parent_p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Location> locations;
    std::vector<Edge> edges;
    std::bernoulli_distribution has_parent(parent_p);
    for (std::size_t i = 0; i < n; ++i) {
        locations.push_back({loc_id(i), "f"});
        if (i > 0 && has_parent(rng))
            edges.push_back({loc_id(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)),
                             loc_id(i)});
    }
    return DerivationGraph::make({{"f", 4}}, std::move(locations), std::move(edges));
}

// forward edges only, so any union of two of these stays acyclic
DerivationGraph forward_edge_graph(std::size_t n, double edge_p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Location> locations;
    for (std::size_t i = 0; i < n; ++i) locations.push_back({loc_id(i), "f"});
    std::vector<Edge> edges;
    std::bernoulli_distribution flip(edge_p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (flip(rng)) edges.push_back({loc_id(i), loc_id(j)});
    return DerivationGraph::make({{"f", 4}}, std::move(locations), std::move(edges));
}

void bm_compute_dof(benchmark::State& state) {
    DerivationGraph g = forest_graph(static_cast<std::size_t>(state.range(0)), 0.7, 11);
    for (auto _ : state) benchmark::DoNotOptimize(compute_dof(g));
}
BENCHMARK(bm_compute_dof)->Range(256, 4096);

void bm_minimal_extension(benchmark::State& state) {
    std::vector<Location> locations;
    for (std::size_t i = 0; i < static_cast<std::size_t>(state.range(0)); ++i)
        locations.push_back({loc_id(i), "f"});
    DerivationGraph g = DerivationGraph::make({{"f", 4}}, std::move(locations), {});
    for (auto _ : state) benchmark::DoNotOptimize(minimal_dof1_extension(g));
}
BENCHMARK(bm_minimal_extension)->Range(256, 4096);

void bm_lattice_join(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    DerivationGraph a = forward_edge_graph(n, 0.05, 21);
    DerivationGraph b = forward_edge_graph(n, 0.05, 22);
    for (auto _ : state) benchmark::DoNotOptimize(lattice_join(a, b));
}
BENCHMARK(bm_lattice_join)->Range(32, 256);

void bm_edit_propagation(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<Location> locations;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        locations.push_back({loc_id(i), "f"});
        if (i > 0) edges.push_back({loc_id(i - 1), loc_id(i)});
    }
    SystemState start = SystemState::uniform(
        DerivationGraph::make({{"f", 4}}, std::move(locations), std::move(edges)), 0);
    EditScript script(100, {loc_id(0), 3});
    for (auto _ : state) benchmark::DoNotOptimize(run_edit_sequence(start, script));
}
BENCHMARK(bm_edit_propagation)->Range(16, 256);

void bm_parse_spec(benchmark::State& state) {
    SystemSpec spec;
    spec.name = "bench";
    spec.facts = {{"f", 4}};
    for (std::size_t i = 0; i < static_cast<std::size_t>(state.range(0)); ++i) {
        spec.locations.push_back({loc_id(i), "f", 0});
        if (i > 0) spec.edges.push_back({loc_id(i - 1), loc_id(i)});
    }
    std::string text = serialize_spec(spec);
    for (auto _ : state) benchmark::DoNotOptimize(parse_spec(text));
}
BENCHMARK(bm_parse_spec)->Range(64, 1024);

void bm_fano_bisection(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fano_min_error(4, 1.0));
}
BENCHMARK(bm_fano_bisection);

void bm_max_clique(benchmark::State& state) {
    std::mt19937_64 rng(31);
    ValueGraph g(28);
    std::bernoulli_distribution flip(0.5);
    for (std::size_t u = 0; u < 28; ++u)
        for (std::size_t v = u + 1; v < 28; ++v)
            if (flip(rng)) g.add_edge(u, v);
    for (auto _ : state) benchmark::DoNotOptimize(max_clique_size(g));
}
BENCHMARK(bm_max_clique);

} // namespace

BENCHMARK_MAIN();
