#include "ssot/dof.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ssot {

const char* to_string(Regime regime) {
    switch (regime) {
    case Regime::not_encoded: return "not_encoded";
    case Regime::optimal: return "optimal";
    case Regime::above_capacity: return "above_capacity";
    }
    return "unknown";
}

DofReport compute_dof(const DerivationGraph& graph) {
    DofReport report;
    for (const Location& l : graph.locations())
        if (graph.in_degree(l.id) == 0) report.sources.push_back(l.id);
    report.dof = report.sources.size();
    if (report.dof == 0) {
        report.regime = Regime::not_encoded;
    } else {
        report.redundancy = report.dof - 1;
        report.regime = report.dof == 1 ? Regime::optimal : Regime::above_capacity;
    }
    return report;
}

bool is_capacity_achieving(const DerivationGraph& graph) {
    return compute_dof(graph).dof == 1;
}

std::vector<Edge> minimal_dof1_extension(const DerivationGraph& graph) {
    if (graph.location_count() == 0)
        throw Error(errc::empty_system, "no locations to extend");
    std::vector<std::string> sources = compute_dof(graph).sources;
    std::vector<Edge> added;
    for (std::size_t i = 1; i < sources.size(); ++i)
        added.push_back({sources.front(), sources[i]});
    return added;
}

namespace {

void require_same_shape(const DerivationGraph& a, const DerivationGraph& b) {
    if (!a.same_shape(b))
        throw Error(errc::location_set_mismatch,
                    "lattice operations need identical facts and locations");
}

bool union_is_acyclic(const DerivationGraph& a, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::size_t>> children(a.location_count());
    std::vector<std::size_t> degree(a.location_count(), 0);
    for (const Edge& e : edges) {
        std::size_t s = a.index_of(e.source), d = a.index_of(e.derived);
        if (s == d) return false;
        children[s].push_back(d);
        ++degree[d];
    }
    std::deque<std::size_t> ready;
    for (std::size_t i = 0; i < degree.size(); ++i)
        if (degree[i] == 0) ready.push_back(i);
    std::size_t seen = 0;
    while (!ready.empty()) {
        std::size_t v = ready.front();
        ready.pop_front();
        ++seen;
        for (std::size_t c : children[v])
            if (--degree[c] == 0) ready.push_back(c);
    }
    return seen == degree.size();
}

} // namespace

DerivationGraph lattice_meet(const DerivationGraph& a, const DerivationGraph& b) {
    require_same_shape(a, b);
    std::vector<Edge> kept;
    std::set_intersection(a.edges().begin(), a.edges().end(), b.edges().begin(),
                          b.edges().end(), std::back_inserter(kept));
    return DerivationGraph::make(a.facts(), a.locations(), std::move(kept));
}

std::optional<DerivationGraph> lattice_join(const DerivationGraph& a, const DerivationGraph& b) {
    require_same_shape(a, b);
    std::vector<Edge> merged;
    std::set_union(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                   std::back_inserter(merged));
    if (!union_is_acyclic(a, merged)) return std::nullopt;

    // Transitive closure of the union.
    std::set<Edge> closed(merged.begin(), merged.end());
    DerivationGraph merged_graph = DerivationGraph::make(a.facts(), a.locations(), merged);
    for (const Location& l : merged_graph.locations())
        for (const std::string& succ : merged_graph.successors_of(l.id))
            if (succ != l.id) closed.insert({l.id, succ});
    return DerivationGraph::make(a.facts(), a.locations(),
                                 std::vector<Edge>(closed.begin(), closed.end()));
}

} // namespace ssot
