#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ssot/error.hpp"

namespace ssot {

/// Value tokens are indices into a fact's domain {0, ..., domain_size - 1}.
using ValueToken = int;

/// A fact with a finite value domain of size K >= 1.
struct Fact {
    std::string id;
    int domain_size = 1;

    friend bool operator==(const Fact&, const Fact&) = default;
};

/// A location that encodes one fact.
struct Location {
    std::string id;
    std::string fact;

    friend bool operator==(const Location&, const Location&) = default;
};

/// Directed derivation edge: `derived` is maintained from `source`.
struct Edge {
    std::string source;
    std::string derived;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable set of facts, locations and derivation edges.
///
/// Construction validates that ids are unique, that locations and edges only
/// reference declared ids, and that the edge relation is acyclic.  Duplicate
/// edges collapse to one.  Facts, locations and edges are kept sorted by id so
/// traversal order is deterministic.
class DerivationGraph {
public:
    DerivationGraph() = default;

    static DerivationGraph make(std::vector<Fact> facts,
                                std::vector<Location> locations,
                                std::vector<Edge> edges);

    const std::vector<Fact>& facts() const { return facts_; }
    const std::vector<Location>& locations() const { return locations_; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::size_t location_count() const { return locations_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_fact(const std::string& id) const;
    bool has_location(const std::string& id) const;
    bool has_edge(const std::string& source, const std::string& derived) const;
    const Fact& fact(const std::string& id) const;
    const Location& location(const std::string& id) const;

    std::size_t index_of(const std::string& location_id) const;
    std::size_t in_degree(const std::string& location_id) const;
    std::vector<std::string> parents(const std::string& location_id) const;
    std::vector<std::string> children(const std::string& location_id) const;

    /// Location ids encoding `fact_id`, sorted.
    std::vector<std::string> locations_of_fact(const std::string& fact_id) const;

    /// Reflexive-transitive successors of `location_id`, sorted.
    std::vector<std::string> successors_of(const std::string& location_id) const;

    /// Every location has in-degree <= 1.
    bool is_forest() const;

    /// Every edge joins two locations that encode the same fact.
    bool edges_within_facts() const;

    /// Subgraph induced by the locations of one fact (fact table is kept).
    DerivationGraph restricted_to_fact(const std::string& fact_id) const;

    /// Same graph with extra edges added; revalidates acyclicity.
    DerivationGraph with_edges(const std::vector<Edge>& extra) const;

    /// Identical fact table and location set (bindings included).
    bool same_shape(const DerivationGraph& other) const;

    friend bool operator==(const DerivationGraph&, const DerivationGraph&) = default;

private:
    std::vector<Fact> facts_;
    std::vector<Location> locations_;
    std::vector<Edge> edges_;
    std::map<std::string, std::size_t> fact_index_;
    std::map<std::string, std::size_t> location_index_;
    std::vector<std::vector<std::size_t>> children_;  // location index -> child indices
    std::vector<std::size_t> in_degree_;
};

/// A single assignment to one location.
struct EditEvent {
    std::string target;
    ValueToken value = 0;

    friend bool operator==(const EditEvent&, const EditEvent&) = default;
};

using EditScript = std::vector<EditEvent>;

/// Total assignment of value tokens to the locations of a derivation graph.
///
/// Valid states require the graph to be a forest whose edges stay within one
/// fact, every token to lie inside its fact's domain, and every derived
/// location to carry its parent's value (propagation discipline).  States are
/// immutable; `apply_edit` returns a new state sharing the graph.
class SystemState {
public:
    static SystemState make(DerivationGraph graph, const std::map<std::string, ValueToken>& values);

    /// State assigning `token` everywhere (token must fit every domain).
    static SystemState uniform(DerivationGraph graph, ValueToken token = 0);

    const DerivationGraph& graph() const { return *graph_; }
    std::shared_ptr<const DerivationGraph> graph_ptr() const { return graph_; }

    ValueToken value(const std::string& location_id) const;
    ValueToken value_at(std::size_t location_index) const { return values_[location_index]; }

    /// Sorted copy of the assignment, for reporting.
    std::map<std::string, ValueToken> values() const;

    friend bool operator==(const SystemState& a, const SystemState& b) {
        return *a.graph_ == *b.graph_ && a.values_ == b.values_;
    }

private:
    SystemState(std::shared_ptr<const DerivationGraph> graph, std::vector<ValueToken> values)
        : graph_(std::move(graph)), values_(std::move(values)) {}

    std::shared_ptr<const DerivationGraph> graph_;
    std::vector<ValueToken> values_;

    friend SystemState apply_edit(const SystemState&, const EditEvent&);
};

/// Writes `edit.value` to an independent location and every location reachable
/// from it through derivation edges; all other values are untouched.
///
/// Errors: unknown_location, derived_target_rejected, value_out_of_domain.
SystemState apply_edit(const SystemState& state, const EditEvent& edit);

/// True when all locations encoding `fact_id` agree.
///
/// Errors: unknown_fact, fact_not_encoded.
bool is_coherent(const SystemState& state, const std::string& fact_id);

/// What a definition mechanism offers: hooks that run when a definition is
/// (re)evaluated, and the ability to observe which definitions exist.
struct Capabilities {
    std::string label;
    bool causal_propagation = false;
    bool provenance_observability = false;

    friend bool operator==(const Capabilities&, const Capabilities&) = default;
};

enum class CapabilityClass {
    complete,            // can derive automatically and audit
    missing_causal,      // can audit but edits do not propagate
    missing_provenance,  // propagates but cannot enumerate what exists
    missing_both,
};

CapabilityClass classify_capabilities(const Capabilities& caps);

const char* to_string(CapabilityClass cls);

/// Reference capability table for well-known definition mechanisms.
const std::vector<Capabilities>& builtin_mechanisms();

} // namespace ssot
