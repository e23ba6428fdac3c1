#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ssot/model.hpp"

namespace ssot {

enum class Regime {
    not_encoded,     // dof = 0
    optimal,         // dof = 1, capacity-achieving
    above_capacity,  // dof > 1
};

const char* to_string(Regime regime);

struct DofReport {
    std::size_t dof = 0;
    std::vector<std::string> sources;        // in-degree-0 locations, sorted
    std::optional<std::size_t> redundancy;   // dof - 1; empty when nothing is encoded
    Regime regime = Regime::not_encoded;

    friend bool operator==(const DofReport&, const DofReport&) = default;
};

/// Degrees of freedom of a graph: the number of independent locations.
DofReport compute_dof(const DerivationGraph& graph);

/// dof == 1: exactly one place to edit, coherence holds by construction.
bool is_capacity_achieving(const DerivationGraph& graph);

/// Smallest edge set whose addition brings dof to 1: every source except the
/// lexicographically smallest becomes derived from it.  Returns the edges to
/// add (dof - 1 of them; empty when already at dof 1).
///
/// Errors: empty_system when the graph has no locations.
std::vector<Edge> minimal_dof1_extension(const DerivationGraph& graph);

/// Intersection of the edge sets.  Both graphs must share facts and locations.
///
/// Errors: location_set_mismatch.
DerivationGraph lattice_meet(const DerivationGraph& a, const DerivationGraph& b);

/// Transitive closure of the union of the edge sets, or nothing when the union
/// has a cycle (the join does not exist there; the order is a partial lattice).
///
/// Errors: location_set_mismatch.
std::optional<DerivationGraph> lattice_join(const DerivationGraph& a, const DerivationGraph& b);

} // namespace ssot
