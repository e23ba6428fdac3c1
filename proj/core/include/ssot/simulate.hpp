#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssot/model.hpp"

namespace ssot {

/// A two-edit script proving that a fact admits incoherent states, together
/// with the state it produces and two locations that disagree in it.
struct Witness {
    EditScript edits;
    SystemState final_state;
    std::pair<std::string, std::string> disagreeing_pair;
};

/// Builds a witness for a fact with dof >= 2 and domain >= 2: starting from
/// the all-zeros state, write token 0 then token 1 to the two smallest
/// independent locations.  Deterministic.
///
/// Errors: unknown_fact, fact_not_encoded (dof 0), capacity_achieving (dof 1),
/// unary_domain (domain size < 2).
Witness construct_incoherence_witness(const DerivationGraph& graph, const std::string& fact_id);

/// Smallest value token present for the fact that differs from the oracle's
/// choice.  Whatever the oracle picks, some location can dissent.
///
/// Errors: unknown_fact, fact_not_encoded, coherent_state (nothing disagrees),
/// choice_not_present (the oracle must pick one of the present values).
ValueToken oracle_dissent(const SystemState& state, const std::string& fact_id,
                          ValueToken oracle_choice);

enum class SideInfoKind {
    priority_order,              // fixed preference list over locations
    authoritative_declaration,   // one location declared canonical
    timestamp_order,             // most-recently-written first
};

/// External information used to pick a winner among disagreeing locations.
/// `alternatives` is how many candidates the information can distinguish; its
/// bit content is log2(alternatives).
class SideInfo {
public:
    static SideInfo priority(std::vector<std::string> order);
    static SideInfo declaration(std::string location_id, std::size_t alternatives);
    static SideInfo timestamps(std::vector<std::string> most_recent_first);

    /// No information at all: distinguishes one alternative, 0 bits.
    static SideInfo none();

    SideInfoKind kind() const { return kind_; }
    const std::vector<std::string>& order() const { return order_; }
    std::size_t alternatives() const { return alternatives_; }
    double bit_content() const;

private:
    SideInfo(SideInfoKind kind, std::vector<std::string> order, std::size_t alternatives)
        : kind_(kind), order_(std::move(order)), alternatives_(alternatives) {}

    SideInfoKind kind_;
    std::vector<std::string> order_;  // for declarations: one entry
    std::size_t alternatives_;
};

/// Resolves a fact to one value using side information.  With k distinct
/// values present, the information must distinguish at least k alternatives;
/// the winner is the value of the designated location.
///
/// Errors: unknown_fact, fact_not_encoded, insufficient_side_information
/// (alternatives < k, or the order names no location of the fact),
/// unknown_location (declared location missing or encoding another fact).
ValueToken resolve_with_side_info(const SystemState& state, const std::string& fact_id,
                                  const SideInfo& side);

enum class CapStatus {
    witness_produced,       // all three hypotheses hold; incoherence follows
    vacuous_no_partition,   // fewer than two locations to partition
    vacuous_not_available,  // writes are coordinated or locations are derived
    vacuous_unary_domain,   // nothing to disagree about
};

const char* to_string(CapStatus status);

/// Consistency/availability/partition-tolerance reading of an encoding: when a
/// fact sits at two or more independently writable locations and writes stay
/// local, a two-edit script forces disagreement.  Any weaker hypothesis set is
/// reported vacuous.
struct CapReport {
    CapStatus status = CapStatus::vacuous_no_partition;
    std::optional<Witness> witness;

    bool triple_unsatisfiable() const { return status == CapStatus::witness_produced; }
};

/// Errors: unknown_fact.
CapReport cap_check(const DerivationGraph& graph, const std::string& fact_id,
                    bool locally_available);

struct TrajectoryStep {
    EditEvent edit;
    std::map<std::string, bool> coherent;  // per encoded fact, after the edit
    std::size_t manual_edits = 0;          // cumulative
};

struct Trajectory {
    std::vector<TrajectoryStep> steps;
    SystemState final_state;

    std::size_t manual_edits() const { return steps.empty() ? 0 : steps.back().manual_edits; }
};

/// Applies a script edit by edit, recording per-fact coherence after each one.
/// Every script entry counts as one manual edit; derivation propagation is
/// free.
///
/// Errors: SimulationError carrying the failing 0-based step index.
Trajectory run_edit_sequence(const SystemState& start, const EditScript& script);

} // namespace ssot
