#include "ssot/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ssot/dof.hpp"

namespace ssot {

Witness construct_incoherence_witness(const DerivationGraph& graph, const std::string& fact_id) {
    const Fact& fact = graph.fact(fact_id);  // unknown_fact
    DerivationGraph restricted = graph.restricted_to_fact(fact_id);
    DofReport dof = compute_dof(restricted);
    if (dof.dof == 0)
        throw Error(errc::fact_not_encoded, "fact " + fact_id + " has no locations");
    if (dof.dof == 1)
        throw Error(errc::capacity_achieving,
                    "fact " + fact_id + " has one source; no witness exists");
    if (fact.domain_size < 2)
        throw Error(errc::unary_domain,
                    "fact " + fact_id + " has a unary domain; disagreement is impossible");

    // dof.sources is sorted; pick the two smallest.
    const std::string& first = dof.sources[0];
    const std::string& second = dof.sources[1];
    EditScript edits = {{first, 0}, {second, 1}};

    SystemState state = SystemState::uniform(restricted, 0);
    for (const EditEvent& e : edits) state = apply_edit(state, e);
    return Witness{std::move(edits), std::move(state), {first, second}};
}

ValueToken oracle_dissent(const SystemState& state, const std::string& fact_id,
                          ValueToken oracle_choice) {
    const DerivationGraph& g = state.graph();
    g.fact(fact_id);  // unknown_fact
    std::vector<std::string> locs = g.locations_of_fact(fact_id);
    if (locs.empty())
        throw Error(errc::fact_not_encoded, "fact " + fact_id + " has no locations");

    std::set<ValueToken> present;
    for (const std::string& id : locs) present.insert(state.value(id));
    if (present.size() < 2)
        throw Error(errc::coherent_state, "all locations agree; no dissent to report");
    if (!present.count(oracle_choice))
        throw Error(errc::choice_not_present,
                    "oracle chose " + std::to_string(oracle_choice) +
                        " but no location holds it");
    for (ValueToken v : present)
        if (v != oracle_choice) return v;
    throw Error(errc::coherent_state, "unreachable");  // present.size() >= 2
}

SideInfo SideInfo::priority(std::vector<std::string> order) {
    std::size_t n = order.size();
    return SideInfo(SideInfoKind::priority_order, std::move(order), std::max<std::size_t>(n, 1));
}

SideInfo SideInfo::declaration(std::string location_id, std::size_t alternatives) {
    if (alternatives == 0)
        throw Error(errc::out_of_range, "a declaration distinguishes at least one alternative");
    return SideInfo(SideInfoKind::authoritative_declaration, {std::move(location_id)},
                    alternatives);
}

SideInfo SideInfo::timestamps(std::vector<std::string> most_recent_first) {
    std::size_t n = most_recent_first.size();
    return SideInfo(SideInfoKind::timestamp_order, std::move(most_recent_first),
                    std::max<std::size_t>(n, 1));
}

SideInfo SideInfo::none() { return SideInfo(SideInfoKind::priority_order, {}, 1); }

double SideInfo::bit_content() const { return std::log2(static_cast<double>(alternatives_)); }

ValueToken resolve_with_side_info(const SystemState& state, const std::string& fact_id,
                                  const SideInfo& side) {
    const DerivationGraph& g = state.graph();
    g.fact(fact_id);  // unknown_fact
    std::vector<std::string> locs = g.locations_of_fact(fact_id);
    if (locs.empty())
        throw Error(errc::fact_not_encoded, "fact " + fact_id + " has no locations");

    std::set<ValueToken> present;
    for (const std::string& id : locs) present.insert(state.value(id));
    if (side.alternatives() < present.size())
        throw Error(errc::insufficient_side_information,
                    std::to_string(present.size()) + " values disagree but the side information "
                                                     "distinguishes only " +
                        std::to_string(side.alternatives()));

    if (side.kind() == SideInfoKind::authoritative_declaration) {
        const std::string& id = side.order().front();
        if (!g.has_location(id) || g.location(id).fact != fact_id)
            throw Error(errc::unknown_location,
                        "declared authority " + id + " does not encode " + fact_id);
        return state.value(id);
    }

    for (const std::string& id : side.order())
        if (g.has_location(id) && g.location(id).fact == fact_id) return state.value(id);
    if (present.size() == 1) return *present.begin();  // agreement needs no designation
    throw Error(errc::insufficient_side_information,
                "the ordering names no location that encodes " + fact_id);
}

const char* to_string(CapStatus status) {
    switch (status) {
    case CapStatus::witness_produced: return "witness_produced";
    case CapStatus::vacuous_no_partition: return "vacuous_no_partition";
    case CapStatus::vacuous_not_available: return "vacuous_not_available";
    case CapStatus::vacuous_unary_domain: return "vacuous_unary_domain";
    }
    return "unknown";
}

CapReport cap_check(const DerivationGraph& graph, const std::string& fact_id,
                    bool locally_available) {
    const Fact& fact = graph.fact(fact_id);  // unknown_fact
    std::vector<std::string> locs = graph.locations_of_fact(fact_id);

    if (locs.size() < 2) return {CapStatus::vacuous_no_partition, std::nullopt};

    bool any_derived = std::any_of(locs.begin(), locs.end(), [&](const std::string& id) {
        return graph.in_degree(id) != 0;
    });
    if (!locally_available || any_derived)
        return {CapStatus::vacuous_not_available, std::nullopt};

    if (fact.domain_size < 2) return {CapStatus::vacuous_unary_domain, std::nullopt};

    Witness witness = construct_incoherence_witness(graph, fact_id);
    return {CapStatus::witness_produced, std::move(witness)};
}

Trajectory run_edit_sequence(const SystemState& start, const EditScript& script) {
    std::vector<std::string> encoded_facts;
    for (const Fact& f : start.graph().facts())
        if (!start.graph().locations_of_fact(f.id).empty()) encoded_facts.push_back(f.id);

    Trajectory trajectory{{}, start};
    for (std::size_t i = 0; i < script.size(); ++i) {
        try {
            trajectory.final_state = apply_edit(trajectory.final_state, script[i]);
        } catch (const Error& e) {
            throw SimulationError(e.code(), e.what(), i);
        }
        TrajectoryStep step{script[i], {}, i + 1};
        for (const std::string& f : encoded_facts)
            step.coherent[f] = is_coherent(trajectory.final_state, f);
        trajectory.steps.push_back(std::move(step));
    }
    return trajectory;
}

} // namespace ssot
