#include "ssot/model.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ssot {

const char* errc_name(errc code) {
    switch (code) {
    case errc::unknown_location: return "unknown_location";
    case errc::unknown_fact: return "unknown_fact";
    case errc::duplicate_id: return "duplicate_id";
    case errc::undeclared_id: return "undeclared_id";
    case errc::cyclic_graph: return "cyclic_graph";
    case errc::empty_system: return "empty_system";
    case errc::location_set_mismatch: return "location_set_mismatch";
    case errc::invariant_violation: return "invariant_violation";
    case errc::derived_target_rejected: return "derived_target_rejected";
    case errc::value_out_of_domain: return "value_out_of_domain";
    case errc::fact_not_encoded: return "fact_not_encoded";
    case errc::capacity_achieving: return "capacity_achieving";
    case errc::unary_domain: return "unary_domain";
    case errc::coherent_state: return "coherent_state";
    case errc::choice_not_present: return "choice_not_present";
    case errc::insufficient_side_information: return "insufficient_side_information";
    case errc::out_of_range: return "out_of_range";
    case errc::invalid_query: return "invalid_query";
    case errc::not_encoded: return "not_encoded";
    case errc::too_large: return "too_large";
    case errc::invalid_regime: return "invalid_regime";
    case errc::syntax_error: return "syntax_error";
    case errc::io_error: return "io_error";
    }
    return "unknown";
}

DerivationGraph DerivationGraph::make(std::vector<Fact> facts, std::vector<Location> locations,
                                      std::vector<Edge> edges) {
    DerivationGraph g;

    std::sort(facts.begin(), facts.end(),
              [](const Fact& a, const Fact& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < facts.size(); ++i) {
        if (i > 0 && facts[i].id == facts[i - 1].id)
            throw Error(errc::duplicate_id, "fact declared twice: " + facts[i].id);
        if (facts[i].domain_size < 1)
            throw Error(errc::invariant_violation,
                        "fact " + facts[i].id + " needs a domain of at least 1");
        g.fact_index_[facts[i].id] = i;
    }
    g.facts_ = std::move(facts);

    std::sort(locations.begin(), locations.end(),
              [](const Location& a, const Location& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < locations.size(); ++i) {
        if (i > 0 && locations[i].id == locations[i - 1].id)
            throw Error(errc::duplicate_id, "location declared twice: " + locations[i].id);
        if (!g.fact_index_.count(locations[i].fact))
            throw Error(errc::undeclared_id, "location " + locations[i].id +
                                                 " encodes undeclared fact " + locations[i].fact);
        g.location_index_[locations[i].id] = i;
    }
    g.locations_ = std::move(locations);

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.children_.assign(g.locations_.size(), {});
    g.in_degree_.assign(g.locations_.size(), 0);
    for (const Edge& e : edges) {
        auto src = g.location_index_.find(e.source);
        auto dst = g.location_index_.find(e.derived);
        if (src == g.location_index_.end())
            throw Error(errc::undeclared_id, "edge from undeclared location " + e.source);
        if (dst == g.location_index_.end())
            throw Error(errc::undeclared_id, "edge to undeclared location " + e.derived);
        if (src->second == dst->second)
            throw Error(errc::cyclic_graph, "location derived from itself: " + e.source);
        g.children_[src->second].push_back(dst->second);
        ++g.in_degree_[dst->second];
    }
    g.edges_ = std::move(edges);

    // Kahn's algorithm; leftover nodes sit on a cycle.
    std::vector<std::size_t> degree = g.in_degree_;
    std::deque<std::size_t> ready;
    for (std::size_t i = 0; i < degree.size(); ++i)
        if (degree[i] == 0) ready.push_back(i);
    std::size_t seen = 0;
    while (!ready.empty()) {
        std::size_t v = ready.front();
        ready.pop_front();
        ++seen;
        for (std::size_t c : g.children_[v])
            if (--degree[c] == 0) ready.push_back(c);
    }
    if (seen != g.locations_.size())
        throw Error(errc::cyclic_graph, "derivation edges form a cycle");

    return g;
}

bool DerivationGraph::has_fact(const std::string& id) const { return fact_index_.count(id) > 0; }

bool DerivationGraph::has_location(const std::string& id) const {
    return location_index_.count(id) > 0;
}

bool DerivationGraph::has_edge(const std::string& source, const std::string& derived) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{source, derived});
}

const Fact& DerivationGraph::fact(const std::string& id) const {
    auto it = fact_index_.find(id);
    if (it == fact_index_.end()) throw Error(errc::unknown_fact, "unknown fact: " + id);
    return facts_[it->second];
}

const Location& DerivationGraph::location(const std::string& id) const {
    return locations_[index_of(id)];
}

std::size_t DerivationGraph::index_of(const std::string& location_id) const {
    auto it = location_index_.find(location_id);
    if (it == location_index_.end())
        throw Error(errc::unknown_location, "unknown location: " + location_id);
    return it->second;
}

std::size_t DerivationGraph::in_degree(const std::string& location_id) const {
    return in_degree_[index_of(location_id)];
}

std::vector<std::string> DerivationGraph::parents(const std::string& location_id) const {
    const std::string& id = locations_[index_of(location_id)].id;
    std::vector<std::string> out;
    for (const Edge& e : edges_)
        if (e.derived == id) out.push_back(e.source);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> DerivationGraph::children(const std::string& location_id) const {
    std::vector<std::string> out;
    for (std::size_t c : children_[index_of(location_id)]) out.push_back(locations_[c].id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> DerivationGraph::locations_of_fact(const std::string& fact_id) const {
    std::vector<std::string> out;
    for (const Location& l : locations_)
        if (l.fact == fact_id) out.push_back(l.id);
    return out;  // locations_ is sorted already
}

std::vector<std::string> DerivationGraph::successors_of(const std::string& location_id) const {
    std::vector<bool> seen(locations_.size(), false);
    std::deque<std::size_t> queue{index_of(location_id)};
    seen[queue.front()] = true;
    std::vector<std::string> out;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        out.push_back(locations_[v].id);
        for (std::size_t c : children_[v])
            if (!seen[c]) {
                seen[c] = true;
                queue.push_back(c);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool DerivationGraph::is_forest() const {
    return std::all_of(in_degree_.begin(), in_degree_.end(),
                       [](std::size_t d) { return d <= 1; });
}

bool DerivationGraph::edges_within_facts() const {
    return std::all_of(edges_.begin(), edges_.end(), [this](const Edge& e) {
        return location(e.source).fact == location(e.derived).fact;
    });
}

DerivationGraph DerivationGraph::restricted_to_fact(const std::string& fact_id) const {
    std::vector<Location> kept;
    std::set<std::string> ids;
    for (const Location& l : locations_)
        if (l.fact == fact_id) {
            kept.push_back(l);
            ids.insert(l.id);
        }
    std::vector<Edge> kept_edges;
    for (const Edge& e : edges_)
        if (ids.count(e.source) && ids.count(e.derived)) kept_edges.push_back(e);
    return make(facts_, std::move(kept), std::move(kept_edges));
}

DerivationGraph DerivationGraph::with_edges(const std::vector<Edge>& extra) const {
    std::vector<Edge> all = edges_;
    all.insert(all.end(), extra.begin(), extra.end());
    return make(facts_, locations_, std::move(all));
}

bool DerivationGraph::same_shape(const DerivationGraph& other) const {
    return facts_ == other.facts_ && locations_ == other.locations_;
}

SystemState SystemState::make(DerivationGraph graph,
                              const std::map<std::string, ValueToken>& values) {
    if (!graph.is_forest())
        throw Error(errc::invariant_violation, "a location is derived from two sources");
    if (!graph.edges_within_facts())
        throw Error(errc::invariant_violation, "a derivation edge crosses facts");

    for (const auto& [id, token] : values) {
        (void)token;
        if (!graph.has_location(id))
            throw Error(errc::unknown_location, "value for unknown location: " + id);
    }

    std::vector<ValueToken> dense(graph.location_count(), 0);
    for (const Location& l : graph.locations()) {
        auto it = values.find(l.id);
        if (it == values.end())
            throw Error(errc::invariant_violation, "no value for location " + l.id);
        int domain = graph.fact(l.fact).domain_size;
        if (it->second < 0 || it->second >= domain)
            throw Error(errc::value_out_of_domain,
                        "value " + std::to_string(it->second) + " outside domain of " + l.fact);
        dense[graph.index_of(l.id)] = it->second;
    }

    for (const Edge& e : graph.edges()) {
        if (dense[graph.index_of(e.derived)] != dense[graph.index_of(e.source)])
            throw Error(errc::invariant_violation,
                        e.derived + " is derived from " + e.source + " but disagrees with it");
    }

    auto shared = std::make_shared<const DerivationGraph>(std::move(graph));
    return SystemState(std::move(shared), std::move(dense));
}

SystemState SystemState::uniform(DerivationGraph graph, ValueToken token) {
    std::map<std::string, ValueToken> values;
    for (const Location& l : graph.locations()) values[l.id] = token;
    return make(std::move(graph), values);
}

ValueToken SystemState::value(const std::string& location_id) const {
    return values_[graph_->index_of(location_id)];
}

std::map<std::string, ValueToken> SystemState::values() const {
    std::map<std::string, ValueToken> out;
    for (const Location& l : graph_->locations()) out[l.id] = values_[graph_->index_of(l.id)];
    return out;
}

SystemState apply_edit(const SystemState& state, const EditEvent& edit) {
    const DerivationGraph& g = state.graph();
    std::size_t target = g.index_of(edit.target);  // unknown_location
    if (g.in_degree(edit.target) != 0)
        throw Error(errc::derived_target_rejected,
                    "cannot edit derived location " + edit.target + "; edit its source");
    int domain = g.fact(g.location(edit.target).fact).domain_size;
    if (edit.value < 0 || edit.value >= domain)
        throw Error(errc::value_out_of_domain, "value " + std::to_string(edit.value) +
                                                   " outside domain of size " +
                                                   std::to_string(domain));

    std::vector<ValueToken> next = state.values_;
    for (const std::string& id : g.successors_of(g.locations()[target].id))
        next[g.index_of(id)] = edit.value;
    return SystemState(state.graph_ptr(), std::move(next));
}

bool is_coherent(const SystemState& state, const std::string& fact_id) {
    const DerivationGraph& g = state.graph();
    g.fact(fact_id);  // unknown_fact
    std::vector<std::string> locs = g.locations_of_fact(fact_id);
    if (locs.empty())
        throw Error(errc::fact_not_encoded, "fact " + fact_id + " has no locations");
    ValueToken first = state.value(locs.front());
    return std::all_of(locs.begin(), locs.end(),
                       [&](const std::string& id) { return state.value(id) == first; });
}

CapabilityClass classify_capabilities(const Capabilities& caps) {
    if (caps.causal_propagation && caps.provenance_observability) return CapabilityClass::complete;
    if (caps.provenance_observability) return CapabilityClass::missing_causal;
    if (caps.causal_propagation) return CapabilityClass::missing_provenance;
    return CapabilityClass::missing_both;
}

const char* to_string(CapabilityClass cls) {
    switch (cls) {
    case CapabilityClass::complete: return "complete";
    case CapabilityClass::missing_causal: return "missing_causal";
    case CapabilityClass::missing_provenance: return "missing_provenance";
    case CapabilityClass::missing_both: return "missing_both";
    }
    return "unknown";
}

const std::vector<Capabilities>& builtin_mechanisms() {
    static const std::vector<Capabilities> table = {
        {"C++", false, false},  {"CLOS", true, true}, {"Go", false, false},
        {"Java", false, true},  {"Python", true, true},
        {"Rust", true, false},  {"Smalltalk", true, true},
    };
    return table;
}

} // namespace ssot
