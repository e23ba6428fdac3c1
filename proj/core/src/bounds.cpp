#include "ssot/bounds.hpp"

#include <bit>
#include <cmath>

namespace ssot {

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw Error(errc::out_of_range, "binary entropy needs p in [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

namespace {

// Left side of the Fano identity; increasing on [0, (k-1)/k].
double fano_lhs(double p, int k) {
    return binary_entropy(p) + p * std::log2(static_cast<double>(k - 1));
}

void check_k(int k) {
    if (k < 2) throw Error(errc::invalid_query, "the fact needs at least two possible values");
}

} // namespace

double fano_min_error(int k, double mutual_info_bits) {
    check_k(k);
    double log_k = std::log2(static_cast<double>(k));
    if (mutual_info_bits < 0.0 || mutual_info_bits > log_k + 1e-12)
        throw Error(errc::invalid_query, "mutual information must lie in [0, log2 k]");

    double target = log_k - std::min(mutual_info_bits, log_k);
    double hi = static_cast<double>(k - 1) / k;
    if (target <= 0.0) return 0.0;
    if (target >= log_k) return hi;

    double lo = 0.0;
    while (hi - lo > 1e-9) {
        double mid = (lo + hi) / 2.0;
        if (fano_lhs(mid, k) < target)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2.0;
}

double fano_required_info(int k, double target_error) {
    check_k(k);
    double max_error = static_cast<double>(k - 1) / k;
    if (target_error < 0.0 || target_error > max_error + 1e-12)
        throw Error(errc::invalid_query, "target error must lie in [0, (k-1)/k]");

    double bits = std::log2(static_cast<double>(k)) - fano_lhs(std::min(target_error, max_error), k);
    return std::max(bits, 0.0);
}

double side_info_requirement(std::size_t dof) {
    if (dof == 0) throw Error(errc::not_encoded, "no encodings to choose between");
    return std::log2(static_cast<double>(dof));
}

std::optional<double> rate_incoherence(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw Error(errc::out_of_range, "incoherence tolerance lies in [0, 1]");
    if (epsilon == 0.0) return 1.0;
    return std::nullopt;
}

ValueGraph::ValueGraph(std::size_t vertex_count) {
    if (vertex_count > 64)
        throw Error(errc::too_large, "value graphs hold at most 64 vertices");
    adjacency_.assign(vertex_count, 0);
}

void ValueGraph::add_edge(std::size_t u, std::size_t v) {
    if (u >= adjacency_.size() || v >= adjacency_.size())
        throw Error(errc::out_of_range, "vertex out of range");
    if (u == v) throw Error(errc::invalid_query, "a value is never confusable with itself");
    adjacency_[u] |= std::uint64_t{1} << v;
    adjacency_[v] |= std::uint64_t{1} << u;
}

bool ValueGraph::has_edge(std::size_t u, std::size_t v) const {
    if (u >= adjacency_.size() || v >= adjacency_.size())
        throw Error(errc::out_of_range, "vertex out of range");
    return (adjacency_[u] >> v) & 1;
}

namespace {

// Carraghan-Pardalos branch and bound over bitmask candidate sets.
void grow_clique(const ValueGraph& g, std::uint64_t candidates, std::size_t size,
                 std::size_t& best) {
    while (candidates != 0) {
        if (size + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
        std::size_t v = static_cast<std::size_t>(std::countr_zero(candidates));
        candidates &= candidates - 1;
        if (size + 1 > best) best = size + 1;
        grow_clique(g, candidates & g.neighbours(v), size + 1, best);
    }
}

} // namespace

std::size_t max_clique_size(const ValueGraph& graph) {
    if (graph.vertex_count() > 32)
        throw Error(errc::too_large, "exact search is limited to 32 values");
    if (graph.vertex_count() == 0) return 0;
    std::uint64_t all = graph.vertex_count() == 64
                            ? ~std::uint64_t{0}
                            : (std::uint64_t{1} << graph.vertex_count()) - 1;
    std::size_t best = 0;
    grow_clique(graph, all, 0, best);
    return best;
}

double confusability_required_bits(const ValueGraph& graph) {
    if (graph.vertex_count() == 0)
        throw Error(errc::invalid_query, "no values, nothing to distinguish");
    return std::log2(static_cast<double>(max_clique_size(graph)));
}

double error_compounding(double per_step_error, std::uint64_t steps) {
    if (!(per_step_error >= 0.0 && per_step_error <= 1.0))
        throw Error(errc::out_of_range, "per-step error lies in [0, 1]");
    if (steps == 0 || per_step_error == 0.0) return 0.0;
    if (per_step_error == 1.0) return 1.0;
    return -std::expm1(static_cast<double>(steps) * std::log1p(-per_step_error));
}

std::uint64_t amortized_cost(std::uint64_t fact_changes, std::uint64_t locations,
                             std::uint64_t dof) {
    if (locations < 1)
        throw Error(errc::invalid_regime, "a fact is updated across at least one location");
    if (dof != 1 && dof != locations)
        throw Error(errc::invalid_regime,
                    "cost is defined only for dof 1 or dof equal to the location count");
    if (dof == 1) return fact_changes;
    std::uint64_t total = 0;
    if (__builtin_mul_overflow(fact_changes, locations, &total))
        throw Error(errc::too_large, "edit count overflows");
    return total;
}

const char* to_string(CostClass cls) {
    switch (cls) {
    case CostClass::zero: return "zero";
    case CostClass::constant: return "constant";
    case CostClass::linear_in_rate: return "linear_in_R";
    }
    return "unknown";
}

RegimeReport regime_report(const DerivationGraph& graph, const std::string& fact_id) {
    graph.fact(fact_id);  // unknown_fact
    DofReport dof = compute_dof(graph.restricted_to_fact(fact_id));

    RegimeReport report;
    report.rate = dof.dof;
    report.regime = dof.regime;
    if (dof.dof == 0) {
        report.cost_class = CostClass::zero;
        report.coherence = std::nullopt;
        report.pareto_optimal = false;
    } else if (dof.dof == 1) {
        report.cost_class = CostClass::constant;
        report.coherence = 1;
        report.pareto_optimal = true;
    } else {
        report.cost_class = CostClass::linear_in_rate;
        report.coherence = 0;
        report.pareto_optimal = false;
    }
    return report;
}

} // namespace ssot
