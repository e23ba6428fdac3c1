#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssot/dof.hpp"
#include "ssot/model.hpp"

namespace ssot {

/// H_b(p) = -p log2 p - (1-p) log2 (1-p), with H_b(0) = H_b(1) = 0.
///
/// Errors: out_of_range unless 0 <= p <= 1.
double binary_entropy(double p);

/// Smallest error probability compatible with the Fano inequality for a
/// K-valued fact when the reader holds `mutual_info_bits` bits about it:
/// solves H_b(p) + p log2(K-1) = log2(K) - I by bisection to 1e-9.
/// Returns 0 when I = log2(K) and (K-1)/K when I = 0.
///
/// Errors: invalid_query unless K >= 2 and 0 <= I <= log2(K).
double fano_min_error(int k, double mutual_info_bits);

/// Inverse direction: bits of information needed so Fano permits error at
/// most `target_error`.
///
/// Errors: invalid_query unless K >= 2 and 0 <= target_error <= (K-1)/K.
double fano_required_info(int k, double target_error);

/// Bits a resolver must supply to pick among `dof` independent encodings:
/// log2(dof).
///
/// Errors: not_encoded when dof = 0.
double side_info_requirement(std::size_t dof);

/// Largest encoding rate whose worst-case incoherence stays within epsilon.
/// A step: exactly 1 at epsilon = 0 (only single-source encodings never
/// disagree), unbounded (empty) for any positive tolerance.
///
/// Errors: out_of_range unless 0 <= epsilon <= 1.
std::optional<double> rate_incoherence(double epsilon);

/// Undirected graph over value tokens 0..n-1; an edge means two values that
/// readers cannot tell apart.
class ValueGraph {
public:
    explicit ValueGraph(std::size_t vertex_count);

    void add_edge(std::size_t u, std::size_t v);  // out_of_range, invalid_query on u == v
    bool has_edge(std::size_t u, std::size_t v) const;
    std::size_t vertex_count() const { return adjacency_.size(); }
    std::uint64_t neighbours(std::size_t v) const { return adjacency_[v]; }

private:
    std::vector<std::uint64_t> adjacency_;  // bitmask rows
};

/// Size of the largest set of pairwise confusable values (exact search).
///
/// Errors: too_large beyond 32 vertices.
std::size_t max_clique_size(const ValueGraph& graph);

/// log2 of the max clique size: bits of side information forced by value
/// confusability alone.
///
/// Errors: too_large beyond 32 vertices.
double confusability_required_bits(const ValueGraph& graph);

/// 1 - (1-p)^n: probability at least one of n independent manual update steps
/// goes wrong.
///
/// Errors: out_of_range unless 0 <= p <= 1.
double error_compounding(double per_step_error, std::uint64_t steps);

/// Total edits for m fact changes across n independent locations: m when
/// dof = 1 (one edit propagates), m * n when dof = n > 1 (every location is
/// touched by hand).  Only those two regimes have a defined cost.
///
/// Errors: invalid_regime unless n >= 1 and dof is 1 or n; too_large on
/// overflow.
std::uint64_t amortized_cost(std::uint64_t fact_changes, std::uint64_t locations,
                             std::uint64_t dof);

enum class CostClass {
    zero,            // nothing encoded, nothing to pay
    constant,        // one edit per change
    linear_in_rate,  // dof edits per change
};

const char* to_string(CostClass cls);

/// Position of one fact's encoding in rate/cost/coherence space.
/// rate R = dof; coherence is guaranteed (1) at R = 1, violable (0) above,
/// undefined below; (R=1, constant, 1) is the only Pareto point.
struct RegimeReport {
    std::size_t rate = 0;
    CostClass cost_class = CostClass::zero;
    std::optional<int> coherence;  // 1 guaranteed, 0 violable, empty undefined
    Regime regime = Regime::not_encoded;
    bool pareto_optimal = false;

    friend bool operator==(const RegimeReport&, const RegimeReport&) = default;
};

/// Errors: unknown_fact.
RegimeReport regime_report(const DerivationGraph& graph, const std::string& fact_id);

} // namespace ssot
