#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>

#include "ssot/bounds.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace ssot;
using namespace ssot::testing;

namespace {

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return errc::io_error;
}

// Left side of the information identity the solver inverts.
double fano_lhs(int k, double p) {
    return binary_entropy(p) + p * std::log2(static_cast<double>(k - 1));
}

} // namespace

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(binary_entropy(0.25) == binary_entropy(0.75));
    // independently computed: H_b(0.19) = 0.7014714598838974
    CHECK(binary_entropy(0.19) == doctest::Approx(0.7014714598838974).epsilon(1e-12));
    CHECK(code_of([] { binary_entropy(-0.1); }) == errc::out_of_range);
    CHECK(code_of([] { binary_entropy(1.1); }) == errc::out_of_range);
}

TEST_CASE("fano endpoints and worked values") {
    CHECK(fano_min_error(4, 2.0) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(fano_min_error(4, 0.0) == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(fano_min_error(2, 1.0) == doctest::Approx(0.0).epsilon(1e-8));
    // independently computed by a high-precision solver
    CHECK(fano_min_error(4, 1.0) == doctest::Approx(0.1892896249152045).epsilon(1e-8));
    CHECK(fano_min_error(4, 1.5) == doctest::Approx(0.07438960046886223).epsilon(1e-8));

    CHECK(code_of([] { fano_min_error(1, 0.0); }) == errc::invalid_query);
    CHECK(code_of([] { fano_min_error(4, -0.5); }) == errc::invalid_query);
    CHECK(code_of([] { fano_min_error(4, 2.5); }) == errc::invalid_query);
}

TEST_CASE("fano solver satisfies its defining identity") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 2000; ++trial) {
        int k = std::uniform_int_distribution<int>(2, 64)(rng);
        double info = std::uniform_real_distribution<double>(0.0, std::log2(k))(rng);
        double p = fano_min_error(k, info);
        CHECK(p >= 0.0);
        CHECK(p <= (k - 1.0) / k + 1e-12);
        // H_b(p) + p log2(k-1) == log2(k) - info at the solution
        CHECK(fano_lhs(k, p) == doctest::Approx(std::log2(k) - info).epsilon(1e-6));
    }
}

TEST_CASE("fano is monotone: more information, less error") {
    std::mt19937_64 rng(90210);
    for (int trial = 0; trial < 500; ++trial) {
        int k = std::uniform_int_distribution<int>(2, 16)(rng);
        double a = std::uniform_real_distribution<double>(0.0, std::log2(k))(rng);
        double b = std::uniform_real_distribution<double>(0.0, std::log2(k))(rng);
        if (a > b) std::swap(a, b);
        CHECK(fano_min_error(k, b) <= fano_min_error(k, a) + 1e-9);
    }
}

TEST_CASE("fano inverse round-trips") {
    std::mt19937_64 rng(60601);
    for (int trial = 0; trial < 500; ++trial) {
        int k = std::uniform_int_distribution<int>(2, 16)(rng);
        double target = std::uniform_real_distribution<double>(0.0, (k - 1.0) / k)(rng);
        double info = fano_required_info(k, target);
        CHECK(info >= 0.0);
        CHECK(info <= std::log2(k) + 1e-9);
        // feeding the answer back permits (at least) the target error
        CHECK(fano_min_error(k, info) <= target + 1e-6);
    }
    CHECK(fano_required_info(4, 0.75) == doctest::Approx(0.0));
    CHECK(fano_required_info(4, 0.0) == doctest::Approx(2.0));
    CHECK(code_of([] { fano_required_info(4, 0.9); }) == errc::invalid_query);
}

TEST_CASE("side information requirement is log2 of the freedom") {
    CHECK(side_info_requirement(1) == 0.0);
    CHECK(side_info_requirement(2) == doctest::Approx(1.0).epsilon(1e-12));
    // independently computed: log2(3) = 1.584962500721156
    CHECK(side_info_requirement(3) == doctest::Approx(1.584962500721156).epsilon(1e-12));
    CHECK(side_info_requirement(8) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(code_of([] { side_info_requirement(0); }) == errc::not_encoded);
}

TEST_CASE("coherence-rate tradeoff is a step") {
    auto at_zero = rate_incoherence(0.0);
    REQUIRE(at_zero.has_value());
    CHECK(*at_zero == 1.0);
    CHECK_FALSE(rate_incoherence(0.25).has_value());  // unbounded
    CHECK_FALSE(rate_incoherence(1.0).has_value());
    CHECK(code_of([] { rate_incoherence(-0.1); }) == errc::out_of_range);
    CHECK(code_of([] { rate_incoherence(1.5); }) == errc::out_of_range);
}

TEST_CASE("value graph basics") {
    ValueGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.vertex_count() == 4);
    CHECK(code_of([&] { g.add_edge(0, 0); }) == errc::invalid_query);
    CHECK(code_of([&] { g.add_edge(0, 9); }) == errc::out_of_range);
    CHECK(code_of([] { ValueGraph big(65); }) == errc::too_large);
}

TEST_CASE("max clique on fixed shapes") {
    ValueGraph empty(5);
    CHECK(max_clique_size(empty) == 1);
    CHECK(max_clique_size(ValueGraph(0)) == 0);

    ValueGraph complete(6);
    for (std::size_t u = 0; u < 6; ++u)
        for (std::size_t v = u + 1; v < 6; ++v) complete.add_edge(u, v);
    CHECK(max_clique_size(complete) == 6);
    CHECK(confusability_required_bits(complete) ==
          doctest::Approx(std::log2(6.0)).epsilon(1e-12));

    ValueGraph cycle5(5);
    for (std::size_t i = 0; i < 5; ++i) cycle5.add_edge(i, (i + 1) % 5);
    CHECK(max_clique_size(cycle5) == 2);
    CHECK(confusability_required_bits(cycle5) == doctest::Approx(1.0).epsilon(1e-12));

    ValueGraph wide(40);
    CHECK(code_of([&] { max_clique_size(wide); }) == errc::too_large);
    CHECK(code_of([] { confusability_required_bits(ValueGraph(0)); }) == errc::invalid_query);
}

TEST_CASE("max clique matches exhaustive search on random graphs") {
    std::mt19937_64 rng(40404);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
        ValueGraph g(n);
        std::vector<std::uint32_t> rows(n, 0);
        std::bernoulli_distribution flip(std::uniform_real_distribution<double>(0.1, 0.9)(rng));
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (flip(rng)) {
                    g.add_edge(u, v);
                    rows[u] |= std::uint32_t{1} << v;
                    rows[v] |= std::uint32_t{1} << u;
                }
        CHECK(max_clique_size(g) == naive_max_clique(n, rows));
    }
}

TEST_CASE("error compounding") {
    CHECK(error_compounding(0.0, 1000) == 0.0);
    CHECK(error_compounding(0.5, 0) == 0.0);
    CHECK(error_compounding(1.0, 3) == 1.0);
    CHECK(error_compounding(0.01, 1) == doctest::Approx(0.01).epsilon(1e-12));
    // independently computed 1 - 0.99^n
    CHECK(error_compounding(0.01, 10) == doctest::Approx(0.09561792499119552).epsilon(1e-12));
    CHECK(error_compounding(0.01, 50) == doctest::Approx(0.39499393286246337).epsilon(1e-12));
    CHECK(error_compounding(0.01, 100) == doctest::Approx(0.6339676587267705).epsilon(1e-12));
    CHECK(code_of([] { error_compounding(-0.01, 3); }) == errc::out_of_range);
    CHECK(code_of([] { error_compounding(1.01, 3); }) == errc::out_of_range);

    // monotone in both arguments, bounded by 1
    std::mt19937_64 rng(11011);
    for (int trial = 0; trial < 500; ++trial) {
        double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(0, 1000)(rng);
        double e = error_compounding(p, n);
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
        CHECK(error_compounding(p, n + 1) >= e - 1e-15);
    }
}

TEST_CASE("amortized maintenance cost") {
    CHECK(amortized_cost(100, 50, 1) == 100);
    CHECK(amortized_cost(100, 50, 50) == 5000);
    CHECK(amortized_cost(7, 1, 1) == 7);
    CHECK(amortized_cost(0, 9, 9) == 0);

    CHECK(code_of([] { amortized_cost(10, 0, 1); }) == errc::invalid_regime);
    CHECK(code_of([] { amortized_cost(10, 5, 3); }) == errc::invalid_regime);
    CHECK(code_of([] { amortized_cost(10, 5, 0); }) == errc::invalid_regime);
    constexpr std::uint64_t big = std::numeric_limits<std::uint64_t>::max() / 2;
    CHECK(code_of([] { amortized_cost(big, 3, 3); }) == errc::too_large);

    // the dof-1 discount is exactly the location count
    for (std::uint64_t n = 2; n <= 100; ++n)
        CHECK(amortized_cost(60, n, n) == n * amortized_cost(60, n, 1));
}

TEST_CASE("regime report spans the three regimes") {
    DerivationGraph none = DerivationGraph::make({{"f", 2}, {"g", 2}}, {{"a", "g"}}, {});
    RegimeReport r0 = regime_report(none, "f");
    CHECK(r0.rate == 0);
    CHECK(r0.cost_class == CostClass::zero);
    CHECK_FALSE(r0.coherence.has_value());
    CHECK(r0.regime == Regime::not_encoded);
    CHECK_FALSE(r0.pareto_optimal);

    DerivationGraph chain = DerivationGraph::make({{"f", 2}}, {{"a", "f"}, {"b", "f"}},
                                                  {{"a", "b"}});
    RegimeReport r1 = regime_report(chain, "f");
    CHECK(r1.rate == 1);
    CHECK(r1.cost_class == CostClass::constant);
    CHECK(r1.coherence == 1);
    CHECK(r1.regime == Regime::optimal);
    CHECK(r1.pareto_optimal);

    DerivationGraph split = DerivationGraph::make({{"f", 2}}, {{"a", "f"}, {"b", "f"}}, {});
    RegimeReport r2 = regime_report(split, "f");
    CHECK(r2.rate == 2);
    CHECK(r2.cost_class == CostClass::linear_in_rate);
    CHECK(r2.coherence == 0);
    CHECK(r2.regime == Regime::above_capacity);
    CHECK_FALSE(r2.pareto_optimal);

    CHECK(code_of([&] { regime_report(split, "zz"); }) == errc::unknown_fact);
}

TEST_CASE("cost class labels") {
    CHECK(std::string(to_string(CostClass::zero)) == "zero");
    CHECK(std::string(to_string(CostClass::constant)) == "constant");
    CHECK(std::string(to_string(CostClass::linear_in_rate)) == "linear_in_R");
}
