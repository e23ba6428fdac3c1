#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "ssot/dof.hpp"
#include "ssot/simulate.hpp"
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

DerivationGraph independent(std::size_t n, int domain) {
    std::vector<Location> locs;
    for (std::size_t i = 0; i < n; ++i) locs.push_back({loc_id(i), "f"});
    return DerivationGraph::make({{"f", domain}}, locs, {});
}

} // namespace

TEST_CASE("witness edits the two smallest sources") {
    DerivationGraph g = DerivationGraph::make(
        {{"f", 2}}, {{"m", "f"}, {"b", "f"}, {"k", "f"}, {"z", "f"}}, {{"m", "z"}});
    Witness w = construct_incoherence_witness(g, "f");
    REQUIRE(w.edits.size() == 2);
    CHECK(w.edits[0] == EditEvent{"b", 0});
    CHECK(w.edits[1] == EditEvent{"k", 1});
    CHECK(w.disagreeing_pair == std::pair<std::string, std::string>{"b", "k"});
    CHECK(w.final_state.value("b") == 0);
    CHECK(w.final_state.value("k") == 1);
    CHECK_FALSE(is_coherent(w.final_state, "f"));
}

TEST_CASE("witness error taxonomy") {
    DerivationGraph g = DerivationGraph::make({{"f", 2}}, {{"a", "f"}, {"b", "f"}}, {});
    CHECK(code_of([&] { construct_incoherence_witness(g, "zz"); }) == errc::unknown_fact);

    DerivationGraph unencoded = DerivationGraph::make({{"f", 2}, {"g", 2}}, {{"a", "f"}}, {});
    CHECK(code_of([&] { construct_incoherence_witness(unencoded, "g"); }) ==
          errc::fact_not_encoded);

    DerivationGraph chain = DerivationGraph::make({{"f", 2}}, {{"a", "f"}, {"b", "f"}},
                                                  {{"a", "b"}});
    CHECK(code_of([&] { construct_incoherence_witness(chain, "f"); }) ==
          errc::capacity_achieving);

    DerivationGraph unary = DerivationGraph::make({{"f", 1}}, {{"a", "f"}, {"b", "f"}}, {});
    CHECK(code_of([&] { construct_incoherence_witness(unary, "f"); }) == errc::unary_domain);
}

TEST_CASE("the witness script breaks coherence from any start state") {
    std::mt19937_64 rng(424242);
    int produced = 0;
    for (int trial = 0; trial < 500; ++trial) {
        RawGraph raw = random_forest(rng, 8, 0.5, 3);
        DerivationGraph g = raw.graph();
        if (compute_dof(g).dof < 2) continue;
        ++produced;
        Witness w = construct_incoherence_witness(g, "f");

        // random valid start: begin uniform, push random values through sources
        SystemState start = SystemState::uniform(g, 0);
        for (std::size_t i : naive_sources(raw)) {
            EditEvent e{loc_id(i), std::uniform_int_distribution<int>(0, 2)(rng)};
            start = apply_edit(start, e);
        }

        SystemState end = start;
        for (const EditEvent& e : w.edits) end = apply_edit(end, e);
        CHECK_FALSE(is_coherent(end, "f"));
        CHECK(end.value(w.disagreeing_pair.first) != end.value(w.disagreeing_pair.second));
    }
    CHECK(produced > 100);  // the generator actually exercised the property
}

TEST_CASE("dissent exists for every oracle choice in an incoherent state") {
    DerivationGraph g = independent(3, 3);
    for (int v0 = 0; v0 < 3; ++v0)
        for (int v1 = 0; v1 < 3; ++v1)
            for (int v2 = 0; v2 < 3; ++v2) {
                SystemState s = SystemState::make(
                    g, {{loc_id(0), v0}, {loc_id(1), v1}, {loc_id(2), v2}});
                std::set<ValueToken> present{v0, v1, v2};
                for (int choice = 0; choice < 3; ++choice) {
                    if (present.size() < 2) {
                        CHECK(code_of([&] { oracle_dissent(s, "f", choice); }) ==
                              errc::coherent_state);
                    } else if (!present.count(choice)) {
                        CHECK(code_of([&] { oracle_dissent(s, "f", choice); }) ==
                              errc::choice_not_present);
                    } else {
                        ValueToken d = oracle_dissent(s, "f", choice);
                        CHECK(present.count(d));
                        CHECK(d != choice);
                        // smallest dissenting value
                        for (ValueToken v : present) {
                            if (v == choice) continue;
                            CHECK(d <= v);
                        }
                    }
                }
            }
}

TEST_CASE("side information carries log2(alternatives) bits") {
    CHECK(SideInfo::none().alternatives() == 1);
    CHECK(SideInfo::none().bit_content() == 0.0);
    CHECK(SideInfo::priority({}).alternatives() == 1);
    CHECK(SideInfo::priority({"a", "b", "c"}).alternatives() == 3);
    CHECK(SideInfo::priority({"a", "b", "c"}).bit_content() ==
          doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    CHECK(SideInfo::timestamps({"a", "b"}).alternatives() == 2);
    CHECK(SideInfo::timestamps({"a", "b"}).bit_content() == doctest::Approx(1.0));
    CHECK(SideInfo::declaration("a", 4).alternatives() == 4);
    CHECK(SideInfo::declaration("a", 4).bit_content() == doctest::Approx(2.0));
    CHECK(code_of([] { SideInfo::declaration("a", 0); }) == errc::out_of_range);
}

TEST_CASE("resolution needs as many alternatives as disagreeing values") {
    DerivationGraph g = independent(3, 4);
    SystemState split = SystemState::make(
        g, {{loc_id(0), 0}, {loc_id(1), 1}, {loc_id(2), 2}});  // k = 3

    // too weak: distinguishes fewer than k alternatives
    CHECK(code_of([&] { resolve_with_side_info(split, "f", SideInfo::none()); }) ==
          errc::insufficient_side_information);
    CHECK(code_of([&] {
              resolve_with_side_info(split, "f", SideInfo::priority({loc_id(0), loc_id(1)}));
          }) == errc::insufficient_side_information);

    // strong enough: first named location wins
    CHECK(resolve_with_side_info(
              split, "f", SideInfo::priority({loc_id(1), loc_id(0), loc_id(2)})) == 1);
    CHECK(resolve_with_side_info(
              split, "f", SideInfo::timestamps({loc_id(2), loc_id(0), loc_id(1)})) == 2);
    CHECK(resolve_with_side_info(split, "f", SideInfo::declaration(loc_id(0), 3)) == 0);

    // a declaration must point at a location of the fact
    CHECK(code_of([&] {
              resolve_with_side_info(split, "f", SideInfo::declaration("zz", 3));
          }) == errc::unknown_location);

    // an order that never names the fact cannot break the tie
    CHECK(code_of([&] {
              resolve_with_side_info(split, "f", SideInfo::priority({"x", "y", "z"}));
          }) == errc::insufficient_side_information);

    // agreement needs no designation at all
    SystemState agreed = SystemState::uniform(g, 3);
    CHECK(resolve_with_side_info(agreed, "f", SideInfo::none()) == 3);
    CHECK(resolve_with_side_info(agreed, "f", SideInfo::priority({"x"})) == 3);
}

TEST_CASE("resolution threshold is exact on random splits") {
    std::mt19937_64 rng(77007);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
        int domain = std::uniform_int_distribution<int>(2, 4)(rng);
        DerivationGraph g = independent(n, domain);

        std::map<std::string, ValueToken> values;
        std::set<ValueToken> present;
        for (std::size_t i = 0; i < n; ++i) {
            ValueToken v = std::uniform_int_distribution<int>(0, domain - 1)(rng);
            values[loc_id(i)] = v;
            present.insert(v);
        }
        SystemState s = SystemState::make(g, values);
        std::size_t k = present.size();

        // order listing every location always resolves, and to the first entry
        std::vector<std::string> order;
        for (std::size_t i = 0; i < n; ++i) order.push_back(loc_id(i));
        std::shuffle(order.begin(), order.end(), rng);
        CHECK(resolve_with_side_info(s, "f", SideInfo::priority(order)) ==
              s.value(order.front()));

        // declarations succeed exactly when alternatives >= k
        for (std::size_t alt = 1; alt <= n; ++alt) {
            SideInfo side = SideInfo::declaration(loc_id(0), alt);
            if (alt >= k) {
                CHECK(resolve_with_side_info(s, "f", side) == s.value(loc_id(0)));
            } else {
                CHECK(code_of([&] { resolve_with_side_info(s, "f", side); }) ==
                      errc::insufficient_side_information);
            }
        }
    }
}

TEST_CASE("cap check reports the exact hypothesis that fails") {
    DerivationGraph two = independent(2, 2);
    CapReport hit = cap_check(two, "f", true);
    CHECK(hit.status == CapStatus::witness_produced);
    CHECK(hit.triple_unsatisfiable());
    REQUIRE(hit.witness.has_value());
    CHECK_FALSE(is_coherent(hit.witness->final_state, "f"));

    // drop availability: no witness possible
    CapReport coordinated = cap_check(two, "f", false);
    CHECK(coordinated.status == CapStatus::vacuous_not_available);
    CHECK_FALSE(coordinated.triple_unsatisfiable());
    CHECK_FALSE(coordinated.witness.has_value());

    // drop the partition: a single location cannot disagree with itself
    DerivationGraph one = independent(1, 2);
    CHECK(cap_check(one, "f", true).status == CapStatus::vacuous_no_partition);

    // derived locations mean writes are coordinated, not local
    DerivationGraph chain = DerivationGraph::make({{"f", 2}}, {{"a", "f"}, {"b", "f"}},
                                                  {{"a", "b"}});
    CHECK(cap_check(chain, "f", true).status == CapStatus::vacuous_not_available);

    // drop the domain: one value admits no disagreement
    DerivationGraph unary = independent(2, 1);
    CHECK(cap_check(unary, "f", true).status == CapStatus::vacuous_unary_domain);

    CHECK(code_of([&] { cap_check(two, "zz", true); }) == errc::unknown_fact);
}

TEST_CASE("trajectories record coherence per fact and count manual edits") {
    DerivationGraph g = DerivationGraph::make(
        {{"f", 2}, {"g", 2}},
        {{"f1", "f"}, {"f2", "f"}, {"g1", "g"}}, {});
    SystemState start = SystemState::uniform(g, 0);

    EditScript script = {{"f1", 1}, {"g1", 1}, {"f2", 1}};
    Trajectory t = run_edit_sequence(start, script);
    REQUIRE(t.steps.size() == 3);

    CHECK(t.steps[0].coherent == std::map<std::string, bool>{{"f", false}, {"g", true}});
    CHECK(t.steps[1].coherent == std::map<std::string, bool>{{"f", false}, {"g", true}});
    CHECK(t.steps[2].coherent == std::map<std::string, bool>{{"f", true}, {"g", true}});
    CHECK(t.steps[0].manual_edits == 1);
    CHECK(t.steps[2].manual_edits == 3);
    CHECK(t.manual_edits() == 3);
    CHECK(t.final_state.value("f2") == 1);

    CHECK(run_edit_sequence(start, {}).manual_edits() == 0);
}

TEST_CASE("trajectory errors carry the failing step") {
    DerivationGraph chain = DerivationGraph::make({{"f", 2}}, {{"a", "f"}, {"b", "f"}},
                                                  {{"a", "b"}});
    SystemState start = SystemState::uniform(chain, 0);
    EditScript script = {{"a", 1}, {"b", 0}};  // second edit targets a derived location
    try {
        run_edit_sequence(start, script);
        FAIL("expected a simulation error");
    } catch (const SimulationError& e) {
        CHECK(e.step() == 1);
        CHECK(e.code() == errc::derived_target_rejected);
    }
}

TEST_CASE("propagation makes one root edit repair a whole tree") {
    std::mt19937_64 rng(13579);
    for (int trial = 0; trial < 200; ++trial) {
        RawGraph raw = random_tree(rng, 10, 3);
        DerivationGraph g = raw.graph();
        REQUIRE(compute_dof(g).dof == 1);
        std::string root = compute_dof(g).sources.front();

        SystemState s = SystemState::uniform(g, 0);
        Trajectory t = run_edit_sequence(s, {{root, 2}});
        CHECK(t.steps.back().coherent.at("f"));
        CHECK(t.manual_edits() == 1);
        for (std::size_t i = 0; i < raw.nodes; ++i) CHECK(t.final_state.value(loc_id(i)) == 2);
    }
}
