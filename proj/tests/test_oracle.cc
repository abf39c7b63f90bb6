#include <catch2/catch_amalgamated.hpp>

#include "attackobs/oracle.hh"
#include "instances.hh"

using namespace attackobs;
using namespace attackobs::testing;

namespace {

Automaton chain(std::initializer_list<const char*> states, std::initializer_list<const char*> initial,
                std::initializer_list<std::tuple<const char*, const char*, const char*>> edges)
{
    Automaton g;
    for (const char* s : states) {
        g.add_state(s);
    }
    for (const auto& [from, event, to] : edges) {
        g.add_transition(*g.find_state(from), event, *g.find_state(to));
    }
    for (const char* s : initial) {
        g.add_initial(*g.find_state(s));
    }
    return g;
}

StateSet ids(const Automaton& g, std::initializer_list<const char*> names)
{
    StateSet result;
    for (const char* n : names) {
        result.insert(*g.find_state(n));
    }
    return result;
}

} // namespace

TEST_CASE("filtered estimates along explicit traces", "[oracle]")
{
    const Automaton g = ten_state_plant();
    const AttackSpec spec = ten_state_spec({"2", "4"}, 1);

    AttackTrace trace;
    trace.rounds.push_back({std::nullopt, Decision::N, std::nullopt});
    CHECK(filtered_estimate(g, spec, trace) == ten_state_ids({"1", "10"}));

    trace.rounds.push_back({Event("a"), Decision::Y, true});
    CHECK(filtered_estimate(g, spec, trace) == ten_state_ids({"2"}));
    CHECK(trace.labels() == std::vector<Event>{"N", "a", "Y", "1"});

    AttackTrace outside = trace;
    outside.rounds.back().result = false;
    CHECK(filtered_estimate(g, spec, outside) == ten_state_ids({"3"}));

    // A second attack exceeds the budget.
    trace.rounds.push_back({Event("c"), Decision::Y, true});
    CHECK_FALSE(filtered_estimate(g, spec, trace));

    // Y needs a result and N must not carry one.
    AttackTrace malformed;
    malformed.rounds.push_back({std::nullopt, Decision::Y, std::nullopt});
    CHECK_FALSE(filtered_estimate(g, spec, malformed));
    malformed.rounds.back() = {std::nullopt, Decision::N, true};
    CHECK_FALSE(filtered_estimate(g, spec, malformed));

    // Round 0 has no event; later rounds need one.
    AttackTrace shifted;
    shifted.rounds.push_back({Event("a"), Decision::N, std::nullopt});
    CHECK_FALSE(filtered_estimate(g, spec, shifted));

    // Results the plant cannot produce empty the estimate.
    AttackTrace impossible;
    impossible.rounds.push_back({std::nullopt, Decision::Y, true});
    CHECK_FALSE(filtered_estimate(g, spec, impossible));
}

TEST_CASE("violating attack sequences on the ten-state plant", "[oracle]")
{
    const Automaton g = ten_state_plant();
    const AttackSpec spec = ten_state_spec({"2", "4"}, 1);
    CHECK(is_violating_attack_sequence(g, spec, {"a"}, {Decision::N, Decision::Y}));
    CHECK_FALSE(is_violating_attack_sequence(g, spec, {}, {Decision::N}));
    CHECK_FALSE(is_violating_attack_sequence(g, spec, {"a"}, {Decision::N, Decision::N}));
    // Length mismatch and infeasible strings.
    CHECK_FALSE(is_violating_attack_sequence(g, spec, {"a"}, {Decision::N}));
    CHECK_FALSE(is_violating_attack_sequence(g, spec, {"b"}, {Decision::N, Decision::Y}));
}

TEST_CASE("oracle verdicts on the ten-state plant", "[oracle]")
{
    const Automaton g = ten_state_plant();
    const AttackSpec s24 = ten_state_spec({"2", "4"}, 1);
    const AttackSpec s2489 = ten_state_spec({"2", "4", "8", "9"}, 1);

    CHECK(oracle_check_violation(g, s24, default_horizon(g, s24)));
    CHECK_FALSE(oracle_check_enforced(g, s24, default_horizon(g, s24)));
    CHECK_FALSE(oracle_check_forced_reach(g, s24, default_horizon(g, s24)));

    CHECK(oracle_check_violation(g, s2489, default_horizon(g, s2489)));
    CHECK(oracle_check_enforced(g, s2489, default_horizon(g, s2489)));
    CHECK(oracle_check_forced_reach(g, s2489, default_horizon(g, s2489)));
    CHECK(oracle_check_forced_reach(g, s2489, 1));
    CHECK_FALSE(oracle_check_forced_reach(g, s2489, 0));

    const AttackSpec none{{}, 2, Anonymity{}};
    CHECK_FALSE(oracle_check_violation(g, none, default_horizon(g, none)));
    CHECK_FALSE(oracle_check_enforced(g, none, default_horizon(g, none)));
}

TEST_CASE("a deterministic plant is disclosed without attacks", "[oracle]")
{
    std::mt19937_64 rng(12);
    for (int round = 0; round < 10; ++round) {
        const Automaton g = random_deterministic_plant(rng, 4, 2);
        const AttackSpec spec{{}, 0, Anonymity{}};
        CHECK(oracle_check_violation(g, spec, 1));
        CHECK(oracle_check_enforced(g, spec, 1));
        CHECK(oracle_check_forced_reach(g, spec, 0));
    }
}

TEST_CASE("some intermediate result is weaker than every result", "[oracle]")
{
    // Attacking at the start discloses 1 if the plant is there, otherwise the
    // estimate {2,3} never splits again.
    const Automaton g = chain({"1", "2", "3", "4"}, {"1", "2", "3"}, {{"1", "a", "4"}, {"2", "a", "3"}, {"3", "a", "2"}});
    const AttackSpec spec{ids(g, {"1"}), 1, Anonymity{}};
    CHECK(is_violating_attack_sequence(g, spec, {"a"}, {Decision::Y, Decision::N}));
    CHECK_FALSE(oracle_check_violation(g, spec, default_horizon(g, spec)));
}

TEST_CASE("enforcement is a safety game, not plain reachability", "[oracle]")
{
    // {1} is disclosed at once, but the system can move on to {3,4}, which never splits.
    Automaton g = chain({"1", "2", "3", "4"}, {"1"}, {{"1", "a", "2"}, {"2", "a", "3"}, {"2", "a", "4"}});
    const AttackSpec spec{{}, 0, Anonymity{}};
    const std::size_t h = default_horizon(g, spec);
    CHECK(oracle_check_violation(g, spec, h));
    CHECK(oracle_check_forced_reach(g, spec, h));
    CHECK_FALSE(oracle_check_enforced(g, spec, h));
}

TEST_CASE("oracle verdicts are monotone in the search bound", "[oracle][random]")
{
    for (const auto& inst : corpus(808, 80)) {
        INFO(inst.describe());
        bool violation = false;
        bool reach = false;
        for (std::size_t h = 0; h <= 6; ++h) {
            const bool v = oracle_check_violation(inst.plant, inst.spec, h);
            const bool r = oracle_check_forced_reach(inst.plant, inst.spec, h);
            CHECK((!violation || v));
            CHECK((!reach || r));
            CHECK((!r || v));
            violation = v;
            reach = r;
        }
    }
}
