#include <catch2/catch_amalgamated.hpp>

#include "attackobs/violation.hh"
#include "instances.hh"

using namespace attackobs;
using namespace attackobs::testing;

namespace {

std::set<std::string> names(const AttackObserver& aobs, const StateSet& states)
{
    std::set<std::string> result;
    for (const StateId s : states) {
        result.insert(aobs.name(s));
    }
    return result;
}

const std::set<std::string> kIntermediate24 = {
    "(S,1,{2})",     "(S,1,{3})",      "(S,1,{4})",      "(S,1,{5})",     "(S,1N,{4})",    "(S,1N,{5})",
    "(S,0N,{1,10})", "(S,0N,{2,3})",   "(S,0N,{4,5})",   "(AY,0Y,{2,3})", "(AY,0Y,{4,5})", "(A,0,{2,3})",
    "(A,0,{4,5})",   "(A,1,{4})",      "(A,1,{5})",      "(A,0,{1,10})",
};

} // namespace

TEST_CASE("violation predicate", "[violation]")
{
    CHECK(violation_predicate(StateSet{3}, Anonymity{}));
    CHECK_FALSE(violation_predicate(StateSet{2, 3}, Anonymity{}));
    CHECK(violation_predicate(StateSet{7, 8}, Opacity{{7, 8}}));
    CHECK(violation_predicate(StateSet{7}, Opacity{{7, 8}}));
    CHECK_FALSE(violation_predicate(StateSet{6, 7}, Opacity{{7, 8}}));
    CHECK(violation_predicate(StateEstimate({4}), Anonymity{}));
}

TEST_CASE("intermediate-violating states for X_A={2,4}, D=1", "[violation]")
{
    const auto aobs = build_attack_observer(ten_state_plant(), ten_state_spec({"2", "4"}, 1));
    const StateSet iav = intermediate_violating_fixpoint(*aobs);
    CHECK(names(*aobs, iav) == kIntermediate24);
}

TEST_CASE("fixpoint with no violating type-I state is empty", "[violation]")
{
    // The plant is anonymous and attacks with X_A empty tell nothing.
    const auto aobs = build_attack_observer(ten_state_plant(), AttackSpec{{}, 2, Anonymity{}});
    CHECK(intermediate_violating_fixpoint(*aobs).empty());
}

TEST_CASE("verifier for X_A={2,4}, D=1", "[violation]")
{
    const auto aobs = build_attack_observer(ten_state_plant(), ten_state_spec({"2", "4"}, 1));
    const StateSet iav = intermediate_violating_fixpoint(*aobs);
    const SubAutomaton v = build_verifier(aobs, iav);
    CHECK(v.size() == 16);
    CHECK(names(*aobs, v.states()) == kIntermediate24);
    CHECK(v.initial() == aobs->initial());
    for (const StateId s : v.states()) {
        for (const auto& label : v.enabled(s)) {
            CHECK(aobs->successor(s, label) == v.successor(s, label));
        }
    }
    // d leads from (S,0N,{1,10}) out of the verifier.
    const StateId root = *aobs->find("(S,0N,{1,10})");
    CHECK(v.enabled(root) == std::set<Event>{"a"});
    CHECK(aobs->enabled(root) == std::set<Event>{"a", "d"});
}

TEST_CASE("verifier without the initial state is empty", "[violation]")
{
    const auto aobs = build_attack_observer(ten_state_plant(), ten_state_spec({"2", "4"}, 1));
    StateSet iav = intermediate_violating_fixpoint(*aobs);
    iav.erase(aobs->initial());
    const SubAutomaton v = build_verifier(aobs, iav);
    CHECK(v.empty());
    CHECK_FALSE(v.initial());
    CHECK(v.num_transitions() == 0);
}

TEST_CASE("verifier for X_A={2,4,8,9}, D=1", "[violation]")
{
    const auto aobs = build_attack_observer(ten_state_plant(), ten_state_spec({"2", "4", "8", "9"}, 1));
    const SubAutomaton v = build_verifier(aobs, intermediate_violating_fixpoint(*aobs));
    CHECK(v.size() == 30);
    CHECK(v.contains(*aobs->find("(S,1,{6})")));
    CHECK(v.contains(*aobs->find("(AY,0Y,{6,9})")));
}

TEST_CASE("violation verdicts on the ten-state plant", "[violation]")
{
    const auto r24 = check_violation(ten_state_plant(), ten_state_spec({"2", "4"}, 1));
    CHECK(r24.verdict);
    CHECK(r24.verifier.size() == 16);
    const auto path = r24.witness;
    const auto end = r24.aobs->run(path);
    REQUIRE(end);
    CHECK(r24.aobs->is_violating(*end));

    CHECK(check_violation(ten_state_plant(), ten_state_spec({"2", "4", "8", "9"}, 1)).verdict);

    const auto none = check_violation(ten_state_plant(), AttackSpec{{}, 5, Anonymity{}});
    CHECK_FALSE(none.verdict);
    CHECK(none.verifier.empty());
    CHECK(none.witness.empty());
}

TEST_CASE("sub-automaton restriction", "[violation]")
{
    const auto aobs = build_attack_observer(ten_state_plant(), ten_state_spec({"2", "4"}, 1));
    StateSet all;
    for (StateId s = 0; s < aobs->size(); ++s) {
        all.insert(s);
    }
    const SubAutomaton full(aobs, all);
    CHECK(full.size() == 34);
    CHECK(full.num_transitions() == aobs->graph().num_transitions());

    // Dropping (S,0N,{1,10}) cuts off everything but the Y branch of the root.
    const SubAutomaton cut = full.without({*aobs->find("(S,0N,{1,10})")});
    CHECK_FALSE(cut.contains(*aobs->find("(A,0,{2,3})")));
    CHECK(cut.contains(*aobs->find("(AY,0Y,{1,10})")));
    CHECK(cut == SubAutomaton(aobs, cut.states()));
}

TEST_CASE("verifier states are intermediate-violating on random instances", "[violation][random]")
{
    for (const auto& inst : corpus(404, 100)) {
        INFO(inst.describe());
        const auto result = check_violation(inst.plant, inst.spec);
        CHECK(result.verdict == !result.verifier.empty());
        for (const StateId s : result.verifier.states()) {
            CHECK(result.intermediate_violating.contains(s));
        }
        if (result.verdict) {
            const auto end = result.aobs->run(result.witness);
            REQUIRE(end);
            CHECK(result.aobs->is_violating(*end));
        }
    }
}
