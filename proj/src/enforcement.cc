#include "attackobs/enforcement.hh"

namespace attackobs {

bool is_vulnerable_type1(const SubAutomaton& v, StateId state)
{
    const AttackObserver& aobs = v.parent();
    for (const auto& event : aobs.enabled(state)) {
        if (!v.successor(state, event)) {
            return false;
        }
    }
    return true;
}

bool is_vulnerable_type2(const SubAutomaton& v, StateId state, PruningSemantics semantics)
{
    const AttackObserver& aobs = v.parent();
    const auto results = semantics == PruningSemantics::Sound ? aobs.enabled(state) : v.enabled(state);
    for (const auto& result : results) {
        const auto next = v.successor(state, result);
        if (!next || !is_vulnerable_type1(v, *next)) {
            return false;
        }
    }
    return true;
}

bool is_vulnerable_type3(const SubAutomaton& v, StateId state, PruningSemantics semantics)
{
    for (const auto& decision : v.enabled(state)) {
        const StateId next = *v.successor(state, decision);
        if (is_vulnerable(v, next, semantics)) {
            return true;
        }
    }
    return false;
}

bool is_vulnerable(const SubAutomaton& v, StateId state, PruningSemantics semantics)
{
    switch (v.parent().type(state)) {
    case StateType::TypeI: return is_vulnerable_type1(v, state);
    case StateType::TypeII: return is_vulnerable_type2(v, state, semantics);
    case StateType::TypeIII: return is_vulnerable_type3(v, state, semantics);
    }
    return false;
}

namespace {

StateSet non_vulnerable(const SubAutomaton& v, StateType type, PruningSemantics semantics)
{
    StateSet result;
    for (const StateId state : v.states()) {
        if (v.parent().type(state) == type && !is_vulnerable(v, state, semantics)) {
            result.insert(state);
        }
    }
    return result;
}

} // namespace

SubAutomaton final_verifier(const SubAutomaton& verifier, PruningSemantics semantics)
{
    SubAutomaton current = verifier;
    while (!current.empty()) {
        const std::size_t before = current.size();
        current = current.without(non_vulnerable(current, StateType::TypeI, semantics));
        current = current.without(non_vulnerable(current, StateType::TypeII, semantics));
        current = current.without(non_vulnerable(current, StateType::TypeIII, semantics));
        if (current.size() == before && non_vulnerable(current, StateType::TypeI, semantics).empty()) {
            break;
        }
    }
    return current;
}

SubAutomaton final_verifier_worklist(const SubAutomaton& verifier, PruningSemantics semantics)
{
    SubAutomaton current = verifier;
    for (bool changed = true; changed && !current.empty();) {
        changed = false;
        for (auto it = current.states().rbegin(); it != current.states().rend(); ++it) {
            if (!is_vulnerable(current, *it, semantics)) {
                current = current.without({*it});
                changed = true;
                break;
            }
        }
    }
    return current;
}

EnforcementResult check_enforced(const Automaton& plant, const AttackSpec& spec, PruningSemantics semantics)
{
    ViolationResult violation = check_violation(plant, spec);
    SubAutomaton fv = final_verifier(violation.verifier, semantics);
    const bool verdict = !fv.empty();
    return EnforcementResult{verdict, std::move(violation), std::move(fv)};
}

} // namespace attackobs
