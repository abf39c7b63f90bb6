// enforcement.hh -- vulnerable states, the final verifier and the
// attack-enforced violation check.

#ifndef ATTACKOBS_ENFORCEMENT_HH
#define ATTACKOBS_ENFORCEMENT_HH

#include "attackobs/violation.hh"

namespace attackobs {

/// How a type-II state's attack results are quantified.
enum class PruningSemantics {
    /// Every result defined in the attack-observer must stay in the sub-automaton.
    Sound,
    /// Only the results still present in the sub-automaton are checked.
    Strict,
};

/// Every event enabled at the state in the attack-observer leads to a kept state.
bool is_vulnerable_type1(const SubAutomaton& v, StateId state);
/// Every result (per `semantics`) leads to a kept, vulnerable type-I state.
bool is_vulnerable_type2(const SubAutomaton& v, StateId state,
                         PruningSemantics semantics = PruningSemantics::Sound);
/// Some kept Y/N successor is vulnerable.
bool is_vulnerable_type3(const SubAutomaton& v, StateId state,
                         PruningSemantics semantics = PruningSemantics::Sound);

/// True iff the state passes the check for its own type.
bool is_vulnerable(const SubAutomaton& v, StateId state, PruningSemantics semantics = PruningSemantics::Sound);

/// Repeated rounds of pruning non-vulnerable type-I, then type-II, then
/// type-III states, re-taking the accessible part after each step.
SubAutomaton final_verifier(const SubAutomaton& verifier, PruningSemantics semantics = PruningSemantics::Sound);

/// Same result computed by removing one non-vulnerable state at a time, in
/// descending id order. Used to check that the pruning schedule does not matter.
SubAutomaton final_verifier_worklist(const SubAutomaton& verifier,
                                     PruningSemantics semantics = PruningSemantics::Sound);

struct EnforcementResult {
    bool verdict = false;
    ViolationResult violation;
    SubAutomaton final_verifier;
};

EnforcementResult check_enforced(const Automaton& plant, const AttackSpec& spec,
                                 PruningSemantics semantics = PruningSemantics::Sound);

} // namespace attackobs

#endif // ATTACKOBS_ENFORCEMENT_HH
