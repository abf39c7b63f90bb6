// violation.hh -- intermediate-violating states, the verifier and the
// violation check.

#ifndef ATTACKOBS_VIOLATION_HH
#define ATTACKOBS_VIOLATION_HH

#include <memory>
#include <optional>
#include <vector>

#include "attackobs/attack_observer.hh"

namespace attackobs {

/**
 * Restriction of an attack-observer to a subset of its states.
 *
 * Only the part accessible from the parent's initial state is kept; when the
 * initial state is not kept the sub-automaton is empty. Transitions are the
 * parent's transitions between kept states.
 */
class SubAutomaton {
public:
    /// Restricts the parent to `kept` and then to its accessible part.
    SubAutomaton(std::shared_ptr<const AttackObserver> parent, const StateSet& kept);

    const AttackObserver& parent() const { return *parent_; }
    const std::shared_ptr<const AttackObserver>& parent_ptr() const { return parent_; }

    bool empty() const { return states_.empty(); }
    std::size_t size() const { return states_.size(); }
    std::size_t num_transitions() const;
    const StateSet& states() const { return states_; }
    bool contains(StateId state) const { return states_.contains(state); }
    std::optional<StateId> initial() const;

    /// Parent successor, provided both endpoints are kept.
    std::optional<StateId> successor(StateId state, const Event& label) const;
    /// Labels whose parent successor is kept.
    std::set<Event> enabled(StateId state) const;

    /// Same parent, with `removed` dropped and accessibility recomputed.
    SubAutomaton without(const StateSet& removed) const;

    bool operator==(const SubAutomaton& other) const
    {
        return parent_ == other.parent_ && states_ == other.states_;
    }

private:
    std::shared_ptr<const AttackObserver> parent_;
    StateSet states_;
};

/// Least set closed under the seed/type-II/type-III/type-I joining rules,
/// computed with a worklist over the reverse adjacency of the attack-observer.
StateSet intermediate_violating_fixpoint(const AttackObserver& aobs, const ViolationMode& mode);
inline StateSet intermediate_violating_fixpoint(const AttackObserver& aobs)
{
    return intermediate_violating_fixpoint(aobs, aobs.spec().mode);
}

SubAutomaton build_verifier(std::shared_ptr<const AttackObserver> aobs, const StateSet& iav);

struct ViolationResult {
    bool verdict = false;
    std::shared_ptr<const AttackObserver> aobs;
    StateSet intermediate_violating;
    SubAutomaton verifier;
    /// Labels of a verifier path from the initial state to a violating state;
    /// empty when the verdict is false.
    std::vector<Event> witness;
};

ViolationResult check_violation(const Automaton& plant, const AttackSpec& spec);

/// Shortest label path inside `sub` from its initial state to a violating state.
std::optional<std::vector<Event>> violating_path(const SubAutomaton& sub);

} // namespace attackobs

#endif // ATTACKOBS_VIOLATION_HH
