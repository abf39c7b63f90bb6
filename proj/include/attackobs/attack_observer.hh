// attack_observer.hh -- the deterministic game graph (phase, counter, estimate)
// on which every violation and enforcement check runs.

#ifndef ATTACKOBS_ATTACK_OBSERVER_HH
#define ATTACKOBS_ATTACK_OBSERVER_HH

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "attackobs/attack_models.hh"
#include "attackobs/automaton.hh"

namespace attackobs {

struct AObsState {
    GamePhase phase;
    GameCounter counter;
    StateSet estimate; ///< never empty

    auto operator<=>(const AObsState&) const = default;
};

enum class StateType {
    TypeI,   ///< phase S
    TypeII,  ///< phase AY
    TypeIII, ///< phase A
};

StateType classify(const AObsState& state);
std::string to_string(StateType type);

/**
 * Accessible part of the bounded game structure composed with the observer of
 * the system attack model.
 *
 * The graph is deterministic with the single initial state (A,0,X0). States
 * are named "(phase,counter,{estimate})", e.g. "(S,0N,{1,10})". A reverse
 * adjacency index is kept for the backward fixpoints.
 */
class AttackObserver {
public:
    /// Throws std::invalid_argument when the spec is not valid for the plant.
    AttackObserver(Automaton plant, AttackSpec spec);

    const Automaton& plant() const { return plant_; }
    const AttackSpec& spec() const { return spec_; }
    const Automaton& graph() const { return graph_; }

    std::size_t size() const { return states_.size(); }
    StateId initial() const { return *graph_.initial().begin(); }
    const AObsState& state(StateId id) const { return states_.at(id); }
    const std::string& name(StateId id) const { return graph_.name(id); }
    std::optional<StateId> find(std::string_view name) const { return graph_.find_state(name); }
    StateType type(StateId id) const { return classify(states_.at(id)); }

    std::optional<StateId> successor(StateId id, const Event& label) const;
    /// Labels with a defined transition at the state.
    std::set<Event> enabled(StateId id) const;
    /// (label, source) pairs of every transition entering the state.
    const std::vector<std::pair<Event, StateId>>& predecessors(StateId id) const { return pred_.at(id); }

    /// State reached from the initial state by the label sequence, if defined.
    std::optional<StateId> run(const std::vector<Event>& labels) const;

    /// True iff the estimate of a type-I state discloses the plant state.
    bool is_violating(StateId id) const;

private:
    Automaton plant_;
    AttackSpec spec_;
    Automaton graph_;
    std::vector<AObsState> states_;
    std::vector<std::vector<std::pair<Event, StateId>>> pred_;
};

std::shared_ptr<const AttackObserver> build_attack_observer(const Automaton& plant, const AttackSpec& spec);

std::set<Event> enabled_in_aobs(const AttackObserver& aobs, StateId state);

/// Anonymity: the estimate is a singleton. Opacity: the estimate lies inside the secret set.
bool violation_predicate(const StateSet& estimate, const ViolationMode& mode);
inline bool violation_predicate(const StateEstimate& estimate, const ViolationMode& mode)
{
    return violation_predicate(estimate.members(), mode);
}

} // namespace attackobs

#endif // ATTACKOBS_ATTACK_OBSERVER_HH
