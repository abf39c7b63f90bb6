// automaton.hh -- finite automata, subset-construction observer, composition
// and the attack-free anonymity / opacity checks.

#ifndef ATTACKOBS_AUTOMATON_HH
#define ATTACKOBS_AUTOMATON_HH

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace attackobs {

using StateId = std::uint32_t;
using Event = std::string;
/// Ordered, so two equal sets always compare (and print) identically.
using StateSet = std::set<StateId>;

struct Transition {
    StateId source;
    Event event;
    StateId target;

    auto operator<=>(const Transition&) const = default;
};

/**
 * Nondeterministic finite automaton with named states.
 *
 * States are dense ids in insertion order; names are opaque strings kept for
 * printing and lookup. An automaton whose every (state, event) pair has at most
 * one successor and which has exactly one initial state is used as a DFA.
 */
class Automaton {
public:
    Automaton() = default;

    /// Adds a state and returns its id. Throws std::invalid_argument on a duplicate name.
    StateId add_state(std::string name);
    void add_event(Event event);
    /// Both endpoints must exist; the event is added to the alphabet if missing.
    void add_transition(StateId source, const Event& event, StateId target);
    void add_initial(StateId state);

    std::size_t num_states() const { return names_.size(); }
    std::size_t num_transitions() const;
    const std::string& name(StateId state) const { return names_.at(state); }
    std::optional<StateId> find_state(std::string_view name) const;

    const std::set<Event>& events() const { return events_; }
    const StateSet& initial() const { return initial_; }

    /// Outgoing transitions of a state grouped by event.
    const std::map<Event, StateSet>& post(StateId state) const { return post_.at(state); }
    /// Successors of a state under an event; empty when undefined.
    const StateSet& successors(StateId state, const Event& event) const;
    /// The single successor under an event, if any. Throws std::logic_error when
    /// the transition is nondeterministic.
    std::optional<StateId> successor(StateId state, const Event& event) const;
    std::vector<Transition> transitions() const;

    /// Union of the successors of every member under an event.
    StateSet image(const StateSet& states, const Event& event) const;
    /// Events with at least one successor from some member of the set.
    std::set<Event> enabled_events(const StateSet& states) const;

    bool is_deterministic() const;
    bool contains(StateId state) const { return state < names_.size(); }

    /// Throws std::invalid_argument unless the automaton has at least one initial state.
    void validate() const;

    bool operator==(const Automaton& other) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, StateId> index_;
    std::set<Event> events_;
    std::vector<std::map<Event, StateSet>> post_;
    StateSet initial_;
};

/// A nonempty set of plant states: what an observer believes the plant may be in.
class StateEstimate {
public:
    /// Throws std::invalid_argument when `members` is empty.
    explicit StateEstimate(StateSet members);

    const StateSet& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(StateId state) const { return members_.contains(state); }

    auto operator<=>(const StateEstimate&) const = default;

private:
    StateSet members_;
};

/// Prints a set of plant states as "{1,10}" using the plant's state names.
std::string format_state_set(const Automaton& plant, const StateSet& states);

/// Sub-automaton of states reachable from the initial states. Names are kept.
Automaton accessible_part(const Automaton& automaton);

struct Observer {
    Automaton dfa;
    /// Estimate carried by each observer state, indexed by observer state id.
    std::vector<StateEstimate> estimates;
};

/// Subset construction restricted to reachable estimates; empty images are
/// left undefined instead of producing an empty estimate.
Observer observer(const Automaton& plant);

struct Product {
    Automaton automaton;
    /// Component states of each product state, indexed by product state id.
    std::vector<std::pair<StateId, StateId>> components;
};

/**
 * Composition synchronising on shared events and interleaving private ones.
 *
 * On a shared event the successors are the cartesian product of both
 * successor sets. Initial states are all pairs of initial states. Only the
 * accessible part is built; product states are named "(left,right)".
 */
Product compose(const Automaton& left, const Automaton& right);

/// Events enabled at some member of the estimate.
std::set<Event> enabled_events(const Automaton& plant, const StateSet& estimate);

/// True iff no reachable observer state is a singleton.
bool check_anonymity_classic(const Automaton& plant);
/// True iff every reachable observer state contains a non-secret state.
bool check_opacity_classic(const Automaton& plant, const StateSet& secret);

} // namespace attackobs

#endif // ATTACKOBS_AUTOMATON_HH
