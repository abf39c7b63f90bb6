#include "attackobs/attack_observer.hh"

#include <algorithm>
#include <stdexcept>

namespace attackobs {

StateType classify(const AObsState& state)
{
    switch (state.phase) {
    case GamePhase::S: return StateType::TypeI;
    case GamePhase::AY: return StateType::TypeII;
    case GamePhase::A: return StateType::TypeIII;
    }
    throw std::logic_error("unknown game phase");
}

std::string to_string(StateType type)
{
    switch (type) {
    case StateType::TypeI: return "I";
    case StateType::TypeII: return "II";
    case StateType::TypeIII: return "III";
    }
    return "?";
}

bool violation_predicate(const StateSet& estimate, const ViolationMode& mode)
{
    if (const auto* opacity = std::get_if<Opacity>(&mode)) {
        return !estimate.empty()
            && std::includes(opacity->secret.begin(), opacity->secret.end(), estimate.begin(), estimate.end());
    }
    return estimate.size() == 1;
}

AttackObserver::AttackObserver(Automaton plant, AttackSpec spec)
    : plant_(std::move(plant))
    , spec_(std::move(spec))
{
    spec_.validate(plant_);

    const BoundedGame game = bounded_game_structure(spec_.budget, plant_.events());
    const Observer obs = observer(system_attack_model(plant_, spec_.attacked));
    const Product product = compose(game.automaton, obs.dfa);

    // Rename "((A,0),{1,10})" to "(A,0,{1,10})" and attach the structured triple.
    const Automaton& raw = product.automaton;
    for (StateId id = 0; id < raw.num_states(); ++id) {
        const auto [g, o] = product.components[id];
        AObsState state{game.phases[g], game.counters[g], obs.estimates[o].members()};
        graph_.add_state("(" + to_string(state.phase) + "," + state.counter.to_string() + ","
                         + format_state_set(plant_, state.estimate) + ")");
        states_.push_back(std::move(state));
    }
    for (const auto& event : raw.events()) {
        graph_.add_event(event);
    }
    pred_.resize(raw.num_states());
    for (const auto& t : raw.transitions()) {
        graph_.add_transition(t.source, t.event, t.target);
        pred_[t.target].emplace_back(t.event, t.source);
    }
    for (const StateId init : raw.initial()) {
        graph_.add_initial(init);
    }
    if (graph_.initial().size() != 1 || !graph_.is_deterministic()) {
        throw std::logic_error("attack-observer must be deterministic with one initial state");
    }
}

std::optional<StateId> AttackObserver::successor(StateId id, const Event& label) const
{
    return graph_.successor(id, label);
}

std::set<Event> AttackObserver::enabled(StateId id) const
{
    std::set<Event> result;
    for (const auto& [label, targets] : graph_.post(id)) {
        if (!targets.empty()) {
            result.insert(label);
        }
    }
    return result;
}

std::optional<StateId> AttackObserver::run(const std::vector<Event>& labels) const
{
    StateId current = initial();
    for (const auto& label : labels) {
        const auto next = successor(current, label);
        if (!next) {
            return std::nullopt;
        }
        current = *next;
    }
    return current;
}

bool AttackObserver::is_violating(StateId id) const
{
    const AObsState& s = states_.at(id);
    return classify(s) == StateType::TypeI && violation_predicate(s.estimate, spec_.mode);
}

std::shared_ptr<const AttackObserver> build_attack_observer(const Automaton& plant, const AttackSpec& spec)
{
    return std::make_shared<const AttackObserver>(plant, spec);
}

std::set<Event> enabled_in_aobs(const AttackObserver& aobs, StateId state)
{
    return aobs.enabled(state);
}

} // namespace attackobs
