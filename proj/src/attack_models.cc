#include "attackobs/attack_models.hh"

#include <stdexcept>

namespace attackobs {

bool is_reserved_label(std::string_view label)
{
    return is_decision_label(label) || is_result_label(label) || label == kEpsilon || label.empty();
}

bool is_decision_label(std::string_view label)
{
    return label == kAttackYes || label == kAttackNo;
}

bool is_result_label(std::string_view label)
{
    return label == kResultOutside || label == kResultInside;
}

void AttackSpec::validate(const Automaton& plant) const
{
    plant.validate();
    for (const auto& event : plant.events()) {
        if (is_reserved_label(event)) {
            throw std::invalid_argument("plant event '" + event + "' is a reserved label");
        }
    }
    for (const StateId state : attacked) {
        if (!plant.contains(state)) {
            throw std::invalid_argument("attacked state is not a plant state");
        }
    }
    if (budget < 0) {
        throw std::invalid_argument("attack budget must be non-negative");
    }
    if (const auto* opacity = std::get_if<Opacity>(&mode)) {
        for (const StateId state : opacity->secret) {
            if (!plant.contains(state)) {
                throw std::invalid_argument("secret state is not a plant state");
            }
        }
    }
}

std::string to_string(GamePhase phase)
{
    switch (phase) {
    case GamePhase::A: return "A";
    case GamePhase::AY: return "AY";
    case GamePhase::S: return "S";
    }
    return "?";
}

std::string GameCounter::to_string() const
{
    switch (kind) {
    case Kind::Plain: return std::to_string(completed);
    case Kind::Waiting: return std::to_string(completed) + "N";
    case Kind::Attacking: return std::to_string(completed) + "Y";
    }
    return "?";
}

Automaton system_attack_model(const Automaton& plant, const StateSet& attacked)
{
    for (const StateId state : attacked) {
        if (!plant.contains(state)) {
            throw std::invalid_argument("attacked state is not a plant state");
        }
    }
    Automaton result = plant;
    result.add_event(std::string(kResultOutside));
    result.add_event(std::string(kResultInside));
    for (StateId state = 0; state < plant.num_states(); ++state) {
        const auto label = attacked.contains(state) ? kResultInside : kResultOutside;
        result.add_transition(state, std::string(label), state);
    }
    return result;
}

NumberAttackModel number_attack_model(int budget, const std::set<Event>& events)
{
    if (budget < 0) {
        throw std::invalid_argument("attack budget must be non-negative");
    }
    using Kind = GameCounter::Kind;

    NumberAttackModel model;
    auto& aut = model.automaton;
    for (const auto& event : events) {
        aut.add_event(event);
    }
    for (const auto label : {kAttackYes, kAttackNo, kResultOutside, kResultInside}) {
        aut.add_event(std::string(label));
    }

    std::vector<StateId> plain;
    std::vector<StateId> waiting;
    std::vector<StateId> attacking;
    auto add = [&](GameCounter counter) {
        model.counters.push_back(counter);
        return aut.add_state(counter.to_string());
    };
    for (int k = 0; k <= budget; ++k) {
        plain.push_back(add({Kind::Plain, k}));
        waiting.push_back(add({Kind::Waiting, k}));
        if (k < budget) {
            attacking.push_back(add({Kind::Attacking, k}));
        }
    }
    aut.add_initial(plain[0]);

    const std::string yes(kAttackYes);
    const std::string no(kAttackNo);
    for (int k = 0; k <= budget; ++k) {
        aut.add_transition(plain[k], no, waiting[k]);
        for (const auto& event : events) {
            aut.add_transition(waiting[k], event, plain[k]);
            if (k >= 1) {
                aut.add_transition(plain[k], event, plain[k]);
            }
        }
        if (k < budget) {
            aut.add_transition(plain[k], yes, attacking[k]);
            aut.add_transition(attacking[k], std::string(kResultOutside), plain[k + 1]);
            aut.add_transition(attacking[k], std::string(kResultInside), plain[k + 1]);
        }
    }
    return model;
}

Automaton game_structure(const std::set<Event>& events)
{
    Automaton aut;
    for (const auto& event : events) {
        aut.add_event(event);
    }
    for (const auto label : {kAttackYes, kAttackNo, kResultOutside, kResultInside}) {
        aut.add_event(std::string(label));
    }
    const StateId attack = aut.add_state(to_string(GamePhase::A));
    const StateId awaiting = aut.add_state(to_string(GamePhase::AY));
    const StateId system = aut.add_state(to_string(GamePhase::S));
    aut.add_initial(attack);

    aut.add_transition(attack, std::string(kAttackNo), system);
    aut.add_transition(attack, std::string(kAttackYes), awaiting);
    aut.add_transition(awaiting, std::string(kResultOutside), system);
    aut.add_transition(awaiting, std::string(kResultInside), system);
    for (const auto& event : events) {
        aut.add_transition(system, event, attack);
    }
    return aut;
}

BoundedGame bounded_game_structure(int budget, const std::set<Event>& events)
{
    const Automaton turns = game_structure(events);
    const NumberAttackModel counting = number_attack_model(budget, events);
    Product product = compose(turns, counting.automaton);

    BoundedGame game{std::move(product.automaton), {}, {}};
    for (const auto& [phase, counter] : product.components) {
        game.phases.push_back(static_cast<GamePhase>(phase));
        game.counters.push_back(counting.counters[counter]);
    }
    return game;
}

} // namespace attackobs
