#include "attackobs/oracle.hh"

#include <algorithm>
#include <map>
#include <tuple>

namespace attackobs {

namespace {

StateSet inside(const StateSet& estimate, const StateSet& attacked)
{
    StateSet result;
    std::set_intersection(estimate.begin(), estimate.end(), attacked.begin(), attacked.end(),
                          std::inserter(result, result.end()));
    return result;
}

StateSet outside(const StateSet& estimate, const StateSet& attacked)
{
    StateSet result;
    std::set_difference(estimate.begin(), estimate.end(), attacked.begin(), attacked.end(),
                        std::inserter(result, result.end()));
    return result;
}

StateSet filter(const StateSet& estimate, const StateSet& attacked, bool result)
{
    return result ? inside(estimate, attacked) : outside(estimate, attacked);
}

/// Nonempty estimates after each possible attack result.
std::vector<StateSet> attack_outcomes(const StateSet& estimate, const StateSet& attacked)
{
    std::vector<StateSet> result;
    for (const bool r : {false, true}) {
        StateSet next = filter(estimate, attacked, r);
        if (!next.empty()) {
            result.push_back(std::move(next));
        }
    }
    return result;
}

/// Nonempty event images of an estimate, in event order.
std::vector<StateSet> event_images(const Automaton& plant, const StateSet& estimate)
{
    std::vector<StateSet> result;
    for (const auto& event : plant.events()) {
        StateSet next = plant.image(estimate, event);
        if (!next.empty()) {
            result.push_back(std::move(next));
        }
    }
    return result;
}

/// Memoised game searches over (estimate, attacks used, remaining depth).
class Search {
public:
    Search(const Automaton& plant, const AttackSpec& spec)
        : plant_(plant)
        , spec_(spec)
    {
    }

    // Phase S: some continuation reaches a violating estimate, results AND-branched.
    bool reach_some(const StateSet& q, int used, std::size_t depth)
    {
        if (violation_predicate(q, spec_.mode)) {
            return true;
        }
        if (depth == 0) {
            return false;
        }
        const Key key{q, used, depth};
        if (const auto it = some_.find(key); it != some_.end()) {
            return it->second;
        }
        bool value = false;
        for (const auto& next : event_images(plant_, q)) {
            if (decide(next, used, depth - 1, &Search::reach_some)) {
                value = true;
                break;
            }
        }
        some_.emplace(key, value);
        return value;
    }

    // Phase S: every system move leads to a violating estimate within the depth.
    bool reach_all(const StateSet& q, int used, std::size_t depth)
    {
        if (violation_predicate(q, spec_.mode)) {
            return true;
        }
        if (depth == 0) {
            return false;
        }
        const Key key{q, used, depth};
        if (const auto it = all_.find(key); it != all_.end()) {
            return it->second;
        }
        const auto images = event_images(plant_, q);
        bool value = !images.empty();
        for (const auto& next : images) {
            if (!decide(next, used, depth - 1, &Search::reach_all)) {
                value = false;
                break;
            }
        }
        all_.emplace(key, value);
        return value;
    }

    // Phase S: the play can be kept for `depth` more system moves inside the
    // positions from which violation is still reachable.
    bool safe(const StateSet& q, int used, std::size_t depth)
    {
        if (!reach_some(q, used, horizon_)) {
            return false;
        }
        if (depth == 0) {
            return true;
        }
        const Key key{q, used, depth};
        if (const auto it = safe_.find(key); it != safe_.end()) {
            return it->second;
        }
        bool value = true;
        for (const auto& next : event_images(plant_, q)) {
            if (!decide(next, used, depth - 1, &Search::safe)) {
                value = false;
                break;
            }
        }
        safe_.emplace(key, value);
        return value;
    }

    // Phase A: OR over the decisions; an attack is AND over its results.
    bool decide(const StateSet& q, int used, std::size_t depth, bool (Search::*then)(const StateSet&, int, std::size_t))
    {
        if ((this->*then)(q, used, depth)) {
            return true;
        }
        if (used >= spec_.budget) {
            return false;
        }
        for (const auto& next : attack_outcomes(q, spec_.attacked)) {
            if (!(this->*then)(next, used + 1, depth)) {
                return false;
            }
        }
        return true;
    }

    void set_horizon(std::size_t horizon) { horizon_ = horizon; }

private:
    using Key = std::tuple<StateSet, int, std::size_t>;

    const Automaton& plant_;
    const AttackSpec& spec_;
    std::size_t horizon_ = 0;
    std::map<Key, bool> some_;
    std::map<Key, bool> all_;
    std::map<Key, bool> safe_;
};

} // namespace

std::vector<Event> AttackTrace::labels() const
{
    std::vector<Event> result;
    for (const auto& round : rounds) {
        if (round.event) {
            result.push_back(*round.event);
        }
        if (round.decision == Decision::N) {
            result.emplace_back(kAttackNo);
        } else {
            result.emplace_back(kAttackYes);
            if (round.result) {
                result.emplace_back(*round.result ? kResultInside : kResultOutside);
            }
        }
    }
    return result;
}

std::optional<StateSet> filtered_estimate(const Automaton& plant, const AttackSpec& spec, const AttackTrace& trace)
{
    StateSet estimate = plant.initial();
    int attacks = 0;
    for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
        const AttackRound& round = trace.rounds[i];
        if ((i == 0) != !round.event.has_value()) {
            return std::nullopt;
        }
        if (round.event) {
            estimate = plant.image(estimate, *round.event);
        }
        if (round.decision == Decision::Y) {
            if (!round.result || ++attacks > spec.budget) {
                return std::nullopt;
            }
            estimate = filter(estimate, spec.attacked, *round.result);
        } else if (round.result) {
            return std::nullopt;
        }
        if (estimate.empty()) {
            return std::nullopt;
        }
    }
    return estimate;
}

bool is_violating_attack_sequence(const Automaton& plant, const AttackSpec& spec, const std::vector<Event>& events,
                                  const std::vector<Decision>& decisions)
{
    if (decisions.size() != events.size() + 1) {
        return false;
    }
    if (std::count(decisions.begin(), decisions.end(), Decision::Y) > spec.budget) {
        return false;
    }

    // Estimates reachable by some choice of the results so far.
    std::set<StateSet> frontier{plant.initial()};
    for (std::size_t i = 0; i < events.size(); ++i) {
        std::set<StateSet> next;
        for (const auto& q : frontier) {
            StateSet moved = i == 0 ? q : plant.image(q, events[i - 1]);
            if (moved.empty()) {
                continue;
            }
            if (decisions[i] == Decision::N) {
                next.insert(std::move(moved));
            } else {
                for (auto& outcome : attack_outcomes(moved, spec.attacked)) {
                    next.insert(std::move(outcome));
                }
            }
        }
        frontier = std::move(next);
    }

    const std::size_t last = events.size();
    for (const auto& q : frontier) {
        const StateSet moved = last == 0 ? q : plant.image(q, events[last - 1]);
        if (moved.empty()) {
            continue;
        }
        const auto finals = decisions[last] == Decision::N ? std::vector<StateSet>{moved}
                                                           : attack_outcomes(moved, spec.attacked);
        const bool all_violating = std::all_of(finals.begin(), finals.end(),
                                               [&](const StateSet& f) { return violation_predicate(f, spec.mode); });
        if (all_violating) {
            return true;
        }
    }
    return false;
}

bool oracle_check_violation(const Automaton& plant, const AttackSpec& spec, std::size_t horizon)
{
    spec.validate(plant);
    Search search(plant, spec);
    return search.decide(plant.initial(), 0, horizon, &Search::reach_some);
}

bool oracle_check_enforced(const Automaton& plant, const AttackSpec& spec, std::size_t depth)
{
    spec.validate(plant);
    Search search(plant, spec);
    search.set_horizon(depth);
    return search.decide(plant.initial(), 0, depth, &Search::safe);
}

bool oracle_check_forced_reach(const Automaton& plant, const AttackSpec& spec, std::size_t depth)
{
    spec.validate(plant);
    Search search(plant, spec);
    return search.decide(plant.initial(), 0, depth, &Search::reach_all);
}

std::size_t default_horizon(const Automaton& plant, const AttackSpec& spec)
{
    return build_attack_observer(plant, spec)->size();
}

} // namespace attackobs
