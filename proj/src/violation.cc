#include "attackobs/violation.hh"

#include <algorithm>
#include <deque>
#include <map>

namespace attackobs {

SubAutomaton::SubAutomaton(std::shared_ptr<const AttackObserver> parent, const StateSet& kept)
    : parent_(std::move(parent))
{
    const StateId init = parent_->initial();
    if (!kept.contains(init)) {
        return;
    }
    std::deque<StateId> queue{init};
    states_.insert(init);
    while (!queue.empty()) {
        const StateId current = queue.front();
        queue.pop_front();
        for (const auto& [label, targets] : parent_->graph().post(current)) {
            for (const StateId target : targets) {
                if (kept.contains(target) && states_.insert(target).second) {
                    queue.push_back(target);
                }
            }
        }
    }
}

std::size_t SubAutomaton::num_transitions() const
{
    std::size_t count = 0;
    for (const StateId state : states_) {
        count += enabled(state).size();
    }
    return count;
}

std::optional<StateId> SubAutomaton::initial() const
{
    if (empty()) {
        return std::nullopt;
    }
    return parent_->initial();
}

std::optional<StateId> SubAutomaton::successor(StateId state, const Event& label) const
{
    if (!contains(state)) {
        return std::nullopt;
    }
    const auto next = parent_->successor(state, label);
    if (!next || !contains(*next)) {
        return std::nullopt;
    }
    return next;
}

std::set<Event> SubAutomaton::enabled(StateId state) const
{
    std::set<Event> result;
    if (!contains(state)) {
        return result;
    }
    for (const auto& [label, targets] : parent_->graph().post(state)) {
        if (std::any_of(targets.begin(), targets.end(), [&](StateId t) { return contains(t); })) {
            result.insert(label);
        }
    }
    return result;
}

SubAutomaton SubAutomaton::without(const StateSet& removed) const
{
    StateSet kept;
    std::set_difference(states_.begin(), states_.end(), removed.begin(), removed.end(),
                        std::inserter(kept, kept.end()));
    return SubAutomaton(parent_, kept);
}

StateSet intermediate_violating_fixpoint(const AttackObserver& aobs, const ViolationMode& mode)
{
    const std::size_t n = aobs.size();
    std::vector<bool> member(n, false);
    // Results of a type-II state that already lead into the set.
    std::vector<std::size_t> joined_results(n, 0);
    std::deque<StateId> work;

    auto join = [&](StateId state) {
        member[state] = true;
        work.push_back(state);
    };

    for (StateId id = 0; id < n; ++id) {
        if (aobs.type(id) == StateType::TypeI && violation_predicate(aobs.state(id).estimate, mode)) {
            join(id);
        }
    }

    while (!work.empty()) {
        const StateId current = work.front();
        work.pop_front();
        for (const auto& [label, source] : aobs.predecessors(current)) {
            if (member[source]) {
                continue;
            }
            switch (aobs.type(source)) {
            case StateType::TypeII:
                if (++joined_results[source] == aobs.enabled(source).size()) {
                    join(source);
                }
                break;
            case StateType::TypeIII:
                join(source);
                break;
            case StateType::TypeI:
                join(source);
                break;
            }
        }
    }

    StateSet result;
    for (StateId id = 0; id < n; ++id) {
        if (member[id]) {
            result.insert(id);
        }
    }
    return result;
}

SubAutomaton build_verifier(std::shared_ptr<const AttackObserver> aobs, const StateSet& iav)
{
    return SubAutomaton(std::move(aobs), iav);
}

std::optional<std::vector<Event>> violating_path(const SubAutomaton& sub)
{
    if (sub.empty()) {
        return std::nullopt;
    }
    const AttackObserver& aobs = sub.parent();
    std::map<StateId, std::pair<StateId, Event>> parent;
    std::deque<StateId> queue{*sub.initial()};
    StateSet seen{*sub.initial()};
    while (!queue.empty()) {
        const StateId current = queue.front();
        queue.pop_front();
        if (aobs.is_violating(current)) {
            std::vector<Event> path;
            for (StateId at = current; at != *sub.initial(); at = parent.at(at).first) {
                path.push_back(parent.at(at).second);
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (const auto& label : sub.enabled(current)) {
            const StateId next = *sub.successor(current, label);
            if (seen.insert(next).second) {
                parent.emplace(next, std::make_pair(current, label));
                queue.push_back(next);
            }
        }
    }
    return std::nullopt;
}

ViolationResult check_violation(const Automaton& plant, const AttackSpec& spec)
{
    auto aobs = build_attack_observer(plant, spec);
    StateSet iav = intermediate_violating_fixpoint(*aobs);
    SubAutomaton verifier = build_verifier(aobs, iav);
    const bool verdict = !verifier.empty();
    std::vector<Event> witness;
    if (verdict) {
        witness = violating_path(verifier).value_or(std::vector<Event>{});
    }
    return ViolationResult{verdict, std::move(aobs), std::move(iav), std::move(verifier), std::move(witness)};
}

} // namespace attackobs
