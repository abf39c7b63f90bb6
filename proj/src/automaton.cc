#include "attackobs/automaton.hh"

#include <deque>
#include <stdexcept>

namespace attackobs {

namespace {

const StateSet kNoStates{};

} // namespace

StateId Automaton::add_state(std::string name)
{
    if (index_.contains(name)) {
        throw std::invalid_argument("duplicate state name '" + name + "'");
    }
    const auto id = static_cast<StateId>(names_.size());
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    post_.emplace_back();
    return id;
}

void Automaton::add_event(Event event)
{
    events_.insert(std::move(event));
}

void Automaton::add_transition(StateId source, const Event& event, StateId target)
{
    if (!contains(source) || !contains(target)) {
        throw std::invalid_argument("transition endpoint is not a state");
    }
    events_.insert(event);
    post_[source][event].insert(target);
}

void Automaton::add_initial(StateId state)
{
    if (!contains(state)) {
        throw std::invalid_argument("initial state is not a state");
    }
    initial_.insert(state);
}

std::size_t Automaton::num_transitions() const
{
    std::size_t count = 0;
    for (const auto& by_event : post_) {
        for (const auto& [event, targets] : by_event) {
            count += targets.size();
        }
    }
    return count;
}

std::optional<StateId> Automaton::find_state(std::string_view name) const
{
    const auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

const StateSet& Automaton::successors(StateId state, const Event& event) const
{
    const auto& by_event = post_.at(state);
    const auto it = by_event.find(event);
    return it == by_event.end() ? kNoStates : it->second;
}

std::optional<StateId> Automaton::successor(StateId state, const Event& event) const
{
    const auto& targets = successors(state, event);
    if (targets.empty()) {
        return std::nullopt;
    }
    if (targets.size() > 1) {
        throw std::logic_error("nondeterministic transition from '" + names_[state] + "' on '" + event + "'");
    }
    return *targets.begin();
}

std::vector<Transition> Automaton::transitions() const
{
    std::vector<Transition> result;
    for (StateId source = 0; source < post_.size(); ++source) {
        for (const auto& [event, targets] : post_[source]) {
            for (const StateId target : targets) {
                result.push_back({source, event, target});
            }
        }
    }
    return result;
}

StateSet Automaton::image(const StateSet& states, const Event& event) const
{
    StateSet result;
    for (const StateId state : states) {
        const auto& targets = successors(state, event);
        result.insert(targets.begin(), targets.end());
    }
    return result;
}

std::set<Event> Automaton::enabled_events(const StateSet& states) const
{
    std::set<Event> result;
    for (const StateId state : states) {
        for (const auto& [event, targets] : post_.at(state)) {
            if (!targets.empty()) {
                result.insert(event);
            }
        }
    }
    return result;
}

bool Automaton::is_deterministic() const
{
    if (initial_.size() != 1) {
        return false;
    }
    for (const auto& by_event : post_) {
        for (const auto& [event, targets] : by_event) {
            if (targets.size() > 1) {
                return false;
            }
        }
    }
    return true;
}

void Automaton::validate() const
{
    if (initial_.empty()) {
        throw std::invalid_argument("automaton has no initial state");
    }
}

bool Automaton::operator==(const Automaton& other) const
{
    return names_ == other.names_ && events_ == other.events_ && post_ == other.post_
        && initial_ == other.initial_;
}

StateEstimate::StateEstimate(StateSet members)
    : members_(std::move(members))
{
    if (members_.empty()) {
        throw std::invalid_argument("state estimate must be nonempty");
    }
}

std::string format_state_set(const Automaton& plant, const StateSet& states)
{
    std::string out = "{";
    bool first = true;
    for (const StateId state : states) {
        if (!first) {
            out += ',';
        }
        first = false;
        out += plant.name(state);
    }
    out += '}';
    return out;
}

Automaton accessible_part(const Automaton& automaton)
{
    std::vector<std::optional<StateId>> renamed(automaton.num_states());
    std::vector<StateId> order;
    std::deque<StateId> queue;
    for (const StateId init : automaton.initial()) {
        renamed[init] = 0;
        order.push_back(init);
        queue.push_back(init);
    }
    while (!queue.empty()) {
        const StateId state = queue.front();
        queue.pop_front();
        for (const auto& [event, targets] : automaton.post(state)) {
            for (const StateId target : targets) {
                if (!renamed[target]) {
                    renamed[target] = 0;
                    order.push_back(target);
                    queue.push_back(target);
                }
            }
        }
    }

    Automaton result;
    for (const auto& event : automaton.events()) {
        result.add_event(event);
    }
    for (const StateId old_id : order) {
        renamed[old_id] = result.add_state(automaton.name(old_id));
    }
    for (const StateId old_id : order) {
        for (const auto& [event, targets] : automaton.post(old_id)) {
            for (const StateId target : targets) {
                result.add_transition(*renamed[old_id], event, *renamed[target]);
            }
        }
    }
    for (const StateId init : automaton.initial()) {
        result.add_initial(*renamed[init]);
    }
    return result;
}

Observer observer(const Automaton& plant)
{
    plant.validate();

    Observer result;
    std::map<StateSet, StateId> index;
    std::deque<StateId> queue;

    auto intern = [&](const StateSet& members) {
        const auto [it, inserted] = index.try_emplace(members, 0);
        if (inserted) {
            it->second = result.dfa.add_state(format_state_set(plant, members));
            result.estimates.emplace_back(members);
            queue.push_back(it->second);
        }
        return it->second;
    };

    for (const auto& event : plant.events()) {
        result.dfa.add_event(event);
    }
    result.dfa.add_initial(intern(plant.initial()));

    while (!queue.empty()) {
        const StateId current = queue.front();
        queue.pop_front();
        const StateSet members = result.estimates[current].members();
        for (const auto& event : plant.events()) {
            StateSet next = plant.image(members, event);
            if (next.empty()) {
                continue;
            }
            const StateId target = intern(next);
            result.dfa.add_transition(current, event, target);
        }
    }
    return result;
}

Product compose(const Automaton& left, const Automaton& right)
{
    Product result;
    std::map<std::pair<StateId, StateId>, StateId> index;
    std::deque<StateId> queue;

    auto intern = [&](StateId l, StateId r) {
        const auto [it, inserted] = index.try_emplace({l, r}, 0);
        if (inserted) {
            it->second = result.automaton.add_state("(" + left.name(l) + "," + right.name(r) + ")");
            result.components.emplace_back(l, r);
            queue.push_back(it->second);
        }
        return it->second;
    };

    std::set<Event> alphabet = left.events();
    alphabet.insert(right.events().begin(), right.events().end());
    for (const auto& event : alphabet) {
        result.automaton.add_event(event);
    }

    for (const StateId l : left.initial()) {
        for (const StateId r : right.initial()) {
            result.automaton.add_initial(intern(l, r));
        }
    }

    while (!queue.empty()) {
        const StateId current = queue.front();
        queue.pop_front();
        const auto [l, r] = result.components[current];
        for (const auto& event : alphabet) {
            const bool in_left = left.events().contains(event);
            const bool in_right = right.events().contains(event);
            if (in_left && in_right) {
                const auto& left_next = left.successors(l, event);
                const auto& right_next = right.successors(r, event);
                if (left_next.empty() || right_next.empty()) {
                    continue;
                }
                for (const StateId ln : left_next) {
                    for (const StateId rn : right_next) {
                        result.automaton.add_transition(current, event, intern(ln, rn));
                    }
                }
            } else if (in_left) {
                for (const StateId ln : left.successors(l, event)) {
                    result.automaton.add_transition(current, event, intern(ln, r));
                }
            } else {
                for (const StateId rn : right.successors(r, event)) {
                    result.automaton.add_transition(current, event, intern(l, rn));
                }
            }
        }
    }
    return result;
}

std::set<Event> enabled_events(const Automaton& plant, const StateSet& estimate)
{
    return plant.enabled_events(estimate);
}

bool check_anonymity_classic(const Automaton& plant)
{
    const Observer obs = observer(plant);
    for (const auto& estimate : obs.estimates) {
        if (estimate.size() <= 1) {
            return false;
        }
    }
    return true;
}

bool check_opacity_classic(const Automaton& plant, const StateSet& secret)
{
    for (const StateId state : secret) {
        if (!plant.contains(state)) {
            throw std::invalid_argument("secret state is not a plant state");
        }
    }
    const Observer obs = observer(plant);
    for (const auto& estimate : obs.estimates) {
        bool has_non_secret = false;
        for (const StateId state : estimate.members()) {
            if (!secret.contains(state)) {
                has_non_secret = true;
                break;
            }
        }
        if (!has_non_secret) {
            return false;
        }
    }
    return true;
}

} // namespace attackobs
