#include "attackobs/strategy.hh"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>

namespace attackobs {

namespace {

const Event kYes(kAttackYes);
const Event kNo(kAttackNo);

AttackOutput output_for_result(const Event& result)
{
    return result == kResultInside ? AttackOutput::Y1 : AttackOutput::Y0;
}

Event result_for_output(AttackOutput output)
{
    return Event(output == AttackOutput::Y1 ? kResultInside : kResultOutside);
}

} // namespace

RankMap compute_ranks(const SubAutomaton& fv)
{
    const AttackObserver& aobs = fv.parent();
    RankMap ranks;
    for (const StateId state : fv.states()) {
        ranks[state] = aobs.is_violating(state) ? Rank(0) : Rank::infinity();
    }

    // Layer k holds the states whose rank is exactly k.
    for (std::size_t k = 1;; ++k) {
        std::vector<StateId> layer;
        for (const StateId state : fv.states()) {
            if (ranks[state].is_finite()) {
                continue;
            }
            std::vector<Rank> next;
            for (const auto& label : fv.enabled(state)) {
                next.push_back(ranks[*fv.successor(state, label)]);
            }
            if (next.empty()) {
                continue;
            }
            const Rank best = aobs.type(state) == StateType::TypeIII ? *std::min_element(next.begin(), next.end())
                                                                     : *std::max_element(next.begin(), next.end());
            if (best.is_finite() && best.value() < k) {
                layer.push_back(state);
            }
        }
        if (layer.empty()) {
            break;
        }
        for (const StateId state : layer) {
            ranks[state] = Rank(k);
        }
    }
    return ranks;
}

std::string to_string(AttackOutput output)
{
    switch (output) {
    case AttackOutput::N: return "N";
    case AttackOutput::Y0: return "Y0";
    case AttackOutput::Y1: return "Y1";
    }
    return "?";
}

std::string to_string(const MealyInput& input)
{
    return input ? *input : std::string(kEpsilon);
}

std::string MealyEdge::label() const
{
    return to_string(input) + "/" + to_string(output);
}

MealyStrategy::MealyStrategy(std::shared_ptr<const AttackObserver> aobs, StateId initial,
                             std::vector<MealyEdge> edges, RankMap ranks)
    : aobs_(std::move(aobs))
    , initial_(initial)
    , ranks_(std::move(ranks))
{
    set_edges(std::move(edges));
}

StateSet MealyStrategy::states() const
{
    StateSet result;
    if (edges_.empty()) {
        return result;
    }
    result.insert(initial_);
    for (const auto& edge : edges_) {
        result.insert(edge.source);
        result.insert(edge.target);
    }
    return result;
}

Rank MealyStrategy::rank(StateId state) const
{
    const auto it = ranks_.find(state);
    return it == ranks_.end() ? Rank::infinity() : it->second;
}

std::vector<MealyEdge> MealyStrategy::edges_from(StateId state, const MealyInput& input) const
{
    std::vector<MealyEdge> result;
    for (const auto& edge : edges_) {
        if (edge.source == state && edge.input == input) {
            result.push_back(edge);
        }
    }
    return result;
}

void MealyStrategy::set_edges(std::vector<MealyEdge> edges)
{
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
}

MealyStrategy synthesize_strategy(const SubAutomaton& fv, ChoicePolicy policy)
{
    if (fv.empty()) {
        throw std::invalid_argument("cannot synthesize a strategy from an empty final verifier");
    }
    const AttackObserver& aobs = fv.parent();
    RankMap ranks = compute_ranks(fv);
    std::vector<MealyEdge> edges;
    std::deque<StateId> queue;
    StateSet expanded;

    // Adds the edges for answering `input` at `source`, which moved the game to decision state `at`.
    // Ranked: N if it lands strictly below the rank of `source`, else the decision with the
    // smaller worst-case rank. Either way the rank at strategy states strictly decreases.
    auto decide = [&](StateId source, const MealyInput& input, StateId at) {
        const auto no = fv.successor(at, kNo);
        const auto yes = fv.successor(at, kYes);
        std::set<Event> results;
        if (yes) {
            results = fv.enabled(*yes);
        }
        const bool no_valid = no.has_value();
        const bool yes_valid = !results.empty();
        if (!no_valid && !yes_valid) {
            throw std::logic_error("no decision stays in the final verifier at " + aobs.name(at));
        }

        bool attack = !no_valid;
        if (no_valid && yes_valid && policy == ChoicePolicy::Ranked && !(ranks[*no] < ranks[source])) {
            Rank worst_yes(0);
            for (const auto& result : results) {
                worst_yes = std::max(worst_yes, ranks[*fv.successor(*yes, result)]);
            }
            attack = worst_yes < ranks[*no];
        }

        std::vector<StateId> targets;
        if (attack) {
            for (const auto& result : results) {
                const StateId target = *fv.successor(*yes, result);
                edges.push_back({source, input, output_for_result(result), target});
                targets.push_back(target);
            }
        } else {
            edges.push_back({source, input, AttackOutput::N, *no});
            targets.push_back(*no);
        }
        for (const StateId target : targets) {
            if (expanded.insert(target).second) {
                queue.push_back(target);
            }
        }
    };

    const StateId init = *fv.initial();
    decide(init, std::nullopt, init);
    while (!queue.empty()) {
        const StateId state = queue.front();
        queue.pop_front();
        for (const auto& event : aobs.enabled(state)) {
            const auto at = fv.successor(state, event);
            if (!at) {
                throw std::logic_error("event " + event + " leaves the final verifier at " + aobs.name(state));
            }
            decide(state, event, *at);
        }
    }
    return MealyStrategy(fv.parent_ptr(), init, std::move(edges), std::move(ranks));
}

namespace {

class StrategyChecker {
public:
    explicit StrategyChecker(const MealyStrategy& strategy)
        : strategy_(strategy)
        , aobs_(strategy.aobs())
    {
    }

    ValidationReport run()
    {
        if (strategy_.empty()) {
            report_.reason = "empty strategy";
            return report_;
        }
        const StateId init = strategy_.initial();
        const auto summary = answer(init, std::nullopt, init);
        if (summary) {
            report_.sound = summary->attacks <= static_cast<std::size_t>(aobs_.spec().budget);
            report_.max_rounds = summary->rounds;
            report_.max_attacks = summary->attacks;
            if (!report_.sound) {
                report_.reason = "attack budget exceeded";
            }
        }
        return report_;
    }

private:
    struct Summary {
        std::size_t rounds;
        std::size_t attacks;
    };

    enum class Mark { Open, Done };

    std::optional<Summary> fail(std::string reason)
    {
        if (report_.reason.empty()) {
            report_.reason = std::move(reason);
            report_.counterexample = path_;
        }
        return std::nullopt;
    }

    // Checks the edges answering `input` at `source` against the decision state `at`.
    std::optional<Summary> answer(StateId source, const MealyInput& input, StateId at)
    {
        const auto edges = strategy_.edges_from(source, input);
        if (edges.empty()) {
            path_.push_back(to_string(input) + "/?");
            auto result = fail("missing edge for " + to_string(input) + " at " + aobs_.name(source));
            path_.pop_back();
            return result;
        }

        std::vector<std::pair<MealyEdge, StateId>> expected;
        if (edges.front().output == AttackOutput::N) {
            const auto next = aobs_.successor(at, kNo);
            if (edges.size() != 1 || !next || edges.front().target != *next) {
                return fail("edge mismatch at " + aobs_.name(source));
            }
            expected.emplace_back(edges.front(), *next);
        } else {
            const auto pending = aobs_.successor(at, kYes);
            if (!pending || edges.size() != aobs_.enabled(*pending).size()) {
                return fail("attack edges do not cover every result at " + aobs_.name(source));
            }
            for (const auto& edge : edges) {
                const auto next =
                    edge.output == AttackOutput::N ? std::nullopt : aobs_.successor(*pending, result_for_output(edge.output));
                if (!next || edge.target != *next) {
                    return fail("edge mismatch at " + aobs_.name(source));
                }
                expected.emplace_back(edge, *next);
            }
        }

        Summary worst{0, 0};
        for (const auto& [edge, target] : expected) {
            path_.push_back(edge.label());
            const auto child = visit(target);
            path_.pop_back();
            if (!child) {
                return std::nullopt;
            }
            const std::size_t attack = edge.output == AttackOutput::N ? 0 : 1;
            worst.rounds = std::max(worst.rounds, child->rounds + 1);
            worst.attacks = std::max(worst.attacks, child->attacks + attack);
        }
        return worst;
    }

    std::optional<Summary> visit(StateId state)
    {
        if (aobs_.is_violating(state)) {
            return Summary{0, 0};
        }
        if (const auto it = done_.find(state); it != done_.end()) {
            return it->second;
        }
        if (open_.contains(state)) {
            return fail("play can loop forever through " + aobs_.name(state));
        }
        const auto events = aobs_.enabled(state);
        if (events.empty()) {
            return fail("play stops at " + aobs_.name(state) + " without disclosure");
        }
        open_.insert(state);
        Summary worst{0, 0};
        for (const auto& event : events) {
            const auto child = answer(state, event, *aobs_.successor(state, event));
            if (!child) {
                return std::nullopt;
            }
            worst.rounds = std::max(worst.rounds, child->rounds);
            worst.attacks = std::max(worst.attacks, child->attacks);
        }
        open_.erase(state);
        done_.emplace(state, worst);
        return worst;
    }

    const MealyStrategy& strategy_;
    const AttackObserver& aobs_;
    ValidationReport report_;
    std::vector<std::string> path_;
    StateSet open_;
    std::map<StateId, Summary> done_;
};

} // namespace

ValidationReport validate_strategy(const MealyStrategy& strategy)
{
    return StrategyChecker(strategy).run();
}

namespace {

// Strategy state reached when the system moves the plant to `plant_state` and
// the strategy answers `input` at `source`.
StateId respond(const MealyStrategy& strategy, StateId source, const MealyInput& input, StateId plant_state)
{
    const auto edges = strategy.edges_from(source, input);
    if (edges.empty()) {
        throw std::runtime_error("strategy has no edge for " + to_string(input) + " at "
                                 + strategy.aobs().name(source));
    }
    if (edges.front().output == AttackOutput::N) {
        return edges.front().target;
    }
    const bool inside = strategy.aobs().spec().attacked.contains(plant_state);
    const AttackOutput wanted = inside ? AttackOutput::Y1 : AttackOutput::Y0;
    for (const auto& edge : edges) {
        if (edge.output == wanted) {
            return edge.target;
        }
    }
    throw std::runtime_error("strategy has no " + to_string(wanted) + " edge for " + to_string(input) + " at "
                             + strategy.aobs().name(source));
}

template <typename T>
const T& pick_uniform(const std::vector<T>& items, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> dist(0, items.size() - 1);
    return items[dist(rng)];
}

} // namespace

PlayTrace simulate_play(const MealyStrategy& strategy, const SystemPolicy& policy, std::size_t max_rounds)
{
    if (strategy.empty()) {
        throw std::invalid_argument("cannot play an empty strategy");
    }
    const AttackObserver& aobs = strategy.aobs();
    const Automaton& plant = aobs.plant();
    const auto* random = std::get_if<RandomSeeded>(&policy);
    std::mt19937_64 rng(random ? random->seed : 0);

    // Chooses among candidate (input, plant state) moves from `source`.
    auto choose = [&](StateId source, const std::vector<std::pair<MealyInput, StateId>>& moves) {
        if (random) {
            return pick_uniform(moves, rng);
        }
        auto best = moves.front();
        Rank best_rank = strategy.rank(respond(strategy, source, best.first, best.second));
        for (const auto& move : moves) {
            const Rank r = strategy.rank(respond(strategy, source, move.first, move.second));
            if (r > best_rank) {
                best = move;
                best_rank = r;
            }
        }
        return best;
    };

    PlayTrace trace;
    auto record = [&](const MealyInput& input, StateId source, StateId plant_state) {
        const StateId next = respond(strategy, source, input, plant_state);
        const auto edges = strategy.edges_from(source, input);
        const AttackOutput decision = edges.front().output == AttackOutput::N
            ? AttackOutput::N
            : (aobs.spec().attacked.contains(plant_state) ? AttackOutput::Y1 : AttackOutput::Y0);
        trace.rounds.push_back({input, decision, plant_state, next, aobs.state(next).estimate});
        return next;
    };

    std::vector<std::pair<MealyInput, StateId>> starts;
    for (const StateId x0 : plant.initial()) {
        starts.emplace_back(std::nullopt, x0);
    }
    const auto [no_input, start] = choose(strategy.initial(), starts);
    StateId current = record(no_input, strategy.initial(), start);
    StateId plant_state = start;

    while (!aobs.is_violating(current) && trace.rounds.size() < max_rounds) {
        std::vector<std::pair<MealyInput, StateId>> moves;
        if (random) {
            // Event first, then successor, each uniformly.
            const auto& post = plant.post(plant_state);
            std::vector<Event> events;
            for (const auto& [event, targets] : post) {
                if (!targets.empty()) {
                    events.push_back(event);
                }
            }
            if (events.empty()) {
                trace.deadlocked = true;
                break;
            }
            const Event& event = pick_uniform(events, rng);
            const auto& targets = post.at(event);
            const std::vector<StateId> options(targets.begin(), targets.end());
            moves.emplace_back(event, pick_uniform(options, rng));
        } else {
            for (const auto& [event, targets] : plant.post(plant_state)) {
                for (const StateId target : targets) {
                    moves.emplace_back(event, target);
                }
            }
            if (moves.empty()) {
                trace.deadlocked = true;
                break;
            }
        }
        const auto [input, next_plant] = moves.size() == 1 ? moves.front() : choose(current, moves);
        current = record(input, current, next_plant);
        plant_state = next_plant;
    }
    trace.violated = aobs.is_violating(current);
    return trace;
}

} // namespace attackobs
