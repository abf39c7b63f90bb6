// strategy.hh -- Mealy attack strategies: ranks, synthesis, exhaustive
// validation and simulated plays.

#ifndef ATTACKOBS_STRATEGY_HH
#define ATTACKOBS_STRATEGY_HH

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "attackobs/enforcement.hh"

namespace attackobs {

/// Distance to a violating state under worst-case system moves; may be infinite.
class Rank {
public:
    constexpr Rank() = default;
    constexpr explicit Rank(std::size_t value)
        : value_(value)
    {
    }
    static constexpr Rank infinity() { return Rank(); }

    constexpr bool is_finite() const { return value_ != kInfinite; }
    /// Only meaningful when finite.
    constexpr std::size_t value() const { return value_; }
    std::string to_string() const { return is_finite() ? std::to_string(value_) : "inf"; }

    constexpr auto operator<=>(const Rank&) const = default;

private:
    static constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();
    std::size_t value_ = kInfinite;
};

using RankMap = std::map<StateId, Rank>;

/// Ranks of every state of `fv`: violating type-I states get 0, type-III states
/// one more than their best kept successor, type-II and other type-I states one
/// more than their worst kept successor. States never reached stay infinite.
RankMap compute_ranks(const SubAutomaton& fv);

enum class ChoicePolicy {
    /// N when its successor ranks below the current strategy state, otherwise
    /// the decision with the smallest worst-case successor rank (N on ties).
    Ranked,
    /// N whenever it stays in the final verifier, otherwise Y.
    FirstValid,
};

enum class AttackOutput { N, Y0, Y1 };

std::string to_string(AttackOutput output);

/// Observed event; std::nullopt stands for the empty input at the start of a play.
using MealyInput = std::optional<Event>;

std::string to_string(const MealyInput& input);

struct MealyEdge {
    StateId source;
    MealyInput input;
    AttackOutput output;
    StateId target;

    auto operator<=>(const MealyEdge&) const = default;
    /// "e/N", "ε/N", "b/Y0".
    std::string label() const;
};

/**
 * Intruder policy as a Mealy machine over attack-observer states.
 *
 * The initial state is the attack-observer's initial (type-III) state; every
 * other state is type-I. An edge (x, e) -> (o, y) means: after observing e at
 * x, answer o and continue at y. Ranks are kept for simulation.
 */
class MealyStrategy {
public:
    MealyStrategy(std::shared_ptr<const AttackObserver> aobs, StateId initial, std::vector<MealyEdge> edges,
                  RankMap ranks);

    const AttackObserver& aobs() const { return *aobs_; }
    StateId initial() const { return initial_; }
    bool empty() const { return edges_.empty(); }
    const std::vector<MealyEdge>& edges() const { return edges_; }
    StateSet states() const;
    const RankMap& ranks() const { return ranks_; }
    Rank rank(StateId state) const;

    std::vector<MealyEdge> edges_from(StateId state, const MealyInput& input) const;

    /// Replaces the edge set. Used to build deliberately broken strategies.
    void set_edges(std::vector<MealyEdge> edges);

private:
    std::shared_ptr<const AttackObserver> aobs_;
    StateId initial_;
    std::vector<MealyEdge> edges_; ///< sorted
    RankMap ranks_;
};

/// Throws std::invalid_argument on an empty final verifier and std::logic_error
/// when some reachable decision point has no decision staying inside `fv`.
MealyStrategy synthesize_strategy(const SubAutomaton& fv, ChoicePolicy policy = ChoicePolicy::Ranked);

struct ValidationReport {
    bool sound = false;
    /// Longest play in strategy edges, counting the initial empty-input edge.
    std::size_t max_rounds = 0;
    std::size_t max_attacks = 0;
    std::string reason;
    /// Edge labels of a failing play; empty when sound.
    std::vector<std::string> counterexample;
};

/// Unfolds every play: all events enabled at the current estimate and all
/// defined attack results. Sound iff every play ends in a violating estimate
/// after at most `budget` attacks and no play can go on forever.
ValidationReport validate_strategy(const MealyStrategy& strategy);

struct RandomSeeded {
    std::uint64_t seed = 0;
};
/// Picks the move leading to the strategy state of highest rank.
struct Adversarial {};
using SystemPolicy = std::variant<RandomSeeded, Adversarial>;

struct PlayRound {
    MealyInput event;
    AttackOutput decision;
    StateId plant_state;     ///< true plant state after the event
    StateId strategy_state;  ///< strategy state after the round
    StateSet estimate;
};

struct PlayTrace {
    std::vector<PlayRound> rounds;
    /// The play ended in a violating estimate.
    bool violated = false;
    /// The play stopped because the true plant state has no outgoing event.
    bool deadlocked = false;
};

/// One play of the system against the strategy. The true plant state is
/// tracked and determines the attack results. Throws std::runtime_error when
/// the strategy has no edge for a move the system made.
PlayTrace simulate_play(const MealyStrategy& strategy, const SystemPolicy& policy, std::size_t max_rounds);

} // namespace attackobs

#endif // ATTACKOBS_STRATEGY_HH
