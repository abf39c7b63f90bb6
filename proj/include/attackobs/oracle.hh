// oracle.hh -- brute-force evaluation of attack sequences directly on the
// plant. Slow and simple; used to cross-check the attack-observer pipeline.

#ifndef ATTACKOBS_ORACLE_HH
#define ATTACKOBS_ORACLE_HH

#include <optional>
#include <vector>

#include "attackobs/attack_models.hh"
#include "attackobs/strategy.hh"

namespace attackobs {

enum class Decision { N, Y };

struct AttackRound {
    /// Empty input in round 0, a plant event afterwards.
    MealyInput event;
    Decision decision = Decision::N;
    /// Whether the plant was in an attacked state; set iff decision is Y.
    std::optional<bool> result;
};

struct AttackTrace {
    std::vector<AttackRound> rounds;

    /// Attack-observer labels spelling the same trace, e.g. N a Y 1.
    std::vector<Event> labels() const;
};

/// Estimate after the trace, or nullopt when some step empties it, the trace
/// is malformed, or it uses more than `budget` attacks.
std::optional<StateSet> filtered_estimate(const Automaton& plant, const AttackSpec& spec, const AttackTrace& trace);

/// Decisions `decisions` (one more than events) along `events` disclose the
/// state for some choice of the intermediate results and every final result.
bool is_violating_attack_sequence(const Automaton& plant, const AttackSpec& spec, const std::vector<Event>& events,
                                  const std::vector<Decision>& decisions);

/// Some event string of length at most `horizon` admits decisions that reach a
/// violating estimate whatever every attack returns.
bool oracle_check_violation(const Automaton& plant, const AttackSpec& spec, std::size_t horizon);

/// The intruder can keep every estimate at which the system moves inside the
/// region where violation stays reachable, whatever the system and the
/// attack results do. `depth` bounds the unfolding of that safety game.
bool oracle_check_enforced(const Automaton& plant, const AttackSpec& spec, std::size_t depth);

/// The intruder can force a violating estimate within `depth` system moves.
bool oracle_check_forced_reach(const Automaton& plant, const AttackSpec& spec, std::size_t depth);

/// Number of attack-observer states: enough for every bounded search above.
std::size_t default_horizon(const Automaton& plant, const AttackSpec& spec);

} // namespace attackobs

#endif // ATTACKOBS_ORACLE_HH
