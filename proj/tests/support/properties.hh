// Property checks shared by the property tests and the acceptance binary.
// Each check returns a description of the first failure, or nullopt.

#ifndef ATTACKOBS_TESTS_PROPERTIES_HH
#define ATTACKOBS_TESTS_PROPERTIES_HH

#include <functional>
#include <optional>
#include <string>

#include "attackobs/oracle.hh"
#include "instances.hh"

namespace attackobs::testing {

using Finding = std::optional<std::string>;

/// Every trace with `rounds` rounds over the plant alphabet: each decision and,
/// after Y, each result.
void for_each_trace(const Automaton& plant, std::size_t rounds, const std::function<void(const AttackTrace&)>& visit);

/// filtered_estimate is defined exactly on attack-observer paths and agrees
/// with the reached estimate, for all traces of up to `max_rounds` rounds.
Finding filter_agreement(const Instance& inst, std::size_t max_rounds);

/// check_violation against oracle_check_violation at the default horizon.
Finding violation_agreement(const Instance& inst);

enum class EnforcedAgreement {
    Agree,
    /// Sound pruning disagrees with the oracle but strict pruning agrees.
    StrictDivergence,
    Unexplained,
};

EnforcedAgreement enforced_agreement(const Instance& inst);

/// With no budget, check_violation is the negated classic check, in anonymity
/// mode and in opacity mode (secret: the instance's secret, else X_A).
Finding degenerate_budget(const Instance& inst);

/// check_violation verdicts never drop as the budget grows up to `max_budget`.
Finding budget_monotone(const Instance& inst, int max_budget);

struct SimulationOutcome {
    /// check_enforced holds and rank(initial) is finite.
    bool applicable = false;
    Finding failure;
};

/// `seeds` random plays and one adversarial play each disclose the true plant
/// state within rank(initial) rounds.
SimulationOutcome simulation_soundness(const Instance& inst, std::size_t seeds);

} // namespace attackobs::testing

#endif
