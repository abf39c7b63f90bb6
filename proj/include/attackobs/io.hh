// io.hh -- JSON model/spec documents, JSON reports and DOT export.

#ifndef ATTACKOBS_IO_HH
#define ATTACKOBS_IO_HH

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "attackobs/strategy.hh"

namespace attackobs {

class InputError : public std::runtime_error {
public:
    enum class Kind {
        Syntax,
        Schema,
        UnknownIdentifier,
        ReservedLabel,
        NegativeBudget,
        Duplicate,
    };

    InputError(Kind kind, const std::string& message)
        : std::runtime_error(message)
        , kind_(kind)
    {
    }

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

std::string to_string(InputError::Kind kind);

/// Parses {"states": [...], "events": [...], "initial": [...], "transitions": [[s, e, t], ...]}.
Automaton parse_model(std::string_view text);
/// Parses {"attacked_states": [...], "budget": n, "mode": "anonymity" | {"opacity": {"secret_states": [...]}}}.
AttackSpec parse_spec(std::string_view text, const Automaton& model);

/// Canonical text: states in id order, events sorted, transitions sorted by
/// (source id, event, target id), two-space indentation, trailing newline.
std::string serialize_model(const Automaton& model);
std::string serialize_spec(const AttackSpec& spec, const Automaton& model);

nlohmann::ordered_json automaton_json(const Automaton& automaton);
nlohmann::ordered_json attack_observer_json(const AttackObserver& aobs);
nlohmann::ordered_json sub_automaton_json(const SubAutomaton& sub);
nlohmann::ordered_json strategy_json(const MealyStrategy& strategy);

/// Dumps with two-space indentation and a trailing newline.
std::string dump(const nlohmann::ordered_json& document);

/// Plain automaton, states in id order.
std::string export_dot(const Automaton& automaton, std::string_view graph_name = "automaton");
/// Attack-observer states colored by type: I red, II blue, III green.
std::string export_dot(const AttackObserver& aobs, std::string_view graph_name = "attack_observer");
/// Kept states and transitions only; an empty sub-automaton is a single "empty" node.
std::string export_dot(const SubAutomaton& sub, std::string_view graph_name = "verifier");
/// Edges labelled "input/output", e.g. "ε/N" or "b/Y0".
std::string export_dot(const MealyStrategy& strategy, std::string_view graph_name = "strategy");

} // namespace attackobs

#endif // ATTACKOBS_IO_HH
