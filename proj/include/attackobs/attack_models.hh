// attack_models.hh -- the intruder's capabilities and the auxiliary automata
// that bound and sequence state attacks.

#ifndef ATTACKOBS_ATTACK_MODELS_HH
#define ATTACKOBS_ATTACK_MODELS_HH

#include <compare>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "attackobs/automaton.hh"

namespace attackobs {

/// Reserved labels. Plant alphabets must not use them.
inline constexpr std::string_view kAttackYes = "Y";
inline constexpr std::string_view kAttackNo = "N";
inline constexpr std::string_view kResultOutside = "0";
inline constexpr std::string_view kResultInside = "1";
inline constexpr std::string_view kEpsilon = "ε";

bool is_reserved_label(std::string_view label);
bool is_decision_label(std::string_view label);
bool is_result_label(std::string_view label);

struct Anonymity {
    bool operator==(const Anonymity&) const = default;
};

struct Opacity {
    StateSet secret;
    bool operator==(const Opacity&) const = default;
};

/// What counts as a disclosure: a singleton estimate, or an estimate inside the secret set.
using ViolationMode = std::variant<Anonymity, Opacity>;

struct AttackSpec {
    /// States whose membership a single attack reveals.
    StateSet attacked;
    /// Maximum number of attacks over a whole run.
    int budget = 0;
    ViolationMode mode = Anonymity{};

    /// Throws std::invalid_argument if the spec refers to states outside the plant,
    /// has a negative budget, or the plant alphabet uses a reserved label.
    void validate(const Automaton& plant) const;

    bool operator==(const AttackSpec&) const = default;
};

/// Who moves next in the intruder/system game.
enum class GamePhase {
    A,  ///< intruder decides whether to attack
    AY, ///< intruder awaits the attack result
    S,  ///< system moves; the intruder updates its estimate
};

std::string to_string(GamePhase phase);

/// Attack bookkeeping: k completed attacks, possibly with a pending decision.
struct GameCounter {
    enum class Kind {
        Plain,     ///< "k"
        Waiting,   ///< "kN": declined to attack, waiting for the system
        Attacking, ///< "kY": the (k+1)-st attack is in flight
    };

    Kind kind = Kind::Plain;
    int completed = 0;

    std::string to_string() const;
    auto operator<=>(const GameCounter&) const = default;
};

/// Adds a "1" self-loop at every attacked state and a "0" self-loop elsewhere.
Automaton system_attack_model(const Automaton& plant, const StateSet& attacked);

struct NumberAttackModel {
    Automaton automaton;
    std::vector<GameCounter> counters; ///< indexed by state id
};

/// DFA counting attacks up to `budget` over the alphabet events ∪ {Y,N,0,1}.
/// It has 3·budget+2 states. Throws std::invalid_argument on a negative budget.
NumberAttackModel number_attack_model(int budget, const std::set<Event>& events);

/// Three-state turn structure A -N-> S, A -Y-> AY -0,1-> S, S -e-> A.
/// State ids follow the GamePhase enumeration order.
Automaton game_structure(const std::set<Event>& events);

struct BoundedGame {
    Automaton automaton;
    std::vector<GamePhase> phases;     ///< indexed by state id
    std::vector<GameCounter> counters; ///< indexed by state id
};

/// Composition of the game structure with the number attack model.
BoundedGame bounded_game_structure(int budget, const std::set<Event>& events);

} // namespace attackobs

#endif // ATTACKOBS_ATTACK_MODELS_HH
