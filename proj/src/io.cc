#include "attackobs/io.hh"

#include <set>
#include <sstream>

namespace attackobs {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(InputError::Kind kind)
{
    switch (kind) {
    case InputError::Kind::Syntax: return "syntax";
    case InputError::Kind::Schema: return "schema";
    case InputError::Kind::UnknownIdentifier: return "unknown-identifier";
    case InputError::Kind::ReservedLabel: return "reserved-label";
    case InputError::Kind::NegativeBudget: return "negative-budget";
    case InputError::Kind::Duplicate: return "duplicate";
    }
    return "?";
}

namespace {

using Kind = InputError::Kind;

json parse_document(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(Kind::Syntax, std::string("malformed JSON: ") + e.what());
    }
}

const json& field(const json& object, const char* key)
{
    const auto it = object.find(key);
    if (it == object.end()) {
        throw InputError(Kind::Schema, std::string("missing field '") + key + "'");
    }
    return *it;
}

std::vector<std::string> string_list(const json& value, const char* what)
{
    if (!value.is_array()) {
        throw InputError(Kind::Schema, std::string("'") + what + "' must be a list of strings");
    }
    std::vector<std::string> result;
    for (const auto& item : value) {
        if (!item.is_string()) {
            throw InputError(Kind::Schema, std::string("'") + what + "' must be a list of strings");
        }
        result.push_back(item.get<std::string>());
    }
    return result;
}

StateId resolve(const Automaton& model, const std::string& name)
{
    const auto id = model.find_state(name);
    if (!id) {
        throw InputError(Kind::UnknownIdentifier, "unknown state '" + name + "'");
    }
    return *id;
}

StateSet resolve_all(const Automaton& model, const json& value, const char* what)
{
    StateSet result;
    for (const auto& name : string_list(value, what)) {
        if (!result.insert(resolve(model, name)).second) {
            throw InputError(Kind::Duplicate, std::string("duplicate state '") + name + "' in '" + what + "'");
        }
    }
    return result;
}

ordered_json names(const Automaton& automaton, const StateSet& states)
{
    ordered_json result = ordered_json::array();
    for (const StateId state : states) {
        result.push_back(automaton.name(state));
    }
    return result;
}

std::string quote(std::string_view text)
{
    std::string out = "\"";
    for (const char c : text) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    out += '"';
    return out;
}

const char* type_color(StateType type)
{
    switch (type) {
    case StateType::TypeI: return "red";
    case StateType::TypeII: return "blue";
    case StateType::TypeIII: return "green";
    }
    return "black";
}

class DotWriter {
public:
    explicit DotWriter(std::string_view graph_name)
    {
        out_ << "digraph " << quote(graph_name) << " {\n";
        out_ << "  rankdir=LR;\n";
    }

    void start(const std::string& node)
    {
        out_ << "  __start [shape=point];\n";
        out_ << "  __start -> " << quote(node) << ";\n";
    }

    void node(const std::string& name, const char* color = nullptr)
    {
        out_ << "  " << quote(name);
        if (color) {
            out_ << " [color=" << color << ", fontcolor=" << color << "]";
        }
        out_ << ";\n";
    }

    void empty() { out_ << "  empty [shape=plaintext, label=\"empty\"];\n"; }

    void edge(const std::string& from, const std::string& to, const std::string& label)
    {
        out_ << "  " << quote(from) << " -> " << quote(to) << " [label=" << quote(label) << "];\n";
    }

    std::string finish()
    {
        out_ << "}\n";
        return out_.str();
    }

private:
    std::ostringstream out_;
};

} // namespace

Automaton parse_model(std::string_view text)
{
    const json doc = parse_document(text);
    if (!doc.is_object()) {
        throw InputError(Kind::Schema, "model must be a JSON object");
    }

    Automaton model;
    for (const auto& name : string_list(field(doc, "states"), "states")) {
        if (model.find_state(name)) {
            throw InputError(Kind::Duplicate, "duplicate state '" + name + "'");
        }
        model.add_state(name);
    }

    std::set<Event> events;
    for (const auto& event : string_list(field(doc, "events"), "events")) {
        if (is_reserved_label(event)) {
            throw InputError(Kind::ReservedLabel, "event name '" + event + "' is reserved");
        }
        if (!events.insert(event).second) {
            throw InputError(Kind::Duplicate, "duplicate event '" + event + "'");
        }
        model.add_event(event);
    }

    const StateSet initial = resolve_all(model, field(doc, "initial"), "initial");
    if (initial.empty()) {
        throw InputError(Kind::Schema, "'initial' must name at least one state");
    }
    for (const StateId state : initial) {
        model.add_initial(state);
    }

    const json& transitions = field(doc, "transitions");
    if (!transitions.is_array()) {
        throw InputError(Kind::Schema, "'transitions' must be a list");
    }
    for (const auto& t : transitions) {
        const auto parts = string_list(t, "transitions entry");
        if (parts.size() != 3) {
            throw InputError(Kind::Schema, "a transition is a [source, event, target] triple");
        }
        if (!events.contains(parts[1])) {
            if (is_reserved_label(parts[1])) {
                throw InputError(Kind::ReservedLabel, "event name '" + parts[1] + "' is reserved");
            }
            throw InputError(Kind::UnknownIdentifier, "unknown event '" + parts[1] + "'");
        }
        model.add_transition(resolve(model, parts[0]), parts[1], resolve(model, parts[2]));
    }
    return model;
}

AttackSpec parse_spec(std::string_view text, const Automaton& model)
{
    const json doc = parse_document(text);
    if (!doc.is_object()) {
        throw InputError(Kind::Schema, "spec must be a JSON object");
    }

    AttackSpec spec;
    spec.attacked = resolve_all(model, field(doc, "attacked_states"), "attacked_states");

    const json& budget = field(doc, "budget");
    if (!budget.is_number_integer()) {
        throw InputError(Kind::Schema, "'budget' must be an integer");
    }
    if (budget.is_number_unsigned()) {
        const auto value = budget.get<std::uint64_t>();
        if (value > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
            throw InputError(Kind::Schema, "'budget' is too large");
        }
        spec.budget = static_cast<int>(value);
    } else {
        const auto value = budget.get<std::int64_t>();
        if (value < 0) {
            throw InputError(Kind::NegativeBudget, "'budget' must be non-negative");
        }
        if (value > std::numeric_limits<int>::max()) {
            throw InputError(Kind::Schema, "'budget' is too large");
        }
        spec.budget = static_cast<int>(value);
    }

    const auto mode = doc.find("mode");
    if (mode == doc.end() || *mode == "anonymity") {
        spec.mode = Anonymity{};
    } else if (mode->is_object() && mode->size() == 1 && mode->contains("opacity")) {
        const json& opacity = (*mode)["opacity"];
        if (!opacity.is_object()) {
            throw InputError(Kind::Schema, "'opacity' must be an object");
        }
        spec.mode = Opacity{resolve_all(model, field(opacity, "secret_states"), "secret_states")};
    } else {
        throw InputError(Kind::Schema, "'mode' must be \"anonymity\" or {\"opacity\": {...}}");
    }
    return spec;
}

std::string dump(const ordered_json& document)
{
    return document.dump(2) + "\n";
}

ordered_json automaton_json(const Automaton& automaton)
{
    ordered_json doc;
    doc["states"] = ordered_json::array();
    for (StateId state = 0; state < automaton.num_states(); ++state) {
        doc["states"].push_back(automaton.name(state));
    }
    doc["events"] = automaton.events();
    doc["initial"] = names(automaton, automaton.initial());
    doc["transitions"] = ordered_json::array();
    for (const auto& t : automaton.transitions()) {
        doc["transitions"].push_back({automaton.name(t.source), t.event, automaton.name(t.target)});
    }
    return doc;
}

std::string serialize_model(const Automaton& model)
{
    return dump(automaton_json(model));
}

std::string serialize_spec(const AttackSpec& spec, const Automaton& model)
{
    ordered_json doc;
    doc["attacked_states"] = names(model, spec.attacked);
    doc["budget"] = spec.budget;
    if (const auto* opacity = std::get_if<Opacity>(&spec.mode)) {
        doc["mode"]["opacity"]["secret_states"] = names(model, opacity->secret);
    } else {
        doc["mode"] = "anonymity";
    }
    return dump(doc);
}

ordered_json attack_observer_json(const AttackObserver& aobs)
{
    ordered_json doc;
    doc["initial"] = aobs.name(aobs.initial());
    doc["states"] = ordered_json::array();
    for (StateId id = 0; id < aobs.size(); ++id) {
        const AObsState& s = aobs.state(id);
        doc["states"].push_back({
            {"name", aobs.name(id)},
            {"type", to_string(classify(s))},
            {"phase", to_string(s.phase)},
            {"counter", s.counter.to_string()},
            {"estimate", names(aobs.plant(), s.estimate)},
        });
    }
    doc["transitions"] = ordered_json::array();
    for (const auto& t : aobs.graph().transitions()) {
        doc["transitions"].push_back({aobs.name(t.source), t.event, aobs.name(t.target)});
    }
    return doc;
}

ordered_json sub_automaton_json(const SubAutomaton& sub)
{
    const AttackObserver& aobs = sub.parent();
    ordered_json doc;
    doc["empty"] = sub.empty();
    doc["initial"] = sub.empty() ? ordered_json(nullptr) : ordered_json(aobs.name(*sub.initial()));
    doc["states"] = ordered_json::array();
    doc["transitions"] = ordered_json::array();
    for (const StateId state : sub.states()) {
        doc["states"].push_back(aobs.name(state));
        for (const auto& label : sub.enabled(state)) {
            doc["transitions"].push_back({aobs.name(state), label, aobs.name(*sub.successor(state, label))});
        }
    }
    return doc;
}

ordered_json strategy_json(const MealyStrategy& strategy)
{
    const AttackObserver& aobs = strategy.aobs();
    ordered_json doc;
    doc["initial"] = aobs.name(strategy.initial());
    doc["states"] = ordered_json::array();
    for (const StateId state : strategy.states()) {
        doc["states"].push_back({{"name", aobs.name(state)}, {"rank", strategy.rank(state).to_string()}});
    }
    doc["edges"] = ordered_json::array();
    for (const auto& edge : strategy.edges()) {
        doc["edges"].push_back({
            {"source", aobs.name(edge.source)},
            {"input", to_string(edge.input)},
            {"output", to_string(edge.output)},
            {"target", aobs.name(edge.target)},
        });
    }
    return doc;
}

std::string export_dot(const Automaton& automaton, std::string_view graph_name)
{
    DotWriter dot(graph_name);
    for (const StateId init : automaton.initial()) {
        dot.start(automaton.name(init));
    }
    for (StateId state = 0; state < automaton.num_states(); ++state) {
        dot.node(automaton.name(state));
    }
    for (const auto& t : automaton.transitions()) {
        dot.edge(automaton.name(t.source), automaton.name(t.target), t.event);
    }
    return dot.finish();
}

std::string export_dot(const AttackObserver& aobs, std::string_view graph_name)
{
    DotWriter dot(graph_name);
    dot.start(aobs.name(aobs.initial()));
    for (StateId id = 0; id < aobs.size(); ++id) {
        dot.node(aobs.name(id), type_color(aobs.type(id)));
    }
    for (const auto& t : aobs.graph().transitions()) {
        dot.edge(aobs.name(t.source), aobs.name(t.target), t.event);
    }
    return dot.finish();
}

std::string export_dot(const SubAutomaton& sub, std::string_view graph_name)
{
    DotWriter dot(graph_name);
    if (sub.empty()) {
        dot.empty();
        return dot.finish();
    }
    const AttackObserver& aobs = sub.parent();
    dot.start(aobs.name(*sub.initial()));
    for (const StateId state : sub.states()) {
        dot.node(aobs.name(state), type_color(aobs.type(state)));
    }
    for (const StateId state : sub.states()) {
        for (const auto& label : sub.enabled(state)) {
            dot.edge(aobs.name(state), aobs.name(*sub.successor(state, label)), label);
        }
    }
    return dot.finish();
}

std::string export_dot(const MealyStrategy& strategy, std::string_view graph_name)
{
    DotWriter dot(graph_name);
    if (strategy.empty()) {
        dot.empty();
        return dot.finish();
    }
    const AttackObserver& aobs = strategy.aobs();
    dot.start(aobs.name(strategy.initial()));
    for (const StateId state : strategy.states()) {
        dot.node(aobs.name(state), type_color(aobs.type(state)));
    }
    for (const auto& edge : strategy.edges()) {
        dot.edge(aobs.name(edge.source), aobs.name(edge.target), edge.label());
    }
    return dot.finish();
}

} // namespace attackobs
