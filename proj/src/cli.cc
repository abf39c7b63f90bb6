#include "attackobs/cli.hh"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "attackobs/io.hh"
#include "attackobs/oracle.hh"

namespace attackobs {

namespace {

using nlohmann::ordered_json;

struct Options {
    std::string command;
    std::string model_path;
    std::string spec_path;
    std::string attacked;
    std::optional<long long> budget;
    std::string mode = "anonymity";
    std::string secret;
    std::string out_path;
    std::string format = "json";
    std::string policy = "ranked";
    bool strict_paper = false;
    std::optional<std::size_t> horizon;
    std::uint64_t seed = 0;
    bool fail_on_violation = false;
    std::string system_policy = "random";
    std::optional<std::size_t> max_rounds;
    std::string object = "verifier";
};

/// A problem with the files or flags the user gave; reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> result;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            result.push_back(item);
        }
    }
    return result;
}

Automaton load_model(const Options& opt)
{
    if (opt.model_path.empty()) {
        throw UsageError("--model is required");
    }
    return parse_model(read_file(opt.model_path));
}

AttackSpec load_spec(const Options& opt, const Automaton& model)
{
    if (!opt.spec_path.empty()) {
        return parse_spec(read_file(opt.spec_path), model);
    }
    // Flags are turned into a spec document so they get the same validation.
    ordered_json doc;
    doc["attacked_states"] = split_list(opt.attacked);
    doc["budget"] = opt.budget.value_or(0);
    if (opt.mode == "opacity") {
        doc["mode"]["opacity"]["secret_states"] = split_list(opt.secret);
    } else if (opt.mode == "anonymity") {
        doc["mode"] = "anonymity";
    } else {
        throw UsageError("--mode must be anonymity or opacity");
    }
    return parse_spec(doc.dump(), model);
}

PruningSemantics semantics(const Options& opt)
{
    return opt.strict_paper ? PruningSemantics::Strict : PruningSemantics::Sound;
}

ChoicePolicy choice_policy(const Options& opt)
{
    return opt.policy == "first-valid" ? ChoicePolicy::FirstValid : ChoicePolicy::Ranked;
}

ordered_json labels_json(const std::vector<Event>& labels)
{
    return ordered_json(labels);
}

ordered_json validation_json(const ValidationReport& report)
{
    ordered_json doc;
    doc["sound"] = report.sound;
    doc["max_rounds"] = report.max_rounds;
    doc["max_attacks"] = report.max_attacks;
    doc["reason"] = report.reason;
    doc["counterexample"] = report.counterexample;
    return doc;
}

struct Outcome {
    std::string text;
    bool verdict = false;
};

Outcome json_outcome(const ordered_json& doc, bool verdict)
{
    return {dump(doc), verdict};
}

Outcome cmd_observer(const Options& opt)
{
    const Automaton model = load_model(opt);
    const Observer obs = observer(model);
    if (opt.format == "dot") {
        return {export_dot(obs.dfa, "observer"), false};
    }
    ordered_json doc;
    doc["command"] = opt.command;
    doc["states"] = obs.dfa.num_states();
    doc["transitions"] = obs.dfa.num_transitions();
    doc["observer"] = automaton_json(obs.dfa);
    return json_outcome(doc, false);
}

Outcome cmd_check_classic(const Options& opt)
{
    const Automaton model = load_model(opt);
    const AttackSpec spec = load_spec(opt, model);
    ordered_json doc;
    doc["command"] = opt.command;
    bool holds = true;
    if (const auto* opacity = std::get_if<Opacity>(&spec.mode)) {
        holds = check_opacity_classic(model, opacity->secret);
        doc["mode"] = "opacity";
        doc["opaque"] = holds;
    } else {
        holds = check_anonymity_classic(model);
        doc["mode"] = "anonymity";
        doc["anonymous"] = holds;
    }
    doc["verdict"] = !holds;
    return json_outcome(doc, !holds);
}

Outcome cmd_build_aobs(const Options& opt)
{
    const Automaton model = load_model(opt);
    const AttackSpec spec = load_spec(opt, model);
    const auto aobs = build_attack_observer(model, spec);
    if (opt.format == "dot") {
        return {export_dot(*aobs), false};
    }
    ordered_json doc;
    doc["command"] = opt.command;
    doc["states"] = aobs->size();
    doc["transitions"] = aobs->graph().num_transitions();
    doc["attack_observer"] = attack_observer_json(*aobs);
    return json_outcome(doc, false);
}

Outcome cmd_check_violation(const Options& opt)
{
    const Automaton model = load_model(opt);
    const AttackSpec spec = load_spec(opt, model);
    const ViolationResult result = check_violation(model, spec);
    if (opt.format == "dot") {
        return {export_dot(result.verifier, "verifier"), result.verdict};
    }
    ordered_json doc;
    doc["command"] = opt.command;
    doc["verdict"] = result.verdict;
    doc["attack_observer_states"] = result.aobs->size();
    doc["intermediate_violating_states"] = result.intermediate_violating.size();
    doc["verifier_states"] = result.verifier.size();
    doc["witness"] = labels_json(result.witness);
    doc["verifier"] = sub_automaton_json(result.verifier);
    return json_outcome(doc, result.verdict);
}

Outcome cmd_check_enforced(const Options& opt)
{
    const Automaton model = load_model(opt);
    const AttackSpec spec = load_spec(opt, model);
    const EnforcementResult result = check_enforced(model, spec, semantics(opt));
    if (opt.format == "dot") {
        return {export_dot(result.final_verifier, "final_verifier"), result.verdict};
    }
    ordered_json doc;
    doc["command"] = opt.command;
    doc["semantics"] = opt.strict_paper ? "strict-paper" : "sound";
    doc["verdict"] = result.verdict;
    doc["attack_observer_states"] = result.violation.aobs->size();
    doc["verifier_states"] = result.violation.verifier.size();
    doc["final_verifier_states"] = result.final_verifier.size();
    if (result.verdict) {
        const RankMap ranks = compute_ranks(result.final_verifier);
        doc["rank_initial"] = ranks.at(*result.final_verifier.initial()).to_string();
    } else {
        doc["rank_initial"] = nullptr;
    }
    doc["final_verifier"] = sub_automaton_json(result.final_verifier);
    return json_outcome(doc, result.verdict);
}

Outcome cmd_synthesize(const Options& opt)
{
    const Automaton model = load_model(opt);
    const AttackSpec spec = load_spec(opt, model);
    const EnforcementResult result = check_enforced(model, spec, semantics(opt));
    std::optional<MealyStrategy> strategy;
    if (result.verdict) {
        strategy = synthesize_strategy(result.final_verifier, choice_policy(opt));
    }
    if (opt.format == "dot") {
        if (!strategy) {
            return {export_dot(result.final_verifier, "strategy"), false};
        }
        return {export_dot(*strategy), true};
    }
    ordered_json doc;
    doc["command"] = opt.command;
    doc["verdict"] = result.verdict;
    doc["policy"] = opt.policy;
    if (strategy) {
        doc["rank_initial"] = strategy->rank(strategy->initial()).to_string();
        doc["validation"] = validation_json(validate_strategy(*strategy));
        doc["strategy"] = strategy_json(*strategy);
    } else {
        doc["rank_initial"] = nullptr;
        doc["validation"] = nullptr;
        doc["strategy"] = nullptr;
    }
    return json_outcome(doc, result.verdict);
}

Outcome cmd_simulate(const Options& opt)
{
    const Automaton model = load_model(opt);
    const AttackSpec spec = load_spec(opt, model);
    const EnforcementResult result = check_enforced(model, spec, semantics(opt));
    if (!result.verdict) {
        throw UsageError("violation cannot be enforced; there is no strategy to simulate");
    }
    const MealyStrategy strategy = synthesize_strategy(result.final_verifier, choice_policy(opt));
    SystemPolicy policy = RandomSeeded{opt.seed};
    if (opt.system_policy == "adversarial") {
        policy = Adversarial{};
    } else if (opt.system_policy != "random") {
        throw UsageError("--system-policy must be random or adversarial");
    }
    const std::size_t limit = opt.max_rounds.value_or(result.violation.aobs->size());
    const PlayTrace trace = simulate_play(strategy, policy, limit);

    const AttackObserver& aobs = strategy.aobs();
    ordered_json doc;
    doc["command"] = opt.command;
    doc["system_policy"] = opt.system_policy;
    doc["seed"] = opt.seed;
    doc["violated"] = trace.violated;
    doc["deadlocked"] = trace.deadlocked;
    doc["rounds"] = ordered_json::array();
    for (const auto& round : trace.rounds) {
        doc["rounds"].push_back({
            {"event", to_string(round.event)},
            {"decision", to_string(round.decision)},
            {"plant_state", model.name(round.plant_state)},
            {"strategy_state", aobs.name(round.strategy_state)},
            {"estimate", format_state_set(model, round.estimate)},
        });
    }
    return json_outcome(doc, trace.violated);
}

Outcome cmd_oracle(const Options& opt)
{
    const Automaton model = load_model(opt);
    const AttackSpec spec = load_spec(opt, model);
    const std::size_t horizon = opt.horizon.value_or(default_horizon(model, spec));
    ordered_json doc;
    doc["command"] = opt.command;
    doc["horizon"] = horizon;
    const bool violation = oracle_check_violation(model, spec, horizon);
    doc["violation"] = violation;
    doc["enforced"] = oracle_check_enforced(model, spec, horizon);
    doc["forced_reach"] = oracle_check_forced_reach(model, spec, horizon);
    return json_outcome(doc, violation);
}

Outcome cmd_export_dot(const Options& opt)
{
    const Automaton model = load_model(opt);
    if (opt.object == "model") {
        return {export_dot(model, "model"), false};
    }
    if (opt.object == "observer") {
        return {export_dot(observer(model).dfa, "observer"), false};
    }
    const AttackSpec spec = load_spec(opt, model);
    if (opt.object == "aobs") {
        return {export_dot(*build_attack_observer(model, spec)), false};
    }
    const EnforcementResult result = check_enforced(model, spec, semantics(opt));
    if (opt.object == "verifier") {
        return {export_dot(result.violation.verifier, "verifier"), result.violation.verdict};
    }
    if (opt.object == "final-verifier") {
        return {export_dot(result.final_verifier, "final_verifier"), result.verdict};
    }
    if (opt.object == "strategy") {
        if (!result.verdict) {
            return {export_dot(result.final_verifier, "strategy"), false};
        }
        return {export_dot(synthesize_strategy(result.final_verifier, choice_policy(opt))), true};
    }
    throw UsageError("unknown --object '" + opt.object + "'");
}

void add_common(CLI::App& sub, Options& opt)
{
    sub.add_option("--model", opt.model_path, "Plant model (JSON)");
    sub.add_option("--spec", opt.spec_path, "Attack spec (JSON)");
    sub.add_option("--attacked", opt.attacked, "Comma-separated attacked states");
    sub.add_option("--budget", opt.budget, "Attack budget");
    sub.add_option("--mode", opt.mode, "anonymity or opacity")->check(CLI::IsMember({"anonymity", "opacity"}));
    sub.add_option("--secret", opt.secret, "Comma-separated secret states (opacity mode)");
    sub.add_option("--out", opt.out_path, "Write the report here instead of standard output");
    sub.add_option("--format", opt.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    sub.add_option("--policy", opt.policy, "ranked or first-valid")->check(CLI::IsMember({"ranked", "first-valid"}));
    sub.add_flag("--strict-paper", opt.strict_paper, "Check only the attack results still in the verifier");
    sub.add_option("--horizon", opt.horizon, "Search depth for the oracle");
    sub.add_option("--seed", opt.seed, "Seed for the random system policy");
    sub.add_flag("--fail-on-violation", opt.fail_on_violation, "Exit 1 when the verdict is positive");
    sub.add_option("--system-policy", opt.system_policy, "random or adversarial")
        ->check(CLI::IsMember({"random", "adversarial"}));
    sub.add_option("--max-rounds", opt.max_rounds, "Round limit for simulate");
    sub.add_option("--object", opt.object, "model, observer, aobs, verifier, final-verifier or strategy")
        ->check(CLI::IsMember({"model", "observer", "aobs", "verifier", "final-verifier", "strategy"}));
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bounded state-attack analysis of nondeterministic automata", "attackobs"};
    app.require_subcommand(1);

    Options opt;
    const std::vector<std::pair<const char*, const char*>> commands = {
        {"observer", "Subset-construction observer of the plant"},
        {"check-classic", "Anonymity or opacity without attacks"},
        {"build-aobs", "Attack-observer"},
        {"check-violation", "Can some attack sequence disclose the state?"},
        {"check-enforced", "Can the intruder force disclosure?"},
        {"synthesize", "Mealy attack strategy"},
        {"simulate", "Play the synthesized strategy against the plant"},
        {"oracle", "Brute-force checks on the plant"},
        {"export-dot", "Graphviz text of a constructed automaton"},
    };
    for (const auto& [name, description] : commands) {
        add_common(*app.add_subcommand(name, description), opt);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    opt.command = app.get_subcommands().front()->get_name();

    try {
        Outcome outcome;
        if (opt.command == "observer") {
            outcome = cmd_observer(opt);
        } else if (opt.command == "check-classic") {
            outcome = cmd_check_classic(opt);
        } else if (opt.command == "build-aobs") {
            outcome = cmd_build_aobs(opt);
        } else if (opt.command == "check-violation") {
            outcome = cmd_check_violation(opt);
        } else if (opt.command == "check-enforced") {
            outcome = cmd_check_enforced(opt);
        } else if (opt.command == "synthesize") {
            outcome = cmd_synthesize(opt);
        } else if (opt.command == "simulate") {
            outcome = cmd_simulate(opt);
        } else if (opt.command == "oracle") {
            outcome = cmd_oracle(opt);
        } else {
            outcome = cmd_export_dot(opt);
        }

        if (opt.out_path.empty()) {
            out << outcome.text;
        } else {
            std::ofstream file(opt.out_path, std::ios::binary);
            if (!file) {
                throw UsageError("cannot write '" + opt.out_path + "'");
            }
            file << outcome.text;
        }
        return opt.fail_on_violation && outcome.verdict ? 1 : 0;
    } catch (const InputError& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    }
    return 2;
}

} // namespace attackobs
