#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <nlohmann/json.hpp>

#include "attackobs/cli.hh"
#include "instances.hh"

using namespace attackobs;
using namespace attackobs::testing;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;

    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> with_fixture(std::string command, const char* spec, std::vector<std::string> extra = {})
{
    std::vector<std::string> args{std::move(command), "--model", fixture_path("fixtures/ten_state_model.json"), "--spec",
                                  fixture_path(std::string("fixtures/") + spec)};
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

} // namespace

TEST_CASE("check-violation over the fixtures", "[cli]")
{
    const Run r24 = run(with_fixture("check-violation", "ten_state_spec_24.json"));
    REQUIRE(r24.code == 0);
    const auto doc = r24.json();
    CHECK(doc["verdict"] == true);
    CHECK(doc["attack_observer_states"] == 34);
    CHECK(doc["verifier_states"] == 16);
    CHECK(doc["witness"].size() == 4);

    const Run r2489 = run(with_fixture("check-violation", "ten_state_spec_2489.json"));
    CHECK(r2489.json()["attack_observer_states"] == 40);
    CHECK(r2489.json()["verifier_states"] == 30);
}

TEST_CASE("check-enforced over the fixtures", "[cli]")
{
    const auto none = run(with_fixture("check-enforced", "ten_state_spec_24.json")).json();
    CHECK(none["verdict"] == false);
    CHECK(none["final_verifier_states"] == 0);
    CHECK(none["rank_initial"].is_null());

    const auto some = run(with_fixture("check-enforced", "ten_state_spec_2489.json")).json();
    CHECK(some["verdict"] == true);
    CHECK(some["final_verifier_states"] == 27);
    CHECK(some["rank_initial"] == "6");
    CHECK(some["semantics"] == "sound");
}

TEST_CASE("spec given by flags", "[cli]")
{
    const Run flags = run({"check-violation", "--model", fixture_path("fixtures/ten_state_model.json"), "--attacked",
                           "2,4", "--budget", "1"});
    const Run file = run(with_fixture("check-violation", "ten_state_spec_24.json"));
    REQUIRE(flags.code == 0);
    CHECK(flags.out == file.out);
}

TEST_CASE("exit codes", "[cli]")
{
    CHECK(run(with_fixture("check-violation", "ten_state_spec_24.json", {"--fail-on-violation"})).code == 1);
    CHECK(run(with_fixture("check-enforced", "ten_state_spec_24.json", {"--fail-on-violation"})).code == 0);
    CHECK(run(with_fixture("check-enforced", "ten_state_spec_2489.json", {"--fail-on-violation"})).code == 1);

    const Run missing = run({"check-violation", "--model", "/nonexistent.json", "--attacked", "2", "--budget", "1"});
    CHECK(missing.code == 2);
    CHECK_FALSE(missing.err.empty());
    CHECK(missing.out.empty());

    CHECK(run({"check-violation", "--model", fixture_path("fixtures/ten_state_model.json"), "--attacked", "42",
               "--budget", "1"})
              .code
          == 2);
    CHECK(run({"check-violation", "--model", fixture_path("fixtures/ten_state_model.json"), "--attacked", "2",
               "--budget", "-1"})
              .code
          == 2);
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"check-violation"}).code == 2);
}

TEST_CASE("synthesize reports the ranked strategy", "[cli]")
{
    const Run r = run(with_fixture("synthesize", "ten_state_spec_2489.json"));
    REQUIRE(r.code == 0);
    const auto doc = r.json();
    CHECK(doc["verdict"] == true);
    CHECK(doc["validation"]["sound"] == true);
    CHECK(doc["validation"]["max_attacks"] == 1);

    std::set<std::string> edges;
    for (const auto& e : doc["strategy"]["edges"]) {
        edges.insert(e["source"].get<std::string>() + " " + e["input"].get<std::string>() + "/"
                     + e["output"].get<std::string>() + " " + e["target"].get<std::string>());
    }
    CHECK(edges.contains("(A,0,{1,10}) ε/N (S,0N,{1,10})"));
    CHECK(edges.contains("(S,0N,{1,10}) a/N (S,0N,{2,3})"));
    CHECK(edges.contains("(S,0N,{2,3}) b/Y0 (S,1,{5})"));
    CHECK(edges.contains("(S,0N,{2,3}) b/Y1 (S,1,{4})"));

    const auto none = run(with_fixture("synthesize", "ten_state_spec_24.json")).json();
    CHECK(none["verdict"] == false);
    CHECK(none["strategy"].is_null());
}

TEST_CASE("simulate and oracle subcommands", "[cli]")
{
    const Run sim = run(with_fixture("simulate", "ten_state_spec_2489.json", {"--seed", "5"}));
    REQUIRE(sim.code == 0);
    CHECK(sim.json()["violated"] == true);
    CHECK(sim.out == run(with_fixture("simulate", "ten_state_spec_2489.json", {"--seed", "5"})).out);

    const auto adversarial =
        run(with_fixture("simulate", "ten_state_spec_2489.json", {"--system-policy", "adversarial"})).json();
    CHECK(adversarial["violated"] == true);

    const auto oracle = run(with_fixture("oracle", "ten_state_spec_2489.json")).json();
    CHECK(oracle["violation"] == true);
    CHECK(oracle["enforced"] == true);
    CHECK(oracle["forced_reach"] == true);
}

TEST_CASE("export-dot writes the golden verifier", "[cli]")
{
    const Run r = run(with_fixture("export-dot", "ten_state_spec_24.json", {"--object", "verifier"}));
    REQUIRE(r.code == 0);
    CHECK(r.out == read_text(fixture_path("golden/verifier_24.dot")));
}

TEST_CASE("output is byte-identical across runs", "[cli]")
{
    for (const char* command : {"build-aobs", "check-violation", "check-enforced", "synthesize", "oracle"}) {
        INFO(command);
        const Run a = run(with_fixture(command, "ten_state_spec_2489.json"));
        const Run b = run(with_fixture(command, "ten_state_spec_2489.json"));
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}
