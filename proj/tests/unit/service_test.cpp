#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "http_fixture.hpp"
#include "tempdir.hpp"
#include "tracegraph/core/errors.hpp"
#include "tracegraph/core/graph_io.hpp"
#include "tracegraph/pipeline/coders.hpp"
#include "tracegraph/pipeline/server.hpp"

using namespace tracegraph;
using namespace tracegraph::pipeline;
using nlohmann::json;
using tracegraph::testing::RunningServer;
using tracegraph::testing::TempDir;

namespace {

const std::filesystem::path kSourceDir = TG_SOURCE_DIR;

// Chat-completions look-alike: fails the first `failures` calls with
// `fail_status`, then answers with `reply`.
struct FakeChat {
    int failures = 0;
    int fail_status = 500;
    std::string reply = "```\nstart 3 3 8 8\nexplore 8 * 3 = 24\n```";
    std::atomic<int> calls{0};
    json last_request;
    std::string last_auth;

    std::unique_ptr<httplib::Server> server() {
        auto srv = std::make_unique<httplib::Server>();
        srv->Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
            int n = ++calls;
            last_request = json::parse(req.body);
            last_auth = req.get_header_value("Authorization");
            if (n <= failures) {
                res.status = fail_status;
                return;
            }
            json body{{"choices", json::array({{{"message", {{"role", "assistant"}, {"content", reply}}}}})}};
            res.set_content(body.dump(), "application/json");
        });
        return srv;
    }
};

ChatConfig config_for(const RunningServer& s) {
    ChatConfig c;
    c.endpoint = s.url() + "/v1/chat/completions";
    c.model = "test-model";
    c.api_key_env = "TRACEGRAPH_TEST_KEY";
    c.max_retries = 3;
    c.initial_backoff_ms = 10;
    c.timeout_s = 5;
    return c;
}

struct KeySet {
    KeySet() { setenv("TRACEGRAPH_TEST_KEY", "secret", 1); }
};

Trial trial(std::string id, std::string transcript = "eight times three") {
    Trial t;
    t.trial_id = std::move(id);
    t.participant_id = "p";
    t.problem = {3, 3, 8, 8};
    t.transcript = std::move(transcript);
    t.response_time_s = 30;
    return t;
}

json body_of(const httplib::Result& r) { return json::parse(r->body); }

}  // namespace

TEST_CASE("chat client retries with exponential backoff") {
    KeySet key;
    FakeChat fake;
    fake.failures = 2;
    RunningServer srv(fake.server());
    std::vector<long> sleeps;
    ChatClient client(config_for(srv), [&](std::chrono::milliseconds d) { sleeps.push_back(d.count()); });
    auto reply = client.complete({{"system", "s"}, {"user", "u"}}, 0.3);
    CHECK(reply == fake.reply);
    CHECK(fake.calls == 3);
    CHECK(sleeps == std::vector<long>{10, 20});
    CHECK(fake.last_request["model"] == "test-model");
    CHECK(fake.last_request["temperature"] == 0.3);
    CHECK(fake.last_request["messages"].size() == 2);
    CHECK(fake.last_auth == "Bearer secret");
}

TEST_CASE("chat client gives up") {
    KeySet key;
    FakeChat fake;
    fake.failures = 100;
    RunningServer srv(fake.server());
    std::vector<long> sleeps;
    ChatClient client(config_for(srv), [&](std::chrono::milliseconds d) { sleeps.push_back(d.count()); });
    CHECK_THROWS_AS(client.complete({{"user", "u"}}, 0.0), ChatUnavailable);
    CHECK(fake.calls == 4);
    CHECK(sleeps == std::vector<long>{10, 20, 40});

    FakeChat bad;
    bad.failures = 1;
    bad.fail_status = 400;
    RunningServer srv2(bad.server());
    ChatClient once(config_for(srv2), [](std::chrono::milliseconds) {});
    CHECK_THROWS_AS(once.complete({{"user", "u"}}, 0.0), ChatUnavailable);
    CHECK(bad.calls == 1);

    auto cfg = config_for(srv2);
    cfg.api_key_env = "TRACEGRAPH_TEST_KEY_UNSET";
    ChatClient nokey(cfg);
    CHECK_THROWS_AS(nokey.complete({{"user", "u"}}, 0.0), ChatUnavailable);
    CHECK(bad.calls == 1);
}

TEST_CASE("llm coder through the repair loop") {
    KeySet key;
    FakeChat fake;
    RunningServer srv(fake.server());
    auto assets = load_prompt_assets(kSourceDir / "config");
    LlmCoder coder(config_for(srv), assets, [](std::chrono::milliseconds) {});
    CHECK(coder.name() == "chat:test-model");
    auto r = validator::repair_loop(trial("a"), coder);
    CHECK(r.attempts.size() == 1);
    CHECK(r.best().source == "start 3 3 8 8\nexplore 8 * 3 = 24\n");
    CHECK(fake.last_request["messages"].size() == 22);

    FakeChat down;
    down.failures = 100;
    RunningServer srv2(down.server());
    LlmCoder dead(config_for(srv2), assets, [](std::chrono::milliseconds) {});
    CHECK_THROWS_AS(dead.code({trial("a"), 1, 0.0, std::nullopt}), CoderUnavailable);
}

TEST_CASE("http relevance classifier") {
    KeySet key;
    for (auto [reply, expect] : std::vector<std::pair<std::string, int>>{
             {"relevant", 1}, {"Irrelevant.", 0}, {"Yes", 1}, {"no", 0}, {"maybe?", -1}}) {
        FakeChat fake;
        fake.reply = reply;
        RunningServer srv(fake.server());
        HttpRelevanceClassifier cls(config_for(srv), "judge", [](std::chrono::milliseconds) {});
        if (expect < 0) {
            CHECK_THROWS_AS(cls.relevant(trial("a")), ClassifierUnavailable);
        } else {
            CHECK(cls.relevant(trial("a")) == (expect == 1));
        }
    }
    FakeChat down;
    down.failures = 100;
    RunningServer srv(down.server());
    HttpRelevanceClassifier cls(config_for(srv), "judge", [](std::chrono::milliseconds) {});
    Dataset ds{{trial("a"), trial("b", "Thank you.")}, {}};
    auto r = filter_relevance(ds, {"Thank you."}, cls);
    // b is excluded, so a goes by the participant rule rather than staying pending
    CHECK(r.pending.empty());
    CHECK(r.excluded.size() == 2);
    Dataset solo{{trial("a"), trial("c")}, {}};
    auto s = filter_relevance(solo, {}, cls);
    CHECK(s.pending.size() == 2);
    CHECK(s.kept.trials.empty());
}

TEST_CASE("api") {
    TempDir dir;
    Store store(dir.path());
    store.add_trials({trial("t1"), trial("t2"), trial("t3")});
    RunningServer srv(make_server(store));
    auto cli = srv.client();

    SUBCASE("validate") {
        auto ok = cli.Post("/validate", "start 3 3 8 8\nexplore 8 * 3 = 24\n", "text/plain");
        REQUIRE(ok);
        CHECK(ok->status == 200);
        CHECK(body_of(ok)["report"].empty());
        CHECK(graph_from_json(body_of(ok)["graph"]).edge_count() == 1);

        auto missing = cli.Post("/validate", json{{"source", "start 3 3 8 8\nexplore 9 - 3 = 6\n"}}.dump(),
                                "application/json");
        CHECK(missing->status == 200);
        auto report = body_of(missing)["report"];
        REQUIRE(report.size() == 1);
        CHECK(report[0]["kind"] == "MissingOperand");

        auto wrong = cli.Post("/validate", "start 3 3 8 8\nexplore 8 * 3 = 25\n", "text/plain");
        CHECK(body_of(wrong)["rendered"] == "WrongResult at statement 2 (line 2): 8 * 3 is 24, not 25\n");

        auto bad = cli.Post("/validate", "start 3 3 8 8\nexplore 8 & 3 = 24\n", "text/plain");
        CHECK(bad->status == 400);
        auto b = body_of(bad);
        CHECK(b["code"] == "malformed_trace");
        CHECK(b["message"].is_string());
        REQUIRE(b["diagnostics"].size() >= 1);
        CHECK(b["diagnostics"][0]["line"] == 2);

        CHECK(cli.Post("/validate", "{", "application/json")->status == 400);
    }

    SUBCASE("trials") {
        auto page = cli.Get("/trials?offset=1&limit=1");
        CHECK(page->status == 200);
        auto p = body_of(page);
        CHECK(p["total"] == 3);
        REQUIRE(p["trials"].size() == 1);
        CHECK(p["trials"][0]["trial_id"] == "t2");
        CHECK(cli.Get("/trials?limit=0")->status == 400);
        CHECK(cli.Get("/trials?offset=-1")->status == 400);

        auto one = cli.Get("/trials/t3");
        CHECK(one->status == 200);
        CHECK(body_of(one)["transcript"] == "eight times three");
        auto none = cli.Get("/trials/nope");
        CHECK(none->status == 404);
        CHECK(body_of(none)["code"] == "unknown_trial");

        auto route = cli.Get("/no/such/route");
        CHECK(route->status == 404);
        CHECK(body_of(route)["code"] == "not_found");
    }

    SUBCASE("annotations and conflicts") {
        auto put = [&](const std::string& id, const std::string& coder, const std::string& src, int version) {
            return cli.Put("/annotations/" + id + "/" + coder, json{{"source", src}, {"version", version}}.dump(),
                           "application/json");
        };
        CHECK(cli.Get("/annotations/t1/ann")->status == 404);
        auto first = put("t1", "ann", "start 3 3 8 8\nexplore 8 * 3 = 25\n", 0);
        CHECK(first->status == 200);
        CHECK(body_of(first)["version"] == 1);
        CHECK(body_of(first)["clean"] == false);

        // two sessions both loaded version 1
        auto a = put("t1", "ann", "start 3 3 8 8\nexplore 8 * 3 = 24\n", 1);
        auto b = put("t1", "ann", "start 3 3 8 8\nexplore 3 + 3 = 6\n", 1);
        CHECK(a->status == 200);
        CHECK(b->status == 409);
        auto conflict = body_of(b);
        CHECK(conflict["code"] == "version_conflict");
        CHECK(conflict["current"]["version"] == 2);
        CHECK(conflict["current"]["source"] == "start 3 3 8 8\nexplore 8 * 3 = 24\n");

        auto got = cli.Get("/annotations/t1/ann");
        CHECK(body_of(got)["version"] == 2);
        CHECK(body_of(cli.Get("/annotations/t1"))["annotations"].size() == 1);

        CHECK(put("zzz", "ann", "start 3 3 8 8\n", 0)->status == 404);
        CHECK(put("t2", "ann", "explore", 0)->status == 400);
        CHECK(cli.Put("/annotations/t2/ann", "[]", "application/json")->status == 400);

        auto dot = cli.Get("/graphs/t1/ann.dot");
        CHECK(dot->status == 200);
        CHECK(dot->body.find("digraph") != std::string::npos);
        CHECK(cli.Get("/graphs/t2/ann.dot")->status == 404);
    }

    SUBCASE("reliability") {
        const std::string src = "start 3 3 8 8\nexplore 8 * 3 = 24\nreset\nexplore 3 + 3 = 6\n";
        for (auto* id : {"t1", "t2"}) {
            store.put_annotation(id, "alice", src, 0);
            store.put_annotation(id, "bob", src, 0);
        }
        auto r = cli.Get("/reliability?coder_a=alice&coder_b=bob");
        CHECK(r->status == 200);
        auto rows = body_of(r)["rows"];
        REQUIRE(rows.size() == 2);
        for (const auto& row : rows) CHECK(row["clamped"] == 0.0);
        CHECK(cli.Get("/reliability?coder_a=alice")->status == 400);
    }
}

namespace {

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    args.insert(args.begin(), "tracegraph");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("cli") {
    TempDir dir;
    testing::write_file(dir / "ok.trace", "start 3 3 8 8\nexplore 8 * 3 = 24\n");
    testing::write_file(dir / "bad.trace", "start 3 3 8 8\nexplore 8 * 3 = 25\n");
    std::string out, err;
    CHECK(run_cli({"validate", (dir / "ok.trace").string()}, &out) == 0);
    CHECK(out == "clean\n");
    CHECK(run_cli({"validate", (dir / "bad.trace").string()}, &out) == 1);
    CHECK(out == "WrongResult at statement 2 (line 2): 8 * 3 is 24, not 25\n");
    CHECK(run_cli({"validate", "--json", (dir / "ok.trace").string()}, &out) == 0);
    CHECK(json::parse(out)["report"].empty());
    CHECK(run_cli({"validate", (dir / "none.trace").string()}, &out, &err) == 1);
    CHECK(err.find("cannot read") != std::string::npos);
    CHECK(run_cli({"analyze", "nonsense"}, &out, &err) != 0);
    CHECK(run_cli({}, &out, &err) != 0);

    const std::string data = (dir / "data").string();
    const std::string config = (kSourceDir / "config").string();
    std::vector<std::string> g{"--data-dir", data, "--config-dir", config, "--seed", "3"};
    auto with = [&](std::vector<std::string> extra) {
        auto a = g;
        a.insert(a.end(), extra.begin(), extra.end());
        return a;
    };
    CHECK(run_cli(with({"ingest", (kSourceDir / "tests/fixtures/trials20.jsonl").string()}), &out, &err) == 0);
    CHECK(out == "ingested 20 trials (0 already stored, 1 truncated, 0 lines rejected)\n");
    CHECK(run_cli(with({"ingest", (kSourceDir / "tests/fixtures/trials20.jsonl").string()}), &out) == 0);
    CHECK(out.rfind("ingested 0 trials (20 already stored", 0) == 0);
    CHECK(run_cli(with({"filter"}), &out) == 0);
    CHECK(out == "kept 15, excluded 5, pending 0\n");
    CHECK(run_cli(with({"code", "--error-rate", "0.5"}), &out) == 0);
    CHECK(out == "coded 15, uncoded 0, skipped 0\n");
    CHECK(run_cli(with({"code"}), &out) == 0);
    CHECK(out == "coded 0, uncoded 0, skipped 15\n");
    CHECK(run_cli(with({"ged", "--coder-a", "heuristic", "--coder-b", "heuristic"}), &out) == 0);
    CHECK(std::count(out.begin(), out.end(), '\n') == 16);
    CHECK(run_cli(with({"agents"}), &out) == 0);
    CHECK(out == "generated 15 random-agent graphs\n");
    CHECK(run_cli(with({"analyze", "subgoals"}), &out) == 0);
    CHECK(json::parse(out)["result"]["trials"] == 15);
}
