#include <doctest.h>

#include <atomic>

#include <nlohmann/json.hpp>

#include "edcdss/text_util.hpp"
#include "edcdss/tool_clients.hpp"
#include "support/paths.hpp"
#include "support/stub_server.hpp"

using namespace edcdss;
using nlohmann::json;

namespace {

std::filesystem::path rxnorm_dir() { return testsupport::fixture_dir() / "tools" / "rxnorm"; }

} // namespace

TEST_CASE("recorded rxnorm fixtures resolve the worked example drugs") {
    FixtureRxNormClient client(rxnorm_dir());

    RxNormConcept ceftriaxone = client.find_rxcui("Ceftriaxone");
    CHECK_FALSE(ceftriaxone.rxcui.empty());
    CHECK(ceftriaxone.rxcui == "2193");

    RxNormConcept albuterol = client.find_rxcui("Albuterol");
    CHECK_FALSE(albuterol.rxcui.empty());

    RxNormConcept lorazepam = client.find_rxcui("Lorazepam");
    CHECK(to_lower(lorazepam.name).find("lorazepam") != std::string::npos);

    CHECK_THROWS_AS(client.find_rxcui("zzz-not-a-drug-zzz"), NotFoundError);
    CHECK_THROWS_AS(client.find_rxcui(""), EmptyFieldError);
}

TEST_CASE("http rxnorm client hits the documented endpoint") {
    testsupport::StubServer server;
    std::string seen_path;
    httplib::Params seen_params;
    server.http().Get("/REST/rxcui.json",
                      [&](const httplib::Request& req, httplib::Response& res) {
                          seen_path = req.path;
                          seen_params = req.params;
                          std::string name = req.get_param_value("name");
                          if (name == "Ceftriaxone") {
                              res.set_content(
                                  R"({"idGroup": {"name": "Ceftriaxone", "rxnormId": ["2193"]}})",
                                  "application/json");
                          } else {
                              res.set_content(R"({"idGroup": {"name": ")" + name + R"("}})",
                                              "application/json");
                          }
                      });
    server.start();

    HttpRxNormClient client(server.base_url(), 1000.0);
    RxNormConcept c = client.find_rxcui("Ceftriaxone");
    CHECK(c.rxcui == "2193");
    CHECK(c.name == "Ceftriaxone");
    CHECK(seen_path == "/REST/rxcui.json");
    CHECK(seen_params.find("search")->second == "2");

    CHECK_THROWS_AS(client.find_rxcui("zzz-not-a-drug-zzz"), NotFoundError);
}

TEST_CASE("rxcui body parsing rejects garbage") {
    CHECK_THROWS_AS(parse_rxcui_body("not json", "x"), BackendError);
    CHECK_THROWS_AS(parse_rxcui_body("{}", "x"), BackendError);
    CHECK_THROWS_AS(parse_rxcui_body(R"({"idGroup": {"rxnormId": ["12a"]}})", "x"),
                    BackendError);
    CHECK_THROWS_AS(parse_rxcui_body(R"({"idGroup": {"name": "x"}})", "x"), NotFoundError);
}

TEST_CASE("interaction lookup over the local table") {
    LocalTableInteractions table(testsupport::fixture_dir() / "tools" / "interactions.json");

    // single concept: no pair to check
    CHECK(get_interactions(table, {"11289"}).empty());

    // warfarin + aspirin from the authored reference table
    auto rows = get_interactions(table, {"11289", "1191"});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].severity == "high");
    CHECK(rows[0].description.find("bleeding") != std::string::npos);

    // order-insensitive pair match
    CHECK(get_interactions(table, {"1191", "11289"}).size() == 1);

    // duplicated rxcui never yields a self-interaction
    auto dup = get_interactions(table, {"11289", "11289"});
    for (const auto& d : dup) CHECK(d.rxcui_a != d.rxcui_b);
    CHECK(dup.empty());

    CHECK_THROWS_AS(get_interactions(table, {}), EmptyFieldError);
    CHECK_THROWS_AS(get_interactions(table, {"abc"}), RangeError);
}

TEST_CASE("remote interaction source parses table rows") {
    testsupport::StubServer server;
    server.http().Get("/interactions", [](const httplib::Request& req,
                                          httplib::Response& res) {
        CHECK(req.get_param_value("rxcuis") == "11289,1191");
        res.set_content(
            R"([{"rxcui_a": "11289", "rxcui_b": "1191", "severity": "high", "description": "bleeding risk"}])",
            "application/json");
    });
    server.start();

    HttpInteractionClient client(server.base_url());
    auto rows = get_interactions(client, {"11289", "1191"});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].rxcui_a == "11289");
}

TEST_CASE("search fixtures") {
    FixtureSearch search(testsupport::fixture_dir() / "tools" / "search");
    auto rows = search.search("ARDS management guidelines");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].title.find("respiratory distress") != std::string::npos);
    CHECK(search.search("no such query recorded").empty());
}

namespace {

// Backend that yields scripted texts in sequence, for tool-loop scenarios.
class SequenceBackend : public LlmBackend {
public:
    explicit SequenceBackend(std::vector<std::string> outputs)
        : outputs_(std::move(outputs)) {}

    std::string complete(const CompletionRequest& req) override {
        last_prompt = req.user_prompt;
        ++calls;
        if (index_ >= outputs_.size()) return outputs_.back();
        return outputs_[index_++];
    }

    int calls = 0;
    std::string last_prompt;

private:
    std::vector<std::string> outputs_;
    std::size_t index_ = 0;
};

CompletionRequest base_request() {
    CompletionRequest req;
    req.system_prompt = "system";
    req.user_prompt = "stage prompt";
    return req;
}

ToolRegistry fixture_registry() {
    auto rxnorm = std::make_shared<FixtureRxNormClient>(rxnorm_dir());
    auto interactions = std::make_shared<LocalTableInteractions>(
        testsupport::fixture_dir() / "tools" / "interactions.json");
    auto search = std::make_shared<FixtureSearch>(testsupport::fixture_dir() / "tools" /
                                                  "search");
    return ToolRegistry::standard(rxnorm, interactions, search);
}

} // namespace

TEST_CASE("tool loop: backend that never calls tools") {
    SequenceBackend backend({"plain answer, no calls"});
    ToolRegistry registry = fixture_registry();
    ToolLoopResult result = tool_loop(base_request(), backend, registry, 3);
    CHECK(result.final_text == "plain answer, no calls");
    CHECK(result.calls.empty());
    CHECK(backend.calls == 1);
}

TEST_CASE("tool loop: one lookup then plain text") {
    SequenceBackend backend({
        "Checking the antibiotic.\nTOOL_CALL rxnorm_lookup {\"name\": \"Ceftriaxone\"}",
        "Final report: ceftriaxone verified.",
    });
    ToolRegistry registry = fixture_registry();
    ToolLoopResult result = tool_loop(base_request(), backend, registry, 3);

    CHECK(result.final_text == "Final report: ceftriaxone verified.");
    REQUIRE(result.calls.size() == 1);
    CHECK(result.calls[0].tool_name == "rxnorm_lookup");
    CHECK(result.calls[0].outcome == ToolCallRecord::Outcome::Ok);
    CHECK(result.calls[0].arguments.at("name") == "Ceftriaxone");
    CHECK_FALSE(result.calls[0].result_digest.empty());
    CHECK(backend.calls == 2);
    // the tool result was appended to the second prompt
    CHECK(backend.last_prompt.find("=== TOOL RESULT ===") != std::string::npos);
    CHECK(backend.last_prompt.find("2193") != std::string::npos);
}

TEST_CASE("tool loop: adversarial backend hits the bound exactly") {
    SequenceBackend backend({"TOOL_CALL web_search {\"query\": \"anything\"}"});
    ToolRegistry registry = fixture_registry();
    ToolLoopResult result = tool_loop(base_request(), backend, registry, 3);
    CHECK(result.calls.size() == 3);
    CHECK(backend.calls == 4); // max_iterations + 1
    CHECK(result.final_text.find("TOOL_CALL") == std::string::npos);
}

TEST_CASE("tool loop: unknown tools and malformed args are recorded, loop continues") {
    SequenceBackend backend({
        "TOOL_CALL summon_consultant {\"who\": \"cardiology\"}",
        "TOOL_CALL rxnorm_lookup not-even-json",
        "done now",
    });
    ToolRegistry registry = fixture_registry();
    ToolLoopResult result = tool_loop(base_request(), backend, registry, 5);
    REQUIRE(result.calls.size() == 2);
    CHECK(result.calls[0].outcome == ToolCallRecord::Outcome::Error);
    CHECK(result.calls[1].outcome == ToolCallRecord::Outcome::Error);
    CHECK(result.calls[1].arguments.at("_raw") == "not-even-json");
    CHECK(result.final_text == "done now");
}

TEST_CASE("tool loop executes calls in order and records them all") {
    SequenceBackend backend({
        "TOOL_CALL rxnorm_lookup {\"name\": \"Warfarin\"}\n"
        "TOOL_CALL rxnorm_lookup {\"name\": \"Aspirin\"}\n"
        "TOOL_CALL rxnorm_interactions {\"rxcuis\": \"11289,1191\"}",
        "combined report",
    });
    ToolRegistry registry = fixture_registry();
    ToolLoopResult result = tool_loop(base_request(), backend, registry, 3);
    REQUIRE(result.calls.size() == 3);
    CHECK(result.calls[0].arguments.at("name") == "Warfarin");
    CHECK(result.calls[1].arguments.at("name") == "Aspirin");
    CHECK(result.calls[2].tool_name == "rxnorm_interactions");
    CHECK(result.calls[2].outcome == ToolCallRecord::Outcome::Ok);
    CHECK(result.final_text == "combined report");
}

TEST_CASE("registry lookup misses") {
    ToolRegistry registry = fixture_registry();
    CHECK(registry.has("rxnorm_lookup"));
    CHECK_FALSE(registry.has("teleport"));
    ToolResult r = registry.invoke("teleport", {});
    CHECK(r.outcome == ToolCallRecord::Outcome::Error);
    CHECK(registry.names().size() == 3);

    ToolResult not_found = registry.invoke("rxnorm_lookup", {{"name", "zzz-no"}});
    CHECK(not_found.outcome == ToolCallRecord::Outcome::NotFound);
    ToolResult missing_arg = registry.invoke("rxnorm_lookup", {});
    CHECK(missing_arg.outcome == ToolCallRecord::Outcome::Error);
}

TEST_CASE("token bucket throttles bursts") {
    TokenBucket bucket(200.0, 2.0); // 2-token burst, 200/s refill
    auto t0 = std::chrono::steady_clock::now();
    bucket.take();
    bucket.take();
    bucket.take(); // must wait ~5ms for a refill
    auto elapsed = std::chrono::steady_clock::now() - t0;
    CHECK(std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() >= 3000);
}
