#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "edcdss/llm_backend.hpp"
#include "edcdss/types.hpp"

namespace edcdss {

/// A normalized drug concept from RxNorm.
struct RxNormConcept {
    std::string rxcui; // numeric identifier, digits only
    std::string name;

    bool operator==(const RxNormConcept&) const = default;
};

struct DrugInteraction {
    std::string rxcui_a;
    std::string rxcui_b;
    std::string severity;
    std::string description;

    bool operator==(const DrugInteraction&) const = default;
};

struct SearchResult {
    std::string title;
    std::string snippet;
    std::string url;
};

/// Simple per-client rate limiter (token bucket), default 10 req/s.
class TokenBucket {
public:
    explicit TokenBucket(double per_second = 10.0, double burst = 10.0);

    /// Blocks until a token is available.
    void take();

private:
    std::mutex mutex_;
    double tokens_;
    double per_second_;
    double burst_;
    std::chrono::steady_clock::time_point last_;
};

/// Drug-name resolution source.
class RxNormSource {
public:
    virtual ~RxNormSource() = default;

    /// Best-match concept for a drug name.
    /// Throws NotFoundError (no candidate) or BackendError (transport).
    virtual RxNormConcept find_rxcui(const std::string& name) = 0;
};

/// Parses a /REST/rxcui.json response body; used by both the HTTP client
/// and the recorded-fixture client so they cannot drift apart.
RxNormConcept parse_rxcui_body(const std::string& body, const std::string& queried_name);

/// GET <base_url>/REST/rxcui.json?name=<name>&search=2
class HttpRxNormClient : public RxNormSource {
public:
    explicit HttpRxNormClient(std::string base_url, double requests_per_second = 10.0);
    RxNormConcept find_rxcui(const std::string& name) override;

private:
    std::string base_url_;
    TokenBucket bucket_;
};

/// Reads recorded response bodies from <dir>/<slug>.json; a missing file is
/// NotFound. Slug = lowercased name with non-alphanumerics collapsed to '_'.
class FixtureRxNormClient : public RxNormSource {
public:
    explicit FixtureRxNormClient(std::filesystem::path dir);
    RxNormConcept find_rxcui(const std::string& name) override;

    static std::string slug(const std::string& name);

private:
    std::filesystem::path dir_;
};

/// Pairwise drug-interaction source.
class InteractionSource {
public:
    virtual ~InteractionSource() = default;

    /// All known interactions among the given concepts (unordered pairs).
    virtual std::vector<DrugInteraction> interactions_for(
        const std::vector<std::string>& rxcuis) = 0;
};

/// Backed by a local JSON table: an array of
/// {rxcui_a, rxcui_b, severity, description}.
class LocalTableInteractions : public InteractionSource {
public:
    explicit LocalTableInteractions(const std::filesystem::path& table_file);
    std::vector<DrugInteraction> interactions_for(
        const std::vector<std::string>& rxcuis) override;

private:
    std::vector<DrugInteraction> table_;
};

/// Config-gated remote source: GET <base_url>/interactions?rxcuis=a,b,...
/// returning a JSON array in the local-table row format.
class HttpInteractionClient : public InteractionSource {
public:
    explicit HttpInteractionClient(std::string base_url);
    std::vector<DrugInteraction> interactions_for(
        const std::vector<std::string>& rxcuis) override;

private:
    std::string base_url_;
};

/// Validates inputs and queries the source; self-pairs are filtered so no
/// a == b interaction is ever emitted. An empty result is a valid
/// "no interactions" answer.
std::vector<DrugInteraction> get_interactions(InteractionSource& source,
                                              const std::vector<std::string>& rxcuis);

/// Web search abstraction. The live engine is out of scope; the default
/// implementation replays fixture files.
class SearchSource {
public:
    virtual ~SearchSource() = default;
    virtual std::vector<SearchResult> search(const std::string& query) = 0;
};

/// Reads <dir>/<slug>.json: {"results": [{title, snippet, url}]}.
/// A missing file yields an empty result list.
class FixtureSearch : public SearchSource {
public:
    explicit FixtureSearch(std::filesystem::path dir);
    std::vector<SearchResult> search(const std::string& query) override;

private:
    std::filesystem::path dir_;
};

struct ToolResult {
    ToolCallRecord::Outcome outcome = ToolCallRecord::Outcome::Ok;
    std::string text;
};

using ToolFn = std::function<ToolResult(const std::map<std::string, std::string>&)>;

/// The set of tools an agent may invoke via TOOL_CALL lines.
class ToolRegistry {
public:
    void register_tool(std::string name, ToolFn fn);
    bool has(const std::string& name) const;
    ToolResult invoke(const std::string& name,
                      const std::map<std::string, std::string>& args) const;
    std::vector<std::string> names() const;
    bool empty() const { return tools_.empty(); }

    /// rxnorm_lookup / rxnorm_interactions / web_search over the given
    /// sources; a null source leaves its tool unregistered.
    static ToolRegistry standard(std::shared_ptr<RxNormSource> rxnorm,
                                 std::shared_ptr<InteractionSource> interactions,
                                 std::shared_ptr<SearchSource> search);

private:
    std::map<std::string, ToolFn> tools_;
};

struct ToolLoopResult {
    std::string final_text;
    std::vector<ToolCallRecord> calls;
};

/// Runs the bounded tool-call loop: completes, scans for lines of the form
///   TOOL_CALL <tool_name> <json-args>
/// executes them in order, appends each result under a "=== TOOL RESULT ==="
/// section of the user prompt, and re-invokes the backend. Stops when an
/// output carries no tool-call line or after max_iterations executions;
/// performs at most max_iterations + 1 backend calls. Unknown tools and
/// malformed arguments are recorded with outcome Error and the loop
/// continues. The final text has tool-call lines stripped.
ToolLoopResult tool_loop(const CompletionRequest& base, LlmBackend& backend,
                         const ToolRegistry& registry, int max_iterations = 3);

} // namespace edcdss
