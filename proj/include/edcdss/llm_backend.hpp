#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "edcdss/types.hpp"

namespace edcdss {

/// One single-shot completion request. `role` and `case_id` are replay keys
/// for the scripted backend; the HTTP backend ignores them.
struct CompletionRequest {
    std::string system_prompt;
    std::string user_prompt;
    double temperature = 0.0;
    int max_tokens = 2048;
    std::string model_id = "llama-3-70b";
    std::optional<AgentRole> role;
    std::optional<std::string> case_id;

    /// Throws EmptyFieldError / RangeError on an invalid request.
    void validate() const;
};

/// Abstract completion provider. Implementations must be safe for
/// concurrent calls from many pipeline workers.
class LlmBackend {
public:
    virtual ~LlmBackend() = default;

    /// Returns the completion text.
    /// Throws FixtureMissError (scripted, unknown key) or BackendError
    /// (transport/HTTP failure, malformed response).
    virtual std::string complete(const CompletionRequest& request) = 0;
};

enum class FixtureKeyMode { ByRoleAndCase, ByPromptDigest };

/// Deterministic replay backend: a key -> canned completion map loaded from
/// a fixture file or built in memory. Referentially transparent.
class ScriptedBackend : public LlmBackend {
public:
    ScriptedBackend(FixtureKeyMode mode, std::map<std::string, std::string> entries)
        : mode_(mode), entries_(std::move(entries)) {}

    /// Fixture file format:
    ///   {"key_mode": "by_role_and_case" | "by_prompt_digest",
    ///    "entries": [{"role": ..., "case_id": ..., "text": ...} |
    ///                {"digest": ..., "text": ...}]}
    static ScriptedBackend from_file(const std::filesystem::path& path);

    std::string complete(const CompletionRequest& request) override;

    FixtureKeyMode key_mode() const { return mode_; }
    std::size_t size() const { return entries_.size(); }

    static std::string role_case_key(AgentRole role, std::string_view case_id);
    static std::string prompt_digest_key(const CompletionRequest& request);

private:
    FixtureKeyMode mode_;
    std::map<std::string, std::string> entries_; // immutable after construction
};

struct HttpBackendConfig {
    std::string base_url; // e.g. http://localhost:8000/v1
    std::string api_key;  // bearer token; empty = no Authorization header
    double timeout_s = 120.0;
    int max_in_flight = 4;
    int max_retries = 2; // transport errors only
    std::chrono::milliseconds backoff_base{200};
};

/// OpenAI-compatible chat-completions client: POST <base_url>/chat/completions
/// with {model, messages, temperature, max_tokens}; reads
/// choices[0].message.content. Never fabricates content: any malformed body
/// raises BackendError.
class HttpChatBackend : public LlmBackend {
public:
    explicit HttpChatBackend(HttpBackendConfig config);
    ~HttpChatBackend() override;

    std::string complete(const CompletionRequest& request) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace edcdss
