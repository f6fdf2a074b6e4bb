#include "edcdss/llm_backend.hpp"

#include <algorithm>
#include <fstream>
#include <semaphore>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "edcdss/text_util.hpp"

namespace edcdss {

using nlohmann::json;

void CompletionRequest::validate() const {
    if (system_prompt.empty()) throw EmptyFieldError("system_prompt must be non-empty");
    if (user_prompt.empty()) throw EmptyFieldError("user_prompt must be non-empty");
    if (temperature < 0.0) throw RangeError("temperature must be >= 0");
    if (max_tokens < 1) throw RangeError("max_tokens must be >= 1");
    if (model_id.empty()) throw EmptyFieldError("model_id must be non-empty");
}

std::string ScriptedBackend::role_case_key(AgentRole role, std::string_view case_id) {
    return std::string(role_key(role)) + "\x1f" + std::string(case_id);
}

std::string ScriptedBackend::prompt_digest_key(const CompletionRequest& request) {
    return sha256_hex(request.system_prompt + "\x1e" + request.user_prompt);
}

ScriptedBackend ScriptedBackend::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw BackendError("cannot open fixture: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw BackendError("malformed fixture " + path.string() + ": " + e.what());
    }
    std::string mode_key = doc.value("key_mode", "by_role_and_case");
    FixtureKeyMode mode;
    if (mode_key == "by_role_and_case")
        mode = FixtureKeyMode::ByRoleAndCase;
    else if (mode_key == "by_prompt_digest")
        mode = FixtureKeyMode::ByPromptDigest;
    else
        throw BackendError("unknown key_mode in " + path.string() + ": " + mode_key);

    std::map<std::string, std::string> entries;
    for (const auto& entry : doc.at("entries")) {
        std::string text = entry.at("text").get<std::string>();
        if (mode == FixtureKeyMode::ByRoleAndCase) {
            auto role = role_from_key(entry.at("role").get<std::string>());
            if (!role) throw BackendError("unknown role in fixture entry");
            entries[role_case_key(*role, entry.at("case_id").get<std::string>())] =
                std::move(text);
        } else {
            entries[entry.at("digest").get<std::string>()] = std::move(text);
        }
    }
    return ScriptedBackend(mode, std::move(entries));
}

std::string ScriptedBackend::complete(const CompletionRequest& request) {
    request.validate();
    std::string key;
    if (mode_ == FixtureKeyMode::ByRoleAndCase) {
        if (!request.role || !request.case_id)
            throw FixtureMissError("request carries no role/case_id replay key");
        key = role_case_key(*request.role, *request.case_id);
    } else {
        key = prompt_digest_key(request);
    }
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        std::string shown = mode_ == FixtureKeyMode::ByRoleAndCase
                                ? std::string(role_key(*request.role)) + "/" + *request.case_id
                                : key;
        throw FixtureMissError("no fixture entry for key " + shown);
    }
    return it->second;
}

// --- HTTP chat-completions backend ---------------------------------------

namespace {

struct ParsedUrl {
    std::string host_port; // scheme://host[:port]
    std::string path_prefix;
};

ParsedUrl parse_base_url(const std::string& base_url) {
    auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos)
        throw BackendError("base_url must include a scheme: " + base_url);
    auto path_start = base_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {base_url, ""};
    std::string prefix = base_url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {base_url.substr(0, path_start), prefix};
}

} // namespace

struct HttpChatBackend::Impl {
    explicit Impl(HttpBackendConfig cfg)
        : config(std::move(cfg)), url(parse_base_url(config.base_url)),
          in_flight(std::clamp(config.max_in_flight, 1, 256)) {}

    HttpBackendConfig config;
    ParsedUrl url;
    std::counting_semaphore<256> in_flight;

    std::string post_once(const std::string& body) {
        httplib::Client client(url.host_port);
        auto timeout = std::chrono::duration<double>(config.timeout_s);
        client.set_connection_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
        client.set_read_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
        client.set_write_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
        httplib::Headers headers;
        if (!config.api_key.empty())
            headers.emplace("Authorization", "Bearer " + config.api_key);
        auto res = client.Post(url.path_prefix + "/chat/completions", headers, body,
                               "application/json");
        if (!res)
            throw BackendError("transport failure: " + httplib::to_string(res.error()));
        if (res->status >= 400)
            throw BackendError("HTTP " + std::to_string(res->status) + ": " + res->body);
        return res->body;
    }

    static bool is_transport_error(const BackendError& e) {
        return std::string_view(e.what()).rfind("transport failure", 0) == 0;
    }
};

HttpChatBackend::HttpChatBackend(HttpBackendConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

HttpChatBackend::~HttpChatBackend() = default;

std::string HttpChatBackend::complete(const CompletionRequest& request) {
    request.validate();
    json body = {
        {"model", request.model_id},
        {"messages",
         json::array({
             json{{"role", "system"}, {"content", request.system_prompt}},
             json{{"role", "user"}, {"content", request.user_prompt}},
         })},
        {"temperature", request.temperature},
        {"max_tokens", request.max_tokens},
    };
    const std::string payload = body.dump();

    impl_->in_flight.acquire();
    struct Release {
        std::counting_semaphore<256>& sem;
        ~Release() { sem.release(); }
    } release{impl_->in_flight};

    std::string response_body;
    int attempt = 0;
    while (true) {
        try {
            response_body = impl_->post_once(payload);
            break;
        } catch (const BackendError& e) {
            // Retry only transport-level failures; a received response,
            // however broken, is final.
            if (!Impl::is_transport_error(e) || attempt >= impl_->config.max_retries) throw;
            std::this_thread::sleep_for(impl_->config.backoff_base * (1 << attempt));
            ++attempt;
        }
    }

    try {
        json doc = json::parse(response_body);
        const json& content = doc.at("choices").at(0).at("message").at("content");
        if (!content.is_string()) throw BackendError("message content is not a string");
        return content.get<std::string>();
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed completion response: ") + e.what());
    }
}

} // namespace edcdss
