#include "edcdss/tool_clients.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "edcdss/text_util.hpp"

namespace edcdss {

using nlohmann::json;

// --- rate limiting ---------------------------------------------------------

TokenBucket::TokenBucket(double per_second, double burst)
    : tokens_(burst), per_second_(per_second), burst_(burst),
      last_(std::chrono::steady_clock::now()) {}

void TokenBucket::take() {
    std::unique_lock lock(mutex_);
    while (true) {
        auto now = std::chrono::steady_clock::now();
        tokens_ = std::min(burst_, tokens_ + per_second_ *
                                                 std::chrono::duration<double>(now - last_).count());
        last_ = now;
        if (tokens_ >= 1.0) {
            tokens_ -= 1.0;
            return;
        }
        double wait_s = (1.0 - tokens_) / per_second_;
        lock.unlock();
        std::this_thread::sleep_for(std::chrono::duration<double>(wait_s));
        lock.lock();
    }
}

// --- RxNorm ---------------------------------------------------------------

RxNormConcept parse_rxcui_body(const std::string& body, const std::string& queried_name) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed rxcui response: ") + e.what());
    }
    if (!doc.contains("idGroup")) throw BackendError("rxcui response missing idGroup");
    const json& group = doc.at("idGroup");
    if (!group.contains("rxnormId") || !group.at("rxnormId").is_array() ||
        group.at("rxnormId").empty())
        throw NotFoundError("no RxNorm concept for \"" + queried_name + "\"");
    RxNormConcept match;
    match.rxcui = group.at("rxnormId").at(0).get<std::string>();
    match.name = group.value("name", queried_name);
    if (match.rxcui.empty() ||
        !std::all_of(match.rxcui.begin(), match.rxcui.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; }))
        throw BackendError("rxcui is not numeric: " + match.rxcui);
    return match;
}

HttpRxNormClient::HttpRxNormClient(std::string base_url, double requests_per_second)
    : base_url_(std::move(base_url)), bucket_(requests_per_second, requests_per_second) {}

RxNormConcept HttpRxNormClient::find_rxcui(const std::string& name) {
    if (name.empty()) throw EmptyFieldError("drug name must be non-empty");
    bucket_.take();
    auto scheme_end = base_url_.find("://");
    if (scheme_end == std::string::npos)
        throw BackendError("rxnorm base_url must include a scheme: " + base_url_);
    auto path_start = base_url_.find('/', scheme_end + 3);
    std::string host = path_start == std::string::npos ? base_url_ : base_url_.substr(0, path_start);
    std::string prefix = path_start == std::string::npos ? "" : base_url_.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

    httplib::Client client(host);
    httplib::Params params{{"name", name}, {"search", "2"}};
    auto res = client.Get(prefix + "/REST/rxcui.json", params, httplib::Headers{});
    if (!res) throw BackendError("rxnorm transport failure: " + httplib::to_string(res.error()));
    if (res->status >= 400)
        throw BackendError("rxnorm HTTP " + std::to_string(res->status));
    return parse_rxcui_body(res->body, name);
}

std::string FixtureRxNormClient::slug(const std::string& name) {
    std::string out;
    for (unsigned char c : name) {
        if (std::isalnum(c))
            out.push_back(static_cast<char>(std::tolower(c)));
        else if (!out.empty() && out.back() != '_')
            out.push_back('_');
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

FixtureRxNormClient::FixtureRxNormClient(std::filesystem::path dir) : dir_(std::move(dir)) {}

RxNormConcept FixtureRxNormClient::find_rxcui(const std::string& name) {
    if (name.empty()) throw EmptyFieldError("drug name must be non-empty");
    std::filesystem::path file = dir_ / (slug(name) + ".json");
    std::ifstream in(file);
    if (!in) throw NotFoundError("no RxNorm concept for \"" + name + "\"");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_rxcui_body(buffer.str(), name);
}

// --- interactions ----------------------------------------------------------

namespace {

std::vector<DrugInteraction> parse_interaction_rows(const json& rows) {
    std::vector<DrugInteraction> out;
    for (const auto& row : rows) {
        DrugInteraction d;
        d.rxcui_a = row.at("rxcui_a").get<std::string>();
        d.rxcui_b = row.at("rxcui_b").get<std::string>();
        d.severity = row.value("severity", "");
        d.description = row.value("description", "");
        out.push_back(std::move(d));
    }
    return out;
}

} // namespace

LocalTableInteractions::LocalTableInteractions(const std::filesystem::path& table_file) {
    std::ifstream in(table_file);
    if (!in) throw BackendError("cannot open interaction table: " + table_file.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed interaction table: ") + e.what());
    }
    table_ = parse_interaction_rows(doc);
}

std::vector<DrugInteraction> LocalTableInteractions::interactions_for(
    const std::vector<std::string>& rxcuis) {
    std::vector<DrugInteraction> out;
    for (std::size_t i = 0; i < rxcuis.size(); ++i) {
        for (std::size_t j = i + 1; j < rxcuis.size(); ++j) {
            for (const auto& row : table_) {
                bool forward = row.rxcui_a == rxcuis[i] && row.rxcui_b == rxcuis[j];
                bool backward = row.rxcui_a == rxcuis[j] && row.rxcui_b == rxcuis[i];
                if (forward || backward) out.push_back(row);
            }
        }
    }
    return out;
}

HttpInteractionClient::HttpInteractionClient(std::string base_url)
    : base_url_(std::move(base_url)) {}

std::vector<DrugInteraction> HttpInteractionClient::interactions_for(
    const std::vector<std::string>& rxcuis) {
    auto scheme_end = base_url_.find("://");
    if (scheme_end == std::string::npos)
        throw BackendError("interaction base_url must include a scheme");
    auto path_start = base_url_.find('/', scheme_end + 3);
    std::string host = path_start == std::string::npos ? base_url_ : base_url_.substr(0, path_start);
    std::string prefix = path_start == std::string::npos ? "" : base_url_.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

    std::string joined;
    for (const auto& id : rxcuis) {
        if (!joined.empty()) joined += ',';
        joined += id;
    }
    httplib::Client client(host);
    httplib::Params params{{"rxcuis", joined}};
    auto res = client.Get(prefix + "/interactions", params, httplib::Headers{});
    if (!res)
        throw BackendError("interaction transport failure: " + httplib::to_string(res.error()));
    if (res->status >= 400)
        throw BackendError("interaction HTTP " + std::to_string(res->status));
    try {
        return parse_interaction_rows(json::parse(res->body));
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed interaction response: ") + e.what());
    }
}

std::vector<DrugInteraction> get_interactions(InteractionSource& source,
                                              const std::vector<std::string>& rxcuis) {
    if (rxcuis.empty()) throw EmptyFieldError("rxcui list must be non-empty");
    for (const auto& id : rxcuis) {
        if (id.empty() || !std::all_of(id.begin(), id.end(), [](unsigned char c) {
                return std::isdigit(c) != 0;
            }))
            throw RangeError("rxcui must be digits only: \"" + id + "\"");
    }
    std::vector<DrugInteraction> out;
    for (auto& d : source.interactions_for(rxcuis)) {
        if (d.rxcui_a == d.rxcui_b) continue; // no self-interactions
        out.push_back(std::move(d));
    }
    return out;
}

// --- search -----------------------------------------------------------------

FixtureSearch::FixtureSearch(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::vector<SearchResult> FixtureSearch::search(const std::string& query) {
    std::filesystem::path file = dir_ / (FixtureRxNormClient::slug(query) + ".json");
    std::ifstream in(file);
    if (!in) return {};
    json doc;
    try {
        in >> doc;
    } catch (const json::exception&) {
        return {};
    }
    std::vector<SearchResult> out;
    for (const auto& row : doc.value("results", json::array())) {
        SearchResult r;
        r.title = row.value("title", "");
        r.snippet = row.value("snippet", "");
        r.url = row.value("url", "");
        out.push_back(std::move(r));
    }
    return out;
}

// --- registry ----------------------------------------------------------------

void ToolRegistry::register_tool(std::string name, ToolFn fn) {
    tools_[std::move(name)] = std::move(fn);
}

bool ToolRegistry::has(const std::string& name) const { return tools_.count(name) > 0; }

ToolResult ToolRegistry::invoke(const std::string& name,
                                const std::map<std::string, std::string>& args) const {
    auto it = tools_.find(name);
    if (it == tools_.end())
        return {ToolCallRecord::Outcome::Error, "unknown tool: " + name};
    return it->second(args);
}

std::vector<std::string> ToolRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : tools_) out.push_back(name);
    return out;
}

ToolRegistry ToolRegistry::standard(std::shared_ptr<RxNormSource> rxnorm,
                                    std::shared_ptr<InteractionSource> interactions,
                                    std::shared_ptr<SearchSource> search) {
    ToolRegistry registry;
    if (rxnorm) {
        registry.register_tool("rxnorm_lookup", [rxnorm](const auto& args) -> ToolResult {
            auto it = args.find("name");
            if (it == args.end() || it->second.empty())
                return {ToolCallRecord::Outcome::Error, "missing argument: name"};
            try {
                RxNormConcept c = rxnorm->find_rxcui(it->second);
                return {ToolCallRecord::Outcome::Ok,
                        json{{"rxcui", c.rxcui}, {"name", c.name}}.dump()};
            } catch (const NotFoundError&) {
                return {ToolCallRecord::Outcome::NotFound, "not found: " + it->second};
            } catch (const Error& e) {
                return {ToolCallRecord::Outcome::Error, e.what()};
            }
        });
    }
    if (interactions) {
        registry.register_tool("rxnorm_interactions", [interactions](const auto& args) -> ToolResult {
            auto it = args.find("rxcuis");
            if (it == args.end() || it->second.empty())
                return {ToolCallRecord::Outcome::Error, "missing argument: rxcuis"};
            std::vector<std::string> ids;
            std::stringstream ss(it->second);
            std::string id;
            while (std::getline(ss, id, ','))
                if (!trim(id).empty()) ids.push_back(trim(id));
            try {
                auto rows = get_interactions(*interactions, ids);
                json out = json::array();
                for (const auto& d : rows)
                    out.push_back({{"rxcui_a", d.rxcui_a},
                                   {"rxcui_b", d.rxcui_b},
                                   {"severity", d.severity},
                                   {"description", d.description}});
                return {ToolCallRecord::Outcome::Ok, out.dump()};
            } catch (const Error& e) {
                return {ToolCallRecord::Outcome::Error, e.what()};
            }
        });
    }
    if (search) {
        registry.register_tool("web_search", [search](const auto& args) -> ToolResult {
            auto it = args.find("query");
            if (it == args.end() || it->second.empty())
                return {ToolCallRecord::Outcome::Error, "missing argument: query"};
            auto rows = search->search(it->second);
            if (rows.empty())
                return {ToolCallRecord::Outcome::NotFound, "no results"};
            json out = json::array();
            for (const auto& r : rows)
                out.push_back({{"title", r.title}, {"snippet", r.snippet}, {"url", r.url}});
            return {ToolCallRecord::Outcome::Ok, out.dump()};
        });
    }
    return registry;
}

// --- tool loop -----------------------------------------------------------------

namespace {

constexpr std::string_view kToolCallMarker = "TOOL_CALL ";

struct ToolCallLine {
    std::string tool_name;
    std::string raw_args;
};

std::optional<ToolCallLine> parse_tool_call_line(const std::string& line) {
    std::string t = trim(line);
    if (t.rfind(kToolCallMarker, 0) != 0) return std::nullopt;
    std::string rest = trim(t.substr(kToolCallMarker.size()));
    auto space = rest.find_first_of(" \t");
    if (space == std::string::npos) return ToolCallLine{rest, ""};
    return ToolCallLine{rest.substr(0, space), trim(rest.substr(space + 1))};
}

std::map<std::string, std::string> parse_tool_args(const std::string& raw,
                                                   bool& malformed) {
    malformed = false;
    std::map<std::string, std::string> args;
    if (raw.empty()) return args;
    json doc = json::parse(raw, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        malformed = true;
        args["_raw"] = raw;
        return args;
    }
    for (const auto& [key, value] : doc.items())
        args[key] = value.is_string() ? value.get<std::string>() : value.dump();
    return args;
}

std::string strip_tool_call_lines(const std::string& text) {
    std::ostringstream out;
    bool first = true;
    for (const auto& line : split_lines(text)) {
        if (parse_tool_call_line(line)) continue;
        if (!first) out << '\n';
        out << line;
        first = false;
    }
    return out.str();
}

} // namespace

ToolLoopResult tool_loop(const CompletionRequest& base, LlmBackend& backend,
                         const ToolRegistry& registry, int max_iterations) {
    if (max_iterations < 1) throw RangeError("max_iterations must be >= 1");

    ToolLoopResult result;
    CompletionRequest request = base;
    std::string text = backend.complete(request);

    for (int iteration = 0; iteration < max_iterations; ++iteration) {
        std::vector<std::pair<ToolCallLine, std::string>> executed; // line -> result text
        for (const auto& line : split_lines(text)) {
            auto call = parse_tool_call_line(line);
            if (!call) continue;

            ToolCallRecord record;
            record.tool_name = call->tool_name;
            bool malformed = false;
            record.arguments = parse_tool_args(call->raw_args, malformed);

            ToolResult tool_result;
            if (malformed)
                tool_result = {ToolCallRecord::Outcome::Error,
                               "malformed arguments: " + call->raw_args};
            else
                tool_result = registry.invoke(call->tool_name, record.arguments);

            record.outcome = tool_result.outcome;
            record.result_digest = sha256_hex(tool_result.text);
            result.calls.push_back(std::move(record));
            executed.emplace_back(*call, tool_result.text);
        }
        if (executed.empty()) break;

        std::ostringstream addendum;
        addendum << request.user_prompt;
        for (const auto& [call, result_text] : executed) {
            addendum << "\n\n=== TOOL RESULT ===\n"
                     << call.tool_name << ' ' << call.raw_args << '\n'
                     << result_text;
        }
        request.user_prompt = addendum.str();
        text = backend.complete(request);
    }

    result.final_text = strip_tool_call_lines(text);
    return result;
}

} // namespace edcdss
