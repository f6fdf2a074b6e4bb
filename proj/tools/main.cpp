// edcdss — emergency-department multi-agent decision-support engine.
//
// Subcommands: run, eval, compare, prompts, rxnorm.
// Exit codes: 0 success, 1 backend failure, 2 configuration/schema error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "edcdss/eval.hpp"
#include "edcdss/json_codec.hpp"
#include "edcdss/ktas_rules.hpp"
#include "edcdss/llm_backend.hpp"
#include "edcdss/pipeline.hpp"
#include "edcdss/prompt_engine.hpp"
#include "edcdss/text_util.hpp"
#include "edcdss/tool_clients.hpp"

namespace fs = std::filesystem;
using namespace edcdss;

namespace {

constexpr const char* kBanner =
    "[decision support only] Outputs assist clinical decision-making and never replace "
    "the judgment of qualified clinicians.";

constexpr int kExitOk = 0;
constexpr int kExitBackend = 1;
constexpr int kExitConfig = 2;

struct Settings {
    std::string backend_spec; // "scripted:<path>" or "http:<base_url>"
    std::string backend_multi_spec;  // compare: override for the multi-agent leg
    std::string backend_single_spec; // compare: override for the single-agent leg
    std::string model_id = "llama-3-70b";
    std::string mode = "multi";
    bool tools_enabled = false;
    int max_tool_iterations = 3;
    int parallelism = 1;
    double temperature = 0.0;
    int max_tokens = 2048;
    double timeout_s = 120.0;
    int max_in_flight = 4;
    std::string output_dir = "runs";
    std::string run_id = "run";
    bool stable = false;
    std::string rxnorm_url = "https://rxnav.nlm.nih.gov";
    std::string rxnorm_fixtures;
    std::string interactions_table;
    std::string interactions_url;
    std::string search_fixtures;
};

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::map<std::string, std::string> out;
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw Error("config line " + std::to_string(line_no) + ": expected key = value");
        out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return out;
}

bool parse_bool(const std::string& v) {
    std::string t = to_lower(trim(v));
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw Error("not a boolean: " + v);
}

// Precedence: command-line flag > environment variable > config file > default.
class SettingsMerger {
public:
    SettingsMerger(const CLI::App& app, std::map<std::string, std::string> file_cfg)
        : app_(app), file_(std::move(file_cfg)) {
        static const std::set<std::string> known = {
            "backend", "backend_multi", "backend_single", "model_id", "mode",
            "tools_enabled", "max_tool_iterations", "parallelism", "temperature",
            "max_tokens", "timeout_s", "max_in_flight", "output_dir", "run_id", "stable",
            "rxnorm_url", "rxnorm_fixtures", "interactions_table", "interactions_url",
            "search_fixtures"};
        for (const auto& [key, _] : file_)
            if (!known.count(key)) throw Error("unknown config key: " + key);
    }

    void merge(const std::string& flag, const char* env_name, const char* file_key,
               std::string& target) const {
        std::string raw = target;
        if (resolve(flag, env_name, file_key, raw)) target = raw;
    }

    void merge(const std::string& flag, const char* env_name, const char* file_key,
               bool& target) const {
        std::string raw;
        if (resolve(flag, env_name, file_key, raw)) target = parse_bool(raw);
    }

    void merge(const std::string& flag, const char* env_name, const char* file_key,
               int& target) const {
        std::string raw;
        if (resolve(flag, env_name, file_key, raw)) target = std::stoi(raw);
    }

    void merge(const std::string& flag, const char* env_name, const char* file_key,
               double& target) const {
        std::string raw;
        if (resolve(flag, env_name, file_key, raw)) target = std::stod(raw);
    }

private:
    bool given(const std::string& flag) const {
        try {
            return app_.count(flag) > 0;
        } catch (const CLI::OptionNotFound&) {
            return false;
        }
    }

    static const char* env_value(const char* name) {
        if (!name) return nullptr;
        const char* v = std::getenv(name);
        return (v && *v) ? v : nullptr;
    }

    bool resolve(const std::string& flag, const char* env_name, const char* file_key,
                 std::string& raw) const {
        if (given(flag)) return false; // flag already parsed into target
        if (const char* env = env_value(env_name)) {
            raw = env;
            return true;
        }
        auto it = file_.find(file_key);
        if (it == file_.end()) return false;
        raw = it->second;
        return true;
    }

    const CLI::App& app_;
    std::map<std::string, std::string> file_;
};

std::unique_ptr<LlmBackend> make_backend(const Settings& s) {
    if (s.backend_spec.empty())
        throw Error("no backend configured; pass --backend scripted:<fixture.json> or "
                    "--backend http:<base_url>");
    if (s.backend_spec.rfind("scripted:", 0) == 0) {
        return std::make_unique<ScriptedBackend>(
            ScriptedBackend::from_file(s.backend_spec.substr(9)));
    }
    if (s.backend_spec.rfind("http:", 0) == 0) {
        HttpBackendConfig cfg;
        cfg.base_url = s.backend_spec.substr(5);
        cfg.timeout_s = s.timeout_s;
        cfg.max_in_flight = s.max_in_flight;
        if (const char* key = std::getenv("EDCDSS_API_KEY")) cfg.api_key = key;
        return std::make_unique<HttpChatBackend>(std::move(cfg));
    }
    throw Error("unknown backend spec: " + s.backend_spec +
                " (expected scripted:<path> or http:<base_url>)");
}

ToolRegistry make_tools(const Settings& s) {
    std::shared_ptr<RxNormSource> rxnorm;
    if (!s.rxnorm_fixtures.empty())
        rxnorm = std::make_shared<FixtureRxNormClient>(s.rxnorm_fixtures);
    else if (!s.rxnorm_url.empty())
        rxnorm = std::make_shared<HttpRxNormClient>(s.rxnorm_url);
    std::shared_ptr<InteractionSource> interactions;
    if (!s.interactions_table.empty())
        interactions = std::make_shared<LocalTableInteractions>(s.interactions_table);
    else if (!s.interactions_url.empty())
        interactions = std::make_shared<HttpInteractionClient>(s.interactions_url);
    std::shared_ptr<SearchSource> search;
    if (!s.search_fixtures.empty()) search = std::make_shared<FixtureSearch>(s.search_fixtures);
    return ToolRegistry::standard(rxnorm, interactions, search);
}

PipelinePlan make_plan(const Settings& s) {
    PipelinePlan plan;
    if (s.mode == "multi")
        plan.mode = RunMode::MultiAgent;
    else if (s.mode == "single")
        plan.mode = RunMode::SingleAgent;
    else
        throw Error("mode must be 'multi' or 'single', got: " + s.mode);
    plan.tool_policy.enabled = s.tools_enabled;
    plan.tool_policy.max_tool_iterations = s.max_tool_iterations;
    plan.generation.temperature = s.temperature;
    plan.generation.max_tokens = s.max_tokens;
    plan.generation.model_id = s.model_id;
    return plan;
}

std::string disposition_display(Disposition d) {
    switch (d) {
    case Disposition::ContinueErCare: return "Continue ER care";
    case Disposition::Admit: return "Admit";
    case Disposition::Transfer: return "Transfer";
    case Disposition::Discharge: return "Discharge";
    }
    return {};
}

void print_list(std::ostream& out, const char* label,
                const std::vector<std::string>& items) {
    if (items.empty()) return;
    out << label << ":\n";
    for (const auto& item : items) out << "  - " << item << '\n';
}

void print_record(std::ostream& out, const CaseRunRecord& record) {
    out << "=== case " << record.case_id << " (" << run_mode_key(record.mode) << ") ===\n";
    if (record.error) out << "ERROR: " << *record.error << '\n';
    const ParsedBundle& p = record.parsed;
    if (p.diagnosis) {
        out << "--- Diagnosis report (Emergency Physician) ---\n";
        out << "Primary Diagnosis: " << p.diagnosis->primary_diagnosis << '\n';
        print_list(out, "Differential Diagnoses", p.diagnosis->differentials);
        print_list(out, "Diagnostic Tests", p.diagnosis->tests);
    }
    if (p.medication) {
        out << "--- Medication safety report (Pharmacist) ---\n";
        for (const auto& m : p.medication->medications) {
            out << "  - " << m.name;
            if (!m.dose_route_freq.empty()) out << " [" << m.dose_route_freq << "]";
            if (!m.interactions_note.empty()) out << " interactions: " << m.interactions_note;
            out << '\n';
        }
        print_list(out, "Recommendations", p.medication->recommendations);
    }
    if (p.triage) {
        out << "--- Triage assessment (Triage Nurse) ---\n";
        out << "KTAS Classification: " << p.triage->ktas.label() << '\n';
        if (!p.triage->justification.empty())
            out << "Justification: " << p.triage->justification << '\n';
        if (!p.triage->critical_findings.empty())
            out << "Critical Findings: " << p.triage->critical_findings << '\n';
    }
    if (p.management) {
        out << "--- Management decision (ED Doctor in Charge) ---\n";
        out << "KTAS Classification Review: " << p.management->ktas_review.label() << '\n';
        if (!p.management->primary_diagnosis.empty())
            out << "Primary Diagnosis: " << p.management->primary_diagnosis << '\n';
        out << "Disposition Decision: "
            << (p.management->disposition ? disposition_display(*p.management->disposition)
                                          : std::string("(none stated)"))
            << '\n';
        print_list(out, "Immediate Actions", p.management->immediate_actions);
        print_list(out, "Medications", p.management->medications);
        print_list(out, "Diagnostic Tests", p.management->tests);
        print_list(out, "Consultations", p.management->consultations);
        print_list(out, "Monitoring", p.management->monitoring);
    }
}

void write_text(const fs::path& file, const std::string& text) {
    std::ofstream out(file);
    if (!out) throw Error("cannot write " + file.string());
    out << text;
}

int run_eval_one_mode(const std::vector<PatientCase>& cases, const Settings& settings,
                      RunMode mode, const fs::path& run_dir, EvalReport& report) {
    Settings mode_settings = settings;
    mode_settings.mode = mode == RunMode::MultiAgent ? "multi" : "single";
    const std::string& override_spec = mode == RunMode::MultiAgent
                                           ? settings.backend_multi_spec
                                           : settings.backend_single_spec;
    if (!override_spec.empty()) mode_settings.backend_spec = override_spec;
    auto backend = make_backend(mode_settings);
    ToolRegistry tools = make_tools(mode_settings);
    PipelinePlan plan = make_plan(mode_settings);

    auto records = run_batch(cases, plan, *backend, tools, settings.parallelism);
    fs::path transcripts = run_dir / ("transcripts-" + std::string(run_mode_key(mode)));
    for (const auto& record : records) write_transcript(record, transcripts, settings.stable);
    report = evaluate(cases, records, mode);

    int failures = 0;
    for (const auto& record : records)
        if (record.error) ++failures;
    if (failures > 0)
        std::cerr << "warning: " << failures << " case(s) failed at the backend\n";
    return failures;
}

// --- subcommands -------------------------------------------------------------

int cmd_run(const Settings& settings, const std::string& cases_path,
            const std::string& inline_text, const std::string& inline_case_id) {
    std::vector<PatientCase> cases;
    if (!inline_text.empty())
        cases.push_back(make_case(inline_case_id.empty() ? "inline" : inline_case_id,
                                  inline_text));
    else if (!cases_path.empty())
        cases = load_cases(cases_path);
    else
        throw Error("run needs --cases <file.jsonl> or --text \"<narrative>\"");

    auto backend = make_backend(settings);
    ToolRegistry tools = make_tools(settings);
    PipelinePlan plan = make_plan(settings);

    fs::path run_dir = make_run_dir(settings.output_dir, settings.run_id, settings.stable);
    std::cout << kBanner << "\n\n";
    bool backend_failure = false;
    for (const auto& patient : cases) {
        CaseRunRecord record = run_case(patient, plan, *backend, tools);
        write_transcript(record, run_dir, settings.stable);
        print_record(std::cout, record);
        std::cout << '\n';
        if (record.error) backend_failure = true;
    }
    std::cout << "transcripts: " << run_dir.string() << '\n';
    return backend_failure ? kExitBackend : kExitOk;
}

int cmd_eval(const Settings& settings, const std::string& cases_path) {
    auto cases = load_cases(cases_path);
    if (cases.empty()) std::cerr << "warning: case file is empty; emitting empty tables\n";

    PipelinePlan plan = make_plan(settings);
    fs::path run_dir = make_run_dir(settings.output_dir, settings.run_id, settings.stable);
    EvalReport report;
    int failures = run_eval_one_mode(cases, settings, plan.mode, run_dir, report);

    write_text(run_dir / "metrics.json", metrics_json(report).dump(2) + "\n");
    write_text(run_dir / "tables.md", tables_markdown(report));
    write_text(run_dir / "tables.csv", tables_csv(report));
    std::cout << kBanner << "\n\n";
    std::cout << tables_markdown(report);
    std::cout << "\nwrote " << (run_dir / "metrics.json").string() << '\n';
    return failures > 0 ? kExitBackend : kExitOk;
}

int cmd_compare(const Settings& settings, const std::string& cases_path) {
    auto cases = load_cases(cases_path);
    if (cases.empty()) std::cerr << "warning: case file is empty; emitting empty tables\n";

    fs::path run_dir = make_run_dir(settings.output_dir, settings.run_id, settings.stable);
    EvalReport multi, single;
    int failures = run_eval_one_mode(cases, settings, RunMode::MultiAgent, run_dir, multi);
    failures += run_eval_one_mode(cases, settings, RunMode::SingleAgent, run_dir, single);
    ComparisonReport cmp = compare_modes(multi, single);

    write_text(run_dir / "metrics-multi_agent.json", metrics_json(multi).dump(2) + "\n");
    write_text(run_dir / "metrics-single_agent.json", metrics_json(single).dump(2) + "\n");
    write_text(run_dir / "comparison.json", comparison_json(cmp).dump(2) + "\n");
    write_text(run_dir / "comparison.md", comparison_markdown(cmp));
    write_text(run_dir / "comparison.csv", comparison_csv(cmp));
    std::cout << kBanner << "\n\n";
    std::cout << comparison_markdown(cmp);
    std::cout << "\nwrote " << (run_dir / "comparison.md").string() << '\n';
    return failures > 0 ? kExitBackend : kExitOk;
}

int cmd_prompts(const std::string& role_arg, bool digests, const std::string& write_dir) {
    std::vector<AgentRole> roles;
    if (role_arg == "all") {
        roles.assign(kAllRoles.begin(), kAllRoles.end());
    } else {
        std::string key = replace_all(to_lower(role_arg), "-", "_");
        auto role = role_from_key(key);
        if (!role) throw Error("unknown role: " + role_arg);
        roles.push_back(*role);
    }

    if (!write_dir.empty()) {
        fs::create_directories(write_dir);
        nlohmann::json manifest = nlohmann::json::array();
        for (const auto& [id, text] : prompt_asset_texts()) {
            std::string filename = id + ".txt";
            write_text(fs::path(write_dir) / filename, text);
            manifest.push_back({{"id", id}, {"path", filename}, {"sha256", sha256_hex(text)}});
        }
        write_text(fs::path(write_dir) / "manifest.json",
                   nlohmann::json{{"assets", manifest}}.dump(2) + "\n");
        std::cout << "wrote " << manifest.size() << " assets to " << write_dir << '\n';
        return kExitOk;
    }

    if (digests) {
        for (const auto& [id, text] : prompt_asset_texts())
            std::cout << sha256_hex(text) << "  " << id << '\n';
        return kExitOk;
    }

    for (AgentRole role : roles) {
        const PromptAsset& asset = prompt_asset(role);
        std::cout << "### " << role_title(role) << " — system prompt\n\n";
        std::cout << render_system_prompt(role) << "\n\n";
        std::cout << "### " << role_title(role) << " — task description template\n\n";
        std::cout << asset.task_description_template << "\n\n";
        std::cout << "### " << role_title(role) << " — expected output template\n\n";
        std::cout << asset.expected_output_template << "\n\n";
    }
    return kExitOk;
}

int cmd_rxnorm(const Settings& settings, const std::string& name) {
    std::unique_ptr<RxNormSource> source;
    if (!settings.rxnorm_fixtures.empty())
        source = std::make_unique<FixtureRxNormClient>(settings.rxnorm_fixtures);
    else
        source = std::make_unique<HttpRxNormClient>(settings.rxnorm_url);
    try {
        RxNormConcept c = source->find_rxcui(name);
        std::cout << c.rxcui << "  " << c.name << '\n';
    } catch (const NotFoundError&) {
        std::cout << "NotFound\n";
    } catch (const BackendError& e) {
        std::cerr << "backend error: " << e.what() << '\n';
        return kExitBackend;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"edcdss — multi-agent emergency-department decision support engine"};
    app.require_subcommand(1);

    Settings settings;
    std::string config_path;
    app.add_option("--config", config_path, "key = value configuration file");

    auto add_shared = [&](CLI::App* cmd) {
        cmd->add_option("--backend", settings.backend_spec,
                        "scripted:<fixture.json> or http:<base_url>");
        cmd->add_option("--backend-multi", settings.backend_multi_spec,
                        "compare: backend for the multi-agent leg (default --backend)");
        cmd->add_option("--backend-single", settings.backend_single_spec,
                        "compare: backend for the single-agent leg (default --backend)");
        cmd->add_option("--model", settings.model_id, "model identifier sent to the backend");
        cmd->add_flag("--tools,!--no-tools", settings.tools_enabled,
                      "enable the agent tool-call loop");
        cmd->add_option("--max-tool-iterations", settings.max_tool_iterations,
                        "tool loop bound per stage")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--parallelism", settings.parallelism, "concurrent case workers")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--temperature", settings.temperature, "sampling temperature")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--max-tokens", settings.max_tokens, "completion token budget")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--timeout", settings.timeout_s, "per-completion timeout, seconds");
        cmd->add_option("--max-in-flight", settings.max_in_flight,
                        "concurrent HTTP requests bound");
        cmd->add_option("--out", settings.output_dir, "output directory for run artifacts");
        cmd->add_option("--run-id", settings.run_id, "run directory name stem");
        cmd->add_flag("--stable", settings.stable,
                      "deterministic artifacts: no timestamps, zeroed stage timings");
        cmd->add_option("--rxnorm-url", settings.rxnorm_url, "RxNorm REST base URL");
        cmd->add_option("--rxnorm-fixtures", settings.rxnorm_fixtures,
                        "directory of recorded rxcui.json bodies");
        cmd->add_option("--interactions-table", settings.interactions_table,
                        "local drug-interaction table (JSON)");
        cmd->add_option("--interactions-url", settings.interactions_url,
                        "remote drug-interaction endpoint base URL");
        cmd->add_option("--search-fixtures", settings.search_fixtures,
                        "directory of web-search fixtures");
    };

    // run
    auto* run_cmd = app.add_subcommand("run", "run cases through the pipeline");
    std::string run_cases, run_text, run_case_id;
    run_cmd->add_option("--cases", run_cases, "JSON-lines case file");
    run_cmd->add_option("--text", run_text, "inline case narrative");
    run_cmd->add_option("--case-id", run_case_id, "case id for --text (default: inline)");
    run_cmd->add_option("--mode", settings.mode, "multi or single");
    add_shared(run_cmd);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "run a case file and emit metrics tables");
    std::string eval_cases;
    eval_cmd->add_option("cases", eval_cases, "JSON-lines case file")->required();
    eval_cmd->add_option("--mode", settings.mode, "multi or single");
    add_shared(eval_cmd);

    // compare
    auto* compare_cmd =
        app.add_subcommand("compare", "run both modes and emit the comparison report");
    std::string compare_cases;
    compare_cmd->add_option("cases", compare_cases, "JSON-lines case file")->required();
    add_shared(compare_cmd);

    // prompts
    auto* prompts_cmd = app.add_subcommand("prompts", "dump the byte-exact prompt assets");
    std::string prompts_role = "all";
    bool prompts_digest = false;
    std::string prompts_write;
    prompts_cmd->add_option("role", prompts_role,
                            "triage-nurse | emergency-physician | pharmacist | "
                            "ed-doctor-in-charge | all");
    prompts_cmd->add_flag("--digest", prompts_digest, "print sha256 digests only");
    prompts_cmd->add_option("--write-assets", prompts_write,
                            "write asset files + manifest.json to a directory");

    // rxnorm
    auto* rxnorm_cmd = app.add_subcommand("rxnorm", "resolve a drug name to its RxCUI");
    std::string rxnorm_name;
    rxnorm_cmd->add_option("name", rxnorm_name, "drug name")->required();
    rxnorm_cmd->add_option("--rxnorm-url", settings.rxnorm_url, "RxNorm REST base URL");
    rxnorm_cmd->add_option("--rxnorm-fixtures", settings.rxnorm_fixtures,
                           "directory of recorded rxcui.json bodies");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        std::map<std::string, std::string> file_cfg;
        if (!config_path.empty()) file_cfg = read_config_file(config_path);
        SettingsMerger merger(*active, std::move(file_cfg));
        merger.merge("--backend", "EDCDSS_BACKEND", "backend", settings.backend_spec);
        merger.merge("--backend-multi", nullptr, "backend_multi", settings.backend_multi_spec);
        merger.merge("--backend-single", nullptr, "backend_single",
                     settings.backend_single_spec);
        merger.merge("--model", "EDCDSS_MODEL_ID", "model_id", settings.model_id);
        merger.merge("--mode", "EDCDSS_MODE", "mode", settings.mode);
        merger.merge("--tools", "EDCDSS_TOOLS_ENABLED", "tools_enabled",
                     settings.tools_enabled);
        merger.merge("--max-tool-iterations", nullptr, "max_tool_iterations",
                     settings.max_tool_iterations);
        merger.merge("--parallelism", "EDCDSS_PARALLELISM", "parallelism",
                     settings.parallelism);
        merger.merge("--temperature", nullptr, "temperature", settings.temperature);
        merger.merge("--max-tokens", nullptr, "max_tokens", settings.max_tokens);
        merger.merge("--timeout", nullptr, "timeout_s", settings.timeout_s);
        merger.merge("--max-in-flight", nullptr, "max_in_flight", settings.max_in_flight);
        merger.merge("--out", "EDCDSS_OUTPUT_DIR", "output_dir", settings.output_dir);
        merger.merge("--run-id", nullptr, "run_id", settings.run_id);
        merger.merge("--stable", nullptr, "stable", settings.stable);
        merger.merge("--rxnorm-url", "EDCDSS_RXNORM_URL", "rxnorm_url", settings.rxnorm_url);
        merger.merge("--rxnorm-fixtures", "EDCDSS_RXNORM_FIXTURES", "rxnorm_fixtures",
                     settings.rxnorm_fixtures);
        merger.merge("--interactions-table", nullptr, "interactions_table",
                     settings.interactions_table);
        merger.merge("--interactions-url", nullptr, "interactions_url",
                     settings.interactions_url);
        merger.merge("--search-fixtures", nullptr, "search_fixtures",
                     settings.search_fixtures);

        if (active == run_cmd) return cmd_run(settings, run_cases, run_text, run_case_id);
        if (active == eval_cmd) return cmd_eval(settings, eval_cases);
        if (active == compare_cmd) return cmd_compare(settings, compare_cases);
        if (active == prompts_cmd)
            return cmd_prompts(prompts_role, prompts_digest, prompts_write);
        if (active == rxnorm_cmd) return cmd_rxnorm(settings, rxnorm_name);
        throw Error("no subcommand selected");
    } catch (const BackendError& e) {
        std::cerr << "backend error: " << e.what() << '\n';
        return kExitBackend;
    } catch (const FixtureMissError& e) {
        std::cerr << "backend error: " << e.what() << '\n';
        return kExitBackend;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
