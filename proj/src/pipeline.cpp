#include "edcdss/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "edcdss/json_codec.hpp"
#include "edcdss/prompt_engine.hpp"
#include "edcdss/report_parser.hpp"
#include "edcdss/text_util.hpp"

namespace edcdss {

std::vector<AgentRole> PipelinePlan::stage_order() const {
    if (mode == RunMode::SingleAgent) return {AgentRole::EdDoctorInCharge};
    return {AgentRole::EmergencyPhysician, AgentRole::Pharmacist, AgentRole::TriageNurse,
            AgentRole::EdDoctorInCharge};
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

struct StageOutcome {
    StageRecord record;
    std::optional<std::string> error;
};

StageOutcome execute_stage(AgentRole role, const PatientCase& patient,
                           const StageContext& context, const PipelinePlan& plan,
                           LlmBackend& backend, const ToolRegistry& tools,
                           Clock::time_point t0) {
    StageOutcome outcome;
    StageRecord& stage = outcome.record;
    stage.role = role;

    ToolPromptPolicy prompt_policy;
    if (plan.tool_policy.enabled) {
        prompt_policy.mode = ToolPromptPolicy::Mode::Protocol;
        prompt_policy.tool_names = tools.names();
    } else {
        prompt_policy.mode = ToolPromptPolicy::Mode::Strip;
    }

    stage.system_prompt = render_system_prompt(role);
    stage.task_prompt = render_task_prompt(role, patient, context, prompt_policy);

    CompletionRequest request;
    request.system_prompt = stage.system_prompt;
    request.user_prompt = stage.task_prompt;
    request.temperature = plan.generation.temperature;
    request.max_tokens = plan.generation.max_tokens;
    request.model_id = plan.generation.model_id;
    request.role = role;
    request.case_id = patient.case_id;

    stage.start_ms = ms_since(t0);
    try {
        if (plan.tool_policy.enabled) {
            ToolLoopResult loop =
                tool_loop(request, backend, tools, plan.tool_policy.max_tool_iterations);
            stage.raw_output = std::move(loop.final_text);
            stage.tool_calls = std::move(loop.calls);
        } else {
            // Tools off: single completion, TOOL_CALL lines stay plain text.
            stage.raw_output = backend.complete(request);
        }
    } catch (const Error& e) {
        outcome.error = std::string(role_key(role)) + ": " + e.what();
    }
    stage.end_ms = ms_since(t0);
    stage.wall_time_ms = stage.end_ms - stage.start_ms;
    return outcome;
}

void parse_stage_output(CaseRunRecord& record, const StageRecord& stage) {
    switch (stage.role) {
    case AgentRole::EmergencyPhysician:
        record.parsed.diagnosis = parse_diagnosis(stage.raw_output);
        break;
    case AgentRole::Pharmacist:
        record.parsed.medication = parse_medication(stage.raw_output);
        break;
    case AgentRole::TriageNurse:
        record.parsed.triage = parse_triage(stage.raw_output);
        break;
    case AgentRole::EdDoctorInCharge:
        record.parsed.management = parse_management(stage.raw_output);
        break;
    }
}

std::string sanitize_filename(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')
            out.push_back(c);
        else
            out.push_back('_');
    }
    return out.empty() ? "case" : out;
}

} // namespace

CaseRunRecord run_case(const PatientCase& patient, const PipelinePlan& plan,
                       LlmBackend& backend, const ToolRegistry& tools) {
    CaseRunRecord record;
    record.case_id = patient.case_id;
    record.mode = plan.mode;
    const Clock::time_point t0 = Clock::now();

    if (plan.mode == RunMode::SingleAgent) {
        StageOutcome outcome = execute_stage(AgentRole::EdDoctorInCharge, patient,
                                             StageContext{}, plan, backend, tools, t0);
        record.error = outcome.error;
        record.stages.push_back(std::move(outcome.record));
        if (!record.error) parse_stage_output(record, record.stages.back());
        return record;
    }

    // Physician and Pharmacist are independent; run them concurrently.
    // Their outputs are injected downstream in fixed role order, so the
    // result cannot depend on which one finishes first.
    auto physician_future = std::async(std::launch::async, [&] {
        return execute_stage(AgentRole::EmergencyPhysician, patient, StageContext{}, plan,
                             backend, tools, t0);
    });
    StageOutcome pharmacist = execute_stage(AgentRole::Pharmacist, patient, StageContext{},
                                            plan, backend, tools, t0);
    StageOutcome physician = physician_future.get();

    record.stages.push_back(physician.record);
    record.stages.push_back(pharmacist.record);
    if (!physician.error) parse_stage_output(record, record.stages[0]);
    if (!pharmacist.error) parse_stage_output(record, record.stages[1]);
    if (physician.error || pharmacist.error) {
        record.error = physician.error ? physician.error : pharmacist.error;
        return record;
    }

    StageContext triage_context;
    triage_context.add(AgentRole::EmergencyPhysician, physician.record.raw_output);
    triage_context.add(AgentRole::Pharmacist, pharmacist.record.raw_output);
    StageOutcome triage = execute_stage(AgentRole::TriageNurse, patient, triage_context, plan,
                                        backend, tools, t0);
    record.stages.push_back(triage.record);
    if (triage.error) {
        record.error = triage.error;
        return record;
    }
    parse_stage_output(record, record.stages.back());

    StageContext doctor_context;
    doctor_context.add(AgentRole::EmergencyPhysician, physician.record.raw_output);
    doctor_context.add(AgentRole::Pharmacist, pharmacist.record.raw_output);
    doctor_context.add(AgentRole::TriageNurse, triage.record.raw_output);
    StageOutcome doctor = execute_stage(AgentRole::EdDoctorInCharge, patient, doctor_context,
                                        plan, backend, tools, t0);
    record.stages.push_back(doctor.record);
    if (doctor.error) {
        record.error = doctor.error;
        return record;
    }
    parse_stage_output(record, record.stages.back());
    return record;
}

std::vector<CaseRunRecord> run_batch(const std::vector<PatientCase>& cases,
                                     const PipelinePlan& plan, LlmBackend& backend,
                                     const ToolRegistry& tools, int parallelism) {
    if (parallelism < 1) throw RangeError("parallelism must be >= 1");
    std::vector<CaseRunRecord> results(cases.size());
    if (cases.empty()) return results;

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            try {
                results[i] = run_case(cases[i], plan, backend, tools);
            } catch (const std::exception& e) {
                CaseRunRecord failed;
                failed.case_id = cases[i].case_id;
                failed.mode = plan.mode;
                failed.error = e.what();
                results[i] = std::move(failed);
            }
        }
    };

    std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(parallelism),
                                                  cases.size());
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
    return results;
}

std::filesystem::path make_run_dir(const std::filesystem::path& output_dir,
                                   const std::string& run_id, bool stable) {
    std::string name = sanitize_filename(run_id);
    if (!stable) {
        auto now = std::chrono::system_clock::now();
        std::time_t t = std::chrono::system_clock::to_time_t(now);
        std::tm tm{};
        gmtime_r(&t, &tm);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
        name += "-";
        name += buf;
    }
    std::filesystem::path dir = output_dir / name;
    std::filesystem::create_directories(dir);
    return dir;
}

std::filesystem::path write_transcript(const CaseRunRecord& record,
                                       const std::filesystem::path& run_dir, bool stable) {
    CaseRunRecord to_write = record;
    if (stable) {
        for (auto& stage : to_write.stages) {
            stage.wall_time_ms = 0;
            stage.start_ms = 0;
            stage.end_ms = 0;
        }
    }
    std::filesystem::create_directories(run_dir);
    std::filesystem::path file = run_dir / (sanitize_filename(record.case_id) + ".json");
    std::ofstream out(file);
    out << json(to_write).dump(2) << '\n';
    return file;
}

} // namespace edcdss
