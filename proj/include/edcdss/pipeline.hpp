#pragma once

#include <filesystem>
#include <vector>

#include "edcdss/llm_backend.hpp"
#include "edcdss/reports.hpp"
#include "edcdss/tool_clients.hpp"
#include "edcdss/types.hpp"

namespace edcdss {

struct ToolPolicy {
    bool enabled = false;
    int max_tool_iterations = 3;
};

struct GenerationParams {
    double temperature = 0.0;
    int max_tokens = 2048;
    std::string model_id = "llama-3-70b";
};

/// Execution plan. The multi-agent stage graph is fixed:
/// Physician -> TriageNurse, Pharmacist -> TriageNurse,
/// TriageNurse -> EdDoctorInCharge; single-agent mode is the lone
/// EdDoctorInCharge node.
struct PipelinePlan {
    RunMode mode = RunMode::MultiAgent;
    ToolPolicy tool_policy;
    GenerationParams generation;

    /// Stage emission order. Physician and Pharmacist may execute
    /// concurrently but are always recorded in this order.
    std::vector<AgentRole> stage_order() const;
};

/// Runs one case through the pipeline. Stage failures abort the case with
/// a partial transcript and the error recorded on the record; parse
/// results of completed stages are kept either way.
CaseRunRecord run_case(const PatientCase& patient, const PipelinePlan& plan,
                       LlmBackend& backend, const ToolRegistry& tools);

/// Runs cases on up to `parallelism` workers. Output order matches input
/// order regardless of completion order; per-case failures are isolated as
/// error-marked records and the batch continues.
std::vector<CaseRunRecord> run_batch(const std::vector<PatientCase>& cases,
                                     const PipelinePlan& plan, LlmBackend& backend,
                                     const ToolRegistry& tools, int parallelism);

/// <output_dir>/<run_id>-<UTC timestamp>, or <output_dir>/<run_id> in
/// stable mode. Creates the directory.
std::filesystem::path make_run_dir(const std::filesystem::path& output_dir,
                                   const std::string& run_id, bool stable);

/// Writes <run_dir>/<case_id>.json. Stable mode zeroes the timing fields
/// so repeated runs are byte-identical.
std::filesystem::path write_transcript(const CaseRunRecord& record,
                                       const std::filesystem::path& run_dir, bool stable);

} // namespace edcdss
