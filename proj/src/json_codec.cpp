#include "edcdss/json_codec.hpp"

namespace edcdss {

namespace {

template <typename T, typename Parse>
T keyed(const json& j, Parse parse, const char* what) {
    auto v = parse(j.get<std::string>());
    if (!v) throw json::other_error::create(501, std::string("unknown ") + what + ": " + j.dump(), &j);
    return *v;
}

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
    if (j.contains(key) && !j.at(key).is_null())
        v = j.at(key).get<T>();
    else
        v = std::nullopt;
}

} // namespace

void to_json(json& j, const AgentRole& v) { j = std::string(role_key(v)); }
void from_json(const json& j, AgentRole& v) { v = keyed<AgentRole>(j, role_from_key, "role"); }

void to_json(json& j, const Disposition& v) { j = std::string(disposition_key(v)); }
void from_json(const json& j, Disposition& v) {
    v = keyed<Disposition>(j, disposition_from_key, "disposition");
}

void to_json(json& j, const RunMode& v) { j = std::string(run_mode_key(v)); }
void from_json(const json& j, RunMode& v) { v = keyed<RunMode>(j, run_mode_from_key, "mode"); }

void to_json(json& j, const StructuredFindings& v) {
    j = json{{"chief_complaint", v.chief_complaint}};
    put_optional(j, "spo2_percent", v.spo2_percent);
    put_optional(j, "temperature_c", v.temperature_c);
    put_optional(j, "heart_rate_bpm", v.heart_rate_bpm);
    put_optional(j, "systolic_bp_mmhg", v.systolic_bp_mmhg);
    put_optional(j, "respiratory_rate_per_min", v.respiratory_rate_per_min);
    json flags = json::array();
    for (ClinicalFlag f : v.flags) flags.push_back(std::string(flag_key(f)));
    j["flags"] = flags;
}

void from_json(const json& j, StructuredFindings& v) {
    v = StructuredFindings{};
    v.chief_complaint = j.at("chief_complaint").get<std::string>();
    get_optional(j, "spo2_percent", v.spo2_percent);
    get_optional(j, "temperature_c", v.temperature_c);
    get_optional(j, "heart_rate_bpm", v.heart_rate_bpm);
    get_optional(j, "systolic_bp_mmhg", v.systolic_bp_mmhg);
    get_optional(j, "respiratory_rate_per_min", v.respiratory_rate_per_min);
    if (j.contains("flags")) {
        for (const auto& item : j.at("flags")) {
            auto f = flag_from_key(item.get<std::string>());
            if (!f) throw json::other_error::create(501, "unknown flag: " + item.dump(), &j);
            v.flags.insert(*f);
        }
    }
    v.validate();
}

void to_json(json& j, const ExpertAnnotation& v) {
    j = json{{"ktas_level", v.ktas_level},
             {"five_point_scores", v.five_point_scores},
             {"one_point_scores", v.one_point_scores}};
}

void from_json(const json& j, ExpertAnnotation& v) {
    v.ktas_level = j.at("ktas_level").get<KtasLevel>();
    v.five_point_scores.clear();
    v.one_point_scores.clear();
    if (j.contains("five_point_scores"))
        v.five_point_scores = j.at("five_point_scores").get<std::map<std::string, int>>();
    if (j.contains("one_point_scores"))
        v.one_point_scores = j.at("one_point_scores").get<std::map<std::string, double>>();
    v.validate();
}

void to_json(json& j, const PatientCase& v) {
    j = json{{"case_id", v.case_id}, {"narrative", v.narrative}};
    put_optional(j, "findings", v.findings);
    put_optional(j, "annotation", v.annotation);
}

void from_json(const json& j, PatientCase& v) {
    std::optional<StructuredFindings> findings;
    std::optional<ExpertAnnotation> annotation;
    get_optional(j, "findings", findings);
    get_optional(j, "annotation", annotation);
    v = make_case(j.at("case_id").get<std::string>(), j.at("narrative").get<std::string>(),
                  std::move(findings), std::move(annotation));
}

void to_json(json& j, const ToolCallRecord& v) {
    j = json{{"tool", v.tool_name},
             {"arguments", v.arguments},
             {"result_digest", v.result_digest},
             {"outcome", std::string(outcome_key(v.outcome))}};
}

void from_json(const json& j, ToolCallRecord& v) {
    v.tool_name = j.at("tool").get<std::string>();
    v.arguments = j.at("arguments").get<std::map<std::string, std::string>>();
    v.result_digest = j.at("result_digest").get<std::string>();
    auto o = outcome_from_key(j.at("outcome").get<std::string>());
    if (!o) throw json::other_error::create(501, "unknown outcome", &j);
    v.outcome = *o;
}

void to_json(json& j, const TriageAssessment& v) {
    j = json{{"ktas", v.ktas},
             {"justification", v.justification},
             {"critical_findings", v.critical_findings},
             {"recommended_actions", v.recommended_actions},
             {"remainder", v.remainder}};
}

void from_json(const json& j, TriageAssessment& v) {
    v.ktas = j.at("ktas").get<KtasPrediction>();
    v.justification = j.at("justification").get<std::string>();
    v.critical_findings = j.at("critical_findings").get<std::string>();
    v.recommended_actions = j.at("recommended_actions").get<std::string>();
    v.remainder = j.value("remainder", "");
}

void to_json(json& j, const DiagnosisReport& v) {
    j = json{{"primary_diagnosis", v.primary_diagnosis},
             {"differentials", v.differentials},
             {"treatment_items", v.treatment_items},
             {"tests", v.tests},
             {"remainder", v.remainder}};
}

void from_json(const json& j, DiagnosisReport& v) {
    v.primary_diagnosis = j.at("primary_diagnosis").get<std::string>();
    v.differentials = j.at("differentials").get<std::vector<std::string>>();
    v.treatment_items = j.at("treatment_items").get<std::vector<std::string>>();
    v.tests = j.at("tests").get<std::vector<std::string>>();
    v.remainder = j.value("remainder", "");
}

void to_json(json& j, const MedicationReport::Item& v) {
    j = json{{"name", v.name},
             {"dose_route_freq", v.dose_route_freq},
             {"interactions_note", v.interactions_note}};
}

void from_json(const json& j, MedicationReport::Item& v) {
    v.name = j.at("name").get<std::string>();
    v.dose_route_freq = j.at("dose_route_freq").get<std::string>();
    v.interactions_note = j.at("interactions_note").get<std::string>();
}

void to_json(json& j, const MedicationReport& v) {
    j = json{{"medications", v.medications},
             {"recommendations", v.recommendations},
             {"remainder", v.remainder}};
}

void from_json(const json& j, MedicationReport& v) {
    v.medications = j.at("medications").get<std::vector<MedicationReport::Item>>();
    v.recommendations = j.at("recommendations").get<std::vector<std::string>>();
    v.remainder = j.value("remainder", "");
}

void to_json(json& j, const ManagementDecision& v) {
    j = json{{"ktas_review", v.ktas_review},
             {"primary_diagnosis", v.primary_diagnosis},
             {"justification", v.justification},
             {"immediate_actions", v.immediate_actions},
             {"medications", v.medications},
             {"tests", v.tests},
             {"consultations", v.consultations},
             {"monitoring", v.monitoring},
             {"remainder", v.remainder}};
    put_optional(j, "disposition", v.disposition);
}

void from_json(const json& j, ManagementDecision& v) {
    v.ktas_review = j.at("ktas_review").get<KtasPrediction>();
    v.primary_diagnosis = j.at("primary_diagnosis").get<std::string>();
    get_optional(j, "disposition", v.disposition);
    v.justification = j.at("justification").get<std::string>();
    v.immediate_actions = j.at("immediate_actions").get<std::vector<std::string>>();
    v.medications = j.at("medications").get<std::vector<std::string>>();
    v.tests = j.at("tests").get<std::vector<std::string>>();
    v.consultations = j.at("consultations").get<std::vector<std::string>>();
    v.monitoring = j.at("monitoring").get<std::vector<std::string>>();
    v.remainder = j.value("remainder", "");
}

void to_json(json& j, const ParsedBundle& v) {
    j = json::object();
    put_optional(j, "triage", v.triage);
    put_optional(j, "diagnosis", v.diagnosis);
    put_optional(j, "medication", v.medication);
    put_optional(j, "management", v.management);
}

void from_json(const json& j, ParsedBundle& v) {
    get_optional(j, "triage", v.triage);
    get_optional(j, "diagnosis", v.diagnosis);
    get_optional(j, "medication", v.medication);
    get_optional(j, "management", v.management);
}

void to_json(json& j, const StageRecord& v) {
    j = json{{"role", v.role},
             {"system_prompt", v.system_prompt},
             {"task_prompt", v.task_prompt},
             {"raw_output", v.raw_output},
             {"tool_calls", v.tool_calls},
             {"wall_time_ms", v.wall_time_ms},
             {"start_ms", v.start_ms},
             {"end_ms", v.end_ms}};
}

void from_json(const json& j, StageRecord& v) {
    v.role = j.at("role").get<AgentRole>();
    v.system_prompt = j.at("system_prompt").get<std::string>();
    v.task_prompt = j.at("task_prompt").get<std::string>();
    v.raw_output = j.at("raw_output").get<std::string>();
    v.tool_calls = j.at("tool_calls").get<std::vector<ToolCallRecord>>();
    v.wall_time_ms = j.value("wall_time_ms", std::int64_t{0});
    v.start_ms = j.value("start_ms", std::int64_t{0});
    v.end_ms = j.value("end_ms", std::int64_t{0});
}

void to_json(json& j, const CaseRunRecord& v) {
    j = json{{"case_id", v.case_id},
             {"mode", v.mode},
             {"stages", v.stages},
             {"parsed", v.parsed}};
    put_optional(j, "error", v.error);
}

void from_json(const json& j, CaseRunRecord& v) {
    v.case_id = j.at("case_id").get<std::string>();
    v.mode = j.at("mode").get<RunMode>();
    v.stages = j.at("stages").get<std::vector<StageRecord>>();
    v.parsed = j.at("parsed").get<ParsedBundle>();
    get_optional(j, "error", v.error);
}

} // namespace edcdss
