#pragma once

// JSON encodings for the domain types. decode(encode(x)) == x holds for
// every type here; malformed input raises SchemaError-free nlohmann
// exceptions at this layer (the case-file loader maps them to SchemaError
// with line numbers).

#include <nlohmann/json.hpp>

#include "edcdss/reports.hpp"
#include "edcdss/types.hpp"

// KtasLevel and KtasPrediction are not default-constructible (their
// invariants live in the constructors), so they deserialize through
// value-returning adl_serializer specializations.
namespace nlohmann {

template <>
struct adl_serializer<edcdss::KtasLevel> {
    static edcdss::KtasLevel from_json(const json& j) {
        return edcdss::KtasLevel(j.get<int>());
    }
    static void to_json(json& j, const edcdss::KtasLevel& v) { j = v.value(); }
};

template <>
struct adl_serializer<edcdss::KtasPrediction> {
    static edcdss::KtasPrediction from_json(const json& j) {
        auto parsed = edcdss::KtasPrediction::from_label(j.get<std::string>());
        if (!parsed) throw edcdss::RangeError("bad prediction label: " + j.dump());
        return *parsed;
    }
    static void to_json(json& j, const edcdss::KtasPrediction& v) { j = v.label(); }
};

} // namespace nlohmann

namespace edcdss {

using nlohmann::json;

void to_json(json& j, const AgentRole& v);
void from_json(const json& j, AgentRole& v);

void to_json(json& j, const Disposition& v);
void from_json(const json& j, Disposition& v);

void to_json(json& j, const RunMode& v);
void from_json(const json& j, RunMode& v);

void to_json(json& j, const StructuredFindings& v);
void from_json(const json& j, StructuredFindings& v);

void to_json(json& j, const ExpertAnnotation& v);
void from_json(const json& j, ExpertAnnotation& v);

void to_json(json& j, const PatientCase& v);
void from_json(const json& j, PatientCase& v);

void to_json(json& j, const ToolCallRecord& v);
void from_json(const json& j, ToolCallRecord& v);

void to_json(json& j, const TriageAssessment& v);
void from_json(const json& j, TriageAssessment& v);

void to_json(json& j, const DiagnosisReport& v);
void from_json(const json& j, DiagnosisReport& v);

void to_json(json& j, const MedicationReport::Item& v);
void from_json(const json& j, MedicationReport::Item& v);

void to_json(json& j, const MedicationReport& v);
void from_json(const json& j, MedicationReport& v);

void to_json(json& j, const ManagementDecision& v);
void from_json(const json& j, ManagementDecision& v);

void to_json(json& j, const ParsedBundle& v);
void from_json(const json& j, ParsedBundle& v);

void to_json(json& j, const StageRecord& v);
void from_json(const json& j, StageRecord& v);

void to_json(json& j, const CaseRunRecord& v);
void from_json(const json& j, CaseRunRecord& v);

} // namespace edcdss
