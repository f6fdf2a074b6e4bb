#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edcdss/types.hpp"

namespace edcdss {

/// Parsed Triage Nurse output. `ktas` is NotApplicable when the report
/// carried no parseable classification line.
struct TriageAssessment {
    KtasPrediction ktas = KtasPrediction::not_applicable();
    std::string justification;
    std::string critical_findings;
    std::string recommended_actions;
    std::string remainder; // unmapped sections, kept verbatim for review

    bool operator==(const TriageAssessment&) const = default;
};

/// Parsed Emergency Physician output.
struct DiagnosisReport {
    std::string primary_diagnosis;
    std::vector<std::string> differentials;
    std::vector<std::string> treatment_items;
    std::vector<std::string> tests;
    std::string remainder;

    bool operator==(const DiagnosisReport&) const = default;
};

/// Parsed Pharmacist output.
struct MedicationReport {
    struct Item {
        std::string name;
        std::string dose_route_freq;
        std::string interactions_note;

        bool operator==(const Item&) const = default;
    };

    std::vector<Item> medications;
    std::vector<std::string> recommendations;
    std::string remainder;

    bool operator==(const MedicationReport&) const = default;
};

/// Parsed ED Doctor in Charge output.
struct ManagementDecision {
    KtasPrediction ktas_review = KtasPrediction::not_applicable();
    std::string primary_diagnosis;
    std::optional<Disposition> disposition;
    std::string justification;
    std::vector<std::string> immediate_actions;
    std::vector<std::string> medications;
    std::vector<std::string> tests;
    std::vector<std::string> consultations;
    std::vector<std::string> monitoring;
    std::string remainder;

    bool operator==(const ManagementDecision&) const = default;
};

struct ParsedBundle {
    std::optional<TriageAssessment> triage;
    std::optional<DiagnosisReport> diagnosis;
    std::optional<MedicationReport> medication;
    std::optional<ManagementDecision> management;

    bool operator==(const ParsedBundle&) const = default;
};

/// Transcript of one executed stage.
struct StageRecord {
    AgentRole role = AgentRole::EdDoctorInCharge;
    std::string system_prompt;
    std::string task_prompt;
    std::string raw_output;
    std::vector<ToolCallRecord> tool_calls;
    std::int64_t wall_time_ms = 0;
    std::int64_t start_ms = 0; // offset from case start, for ordering checks
    std::int64_t end_ms = 0;

    bool operator==(const StageRecord&) const = default;
};

/// Full transcript of one pipeline run over one case.
struct CaseRunRecord {
    std::string case_id;
    RunMode mode = RunMode::MultiAgent;
    std::vector<StageRecord> stages;
    ParsedBundle parsed;
    std::optional<std::string> error; // set when the case aborted mid-run

    bool operator==(const CaseRunRecord&) const = default;
};

} // namespace edcdss
