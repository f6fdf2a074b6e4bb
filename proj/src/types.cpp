#include "edcdss/types.hpp"

#include <charconv>

#include "edcdss/text_util.hpp"

namespace edcdss {

std::string KtasPrediction::label() const {
    switch (kind_) {
    case Kind::Exact:
        return std::to_string(low_->value());
    case Kind::Range:
        return std::to_string(low_->value()) + " or " + std::to_string(high_->value());
    case Kind::NotApplicable:
        return "Not applicable";
    }
    return {};
}

std::optional<KtasPrediction> KtasPrediction::from_label(std::string_view label) {
    if (label == "Not applicable") return not_applicable();
    auto parse_digit = [](std::string_view s) -> std::optional<int> {
        if (s.size() != 1 || s[0] < '1' || s[0] > '5') return std::nullopt;
        return s[0] - '0';
    };
    if (auto v = parse_digit(label)) return exact(KtasLevel(*v));
    std::size_t sep = label.find(" or ");
    if (sep != std::string_view::npos) {
        auto a = parse_digit(label.substr(0, sep));
        auto b = parse_digit(label.substr(sep + 4));
        if (a && b && *a < *b) return range(KtasLevel(*a), KtasLevel(*b));
    }
    return std::nullopt;
}

std::string_view role_title(AgentRole role) {
    switch (role) {
    case AgentRole::TriageNurse: return "Triage Nurse";
    case AgentRole::EmergencyPhysician: return "Emergency Physician";
    case AgentRole::Pharmacist: return "Pharmacist";
    case AgentRole::EdDoctorInCharge: return "ED Doctor in Charge";
    }
    return {};
}

std::string_view role_key(AgentRole role) {
    switch (role) {
    case AgentRole::TriageNurse: return "triage_nurse";
    case AgentRole::EmergencyPhysician: return "emergency_physician";
    case AgentRole::Pharmacist: return "pharmacist";
    case AgentRole::EdDoctorInCharge: return "ed_doctor_in_charge";
    }
    return {};
}

std::optional<AgentRole> role_from_key(std::string_view key) {
    for (AgentRole role : kAllRoles)
        if (role_key(role) == key) return role;
    return std::nullopt;
}

std::string_view disposition_key(Disposition d) {
    switch (d) {
    case Disposition::ContinueErCare: return "continue_er_care";
    case Disposition::Admit: return "admit";
    case Disposition::Transfer: return "transfer";
    case Disposition::Discharge: return "discharge";
    }
    return {};
}

std::optional<Disposition> disposition_from_key(std::string_view key) {
    for (Disposition d : {Disposition::ContinueErCare, Disposition::Admit,
                          Disposition::Transfer, Disposition::Discharge})
        if (disposition_key(d) == key) return d;
    return std::nullopt;
}

std::string_view flag_key(ClinicalFlag f) {
    switch (f) {
    case ClinicalFlag::CardiacArrest: return "cardiac_arrest";
    case ClinicalFlag::RespiratoryArrest: return "respiratory_arrest";
    case ClinicalFlag::UnconsciousNonAlcohol: return "unconscious_non_alcohol";
    case ClinicalFlag::BleedingDiarrhea: return "bleeding_diarrhea";
    }
    return {};
}

std::optional<ClinicalFlag> flag_from_key(std::string_view key) {
    for (ClinicalFlag f : {ClinicalFlag::CardiacArrest, ClinicalFlag::RespiratoryArrest,
                           ClinicalFlag::UnconsciousNonAlcohol, ClinicalFlag::BleedingDiarrhea})
        if (flag_key(f) == key) return f;
    return std::nullopt;
}

void StructuredFindings::validate() const {
    auto check = [](const std::optional<double>& v, double lo, double hi, const char* name) {
        if (v && (*v < lo || *v > hi))
            throw RangeError(std::string(name) + " out of range: " + std::to_string(*v));
    };
    check(spo2_percent, 0.0, 100.0, "spo2_percent");
    check(temperature_c, 20.0, 45.0, "temperature_c");
    auto check_positive = [](const std::optional<double>& v, const char* name) {
        if (v && *v <= 0.0)
            throw RangeError(std::string(name) + " must be positive: " + std::to_string(*v));
    };
    check_positive(heart_rate_bpm, "heart_rate_bpm");
    check_positive(systolic_bp_mmhg, "systolic_bp_mmhg");
    check_positive(respiratory_rate_per_min, "respiratory_rate_per_min");
}

void ExpertAnnotation::validate() const {
    for (const auto& [category, score] : five_point_scores) {
        bool known = false;
        for (auto k : kFivePointCategories) known = known || k == category;
        if (!known) throw RangeError("unknown five-point category: " + category);
        if (score < 1 || score > 5)
            throw RangeError("five-point score out of range for " + category + ": " +
                             std::to_string(score));
    }
    for (const auto& [category, score] : one_point_scores) {
        bool known = false;
        for (auto k : kOnePointCategories) known = known || k == category;
        if (!known) throw RangeError("unknown one-point category: " + category);
        if (score != 0.0 && score != 0.5 && score != 1.0)
            throw RangeError("one-point score must be 0, 0.5 or 1 for " + category + ": " +
                             std::to_string(score));
    }
}

PatientCase make_case(std::string case_id, std::string narrative,
                      std::optional<StructuredFindings> findings,
                      std::optional<ExpertAnnotation> annotation) {
    if (trim(case_id).empty()) throw EmptyFieldError("case_id must be non-empty");
    if (trim(narrative).empty()) throw EmptyFieldError("narrative must be non-empty");
    if (findings) findings->validate();
    if (annotation) annotation->validate();
    return PatientCase{std::move(case_id), std::move(narrative), std::move(findings),
                       std::move(annotation)};
}

std::string_view run_mode_key(RunMode mode) {
    return mode == RunMode::MultiAgent ? "multi_agent" : "single_agent";
}

std::optional<RunMode> run_mode_from_key(std::string_view key) {
    if (key == "multi_agent") return RunMode::MultiAgent;
    if (key == "single_agent") return RunMode::SingleAgent;
    return std::nullopt;
}

std::string_view outcome_key(ToolCallRecord::Outcome o) {
    switch (o) {
    case ToolCallRecord::Outcome::Ok: return "ok";
    case ToolCallRecord::Outcome::NotFound: return "not_found";
    case ToolCallRecord::Outcome::Error: return "error";
    }
    return {};
}

std::optional<ToolCallRecord::Outcome> outcome_from_key(std::string_view key) {
    if (key == "ok") return ToolCallRecord::Outcome::Ok;
    if (key == "not_found") return ToolCallRecord::Outcome::NotFound;
    if (key == "error") return ToolCallRecord::Outcome::Error;
    return std::nullopt;
}

UrgencyOrder compare_urgency(const KtasPrediction& prediction, KtasLevel expert) {
    if (!prediction.is_exact()) return UrgencyOrder::Incomparable;
    KtasLevel level = prediction.low();
    if (level.more_urgent_than(expert)) return UrgencyOrder::MoreUrgent;
    if (expert.more_urgent_than(level)) return UrgencyOrder::LessUrgent;
    return UrgencyOrder::Equal;
}

} // namespace edcdss
