#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "edcdss/errors.hpp"

namespace edcdss {

/// KTAS acuity level; 1 is the most urgent, 5 the least.
class KtasLevel {
public:
    explicit KtasLevel(int value) : value_(value) {
        if (value < 1 || value > 5)
            throw RangeError("KTAS level must be in [1,5], got " + std::to_string(value));
    }

    int value() const { return value_; }

    /// Smaller value means more urgent.
    bool more_urgent_than(KtasLevel other) const { return value_ < other.value_; }

    auto operator<=>(const KtasLevel&) const = default;

private:
    int value_;
};

/// A triage verdict as parsed from model output: a definitive level,
/// a range such as "1 or 2", or not applicable.
class KtasPrediction {
public:
    enum class Kind { Exact, Range, NotApplicable };

    static KtasPrediction exact(KtasLevel level) {
        return KtasPrediction(Kind::Exact, level, level);
    }

    /// Normalizes a reversed pair; rejects a degenerate range (low == high).
    static KtasPrediction range(KtasLevel a, KtasLevel b) {
        if (a == b) throw RangeError("range prediction requires two distinct levels");
        if (b.more_urgent_than(a)) std::swap(a, b);
        return KtasPrediction(Kind::Range, a, b);
    }

    static KtasPrediction not_applicable() { return KtasPrediction(Kind::NotApplicable, {}, {}); }

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::Exact; }

    /// Exact: the level. Range: the more urgent bound.
    KtasLevel low() const { return require(low_); }
    KtasLevel high() const { return require(high_); }

    /// Confusion-matrix row label: "2", "1 or 2", "Not applicable".
    std::string label() const;

    /// Strict inverse of label(); nullopt for anything else.
    static std::optional<KtasPrediction> from_label(std::string_view label);

    bool operator==(const KtasPrediction&) const = default;

private:
    KtasPrediction(Kind kind, std::optional<KtasLevel> low, std::optional<KtasLevel> high)
        : kind_(kind), low_(low), high_(high) {}

    static KtasLevel require(const std::optional<KtasLevel>& level) {
        if (!level) throw RangeError("prediction carries no level");
        return *level;
    }

    Kind kind_;
    std::optional<KtasLevel> low_;
    std::optional<KtasLevel> high_;
};

enum class AgentRole { TriageNurse, EmergencyPhysician, Pharmacist, EdDoctorInCharge };

inline constexpr std::array<AgentRole, 4> kAllRoles = {
    AgentRole::TriageNurse, AgentRole::EmergencyPhysician, AgentRole::Pharmacist,
    AgentRole::EdDoctorInCharge};

/// Human-readable title: "Triage Nurse", "ED Doctor in Charge", ...
std::string_view role_title(AgentRole role);
/// Stable identifier: "triage_nurse", "ed_doctor_in_charge", ...
std::string_view role_key(AgentRole role);
std::optional<AgentRole> role_from_key(std::string_view key);

enum class Disposition { ContinueErCare, Admit, Transfer, Discharge };

std::string_view disposition_key(Disposition d);
std::optional<Disposition> disposition_from_key(std::string_view key);

/// Structured flags that map directly onto the level-1/level-3 guide entries.
enum class ClinicalFlag { CardiacArrest, RespiratoryArrest, UnconsciousNonAlcohol, BleedingDiarrhea };

std::string_view flag_key(ClinicalFlag f);
std::optional<ClinicalFlag> flag_from_key(std::string_view key);

/// Optional structured enrichment of a case narrative.
struct StructuredFindings {
    std::string chief_complaint;
    std::optional<double> spo2_percent;
    std::optional<double> temperature_c;
    std::optional<double> heart_rate_bpm;
    std::optional<double> systolic_bp_mmhg;
    std::optional<double> respiratory_rate_per_min;
    std::set<ClinicalFlag> flags;

    /// Throws RangeError when a vital is outside physiological bounds.
    void validate() const;

    bool operator==(const StructuredFindings&) const = default;
};

inline constexpr std::array<std::string_view, 3> kFivePointCategories = {
    "primary_diagnosis", "critical_findings", "justification"};

inline constexpr std::array<std::string_view, 6> kOnePointCategories = {
    "disposition_decision", "immediate_action", "medication",
    "diagnostic_test", "consultation", "monitoring"};

/// Expert ground truth for one case: the assigned KTAS level plus the
/// 5-point (1..5) and 1-point (0 / 0.5 / 1) category scores.
struct ExpertAnnotation {
    KtasLevel ktas_level{3};
    std::map<std::string, int> five_point_scores;
    std::map<std::string, double> one_point_scores;

    void validate() const;

    bool operator==(const ExpertAnnotation&) const = default;
};

/// The unit of pipeline execution.
struct PatientCase {
    std::string case_id;
    std::string narrative;
    std::optional<StructuredFindings> findings;
    std::optional<ExpertAnnotation> annotation;

    bool operator==(const PatientCase&) const = default;
};

/// Validates and builds a PatientCase.
/// Throws EmptyFieldError on blank id/narrative, RangeError on invalid
/// vitals or scores.
PatientCase make_case(std::string case_id, std::string narrative,
                      std::optional<StructuredFindings> findings = std::nullopt,
                      std::optional<ExpertAnnotation> annotation = std::nullopt);

enum class RunMode { MultiAgent, SingleAgent };

std::string_view run_mode_key(RunMode mode);
std::optional<RunMode> run_mode_from_key(std::string_view key);

/// One executed tool invocation inside a stage.
struct ToolCallRecord {
    enum class Outcome { Ok, NotFound, Error };

    std::string tool_name;
    std::map<std::string, std::string> arguments;
    std::string result_digest;
    Outcome outcome = Outcome::Ok;

    bool operator==(const ToolCallRecord&) const = default;
};

std::string_view outcome_key(ToolCallRecord::Outcome o);
std::optional<ToolCallRecord::Outcome> outcome_from_key(std::string_view key);

enum class UrgencyOrder { MoreUrgent, Equal, LessUrgent, Incomparable };

/// Orders a prediction against the expert level. Exact predictions compare
/// by level (smaller = more urgent); Range and NotApplicable are
/// incomparable and are counted as indecisive by the metrics.
UrgencyOrder compare_urgency(const KtasPrediction& prediction, KtasLevel expert);

} // namespace edcdss
