#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <nlohmann/json.hpp>

#include "edcdss/reports.hpp"
#include "edcdss/types.hpp"

namespace edcdss {

/// Exact rational arithmetic for all scores and rates; decimal rendering
/// happens only at emission.
using Rational = boost::rational<long long>;

/// "5/7" (normalized) — or just "5" for integers.
std::string rational_str(const Rational& r);
/// Fixed-point decimal with `places` digits, round-half-up.
std::string rational_decimal(const Rational& r, int places = 4);

/// One scored case: the system's prediction against the expert level.
struct ScoredPrediction {
    KtasPrediction prediction = KtasPrediction::not_applicable();
    KtasLevel expert{3};
};

/// Confusion matrix in the paper's layout: one row per prediction label
/// (Exact 1..5 always present, Range rows only when observed, "Not
/// applicable" last when observed), columns expert level 1..5.
struct ConfusionMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::array<long, 5>> counts;

    long total() const;
    long at(const std::string& row_label, int expert_level) const;
};

ConfusionMatrix confusion(const std::vector<ScoredPrediction>& records);

struct TriageMetrics {
    long n = 0;
    long exact_match = 0;
    long over_triage = 0;
    long under_triage = 0;
    long indecisive = 0;
    Rational accuracy{0};
    Rational over_rate{0};
    Rational under_rate{0};
    Rational decisiveness{0};
};

TriageMetrics triage_metrics(const std::vector<ScoredPrediction>& records);

/// Distribution of one category's scores plus its exact mean.
struct ScoreSummary {
    std::map<Rational, long> distribution;
    long n = 0;
    Rational mean{0};
};

/// Throws EmptyDistributionError when the distribution has no entries.
ScoreSummary summarize_distribution(const std::map<Rational, long>& distribution);

/// Per-category means over score distributions (the spec's mean_scores).
std::map<std::string, ScoreSummary> mean_scores(
    const std::map<std::string, std::map<Rational, long>>& distributions);

/// Loads a JSON-lines case file; one case per line. Throws SchemaError
/// with the offending 1-based line number or DuplicateIdError.
std::vector<PatientCase> load_cases(const std::filesystem::path& path);

/// The KTAS verdict a run record is scored on: the triage assessment when
/// present, else the management KTAS review, else NotApplicable.
KtasPrediction extract_prediction(const CaseRunRecord& record);

struct EvalReport {
    RunMode mode = RunMode::MultiAgent;
    long n = 0; // scored (annotated) cases
    ConfusionMatrix matrix;
    TriageMetrics metrics;
    std::map<std::string, ScoreSummary> five_point;
    std::map<std::string, ScoreSummary> one_point;
    std::vector<std::string> case_ids; // scored cases, input order
};

/// Pairs run records with expert annotations and computes every metric.
/// Cases without an annotation are not scored.
EvalReport evaluate(const std::vector<PatientCase>& cases,
                    const std::vector<CaseRunRecord>& records, RunMode mode);

struct ComparisonReport {
    long n = 0;
    Rational accuracy_delta{0};     // multi - single
    Rational decisiveness_delta{0}; // multi - single
    Rational over_rate_delta{0};
    Rational under_rate_delta{0};
    std::map<std::string, Rational> five_point_mean_delta;
    std::map<std::string, Rational> one_point_mean_delta;
};

/// Deltas are multi minus single. Throws CaseSetMismatchError when the two
/// reports cover different case-id sets.
ComparisonReport compare_modes(const EvalReport& multi, const EvalReport& single_agent);

nlohmann::json metrics_json(const EvalReport& report);
std::string tables_markdown(const EvalReport& report);
std::string tables_csv(const EvalReport& report);
nlohmann::json comparison_json(const ComparisonReport& cmp);
std::string comparison_markdown(const ComparisonReport& cmp);
std::string comparison_csv(const ComparisonReport& cmp);

} // namespace edcdss
