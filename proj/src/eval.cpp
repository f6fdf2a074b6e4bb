#include "edcdss/eval.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "edcdss/json_codec.hpp"
#include "edcdss/text_util.hpp"

namespace edcdss {

using nlohmann::json;

std::string rational_str(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string rational_decimal(const Rational& r, int places) {
    long long num = r.numerator();
    long long den = r.denominator();
    bool negative = num < 0;
    if (negative) num = -num;
    long long scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    long long scaled = num * scale / den;
    long long rem = num * scale % den;
    if (2 * rem >= den) ++scaled;
    long long whole = scaled / scale;
    long long frac = scaled % scale;
    std::ostringstream out;
    if (negative && (whole != 0 || frac != 0)) out << '-';
    out << whole;
    if (places > 0) {
        out << '.';
        std::string digits = std::to_string(frac);
        out << std::string(static_cast<std::size_t>(places) - digits.size(), '0') << digits;
    }
    return out.str();
}

// --- confusion matrix -------------------------------------------------------

namespace {

// Table order: exact and range rows interleave by their low level
// ("1", "1 or 2", "2", ..., "3 or 4", ...); "Not applicable" is last.
std::pair<int, int> row_sort_key(const KtasPrediction& p) {
    switch (p.kind()) {
    case KtasPrediction::Kind::Exact: return {p.low().value(), p.low().value()};
    case KtasPrediction::Kind::Range: return {p.low().value(), p.high().value()};
    case KtasPrediction::Kind::NotApplicable: return {6, 6};
    }
    return {6, 6};
}

} // namespace

long ConfusionMatrix::total() const {
    long sum = 0;
    for (const auto& row : counts)
        for (long c : row) sum += c;
    return sum;
}

long ConfusionMatrix::at(const std::string& row_label, int expert_level) const {
    for (std::size_t i = 0; i < row_labels.size(); ++i)
        if (row_labels[i] == row_label) return counts[i][static_cast<std::size_t>(expert_level - 1)];
    return 0;
}

ConfusionMatrix confusion(const std::vector<ScoredPrediction>& records) {
    std::vector<std::pair<std::pair<int, int>, std::string>> rows;
    for (int level = 1; level <= 5; ++level)
        rows.push_back({{level, level}, std::to_string(level)});
    for (const auto& r : records) {
        if (r.prediction.is_exact()) continue;
        auto key = row_sort_key(r.prediction);
        std::string label = r.prediction.label();
        if (std::none_of(rows.begin(), rows.end(),
                         [&](const auto& row) { return row.second == label; }))
            rows.push_back({key, label});
    }
    std::sort(rows.begin(), rows.end());

    ConfusionMatrix m;
    for (const auto& [_, label] : rows) {
        m.row_labels.push_back(label);
        m.counts.push_back({0, 0, 0, 0, 0});
    }
    for (const auto& r : records) {
        std::string label = r.prediction.label();
        auto it = std::find(m.row_labels.begin(), m.row_labels.end(), label);
        std::size_t row = static_cast<std::size_t>(it - m.row_labels.begin());
        ++m.counts[row][static_cast<std::size_t>(r.expert.value() - 1)];
    }
    return m;
}

TriageMetrics triage_metrics(const std::vector<ScoredPrediction>& records) {
    TriageMetrics m;
    m.n = static_cast<long>(records.size());
    for (const auto& r : records) {
        switch (compare_urgency(r.prediction, r.expert)) {
        case UrgencyOrder::Equal: ++m.exact_match; break;
        case UrgencyOrder::MoreUrgent: ++m.over_triage; break;
        case UrgencyOrder::LessUrgent: ++m.under_triage; break;
        case UrgencyOrder::Incomparable: ++m.indecisive; break;
        }
    }
    if (m.n > 0) {
        m.accuracy = Rational(m.exact_match, m.n);
        m.over_rate = Rational(m.over_triage, m.n);
        m.under_rate = Rational(m.under_triage, m.n);
        m.decisiveness = Rational(m.n - m.indecisive, m.n);
    }
    return m;
}

ScoreSummary summarize_distribution(const std::map<Rational, long>& distribution) {
    ScoreSummary s;
    Rational weighted{0};
    for (const auto& [value, count] : distribution) {
        if (count < 0) throw RangeError("negative count in score distribution");
        s.n += count;
        weighted += value * count;
    }
    if (s.n == 0) throw EmptyDistributionError("score distribution is empty");
    s.distribution = distribution;
    s.mean = weighted / s.n;
    return s;
}

std::map<std::string, ScoreSummary> mean_scores(
    const std::map<std::string, std::map<Rational, long>>& distributions) {
    std::map<std::string, ScoreSummary> out;
    for (const auto& [category, dist] : distributions)
        out[category] = summarize_distribution(dist);
    return out;
}

// --- case loading -------------------------------------------------------------

std::vector<PatientCase> load_cases(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(0, "cannot open case file: " + path.string());
    std::vector<PatientCase> cases;
    std::set<std::string> seen_ids;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        PatientCase patient;
        try {
            patient = json::parse(line).get<PatientCase>();
        } catch (const json::exception& e) {
            throw SchemaError(line_no, e.what());
        } catch (const Error& e) {
            throw SchemaError(line_no, e.what());
        }
        if (!seen_ids.insert(patient.case_id).second)
            throw DuplicateIdError("duplicate case_id at line " + std::to_string(line_no) +
                                   ": " + patient.case_id);
        cases.push_back(std::move(patient));
    }
    return cases;
}

KtasPrediction extract_prediction(const CaseRunRecord& record) {
    if (record.parsed.triage) return record.parsed.triage->ktas;
    if (record.parsed.management) return record.parsed.management->ktas_review;
    return KtasPrediction::not_applicable();
}

EvalReport evaluate(const std::vector<PatientCase>& cases,
                    const std::vector<CaseRunRecord>& records, RunMode mode) {
    std::map<std::string, const CaseRunRecord*> by_id;
    for (const auto& r : records) by_id[r.case_id] = &r;

    EvalReport report;
    report.mode = mode;
    std::vector<ScoredPrediction> scored;
    std::map<std::string, std::map<Rational, long>> five_dists;
    std::map<std::string, std::map<Rational, long>> one_dists;

    for (const auto& patient : cases) {
        if (!patient.annotation) continue;
        ScoredPrediction sp;
        sp.expert = patient.annotation->ktas_level;
        auto it = by_id.find(patient.case_id);
        sp.prediction = it == by_id.end() ? KtasPrediction::not_applicable()
                                          : extract_prediction(*it->second);
        scored.push_back(sp);
        report.case_ids.push_back(patient.case_id);
        for (const auto& [category, score] : patient.annotation->five_point_scores)
            ++five_dists[category][Rational(score)];
        for (const auto& [category, score] : patient.annotation->one_point_scores)
            ++one_dists[category][Rational(static_cast<long long>(score * 2.0), 2)];
    }

    report.n = static_cast<long>(scored.size());
    report.matrix = confusion(scored);
    report.metrics = triage_metrics(scored);
    report.five_point = mean_scores(five_dists);
    report.one_point = mean_scores(one_dists);
    return report;
}

ComparisonReport compare_modes(const EvalReport& multi, const EvalReport& single_agent) {
    std::set<std::string> multi_ids(multi.case_ids.begin(), multi.case_ids.end());
    std::set<std::string> single_ids(single_agent.case_ids.begin(),
                                     single_agent.case_ids.end());
    if (multi_ids != single_ids)
        throw CaseSetMismatchError("reports cover different case sets (" +
                                   std::to_string(multi_ids.size()) + " vs " +
                                   std::to_string(single_ids.size()) + " ids)");

    ComparisonReport cmp;
    cmp.n = multi.n;
    cmp.accuracy_delta = multi.metrics.accuracy - single_agent.metrics.accuracy;
    cmp.decisiveness_delta = multi.metrics.decisiveness - single_agent.metrics.decisiveness;
    cmp.over_rate_delta = multi.metrics.over_rate - single_agent.metrics.over_rate;
    cmp.under_rate_delta = multi.metrics.under_rate - single_agent.metrics.under_rate;
    for (const auto& [category, summary] : multi.five_point) {
        auto it = single_agent.five_point.find(category);
        if (it != single_agent.five_point.end())
            cmp.five_point_mean_delta[category] = summary.mean - it->second.mean;
    }
    for (const auto& [category, summary] : multi.one_point) {
        auto it = single_agent.one_point.find(category);
        if (it != single_agent.one_point.end())
            cmp.one_point_mean_delta[category] = summary.mean - it->second.mean;
    }
    return cmp;
}

// --- emission -------------------------------------------------------------------

namespace {

json rational_json(const Rational& r) {
    return json{{"value", rational_str(r)}, {"decimal", rational_decimal(r)}};
}

json summary_json(const ScoreSummary& s) {
    json dist = json::array();
    for (const auto& [value, count] : s.distribution)
        dist.push_back({{"score", rational_str(value)}, {"count", count}});
    return json{{"n", s.n}, {"mean", rational_json(s.mean)}, {"distribution", dist}};
}

void markdown_score_table(std::ostringstream& out, const char* title,
                          const std::vector<std::string>& columns,
                          const std::map<std::string, ScoreSummary>& summaries) {
    if (summaries.empty()) return;
    out << "## " << title << "\n\n";
    out << "| Category |";
    for (const auto& c : columns) out << ' ' << c << " |";
    out << " Mean |\n|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
    out << "---|\n";
    for (const auto& [category, summary] : summaries) {
        out << "| " << category << " |";
        for (const auto& c : columns) {
            long count = 0;
            for (const auto& [value, cnt] : summary.distribution)
                if (rational_str(value) == c) count = cnt;
            out << ' ' << count << " |";
        }
        out << ' ' << rational_str(summary.mean) << " (" << rational_decimal(summary.mean)
            << ") |\n";
    }
    out << '\n';
}

const std::vector<std::string> kFiveCols = {"1", "2", "3", "4", "5"};
const std::vector<std::string> kOneCols = {"0", "1/2", "1"};

} // namespace

json metrics_json(const EvalReport& report) {
    json rows = json::array();
    for (std::size_t i = 0; i < report.matrix.row_labels.size(); ++i)
        rows.push_back({{"label", report.matrix.row_labels[i]},
                        {"counts", report.matrix.counts[i]}});
    json five = json::object();
    for (const auto& [category, summary] : report.five_point)
        five[category] = summary_json(summary);
    json one = json::object();
    for (const auto& [category, summary] : report.one_point)
        one[category] = summary_json(summary);
    return json{
        {"mode", std::string(run_mode_key(report.mode))},
        {"n", report.n},
        {"confusion", json{{"expert_levels", json::array({1, 2, 3, 4, 5})}, {"rows", rows}}},
        {"triage",
         json{{"n", report.metrics.n},
              {"exact_match", report.metrics.exact_match},
              {"over_triage", report.metrics.over_triage},
              {"under_triage", report.metrics.under_triage},
              {"indecisive", report.metrics.indecisive},
              {"accuracy", rational_json(report.metrics.accuracy)},
              {"over_rate", rational_json(report.metrics.over_rate)},
              {"under_rate", rational_json(report.metrics.under_rate)},
              {"decisiveness", rational_json(report.metrics.decisiveness)}}},
        {"five_point", five},
        {"one_point", one},
        {"case_ids", report.case_ids},
    };
}

std::string tables_markdown(const EvalReport& report) {
    std::ostringstream out;
    out << "# Evaluation (" << run_mode_key(report.mode) << ", n = " << report.n << ")\n\n";
    out << "## KTAS confusion matrix\n\n";
    out << "| Model's KTAS Prediction | 1 | 2 | 3 | 4 | 5 |\n";
    out << "|---|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < report.matrix.row_labels.size(); ++i) {
        out << "| " << report.matrix.row_labels[i] << " |";
        for (long c : report.matrix.counts[i]) out << ' ' << c << " |";
        out << '\n';
    }
    out << "\n## Triage metrics\n\n";
    out << "| Metric | Count | Rate |\n|---|---|---|\n";
    const TriageMetrics& m = report.metrics;
    auto rate = [](const Rational& r) {
        return rational_str(r) + " (" + rational_decimal(r) + ")";
    };
    out << "| exact match | " << m.exact_match << " | " << rate(m.accuracy) << " |\n";
    out << "| over-triage | " << m.over_triage << " | " << rate(m.over_rate) << " |\n";
    out << "| under-triage | " << m.under_triage << " | " << rate(m.under_rate) << " |\n";
    out << "| indecisive | " << m.indecisive << " | " << rate(m.decisiveness)
        << " decisiveness |\n\n";
    markdown_score_table(out, "5-point scale scores", kFiveCols, report.five_point);
    markdown_score_table(out, "1-point scale scores", kOneCols, report.one_point);
    return out.str();
}

std::string tables_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "section,label,c1,c2,c3,c4,c5\n";
    for (std::size_t i = 0; i < report.matrix.row_labels.size(); ++i) {
        out << "confusion,\"" << report.matrix.row_labels[i] << '"';
        for (long c : report.matrix.counts[i]) out << ',' << c;
        out << '\n';
    }
    const TriageMetrics& m = report.metrics;
    out << "triage,n," << m.n << ",,,,\n";
    out << "triage,exact_match," << m.exact_match << "," << rational_str(m.accuracy) << ","
        << rational_decimal(m.accuracy) << ",,\n";
    out << "triage,over_triage," << m.over_triage << "," << rational_str(m.over_rate) << ","
        << rational_decimal(m.over_rate) << ",,\n";
    out << "triage,under_triage," << m.under_triage << "," << rational_str(m.under_rate) << ","
        << rational_decimal(m.under_rate) << ",,\n";
    out << "triage,indecisive," << m.indecisive << "," << rational_str(m.decisiveness) << ","
        << rational_decimal(m.decisiveness) << ",,\n";
    auto emit_scores = [&](const char* section,
                           const std::map<std::string, ScoreSummary>& summaries) {
        for (const auto& [category, summary] : summaries) {
            out << section << ',' << category << ',' << summary.n << ','
                << rational_str(summary.mean) << ',' << rational_decimal(summary.mean)
                << ",,\n";
        }
    };
    emit_scores("five_point_mean", report.five_point);
    emit_scores("one_point_mean", report.one_point);
    return out.str();
}

json comparison_json(const ComparisonReport& cmp) {
    json five = json::object();
    for (const auto& [category, delta] : cmp.five_point_mean_delta)
        five[category] = rational_json(delta);
    json one = json::object();
    for (const auto& [category, delta] : cmp.one_point_mean_delta)
        one[category] = rational_json(delta);
    return json{{"n", cmp.n},
                {"accuracy_delta", rational_json(cmp.accuracy_delta)},
                {"decisiveness_delta", rational_json(cmp.decisiveness_delta)},
                {"over_rate_delta", rational_json(cmp.over_rate_delta)},
                {"under_rate_delta", rational_json(cmp.under_rate_delta)},
                {"five_point_mean_delta", five},
                {"one_point_mean_delta", one}};
}

std::string comparison_markdown(const ComparisonReport& cmp) {
    std::ostringstream out;
    out << "# Multi-agent vs single-agent (n = " << cmp.n << ")\n\n";
    out << "Positive deltas favor the multi-agent system (multi minus single).\n\n";
    out << "| Metric | Delta |\n|---|---|\n";
    auto row = [&](const std::string& name, const Rational& r) {
        out << "| " << name << " | " << rational_str(r) << " (" << rational_decimal(r)
            << ") |\n";
    };
    row("accuracy", cmp.accuracy_delta);
    row("decisiveness", cmp.decisiveness_delta);
    row("over-triage rate", cmp.over_rate_delta);
    row("under-triage rate", cmp.under_rate_delta);
    for (const auto& [category, delta] : cmp.five_point_mean_delta)
        row("5-point mean: " + category, delta);
    for (const auto& [category, delta] : cmp.one_point_mean_delta)
        row("1-point mean: " + category, delta);
    return out.str();
}

std::string comparison_csv(const ComparisonReport& cmp) {
    std::ostringstream out;
    out << "metric,delta,decimal\n";
    auto row = [&](const std::string& name, const Rational& r) {
        out << name << ',' << rational_str(r) << ',' << rational_decimal(r) << '\n';
    };
    row("accuracy", cmp.accuracy_delta);
    row("decisiveness", cmp.decisiveness_delta);
    row("over_rate", cmp.over_rate_delta);
    row("under_rate", cmp.under_rate_delta);
    for (const auto& [category, delta] : cmp.five_point_mean_delta)
        row("five_point_mean:" + category, delta);
    for (const auto& [category, delta] : cmp.one_point_mean_delta)
        row("one_point_mean:" + category, delta);
    return out.str();
}

} // namespace edcdss
