#include "edcdss/report_parser.hpp"

#include <cctype>
#include <optional>
#include <regex>
#include <sstream>

#include "edcdss/text_util.hpp"

namespace edcdss {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

// Removes leading whitespace plus markdown/list markers: #, *, -, >,
// "12." and "a." style prefixes. Loops so "- a. text" reduces to "text".
std::string strip_markers(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        char c = line[i];
        if (c == '#' || c == '*' || c == '-' || c == '>') {
            ++i;
            continue;
        }
        if (is_digit(c)) {
            std::size_t j = i;
            while (j < line.size() && is_digit(line[j])) ++j;
            if (j < line.size() && line[j] == '.') {
                i = j + 1;
                continue;
            }
            break;
        }
        if (is_alpha(c) && i + 1 < line.size() && line[i + 1] == '.') {
            i += 2;
            continue;
        }
        break;
    }
    return std::string(line.substr(i));
}

// Matches `header` at the start of a marker-stripped line; the name must be
// followed by ':' (rest = text after it) or by nothing at all.
std::optional<std::string> match_header(const std::string& line, std::string_view header) {
    std::string stripped = strip_markers(line);
    if (stripped.size() < header.size()) return std::nullopt;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(stripped[i])) !=
            std::tolower(static_cast<unsigned char>(header[i])))
            return std::nullopt;
    }
    std::size_t i = header.size();
    while (i < stripped.size() && stripped[i] == ' ') ++i;
    if (i == stripped.size()) return std::string{};
    if (stripped[i] == ':') return stripped.substr(i + 1);
    return std::nullopt;
}

struct RawSection {
    std::string header;      // canonical name; empty for the preamble
    std::string header_line; // original line, kept for the remainder
    std::string first_rest;  // text after the header's colon
    std::vector<std::string> lines;
};

std::vector<RawSection> split_sections(const std::string& text,
                                       const std::vector<std::string_view>& headers) {
    std::vector<RawSection> sections;
    sections.push_back(RawSection{});
    for (const auto& line : split_lines(text)) {
        bool matched = false;
        for (auto header : headers) {
            if (auto rest = match_header(line, header)) {
                sections.push_back(RawSection{std::string(header), line, *rest, {}});
                matched = true;
                break;
            }
        }
        if (!matched) sections.back().lines.push_back(line);
    }
    return sections;
}

std::string section_text(const RawSection& s) {
    std::ostringstream out;
    out << s.first_rest;
    for (const auto& line : s.lines) out << '\n' << line;
    return trim(out.str());
}

std::vector<std::string> section_items(const RawSection& s) {
    std::vector<std::string> items;
    if (!trim(s.first_rest).empty()) items.push_back(trim(s.first_rest));
    for (const auto& line : s.lines) {
        std::string stripped = trim(strip_markers(line));
        if (stripped.empty()) continue;
        bool has_marker = stripped != trim(line);
        if (!has_marker && !items.empty()) {
            items.back() += " " + stripped; // wrapped continuation line
        } else {
            items.push_back(stripped);
        }
    }
    return items;
}

void append_remainder(std::string& remainder, const RawSection& s) {
    std::ostringstream out;
    if (!s.header.empty()) out << s.header_line << '\n';
    out << s.first_rest;
    for (const auto& line : s.lines) out << '\n' << line;
    std::string chunk = trim(out.str());
    if (chunk.empty()) return;
    if (!remainder.empty()) remainder += '\n';
    remainder += chunk;
}

KtasPrediction parse_ktas_value(const std::string& value) {
    static const std::regex exact_re(R"(^\s*([1-5])\s*$)");
    static const std::regex range_re(R"(^\s*([1-5])\s*[oO][rR]\s*([1-5])\s*$)");
    std::smatch m;
    if (std::regex_match(value, m, exact_re))
        return KtasPrediction::exact(KtasLevel(m[1].str()[0] - '0'));
    if (std::regex_match(value, m, range_re)) {
        int a = m[1].str()[0] - '0';
        int b = m[2].str()[0] - '0';
        if (a == b) return KtasPrediction::not_applicable();
        return KtasPrediction::range(KtasLevel(a), KtasLevel(b));
    }
    return KtasPrediction::not_applicable();
}

const std::vector<std::string_view> kTriageHeaders = {
    "KTAS CLASSIFICATION", "Detailed Justification", "Patient Assessment",
    "Critical Findings",   "Recommended Actions",    "Additional Information",
};

const std::vector<std::string_view> kDiagnosisHeaders = {
    "PRIMARY DIAGNOSIS",       "Supporting Evidence", "Differential Diagnoses",
    "Treatment Plan",          "Diagnostic Tests",    "Potential Complications",
    "Consultations",           "Monitoring Plan",     "Evidence-Based Guidelines",
};

const std::vector<std::string_view> kMedicationHeaders = {
    "MEDICATION SAFETY REPORT",
    "Patient Condition Summary",
    "Prescribed Medications Analysis",
    "Overall Medication Therapy Assessment",
    "Recommendations",
    "Emergency Pharmacology Considerations",
    "References",
};

const std::vector<std::string_view> kManagementHeaders = {
    "EMERGENCY DEPARTMENT MANAGEMENT DECISION",
    "KTAS Classification Review",
    "KTAS CLASSIFICATION",
    "Clinical Assessment",
    "Primary Diagnosis",
    "Critical Findings",
    "Disposition Decision",
    "Justification",
    "Management Plan",
    "Immediate Actions",
    "Medications",
    "Diagnostic Tests",
    "Consultations",
    "Monitoring",
    "Resource Allocation",
    "Communication Plan",
    "Contingency Planning",
    "Additional Considerations",
    "References",
};

std::optional<Disposition> parse_disposition(const std::string& text) {
    // Precedence when several keywords appear on the decision line.
    if (contains_ci(text, "admit")) return Disposition::Admit;
    if (contains_ci(text, "transfer")) return Disposition::Transfer;
    if (contains_ci(text, "discharge")) return Disposition::Discharge;
    if (contains_ci(text, "continue")) return Disposition::ContinueErCare;
    return std::nullopt;
}

MedicationReport::Item parse_medication_item_name(const std::string& stripped) {
    MedicationReport::Item item;
    std::string name = stripped;
    if (!name.empty() && name.back() == ':') name.pop_back();
    name = trim(name);
    static const std::string_view suffix = "(rxnorm verified)";
    std::string lowered = to_lower(name);
    if (lowered.size() >= suffix.size() &&
        lowered.compare(lowered.size() - suffix.size(), suffix.size(), suffix) == 0)
        name = trim(name.substr(0, name.size() - suffix.size()));
    item.name = name;
    return item;
}

bool starts_new_numbered_item(const std::string& line) {
    std::string t = trim(line);
    std::size_t i = 0;
    while (i < t.size() && is_digit(t[i])) ++i;
    return i > 0 && i < t.size() && t[i] == '.';
}

} // namespace

KtasPrediction parse_ktas_line(const std::string& text) {
    for (const auto& line : split_lines(text)) {
        if (auto rest = match_header(line, "KTAS Classification Review"))
            return parse_ktas_value(*rest);
        if (auto rest = match_header(line, "KTAS CLASSIFICATION"))
            return parse_ktas_value(*rest);
    }
    return KtasPrediction::not_applicable();
}

TriageAssessment parse_triage(const std::string& text) {
    TriageAssessment out;
    out.ktas = parse_ktas_line(text);
    for (const auto& s : split_sections(text, kTriageHeaders)) {
        if (s.header == "Detailed Justification")
            out.justification = section_text(s);
        else if (s.header == "Critical Findings")
            out.critical_findings = section_text(s);
        else if (s.header == "Recommended Actions")
            out.recommended_actions = section_text(s);
        else if (s.header != "KTAS CLASSIFICATION")
            append_remainder(out.remainder, s);
    }
    return out;
}

DiagnosisReport parse_diagnosis(const std::string& text) {
    DiagnosisReport out;
    for (const auto& s : split_sections(text, kDiagnosisHeaders)) {
        if (s.header == "PRIMARY DIAGNOSIS")
            out.primary_diagnosis = section_text(s);
        else if (s.header == "Differential Diagnoses")
            out.differentials = section_items(s);
        else if (s.header == "Treatment Plan")
            out.treatment_items = section_items(s);
        else if (s.header == "Diagnostic Tests")
            out.tests = section_items(s);
        else
            append_remainder(out.remainder, s);
    }
    return out;
}

MedicationReport parse_medication(const std::string& text) {
    MedicationReport out;
    for (const auto& s : split_sections(text, kMedicationHeaders)) {
        if (s.header == "Prescribed Medications Analysis") {
            MedicationReport::Item* current = nullptr;
            for (const auto& line : s.lines) {
                if (starts_new_numbered_item(line)) {
                    out.medications.push_back(
                        parse_medication_item_name(trim(strip_markers(line))));
                    current = &out.medications.back();
                    continue;
                }
                if (!current) continue;
                if (auto rest = match_header(line, "Dose/Route/Frequency"))
                    current->dose_route_freq = trim(*rest);
                else if (auto rest2 = match_header(line, "Interactions"))
                    current->interactions_note = trim(*rest2);
            }
        } else if (s.header == "Recommendations") {
            out.recommendations = section_items(s);
        } else {
            append_remainder(out.remainder, s);
        }
    }
    return out;
}

ManagementDecision parse_management(const std::string& text) {
    ManagementDecision out;
    out.ktas_review = parse_ktas_line(text);
    for (const auto& s : split_sections(text, kManagementHeaders)) {
        if (s.header == "Primary Diagnosis")
            out.primary_diagnosis = section_text(s);
        else if (s.header == "Disposition Decision")
            out.disposition = parse_disposition(section_text(s));
        else if (s.header == "Justification")
            out.justification = section_text(s);
        else if (s.header == "Immediate Actions")
            out.immediate_actions = section_items(s);
        else if (s.header == "Medications")
            out.medications = section_items(s);
        else if (s.header == "Diagnostic Tests")
            out.tests = section_items(s);
        else if (s.header == "Consultations")
            out.consultations = section_items(s);
        else if (s.header == "Monitoring")
            out.monitoring = section_items(s);
        else if (s.header != "KTAS Classification Review" && s.header != "KTAS CLASSIFICATION")
            append_remainder(out.remainder, s);
    }
    return out;
}

} // namespace edcdss
