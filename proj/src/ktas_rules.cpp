#include "edcdss/ktas_rules.hpp"

#include <sstream>

#include "edcdss/text_util.hpp"

namespace edcdss {

const std::array<KtasGuideEntry, 5>& ktas_guide() {
    static const std::array<KtasGuideEntry, 5> guide = {{
        {1,
         "Conditions that require immediate intervention; life-threatening or potentially "
         "life-threatening states (or high risk of rapid deterioration)",
         {"Cardiac arrest", "Respiratory arrest",
          "Unconsciousness not related to alcohol consumption"},
         "Highest priority"},
        {2,
         "Conditions with potential threats to life, limb, or organ function requiring rapid "
         "medical intervention",
         {"Myocardial infarction", "Cerebral hemorrhage", "Cerebral infarction"},
         "Second priority"},
        {3,
         "Conditions that may progress to a serious problem requiring emergency intervention",
         {"Dyspnea (with oxygen saturation above 90%)", "Diarrhea with bleeding"},
         "Third priority"},
        {4,
         "Conditions that, considering the patient's age, pain level, or potential for "
         "deterioration or complications, could be treated or re-evaluated within 1-2 hours",
         {"Gastroenteritis with fever above 38°C",
          "Urinary tract infection with abdominal pain"},
         "Fourth priority"},
        {5,
         "Conditions that are urgent but not emergencies, or those resulting from chronic "
         "problems with low risk of deterioration",
         {"Common cold", "Gastroenteritis", "Diarrhea", "Laceration (wound)"},
         "Fifth priority"},
    }};
    return guide;
}

std::string render_guide() {
    std::ostringstream out;
    out << "<KTAS guide>\n";
    for (const auto& entry : ktas_guide()) {
        out << entry.level << ":\n";
        out << "    description: \"" << entry.description << "\",\n";
        out << "    examples: [";
        for (std::size_t i = 0; i < entry.examples.size(); ++i) {
            if (i > 0) out << ", ";
            out << '"' << entry.examples[i] << '"';
        }
        out << "],\n";
        out << "    priority: \"" << entry.priority << "\"\n";
        out << "\n";
    }
    out << "</KTAS guide>";
    return out.str();
}

namespace {

bool complaint_has(const StructuredFindings& f, std::string_view keyword) {
    return contains_ci(f.chief_complaint, keyword);
}

bool any_keyword(const StructuredFindings& f, std::initializer_list<std::string_view> keywords) {
    for (auto k : keywords)
        if (complaint_has(f, k)) return true;
    return false;
}

} // namespace

KtasLevel advisory_classify(const StructuredFindings& findings) {
    // Level 1: immediate intervention. Flags win over text.
    if (findings.flags.count(ClinicalFlag::CardiacArrest) ||
        findings.flags.count(ClinicalFlag::RespiratoryArrest) ||
        findings.flags.count(ClinicalFlag::UnconsciousNonAlcohol) ||
        any_keyword(findings, {"cardiac arrest", "respiratory arrest", "unconscious"}))
        return KtasLevel(1);

    // Level 2: threats to life, limb or organ function. Dyspnea with a
    // saturation at or below 90% escalates past the level-3 guide example.
    bool dyspnea = any_keyword(findings, {"dyspnea", "shortness of breath"});
    if (any_keyword(findings, {"myocardial infarction", "cerebral hemorrhage",
                               "cerebral infarction"}) ||
        (dyspnea && findings.spo2_percent && *findings.spo2_percent <= 90.0))
        return KtasLevel(2);

    // Level 3: may progress to a serious problem.
    bool bleeding_diarrhea =
        findings.flags.count(ClinicalFlag::BleedingDiarrhea) > 0 ||
        (complaint_has(findings, "diarrhea") &&
         any_keyword(findings, {"bleeding", "blood"}));
    if (dyspnea || bleeding_diarrhea) return KtasLevel(3);

    // Level 4: treatable or re-evaluable within 1-2 hours.
    bool febrile =
        (findings.temperature_c && *findings.temperature_c > 38.0) ||
        complaint_has(findings, "fever");
    if ((complaint_has(findings, "gastroenteritis") && febrile) ||
        (complaint_has(findings, "urinary tract infection") &&
         (febrile || complaint_has(findings, "abdominal pain"))))
        return KtasLevel(4);

    // Level 5: urgent but not an emergency.
    return KtasLevel(5);
}

} // namespace edcdss
