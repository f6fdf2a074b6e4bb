#pragma once

// Test-side renderers and generators for the parser round-trip property:
// they fill the report templates independently of the parser under test.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "edcdss/reports.hpp"

namespace testsupport {

using namespace edcdss;

class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    bool chance(double p) { return std::uniform_real_distribution<>(0.0, 1.0)(rng_) < p; }

    // Single-line value safe for lossless embedding in a template: starts
    // with two letters, no ':' (so it can never spoof a section header),
    // no list-marker prefix, already trimmed.
    std::string text(int max_words = 6) {
        static const char* words[] = {"acute",    "stable",   "left",    "right",  "chest",
                                      "pain",     "fever",    "cough",   "fluids", "oxygen",
                                      "observe",  "cardiac",  "renal",   "dose",   "rapid",
                                      "moderate", "severe",   "mild",    "onset",  "plan"};
        int n = pick(1, max_words);
        std::ostringstream out;
        for (int i = 0; i < n; ++i) {
            if (i) out << ' ';
            out << words[pick(0, 19)];
        }
        return out.str();
    }

    std::vector<std::string> items(int max_items = 4, bool allow_empty = true) {
        int n = pick(allow_empty ? 0 : 1, max_items);
        std::vector<std::string> out;
        for (int i = 0; i < n; ++i) out.push_back(text());
        return out;
    }

    KtasPrediction prediction() {
        switch (pick(0, 3)) {
        case 0:
        case 1:
            return KtasPrediction::exact(KtasLevel(pick(1, 5)));
        case 2: {
            int low = pick(1, 4);
            return KtasPrediction::range(KtasLevel(low), KtasLevel(pick(low + 1, 5)));
        }
        default:
            return KtasPrediction::not_applicable();
        }
    }

    std::string random_bytes(int max_len = 200) {
        int n = pick(0, max_len);
        std::string out;
        out.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) out.push_back(static_cast<char>(pick(1, 255)));
        return out;
    }

    std::mt19937& rng() { return rng_; }

private:
    std::mt19937 rng_;
};

inline TriageAssessment gen_triage(Gen& g) {
    TriageAssessment t;
    t.ktas = g.prediction();
    t.justification = g.chance(0.9) ? g.text() : "";
    t.critical_findings = g.chance(0.9) ? g.text() : "";
    t.recommended_actions = g.chance(0.9) ? g.text() : "";
    return t;
}

inline std::string render_triage(const TriageAssessment& t) {
    std::ostringstream out;
    out << "KTAS CLASSIFICATION: " << t.ktas.label() << "\n\n";
    out << "Detailed Justification: " << t.justification << "\n\n";
    out << "Patient Assessment:\n";
    out << "1. Presenting Symptoms: as described\n";
    out << "2. Vital Signs: documented\n\n";
    out << "Critical Findings: " << t.critical_findings << "\n\n";
    out << "Recommended Actions: " << t.recommended_actions << "\n\n";
    out << "Additional Information: none recorded";
    return out.str();
}

inline DiagnosisReport gen_diagnosis(Gen& g) {
    DiagnosisReport d;
    d.primary_diagnosis = g.text();
    d.differentials = g.items();
    d.treatment_items = g.items();
    d.tests = g.items();
    return d;
}

inline std::string render_diagnosis(const DiagnosisReport& d) {
    std::ostringstream out;
    out << "PRIMARY DIAGNOSIS: " << d.primary_diagnosis << "\n\n";
    out << "Supporting Evidence: findings consistent with the impression\n\n";
    out << "Differential Diagnoses:\n";
    for (std::size_t i = 0; i < d.differentials.size(); ++i)
        out << i + 1 << ". " << d.differentials[i] << "\n";
    out << "\nTreatment Plan:\n";
    for (std::size_t i = 0; i < d.treatment_items.size(); ++i)
        out << i + 1 << ". " << d.treatment_items[i] << "\n";
    out << "\nDiagnostic Tests:\n";
    for (std::size_t i = 0; i < d.tests.size(); ++i) out << i + 1 << ". " << d.tests[i] << "\n";
    out << "\nPotential Complications:\n1. deterioration watch\n\n";
    out << "Monitoring Plan: reassess at intervals\n\n";
    out << "Evidence-Based Guidelines: none referenced";
    return out.str();
}

inline MedicationReport gen_medication(Gen& g) {
    MedicationReport m;
    int n = g.pick(0, 3);
    for (int i = 0; i < n; ++i) {
        MedicationReport::Item item;
        item.name = g.text(2);
        item.dose_route_freq = g.text(3);
        item.interactions_note = g.text(4);
        m.medications.push_back(std::move(item));
    }
    m.recommendations = g.items();
    return m;
}

inline std::string render_medication(const MedicationReport& m) {
    std::ostringstream out;
    out << "MEDICATION SAFETY REPORT\n\n";
    out << "Patient Condition Summary: under active evaluation\n\n";
    out << "Prescribed Medications Analysis:\n";
    for (std::size_t i = 0; i < m.medications.size(); ++i) {
        const auto& item = m.medications[i];
        out << i + 1 << ". " << item.name << " (RxNorm verified):\n";
        out << "   - Dose/Route/Frequency: " << item.dose_route_freq << "\n";
        out << "   - Indication: supportive therapy\n";
        out << "   - Interactions: " << item.interactions_note << "\n";
    }
    out << "\nOverall Medication Therapy Assessment:\n";
    out << "- Drug-Disease Interactions: none noted\n\n";
    out << "Recommendations:\n";
    for (std::size_t i = 0; i < m.recommendations.size(); ++i)
        out << i + 1 << ". " << m.recommendations[i] << "\n";
    out << "\nReferences:\n- none";
    return out.str();
}

inline ManagementDecision gen_management(Gen& g) {
    ManagementDecision m;
    m.ktas_review = g.prediction();
    m.primary_diagnosis = g.text();
    if (g.chance(0.85)) {
        static const Disposition all[] = {Disposition::ContinueErCare, Disposition::Admit,
                                          Disposition::Transfer, Disposition::Discharge};
        m.disposition = all[g.pick(0, 3)];
    }
    m.justification = g.chance(0.9) ? g.text() : "";
    m.immediate_actions = g.items();
    m.medications = g.items();
    m.tests = g.items();
    m.consultations = g.items();
    m.monitoring = g.items();
    return m;
}

inline std::string disposition_line(const std::optional<Disposition>& d) {
    if (!d) return "pending senior physician review";
    switch (*d) {
    case Disposition::ContinueErCare: return "Continue ER care";
    case Disposition::Admit: return "Admit";
    case Disposition::Transfer: return "Transfer";
    case Disposition::Discharge: return "Discharge";
    }
    return {};
}

inline std::string render_management(const ManagementDecision& m) {
    std::ostringstream out;
    out << "EMERGENCY DEPARTMENT MANAGEMENT DECISION\n\n";
    out << "KTAS Classification Review: " << m.ktas_review.label() << "\n\n";
    out << "Clinical Assessment:\n";
    out << "- Primary Diagnosis: " << m.primary_diagnosis << "\n";
    out << "- Critical Findings: noted for the receiving team\n\n";
    out << "Disposition Decision: " << disposition_line(m.disposition) << "\n\n";
    out << "Justification: " << m.justification << "\n\n";
    out << "Management Plan:\n";
    auto list = [&](int idx, const char* header, const std::vector<std::string>& items) {
        out << idx << ". " << header << ":\n";
        char mark = 'a';
        for (const auto& item : items) out << "   - " << mark++ << ". " << item << "\n";
    };
    list(1, "Immediate Actions", m.immediate_actions);
    list(2, "Medications", m.medications);
    list(3, "Diagnostic Tests", m.tests);
    list(4, "Consultations", m.consultations);
    list(5, "Monitoring", m.monitoring);
    out << "\nResource Allocation: standard resources\n\n";
    out << "Communication Plan:\n- Patient/Family: explained\n- Healthcare Team: handover done\n\n";
    out << "Contingency Planning: reassess on deterioration\n\n";
    out << "Additional Considerations: none\n\n";
    out << "References: none";
    return out.str();
}

} // namespace testsupport
