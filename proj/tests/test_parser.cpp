#include <doctest.h>

#include <fstream>

#include <nlohmann/json.hpp>

#include "edcdss/report_parser.hpp"
#include "support/paths.hpp"
#include "support/render_oracle.hpp"

using namespace edcdss;
using testsupport::Gen;

TEST_CASE("ktas line forms") {
    CHECK(parse_ktas_line("KTAS CLASSIFICATION: 2\nDetailed Justification: x") ==
          KtasPrediction::exact(KtasLevel(2)));
    CHECK(parse_ktas_line("KTAS CLASSIFICATION: 1 or 2") ==
          KtasPrediction::range(KtasLevel(1), KtasLevel(2)));
    CHECK(parse_ktas_line("I cannot determine a level") == KtasPrediction::not_applicable());
    CHECK(parse_ktas_line("ktas classification: 3 of 5") == KtasPrediction::not_applicable());
    CHECK(parse_ktas_line("") == KtasPrediction::not_applicable());
}

TEST_CASE("ktas line tolerances") {
    // case-insensitive, marker-tolerant headers
    CHECK(parse_ktas_line("## ktas classification: 4") == KtasPrediction::exact(KtasLevel(4)));
    CHECK(parse_ktas_line("- KTAS Classification : 5") == KtasPrediction::exact(KtasLevel(5)));
    // management review header
    CHECK(parse_ktas_line("KTAS Classification Review: 3") ==
          KtasPrediction::exact(KtasLevel(3)));
    CHECK(parse_ktas_line("KTAS Classification Review: looks right to me") ==
          KtasPrediction::not_applicable());
    // reversed and degenerate ranges
    CHECK(parse_ktas_line("KTAS CLASSIFICATION: 2 or 1") ==
          KtasPrediction::range(KtasLevel(1), KtasLevel(2)));
    CHECK(parse_ktas_line("KTAS CLASSIFICATION: 3 or 3") == KtasPrediction::not_applicable());
    CHECK(parse_ktas_line("KTAS CLASSIFICATION: 0 or 9") == KtasPrediction::not_applicable());
    CHECK(parse_ktas_line("KTAS CLASSIFICATION: 7") == KtasPrediction::not_applicable());
    // first occurrence wins over later restatements
    CHECK(parse_ktas_line("KTAS CLASSIFICATION: 2\nKTAS CLASSIFICATION: 5") ==
          KtasPrediction::exact(KtasLevel(2)));
    CHECK(parse_ktas_line("KTAS CLASSIFICATION: borderline\nKTAS CLASSIFICATION: 5") ==
          KtasPrediction::not_applicable());
}

TEST_CASE("triage sections") {
    std::string text =
        "KTAS CLASSIFICATION: 3\n\n"
        "Detailed Justification: dyspnea with saturation above 90%\n\n"
        "Patient Assessment:\n1. Presenting Symptoms: cough\n\n"
        "Critical Findings: hypoxia risk\n\n"
        "Recommended Actions: monitored bed\n";
    TriageAssessment t = parse_triage(text);
    CHECK(t.ktas == KtasPrediction::exact(KtasLevel(3)));
    CHECK(t.justification == "dyspnea with saturation above 90%");
    CHECK(t.critical_findings == "hypoxia risk");
    CHECK(t.recommended_actions == "monitored bed");
    CHECK(t.remainder.find("Presenting Symptoms") != std::string::npos);
}

TEST_CASE("management parses the worked clinical example") {
    std::ifstream in(testsupport::fixture_dir() / "scripted" / "appendixc.json");
    REQUIRE(in.good());
    nlohmann::json fixture;
    in >> fixture;
    std::string text;
    for (const auto& entry : fixture.at("entries"))
        if (entry.at("role") == "ed_doctor_in_charge") text = entry.at("text");
    REQUIRE_FALSE(text.empty());

    ManagementDecision m = parse_management(text);
    REQUIRE(m.disposition.has_value());
    CHECK(*m.disposition == Disposition::Admit);
    CHECK(m.primary_diagnosis.find("Acute Respiratory Distress Syndrome") !=
          std::string::npos);
    // prose review, not a bare level
    CHECK(m.ktas_review == KtasPrediction::not_applicable());
    REQUIRE(m.immediate_actions.size() == 4);
    CHECK(m.immediate_actions[0] == "Continue oxygen therapy at 4 L/min via nasal cannula");
    REQUIRE(m.medications.size() == 4);
    CHECK(m.medications[1] == "Antibiotics: Ceftriaxone 1g IV q12h");
    CHECK(m.tests.size() == 4);
    CHECK(m.consultations.size() == 2);
    CHECK(m.monitoring.size() == 3);
    CHECK(m.justification.find("condition is critical") != std::string::npos);
}

TEST_CASE("empty input yields empty fields") {
    ManagementDecision m = parse_management("");
    CHECK(m.ktas_review == KtasPrediction::not_applicable());
    CHECK_FALSE(m.disposition.has_value());
    CHECK(m.primary_diagnosis.empty());
    CHECK(m.immediate_actions.empty());

    DiagnosisReport d = parse_diagnosis("");
    CHECK(d.primary_diagnosis.empty());
    CHECK(d.differentials.empty());

    MedicationReport med = parse_medication("");
    CHECK(med.medications.empty());

    TriageAssessment t = parse_triage("");
    CHECK(t.ktas == KtasPrediction::not_applicable());
}

TEST_CASE("disposition keyword precedence") {
    auto with_line = [](const std::string& line) {
        return parse_management("Disposition Decision: " + line).disposition;
    };
    CHECK(*with_line("Admit to the Intensive Care Unit") == Disposition::Admit);
    CHECK(*with_line("Transfer to a burn center") == Disposition::Transfer);
    CHECK(*with_line("Safe discharge with follow-up") == Disposition::Discharge);
    CHECK(*with_line("Continue ER care") == Disposition::ContinueErCare);
    // several keywords on one line: Admit > Transfer > Discharge > Continue
    CHECK(*with_line("continue ER care until a bed opens, then admit") == Disposition::Admit);
    CHECK(*with_line("discharge or transfer depending on response") ==
          Disposition::Transfer);
    CHECK_FALSE(with_line("undetermined pending senior review").has_value());
}

TEST_CASE("round-trip: triage") {
    Gen g(101);
    for (int i = 0; i < 1000; ++i) {
        TriageAssessment original = testsupport::gen_triage(g);
        TriageAssessment parsed = parse_triage(testsupport::render_triage(original));
        CHECK(parsed.ktas == original.ktas);
        CHECK(parsed.justification == original.justification);
        CHECK(parsed.critical_findings == original.critical_findings);
        CHECK(parsed.recommended_actions == original.recommended_actions);
    }
}

TEST_CASE("round-trip: diagnosis") {
    Gen g(202);
    for (int i = 0; i < 1000; ++i) {
        DiagnosisReport original = testsupport::gen_diagnosis(g);
        DiagnosisReport parsed = parse_diagnosis(testsupport::render_diagnosis(original));
        CHECK(parsed.primary_diagnosis == original.primary_diagnosis);
        CHECK(parsed.differentials == original.differentials);
        CHECK(parsed.treatment_items == original.treatment_items);
        CHECK(parsed.tests == original.tests);
    }
}

TEST_CASE("round-trip: medication") {
    Gen g(303);
    for (int i = 0; i < 1000; ++i) {
        MedicationReport original = testsupport::gen_medication(g);
        MedicationReport parsed = parse_medication(testsupport::render_medication(original));
        CHECK(parsed.medications == original.medications);
        CHECK(parsed.recommendations == original.recommendations);
    }
}

TEST_CASE("round-trip: management") {
    Gen g(404);
    for (int i = 0; i < 1000; ++i) {
        ManagementDecision original = testsupport::gen_management(g);
        ManagementDecision parsed = parse_management(testsupport::render_management(original));
        CHECK(parsed.ktas_review == original.ktas_review);
        CHECK(parsed.primary_diagnosis == original.primary_diagnosis);
        CHECK(parsed.disposition == original.disposition);
        CHECK(parsed.justification == original.justification);
        CHECK(parsed.immediate_actions == original.immediate_actions);
        CHECK(parsed.medications == original.medications);
        CHECK(parsed.tests == original.tests);
        CHECK(parsed.consultations == original.consultations);
        CHECK(parsed.monitoring == original.monitoring);
    }
}

TEST_CASE("parsers are total on random bytes") {
    Gen g(505);
    for (int i = 0; i < 1000; ++i) {
        std::string junk = g.random_bytes();
        CHECK_NOTHROW(parse_ktas_line(junk));
        CHECK_NOTHROW(parse_triage(junk));
        CHECK_NOTHROW(parse_diagnosis(junk));
        CHECK_NOTHROW(parse_medication(junk));
        CHECK_NOTHROW(parse_management(junk));
    }
}
