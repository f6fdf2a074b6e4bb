#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "edcdss/ktas_rules.hpp"
#include "edcdss/text_util.hpp"
#include "support/paths.hpp"

using namespace edcdss;

TEST_CASE("guide structure and required strings") {
    const auto& guide = ktas_guide();
    REQUIRE(guide.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(guide[static_cast<std::size_t>(i)].level == i + 1);

    std::string text = render_guide();
    CHECK(text.find("<KTAS guide>") == 0);
    CHECK(text.find("</KTAS guide>") != std::string::npos);
    CHECK(text.find("Conditions that require immediate intervention") != std::string::npos);
    CHECK(text.find("Gastroenteritis with fever above 38°C") != std::string::npos);
    CHECK(text.find("Dyspnea (with oxygen saturation above 90%)") != std::string::npos);
    CHECK(render_guide() == text); // pure
}

TEST_CASE("guide asset digest is pinned in the manifest") {
    std::ifstream manifest_in(testsupport::asset_dir() / "manifest.json");
    REQUIRE(manifest_in.good());
    nlohmann::json manifest;
    manifest_in >> manifest;
    std::string pinned;
    for (const auto& entry : manifest.at("assets"))
        if (entry.at("id") == "ktas_guide") pinned = entry.at("sha256");
    REQUIRE_FALSE(pinned.empty());
    CHECK(sha256_hex(render_guide()) == pinned);

    std::ifstream file_in(testsupport::asset_dir() / "ktas_guide.txt", std::ios::binary);
    REQUIRE(file_in.good());
    std::stringstream buffer;
    buffer << file_in.rdbuf();
    CHECK(buffer.str() == render_guide());
}

namespace {

StructuredFindings with_complaint(const std::string& complaint) {
    StructuredFindings f;
    f.chief_complaint = complaint;
    return f;
}

} // namespace

TEST_CASE("advisory classifier matches every guide example") {
    // level 1
    CHECK(advisory_classify(with_complaint("Cardiac arrest")).value() == 1);
    CHECK(advisory_classify(with_complaint("Respiratory arrest")).value() == 1);
    CHECK(advisory_classify(
              with_complaint("Unconsciousness not related to alcohol consumption"))
              .value() == 1);
    StructuredFindings flagged;
    flagged.chief_complaint = "collapsed";
    flagged.flags = {ClinicalFlag::CardiacArrest};
    CHECK(advisory_classify(flagged).value() == 1);

    // level 2
    CHECK(advisory_classify(with_complaint("Myocardial infarction")).value() == 2);
    CHECK(advisory_classify(with_complaint("Cerebral hemorrhage")).value() == 2);
    CHECK(advisory_classify(with_complaint("Cerebral infarction")).value() == 2);

    // level 3
    StructuredFindings dyspnea = with_complaint("dyspnea");
    dyspnea.spo2_percent = 92.0;
    CHECK(advisory_classify(dyspnea).value() == 3);
    CHECK(advisory_classify(with_complaint("Dyspnea (with oxygen saturation above 90%)"))
              .value() == 3);
    CHECK(advisory_classify(with_complaint("Diarrhea with bleeding")).value() == 3);
    StructuredFindings bd;
    bd.chief_complaint = "frequent stools";
    bd.flags = {ClinicalFlag::BleedingDiarrhea};
    CHECK(advisory_classify(bd).value() == 3);

    // level 4
    StructuredFindings gastro = with_complaint("gastroenteritis");
    gastro.temperature_c = 38.5;
    CHECK(advisory_classify(gastro).value() == 4);
    CHECK(advisory_classify(with_complaint("Gastroenteritis with fever above 38°C"))
              .value() == 4);
    CHECK(advisory_classify(with_complaint("Urinary tract infection with abdominal pain"))
              .value() == 4);

    // level 5
    CHECK(advisory_classify(with_complaint("Common cold")).value() == 5);
    CHECK(advisory_classify(with_complaint("Gastroenteritis")).value() == 5);
    CHECK(advisory_classify(with_complaint("Diarrhea")).value() == 5);
    CHECK(advisory_classify(with_complaint("Laceration (wound)")).value() == 5);
}

TEST_CASE("dyspnea below 90 percent saturation escalates") {
    StructuredFindings low = with_complaint("dyspnea");
    low.spo2_percent = 88.0;
    CHECK(advisory_classify(low).value() == 2);
    low.spo2_percent = 90.0; // boundary: "above 90%" is the level-3 example
    CHECK(advisory_classify(low).value() == 2);
}

namespace {

StructuredFindings random_findings(std::mt19937& rng) {
    static const char* complaints[] = {
        "dyspnea",       "common cold",     "gastroenteritis", "diarrhea",
        "chest pain",    "laceration",      "cardiac arrest",  "headache",
        "abdominal pain", "urinary tract infection",
    };
    StructuredFindings f;
    f.chief_complaint = complaints[std::uniform_int_distribution<>(0, 9)(rng)];
    auto coin = [&](double p) {
        return std::uniform_real_distribution<>(0.0, 1.0)(rng) < p;
    };
    if (coin(0.5)) f.spo2_percent = std::uniform_real_distribution<>(60.0, 100.0)(rng);
    if (coin(0.5)) f.temperature_c = std::uniform_real_distribution<>(35.0, 41.0)(rng);
    if (coin(0.1)) f.flags.insert(ClinicalFlag::CardiacArrest);
    if (coin(0.1)) f.flags.insert(ClinicalFlag::RespiratoryArrest);
    if (coin(0.1)) f.flags.insert(ClinicalFlag::UnconsciousNonAlcohol);
    if (coin(0.1)) f.flags.insert(ClinicalFlag::BleedingDiarrhea);
    return f;
}

} // namespace

TEST_CASE("classifier is total and deterministic over random findings") {
    std::mt19937 rng(1234);
    for (int i = 0; i < 1000; ++i) {
        StructuredFindings f = random_findings(rng);
        KtasLevel first = advisory_classify(f);
        CHECK(first.value() >= 1);
        CHECK(first.value() <= 5);
        CHECK(advisory_classify(f) == first);
    }
}

TEST_CASE("saturation monotonicity at the level-3 boundary") {
    std::mt19937 rng(99);
    for (int i = 0; i < 1000; ++i) {
        StructuredFindings high = with_complaint("dyspnea");
        StructuredFindings low = high;
        high.spo2_percent = std::uniform_real_distribution<>(90.0001, 100.0)(rng);
        low.spo2_percent = std::uniform_real_distribution<>(60.0, 90.0)(rng);
        if (std::uniform_real_distribution<>(0.0, 1.0)(rng) < 0.2) {
            high.flags.insert(ClinicalFlag::CardiacArrest);
            low.flags.insert(ClinicalFlag::CardiacArrest);
        }
        // (90, 100] must never be classified more urgent than <= 90
        CHECK_FALSE(advisory_classify(high).more_urgent_than(advisory_classify(low)));
    }
}
