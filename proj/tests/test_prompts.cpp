#include <doctest.h>

#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "edcdss/ktas_rules.hpp"
#include "edcdss/prompt_engine.hpp"
#include "edcdss/text_util.hpp"
#include "support/paths.hpp"

using namespace edcdss;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

PatientCase sample_case(const std::string& narrative = "sudden chest pain for one hour") {
    return make_case("p1", narrative);
}

} // namespace

TEST_CASE("asset files, embedded texts and manifest digests agree byte-for-byte") {
    nlohmann::json manifest;
    {
        std::ifstream in(testsupport::asset_dir() / "manifest.json");
        REQUIRE(in.good());
        in >> manifest;
    }
    std::map<std::string, std::string> pinned;
    std::map<std::string, std::string> paths;
    for (const auto& entry : manifest.at("assets")) {
        pinned[entry.at("id")] = entry.at("sha256");
        paths[entry.at("id")] = entry.at("path");
    }

    auto texts = prompt_asset_texts();
    CHECK(texts.size() == 17); // 4 roles x 4 texts + the guide
    CHECK(pinned.size() == texts.size());
    for (const auto& [id, text] : texts) {
        REQUIRE_MESSAGE(pinned.count(id) == 1, id);
        CHECK_MESSAGE(sha256_hex(text) == pinned[id], id);
        CHECK_MESSAGE(read_file(testsupport::asset_dir() / paths[id]) == text, id);
    }
}

TEST_CASE("every task template carries the input placeholder exactly once") {
    for (AgentRole role : kAllRoles) {
        const PromptAsset& asset = prompt_asset(role);
        CHECK(count_occurrences(asset.task_description_template, kInputPlaceholder) == 1);
        CHECK(asset.goal.size() > 50);
        CHECK(asset.backstory.size() > 50);
        CHECK_FALSE(asset.expected_output_template.empty());
    }
}

TEST_CASE("system prompts carry the role texts") {
    std::string nurse = render_system_prompt(AgentRole::TriageNurse);
    CHECK(nurse.find("over 15 years of experience") != std::string::npos);
    CHECK(nurse.find("Conduct a thorough and rapid assessment") != std::string::npos);

    std::string doctor = render_system_prompt(AgentRole::EdDoctorInCharge);
    CHECK(doctor.find("Oversee and coordinate all aspects") != std::string::npos);

    CHECK(render_system_prompt(AgentRole::Pharmacist) ==
          render_system_prompt(AgentRole::Pharmacist));
}

TEST_CASE("first-stage task prompt substitutes the narrative with no context section") {
    PatientCase patient = sample_case();
    std::string prompt =
        render_task_prompt(AgentRole::EmergencyPhysician, patient, StageContext{});
    CHECK(prompt.find(patient.narrative) != std::string::npos);
    CHECK(prompt.find(kInputPlaceholder) == std::string::npos);
    CHECK(prompt.find("REPORT ===") == std::string::npos);
}

TEST_CASE("triage prompt embeds the guide and both upstream reports verbatim") {
    PatientCase patient = sample_case();
    StageContext context;
    context.add(AgentRole::EmergencyPhysician, "PHYSICIAN-OUTPUT-alpha 123");
    context.add(AgentRole::Pharmacist, "PHARMACIST-OUTPUT-beta 456");
    std::string prompt = render_task_prompt(AgentRole::TriageNurse, patient, context);

    CHECK(prompt.find(render_guide()) != std::string::npos);
    CHECK(prompt.find("PHYSICIAN-OUTPUT-alpha 123") != std::string::npos);
    CHECK(prompt.find("PHARMACIST-OUTPUT-beta 456") != std::string::npos);
    CHECK(prompt.find("=== EMERGENCY PHYSICIAN REPORT ===") != std::string::npos);
    CHECK(prompt.find("=== PHARMACIST REPORT ===") != std::string::npos);
    // context comes after the task description
    CHECK(prompt.find(patient.narrative) < prompt.find("=== EMERGENCY PHYSICIAN REPORT ==="));
}

TEST_CASE("context violations") {
    PatientCase patient = sample_case();
    StageContext downstream;
    downstream.add(AgentRole::EdDoctorInCharge, "out");
    CHECK_THROWS_AS(render_task_prompt(AgentRole::TriageNurse, patient, downstream),
                    ContextViolationError);

    StageContext duplicated;
    duplicated.add(AgentRole::EmergencyPhysician, "a");
    duplicated.add(AgentRole::EmergencyPhysician, "b");
    CHECK_THROWS_AS(render_task_prompt(AgentRole::TriageNurse, patient, duplicated),
                    ContextViolationError);

    StageContext for_physician;
    for_physician.add(AgentRole::Pharmacist, "out");
    CHECK_THROWS_AS(render_task_prompt(AgentRole::EmergencyPhysician, patient, for_physician),
                    ContextViolationError);
}

TEST_CASE("ed doctor context accepts all three ancestors in order") {
    PatientCase patient = sample_case();
    StageContext context;
    context.add(AgentRole::EmergencyPhysician, "AAA");
    context.add(AgentRole::Pharmacist, "BBB");
    context.add(AgentRole::TriageNurse, "CCC");
    std::string prompt = render_task_prompt(AgentRole::EdDoctorInCharge, patient, context);
    std::size_t a = prompt.find("AAA");
    std::size_t b = prompt.find("BBB");
    std::size_t c = prompt.find("CCC");
    REQUIRE(a != std::string::npos);
    REQUIRE(b != std::string::npos);
    REQUIRE(c != std::string::npos);
    CHECK(a < b);
    CHECK(b < c);
}

TEST_CASE("placeholder substitution is single-pass over random narratives") {
    std::mt19937 rng(4242);
    static const char* pieces[] = {"fever",  "{input}", "cough\n", "pain ", "{input",
                                   "input}", "x{",      "}y",      "zebra", "42"};
    for (int i = 0; i < 300; ++i) {
        std::string narrative;
        int n = std::uniform_int_distribution<>(1, 8)(rng);
        for (int k = 0; k < n; ++k)
            narrative += pieces[std::uniform_int_distribution<>(0, 9)(rng)];
        if (trim(narrative).empty()) narrative = "x";
        PatientCase patient = make_case("r", narrative);
        for (AgentRole role : {AgentRole::EmergencyPhysician, AgentRole::Pharmacist,
                               AgentRole::EdDoctorInCharge}) {
            std::string prompt = render_task_prompt(role, patient, StageContext{});
            // the template's own placeholder is consumed; only copies that
            // arrived inside the narrative may remain
            CHECK(count_occurrences(prompt, kInputPlaceholder) ==
                  count_occurrences(narrative, kInputPlaceholder));
        }
    }
}

TEST_CASE("rendering is deterministic") {
    PatientCase patient = sample_case();
    StageContext context;
    context.add(AgentRole::EmergencyPhysician, "same output");
    context.add(AgentRole::Pharmacist, "same output 2");
    CHECK(render_task_prompt(AgentRole::TriageNurse, patient, context) ==
          render_task_prompt(AgentRole::TriageNurse, patient, context));
}

TEST_CASE("tool prompt policy strips or augments tool text") {
    PatientCase patient = sample_case();

    ToolPromptPolicy strip;
    strip.mode = ToolPromptPolicy::Mode::Strip;
    std::string stripped =
        render_task_prompt(AgentRole::EmergencyPhysician, patient, StageContext{}, strip);
    CHECK_FALSE(contains_ci(stripped, "search tool"));
    CHECK_FALSE(contains_ci(stripped, "rxnorm tool"));
    CHECK(stripped.find(patient.narrative) != std::string::npos);

    ToolPromptPolicy protocol;
    protocol.mode = ToolPromptPolicy::Mode::Protocol;
    protocol.tool_names = {"rxnorm_lookup", "web_search"};
    std::string augmented =
        render_task_prompt(AgentRole::EmergencyPhysician, patient, StageContext{}, protocol);
    CHECK(augmented.find("=== TOOL PROTOCOL ===") != std::string::npos);
    CHECK(augmented.find("TOOL_CALL <tool_name> <json-args>") != std::string::npos);
    CHECK(augmented.find("rxnorm_lookup") != std::string::npos);
    CHECK(augmented.find("Use the search tool") != std::string::npos); // verbatim kept

    std::string verbatim =
        render_task_prompt(AgentRole::EmergencyPhysician, patient, StageContext{});
    CHECK(verbatim.find("Use the search tool") != std::string::npos);
    CHECK(verbatim.find("=== TOOL PROTOCOL ===") == std::string::npos);
}
