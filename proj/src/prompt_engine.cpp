#include "edcdss/prompt_engine.hpp"

#include <algorithm>
#include <sstream>

#include "edcdss/text_util.hpp"

namespace edcdss {

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

bool mentions_tool(const std::string& line) {
    return contains_ci(line, "search tool") || contains_ci(line, "rxnorm tool");
}

std::string strip_tool_lines(const std::string& text) {
    std::ostringstream out;
    bool first = true;
    for (const auto& line : split_lines(text)) {
        if (mentions_tool(line)) continue;
        if (!first) out << '\n';
        out << line;
        first = false;
    }
    return out.str();
}

std::string protocol_block(const std::vector<std::string>& tool_names) {
    std::ostringstream out;
    out << "=== TOOL PROTOCOL ===\n";
    out << "You may invoke a tool at any point by emitting a line of the form:\n";
    out << "TOOL_CALL <tool_name> <json-args>\n";
    out << "Available tools:";
    if (tool_names.empty()) {
        out << " none";
    } else {
        for (std::size_t i = 0; i < tool_names.size(); ++i)
            out << (i == 0 ? " " : ", ") << tool_names[i];
    }
    out << "\n";
    out << "Each result is returned to you under a \"=== TOOL RESULT ===\" section; "
           "continue your report afterwards and finish without tool-call lines.";
    return out.str();
}

} // namespace

std::vector<AgentRole> context_roles(AgentRole role) {
    switch (role) {
    case AgentRole::EmergencyPhysician:
    case AgentRole::Pharmacist:
        return {};
    case AgentRole::TriageNurse:
        return {AgentRole::EmergencyPhysician, AgentRole::Pharmacist};
    case AgentRole::EdDoctorInCharge:
        return {AgentRole::EmergencyPhysician, AgentRole::Pharmacist, AgentRole::TriageNurse};
    }
    return {};
}

std::string render_system_prompt(AgentRole role) {
    const PromptAsset& asset = prompt_asset(role);
    std::ostringstream out;
    out << "Role: " << role_title(role) << "\n\n";
    out << "Goal: " << asset.goal << "\n\n";
    out << "Backstory: " << asset.backstory;
    return out.str();
}

std::string context_header(AgentRole role) {
    return "=== " + upper(role_title(role)) + " REPORT ===";
}

std::string render_task_prompt(AgentRole role, const PatientCase& patient,
                               const StageContext& context, const ToolPromptPolicy& policy) {
    const std::vector<AgentRole> allowed = context_roles(role);
    std::vector<AgentRole> seen;
    for (const auto& [ctx_role, _] : context.entries) {
        if (std::find(allowed.begin(), allowed.end(), ctx_role) == allowed.end())
            throw ContextViolationError(std::string(role_key(ctx_role)) +
                                        " is not an upstream stage of " +
                                        std::string(role_key(role)));
        if (std::find(seen.begin(), seen.end(), ctx_role) != seen.end())
            throw ContextViolationError(std::string(role_key(ctx_role)) +
                                        " appears twice in the stage context");
        seen.push_back(ctx_role);
    }

    const PromptAsset& asset = prompt_asset(role);
    std::string description = asset.task_description_template;
    std::string expected = asset.expected_output_template;
    if (policy.mode == ToolPromptPolicy::Mode::Strip) {
        description = strip_tool_lines(description);
        expected = strip_tool_lines(expected);
    }

    std::ostringstream out;
    out << replace_all(description, kInputPlaceholder, patient.narrative);
    for (const auto& [ctx_role, raw_output] : context.entries)
        out << "\n\n" << context_header(ctx_role) << "\n" << raw_output;
    if (policy.mode == ToolPromptPolicy::Mode::Protocol)
        out << "\n\n" << protocol_block(policy.tool_names);
    out << "\n\nExpected output:\n" << expected;
    return out.str();
}

} // namespace edcdss
