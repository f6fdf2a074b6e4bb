#pragma once

#include <string>
#include <utility>
#include <vector>

#include "edcdss/types.hpp"

namespace edcdss {

/// Verbatim prompt texts for one agent role. The task description template
/// contains the literal placeholder "{input}" exactly once.
struct PromptAsset {
    AgentRole role;
    std::string goal;
    std::string backstory;
    std::string task_description_template;
    std::string expected_output_template;
};

/// The checked-in asset for a role. Texts are embedded in the library;
/// the files under assets/prompts/ are the same bytes and are digest-pinned.
const PromptAsset& prompt_asset(AgentRole role);

/// Raw outputs of completed upstream stages, in pipeline order.
struct StageContext {
    std::vector<std::pair<AgentRole, std::string>> entries;

    void add(AgentRole role, std::string raw_output) {
        entries.emplace_back(role, std::move(raw_output));
    }
};

/// Roles whose output may legally appear in `role`'s context (its
/// ancestors in the pipeline DAG), in fixed injection order.
std::vector<AgentRole> context_roles(AgentRole role);

/// Role title + goal + backstory in a fixed layout (system channel).
std::string render_system_prompt(AgentRole role);

/// How tool-related template text is treated when rendering a task prompt.
struct ToolPromptPolicy {
    enum class Mode {
        Verbatim, // templates untouched (canonical form)
        Strip,    // drop lines that mention the search/RxNorm tools
        Protocol, // verbatim plus the TOOL_CALL protocol block
    };
    Mode mode = Mode::Verbatim;
    std::vector<std::string> tool_names; // listed in the protocol block
};

/// Renders the task prompt: "{input}" replaced by the case narrative,
/// upstream outputs appended under "=== <ROLE> REPORT ===" headers, then
/// the expected-output template. Throws ContextViolationError when the
/// context holds a role that is not an ancestor of `role`.
std::string render_task_prompt(AgentRole role, const PatientCase& patient,
                               const StageContext& context,
                               const ToolPromptPolicy& policy = {});

/// Stable id -> text of every prompt asset (goal/backstory/task/expected
/// per role, plus the KTAS guide). Used for digest pinning and dumping.
std::vector<std::pair<std::string, std::string>> prompt_asset_texts();

/// The line that introduces one upstream report inside a task prompt.
std::string context_header(AgentRole role);

inline constexpr const char* kInputPlaceholder = "{input}";

} // namespace edcdss
