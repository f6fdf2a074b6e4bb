#pragma once

#include <array>
#include <string>
#include <vector>

#include "edcdss/types.hpp"

namespace edcdss {

/// One level of the KTAS guide as embedded in the Triage Nurse task prompt.
struct KtasGuideEntry {
    int level;
    std::string description;
    std::vector<std::string> examples;
    std::string priority;
};

/// The five guide entries, levels 1..5 in order.
const std::array<KtasGuideEntry, 5>& ktas_guide();

/// Renders the guide block exactly as it appears inside the Triage Nurse
/// task template, including the <KTAS guide> delimiters. Pure function;
/// byte-identical across calls and pinned by digest in tests.
std::string render_guide();

/// Deterministic first-match rule cascade over structured findings,
/// anchored to the guide examples. Advisory only: used for test oracles
/// and sanity warnings, never to override an agent's classification.
KtasLevel advisory_classify(const StructuredFindings& findings);

} // namespace edcdss
