#pragma once

#include <string>

#include "edcdss/reports.hpp"

namespace edcdss {

// All parsers are total: any input (including random bytes) yields a value.
// Header matching is case-insensitive and tolerant of leading markdown and
// list markers; missing sections yield empty fields.

/// Scans for the first "KTAS CLASSIFICATION[ REVIEW]:" line and parses its
/// value: a bare 1-5 yields Exact, "a or b" yields a normalized Range,
/// anything else (or no header) yields NotApplicable. The first header
/// occurrence wins over later restatements.
KtasPrediction parse_ktas_line(const std::string& text);

TriageAssessment parse_triage(const std::string& text);
DiagnosisReport parse_diagnosis(const std::string& text);
MedicationReport parse_medication(const std::string& text);
ManagementDecision parse_management(const std::string& text);

} // namespace edcdss
