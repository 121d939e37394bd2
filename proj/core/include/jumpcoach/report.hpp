#pragma once

#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "jumpcoach/session.hpp"

namespace jumpcoach {

enum class ReportFormat { Json, Text };

std::optional<ReportFormat> reportFormatFromString(std::string_view s);

nlohmann::ordered_json toJson(const SessionReport& report);
/// Inverse of toJson; throws SchemaViolation on malformed input.
SessionReport sessionReportFromJson(const nlohmann::json& j);

nlohmann::ordered_json toJson(const JumpEntry& jump);
JumpEntry jumpEntryFromJson(const nlohmann::json& j);

/// {"jumps": [...]} for a list of analysed jumps.
nlohmann::ordered_json jumpReportJson(std::span<const JumpEntry> jumps);

/// JSON (two-space indent, trailing newline) or a plain ASCII summary.
std::string renderReport(const SessionReport& report, ReportFormat format);
std::string renderJumpReport(std::span<const JumpEntry> jumps, ReportFormat format);

}  // namespace jumpcoach
