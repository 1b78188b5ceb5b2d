#pragma once

#include "fano/exclusion.hpp"

#include "json.hpp"

#include <string>
#include <string_view>

namespace fano {

inline constexpr const char* kReportSchema = "fano-rigidity-report/1";

/// Canonical JSON form of a report. Timing appears only when measured.
ojson report_json(const Report& r, const FanoCandidate& c);
/// Human-readable report rendered from the JSON form.
std::string render_text(const ojson& report);
/// One verdict with its full certificate, rendered from JSON.
std::string render_verdict_text(const ojson& verdict);

/// 0 SUPERRIGID, 2 UNRESOLVED, 1 INVALID-INPUT.
int exit_code(OverallVerdict v);

/// Registry listing, one line per entry.
std::string registry_listing();

/// Index of the verdict whose center matches "curves", "smooth-points",
/// a type such as "1/5(1,2,3)", or an index such as "1/5".
std::optional<std::size_t> find_center(const Report& r, std::string_view center);

}  // namespace fano
