#pragma once

#include <string>
#include <vector>

#include "corename/analytics.hpp"
#include "json.hpp"

namespace corename {

/// report.json document: per-repository stats plus a cross-repository
/// summary (mean, median, min, max over repositories with data). NoData is
/// written as the string "NoData".
nlohmann::json report_to_json(const std::vector<RepoStats>& repos);
/// Reads the per-repository part back; the summary is recomputable.
std::vector<RepoStats> report_from_json(const nlohmann::json& doc);

/// Writes report.json and the CSV tables into `out_dir`; SVG charts only
/// when `plots` is set. Throws Error(IoError).
void emit_report(const std::vector<RepoStats>& repos, const std::string& out_dir, bool plots);

}  // namespace corename
