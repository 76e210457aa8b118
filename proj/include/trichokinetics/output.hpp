#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "trichokinetics/scenario.hpp"

namespace tricho {

/// Filesystem problem (unreadable input, unwritable output path).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SummaryFormat { table, json, csv };

/// Parse "table" | "json" | "csv" (std::invalid_argument otherwise).
SummaryFormat parse_summary_format(const std::string& text);

/// How emit_outputs renders results.
struct EmitOptions {
    std::string out_dir;                         ///< empty: no files written
    SummaryFormat format{SummaryFormat::table};  ///< stdout summary format
    bool with_z{false};                          ///< extra Z column in CSVs
};

/// Trajectory as CSV with header "t,X,B,s,P" (plus ",Z" with with_z).
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory,
                          const ModelParams& params, bool with_z);

/// Summaries as JSON: a single result renders as one flat map, several as
/// a name-keyed map of flat maps. Field order is fixed; non-finite values
/// render as null.
std::string summary_json(const std::vector<RunResult>& results);

/// Summaries as CSV, one row per run, header first.
std::string summary_csv(const std::vector<RunResult>& results);

/// Summaries as an aligned text table with a verdict column.
std::string summary_table(const std::vector<RunResult>& results);

/**
 * @brief Render summaries to @p os and, when out_dir is set, write one
 * trajectory CSV per run plus a summary JSON file.
 *
 * Files: <out_dir>/<run name>.csv and <out_dir>/<name of the first-level
 * run or sweep>.summary.json. Returns the written paths. Empty result
 * sets throw std::invalid_argument; unwritable paths throw IoError
 * naming the path.
 */
std::vector<std::string> emit_outputs(const std::vector<RunResult>& results,
                                      const std::string& collection_name,
                                      const EmitOptions& options,
                                      std::ostream& os);

} // namespace tricho
