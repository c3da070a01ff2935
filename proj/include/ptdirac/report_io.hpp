#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ptdirac/pipeline.hpp"

namespace ptdirac::cli {

/// %.17g rendering used by every output table.
std::string format_number(double v);

std::string spectrum_csv(const RunReport& report);
/// Whole spectrum: index, re_e, im_e, classification.
std::string eigenvalues_csv(const RunReport& report);
std::string gram_csv(const RunReport& report);
std::string balance_csv(const RunReport& report);
std::string continuity_csv(const RunReport& report);
std::string report_json(const RunReport& report);

std::string sweep_csv(const SweepResult& result);
std::string sweep_json(const SweepResult& result);

/// Writes the tables of one run into `dir` (created if needed) and returns
/// the written paths in a fixed order.
std::vector<std::filesystem::path> write_outputs(const RunReport& report, const std::filesystem::path& dir,
                                                 OutputFormat format);

/// Writes sweep_summary.{csv,json} plus one subdirectory per run.
std::vector<std::filesystem::path> write_sweep(const SweepResult& result, const std::filesystem::path& dir,
                                               OutputFormat format);

}  // namespace ptdirac::cli
