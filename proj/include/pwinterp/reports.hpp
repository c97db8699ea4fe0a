#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "pwinterp/analysis.hpp"

namespace pwinterp {

/// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

nlohmann::json to_json(const HypothesisReport& report);
/// Header "alpha,metric,value"; one row per (alpha, metric).
std::string to_csv(const HypothesisReport& report);

nlohmann::json to_json(const ConvergenceRecord& record);
nlohmann::json to_json(const SweepResult& result);
/// Header "alpha,sup_error,l2_error,bound,c_fit_ratio,flags".
std::string to_csv(const SweepResult& result);

/// Writes through a sibling temporary and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace pwinterp
