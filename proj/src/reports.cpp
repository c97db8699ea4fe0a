#include "pwinterp/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pwinterp/error.hpp"

namespace pwinterp {
namespace {

nlohmann::json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

void row(std::ostringstream& os, double alpha, const char* metric, const std::string& value) {
    os << format_number(alpha) << ',' << metric << ',' << value << '\n';
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json to_json(const HypothesisReport& report) {
    nlohmann::json doc;
    doc["kernel"] = report.kernel;
    doc["ladder"] = report.ladder;
    doc["verdicts"] = {{"A1", to_string(report.a1)}, {"A2", to_string(report.a2)}, {"A3", to_string(report.a3)},
                       {"H1", to_string(report.h1)}, {"H2", to_string(report.h2)}, {"H3", to_string(report.h3)},
                       {"overall", to_string(report.overall())}};
    doc["h2_constant"] = number_or_null(report.h2_constant);
    doc["options"] = {{"j_max", report.options.j_max},
                      {"tail_rel_tol", report.options.tail_rel_tol},
                      {"grid_points", report.options.grid_points},
                      {"certify_bands", report.options.certify_bands},
                      {"h3_points", report.options.h3_points},
                      {"h2_limit", report.options.h2_limit},
                      {"h3_threshold", report.options.h3_threshold}};
    doc["notes"] = report.notes;
    auto& records = doc["records"] = nlohmann::json::array();
    for (const auto& r : report.records) {
        double h3_max = 0.0;
        for (double v : r.h3_ratios) h3_max = std::max(h3_max, v);
        nlohmann::json rec{{"alpha", r.alpha},
                           {"m_alpha", number_or_null(r.m_alpha)},
                           {"grid_floor", number_or_null(r.grid_floor)},
                           {"negative_mass", number_or_null(r.negative_mass)},
                           {"core_integral", number_or_null(r.core_integral)},
                           {"l1_bound", number_or_null(r.l1_bound)},
                           {"tail_sum", number_or_null(r.tails.sum)},
                           {"tail_terms", r.tails.terms},
                           {"tail_first_omitted", number_or_null(r.tails.first_omitted)},
                           {"tail_converged", r.tails.converged},
                           {"h2_ratio", number_or_null(r.h2_ratio)},
                           {"certificate_slack", number_or_null(r.certificate_slack)},
                           {"h3_at_zero", number_or_null(r.h3_at_zero)},
                           {"h3_max", number_or_null(h3_max)},
                           {"A1", to_string(r.a1)},
                           {"A2", to_string(r.a2)},
                           {"A3", to_string(r.a3)}};
        if (!r.error.empty()) rec["error"] = r.error;
        records.push_back(std::move(rec));
    }
    return doc;
}

std::string to_csv(const HypothesisReport& report) {
    std::ostringstream os;
    os << "alpha,metric,value\n";
    for (const auto& r : report.records) {
        double h3_max = 0.0;
        for (double v : r.h3_ratios) h3_max = std::max(h3_max, v);
        row(os, r.alpha, "m_alpha", format_number(r.m_alpha));
        row(os, r.alpha, "grid_floor", format_number(r.grid_floor));
        row(os, r.alpha, "negative_mass", format_number(r.negative_mass));
        row(os, r.alpha, "core_integral", format_number(r.core_integral));
        row(os, r.alpha, "l1_bound", format_number(r.l1_bound));
        row(os, r.alpha, "tail_sum", format_number(r.tails.sum));
        row(os, r.alpha, "tail_terms", std::to_string(r.tails.terms));
        row(os, r.alpha, "h2_ratio", format_number(r.h2_ratio));
        row(os, r.alpha, "certificate_slack", format_number(r.certificate_slack));
        row(os, r.alpha, "h3_at_zero", format_number(r.h3_at_zero));
        row(os, r.alpha, "h3_max", format_number(h3_max));
        row(os, r.alpha, "A1", std::string(to_string(r.a1)));
        row(os, r.alpha, "A2", std::string(to_string(r.a2)));
        row(os, r.alpha, "A3", std::string(to_string(r.a3)));
    }
    return os.str();
}

nlohmann::json to_json(const ConvergenceRecord& r) {
    nlohmann::json doc{{"alpha", r.alpha},
                       {"sup_error", number_or_null(r.sup_error)},
                       {"sup_error_full", number_or_null(r.sup_error_full)},
                       {"l2_error", number_or_null(r.l2_error)},
                       {"bound", number_or_null(r.bound)},
                       {"c_fit_ratio", number_or_null(r.c_fit_ratio)},
                       {"node_residual", number_or_null(r.node_residual)},
                       {"condition", number_or_null(r.condition)},
                       {"truncation_floor", number_or_null(r.truncation_floor)},
                       {"flags", describe_flags(r.flags)}};
    if (!r.error.empty()) doc["error"] = r.error;
    return doc;
}

nlohmann::json to_json(const SweepResult& result) {
    nlohmann::json doc;
    doc["c_fit"] = number_or_null(result.c_fit);
    doc["c_fit_alpha"] = result.c_fit_alpha ? nlohmann::json(*result.c_fit_alpha) : nlohmann::json(nullptr);
    unsigned any = 0;
    auto& records = doc["records"] = nlohmann::json::array();
    for (const auto& r : result.records) {
        records.push_back(to_json(r));
        any |= r.flags;
    }
    doc["flags"] = describe_flags(any);
    return doc;
}

std::string to_csv(const SweepResult& result) {
    std::ostringstream os;
    os << "alpha,sup_error,l2_error,bound,c_fit_ratio,flags\n";
    for (const auto& r : result.records)
        os << format_number(r.alpha) << ',' << format_number(r.sup_error) << ',' << format_number(r.l2_error) << ','
           << format_number(r.bound) << ',' << format_number(r.c_fit_ratio) << ',' << describe_flags(r.flags) << '\n';
    return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + temp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write to " + temp.string() + " failed");
    }
    fs::rename(temp, target);
}

}  // namespace pwinterp
