#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pettiest/core_stats.hpp"
#include "pettiest/simulation.hpp"

namespace pettiest {

enum class ReportFormat { csv, json };

ReportFormat parse_format(std::string_view name);

struct ExperimentReport {
    SimConfig config;
    std::vector<DensityRow> density;
    /// Empty when the experiment has a single replication.
    std::vector<BiasVariance> bias_variance;
    std::vector<MethodRunResult> runs;
    /// Adds per-run wall-clock times to the JSON output (makes it non-reproducible).
    bool include_timings = false;
};

ExperimentReport make_report(const SimConfig& config, std::vector<MethodRunResult> runs);

/// CSV holds the two summary tables; JSON additionally holds the config and
/// every run. Doubles are written with 17 significant digits.
std::string emit_report(const ExperimentReport& report, ReportFormat format);

/// Summary tables as read back from an emitted report.
struct ReportTables {
    struct Density {
        std::string method;
        std::vector<double> values;
        friend bool operator==(const Density&, const Density&) = default;
    };
    struct Spread {
        std::string method;
        double variance = 0.0;
        double bias = 0.0;
        friend bool operator==(const Spread&, const Spread&) = default;
    };
    std::vector<Density> density;
    std::vector<Spread> bias_variance;

    friend bool operator==(const ReportTables&, const ReportTables&) = default;
};

ReportTables tables_of(const ExperimentReport& report);
ReportTables parse_report_csv(std::string_view text);
ReportTables parse_report_json(std::string_view text);

/// Result of running one method on a user-supplied dataset.
struct AnalysisResult {
    Method method = Method::prim;
    double beta = 0.0;
    double alpha = 0.0;
    std::size_t p_prime = 0;
    std::size_t steps = 0;
    /// Run with covering report, working data and selection kept.
    MethodRunResult run;
};

AnalysisResult analyze_dataset(const Dataset& data, Method method, double beta, double alpha,
                               std::size_t p_prime, std::size_t steps);
std::string emit_analysis(const AnalysisResult& analysis, ReportFormat format);

std::string emit_optimality(const OptimalityReport& report);

/// Header row of column names, then one observation per row.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv_file(const std::string& path);
std::string write_dataset_csv(const Dataset& data);

std::string format_double(double v);

}  // namespace pettiest
