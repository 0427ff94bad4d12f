#pragma once

#include <span>
#include <string>
#include <vector>

namespace volcast::eval {

/// One scored model: the machine analogue of one results-table row.
struct EvalReport {
    std::string model_name;
    double rmse = 0.0;
    double f_stat = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
};

struct FTestResult {
    double f_stat = 0.0;
    double p_value = 1.0;
    double slope = 0.0;
    double intercept = 0.0;
};

double rmse(std::span<const double> actual, std::span<const double> predicted);

/// OLS of actual on predicted; the overall-regression F-test against the
/// constant-mean model. p-values below 1e-12 are reported as exactly 0.
FTestResult regression_f_test(std::span<const double> actual, std::span<const double> predicted);

EvalReport score_model(const std::string& model_name, std::span<const double> actual,
                       std::span<const double> predicted);

/// CSV lines `model,rmse,f_stat,p_value,n` (header included).
std::string reports_to_csv(const std::vector<EvalReport>& reports);

/// Aligned text table with columns: Predictive model / RMSE / p-value.
/// Rows whose report is absent can be marked SKIPPED by the caller.
std::string reports_to_table(const std::vector<EvalReport>& reports,
                             const std::vector<std::string>& skipped = {});

}  // namespace volcast::eval
