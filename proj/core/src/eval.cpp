#include "volcast/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "volcast/errors.hpp"
#include "volcast/stats.hpp"

namespace volcast::eval {

namespace {

void check_pair(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw Error::data("LengthMismatch", "actual and predicted sequences differ in length");
    }
    if (actual.empty()) {
        throw Error::data("EmptySequence", "cannot score empty sequences");
    }
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (!std::isfinite(actual[i]) || !std::isfinite(predicted[i])) {
            throw Error::numeric("NonFiniteValue", "sequences must be finite");
        }
    }
}

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4e", v);
    return buf;
}

}  // namespace

double rmse(std::span<const double> actual, std::span<const double> predicted) {
    check_pair(actual, predicted);
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = actual[i] - predicted[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(actual.size()));
}

FTestResult regression_f_test(std::span<const double> actual, std::span<const double> predicted) {
    check_pair(actual, predicted);
    const std::size_t n = actual.size();
    if (n < 3) {
        throw Error::data("SeriesTooShort", "F-test needs at least 3 observations");
    }

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += predicted[i];
        mean_y += actual[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = predicted[i] - mean_x;
        const double dy = actual[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) {
        throw Error::numeric("ZeroVariancePredictor", "predictions are constant; F-test undefined");
    }

    FTestResult r;
    r.slope = sxy / sxx;
    r.intercept = mean_y - r.slope * mean_x;
    const double ess = r.slope * sxy;  // explained sum of squares
    const double rss = std::max(0.0, syy - ess);
    const auto dof = static_cast<double>(n - 2);
    if (rss <= 0.0) {
        // Perfect (affine) fit: infinite F, zero tail.
        r.f_stat = std::numeric_limits<double>::infinity();
        r.p_value = 0.0;
        return r;
    }
    r.f_stat = ess / (rss / dof);
    r.p_value = stats::f_upper_tail(r.f_stat, 1, static_cast<int>(n - 2));
    if (r.p_value < 1e-12) r.p_value = 0.0;
    return r;
}

EvalReport score_model(const std::string& model_name, std::span<const double> actual,
                       std::span<const double> predicted) {
    EvalReport report;
    report.model_name = model_name;
    report.rmse = rmse(actual, predicted);
    const auto f = regression_f_test(actual, predicted);
    report.f_stat = f.f_stat;
    report.p_value = f.p_value;
    report.n = actual.size();
    return report;
}

std::string reports_to_csv(const std::vector<EvalReport>& reports) {
    std::ostringstream out;
    out << "model,rmse,f_stat,p_value,n\n";
    for (const auto& r : reports) {
        // Model names may contain commas (GARCH(1,1)); quote per CSV rules.
        const bool needs_quotes = r.model_name.find(',') != std::string::npos;
        if (needs_quotes) {
            out << '"' << r.model_name << '"';
        } else {
            out << r.model_name;
        }
        char line[192];
        std::snprintf(line, sizeof(line), ",%.10e,%.10e,%.10e,%zu\n", r.rmse, r.f_stat, r.p_value, r.n);
        out << line;
    }
    return out.str();
}

std::string reports_to_table(const std::vector<EvalReport>& reports, const std::vector<std::string>& skipped) {
    std::size_t width = std::string("Predictive model").size();
    for (const auto& r : reports) width = std::max(width, r.model_name.size());
    for (const auto& name : skipped) width = std::max(width, name.size());

    std::ostringstream out;
    out << "Predictive model" << std::string(width - 16 + 2, ' ') << "RMSE          p-value\n";
    for (const auto& r : reports) {
        out << r.model_name << std::string(width - r.model_name.size() + 2, ' ') << format_sci(r.rmse) << "    ";
        char pbuf[32];
        std::snprintf(pbuf, sizeof(pbuf), "%.4f", r.p_value);
        out << pbuf << (r.p_value < 0.05 ? " < 0.05" : "") << "\n";
    }
    for (const auto& name : skipped) {
        out << name << std::string(width - name.size() + 2, ' ') << "SKIPPED\n";
    }
    return out.str();
}

}  // namespace volcast::eval
