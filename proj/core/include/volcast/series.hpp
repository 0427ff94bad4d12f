#pragma once

#include <optional>
#include <vector>

#include "volcast/dates.hpp"

namespace volcast {

/// Daily closing prices for one index. Dates strictly increasing, closes > 0.
struct PriceSeries {
    std::vector<Date> dates;
    std::vector<double> closes;

    std::size_t size() const { return dates.size(); }
};

/// Dated squared-log-return observations (the volatility proxy).
struct VolatilitySeries {
    std::vector<Date> dates;
    std::vector<double> values;

    std::size_t size() const { return dates.size(); }
};

/// Dated daily sentiment scores in [0, 1].
struct SentimentSeries {
    std::vector<Date> dates;
    std::vector<double> scores;

    std::size_t size() const { return dates.size(); }
};

/// Chronological train/test split, given either as the last training date or
/// as the fraction of observations assigned to training. Exactly one is set.
struct SplitSpec {
    std::optional<Date> boundary_date;
    std::optional<double> train_fraction;

    static SplitSpec at_date(Date boundary) { return {boundary, std::nullopt}; }
    static SplitSpec at_fraction(double fraction) { return {std::nullopt, fraction}; }
};

void validate(const PriceSeries& series);
void validate(const VolatilitySeries& series);
void validate(const SentimentSeries& series);
void validate(const SplitSpec& spec);

}  // namespace volcast
