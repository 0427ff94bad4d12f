#include "volcast/series.hpp"

#include <cmath>

#include "volcast/errors.hpp"

namespace volcast {

namespace {

void check_dates_increasing(const std::vector<Date>& dates, const char* what) {
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (!(dates[i - 1] < dates[i])) {
            throw Error::data("DatesNotIncreasing",
                              std::string(what) + ": dates must be strictly increasing at " + dates[i].to_string());
        }
    }
}

}  // namespace

void validate(const PriceSeries& series) {
    if (series.dates.size() != series.closes.size()) {
        throw Error::data("LengthMismatch", "price series: dates and closes differ in length");
    }
    if (series.size() < 2) {
        throw Error::data("SeriesTooShort", "price series: need at least two observations");
    }
    check_dates_increasing(series.dates, "price series");
    for (std::size_t i = 0; i < series.closes.size(); ++i) {
        if (!(series.closes[i] > 0.0) || !std::isfinite(series.closes[i])) {
            throw Error::data("NonPositivePrice",
                              "price series: close must be positive and finite on " + series.dates[i].to_string());
        }
    }
}

void validate(const VolatilitySeries& series) {
    if (series.dates.size() != series.values.size()) {
        throw Error::data("LengthMismatch", "volatility series: dates and values differ in length");
    }
    check_dates_increasing(series.dates, "volatility series");
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (series.values[i] < 0.0 || !std::isfinite(series.values[i])) {
            throw Error::data("NegativeVolatility",
                              "volatility series: value must be nonnegative on " + series.dates[i].to_string());
        }
    }
}

void validate(const SentimentSeries& series) {
    if (series.dates.size() != series.scores.size()) {
        throw Error::data("LengthMismatch", "sentiment series: dates and scores differ in length");
    }
    check_dates_increasing(series.dates, "sentiment series");
    for (std::size_t i = 0; i < series.scores.size(); ++i) {
        if (series.scores[i] < 0.0 || series.scores[i] > 1.0 || !std::isfinite(series.scores[i])) {
            throw Error::data("ScoreOutOfRange",
                              "sentiment series: score must lie in [0,1] on " + series.dates[i].to_string());
        }
    }
}

void validate(const SplitSpec& spec) {
    if (spec.boundary_date.has_value() == spec.train_fraction.has_value()) {
        throw Error::config("InvalidSplitSpec", "split spec: exactly one of boundary_date/train_fraction must be set");
    }
    if (spec.train_fraction && !(*spec.train_fraction > 0.0 && *spec.train_fraction <= 1.0)) {
        throw Error::config("InvalidSplitSpec", "split spec: train_fraction must lie in (0,1]");
    }
    if (spec.boundary_date && !spec.boundary_date->ok()) {
        throw Error::config("InvalidSplitSpec", "split spec: boundary_date is not a valid date");
    }
}

}  // namespace volcast
