#pragma once

#include <filesystem>
#include <utility>

#include "volcast/series.hpp"

namespace volcast::marketdata {

/// Reads a price CSV with header `date,close`, ISO-8601 dates, one row per
/// trading day. Rows are sorted by date; duplicate dates and non-positive
/// closes are rejected.
PriceSeries load_prices(const std::filesystem::path& path);

/// values[t] = (ln(closes[t+1]/closes[t]))^2, dated at the later close.
VolatilitySeries squared_log_returns(const PriceSeries& prices);

/// Log returns ln(closes[t+1]/closes[t]), dated at the later close. The
/// squared series above is its pointwise square.
std::vector<double> log_returns(const PriceSeries& prices);

/// Splits into (train, test); train holds every date <= the boundary. Both
/// sides must be nonempty.
std::pair<VolatilitySeries, VolatilitySeries> chronological_split(const VolatilitySeries& series,
                                                                  const SplitSpec& spec);

/// Restricts both series to the intersection of their calendars.
std::pair<VolatilitySeries, SentimentSeries> align_calendars(const VolatilitySeries& vol,
                                                             const SentimentSeries& sent);

}  // namespace volcast::marketdata
