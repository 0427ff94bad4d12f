#include "volcast/marketdata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "volcast/errors.hpp"

namespace volcast::marketdata {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

PriceSeries load_prices(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error::data("MissingInput", "cannot open price file: " + path.string());
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw Error::data("EmptyFile", "price file is empty: " + path.string());
    }
    if (strip_cr(line) != "date,close") {
        throw Error::data("MalformedRow", "price file: expected header 'date,close' in " + path.string());
    }

    struct Row {
        Date date;
        double close;
    };
    std::vector<Row> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error::data("MalformedRow", "price file line " + std::to_string(lineno) + ": missing comma");
        }
        const auto date = Date::try_parse(line.substr(0, comma));
        if (!date) {
            throw Error::data("MalformedRow",
                              "price file line " + std::to_string(lineno) + ": bad date '" + line.substr(0, comma) + "'");
        }
        double close = 0.0;
        try {
            std::size_t consumed = 0;
            close = std::stod(line.substr(comma + 1), &consumed);
            if (consumed != line.size() - comma - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error::data("MalformedRow", "price file line " + std::to_string(lineno) + ": bad close value");
        }
        if (!(close > 0.0) || !std::isfinite(close)) {
            throw Error::data("NonPositivePrice", "price file: non-positive close on " + date->to_string());
        }
        rows.push_back({*date, close});
    }
    if (rows.empty()) {
        throw Error::data("EmptyFile", "price file has no data rows: " + path.string());
    }

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].date == rows[i - 1].date) {
            throw Error::data("DuplicateDate", "price file: duplicate date " + rows[i].date.to_string());
        }
    }

    PriceSeries series;
    series.dates.reserve(rows.size());
    series.closes.reserve(rows.size());
    for (const Row& r : rows) {
        series.dates.push_back(r.date);
        series.closes.push_back(r.close);
    }
    validate(series);
    return series;
}

std::vector<double> log_returns(const PriceSeries& prices) {
    if (prices.size() < 2) {
        throw Error::data("SeriesTooShort", "log returns need at least two prices");
    }
    std::vector<double> out(prices.size() - 1);
    for (std::size_t t = 0; t + 1 < prices.size(); ++t) {
        out[t] = std::log(prices.closes[t + 1] / prices.closes[t]);
    }
    return out;
}

VolatilitySeries squared_log_returns(const PriceSeries& prices) {
    const auto returns = log_returns(prices);
    VolatilitySeries vol;
    vol.dates.assign(prices.dates.begin() + 1, prices.dates.end());
    vol.values.resize(returns.size());
    for (std::size_t t = 0; t < returns.size(); ++t) {
        vol.values[t] = returns[t] * returns[t];
    }
    return vol;
}

std::pair<VolatilitySeries, VolatilitySeries> chronological_split(const VolatilitySeries& series,
                                                                 const SplitSpec& spec) {
    validate(spec);
    const std::size_t n = series.size();
    std::size_t n_train = 0;
    if (spec.train_fraction) {
        n_train = static_cast<std::size_t>(std::floor(*spec.train_fraction * static_cast<double>(n)));
    } else {
        n_train = static_cast<std::size_t>(
            std::upper_bound(series.dates.begin(), series.dates.end(), *spec.boundary_date) - series.dates.begin());
    }
    if (n_train == 0 || n_train >= n) {
        throw Error::data("DegenerateSplit", "split leaves an empty train or test side");
    }

    VolatilitySeries train, test;
    train.dates.assign(series.dates.begin(), series.dates.begin() + static_cast<std::ptrdiff_t>(n_train));
    train.values.assign(series.values.begin(), series.values.begin() + static_cast<std::ptrdiff_t>(n_train));
    test.dates.assign(series.dates.begin() + static_cast<std::ptrdiff_t>(n_train), series.dates.end());
    test.values.assign(series.values.begin() + static_cast<std::ptrdiff_t>(n_train), series.values.end());
    return {std::move(train), std::move(test)};
}

std::pair<VolatilitySeries, SentimentSeries> align_calendars(const VolatilitySeries& vol,
                                                             const SentimentSeries& sent) {
    VolatilitySeries vol_out;
    SentimentSeries sent_out;
    // Both calendars are sorted, so a single merge pass finds the intersection.
    std::size_t i = 0, j = 0;
    while (i < vol.size() && j < sent.size()) {
        if (vol.dates[i] < sent.dates[j]) {
            ++i;
        } else if (sent.dates[j] < vol.dates[i]) {
            ++j;
        } else {
            vol_out.dates.push_back(vol.dates[i]);
            vol_out.values.push_back(vol.values[i]);
            sent_out.dates.push_back(sent.dates[j]);
            sent_out.scores.push_back(sent.scores[j]);
            ++i;
            ++j;
        }
    }
    if (vol_out.size() == 0) {
        throw Error::data("EmptyIntersection", "volatility and sentiment calendars share no dates");
    }
    return {std::move(vol_out), std::move(sent_out)};
}

}  // namespace volcast::marketdata
