// Regenerates the bundled synthetic fixture: a seeded GARCH(1,1)-driven
// price path over a weekday calendar plus a marker-token headline corpus
// whose tokens encode the next trading day's index direction. Everything is
// deterministic for the pinned seed, so the committed files can always be
// reproduced bit-for-bit.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "volcast/dates.hpp"
#include "volcast/garch.hpp"
#include "volcast/rng.hpp"

namespace {

constexpr std::uint64_t kFixtureSeed = 7;
constexpr std::size_t kTradingDays = 1250;

const std::vector<std::string> kUpMarkers = {"rally",  "surge",  "gain",   "bullish",
                                             "record", "upbeat", "strong", "optimism"};
const std::vector<std::string> kDownMarkers = {"selloff", "plunge", "slump", "bearish",
                                               "fear",    "losses", "weak",  "turmoil"};
const std::vector<std::string> kFillers = {"market", "stocks", "index",   "trading", "investors", "session",
                                           "shares", "wall",   "street",  "report",  "data",      "outlook",
                                           "quarter", "earnings", "global", "economy", "policy",    "rates",
                                           "oil",    "tech",   "banks",   "futures"};
const std::vector<std::string> kGlue = {"the", "on", "as", "in", "and", "to", "of", "after", "amid", "over"};

std::string make_headline(volcast::Rng& rng, int label) {
    const auto& markers = label == 1 ? kUpMarkers : kDownMarkers;
    const auto n_tokens = 7 + static_cast<int>(rng.below(4));
    const auto n_markers = 2 + static_cast<int>(rng.below(2));

    // Marker positions first, fillers and glue around them.
    std::vector<int> is_marker(static_cast<std::size_t>(n_tokens), 0);
    int placed = 0;
    while (placed < n_markers) {
        const auto pos = rng.below(static_cast<std::uint64_t>(n_tokens));
        if (!is_marker[pos]) {
            is_marker[pos] = 1;
            ++placed;
        }
    }

    std::string out;
    for (int t = 0; t < n_tokens; ++t) {
        const std::string* word;
        if (is_marker[static_cast<std::size_t>(t)]) {
            word = &markers[rng.below(markers.size())];
        } else if (rng.uniform() < 0.3) {
            word = &kGlue[rng.below(kGlue.size())];
        } else {
            word = &kFillers[rng.below(kFillers.size())];
        }
        if (!out.empty()) out.push_back(' ');
        out += *word;
    }
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regenerate the bundled synthetic fixture"};
    std::string out_dir = "data/fixture";
    int headlines_per_day = 4;
    std::uint64_t seed = kFixtureSeed;
    app.add_option("--out-dir", out_dir, "directory for prices.csv and headlines.csv");
    app.add_option("--headlines-per-day", headlines_per_day, "headline count per trading day");
    app.add_option("--seed", seed, "generator seed (the committed fixture uses the default)");
    CLI11_PARSE(app, argc, argv);

    std::filesystem::create_directories(out_dir);

    // Volatility-clustered daily returns. The ARCH weight is kept high enough
    // that squared returns show clear first-order autocorrelation at sample
    // sizes this small, while the fourth moment stays finite.
    volcast::garch::GarchParams params;
    params.alpha0 = 5e-6;
    params.alphas = {0.18};
    params.betas = {0.75};
    const auto returns = volcast::garch::simulate(params, kTradingDays - 1, seed);

    std::vector<volcast::Date> dates;
    volcast::Date d{2012, 1, 2};  // a Monday
    while (dates.size() < kTradingDays) {
        if (!volcast::is_weekend(d)) dates.push_back(d);
        d = d.plus_days(1);
    }

    std::vector<double> closes(kTradingDays);
    closes[0] = 1000.0;
    for (std::size_t t = 1; t < kTradingDays; ++t) {
        closes[t] = closes[t - 1] * std::exp(returns[t - 1]);
    }

    {
        std::ofstream out(std::filesystem::path(out_dir) / "prices.csv", std::ios::binary);
        out << "date,close\n";
        char buf[40];
        for (std::size_t t = 0; t < kTradingDays; ++t) {
            std::snprintf(buf, sizeof(buf), "%.6f", closes[t]);
            out << dates[t].to_string() << ',' << buf << '\n';
        }
    }

    {
        volcast::Rng rng(seed + 1);
        std::ofstream out(std::filesystem::path(out_dir) / "headlines.csv", std::ios::binary);
        out << "date,headline\n";
        for (std::size_t t = 0; t < kTradingDays; ++t) {
            // The last day has no next-day direction; its headlines draw a
            // coin-flip cluster and stay unlabeled downstream.
            const int label = t + 1 < kTradingDays ? (closes[t + 1] > closes[t] ? 1 : 0)
                                                   : static_cast<int>(rng.below(2));
            for (int h = 0; h < headlines_per_day; ++h) {
                out << dates[t].to_string() << ',' << make_headline(rng, label) << '\n';
            }
        }
    }

    std::cout << "fixture: wrote " << kTradingDays << " prices and " << kTradingDays * headlines_per_day
              << " headlines to " << out_dir << "\n";
    return 0;
}
