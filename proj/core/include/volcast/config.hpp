#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "volcast/cnn.hpp"
#include "volcast/garch.hpp"
#include "volcast/lstm.hpp"
#include "volcast/series.hpp"
#include "volcast/svr.hpp"
#include "volcast/word2vec.hpp"

namespace volcast::config {

/// Which forecasting models a run produces.
struct ModelToggles {
    bool garch = true;
    bool svr = true;
    bool lstm = true;
    bool lstm_sentiment = true;
    bool lstm_sentiment_shifted = true;

    bool any_sentiment() const { return lstm_sentiment || lstm_sentiment_shifted; }
};

/// One run's full configuration, parsed from a `key = value` document and
/// validated as a whole before any stage executes.
struct RunConfig {
    std::filesystem::path prices;
    std::filesystem::path headlines;  // optional unless a sentiment model is enabled
    std::filesystem::path stopwords;  // required alongside headlines
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 42;

    SplitSpec split;
    ModelToggles models;

    garch::GarchOrder garch_order;
    svr::SvrHyperParams svr_hyper;
    int svr_lag = 1;
    bool svr_grid_search = false;
    svr::GridSpec svr_grid;

    int text_max_len = 16;
    int text_min_count = 2;
    w2v::W2vConfig w2v;
    cnn::CnnConfig cnn;
    double cnn_threshold = 0.5;
    lstm::LstmConfig lstm;
    std::string plot_model = "lstm_sentiment";
};

/// Parses and validates; every problem is reported as a config-category
/// error. Referenced input paths must exist.
RunConfig load(const std::filesystem::path& path);

/// Validation only (exposed for configs built in code).
void validate(const RunConfig& cfg);

}  // namespace volcast::config
