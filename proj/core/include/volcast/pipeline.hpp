#pragma once

#include "volcast/config.hpp"

namespace volcast::pipeline {

/// Stage entry points used by both the CLI and the integration tests. Each
/// reads its inputs from files, writes its artifacts under
/// config.output_dir, and throws volcast::Error on failure. Re-running a
/// stage with identical inputs and seed rewrites identical bytes.

/// marketdata + textprep: volatility.csv, returns.csv and, when headlines
/// are configured, vocab.tsv + encoded_headlines.tsv.
void cmd_ingest(const config::RunConfig& cfg);

/// word2vec + CNN classifier (+ logistic benchmark): embeddings.txt,
/// cnn_weights.txt, sentiment.csv, classifier_metrics.txt.
void cmd_train_sentiment(const config::RunConfig& cfg);

/// Fits every enabled model on the training split and writes one
/// forecast_<model>.csv (date,predicted,actual) per model plus the fitted
/// parameter dumps. A failing model is reported and skipped.
void cmd_forecast(const config::RunConfig& cfg);

/// Scores every forecast file into report.csv and the aligned report.txt
/// table; models without a forecast file appear as SKIPPED rows.
void cmd_evaluate(const config::RunConfig& cfg);

/// plot_<model>.csv (date,actual,predicted) and a self-contained SVG overlay.
void cmd_plot(const config::RunConfig& cfg);

/// Full pipeline: ingest, train-sentiment (when sentiment models are
/// enabled), forecast, evaluate, plot.
void cmd_all(const config::RunConfig& cfg);

}  // namespace volcast::pipeline
