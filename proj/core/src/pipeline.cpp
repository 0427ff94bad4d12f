#include "volcast/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>

#include "volcast/errors.hpp"
#include "volcast/eval.hpp"
#include "volcast/marketdata.hpp"
#include "volcast/svg.hpp"

namespace volcast::pipeline {

namespace {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Artifact filenames and small readers/writers. Doubles are written with
// %.17g so re-reading reproduces them bit-exactly.
// ---------------------------------------------------------------------------

constexpr const char* kVolatilityFile = "volatility.csv";
constexpr const char* kReturnsFile = "returns.csv";
constexpr const char* kVocabFile = "vocab.tsv";
constexpr const char* kEncodedFile = "encoded_headlines.tsv";
constexpr const char* kEmbeddingsFile = "embeddings.txt";
constexpr const char* kSentimentFile = "sentiment.csv";
constexpr const char* kMetricsFile = "classifier_metrics.txt";
constexpr const char* kReportCsv = "report.csv";
constexpr const char* kReportTable = "report.txt";

const std::vector<std::string> kModelKeys = {"garch", "svr", "lstm", "lstm_sentiment", "lstm_sentiment_shifted"};

std::string model_display_name(const std::string& key, const config::RunConfig& cfg) {
    if (key == "garch") {
        return "GARCH(" + std::to_string(cfg.garch_order.p) + "," + std::to_string(cfg.garch_order.q) + ")";
    }
    if (key == "svr") return "SVR";
    if (key == "lstm") return "LSTM";
    if (key == "lstm_sentiment") return "LSTM with sentiment";
    return "LSTM with sentiment shifted";
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error::data("WriteFailed", "cannot write " + path.string());
    }
    out << content;
}

std::ifstream open_artifact(const fs::path& path, const char* produced_by) {
    std::ifstream in(path);
    if (!in) {
        throw Error::data("MissingInput",
                          "missing artifact " + path.string() + " (run '" + produced_by + "' first)");
    }
    return in;
}

void write_dated_csv(const fs::path& path, const char* header, const std::vector<Date>& dates,
                     const std::vector<double>& values) {
    std::ostringstream out;
    out << header << "\n";
    for (std::size_t i = 0; i < dates.size(); ++i) {
        out << dates[i].to_string() << ',' << fmt17(values[i]) << '\n';
    }
    write_file(path, out.str());
}

std::pair<std::vector<Date>, std::vector<double>> read_dated_csv(const fs::path& path, const char* produced_by) {
    auto in = open_artifact(path, produced_by);
    std::string line;
    std::getline(in, line);  // header
    std::vector<Date> dates;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        const auto date = Date::try_parse(line.substr(0, comma));
        if (comma == std::string::npos || !date) {
            throw Error::data("MalformedRow", "bad row in " + path.string() + ": " + line);
        }
        dates.push_back(*date);
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    if (dates.empty()) {
        throw Error::data("EmptyInput", "no rows in " + path.string());
    }
    return {std::move(dates), std::move(values)};
}

struct ForecastRows {
    std::vector<Date> dates;
    std::vector<double> predicted;
    std::vector<double> actual;
};

void write_forecast_csv(const fs::path& path, const ForecastRows& rows) {
    std::ostringstream out;
    out << "date,predicted,actual\n";
    for (std::size_t i = 0; i < rows.dates.size(); ++i) {
        out << rows.dates[i].to_string() << ',' << fmt17(rows.predicted[i]) << ',' << fmt17(rows.actual[i]) << '\n';
    }
    write_file(path, out.str());
}

ForecastRows read_forecast_csv(const fs::path& path) {
    auto in = open_artifact(path, "forecast");
    std::string line;
    std::getline(in, line);
    ForecastRows rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        const auto date = c1 == std::string::npos ? std::nullopt : Date::try_parse(line.substr(0, c1));
        if (c2 == std::string::npos || !date) {
            throw Error::data("MalformedRow", "bad row in " + path.string() + ": " + line);
        }
        rows.dates.push_back(*date);
        rows.predicted.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
        rows.actual.push_back(std::stod(line.substr(c2 + 1)));
    }
    if (rows.dates.empty()) {
        throw Error::data("EmptyInput", "no rows in " + path.string());
    }
    return rows;
}

struct StoredDoc {
    Date date;
    std::optional<int> label;
    std::vector<int> token_ids;  // unpadded
};

void write_encoded_tsv(const fs::path& path, const std::vector<StoredDoc>& docs) {
    std::ostringstream out;
    for (const auto& d : docs) {
        out << d.date.to_string() << '\t';
        if (d.label) out << *d.label;
        out << '\t';
        for (std::size_t i = 0; i < d.token_ids.size(); ++i) {
            if (i) out << ' ';
            out << d.token_ids[i];
        }
        out << '\n';
    }
    write_file(path, out.str());
}

std::vector<StoredDoc> read_encoded_tsv(const fs::path& path) {
    auto in = open_artifact(path, "ingest");
    std::vector<StoredDoc> docs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        const auto date = t1 == std::string::npos ? std::nullopt : Date::try_parse(line.substr(0, t1));
        if (t2 == std::string::npos || !date) {
            throw Error::data("MalformedRow", "bad row in " + path.string());
        }
        StoredDoc doc;
        doc.date = *date;
        const std::string label = line.substr(t1 + 1, t2 - t1 - 1);
        if (!label.empty()) doc.label = std::stoi(label);
        std::stringstream ids(line.substr(t2 + 1));
        int id;
        while (ids >> id) doc.token_ids.push_back(id);
        docs.push_back(std::move(doc));
    }
    if (docs.empty()) {
        throw Error::data("EmptyInput", "no documents in " + path.string());
    }
    return docs;
}

text::Vocabulary read_vocab_tsv(const fs::path& path) {
    auto in = open_artifact(path, "ingest");
    text::Vocabulary vocab;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto t1 = line.find('\t');
        const auto t2 = line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos) {
            throw Error::data("MalformedRow", "bad row in " + path.string());
        }
        const std::string token = line.substr(t1 + 1, t2 - t1 - 1);
        vocab.token_to_id[token] = static_cast<int>(vocab.id_to_token.size());
        vocab.id_to_token.push_back(token);
        vocab.counts.push_back(std::stoll(line.substr(t2 + 1)));
    }
    if (vocab.size() < 2) {
        throw Error::data("EmptyInput", "vocabulary in " + path.string() + " lacks the reserved ids");
    }
    return vocab;
}

// Boundary = last training date of the volatility split; all stages agree on
// it through this helper.
Date split_boundary(const VolatilitySeries& vol, const SplitSpec& spec) {
    const auto [train, test] = marketdata::chronological_split(vol, spec);
    return train.dates.back();
}

lstm::LstmConfig lstm_config_for(const config::RunConfig& cfg, int input_dim) {
    lstm::LstmConfig lc = cfg.lstm;
    lc.input_dim = input_dim;
    lc.seed = cfg.seed;
    return lc;
}

// ---------------------------------------------------------------------------
// Per-model forecast runners (used by cmd_forecast, possibly concurrently).
// Each returns the test-set rows plus the fitted-model text dump.
// ---------------------------------------------------------------------------

struct ModelOutput {
    ForecastRows rows;
    std::string params_text;
    std::string params_file;
    std::string log_line;
};

ModelOutput run_garch(const config::RunConfig& cfg, const VolatilitySeries& vol,
                      const std::vector<double>& returns, std::size_t n_train) {
    double train_mean = 0.0;
    for (std::size_t i = 0; i < n_train; ++i) train_mean += returns[i];
    train_mean /= static_cast<double>(n_train);
    std::vector<double> eps(returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) eps[i] = returns[i] - train_mean;

    const auto fit = garch::fit_mle(std::span<const double>(eps).subspan(0, n_train), cfg.garch_order);
    const auto predictions = garch::rolling_one_step(eps, n_train, fit.params);

    ModelOutput out;
    out.rows.dates.assign(vol.dates.begin() + static_cast<std::ptrdiff_t>(n_train), vol.dates.end());
    out.rows.predicted = predictions;
    out.rows.actual.assign(vol.values.begin() + static_cast<std::ptrdiff_t>(n_train), vol.values.end());
    out.params_text = garch::to_text(fit);
    out.params_file = "garch_params.txt";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "garch: fit %s, loglik %.6g, %s", fit.converged ? "converged" : "hit cap",
                  fit.log_likelihood, "forecasts written");
    out.log_line = buf;
    return out;
}

ModelOutput run_svr(const config::RunConfig& cfg, const VolatilitySeries& vol, std::size_t n_train) {
    const auto lag = static_cast<std::size_t>(cfg.svr_lag);
    if (n_train <= lag) {
        throw Error::data("SeriesTooShort", "svr: training split shorter than the lag window");
    }
    std::vector<std::vector<double>> train_x, test_x;
    std::vector<double> train_y, test_y;
    std::vector<Date> test_dates;
    for (std::size_t j = lag; j < vol.size(); ++j) {
        std::vector<double> features(vol.values.begin() + static_cast<std::ptrdiff_t>(j - lag),
                                     vol.values.begin() + static_cast<std::ptrdiff_t>(j));
        if (j < n_train) {
            train_x.push_back(std::move(features));
            train_y.push_back(vol.values[j]);
        } else {
            test_x.push_back(std::move(features));
            test_y.push_back(vol.values[j]);
            test_dates.push_back(vol.dates[j]);
        }
    }

    svr::SvrHyperParams hyper = cfg.svr_hyper;
    std::string grid_note;
    if (cfg.svr_grid_search) {
        const auto result = svr::grid_search_cv(train_x, train_y, cfg.svr_grid, cfg.seed);
        hyper = result.best;
        char buf[120];
        std::snprintf(buf, sizeof(buf), " (grid: c=%g gamma=%g epsilon=%g, cv rmse %.4g)", hyper.c, hyper.gamma,
                      hyper.epsilon, result.cv_rmse);
        grid_note = buf;
    }
    const auto model = svr::fit(train_x, train_y, hyper);

    ModelOutput out;
    out.rows.dates = std::move(test_dates);
    out.rows.actual = std::move(test_y);
    out.rows.predicted.reserve(test_x.size());
    for (const auto& x : test_x) out.rows.predicted.push_back(svr::predict(model, x));
    out.params_text = svr::to_text(model);
    out.params_file = "svr_model.txt";
    out.log_line = "svr: " + std::to_string(model.support_inputs.size()) + " support vectors" + grid_note;
    return out;
}

ModelOutput run_lstm_variant(const config::RunConfig& cfg, const std::string& key, const VolatilitySeries& vol,
                             const SentimentSeries* sent, Date boundary) {
    lstm::FeatureSpec spec;
    spec.use_sentiment = key != "lstm";
    spec.shift_sentiment = key == "lstm_sentiment_shifted";

    VolatilitySeries vols = vol;
    SentimentSeries sents;
    if (spec.use_sentiment) {
        if (!sent) {
            throw Error::data("MissingInput", "sentiment series required for " + key);
        }
        auto aligned = marketdata::align_calendars(vol, *sent);
        vols = std::move(aligned.first);
        sents = std::move(aligned.second);
    }

    // Scale on training rows only, then transform the whole series.
    std::vector<double> train_values;
    for (std::size_t i = 0; i < vols.size(); ++i) {
        if (vols.dates[i] <= boundary) train_values.push_back(vols.values[i]);
    }
    if (train_values.empty()) {
        throw Error::data("DegenerateSplit", key + ": no training observations after alignment");
    }
    const auto scaler = lstm::MinMaxScaler::fit(train_values);
    VolatilitySeries scaled = vols;
    for (double& v : scaled.values) v = scaler.transform(v);

    const auto dataset = lstm::build_features(scaled, spec.use_sentiment ? &sents : nullptr, spec, cfg.lstm.lookback);

    lstm::Dataset train_ds, test_ds;
    train_ds.input_dim = test_ds.input_dim = dataset.input_dim;
    train_ds.lookback = test_ds.lookback = dataset.lookback;
    std::vector<std::size_t> test_rows;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        auto& side = dataset.dates[i] <= boundary ? train_ds : test_ds;
        side.windows.push_back(dataset.windows[i]);
        side.targets.push_back(dataset.targets[i]);
        side.dates.push_back(dataset.dates[i]);
    }
    if (train_ds.size() == 0 || test_ds.size() == 0) {
        throw Error::data("DegenerateSplit", key + ": split leaves an empty train or test side");
    }

    const auto trained = lstm::train(train_ds, lstm_config_for(cfg, dataset.input_dim));
    const auto scaled_predictions = lstm::forecast(trained.weights, test_ds);

    ModelOutput out;
    out.rows.dates = test_ds.dates;
    out.rows.predicted.reserve(scaled_predictions.size());
    for (double p : scaled_predictions) out.rows.predicted.push_back(scaler.inverse(p));
    out.rows.actual.reserve(test_ds.size());
    for (double t : test_ds.targets) out.rows.actual.push_back(scaler.inverse(t));
    out.params_text = lstm::to_text(trained.weights);
    out.params_file = key + ".weights.txt";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: %zu train rows, first/last epoch loss %.4g/%.4g", key.c_str(),
                  train_ds.size(), trained.epoch_loss.empty() ? 0.0 : trained.epoch_loss.front(),
                  trained.epoch_loss.empty() ? 0.0 : trained.epoch_loss.back());
    out.log_line = buf;
    return out;
}

}  // namespace

void cmd_ingest(const config::RunConfig& cfg) {
    fs::create_directories(cfg.output_dir);

    const auto prices = marketdata::load_prices(cfg.prices);
    const auto vol = marketdata::squared_log_returns(prices);
    const auto returns = marketdata::log_returns(prices);
    write_dated_csv(cfg.output_dir / kVolatilityFile, "date,value", vol.dates, vol.values);
    write_dated_csv(cfg.output_dir / kReturnsFile, "date,value", vol.dates, returns);
    std::cout << "ingest: " << prices.size() << " prices -> " << vol.size() << " volatility observations\n";

    // Fail degenerate splits here, before any model stage runs.
    const Date boundary = split_boundary(vol, cfg.split);

    if (cfg.headlines.empty()) {
        std::cout << "ingest: no headlines configured, text stage skipped\n";
        return;
    }

    const auto headlines = text::load_headlines(cfg.headlines);
    const auto stoplist = text::load_stopwords(cfg.stopwords);

    // Next-day index direction labels, defined when the headline date is a
    // trading day with a successor.
    std::map<Date, int> labels;
    for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
        labels[prices.dates[i]] = prices.closes[i + 1] > prices.closes[i] ? 1 : 0;
    }

    std::vector<std::vector<std::string>> train_tokens;
    std::vector<std::pair<Date, std::vector<std::string>>> all_tokens;
    for (const auto& h : headlines) {
        auto tokens = text::remove_stopwords(text::tokenize(h.text), stoplist);
        if (h.date <= boundary) train_tokens.push_back(tokens);
        all_tokens.emplace_back(h.date, std::move(tokens));
    }
    if (train_tokens.empty()) {
        throw Error::data("EmptyCorpus", "no headlines fall inside the training period");
    }
    const auto vocab = text::build_vocabulary(train_tokens, cfg.text_min_count);

    std::vector<StoredDoc> docs;
    docs.reserve(all_tokens.size());
    for (const auto& [date, tokens] : all_tokens) {
        StoredDoc doc;
        doc.date = date;
        const auto label = labels.find(date);
        if (label != labels.end()) doc.label = label->second;
        doc.token_ids.reserve(tokens.size());
        for (const auto& t : tokens) doc.token_ids.push_back(vocab.id_of(t));
        docs.push_back(std::move(doc));
    }
    std::stable_sort(docs.begin(), docs.end(), [](const StoredDoc& a, const StoredDoc& b) { return a.date < b.date; });

    write_file(cfg.output_dir / kVocabFile, text::to_text(vocab));
    write_encoded_tsv(cfg.output_dir / kEncodedFile, docs);
    std::cout << "ingest: " << docs.size() << " headlines encoded, vocabulary size " << vocab.size() << "\n";
}

void cmd_train_sentiment(const config::RunConfig& cfg) {
    const auto [vol_dates, vol_values] = read_dated_csv(cfg.output_dir / kVolatilityFile, "ingest");
    VolatilitySeries vol{vol_dates, vol_values};
    const Date boundary = split_boundary(vol, cfg.split);

    const auto vocab = read_vocab_tsv(cfg.output_dir / kVocabFile);
    const auto stored = read_encoded_tsv(cfg.output_dir / kEncodedFile);

    std::vector<std::vector<int>> train_id_docs;
    std::vector<text::EncodedDoc> train_docs, test_docs;
    std::map<Date, std::vector<text::EncodedDoc>> by_date;
    for (const auto& d : stored) {
        text::EncodedDoc doc{d.date, d.token_ids, d.label};
        if (d.date <= boundary) {
            train_id_docs.push_back(d.token_ids);
            train_docs.push_back(doc);
        } else {
            test_docs.push_back(doc);
        }
        by_date[d.date].push_back(std::move(doc));
    }
    if (train_id_docs.empty()) {
        throw Error::data("EmptyCorpus", "no encoded headlines in the training period");
    }

    w2v::W2vConfig w2v_cfg = cfg.w2v;
    w2v_cfg.seed = cfg.seed;
    const auto w2v_result = w2v::train_embeddings(train_id_docs, vocab.size(), w2v_cfg);
    write_file(cfg.output_dir / kEmbeddingsFile, w2v::to_text(w2v_result.embeddings, vocab));
    std::cout << "train-sentiment: embeddings " << vocab.size() << "x" << w2v_cfg.dim << ", final epoch loss "
              << (w2v_result.epoch_loss.empty() ? 0.0 : w2v_result.epoch_loss.back()) << "\n";

    cnn::CnnConfig cnn_cfg = cfg.cnn;
    cnn_cfg.seed = cfg.seed;
    const auto cnn_result = cnn::train(train_docs, w2v_result.embeddings, cnn_cfg, cfg.text_max_len);

    // Table-style metrics on the chronological test side; fall back to the
    // training side when no labeled test docs exist.
    const auto& metric_docs = [&]() -> const std::vector<text::EncodedDoc>& {
        for (const auto& d : test_docs) {
            if (d.label) return test_docs;
        }
        return train_docs;
    }();
    const auto cnn_metrics =
        cnn::evaluate(cnn_result.weights, metric_docs, w2v_result.embeddings, cfg.text_max_len, cfg.cnn_threshold);
    const auto logistic =
        cnn::train_logistic(train_docs, w2v_result.embeddings, cnn_cfg.lr, cnn_cfg.epochs, cfg.seed);
    const auto logistic_metrics =
        cnn::evaluate_logistic(logistic, metric_docs, w2v_result.embeddings, cfg.cnn_threshold);
    write_file(cfg.output_dir / kMetricsFile, cnn::metrics_report(cnn_metrics, logistic_metrics));

    const auto sentiment = cnn::daily_sentiment(cnn_result.weights, by_date, w2v_result.embeddings, cfg.text_max_len);
    write_dated_csv(cfg.output_dir / kSentimentFile, "date,score", sentiment.dates, sentiment.scores);

    char buf[160];
    std::snprintf(buf, sizeof(buf), "train-sentiment: cnn F-score %.4f, logistic F-score %.4f, %zu sentiment days\n",
                  cnn_metrics.f_score, logistic_metrics.f_score, sentiment.size());
    std::cout << buf;
}

void cmd_forecast(const config::RunConfig& cfg) {
    const auto [vol_dates, vol_values] = read_dated_csv(cfg.output_dir / kVolatilityFile, "ingest");
    const auto [ret_dates, ret_values] = read_dated_csv(cfg.output_dir / kReturnsFile, "ingest");
    VolatilitySeries vol{vol_dates, vol_values};
    validate(vol);

    const auto [train, test] = marketdata::chronological_split(vol, cfg.split);
    const std::size_t n_train = train.size();
    const Date boundary = train.dates.back();

    SentimentSeries sentiment;
    if (cfg.models.any_sentiment()) {
        const auto [s_dates, s_values] = read_dated_csv(cfg.output_dir / kSentimentFile, "train-sentiment");
        sentiment.dates = s_dates;
        sentiment.scores = s_values;
        validate(sentiment);
    }

    // Enabled models run concurrently on independent state; results are
    // collected and written in fixed order.
    std::vector<std::pair<std::string, std::future<ModelOutput>>> tasks;
    if (cfg.models.garch) {
        tasks.emplace_back("garch", std::async(std::launch::async,
                                               [&] { return run_garch(cfg, vol, ret_values, n_train); }));
    }
    if (cfg.models.svr) {
        tasks.emplace_back("svr", std::async(std::launch::async, [&] { return run_svr(cfg, vol, n_train); }));
    }
    for (const std::string key : {"lstm", "lstm_sentiment", "lstm_sentiment_shifted"}) {
        const bool enabled = (key == "lstm" && cfg.models.lstm) ||
                             (key == "lstm_sentiment" && cfg.models.lstm_sentiment) ||
                             (key == "lstm_sentiment_shifted" && cfg.models.lstm_sentiment_shifted);
        if (!enabled) continue;
        tasks.emplace_back(key, std::async(std::launch::async, [&cfg, key, &vol, &sentiment, boundary] {
                               return run_lstm_variant(cfg, key, vol,
                                                       key == "lstm" ? nullptr : &sentiment, boundary);
                           }));
    }

    for (auto& [key, future] : tasks) {
        try {
            ModelOutput out = future.get();
            write_forecast_csv(cfg.output_dir / ("forecast_" + key + ".csv"), out.rows);
            write_file(cfg.output_dir / out.params_file, out.params_text);
            std::cout << "forecast: " << out.log_line << " (" << out.rows.dates.size() << " test rows)\n";
        } catch (const Error& e) {
            std::cerr << "error[" << to_string(e.category()) << "/" << e.code() << "] model " << key
                      << " skipped: " << e.what() << "\n";
        }
    }
}

void cmd_evaluate(const config::RunConfig& cfg) {
    std::vector<eval::EvalReport> reports;
    std::vector<std::string> skipped;
    for (const auto& key : kModelKeys) {
        const auto path = cfg.output_dir / ("forecast_" + key + ".csv");
        const std::string display = model_display_name(key, cfg);
        if (!fs::exists(path)) {
            skipped.push_back(display);
            continue;
        }
        try {
            const auto rows = read_forecast_csv(path);
            reports.push_back(eval::score_model(display, rows.actual, rows.predicted));
        } catch (const Error& e) {
            std::cerr << "error[" << to_string(e.category()) << "/" << e.code() << "] " << display
                      << " not scored: " << e.what() << "\n";
            skipped.push_back(display);
        }
    }

    write_file(cfg.output_dir / kReportCsv, eval::reports_to_csv(reports));
    const auto table = eval::reports_to_table(reports, skipped);
    write_file(cfg.output_dir / kReportTable, table);
    std::cout << table;
}

void cmd_plot(const config::RunConfig& cfg) {
    const auto path = cfg.output_dir / ("forecast_" + cfg.plot_model + ".csv");
    const auto rows = read_forecast_csv(path);

    std::ostringstream csv;
    csv << "date,actual,predicted\n";
    for (std::size_t i = 0; i < rows.dates.size(); ++i) {
        csv << rows.dates[i].to_string() << ',' << fmt17(rows.actual[i]) << ',' << fmt17(rows.predicted[i]) << '\n';
    }
    write_file(cfg.output_dir / ("plot_" + cfg.plot_model + ".csv"), csv.str());

    const std::string title = model_display_name(cfg.plot_model, cfg) + " forecasts vs actual volatility";
    write_file(cfg.output_dir / ("plot_" + cfg.plot_model + ".svg"),
               svg::line_chart(title, rows.dates, rows.actual, rows.predicted));
    std::cout << "plot: wrote plot_" << cfg.plot_model << ".csv and plot_" << cfg.plot_model << ".svg\n";
}

void cmd_all(const config::RunConfig& cfg) {
    cmd_ingest(cfg);
    if (cfg.models.any_sentiment()) {
        cmd_train_sentiment(cfg);
    }
    cmd_forecast(cfg);
    cmd_evaluate(cfg);
    cmd_plot(cfg);
}

}  // namespace volcast::pipeline
