// Acceptance suite: runs every acceptance criterion against the bundled
// synthetic fixture and the library, printing one PASS/FAIL line per
// criterion. Exit code = number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "support/finite_diff.hpp"
#include "support/qp_reference.hpp"
#include "support/synthetic_corpus.hpp"
#include "volcast/cnn.hpp"
#include "volcast/garch.hpp"
#include "volcast/lstm.hpp"
#include "volcast/marketdata.hpp"
#include "volcast/rng.hpp"
#include "volcast/stats.hpp"
#include "volcast/svr.hpp"
#include "volcast/word2vec.hpp"

using namespace volcast;
using volcast_tests::relative_error;

namespace {

namespace fs = std::filesystem;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

// --------------------------------------------------------------------------
// 1. GARCH simulate-and-recover within +-0.05 absolute, under 30 s.
// --------------------------------------------------------------------------
Check criterion_garch_recovery() {
    Check c;
    const auto start = std::chrono::steady_clock::now();

    garch::GarchParams truth;
    truth.alpha0 = 0.05;
    truth.alphas = {0.10};
    truth.betas = {0.85};
    const auto eps = garch::simulate(truth, 5000, 20240401);
    const auto fit = garch::fit_mle(eps, {1, 1});

    const double elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count() /
        1000.0;

    char buf[160];
    std::snprintf(buf, sizeof(buf), "alpha0 %.4f alpha1 %.4f beta1 %.4f in %.1fs", fit.params.alpha0,
                  fit.params.alphas[0], fit.params.betas[0], elapsed);
    c.detail = buf;
    c.require(std::fabs(fit.params.alpha0 - 0.05) <= 0.05, "alpha0 outside +-0.05");
    c.require(std::fabs(fit.params.alphas[0] - 0.10) <= 0.05, "alpha1 outside +-0.05");
    c.require(std::fabs(fit.params.betas[0] - 0.85) <= 0.05, "beta1 outside +-0.05");
    c.require(elapsed < 30.0, "fit exceeded 30 s");
    return c;
}

// --------------------------------------------------------------------------
// 2. SVR dual objective within 1e-5 relative of the reference QP solver on
//    10 seeded datasets (n <= 20); KKT violations <= 1e-3.
// --------------------------------------------------------------------------
Check criterion_svr_oracle() {
    Check c;
    double worst_gap = 0.0, worst_kkt = 0.0;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        Rng rng(seed);
        const std::size_t n = 8 + rng.below(13);
        std::vector<std::vector<double>> xs;
        std::vector<double> ys;
        const std::size_t dim = 1 + seed % 3;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> x(dim);
            for (double& v : x) v = rng.uniform(-2.0, 2.0);
            xs.push_back(std::move(x));
            ys.push_back(std::sin(1.5 * xs.back()[0]) + 0.3 * rng.gaussian());
        }
        const svr::SvrHyperParams hyper{1.0 + (seed % 4) * 0.5, 0.05, 0.5 + 0.1 * (seed % 5)};

        svr::FitReport report;
        svr::fit(xs, ys, hyper, &report);
        const auto reference = volcast_tests::solve_svr_dual_reference(xs, ys, hyper);
        const double gap = std::fabs(report.dual_objective - reference.objective) /
                           std::max({std::fabs(report.dual_objective), std::fabs(reference.objective), 1e-6});
        worst_gap = std::max(worst_gap, gap);
        worst_kkt = std::max(worst_kkt, report.max_kkt_violation);
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "worst objective gap %.2e, worst KKT violation %.2e", worst_gap, worst_kkt);
    c.detail = buf;
    c.require(worst_gap <= 1e-5, "dual objective gap above 1e-5");
    c.require(worst_kkt <= 1e-3, "KKT violation above 1e-3");
    return c;
}

// --------------------------------------------------------------------------
// 3. LSTM BPTT gradients vs central differences <= 1e-4 relative over 20
//    seeded instances (hidden 4, 3 steps, dropout off).
// --------------------------------------------------------------------------
Check criterion_lstm_gradients() {
    Check c;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng init(900 + seed);
        lstm::LstmWeights w;
        w.hidden = 4;
        w.input_dim = seed % 2 == 0 ? 1 : 2;
        const int cols = w.hidden + w.input_dim;
        auto fill = [&](Eigen::MatrixXd& m) {
            m.resize(4, cols);
            for (int i = 0; i < m.size(); ++i) m(i / cols, i % cols) = init.uniform(-0.6, 0.6);
        };
        fill(w.w_forget);
        fill(w.w_input);
        fill(w.w_candidate);
        fill(w.w_output);
        auto fill_vec = [&](Eigen::VectorXd& v) {
            v.resize(4);
            for (int i = 0; i < 4; ++i) v(i) = init.uniform(-0.3, 0.3);
        };
        fill_vec(w.b_forget);
        fill_vec(w.b_input);
        fill_vec(w.b_candidate);
        fill_vec(w.b_output);
        fill_vec(w.dense_w);
        w.dense_b = init.uniform(-0.4, 0.4);

        Eigen::MatrixXd window(3, w.input_dim);
        for (int i = 0; i < window.size(); ++i) {
            window(i / w.input_dim, i % w.input_dim) = init.uniform(-1.0, 1.0);
        }
        const double target = init.uniform(-0.5, 1.5);

        lstm::LstmGradients grads;
        lstm::sequence_loss_and_gradients(w, window, target, nullptr, &grads);
        const double h = 1e-6;
        auto loss_at = [&]() { return lstm::sequence_loss_and_gradients(w, window, target, nullptr, nullptr); };

        auto probe = [&](double* value, double analytic) {
            const double saved = *value;
            *value = saved + h;
            const double up = loss_at();
            *value = saved - h;
            const double down = loss_at();
            *value = saved;
            worst = std::max(worst, relative_error(analytic, (up - down) / (2 * h)));
        };
        // Eigen stores column-major: data()[i] is entry (i % rows, i / rows).
        for (int i = 0; i < w.w_forget.size(); ++i) {
            probe(w.w_forget.data() + i, grads.w_forget(i % 4, i / 4));
            probe(w.w_candidate.data() + i, grads.w_candidate(i % 4, i / 4));
        }
        for (int i = 0; i < 4; ++i) {
            probe(&w.b_input(i), grads.b_input(i));
            probe(&w.b_output(i), grads.b_output(i));
            probe(&w.dense_w(i), grads.dense_w(i));
        }
        probe(&w.dense_b, grads.dense_b);
    }
    char buf[80];
    std::snprintf(buf, sizeof(buf), "worst relative error %.2e over 20 instances", worst);
    c.detail = buf;
    c.require(worst <= 1e-4, "gradient mismatch above 1e-4");
    return c;
}

// --------------------------------------------------------------------------
// 4. CNN gradient check <= 1e-4 and F-score >= 0.95 on the separable corpus
//    within 30 epochs.
// --------------------------------------------------------------------------
Check criterion_cnn_training() {
    Check c;

    // Gradient side.
    Rng rng(550);
    cnn::CnnWeights w;
    w.kernel_width = 2;
    w.embed_dim = 4;
    w.conv_kernels.resize(3, 8);
    for (int i = 0; i < w.conv_kernels.size(); ++i) w.conv_kernels(i / 8, i % 8) = rng.uniform(-0.7, 0.7);
    w.conv_bias.resize(3);
    w.dense_w.resize(3);
    for (int i = 0; i < 3; ++i) {
        w.conv_bias(i) = rng.uniform(-0.3, 0.3);
        w.dense_w(i) = rng.uniform(-0.9, 0.9);
    }
    w.dense_b = rng.uniform(-0.2, 0.2);

    std::vector<Eigen::MatrixXd> inputs;
    for (int s = 0; s < 2; ++s) {
        Eigen::MatrixXd doc(5, 4);
        for (int i = 0; i < doc.size(); ++i) doc(i / 4, i % 4) = rng.uniform(-1.2, 1.2);
        inputs.push_back(doc);
    }
    const std::vector<int> labels{1, 0};
    cnn::CnnGradients grads;
    cnn::batch_loss_and_gradients(w, inputs, labels, &grads);

    double worst = 0.0;
    const double h = 1e-6;
    auto loss_at = [&]() { return cnn::batch_loss_and_gradients(w, inputs, labels, nullptr); };
    auto probe = [&](double* value, double analytic) {
        const double saved = *value;
        *value = saved + h;
        const double up = loss_at();
        *value = saved - h;
        const double down = loss_at();
        *value = saved;
        worst = std::max(worst, relative_error(analytic, (up - down) / (2 * h)));
    };
    for (int i = 0; i < w.conv_kernels.size(); ++i) {
        probe(w.conv_kernels.data() + i, grads.conv_kernels(i % 3, i / 3));
    }
    for (int i = 0; i < 3; ++i) {
        probe(&w.conv_bias(i), grads.conv_bias(i));
        probe(&w.dense_w(i), grads.dense_w(i));
    }
    probe(&w.dense_b, grads.dense_b);

    // Training side.
    const auto corpus = volcast_tests::make_separable_corpus(64, 123);
    cnn::CnnConfig cfg;
    cfg.filters = 8;
    cfg.kernel_width = 2;
    cfg.embed_dim = corpus.embeddings.dim;
    cfg.lr = 0.25;
    cfg.epochs = 30;
    cfg.batch_size = 8;
    cfg.seed = 9;
    const auto result = cnn::train(corpus.docs, corpus.embeddings, cfg, corpus.max_len);
    const auto metrics = cnn::evaluate(result.weights, corpus.docs, corpus.embeddings, corpus.max_len);

    char buf[120];
    std::snprintf(buf, sizeof(buf), "worst gradient error %.2e, separable-corpus F-score %.3f", worst,
                  metrics.f_score);
    c.detail = buf;
    c.require(worst <= 1e-4, "gradient mismatch above 1e-4");
    c.require(metrics.f_score >= 0.95, "F-score below 0.95");
    return c;
}

// --------------------------------------------------------------------------
// 5. F-score arithmetic reproduces the published classifier row.
// --------------------------------------------------------------------------
Check criterion_f_score_arithmetic() {
    Check c;
    const auto m = cnn::metrics_from_counts(1479, 261, 221);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "precision %.4f recall %.4f F %.6f", m.precision, m.recall, m.f_score);
    c.detail = buf;
    c.require(std::fabs(m.precision - 0.85) < 1e-12, "precision != 0.85");
    c.require(std::fabs(m.recall - 0.87) < 1e-12, "recall != 0.87");
    c.require(std::fabs(m.f_score - 0.86) <= 0.005, "F-score not 0.86 +- 0.005");
    return c;
}

// --------------------------------------------------------------------------
// 6. F-distribution tail at tabulated critical values, +-0.001 of the
//    high-precision oracle values.
// --------------------------------------------------------------------------
Check criterion_f_distribution() {
    Check c;
    const double tail10 = stats::f_upper_tail(4.965, 1, 10);
    const double tail100 = stats::f_upper_tail(3.936, 1, 100);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "tail(4.965;1,10) = %.6f, tail(3.936;1,100) = %.6f", tail10, tail100);
    c.detail = buf;
    // Oracle values frozen from an independent high-precision evaluation.
    c.require(std::fabs(tail10 - 0.0499924438573651) <= 1e-3, "F(1,10) tail off oracle");
    c.require(std::fabs(tail10 - 0.050) <= 1e-3, "F(1,10) tail not 0.050 +- 0.001");
    c.require(std::fabs(tail100 - 0.0500040821531638) <= 1e-3, "F(1,100) tail off oracle");
    c.require(std::fabs(tail100 - 0.050) <= 1e-3, "F(1,100) tail not 0.050 +- 0.001");
    return c;
}

// --------------------------------------------------------------------------
// 7. word2vec: cluster geometry margin >= 0.2 and pair-gradient check at
//    1e-5 relative.
// --------------------------------------------------------------------------
Check criterion_word2vec() {
    Check c;

    Rng corpus_rng(5);
    std::vector<std::vector<int>> docs;
    for (int s = 0; s < 300; ++s) {
        const int base = s % 2 == 0 ? 2 : 8;
        std::vector<int> doc;
        for (int t = 0; t < 6; ++t) doc.push_back(base + static_cast<int>(corpus_rng.below(6)));
        docs.push_back(std::move(doc));
    }
    w2v::W2vConfig cfg;
    cfg.dim = 16;
    cfg.window = 3;
    cfg.negatives = 4;
    cfg.epochs = 12;
    cfg.lr = 0.05;
    cfg.seed = 31;
    const auto trained = w2v::train_embeddings(docs, 14, cfg);

    double within = 0.0, between = 0.0;
    int n_within = 0, n_between = 0;
    for (int a = 2; a < 14; ++a) {
        for (int b = a + 1; b < 14; ++b) {
            const double cs = w2v::cosine_similarity(trained.embeddings, a, b);
            const bool same = (a < 8) == (b < 8);
            (same ? within : between) += cs;
            (same ? n_within : n_between) += 1;
        }
    }
    within /= n_within;
    between /= n_between;

    // Gradient side.
    Rng rng(17);
    Eigen::VectorXd center(12), context(12);
    std::vector<Eigen::VectorXd> negatives(3, Eigen::VectorXd(12));
    for (int i = 0; i < 12; ++i) {
        center(i) = rng.uniform(-0.8, 0.8);
        context(i) = rng.uniform(-0.8, 0.8);
        for (auto& n : negatives) n(i) = rng.uniform(-0.8, 0.8);
    }
    const auto grads = w2v::pair_gradients(center, context, negatives);
    double worst = 0.0;
    const double h = 1e-6;
    for (int i = 0; i < 12; ++i) {
        const double saved = center(i);
        center(i) = saved + h;
        const double up = w2v::pair_loss(center, context, negatives);
        center(i) = saved - h;
        const double down = w2v::pair_loss(center, context, negatives);
        center(i) = saved;
        worst = std::max(worst, relative_error(grads.d_center(i), (up - down) / (2 * h)));
    }

    char buf[140];
    std::snprintf(buf, sizeof(buf), "within %.3f between %.3f margin %.3f, worst gradient error %.2e", within,
                  between, within - between, worst);
    c.detail = buf;
    c.require(within - between >= 0.2, "cluster margin below 0.2");
    c.require(worst <= 1e-5, "pair gradient mismatch above 1e-5");
    return c;
}

// --------------------------------------------------------------------------
// 8 + 9. End-to-end pipeline on the bundled fixture: five model rows in the
// results-table layout, every regression F-test p < 0.05; and a second run
// with the same seed is byte-identical.
// --------------------------------------------------------------------------

int run_cli_all(const fs::path& out_dir) {
    const std::string cmd = "cd " + std::string(VOLCAST_REPO_ROOT) + " && " + std::string(VOLCAST_CLI_PATH) +
                            " all --config data/fixture/volcast.conf --out " + out_dir.string() +
                            " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Check criterion_end_to_end(const fs::path& run_a) {
    Check c;
    c.require(run_cli_all(run_a) == 0, "pipeline exited nonzero");
    if (!c.ok) return c;

    const auto table = slurp(run_a / "report.txt");
    c.require(table.rfind("Predictive model", 0) == 0, "table header missing 'Predictive model'");
    c.require(table.find("RMSE") != std::string::npos, "table header missing 'RMSE'");
    c.require(table.find("p-value") != std::string::npos, "table header missing 'p-value'");
    for (const char* row : {"GARCH(1,1)", "SVR", "LSTM", "LSTM with sentiment", "LSTM with sentiment shifted"}) {
        c.require(table.find(row) != std::string::npos, std::string("missing row ") + row);
    }

    // Every model's p-value < 0.05, from the machine-readable report.
    std::ifstream csv(run_a / "report.csv");
    std::string line;
    std::getline(csv, line);
    int rows = 0;
    double worst_p = 0.0;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        ++rows;
        // Model names may contain commas; the numeric fields are the last
        // four, so split from the right.
        std::vector<std::string> tail_fields;
        std::string rest = line;
        for (int k = 0; k < 4; ++k) {
            const auto comma = rest.rfind(',');
            tail_fields.push_back(rest.substr(comma + 1));
            rest.resize(comma);
        }
        const double p = std::stod(tail_fields.at(1));  // ... f_stat, p_value, n
        worst_p = std::max(worst_p, p);
    }
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%d scored rows, worst p-value %.4g", rows, worst_p);
    c.detail = buf;
    c.require(rows == 5, "expected 5 scored model rows");
    c.require(worst_p < 0.05, "a model's F-test p-value reached 0.05");
    return c;
}

Check criterion_determinism(const fs::path& run_a, const fs::path& run_b) {
    Check c;
    c.require(run_cli_all(run_b) == 0, "second pipeline run exited nonzero");
    if (!c.ok) return c;

    std::vector<fs::path> names_a, names_b;
    for (const auto& entry : fs::recursive_directory_iterator(run_a)) {
        if (entry.is_regular_file()) names_a.push_back(fs::relative(entry.path(), run_a));
    }
    for (const auto& entry : fs::recursive_directory_iterator(run_b)) {
        if (entry.is_regular_file()) names_b.push_back(fs::relative(entry.path(), run_b));
    }
    std::sort(names_a.begin(), names_a.end());
    std::sort(names_b.begin(), names_b.end());
    c.require(names_a == names_b, "output trees list different files");
    if (!c.ok) return c;

    int mismatches = 0;
    for (const auto& name : names_a) {
        if (slurp(run_a / name) != slurp(run_b / name)) {
            ++mismatches;
            c.require(false, "byte mismatch in " + name.string());
        }
    }
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%zu files compared, %d mismatches", names_a.size(), mismatches);
    c.detail = c.detail.empty() ? buf : c.detail + "; " + buf;
    return c;
}

// --------------------------------------------------------------------------
// 10. Sentiment-shift plumbing: with sentiment constructed as the same-day
// volatility quantile, the shifted variant must beat the unshifted one.
// --------------------------------------------------------------------------
Check criterion_sentiment_shift() {
    Check c;
    const auto prices = marketdata::load_prices(fs::path(VOLCAST_REPO_ROOT) / "data/fixture/prices.csv");
    const auto vol = marketdata::squared_log_returns(prices);

    // sent(t) = empirical quantile of vol(t) across the whole series: a
    // monotone transform of the same-day target.
    const auto n = vol.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vol.values[a] < vol.values[b]; });
    SentimentSeries sent;
    sent.dates = vol.dates;
    sent.scores.resize(n);
    for (std::size_t rank = 0; rank < n; ++rank) {
        sent.scores[order[rank]] = static_cast<double>(rank) / static_cast<double>(n - 1);
    }

    const auto [train_vol, test_vol] = marketdata::chronological_split(vol, SplitSpec::at_fraction(0.76));
    const Date boundary = train_vol.dates.back();
    const auto scaler = lstm::MinMaxScaler::fit(train_vol.values);
    VolatilitySeries scaled = vol;
    for (double& v : scaled.values) v = scaler.transform(v);

    auto run_variant = [&](bool shifted) {
        const lstm::FeatureSpec spec{true, shifted};
        const auto ds = lstm::build_features(scaled, &sent, spec, 5);
        lstm::Dataset train_ds, test_ds;
        train_ds.input_dim = test_ds.input_dim = ds.input_dim;
        train_ds.lookback = test_ds.lookback = ds.lookback;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            auto& side = ds.dates[i] <= boundary ? train_ds : test_ds;
            side.windows.push_back(ds.windows[i]);
            side.targets.push_back(ds.targets[i]);
            side.dates.push_back(ds.dates[i]);
        }
        lstm::LstmConfig cfg;
        cfg.hidden = 16;
        cfg.input_dim = 2;
        cfg.dropout = 0.1;
        cfg.lookback = 5;
        cfg.lr = 0.05;
        cfg.epochs = 60;
        cfg.batch_size = 32;
        cfg.seed = 42;
        const auto trained = lstm::train(train_ds, cfg);
        const auto scaled_predictions = lstm::forecast(trained.weights, test_ds);
        double acc = 0.0;
        for (std::size_t i = 0; i < scaled_predictions.size(); ++i) {
            const double err = scaler.inverse(scaled_predictions[i]) - scaler.inverse(test_ds.targets[i]);
            acc += err * err;
        }
        return std::sqrt(acc / static_cast<double>(scaled_predictions.size()));
    };

    const double rmse_unshifted = run_variant(false);
    const double rmse_shifted = run_variant(true);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "unshifted RMSE %.4e, shifted RMSE %.4e", rmse_unshifted, rmse_shifted);
    c.detail = buf;
    c.require(rmse_shifted < rmse_unshifted, "shifted variant did not beat the unshifted one");
    return c;
}

}  // namespace

int main() {
    const fs::path scratch = fs::temp_directory_path() / ("volcast_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(scratch);

    const fs::path run_a = scratch / "run_a";
    const fs::path run_b = scratch / "run_b";

    std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"1 GARCH simulate-and-recover within +-0.05 in under 30 s", criterion_garch_recovery},
        {"2 SVR dual matches the reference QP solver (1e-5 relative, KKT <= 1e-3)", criterion_svr_oracle},
        {"3 LSTM BPTT gradient check <= 1e-4 over 20 seeded instances", criterion_lstm_gradients},
        {"4 CNN gradient check <= 1e-4 and separable-corpus F-score >= 0.95", criterion_cnn_training},
        {"5 F-score arithmetic reproduces precision 0.85 / recall 0.87 -> 0.86", criterion_f_score_arithmetic},
        {"6 F-distribution tails at tabulated critical values within +-0.001", criterion_f_distribution},
        {"7 word2vec cluster margin >= 0.2 and pair gradients <= 1e-5", criterion_word2vec},
        {"8 end-to-end pipeline: five model rows, all p-values < 0.05", [&] { return criterion_end_to_end(run_a); }},
        {"9 byte-identical pipeline reruns with the same seed", [&] { return criterion_determinism(run_a, run_b); }},
        {"10 quantile-sentiment shift strictly improves the test RMSE", criterion_sentiment_shift},
    };

    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        Check result;
        try {
            result = fn();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %s%s%s\n", result.ok ? "PASS" : "FAIL", name.c_str(),
                    result.detail.empty() ? "" : " -- ", result.detail.c_str());
        std::fflush(stdout);
        if (!result.ok) ++failures;
    }

    std::error_code ec;
    fs::remove_all(scratch, ec);
    if (failures > 0) std::printf("%d criteria FAILED\n", failures);
    return failures;
}
