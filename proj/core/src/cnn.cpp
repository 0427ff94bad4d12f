#include "volcast/cnn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "volcast/errors.hpp"
#include "volcast/rng.hpp"

namespace volcast::cnn {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double bce_loss(double p, int label) {
    constexpr double floor = 1e-12;
    const double q = std::clamp(p, floor, 1.0 - floor);
    return label == 1 ? -std::log(q) : -std::log(1.0 - q);
}

// Valid-convolution window matrix: row t holds positions t..t+kw-1 flattened.
Eigen::MatrixXd window_matrix(const Eigen::MatrixXd& doc, int kernel_width) {
    const auto positions = static_cast<int>(doc.rows()) - kernel_width + 1;
    const auto dim = static_cast<int>(doc.cols());
    Eigen::MatrixXd windows(positions, kernel_width * dim);
    for (int t = 0; t < positions; ++t) {
        for (int u = 0; u < kernel_width; ++u) {
            windows.block(t, u * dim, 1, dim) = doc.row(t + u);
        }
    }
    return windows;
}

std::vector<const text::EncodedDoc*> labeled_docs(const std::vector<text::EncodedDoc>& docs) {
    std::vector<const text::EncodedDoc*> out;
    for (const auto& d : docs) {
        if (d.label.has_value()) out.push_back(&d);
    }
    return out;
}

}  // namespace

void validate(const CnnConfig& cfg) {
    if (cfg.filters < 1 || cfg.kernel_width < 1 || cfg.embed_dim < 1 || !(cfg.lr > 0.0) || cfg.epochs < 0 ||
        cfg.batch_size < 1) {
        throw Error::config("InvalidCnnConfig", "cnn config: filters/kernel_width/embed_dim/batch_size >= 1, lr > 0");
    }
}

ClassifierMetrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
    ClassifierMetrics m;
    m.precision = (tp + fp) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    m.recall = (tp + fn) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    const double denom = m.precision + m.recall;
    m.f_score = denom > 0.0 ? 2.0 * m.precision * m.recall / denom : 0.0;
    return m;
}

Eigen::MatrixXd embed_doc(std::span<const int> token_ids, const w2v::EmbeddingMatrix& emb, int max_len) {
    Eigen::MatrixXd doc = Eigen::MatrixXd::Zero(max_len, emb.dim);
    const auto limit = std::min<std::size_t>(token_ids.size(), static_cast<std::size_t>(max_len));
    for (std::size_t t = 0; t < limit; ++t) {
        const int id = token_ids[t];
        if (id == text::Vocabulary::pad_id) continue;
        if (id < 0 || id >= emb.input_vectors.rows()) {
            throw Error::data("InvalidId", "embed_doc: token id out of embedding range");
        }
        doc.row(static_cast<Eigen::Index>(t)) = emb.input_vectors.row(id);
    }
    return doc;
}

double forward(const CnnWeights& w, const Eigen::MatrixXd& doc_embeddings) {
    if (doc_embeddings.cols() != w.embed_dim || doc_embeddings.rows() < w.kernel_width) {
        throw Error::data("ShapeMismatch", "cnn forward: input shape incompatible with weights");
    }
    const auto windows = window_matrix(doc_embeddings, w.kernel_width);
    Eigen::MatrixXd pre = windows * w.conv_kernels.transpose();
    pre.rowwise() += w.conv_bias.transpose();
    const Eigen::MatrixXd activated = pre.cwiseMax(0.0);
    const Eigen::VectorXd pooled = activated.colwise().maxCoeff();
    return sigmoid(w.dense_w.dot(pooled) + w.dense_b);
}

double batch_loss_and_gradients(const CnnWeights& w, std::span<const Eigen::MatrixXd> inputs,
                                std::span<const int> labels, CnnGradients* grads) {
    if (inputs.size() != labels.size() || inputs.empty()) {
        throw Error::data("ShapeMismatch", "cnn batch: inputs and labels must match and be nonempty");
    }
    const auto filters = static_cast<int>(w.conv_kernels.rows());
    if (grads) {
        grads->conv_kernels = Eigen::MatrixXd::Zero(filters, w.conv_kernels.cols());
        grads->conv_bias = Eigen::VectorXd::Zero(filters);
        grads->dense_w = Eigen::VectorXd::Zero(filters);
        grads->dense_b = 0.0;
    }

    double total_loss = 0.0;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        const auto& doc = inputs[s];
        if (doc.cols() != w.embed_dim || doc.rows() < w.kernel_width) {
            throw Error::data("ShapeMismatch", "cnn batch: input shape incompatible with weights");
        }
        const auto windows = window_matrix(doc, w.kernel_width);
        Eigen::MatrixXd pre = windows * w.conv_kernels.transpose();
        pre.rowwise() += w.conv_bias.transpose();

        Eigen::VectorXd pooled(filters);
        std::vector<int> argmax(static_cast<std::size_t>(filters));
        for (int f = 0; f < filters; ++f) {
            double best = 0.0;
            int best_t = -1;  // stays -1 when every activation is clipped to 0
            for (int t = 0; t < pre.rows(); ++t) {
                const double v = std::max(pre(t, f), 0.0);
                if (v > best) {
                    best = v;
                    best_t = t;
                }
            }
            pooled(f) = best;
            argmax[static_cast<std::size_t>(f)] = best_t;
        }

        const double p = sigmoid(w.dense_w.dot(pooled) + w.dense_b);
        total_loss += bce_loss(p, labels[s]);
        if (!grads) continue;

        const double dlogit = p - static_cast<double>(labels[s]);
        grads->dense_w += dlogit * pooled;
        grads->dense_b += dlogit;
        for (int f = 0; f < filters; ++f) {
            const int t = argmax[static_cast<std::size_t>(f)];
            if (t < 0) continue;  // dead ReLU at the pooled max
            const double da = dlogit * w.dense_w(f);
            grads->conv_kernels.row(f) += da * windows.row(t);
            grads->conv_bias(f) += da;
        }
    }

    const double scale = 1.0 / static_cast<double>(inputs.size());
    if (grads) {
        grads->conv_kernels *= scale;
        grads->conv_bias *= scale;
        grads->dense_w *= scale;
        grads->dense_b *= scale;
    }
    return total_loss * scale;
}

TrainResult train(const std::vector<text::EncodedDoc>& docs, const w2v::EmbeddingMatrix& emb,
                  const CnnConfig& cfg, int max_len) {
    validate(cfg);
    if (cfg.kernel_width > max_len) {
        throw Error::config("InvalidCnnConfig", "cnn config: kernel_width must not exceed max_len");
    }
    const auto labeled = labeled_docs(docs);
    if (labeled.empty()) {
        throw Error::data("EmptyCorpus", "cnn train: no labeled documents");
    }
    bool has_pos = false, has_neg = false;
    for (const auto* d : labeled) {
        (*d->label == 1 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
        throw Error::data("SingleClassCorpus", "cnn train: need at least one document of each label");
    }

    std::vector<Eigen::MatrixXd> inputs;
    std::vector<int> labels;
    inputs.reserve(labeled.size());
    for (const auto* d : labeled) {
        inputs.push_back(embed_doc(d->token_ids, emb, max_len));
        labels.push_back(*d->label);
    }

    Rng rng(cfg.seed);
    TrainResult result;
    CnnWeights& w = result.weights;
    w.kernel_width = cfg.kernel_width;
    w.embed_dim = cfg.embed_dim;
    const int fan_in = cfg.kernel_width * cfg.embed_dim;
    const double conv_r = std::sqrt(6.0 / (fan_in + cfg.filters));
    const double dense_r = std::sqrt(6.0 / (cfg.filters + 1.0));
    w.conv_kernels.resize(cfg.filters, fan_in);
    for (int f = 0; f < cfg.filters; ++f) {
        for (int c = 0; c < fan_in; ++c) w.conv_kernels(f, c) = rng.uniform(-conv_r, conv_r);
    }
    w.conv_bias = Eigen::VectorXd::Zero(cfg.filters);
    w.dense_w.resize(cfg.filters);
    for (int f = 0; f < cfg.filters; ++f) w.dense_w(f) = rng.uniform(-dense_r, dense_r);
    w.dense_b = 0.0;

    std::vector<std::size_t> order(inputs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    CnnGradients grads;
    std::vector<Eigen::MatrixXd> batch_inputs;
    std::vector<int> batch_labels;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        double loss_sum = 0.0;
        std::size_t seen = 0;
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
            const auto end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
            batch_inputs.clear();
            batch_labels.clear();
            for (std::size_t i = start; i < end; ++i) {
                batch_inputs.push_back(inputs[order[i]]);
                batch_labels.push_back(labels[order[i]]);
            }
            const double loss = batch_loss_and_gradients(w, batch_inputs, batch_labels, &grads);
            loss_sum += loss * static_cast<double>(end - start);
            seen += end - start;
            w.conv_kernels -= cfg.lr * grads.conv_kernels;
            w.conv_bias -= cfg.lr * grads.conv_bias;
            w.dense_w -= cfg.lr * grads.dense_w;
            w.dense_b -= cfg.lr * grads.dense_b;
        }
        result.epoch_loss.push_back(loss_sum / static_cast<double>(seen));
    }
    return result;
}

ClassifierMetrics evaluate(const CnnWeights& w, const std::vector<text::EncodedDoc>& docs,
                           const w2v::EmbeddingMatrix& emb, int max_len, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw Error::config("InvalidThreshold", "evaluate: threshold must lie in (0,1)");
    }
    const auto labeled = labeled_docs(docs);
    if (labeled.empty()) {
        throw Error::data("EmptyEvalSet", "evaluate: no labeled documents");
    }
    std::size_t tp = 0, fp = 0, fn = 0;
    for (const auto* d : labeled) {
        const double p = forward(w, embed_doc(d->token_ids, emb, max_len));
        const bool predicted = p > threshold;
        const bool actual = *d->label == 1;
        if (predicted && actual) ++tp;
        if (predicted && !actual) ++fp;
        if (!predicted && actual) ++fn;
    }
    return metrics_from_counts(tp, fp, fn);
}

Eigen::VectorXd mean_pool(std::span<const int> token_ids, const w2v::EmbeddingMatrix& emb) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(emb.dim);
    int n = 0;
    for (int id : token_ids) {
        if (id == text::Vocabulary::pad_id) continue;
        if (id < 0 || id >= emb.input_vectors.rows()) {
            throw Error::data("InvalidId", "mean_pool: token id out of embedding range");
        }
        acc += emb.input_vectors.row(id).transpose();
        ++n;
    }
    if (n > 0) acc /= static_cast<double>(n);
    return acc;
}

double logistic_forward(const LogisticModel& m, const Eigen::VectorXd& features) {
    return sigmoid(m.weights.dot(features) + m.bias);
}

double logistic_loss_and_gradients(const LogisticModel& m, const Eigen::VectorXd& features, int label,
                                   Eigen::VectorXd* d_weights, double* d_bias) {
    const double p = logistic_forward(m, features);
    const double dlogit = p - static_cast<double>(label);
    if (d_weights) *d_weights = dlogit * features;
    if (d_bias) *d_bias = dlogit;
    return bce_loss(p, label);
}

LogisticModel train_logistic(const std::vector<text::EncodedDoc>& docs, const w2v::EmbeddingMatrix& emb,
                             double lr, int epochs, std::uint64_t seed) {
    if (!(lr > 0.0) || epochs < 0) {
        throw Error::config("InvalidLogisticConfig", "logistic baseline: lr > 0, epochs >= 0");
    }
    const auto labeled = labeled_docs(docs);
    if (labeled.empty()) {
        throw Error::data("EmptyCorpus", "logistic baseline: no labeled documents");
    }
    bool has_pos = false, has_neg = false;
    for (const auto* d : labeled) {
        (*d->label == 1 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
        throw Error::data("SingleClassCorpus", "logistic baseline: need both labels");
    }

    std::vector<Eigen::VectorXd> features;
    std::vector<int> labels;
    features.reserve(labeled.size());
    for (const auto* d : labeled) {
        features.push_back(mean_pool(d->token_ids, emb));
        labels.push_back(*d->label);
    }

    LogisticModel m;
    m.weights = Eigen::VectorXd::Zero(emb.dim);
    m.bias = 0.0;
    Rng rng(seed);
    std::vector<std::size_t> order(features.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Eigen::VectorXd dw(emb.dim);
    double db = 0.0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t i : order) {
            logistic_loss_and_gradients(m, features[i], labels[i], &dw, &db);
            m.weights -= lr * dw;
            m.bias -= lr * db;
        }
    }
    return m;
}

ClassifierMetrics evaluate_logistic(const LogisticModel& m, const std::vector<text::EncodedDoc>& docs,
                                    const w2v::EmbeddingMatrix& emb, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw Error::config("InvalidThreshold", "evaluate: threshold must lie in (0,1)");
    }
    const auto labeled = labeled_docs(docs);
    if (labeled.empty()) {
        throw Error::data("EmptyEvalSet", "evaluate: no labeled documents");
    }
    std::size_t tp = 0, fp = 0, fn = 0;
    for (const auto* d : labeled) {
        const double p = logistic_forward(m, mean_pool(d->token_ids, emb));
        const bool predicted = p > threshold;
        const bool actual = *d->label == 1;
        if (predicted && actual) ++tp;
        if (predicted && !actual) ++fp;
        if (!predicted && actual) ++fn;
    }
    return metrics_from_counts(tp, fp, fn);
}

SentimentSeries daily_sentiment(const CnnWeights& w, const std::map<Date, std::vector<text::EncodedDoc>>& by_date,
                                const w2v::EmbeddingMatrix& emb, int max_len) {
    SentimentSeries series;
    for (const auto& [date, headlines] : by_date) {
        if (headlines.empty()) {
            throw Error::data("EmptyDay", "daily_sentiment: no headlines on " + date.to_string());
        }
        double acc = 0.0;
        for (const auto& doc : headlines) {
            acc += forward(w, embed_doc(doc.token_ids, emb, max_len));
        }
        series.dates.push_back(date);
        series.scores.push_back(acc / static_cast<double>(headlines.size()));
    }
    return series;
}

std::string metrics_report(const ClassifierMetrics& cnn_metrics, const ClassifierMetrics& logistic_metrics) {
    std::ostringstream out;
    char buf[128];
    out << "Metric      CNN       Logistic Regression\n";
    std::snprintf(buf, sizeof(buf), "precision   %.4f    %.4f\n", cnn_metrics.precision, logistic_metrics.precision);
    out << buf;
    std::snprintf(buf, sizeof(buf), "recall      %.4f    %.4f\n", cnn_metrics.recall, logistic_metrics.recall);
    out << buf;
    std::snprintf(buf, sizeof(buf), "F-score     %.4f    %.4f\n", cnn_metrics.f_score, logistic_metrics.f_score);
    out << buf;
    return out.str();
}

}  // namespace volcast::cnn
