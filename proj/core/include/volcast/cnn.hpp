#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "volcast/series.hpp"
#include "volcast/textprep.hpp"
#include "volcast/word2vec.hpp"

namespace volcast::cnn {

struct CnnConfig {
    int filters = 128;
    int kernel_width = 3;
    int embed_dim = 100;
    double lr = 0.05;
    int epochs = 10;
    int batch_size = 32;
    std::uint64_t seed = 1;
};

void validate(const CnnConfig& cfg);

/// Single conv layer (valid 1-D convolution + ReLU), global max pooling over
/// positions, sigmoid dense head.
struct CnnWeights {
    Eigen::MatrixXd conv_kernels;  // filters x (kernel_width * embed_dim), window flattened row-major
    Eigen::VectorXd conv_bias;     // filters
    Eigen::VectorXd dense_w;       // filters
    double dense_b = 0.0;
    int kernel_width = 0;
    int embed_dim = 0;
};

struct CnnGradients {
    Eigen::MatrixXd conv_kernels;
    Eigen::VectorXd conv_bias;
    Eigen::VectorXd dense_w;
    double dense_b = 0.0;
};

struct ClassifierMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
};

/// F = 2pr/(p+r), 0 when the denominator vanishes.
ClassifierMetrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

/// Embedding lookup producing the max_len x embed_dim input matrix; PAD and
/// out-of-range positions are zero rows.
Eigen::MatrixXd embed_doc(std::span<const int> token_ids, const w2v::EmbeddingMatrix& emb, int max_len);

double forward(const CnnWeights& w, const Eigen::MatrixXd& doc_embeddings);

/// Mean binary cross-entropy over the batch plus gradients for every weight
/// tensor (targets are 0/1 labels).
double batch_loss_and_gradients(const CnnWeights& w, std::span<const Eigen::MatrixXd> inputs,
                                std::span<const int> labels, CnnGradients* grads);

struct TrainResult {
    CnnWeights weights;
    std::vector<double> epoch_loss;
};

TrainResult train(const std::vector<text::EncodedDoc>& docs, const w2v::EmbeddingMatrix& emb,
                  const CnnConfig& cfg, int max_len);

ClassifierMetrics evaluate(const CnnWeights& w, const std::vector<text::EncodedDoc>& docs,
                           const w2v::EmbeddingMatrix& emb, int max_len, double threshold = 0.5);

/// Logistic regression on mean-pooled document embeddings, the benchmark
/// classifier.
struct LogisticModel {
    Eigen::VectorXd weights;
    double bias = 0.0;
};

Eigen::VectorXd mean_pool(std::span<const int> token_ids, const w2v::EmbeddingMatrix& emb);

double logistic_forward(const LogisticModel& m, const Eigen::VectorXd& features);

double logistic_loss_and_gradients(const LogisticModel& m, const Eigen::VectorXd& features, int label,
                                   Eigen::VectorXd* d_weights, double* d_bias);

LogisticModel train_logistic(const std::vector<text::EncodedDoc>& docs, const w2v::EmbeddingMatrix& emb,
                             double lr, int epochs, std::uint64_t seed);

ClassifierMetrics evaluate_logistic(const LogisticModel& m, const std::vector<text::EncodedDoc>& docs,
                                    const w2v::EmbeddingMatrix& emb, double threshold = 0.5);

/// Mean forward probability over each date's headlines.
SentimentSeries daily_sentiment(const CnnWeights& w, const std::map<Date, std::vector<text::EncodedDoc>>& by_date,
                                const w2v::EmbeddingMatrix& emb, int max_len);

/// Table-style 3-row report (precision / recall / F-score) for the CNN and
/// the logistic benchmark.
std::string metrics_report(const ClassifierMetrics& cnn_metrics, const ClassifierMetrics& logistic_metrics);

}  // namespace volcast::cnn
