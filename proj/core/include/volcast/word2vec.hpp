#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "volcast/textprep.hpp"

namespace volcast::w2v {

struct W2vConfig {
    int dim = 100;
    int window = 4;     // context radius
    int negatives = 5;  // noise samples per positive pair
    int epochs = 5;
    double lr = 0.025;
    std::uint64_t seed = 1;
};

void validate(const W2vConfig& cfg);

/// Row r of each matrix is the vector for token id r. The PAD row of
/// input_vectors stays zero.
struct EmbeddingMatrix {
    int dim = 0;
    Eigen::MatrixXd input_vectors;   // |V| x dim
    Eigen::MatrixXd output_vectors;  // |V| x dim
};

struct TrainResult {
    EmbeddingMatrix embeddings;
    std::vector<double> epoch_loss;  // mean per-pair loss per epoch
};

/// Skip-gram with negative sampling; unigram^0.75 noise distribution; linear
/// learning-rate decay to 1e-4 * lr. Deterministic for a fixed seed.
TrainResult train_embeddings(const std::vector<std::vector<int>>& docs, int vocab_size, const W2vConfig& cfg);

/// Loss of one (center, context, negatives) triple; the unit the trainer
/// optimizes and the surface the gradient checks probe.
double pair_loss(const Eigen::VectorXd& center, const Eigen::VectorXd& context,
                 const std::vector<Eigen::VectorXd>& negatives);

struct PairGradients {
    Eigen::VectorXd d_center;
    Eigen::VectorXd d_context;
    std::vector<Eigen::VectorXd> d_negatives;
};

PairGradients pair_gradients(const Eigen::VectorXd& center, const Eigen::VectorXd& context,
                             const std::vector<Eigen::VectorXd>& negatives);

double cosine_similarity(const EmbeddingMatrix& emb, int a, int b);

/// Descending similarity, excluding the query id; ties break by ascending id.
std::vector<std::pair<int, double>> nearest_neighbors(const EmbeddingMatrix& emb, int a, int k);

/// Text form: first line `vocab_size dim`, then `token v1 ... v_dim` rows.
std::string to_text(const EmbeddingMatrix& emb, const text::Vocabulary& vocab);

}  // namespace volcast::w2v
