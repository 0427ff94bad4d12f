#include "volcast/word2vec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "volcast/errors.hpp"
#include "volcast/rng.hpp"

namespace volcast::w2v {

namespace {

constexpr int kPad = text::Vocabulary::pad_id;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(sigmoid(z)) without overflow for large |z|.
double log_sigmoid(double z) { return z >= 0.0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z)); }

// Cumulative unigram^0.75 table over ids that occur in the corpus; sampling
// is a binary search over the cumulative weights.
class NoiseTable {
  public:
    NoiseTable(const std::vector<std::int64_t>& counts) {
        double acc = 0.0;
        for (std::size_t id = 0; id < counts.size(); ++id) {
            if (id == kPad || counts[id] == 0) continue;
            acc += std::pow(static_cast<double>(counts[id]), 0.75);
            ids_.push_back(static_cast<int>(id));
            cumulative_.push_back(acc);
        }
    }

    bool usable() const { return ids_.size() >= 2; }

    int sample(Rng& rng) const {
        const double u = rng.uniform() * cumulative_.back();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                               ids_.size() - 1);
        return ids_[idx];
    }

  private:
    std::vector<int> ids_;
    std::vector<double> cumulative_;
};

}  // namespace

void validate(const W2vConfig& cfg) {
    if (cfg.dim < 1 || cfg.window < 1 || cfg.negatives < 1 || cfg.epochs < 0 || !(cfg.lr > 0.0)) {
        throw Error::config("InvalidW2vConfig", "word2vec config: need dim,window,negatives >= 1 and lr > 0");
    }
}

double pair_loss(const Eigen::VectorXd& center, const Eigen::VectorXd& context,
                 const std::vector<Eigen::VectorXd>& negatives) {
    double loss = -log_sigmoid(context.dot(center));
    for (const auto& neg : negatives) {
        loss -= log_sigmoid(-neg.dot(center));
    }
    return loss;
}

PairGradients pair_gradients(const Eigen::VectorXd& center, const Eigen::VectorXd& context,
                             const std::vector<Eigen::VectorXd>& negatives) {
    PairGradients g;
    const double pos = sigmoid(context.dot(center)) - 1.0;
    g.d_context = pos * center;
    g.d_center = pos * context;
    g.d_negatives.reserve(negatives.size());
    for (const auto& neg : negatives) {
        const double s = sigmoid(neg.dot(center));
        g.d_negatives.push_back(s * center);
        g.d_center += s * neg;
    }
    return g;
}

TrainResult train_embeddings(const std::vector<std::vector<int>>& docs, int vocab_size, const W2vConfig& cfg) {
    validate(cfg);
    if (docs.empty()) {
        throw Error::data("EmptyCorpus", "word2vec: no documents");
    }
    std::vector<std::int64_t> counts(static_cast<std::size_t>(vocab_size), 0);
    std::size_t tokens = 0;
    for (const auto& doc : docs) {
        for (int id : doc) {
            if (id < 0 || id >= vocab_size) {
                throw Error::data("InvalidId", "word2vec: token id out of range");
            }
            if (id != kPad) {
                ++counts[static_cast<std::size_t>(id)];
                ++tokens;
            }
        }
    }
    if (tokens == 0) {
        throw Error::data("EmptyCorpus", "word2vec: corpus has no non-pad tokens");
    }

    Rng rng(cfg.seed);
    TrainResult result;
    EmbeddingMatrix& emb = result.embeddings;
    emb.dim = cfg.dim;
    const double half = 0.5 / cfg.dim;
    emb.input_vectors.resize(vocab_size, cfg.dim);
    emb.output_vectors.resize(vocab_size, cfg.dim);
    for (int r = 0; r < vocab_size; ++r) {
        for (int c = 0; c < cfg.dim; ++c) emb.input_vectors(r, c) = rng.uniform(-half, half);
    }
    for (int r = 0; r < vocab_size; ++r) {
        for (int c = 0; c < cfg.dim; ++c) emb.output_vectors(r, c) = rng.uniform(-half, half);
    }
    emb.input_vectors.row(kPad).setZero();
    emb.output_vectors.row(kPad).setZero();

    // Count the positive pairs once so the linear decay can be scheduled over
    // the whole run.
    std::size_t pairs_per_epoch = 0;
    for (const auto& doc : docs) {
        const auto len = static_cast<std::ptrdiff_t>(doc.size());
        for (std::ptrdiff_t t = 0; t < len; ++t) {
            if (doc[static_cast<std::size_t>(t)] == kPad) continue;
            for (std::ptrdiff_t off = -cfg.window; off <= cfg.window; ++off) {
                const auto u = t + off;
                if (off == 0 || u < 0 || u >= len) continue;
                if (doc[static_cast<std::size_t>(u)] == kPad) continue;
                ++pairs_per_epoch;
            }
        }
    }
    const double total_pairs = static_cast<double>(pairs_per_epoch) * std::max(cfg.epochs, 1);

    NoiseTable noise(counts);
    Eigen::VectorXd center_grad(cfg.dim);
    std::vector<int> neg_ids(static_cast<std::size_t>(cfg.negatives));
    std::size_t processed = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        double epoch_loss = 0.0;
        std::size_t epoch_pairs = 0;
        for (const auto& doc : docs) {
            const auto len = static_cast<std::ptrdiff_t>(doc.size());
            for (std::ptrdiff_t t = 0; t < len; ++t) {
                const int center_id = doc[static_cast<std::size_t>(t)];
                if (center_id == kPad) continue;
                for (std::ptrdiff_t off = -cfg.window; off <= cfg.window; ++off) {
                    const auto u = t + off;
                    if (off == 0 || u < 0 || u >= len) continue;
                    const int context_id = doc[static_cast<std::size_t>(u)];
                    if (context_id == kPad) continue;

                    const double lr =
                        std::max(cfg.lr * (1.0 - static_cast<double>(processed) / total_pairs), 1e-4 * cfg.lr);
                    ++processed;

                    for (int k = 0; k < cfg.negatives; ++k) {
                        int neg = noise.sample(rng);
                        for (int attempt = 0; neg == context_id && attempt < 100 && noise.usable(); ++attempt) {
                            neg = noise.sample(rng);
                        }
                        neg_ids[static_cast<std::size_t>(k)] = neg;
                    }

                    auto center = emb.input_vectors.row(center_id);
                    auto context = emb.output_vectors.row(context_id);

                    const double z_pos = context.dot(center);
                    double loss = -log_sigmoid(z_pos);
                    const double g_pos = sigmoid(z_pos) - 1.0;
                    center_grad = g_pos * context.transpose();
                    for (int k = 0; k < cfg.negatives; ++k) {
                        auto neg = emb.output_vectors.row(neg_ids[static_cast<std::size_t>(k)]);
                        const double z_neg = neg.dot(center);
                        loss -= log_sigmoid(-z_neg);
                        const double g_neg = sigmoid(z_neg);
                        center_grad += g_neg * neg.transpose();
                        emb.output_vectors.row(neg_ids[static_cast<std::size_t>(k)]) -= lr * g_neg * center;
                    }
                    emb.output_vectors.row(context_id) -= lr * g_pos * center;
                    emb.input_vectors.row(center_id) -= lr * center_grad.transpose();

                    epoch_loss += loss;
                    ++epoch_pairs;
                }
            }
        }
        result.epoch_loss.push_back(epoch_pairs == 0 ? 0.0 : epoch_loss / static_cast<double>(epoch_pairs));
    }
    return result;
}

double cosine_similarity(const EmbeddingMatrix& emb, int a, int b) {
    if (a < 0 || b < 0 || a >= emb.input_vectors.rows() || b >= emb.input_vectors.rows()) {
        throw Error::data("InvalidId", "cosine_similarity: token id out of range");
    }
    const auto va = emb.input_vectors.row(a);
    const auto vb = emb.input_vectors.row(b);
    const double na = va.norm(), nb = vb.norm();
    if (na == 0.0 || nb == 0.0) {
        throw Error::numeric("ZeroVector", "cosine_similarity: zero embedding row");
    }
    return va.dot(vb) / (na * nb);
}

std::vector<std::pair<int, double>> nearest_neighbors(const EmbeddingMatrix& emb, int a, int k) {
    const auto vocab = static_cast<int>(emb.input_vectors.rows());
    if (a < 0 || a >= vocab || k < 0 || k >= vocab) {
        throw Error::data("InvalidId", "nearest_neighbors: id or k out of range");
    }
    if (emb.input_vectors.row(a).norm() == 0.0) {
        throw Error::numeric("ZeroVector", "nearest_neighbors: query row is zero");
    }
    std::vector<std::pair<int, double>> sims;
    for (int other = 0; other < vocab; ++other) {
        if (other == a) continue;
        if (emb.input_vectors.row(other).norm() == 0.0) continue;
        sims.emplace_back(other, cosine_similarity(emb, a, other));
    }
    std::sort(sims.begin(), sims.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second > y.second;
        return x.first < y.first;
    });
    if (sims.size() > static_cast<std::size_t>(k)) sims.resize(static_cast<std::size_t>(k));
    return sims;
}

std::string to_text(const EmbeddingMatrix& emb, const text::Vocabulary& vocab) {
    std::ostringstream out;
    const auto rows = static_cast<int>(emb.input_vectors.rows());
    out << rows << ' ' << emb.dim << '\n';
    char buf[32];
    for (int r = 0; r < rows; ++r) {
        out << vocab.id_to_token[static_cast<std::size_t>(r)];
        for (int c = 0; c < emb.dim; ++c) {
            std::snprintf(buf, sizeof(buf), "%.8g", emb.input_vectors(r, c));
            out << ' ' << buf;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace volcast::w2v
