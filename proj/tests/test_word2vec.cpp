#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support/finite_diff.hpp"
#include "volcast/errors.hpp"
#include "volcast/rng.hpp"
#include "volcast/word2vec.hpp"

using namespace volcast;
using volcast_tests::relative_error;

namespace {

// Two token clusters that never co-occur across sentences: ids 2..7 and
// 8..13. Tokens inside a sentence are drawn from one cluster only.
std::vector<std::vector<int>> cluster_corpus(int sentences, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<int>> docs;
    for (int s = 0; s < sentences; ++s) {
        const int base = s % 2 == 0 ? 2 : 8;
        std::vector<int> doc;
        for (int t = 0; t < 6; ++t) {
            doc.push_back(base + static_cast<int>(rng.below(6)));
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

struct ClusterCosines {
    double within = 0.0;
    double between = 0.0;
};

ClusterCosines cluster_cosines(const w2v::EmbeddingMatrix& emb) {
    ClusterCosines c;
    int n_within = 0, n_between = 0;
    for (int a = 2; a < 14; ++a) {
        for (int b = a + 1; b < 14; ++b) {
            const double cs = w2v::cosine_similarity(emb, a, b);
            const bool same = (a < 8) == (b < 8);
            (same ? c.within : c.between) += cs;
            (same ? n_within : n_between) += 1;
        }
    }
    c.within /= n_within;
    c.between /= n_between;
    return c;
}

}  // namespace

TEST_CASE("negative-sampling gradients match central finite differences") {
    Rng rng(17);
    const int dim = 12;
    Eigen::VectorXd center(dim), context(dim);
    std::vector<Eigen::VectorXd> negatives(3, Eigen::VectorXd(dim));
    for (int i = 0; i < dim; ++i) {
        center(i) = rng.uniform(-0.8, 0.8);
        context(i) = rng.uniform(-0.8, 0.8);
        for (auto& n : negatives) n(i) = rng.uniform(-0.8, 0.8);
    }
    // Distinct values per row so every coordinate is exercised.
    for (std::size_t k = 0; k < negatives.size(); ++k) negatives[k] *= (1.0 + 0.3 * static_cast<double>(k));

    const auto grads = w2v::pair_gradients(center, context, negatives);
    const double h = 1e-6;
    for (int i = 0; i < dim; ++i) {
        auto probe = [&](Eigen::VectorXd& vec, int idx, double* analytic) {
            const double saved = vec(idx);
            vec(idx) = saved + h;
            const double up = w2v::pair_loss(center, context, negatives);
            vec(idx) = saved - h;
            const double down = w2v::pair_loss(center, context, negatives);
            vec(idx) = saved;
            const double numeric = (up - down) / (2.0 * h);
            CHECK(relative_error(*analytic, numeric) <= 1e-5);
        };
        double g = grads.d_center(i);
        probe(center, i, &g);
        g = grads.d_context(i);
        probe(context, i, &g);
        for (std::size_t k = 0; k < negatives.size(); ++k) {
            g = grads.d_negatives[k](i);
            probe(negatives[k], i, &g);
        }
    }
}

TEST_CASE("training separates co-occurrence clusters") {
    const auto docs = cluster_corpus(300, 5);
    w2v::W2vConfig cfg;
    cfg.dim = 16;
    cfg.window = 3;
    cfg.negatives = 4;
    cfg.epochs = 12;
    cfg.lr = 0.05;
    cfg.seed = 31;
    const auto result = w2v::train_embeddings(docs, 14, cfg);

    const auto cos = cluster_cosines(result.embeddings);
    CHECK(cos.within > cos.between);
    CHECK(cos.within - cos.between >= 0.2);

    // Specific pair: always-co-occurring tokens vs a cross-cluster token.
    CHECK(w2v::cosine_similarity(result.embeddings, 2, 3) >
          w2v::cosine_similarity(result.embeddings, 2, 9));

    // Loss decreased and stayed finite.
    REQUIRE(result.epoch_loss.size() == 12);
    for (double l : result.epoch_loss) CHECK(std::isfinite(l));
    CHECK(result.epoch_loss.back() <= result.epoch_loss.front());
}

TEST_CASE("training is bitwise deterministic per seed") {
    const auto docs = cluster_corpus(40, 9);
    w2v::W2vConfig cfg;
    cfg.dim = 8;
    cfg.epochs = 2;
    cfg.seed = 77;
    const auto a = w2v::train_embeddings(docs, 14, cfg);
    const auto b = w2v::train_embeddings(docs, 14, cfg);
    CHECK(a.embeddings.input_vectors == b.embeddings.input_vectors);
    CHECK(a.embeddings.output_vectors == b.embeddings.output_vectors);

    cfg.seed = 78;
    const auto c = w2v::train_embeddings(docs, 14, cfg);
    CHECK(a.embeddings.input_vectors != c.embeddings.input_vectors);
}

TEST_CASE("zero epochs returns the initialization with a zero PAD row") {
    const auto docs = cluster_corpus(10, 2);
    w2v::W2vConfig cfg;
    cfg.dim = 6;
    cfg.epochs = 0;
    cfg.seed = 4;
    const auto result = w2v::train_embeddings(docs, 14, cfg);
    CHECK(result.epoch_loss.empty());
    CHECK(result.embeddings.input_vectors.row(0).norm() == 0.0);
    CHECK(result.embeddings.output_vectors.row(0).norm() == 0.0);
    CHECK(result.embeddings.input_vectors.row(2).norm() > 0.0);
    for (int r = 0; r < 14; ++r) {
        for (int c = 0; c < 6; ++c) {
            CHECK(std::fabs(result.embeddings.input_vectors(r, c)) <= 0.5 / 6.0);
        }
    }
}

TEST_CASE("PAD row stays zero through training") {
    auto docs = cluster_corpus(50, 3);
    docs.front().push_back(text::Vocabulary::pad_id);  // stray pad id is ignored
    w2v::W2vConfig cfg;
    cfg.dim = 8;
    cfg.epochs = 3;
    cfg.seed = 12;
    const auto result = w2v::train_embeddings(docs, 14, cfg);
    CHECK(result.embeddings.input_vectors.row(0).norm() == 0.0);
}

TEST_CASE("cosine_similarity hand cases") {
    w2v::EmbeddingMatrix emb;
    emb.dim = 2;
    emb.input_vectors = Eigen::MatrixXd::Zero(4, 2);
    emb.input_vectors.row(1) << 1.0, 0.0;
    emb.input_vectors.row(2) << 0.0, 2.0;
    emb.input_vectors.row(3) << -3.0, 0.0;
    emb.output_vectors = emb.input_vectors;

    CHECK(w2v::cosine_similarity(emb, 1, 1) == doctest::Approx(1.0));
    CHECK(w2v::cosine_similarity(emb, 1, 2) == doctest::Approx(0.0));
    CHECK(w2v::cosine_similarity(emb, 1, 3) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(w2v::cosine_similarity(emb, 0, 1), Error);  // zero row
    CHECK_THROWS_AS(w2v::cosine_similarity(emb, 1, 99), Error);
}

TEST_CASE("nearest_neighbors ordering and edge cases") {
    w2v::EmbeddingMatrix emb;
    emb.dim = 2;
    emb.input_vectors = Eigen::MatrixXd::Zero(5, 2);
    emb.input_vectors.row(1) << 1.0, 0.0;
    emb.input_vectors.row(2) << 0.9, 0.1;   // closest to 1
    emb.input_vectors.row(3) << 0.5, 0.5;
    emb.input_vectors.row(4) << -1.0, 0.0;  // antipodal
    emb.output_vectors = emb.input_vectors;

    const auto nn = w2v::nearest_neighbors(emb, 1, 3);
    REQUIRE(nn.size() == 3);
    CHECK(nn[0].first == 2);
    CHECK(nn[1].first == 3);
    CHECK(nn[2].first == 4);
    CHECK(nn[0].second > nn[1].second);

    CHECK(w2v::nearest_neighbors(emb, 1, 0).empty());
    CHECK_THROWS_AS(w2v::nearest_neighbors(emb, 0, 2), Error);  // PAD row is zero
    CHECK_THROWS_AS(w2v::nearest_neighbors(emb, 1, 99), Error);
}

TEST_CASE("embedding serialization has the documented header") {
    const auto vocab = text::build_vocabulary({{"up", "down"}}, 1);
    w2v::W2vConfig cfg;
    cfg.dim = 3;
    cfg.epochs = 0;
    const auto result = w2v::train_embeddings({{2, 3}}, vocab.size(), cfg);
    const auto textdump = w2v::to_text(result.embeddings, vocab);
    CHECK(textdump.find("4 3\n") == 0);
    CHECK(textdump.find("<pad> 0 0 0\n") != std::string::npos);
}
