#pragma once

// Linearly separable headline corpus: the label is the presence of one of
// two marker tokens. Shared by the classifier tests and the acceptance
// suite.

#include <vector>

#include "volcast/rng.hpp"
#include "volcast/textprep.hpp"
#include "volcast/word2vec.hpp"

namespace volcast_tests {

struct SeparableCorpus {
    std::vector<volcast::text::EncodedDoc> docs;
    volcast::w2v::EmbeddingMatrix embeddings;
    int vocab_size = 14;
    int max_len = 10;
    static constexpr int positive_marker = 12;
    static constexpr int negative_marker = 13;
};

inline SeparableCorpus make_separable_corpus(int n_docs, std::uint64_t seed, int embed_dim = 8) {
    volcast::Rng rng(seed);
    SeparableCorpus corpus;

    corpus.embeddings.dim = embed_dim;
    corpus.embeddings.input_vectors.resize(corpus.vocab_size, embed_dim);
    for (int r = 0; r < corpus.vocab_size; ++r) {
        for (int c = 0; c < embed_dim; ++c) {
            corpus.embeddings.input_vectors(r, c) = rng.uniform(-0.6, 0.6);
        }
    }
    corpus.embeddings.input_vectors.row(volcast::text::Vocabulary::pad_id).setZero();
    corpus.embeddings.output_vectors = corpus.embeddings.input_vectors;

    volcast::Date day{2020, 1, 1};
    for (int i = 0; i < n_docs; ++i) {
        const int label = i % 2;
        const int len = 6 + static_cast<int>(rng.below(3));
        std::vector<int> ids;
        for (int t = 0; t < len; ++t) {
            ids.push_back(2 + static_cast<int>(rng.below(10)));  // fillers
        }
        const auto marker_pos = rng.below(static_cast<std::uint64_t>(len));
        ids[marker_pos] = label == 1 ? SeparableCorpus::positive_marker : SeparableCorpus::negative_marker;
        corpus.docs.push_back({day, std::move(ids), label});
        day = day.plus_days(1);
    }
    return corpus;
}

}  // namespace volcast_tests
