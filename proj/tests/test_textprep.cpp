#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/tempdir.hpp"
#include "volcast/errors.hpp"
#include "volcast/textprep.hpp"

using namespace volcast;
using volcast_tests::TempDir;

TEST_CASE("tokenize lowercases and splits on non-alphanumerics") {
    CHECK(text::tokenize("Markets Fall, Again!") == std::vector<std::string>{"markets", "fall", "again"});
    CHECK(text::tokenize("").empty());
    CHECK(text::tokenize("S&P 500 drops 2%") == std::vector<std::string>{"s", "p", "500", "drops", "2"});
    CHECK(text::tokenize("...!!!").empty());
}

TEST_CASE("tokenize is idempotent over join of its own output") {
    for (const char* sample : {"Fed Holds Rates; Stocks Mixed", "3 banks fail 2nd stress-test", "plain words"}) {
        const auto once = text::tokenize(sample);
        std::string joined;
        for (const auto& t : once) {
            if (!joined.empty()) joined.push_back(' ');
            joined += t;
        }
        CHECK(text::tokenize(joined) == once);
    }
}

TEST_CASE("remove_stopwords filters while preserving order") {
    const std::unordered_set<std::string> stoplist{"the", "is"};
    CHECK(text::remove_stopwords({"the", "market", "is", "up"}, stoplist) ==
          std::vector<std::string>{"market", "up"});
    CHECK(text::remove_stopwords({"a", "b"}, {}) == std::vector<std::string>{"a", "b"});
    CHECK(text::remove_stopwords({"the", "is"}, stoplist).empty());
}

TEST_CASE("build_vocabulary orders by frequency then lexicographically") {
    const auto vocab = text::build_vocabulary({{"a", "a", "b"}}, 1);
    CHECK(vocab.size() == 4);  // pad, unk, a, b
    CHECK(vocab.id_of("a") == 2);
    CHECK(vocab.id_of("b") == 3);
    CHECK(vocab.counts[2] == 2);

    const auto pruned = text::build_vocabulary({{"a", "a", "b"}}, 2);
    CHECK(pruned.id_of("b") == text::Vocabulary::unk_id);
    CHECK(pruned.counts[text::Vocabulary::unk_id] == 1);

    const auto tied = text::build_vocabulary({{"b", "a"}}, 1);
    CHECK(tied.id_of("a") < tied.id_of("b"));

    CHECK_THROWS_AS(text::build_vocabulary({}, 1), Error);
    CHECK_THROWS_AS(text::build_vocabulary({{"a"}}, 0), Error);
}

TEST_CASE("vocabulary ids are a deterministic function of the corpus") {
    const std::vector<std::vector<std::string>> docs{{"gain", "rally", "gain"}, {"fear", "rally", "slump"}};
    const auto a = text::to_text(text::build_vocabulary(docs, 1));
    const auto b = text::to_text(text::build_vocabulary(docs, 1));
    CHECK(a == b);
    CHECK(a.find("0\t<pad>\t0") == 0);
    CHECK(a.find("1\t<unk>\t") != std::string::npos);
}

TEST_CASE("encode pads, truncates and maps unknowns") {
    const auto vocab = text::build_vocabulary({{"market", "up", "market"}}, 1);
    const int pad = text::Vocabulary::pad_id;
    const int unk = text::Vocabulary::unk_id;

    const auto padded = text::encode({"market", "up"}, vocab, 4);
    CHECK(padded == std::vector<int>{vocab.id_of("market"), vocab.id_of("up"), pad, pad});

    std::vector<std::string> ten(10, "market");
    CHECK(text::encode(ten, vocab, 4) == std::vector<int>(4, vocab.id_of("market")));

    CHECK(text::encode({"unseen"}, vocab, 2) == std::vector<int>{unk, pad});
    CHECK(text::encode({}, vocab, 3) == std::vector<int>(3, pad));
    CHECK_THROWS_AS(text::encode({"market"}, vocab, 0), Error);

    // Output length equals max_len for a spread of inputs.
    for (int len = 1; len < 9; ++len) {
        CHECK(text::encode({"market", "up", "unseen"}, vocab, len).size() == static_cast<std::size_t>(len));
    }
}

TEST_CASE("stopword and headline file loading") {
    TempDir tmp("textio");
    const auto stop = text::load_stopwords(tmp.write("stop.txt", "the\nis\n\nof\n"));
    CHECK(stop.size() == 3);
    CHECK(stop.contains("of"));

    const auto head = text::load_headlines(
        tmp.write("h.csv", "date,headline\n2014-12-03,Stocks rally on data\n2014-12-03,\"Fed says \"\"wait\"\"\"\n"));
    REQUIRE(head.size() == 2);
    CHECK(head[0].date == Date{2014, 12, 3});
    CHECK(head[0].text == "Stocks rally on data");
    CHECK(head[1].text == "Fed says \"wait\"");

    CHECK_THROWS_AS(text::load_headlines(tmp.write("bad.csv", "nope\n")), Error);
    CHECK_THROWS_AS(text::load_headlines(tmp.path() / "missing.csv"), Error);
}
