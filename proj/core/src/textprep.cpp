#include "volcast/textprep.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "volcast/errors.hpp"

namespace volcast::text {

int Vocabulary::id_of(std::string_view token) const {
    const auto it = token_to_id.find(std::string(token));
    return it == token_to_id.end() ? unk_id : it->second;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            current.push_back(static_cast<char>(c));
        } else if (c >= 'A' && c <= 'Z') {
            current.push_back(static_cast<char>(c - 'A' + 'a'));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::unordered_set<std::string>& stoplist) {
    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (!stoplist.contains(t)) kept.push_back(t);
    }
    return kept;
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs, int min_count) {
    if (min_count < 1) {
        throw Error::config("InvalidMinCount", "build_vocabulary: min_count must be >= 1");
    }
    if (docs.empty()) {
        throw Error::data("EmptyCorpus", "build_vocabulary: no documents");
    }

    // std::map gives the lexicographic tiebreak for free.
    std::map<std::string, std::int64_t> freq;
    for (const auto& doc : docs) {
        for (const auto& token : doc) ++freq[token];
    }

    std::vector<std::pair<std::string, std::int64_t>> entries(freq.begin(), freq.end());
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    Vocabulary vocab;
    vocab.id_to_token = {"<pad>", "<unk>"};
    vocab.counts = {0, 0};
    vocab.token_to_id["<pad>"] = Vocabulary::pad_id;
    vocab.token_to_id["<unk>"] = Vocabulary::unk_id;
    for (const auto& [token, count] : entries) {
        if (count < min_count) {
            vocab.counts[Vocabulary::unk_id] += count;
            continue;
        }
        const int id = vocab.size();
        vocab.token_to_id[token] = id;
        vocab.id_to_token.push_back(token);
        vocab.counts.push_back(count);
    }
    return vocab;
}

std::vector<int> encode(const std::vector<std::string>& tokens, const Vocabulary& vocab, int max_len) {
    if (max_len < 1) {
        throw Error::config("InvalidMaxLen", "encode: max_len must be >= 1");
    }
    std::vector<int> ids(static_cast<std::size_t>(max_len), Vocabulary::pad_id);
    const auto limit = std::min<std::size_t>(tokens.size(), static_cast<std::size_t>(max_len));
    for (std::size_t i = 0; i < limit; ++i) {
        ids[i] = vocab.id_of(tokens[i]);
    }
    return ids;
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error::data("MissingInput", "cannot open stopword file: " + path.string());
    }
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) words.insert(line);
    }
    return words;
}

std::vector<Headline> load_headlines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error::data("MissingInput", "cannot open headline file: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw Error::data("EmptyFile", "headline file is empty: " + path.string());
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "date,headline") {
        throw Error::data("MalformedRow", "headline file: expected header 'date,headline' in " + path.string());
    }

    std::vector<Headline> headlines;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error::data("MalformedRow", "headline file line " + std::to_string(lineno) + ": missing comma");
        }
        const auto date = Date::try_parse(line.substr(0, comma));
        if (!date) {
            throw Error::data("MalformedRow", "headline file line " + std::to_string(lineno) + ": bad date");
        }
        std::string body = line.substr(comma + 1);
        if (body.size() >= 2 && body.front() == '"' && body.back() == '"') {
            body = body.substr(1, body.size() - 2);
            std::string unescaped;
            unescaped.reserve(body.size());
            for (std::size_t i = 0; i < body.size(); ++i) {
                unescaped.push_back(body[i]);
                if (body[i] == '"' && i + 1 < body.size() && body[i + 1] == '"') ++i;
            }
            body = std::move(unescaped);
        }
        headlines.push_back({*date, std::move(body)});
    }
    return headlines;
}

std::string to_text(const Vocabulary& vocab) {
    std::ostringstream out;
    for (int id = 0; id < vocab.size(); ++id) {
        out << id << '\t' << vocab.id_to_token[static_cast<std::size_t>(id)] << '\t'
            << vocab.counts[static_cast<std::size_t>(id)] << '\n';
    }
    return out.str();
}

}  // namespace volcast::text
