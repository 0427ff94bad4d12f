#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "volcast/dates.hpp"

namespace volcast::text {

/// Token ids assigned by descending corpus frequency (ties lexicographic),
/// after the two reserved ids.
struct Vocabulary {
    static constexpr int pad_id = 0;
    static constexpr int unk_id = 1;

    std::unordered_map<std::string, int> token_to_id;
    std::vector<std::string> id_to_token;   // inverse, index = id
    std::vector<std::int64_t> counts;       // corpus frequency per id

    int size() const { return static_cast<int>(id_to_token.size()); }
    int id_of(std::string_view token) const;
};

struct EncodedDoc {
    Date date;
    std::vector<int> token_ids;
    std::optional<int> label;  // binary {0,1} when present
};

struct Headline {
    Date date;
    std::string text;
};

/// Lowercases and splits on non-alphanumeric boundaries (bytewise; anything
/// outside [a-z0-9] separates tokens).
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::unordered_set<std::string>& stoplist);

/// Tokens seen fewer than min_count times map to UNK.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs, int min_count);

/// Unknown tokens become UNK; output is truncated to max_len or right-padded
/// with PAD, so its length is always max_len.
std::vector<int> encode(const std::vector<std::string>& tokens, const Vocabulary& vocab, int max_len);

/// One token per line, UTF-8.
std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);

/// CSV with header `date,headline`; the headline is everything after the
/// first comma (surrounding double quotes are stripped, "" unescapes).
std::vector<Headline> load_headlines(const std::filesystem::path& path);

/// `id<TAB>token<TAB>count` lines.
std::string to_text(const Vocabulary& vocab);

}  // namespace volcast::text
