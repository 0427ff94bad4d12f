#include "volcast/config.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "volcast/errors.hpp"

namespace volcast::config {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

class KeyValueDoc {
  public:
    explicit KeyValueDoc(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) {
            throw Error::config("MissingInput", "cannot open config file: " + path.string());
        }
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw Error::config("MalformedConfig",
                                    "config line " + std::to_string(lineno) + ": expected key = value");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) {
                throw Error::config("MalformedConfig", "config line " + std::to_string(lineno) + ": empty key");
            }
            if (!entries_.emplace(key, value).second) {
                throw Error::config("MalformedConfig", "config: duplicate key '" + key + "'");
            }
        }
    }

    bool has(const std::string& key) {
        consumed_.insert(key);
        return entries_.contains(key);
    }

    std::string get_string(const std::string& key, const std::string& fallback = "") {
        consumed_.insert(key);
        const auto it = entries_.find(key);
        return it == entries_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) {
        consumed_.insert(key);
        const auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        try {
            std::size_t used = 0;
            const double v = std::stod(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw Error::config("MalformedConfig", "config: key '" + key + "' is not a number");
        }
    }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) {
        consumed_.insert(key);
        const auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        try {
            std::size_t used = 0;
            const std::int64_t v = std::stoll(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw Error::config("MalformedConfig", "config: key '" + key + "' is not an integer");
        }
    }

    bool get_bool(const std::string& key, bool fallback) {
        consumed_.insert(key);
        const auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        if (it->second == "true" || it->second == "1") return true;
        if (it->second == "false" || it->second == "0") return false;
        throw Error::config("MalformedConfig", "config: key '" + key + "' must be true or false");
    }

    std::vector<double> get_double_list(const std::string& key, std::vector<double> fallback) {
        consumed_.insert(key);
        const auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        std::vector<double> out;
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            try {
                out.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw Error::config("MalformedConfig", "config: key '" + key + "' has a non-numeric entry");
            }
        }
        if (out.empty()) {
            throw Error::config("MalformedConfig", "config: key '" + key + "' lists no values");
        }
        return out;
    }

    void reject_unknown_keys() const {
        for (const auto& [key, value] : entries_) {
            if (!consumed_.contains(key)) {
                throw Error::config("UnknownKey", "config: unknown key '" + key + "'");
            }
        }
    }

  private:
    std::map<std::string, std::string> entries_;
    std::set<std::string> consumed_;
};

void require_path(const std::filesystem::path& p, const char* what) {
    if (p.empty()) {
        throw Error::config("MissingInput", std::string(what) + " path is required but not configured");
    }
    if (!std::filesystem::exists(p)) {
        throw Error::config("MissingInput", std::string(what) + " file not found: " + p.string());
    }
}

}  // namespace

RunConfig load(const std::filesystem::path& path) {
    KeyValueDoc doc(path);
    RunConfig cfg;

    cfg.prices = doc.get_string("prices");
    cfg.headlines = doc.get_string("headlines");
    cfg.stopwords = doc.get_string("stopwords");
    cfg.output_dir = doc.get_string("output_dir", cfg.output_dir.string());
    cfg.seed = static_cast<std::uint64_t>(doc.get_int("seed", static_cast<std::int64_t>(cfg.seed)));

    if (doc.has("split.boundary_date")) {
        const auto text = doc.get_string("split.boundary_date");
        const auto date = Date::try_parse(text);
        if (!date) {
            throw Error::config("MalformedConfig", "config: split.boundary_date is not an ISO-8601 date");
        }
        cfg.split.boundary_date = *date;
    }
    if (doc.has("split.train_fraction")) {
        cfg.split.train_fraction = doc.get_double("split.train_fraction", 0.0);
    }

    cfg.models.garch = doc.get_bool("models.garch", cfg.models.garch);
    cfg.models.svr = doc.get_bool("models.svr", cfg.models.svr);
    cfg.models.lstm = doc.get_bool("models.lstm", cfg.models.lstm);
    cfg.models.lstm_sentiment = doc.get_bool("models.lstm_sentiment", cfg.models.lstm_sentiment);
    cfg.models.lstm_sentiment_shifted =
        doc.get_bool("models.lstm_sentiment_shifted", cfg.models.lstm_sentiment_shifted);

    cfg.garch_order.p = static_cast<int>(doc.get_int("garch.p", cfg.garch_order.p));
    cfg.garch_order.q = static_cast<int>(doc.get_int("garch.q", cfg.garch_order.q));

    cfg.svr_hyper.c = doc.get_double("svr.c", cfg.svr_hyper.c);
    cfg.svr_hyper.gamma = doc.get_double("svr.gamma", cfg.svr_hyper.gamma);
    cfg.svr_hyper.epsilon = doc.get_double("svr.epsilon", cfg.svr_hyper.epsilon);
    cfg.svr_lag = static_cast<int>(doc.get_int("svr.lag", cfg.svr_lag));
    cfg.svr_grid_search = doc.get_bool("svr.grid_search", cfg.svr_grid_search);
    cfg.svr_grid.folds = static_cast<int>(doc.get_int("svr.folds", 20));
    cfg.svr_grid.c_grid = doc.get_double_list("svr.c_grid", {0.5, 2.0, 8.0});
    cfg.svr_grid.gamma_grid = doc.get_double_list("svr.gamma_grid", {0.001, 0.01, 0.1});
    cfg.svr_grid.epsilon_grid = doc.get_double_list("svr.epsilon_grid", {cfg.svr_hyper.epsilon});

    cfg.text_max_len = static_cast<int>(doc.get_int("text.max_len", cfg.text_max_len));
    cfg.text_min_count = static_cast<int>(doc.get_int("text.min_count", cfg.text_min_count));

    cfg.w2v.dim = static_cast<int>(doc.get_int("w2v.dim", cfg.w2v.dim));
    cfg.w2v.window = static_cast<int>(doc.get_int("w2v.window", cfg.w2v.window));
    cfg.w2v.negatives = static_cast<int>(doc.get_int("w2v.negatives", cfg.w2v.negatives));
    cfg.w2v.epochs = static_cast<int>(doc.get_int("w2v.epochs", cfg.w2v.epochs));
    cfg.w2v.lr = doc.get_double("w2v.lr", cfg.w2v.lr);
    cfg.cnn.embed_dim = cfg.w2v.dim;  // one knob drives both sides

    cfg.cnn.filters = static_cast<int>(doc.get_int("cnn.filters", cfg.cnn.filters));
    cfg.cnn.kernel_width = static_cast<int>(doc.get_int("cnn.kernel_width", cfg.cnn.kernel_width));
    cfg.cnn.lr = doc.get_double("cnn.lr", cfg.cnn.lr);
    cfg.cnn.epochs = static_cast<int>(doc.get_int("cnn.epochs", cfg.cnn.epochs));
    cfg.cnn.batch_size = static_cast<int>(doc.get_int("cnn.batch_size", cfg.cnn.batch_size));
    cfg.cnn_threshold = doc.get_double("cnn.threshold", cfg.cnn_threshold);

    cfg.lstm.hidden = static_cast<int>(doc.get_int("lstm.hidden", cfg.lstm.hidden));
    cfg.lstm.dropout = doc.get_double("lstm.dropout", cfg.lstm.dropout);
    cfg.lstm.lookback = static_cast<int>(doc.get_int("lstm.lookback", cfg.lstm.lookback));
    cfg.lstm.lr = doc.get_double("lstm.lr", cfg.lstm.lr);
    cfg.lstm.epochs = static_cast<int>(doc.get_int("lstm.epochs", cfg.lstm.epochs));
    cfg.lstm.batch_size = static_cast<int>(doc.get_int("lstm.batch_size", cfg.lstm.batch_size));

    cfg.plot_model = doc.get_string("plot.model", cfg.plot_model);

    doc.reject_unknown_keys();
    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    require_path(cfg.prices, "prices");
    try {
        volcast::validate(cfg.split);
    } catch (const Error& e) {
        throw Error::config("InvalidSplitSpec", e.what());
    }

    if (cfg.models.any_sentiment()) {
        if (cfg.headlines.empty()) {
            throw Error::config("ConfigError",
                                "sentiment models are enabled but no headlines file is configured");
        }
        if (cfg.stopwords.empty()) {
            throw Error::config("ConfigError",
                                "sentiment models are enabled but no stopwords file is configured");
        }
    }
    if (!cfg.headlines.empty()) require_path(cfg.headlines, "headlines");
    if (!cfg.stopwords.empty()) require_path(cfg.stopwords, "stopwords");

    try {
        garch::validate(cfg.garch_order);
        svr::validate(cfg.svr_hyper);
        w2v::validate(cfg.w2v);
        cnn::validate(cfg.cnn);
        lstm::validate(cfg.lstm);
    } catch (const Error& e) {
        throw Error::config(e.code(), e.what());
    }

    if (cfg.svr_lag < 1) {
        throw Error::config("ConfigError", "svr.lag must be >= 1");
    }
    if (cfg.text_max_len < 1 || cfg.text_min_count < 1) {
        throw Error::config("ConfigError", "text.max_len and text.min_count must be >= 1");
    }
    if (cfg.cnn.kernel_width > cfg.text_max_len) {
        throw Error::config("ConfigError", "cnn.kernel_width must not exceed text.max_len");
    }
    if (!(cfg.cnn_threshold > 0.0 && cfg.cnn_threshold < 1.0)) {
        throw Error::config("ConfigError", "cnn.threshold must lie in (0,1)");
    }
    if (cfg.w2v.dim != cfg.cnn.embed_dim) {
        throw Error::config("ConfigError", "w2v.dim must equal the cnn embedding dimension");
    }
    static const std::vector<std::string> known_models = {"garch", "svr", "lstm", "lstm_sentiment",
                                                          "lstm_sentiment_shifted"};
    bool known = false;
    for (const auto& m : known_models) known = known || m == cfg.plot_model;
    if (!known) {
        throw Error::config("ConfigError", "plot.model must name one of the five models");
    }
}

}  // namespace volcast::config
