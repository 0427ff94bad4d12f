#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace volcast {

/// Broad failure categories; values double as CLI exit codes.
enum class ErrorCategory : int {
    config = 2,
    data = 3,
    numeric = 4,
};

inline const char* to_string(ErrorCategory cat) {
    switch (cat) {
        case ErrorCategory::config: return "config";
        case ErrorCategory::data: return "data";
        case ErrorCategory::numeric: return "numeric";
    }
    return "unknown";
}

/// Exception carrying a machine-parseable error code (e.g. "DuplicateDate")
/// plus the category that maps onto the CLI exit code.
class Error : public std::runtime_error {
  public:
    Error(ErrorCategory category, std::string code, const std::string& message)
        : std::runtime_error(message), category_(category), code_(std::move(code)) {}

    ErrorCategory category() const { return category_; }
    const std::string& code() const { return code_; }

    static Error config(std::string code, const std::string& message) {
        return Error(ErrorCategory::config, std::move(code), message);
    }
    static Error data(std::string code, const std::string& message) {
        return Error(ErrorCategory::data, std::move(code), message);
    }
    static Error numeric(std::string code, const std::string& message) {
        return Error(ErrorCategory::numeric, std::move(code), message);
    }

  private:
    ErrorCategory category_;
    std::string code_;
};

}  // namespace volcast
