#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace volcast {

/// Calendar date. Parsing and formatting are fixed to ISO-8601 (YYYY-MM-DD)
/// so serialized artifacts are byte-stable.
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    auto operator<=>(const Date&) const = default;

    bool ok() const;

    /// Days since 1970-01-01 (civil calendar, may be negative).
    std::int64_t serial() const;

    /// 0 = Monday .. 6 = Sunday.
    int weekday() const;

    Date plus_days(int n) const;

    std::string to_string() const;

    static std::optional<Date> try_parse(std::string_view iso);
    static Date from_serial(std::int64_t days);
};

inline bool is_weekend(const Date& d) { return d.weekday() >= 5; }

}  // namespace volcast
