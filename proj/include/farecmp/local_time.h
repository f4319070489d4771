#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace farecmp {

// Wall-clock departure time with minute precision, no time zone.
struct local_datetime {
  std::chrono::year_month_day date{std::chrono::year{2025}, std::chrono::month{1},
                                    std::chrono::day{1}};
  int hour{0};
  int minute{0};

  friend bool operator==(local_datetime const&, local_datetime const&) = default;
};

// Accepts "YYYY-MM-DDTHH:MM" (a space may replace the 'T'; a trailing ":00"
// seconds field is tolerated). Returns nullopt on anything else.
std::optional<local_datetime> parse_local_datetime(std::string_view);

// "YYYY-MM-DDTHH:MM"
std::string to_iso_string(local_datetime const&);

}  // namespace farecmp
