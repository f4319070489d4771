#include "farecmp/local_time.h"

#include <cstdio>

namespace farecmp {

namespace {

std::optional<int> digits(std::string_view s, std::size_t pos, std::size_t n) {
  if (pos + n > s.size()) {
    return std::nullopt;
  }
  auto v = 0;
  for (auto i = pos; i != pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') {
      return std::nullopt;
    }
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

}  // namespace

std::optional<local_datetime> parse_local_datetime(std::string_view s) {
  // 0123456789012345678
  // YYYY-MM-DDTHH:MM[:SS]
  if (s.size() != 16 && s.size() != 19) {
    return std::nullopt;
  }
  if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':') {
    return std::nullopt;
  }
  auto const y = digits(s, 0, 4);
  auto const mo = digits(s, 5, 2);
  auto const d = digits(s, 8, 2);
  auto const h = digits(s, 11, 2);
  auto const mi = digits(s, 14, 2);
  if (!y || !mo || !d || !h || !mi) {
    return std::nullopt;
  }
  if (s.size() == 19 && (s[16] != ':' || digits(s, 17, 2) != 0)) {
    return std::nullopt;
  }
  auto const date = std::chrono::year_month_day{
      std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*mo)},
      std::chrono::day{static_cast<unsigned>(*d)}};
  if (!date.ok() || *h > 23 || *mi > 59) {
    return std::nullopt;
  }
  return local_datetime{date, *h, *mi};
}

std::string to_iso_string(local_datetime const& t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d", static_cast<int>(t.date.year()),
                static_cast<unsigned>(t.date.month()), static_cast<unsigned>(t.date.day()),
                t.hour, t.minute);
  return buf;
}

}  // namespace farecmp
