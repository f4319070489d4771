#include "farecmp/csv.h"

namespace farecmp::csv {

std::string_view trim(std::string_view s) {
  auto const ws = " \t\r\n\v\f";
  auto const b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) {
    return {};
  }
  auto const e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool is_skippable(std::string_view line) {
  auto const t = trim(line);
  return t.empty() || t.front() == '#';
}

bool split_line(std::string_view line, std::vector<std::string>& out) {
  out.clear();
  if (!line.empty() && line.back() == '\r') {
    line.remove_suffix(1);
  }
  std::string field;
  auto in_quotes = false;
  for (auto i = std::size_t{0}; i != line.size(); ++i) {
    auto const c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 != line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(std::move(field));
  return !in_quotes;
}

}  // namespace farecmp::csv
