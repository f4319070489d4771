#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace farecmp::csv {

// Minimal RFC 4180 field splitting for a single line: commas separate
// fields, double quotes may enclose a field and "" escapes a quote.
// Returns false on an unterminated quote.
bool split_line(std::string_view line, std::vector<std::string>& out);

std::string_view trim(std::string_view);

// True for lines that carry no data (blank or '#' comment).
bool is_skippable(std::string_view line);

}  // namespace farecmp::csv
