#pragma once

#include <stdexcept>
#include <string>

namespace farecmp {

// Root of every domain error thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File-level parse failure. line() is 1-based, 0 when not line-oriented.
struct parse_error : error {
  parse_error(std::string const& source, std::size_t line, std::string const& what)
      : error{source + (line != 0 ? ":" + std::to_string(line) : "") + ": " + what},
        line_{line} {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

struct io_error : error {
  using error::error;
};

}  // namespace farecmp
