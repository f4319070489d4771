#pragma once

#include <cmath>
#include <fstream>
#include <string>

#include "json.hpp"

#include "test_util.h"

namespace farecmp::test {

inline nlohmann::json load_golden(std::string const& name) {
  std::ifstream in{kSourceDir / "tests" / "golden" / name};
  return nlohmann::json::parse(in);
}

// Structural equality: identical key sets at every level, arrays in the same
// order, equal strings/booleans/nulls, numbers within `tol`. Returns the
// first mismatch as "<path>: <reason>", or an empty string.
inline std::string json_mismatch(nlohmann::json const& expected, nlohmann::json const& actual,
                                 double tol = 1e-9, std::string const& path = "$") {
  if (expected.is_number() && actual.is_number()) {
    auto const e = expected.get<double>();
    auto const a = actual.get<double>();
    return std::abs(e - a) <= tol ? "" : path + ": expected " + expected.dump() + ", got " + actual.dump();
  }
  if (expected.type() != actual.type()) {
    return path + ": expected " + std::string{expected.type_name()} + ", got " +
           std::string{actual.type_name()};
  }
  if (expected.is_object()) {
    for (auto const& [k, _] : expected.items()) {
      if (!actual.contains(k)) {
        return path + ": missing key \"" + k + "\"";
      }
    }
    for (auto const& [k, v] : actual.items()) {
      if (!expected.contains(k)) {
        return path + ": unexpected key \"" + k + "\"";
      }
      if (auto m = json_mismatch(expected[k], v, tol, path + "." + k); !m.empty()) {
        return m;
      }
    }
    return "";
  }
  if (expected.is_array()) {
    if (expected.size() != actual.size()) {
      return path + ": expected " + std::to_string(expected.size()) + " elements, got " +
             std::to_string(actual.size());
    }
    for (auto i = std::size_t{0}; i != expected.size(); ++i) {
      if (auto m = json_mismatch(expected[i], actual[i], tol, path + "[" + std::to_string(i) + "]");
          !m.empty()) {
        return m;
      }
    }
    return "";
  }
  return expected == actual ? "" : path + ": expected " + expected.dump() + ", got " + actual.dump();
}

}  // namespace farecmp::test
