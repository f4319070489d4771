#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>

namespace farecmp {

// INR amount in paise. Fares are only ever rounded once, at the end of a
// pricing formula, via round_to_rupee().
struct money {
  std::int64_t paise{0};

  static constexpr money from_rupees(std::integral auto rupees) {
    return money{static_cast<std::int64_t>(rupees) * 100};
  }
  static money from_rupees(std::floating_point auto rupees) {
    return from_rupees_real(static_cast<double>(rupees));
  }
  static money from_rupees_real(double rupees);  // rounded to the nearest paisa

  constexpr double rupees() const { return static_cast<double>(paise) / 100.0; }
  constexpr std::int64_t whole_rupees() const { return paise / 100; }
  constexpr bool is_whole_rupees() const { return paise % 100 == 0; }

  friend constexpr money operator+(money a, money b) { return money{a.paise + b.paise}; }
  friend constexpr money operator-(money a, money b) { return money{a.paise - b.paise}; }
  friend constexpr auto operator<=>(money, money) = default;
};

inline constexpr char const* kCurrency = "INR";

// Half-up rounding of a real-valued paise amount to a multiple of 100 paise.
// Sub-paise floating noise is removed first so that e.g. 2449.9999999 paise
// behaves as 2450.
money round_to_rupee(double paise);

std::string to_string(money);

}  // namespace farecmp
