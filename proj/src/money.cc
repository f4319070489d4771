#include "farecmp/money.h"

#include <cmath>

namespace farecmp {

money money::from_rupees_real(double rupees) { return money{std::llround(rupees * 100.0)}; }

money round_to_rupee(double paise) {
  auto const exact = std::llround(paise);
  auto const rupees = exact >= 0 ? (exact + 50) / 100 : -((-exact + 49) / 100);
  return money{rupees * 100};
}

std::string to_string(money m) {
  auto const sign = m.paise < 0 ? "-" : "";
  auto const abs = m.paise < 0 ? -m.paise : m.paise;
  auto s = std::string{sign} + "Rs " + std::to_string(abs / 100);
  if (abs % 100 != 0) {
    auto const frac = abs % 100;
    s += (frac < 10 ? ".0" : ".") + std::to_string(frac);
  }
  return s;
}

}  // namespace farecmp
