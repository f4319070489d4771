#include "farecmp/fare_models.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace farecmp {

namespace {

void require_non_negative(double v, char const* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw negative_input{std::string{what} + " must be a finite value >= 0, got " +
                         std::to_string(v)};
  }
}

void require_param(bool ok, std::string const& what) {
  if (!ok) {
    throw invalid_parameters{what};
  }
}

void validate_window(hour_window const& w, char const* what) {
  require_param(w.start_hour >= 0 && w.start_hour <= 24 && w.end_hour >= 0 && w.end_hour <= 24,
                std::string{what} + " hours must lie in [0, 24]");
}

bool in_any(std::vector<hour_window> const& windows, int hour) {
  return std::any_of(begin(windows), end(windows),
                     [&](hour_window const& w) { return w.contains(hour); });
}

}  // namespace

too_many_passengers::too_many_passengers(int passengers)
    : invalid_passengers{"no vehicle class seats " + std::to_string(passengers) +
                         " passengers (max " + std::to_string(kMaxPassengers) + ")"} {}

std::string_view to_string(traffic_level t) {
  switch (t) {
    case traffic_level::low: return "low";
    case traffic_level::medium: return "medium";
    case traffic_level::high: return "high";
  }
  return "?";
}

std::optional<traffic_level> parse_traffic_level(std::string_view s) {
  for (auto const t : {traffic_level::low, traffic_level::medium, traffic_level::high}) {
    if (to_string(t) == s) {
      return t;
    }
  }
  return std::nullopt;
}

bool hour_window::contains(int hour) const {
  hour = ((hour % 24) + 24) % 24;
  auto const start = start_hour % 24;
  auto const end = end_hour % 24;
  if (start_hour == end_hour) {
    return false;
  }
  if (start < end) {
    return hour >= start && hour < end;
  }
  if (start == end) {  // e.g. [0, 24)
    return true;
  }
  return hour >= start || hour < end;
}

void rate_card::validate() const {
  require_param(base_fare.paise >= 0 && per_km.paise >= 0 && per_min.paise >= 0 &&
                    booking_fee.paise >= 0 && min_fare.paise >= 0,
                "rate card monetary fields must be >= 0");
  require_param(base_distance_km >= 0.0, "rate card base_distance_km must be >= 0");
  require_param(night_multiplier >= 1.0, "rate card night_multiplier must be >= 1");
  validate_window(night_window, "night_window");
}

void uber_params::validate() const {
  require_param(base_fare.paise >= 0 && per_km.paise >= 0 && min_fare.paise >= 0,
                "uber monetary fields must be >= 0");
  require_param(peak_multiplier >= 1.0 && xl_multiplier >= 1.0, "uber multipliers must be >= 1");
  require_param(xl_threshold >= 1, "uber xl_threshold must be >= 1");
  for (auto const& w : peak_windows) {
    validate_window(w, "peak_windows");
  }
}

void linear_fare_model::validate() const {
  require_param(std::isfinite(intercept_rupees) && std::isfinite(slope_rupees_per_km),
                "linear model coefficients must be finite");
  require_param(slope_rupees_per_km >= 0.0, "linear model slope must be >= 0");
  require_param(min_fare.paise >= 0, "linear model min_fare must be >= 0");
}

double eta_params::speed_kmh(traffic_level t) const {
  switch (t) {
    case traffic_level::low: return speed_low_kmh;
    case traffic_level::medium: return speed_medium_kmh;
    case traffic_level::high: return speed_high_kmh;
  }
  return speed_medium_kmh;
}

void eta_params::validate() const {
  require_param(speed_low_kmh > 0.0 && speed_medium_kmh > 0.0 && speed_high_kmh > 0.0,
                "speeds must be > 0");
  require_param(speed_low_kmh > speed_medium_kmh && speed_medium_kmh > speed_high_kmh,
                "speeds must satisfy low > medium > high");
  for (auto const w : pickup_wait_min) {
    require_param(w >= 0.0 && std::isfinite(w), "pickup waits must be >= 0");
  }
}

void fare_book::validate() const {
  ola.validate();
  uber.validate();
  rapido.validate();
  eta.validate();
}

money ola_fare(double distance_km, double duration_min, local_datetime const& departure,
               rate_card const& card) {
  require_non_negative(distance_km, "distance_km");
  require_non_negative(duration_min, "duration_min");
  auto const billable_km = std::max(0.0, distance_km - card.base_distance_km);
  auto ride = static_cast<double>(card.base_fare.paise) +
              static_cast<double>(card.per_km.paise) * billable_km +
              static_cast<double>(card.per_min.paise) * duration_min;
  ride = std::max(ride, static_cast<double>(card.min_fare.paise));
  if (card.night_window.contains(departure.hour)) {
    ride *= card.night_multiplier;
  }
  return round_to_rupee(ride) + card.booking_fee;
}

money uber_fare(double distance_km, int passengers, local_datetime const& departure,
                uber_params const& p) {
  require_non_negative(distance_km, "distance_km");
  if (passengers > kMaxPassengers) {
    throw too_many_passengers{passengers};
  }
  if (passengers < 1) {
    throw invalid_passengers{"passengers must be >= 1, got " + std::to_string(passengers)};
  }
  auto ride = static_cast<double>(p.base_fare.paise) +
              static_cast<double>(p.per_km.paise) * distance_km;
  if (passengers > p.xl_threshold) {
    ride *= p.xl_multiplier;
  }
  if (in_any(p.peak_windows, departure.hour)) {
    ride *= p.peak_multiplier;
  }
  return round_to_rupee(std::max(ride, static_cast<double>(p.min_fare.paise)));
}

money rapido_fare(double distance_km, linear_fare_model const& m) {
  require_non_negative(distance_km, "distance_km");
  auto const ride = (m.intercept_rupees + m.slope_rupees_per_km * distance_km) * 100.0;
  return round_to_rupee(std::max(ride, static_cast<double>(m.min_fare.paise)));
}

double trip_duration_min(double distance_km, traffic_level traffic, eta_params const& p) {
  require_non_negative(distance_km, "distance_km");
  return distance_km / p.speed_kmh(traffic) * 60.0;
}

int eta_minutes(double distance_km, traffic_level traffic, double pickup_wait_min,
                eta_params const& p) {
  require_non_negative(pickup_wait_min, "pickup_wait_min");
  auto const total = pickup_wait_min + trip_duration_min(distance_km, traffic, p);
  return static_cast<int>(std::floor(total + 0.5));
}

}  // namespace farecmp
