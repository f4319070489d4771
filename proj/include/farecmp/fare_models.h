#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "farecmp/error.h"
#include "farecmp/local_time.h"
#include "farecmp/money.h"
#include "farecmp/provider_id.h"

namespace farecmp {

struct negative_input : error {
  using error::error;
};

struct invalid_passengers : error {
  using error::error;
};

// More passengers than any offered vehicle class seats.
struct too_many_passengers : invalid_passengers {
  explicit too_many_passengers(int passengers);
};

struct invalid_parameters : error {
  using error::error;
};

inline constexpr int kMaxPassengers = 6;

enum class traffic_level { low, medium, high };

std::string_view to_string(traffic_level);
std::optional<traffic_level> parse_traffic_level(std::string_view);

// Half-open [start_hour, end_hour) in local hours. start > end wraps past
// midnight; start == end is empty.
struct hour_window {
  int start_hour{0};
  int end_hour{0};

  bool contains(int hour) const;
  friend bool operator==(hour_window const&, hour_window const&) = default;
};

// Ola-style rate card: a base fare covering an included distance, per-km
// beyond it, per-minute ride time, a booking fee added after rounding, a
// minimum ride fare, and a night multiplier.
struct rate_card {
  money base_fare;
  double base_distance_km{0.0};
  money per_km;
  money per_min;
  money booking_fee;
  money min_fare;
  double night_multiplier{1.0};
  hour_window night_window;

  void validate() const;
  friend bool operator==(rate_card const&, rate_card const&) = default;
};

struct uber_params {
  money base_fare;
  money per_km;
  money min_fare;
  std::vector<hour_window> peak_windows;
  double peak_multiplier{1.0};
  double xl_multiplier{1.0};
  int xl_threshold{4};  // XL applies when passengers > xl_threshold

  void validate() const;
  friend bool operator==(uber_params const&, uber_params const&) = default;
};

// Rapido fare line fitted from trip data. Coefficients stay real-valued in
// rupees so that a fit round-trips through storage unchanged; the intercept
// may be negative since the floor is applied afterwards.
struct linear_fare_model {
  double intercept_rupees{0.0};
  double slope_rupees_per_km{0.0};
  money min_fare;

  void validate() const;
  friend bool operator==(linear_fare_model const&, linear_fare_model const&) = default;
};

struct eta_params {
  std::array<double, 3> pickup_wait_min{5.0, 4.0, 3.0};  // indexed by provider_id
  double speed_low_kmh{30.0};
  double speed_medium_kmh{20.0};
  double speed_high_kmh{12.0};

  double speed_kmh(traffic_level) const;
  double pickup_wait(provider_id p) const { return pickup_wait_min[index_of(p)]; }
  void validate() const;
  friend bool operator==(eta_params const&, eta_params const&) = default;
};

// All pricing parameters for the three providers.
struct fare_book {
  rate_card ola;
  uber_params uber;
  linear_fare_model rapido;
  eta_params eta;

  void validate() const;
};

money ola_fare(double distance_km, double duration_min, local_datetime const& departure,
               rate_card const&);

money uber_fare(double distance_km, int passengers, local_datetime const& departure,
                uber_params const&);

money rapido_fare(double distance_km, linear_fare_model const&);

// Pickup wait plus travel time, half-up rounded to whole minutes.
int eta_minutes(double distance_km, traffic_level, double pickup_wait_min, eta_params const&);

// Unrounded in-vehicle minutes; feeds the per-minute term of ola_fare.
double trip_duration_min(double distance_km, traffic_level, eta_params const&);

}  // namespace farecmp
