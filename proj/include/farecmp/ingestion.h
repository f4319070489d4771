#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "farecmp/error.h"
#include "farecmp/fare_models.h"
#include "farecmp/geo.h"

namespace farecmp {

struct non_positive : error {
  non_positive(std::string field, std::size_t line);
  std::string const& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

private:
  std::string field_;
  std::size_t line_;
};

// No identifiable slope: fewer than two distinct distances.
struct degenerate_data : error {
  using error::error;
};

struct trip_record {
  std::string from_area;
  std::string to_area;
  double distance_km{0.0};
  bool distance_derived{false};  // back-filled from the area registry
  money fare;
  std::size_t line{0};
};

struct rejected_row {
  std::size_t line;
  std::string reason;
};

struct trip_dataset {
  std::vector<trip_record> records;
  std::vector<rejected_row> rejected;  // only populated in lenient mode
  std::size_t data_rows{0};            // == records.size() + rejected.size()
  std::string source_path;
};

enum class row_policy { strict, skip_invalid };

struct trip_load_options {
  double circuity{kDefaultCircuity};
  row_policy policy{row_policy::strict};
};

// CSV header `from,to,distance_km,fare`; fares in whole rupees. A blank
// distance is filled with the route distance between the two areas' centroids.
// Under row_policy::strict the first bad row throws; under skip_invalid it is
// recorded in `rejected` and loading continues.
trip_dataset load_trips(std::filesystem::path const&, area_registry const&,
                        trip_load_options const& = {});
trip_dataset parse_trips(std::istream&, std::string const& source_name, area_registry const&,
                         trip_load_options const& = {});

struct linear_fit {
  linear_fare_model model;
  double rmse_rupees{0.0};
  bool slope_clamped{false};
  double raw_slope_rupees_per_km{0.0};  // OLS slope before clamping
};

// Ordinary least squares of fare (rupees) on distance (km). A negative OLS
// slope is clamped to zero and the intercept refitted as the mean fare.
linear_fit fit_linear_model(trip_dataset const&, money min_fare);

void save_model(linear_fare_model const&, std::filesystem::path const&);
linear_fare_model load_model(std::filesystem::path const&);
linear_fare_model parse_model(std::string const& text, std::string const& source_name);

}  // namespace farecmp
