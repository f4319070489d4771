#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "farecmp/error.h"

namespace farecmp {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kDefaultCircuity = 1.3;

struct invalid_coordinate : error {
  using error::error;
};

struct invalid_circuity : error {
  explicit invalid_circuity(double c);
};

struct unknown_area : error {
  explicit unknown_area(std::string name);
  std::string const& name() const noexcept { return name_; }

private:
  std::string name_;
};

struct duplicate_area : error {
  explicit duplicate_area(std::string normalized_name);
  std::string const& name() const noexcept { return name_; }

private:
  std::string name_;
};

// Latitude/longitude in decimal degrees. Out-of-range or non-finite values
// are rejected at construction.
class geo_point {
public:
  geo_point(double lat, double lon);

  double lat() const noexcept { return lat_; }
  double lon() const noexcept { return lon_; }

  friend bool operator==(geo_point const&, geo_point const&) = default;

private:
  double lat_;
  double lon_;
};

struct area {
  std::string name;  // display form, trimmed
  geo_point centroid;
};

// Lowercase (Unicode-aware for UTF-8 input) with surrounding whitespace
// removed. Two area names are the same place iff their normalized forms are
// byte-equal.
std::string normalize_area_name(std::string_view);

class area_registry {
public:
  area_registry() = default;
  explicit area_registry(std::vector<area>);

  geo_point resolve(std::string_view name) const;
  area const* find(std::string_view name) const;

  bool contains(std::string_view name) const { return find(name) != nullptr; }
  std::size_t size() const noexcept { return by_key_.size(); }
  bool empty() const noexcept { return by_key_.empty(); }

  // Display names ordered by normalized name.
  std::vector<std::string> names() const;

  // Areas in the same order as names().
  std::vector<area> const& areas() const noexcept { return ordered_; }

private:
  std::vector<area> ordered_;
  std::map<std::string, std::size_t, std::less<>> by_key_;
};

double haversine_distance(geo_point const& a, geo_point const& b);

// Great-circle distance scaled by a circuity factor >= 1 as a stand-in for
// road distance.
double route_distance(geo_point const& src, geo_point const& dst,
                      double circuity = kDefaultCircuity);

geo_point resolve_area(std::string_view name, area_registry const&);

// CSV with header `name,lat,lon`; blank lines and lines starting with '#'
// are skipped.
area_registry load_areas(std::filesystem::path const&);
area_registry parse_areas(std::istream&, std::string const& source_name);

}  // namespace farecmp
