#include "farecmp/ingestion.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "farecmp/csv.h"
#include "farecmp/parse_num.h"

namespace farecmp {

non_positive::non_positive(std::string field, std::size_t line)
    : error{field + " must be > 0 (line " + std::to_string(line) + ")"},
      field_{std::move(field)},
      line_{line} {}

namespace {

trip_record parse_row(std::vector<std::string> const& fields, std::size_t line,
                      std::string const& source, area_registry const& registry,
                      double circuity) {
  if (fields.size() != 4) {
    throw parse_error{source, line, "expected 4 fields, got " + std::to_string(fields.size())};
  }
  trip_record r;
  r.line = line;
  r.from_area = std::string{csv::trim(fields[0])};
  r.to_area = std::string{csv::trim(fields[1])};
  if (r.from_area.empty() || r.to_area.empty()) {
    throw parse_error{source, line, "empty area name"};
  }

  auto const fare_text = csv::trim(fields[3]);
  auto const fare = parse_integer(fare_text);
  if (!fare) {
    throw parse_error{source, line, "fare must be whole rupees, got \"" +
                                        std::string{fare_text} + "\""};
  }
  if (*fare <= 0) {
    throw non_positive{"fare", line};
  }
  r.fare = money::from_rupees(static_cast<std::int64_t>(*fare));

  auto const dist_text = csv::trim(fields[2]);
  if (dist_text.empty()) {
    r.distance_km = route_distance(registry.resolve(r.from_area), registry.resolve(r.to_area),
                                   circuity);
    r.distance_derived = true;
  } else {
    auto const d = parse_double(dist_text);
    if (!d) {
      throw parse_error{source, line, "malformed distance_km \"" + std::string{dist_text} + "\""};
    }
    r.distance_km = *d;
  }
  if (!(r.distance_km > 0.0)) {
    throw non_positive{"distance", line};
  }
  return r;
}

}  // namespace

trip_dataset parse_trips(std::istream& in, std::string const& source,
                         area_registry const& registry, trip_load_options const& opt) {
  if (!(opt.circuity >= 1.0)) {
    throw invalid_circuity{opt.circuity};
  }
  trip_dataset ds;
  ds.source_path = source;
  std::vector<std::string> fields;
  std::string line;
  auto line_no = std::size_t{0};
  auto header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) {
      line.erase(0, 3);
    }
    if (csv::is_skippable(line)) {
      continue;
    }
    if (header_seen) {
      ++ds.data_rows;
    }
    if (!csv::split_line(line, fields)) {
      if (!header_seen || opt.policy == row_policy::strict) {
        throw parse_error{source, line_no, "unterminated quote"};
      }
      ds.rejected.push_back({line_no, "unterminated quote"});
      continue;
    }
    if (!header_seen) {
      if (fields.size() != 4 || csv::trim(fields[0]) != "from" || csv::trim(fields[1]) != "to" ||
          csv::trim(fields[2]) != "distance_km" || csv::trim(fields[3]) != "fare") {
        throw parse_error{source, line_no, "expected header `from,to,distance_km,fare`"};
      }
      header_seen = true;
      continue;
    }
    if (opt.policy == row_policy::strict) {
      ds.records.push_back(parse_row(fields, line_no, source, registry, opt.circuity));
      continue;
    }
    try {
      ds.records.push_back(parse_row(fields, line_no, source, registry, opt.circuity));
    } catch (error const& e) {
      ds.rejected.push_back({line_no, e.what()});
    }
  }
  if (!header_seen) {
    throw parse_error{source, 0, "missing header `from,to,distance_km,fare`"};
  }
  return ds;
}

trip_dataset load_trips(std::filesystem::path const& path, area_registry const& registry,
                        trip_load_options const& opt) {
  std::ifstream in{path};
  if (!in) {
    throw io_error{"cannot open trips file " + path.string()};
  }
  return parse_trips(in, path.string(), registry, opt);
}

linear_fit fit_linear_model(trip_dataset const& ds, money min_fare) {
  if (ds.records.size() < 2) {
    throw degenerate_data{"need at least 2 records to fit, got " +
                          std::to_string(ds.records.size())};
  }

  // Summing in a canonical order makes the fit bit-identical under any
  // permutation of the input records.
  std::vector<std::pair<double, double>> pts;
  pts.reserve(ds.records.size());
  for (auto const& r : ds.records) {
    pts.emplace_back(r.distance_km, r.fare.rupees());
  }
  std::sort(begin(pts), end(pts));

  auto const n = static_cast<double>(pts.size());
  auto sum_x = 0.0;
  auto sum_y = 0.0;
  for (auto const& [x, y] : pts) {
    sum_x += x;
    sum_y += y;
  }
  auto const mean_x = sum_x / n;
  auto const mean_y = sum_y / n;

  auto sxx = 0.0;
  auto sxy = 0.0;
  for (auto const& [x, y] : pts) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  if (pts.front().first == pts.back().first || !(sxx > 0.0)) {
    throw degenerate_data{"all trip distances are equal; slope is not identifiable"};
  }

  linear_fit fit;
  fit.raw_slope_rupees_per_km = sxy / sxx;
  auto slope = fit.raw_slope_rupees_per_km;
  if (slope < 0.0) {
    slope = 0.0;
    fit.slope_clamped = true;
  }
  fit.model = linear_fare_model{mean_y - slope * mean_x, slope, min_fare};

  auto sse = 0.0;
  for (auto const& [x, y] : pts) {
    auto const r = y - (fit.model.intercept_rupees + slope * x);
    sse += r * r;
  }
  fit.rmse_rupees = std::sqrt(sse / n);
  return fit;
}

void save_model(linear_fare_model const& m, std::filesystem::path const& path) {
  auto const j = nlohmann::json{{"intercept_rupees", m.intercept_rupees},
                                {"slope_rupees_per_km", m.slope_rupees_per_km},
                                {"min_fare_rupees", m.min_fare.rupees()}};
  std::ofstream out{path};
  if (!out) {
    throw io_error{"cannot write model file " + path.string()};
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw io_error{"failed writing model file " + path.string()};
  }
}

linear_fare_model parse_model(std::string const& text, std::string const& source) {
  auto const j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw parse_error{source, 0, "model file is not a JSON object"};
  }
  auto const number = [&](char const* key) {
    auto const it = j.find(key);
    if (it == j.end() || !it->is_number()) {
      throw parse_error{source, 0, std::string{"missing numeric field "} + key};
    }
    return it->get<double>();
  };
  linear_fare_model m{number("intercept_rupees"), number("slope_rupees_per_km"),
                      money::from_rupees(number("min_fare_rupees"))};
  try {
    m.validate();
  } catch (invalid_parameters const& e) {
    throw parse_error{source, 0, e.what()};
  }
  return m;
}

linear_fare_model load_model(std::filesystem::path const& path) {
  std::ifstream in{path};
  if (!in) {
    throw io_error{"cannot open model file " + path.string()};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str(), path.string());
}

}  // namespace farecmp
