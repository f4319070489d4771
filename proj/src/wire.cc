#include "farecmp/wire.h"

#include <cmath>

namespace farecmp::wire {

using nlohmann::json;

namespace {

json const& field(json const& j, char const* key) {
  auto const it = j.find(key);
  if (it == j.end()) {
    throw bad_request{std::string{"missing field \""} + key + "\""};
  }
  return *it;
}

std::string string_field(json const& j, char const* key) {
  auto const& v = field(j, key);
  if (!v.is_string()) {
    throw bad_request{std::string{"field \""} + key + "\" must be a string"};
  }
  return v.get<std::string>();
}

}  // namespace

double wire_distance(double km) { return std::round(km * 1000.0) / 1000.0; }

quote_request parse_quote_request(json const& j) {
  if (!j.is_object()) {
    throw bad_request{"request body must be a JSON object"};
  }
  quote_request req;
  req.pickup = string_field(j, "pickup");
  req.drop = string_field(j, "drop");

  if (j.contains("passengers")) {
    auto const& p = j["passengers"];
    if (!p.is_number_integer()) {
      throw bad_request{"field \"passengers\" must be an integer"};
    }
    auto const v = p.get<long long>();
    if (v < 1 || v > kMaxPassengers) {
      throw bad_request{"passengers must be in [1, " + std::to_string(kMaxPassengers) +
                        "], got " + std::to_string(v)};
    }
    req.passengers = static_cast<int>(v);
  }

  auto const departure = string_field(j, "departure");
  auto const t = parse_local_datetime(departure);
  if (!t) {
    throw bad_request{"departure must be ISO 8601 local time YYYY-MM-DDTHH:MM, got \"" +
                      departure + "\""};
  }
  req.departure = *t;

  if (j.contains("traffic") && !j["traffic"].is_null()) {
    auto const traffic = string_field(j, "traffic");
    auto const level = parse_traffic_level(traffic);
    if (!level) {
      throw bad_request{"traffic must be one of low, medium, high; got \"" + traffic + "\""};
    }
    req.traffic = *level;
  }

  validate(req);
  return req;
}

json to_json(quote_request const& req) {
  return json{{"pickup", req.pickup},
              {"drop", req.drop},
              {"passengers", req.passengers},
              {"departure", to_iso_string(req.departure)},
              {"traffic", to_string(req.traffic)}};
}

json to_json(provider_quote const& q) {
  auto fare = json{};
  if (q.fare.is_whole_rupees()) {
    fare = q.fare.whole_rupees();
  } else {
    fare = q.fare.rupees();
  }
  return json{{"provider", to_string(q.provider)},
              {"fare_rupees", fare},
              {"eta_min", q.eta_min},
              {"distance_km", wire_distance(q.distance_km)}};
}

provider_quote parse_quote(json const& j) {
  if (!j.is_object()) {
    throw error{"quote payload must be a JSON object"};
  }
  auto const number = [&](char const* key) {
    auto const it = j.find(key);
    if (it == j.end() || !it->is_number()) {
      throw error{std::string{"quote payload lacks numeric \""} + key + "\""};
    }
    return *it;
  };
  auto const it = j.find("provider");
  if (it == j.end() || !it->is_string()) {
    throw error{"quote payload lacks \"provider\""};
  }
  auto const provider = parse_provider_id(it->get<std::string>());
  if (!provider) {
    throw error{"unknown provider \"" + it->get<std::string>() + "\""};
  }
  provider_quote q;
  q.provider = *provider;
  q.fare = money::from_rupees(number("fare_rupees").get<double>());
  q.eta_min = number("eta_min").get<int>();
  q.distance_km = number("distance_km").get<double>();
  if (q.fare.paise < 0 || q.eta_min < 0 || q.distance_km < 0.0) {
    throw error{"quote payload carries negative values"};
  }
  q.computed_at = std::chrono::system_clock::now();
  return q;
}

json to_json(provider_failure const& f) {
  return json{{"provider", to_string(f.provider)},
              {"kind", to_string(f.kind)},
              {"detail", f.detail}};
}

json error_body(std::string_view error, std::string_view detail) {
  return json{{"error", error}, {"detail", detail}};
}

}  // namespace farecmp::wire
