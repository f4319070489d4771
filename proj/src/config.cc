#include "farecmp/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "farecmp/geo.h"
#include "farecmp/ingestion.h"

namespace farecmp {

using nlohmann::json;

namespace {

json read_json(std::filesystem::path const& path) {
  std::ifstream in{path};
  if (!in) {
    throw io_error{"cannot open " + path.string()};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  auto j = json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) {
    throw parse_error{path.string(), 0, "not valid JSON"};
  }
  return j;
}

void require_object(json const& j, std::string const& where) {
  if (!j.is_object()) {
    throw config_error{where + " must be a JSON object"};
  }
}

void reject_unknown(json const& j, std::set<std::string> const& known, std::string const& where) {
  for (auto const& [key, _] : j.items()) {
    if (!known.contains(key)) {
      throw config_error{where + ": unknown key \"" + key + "\""};
    }
  }
}

json const& member(json const& j, char const* key, std::string const& where) {
  auto const it = j.find(key);
  if (it == j.end()) {
    throw config_error{where + ": missing \"" + key + "\""};
  }
  return *it;
}

double number(json const& j, char const* key, std::string const& where) {
  auto const& v = member(j, key, where);
  if (!v.is_number()) {
    throw config_error{where + ": \"" + key + "\" must be a number"};
  }
  return v.get<double>();
}

money rupees(json const& j, char const* key, std::string const& where) {
  return money::from_rupees(number(j, key, where));
}

int integer(json const& j, char const* key, std::string const& where) {
  auto const& v = member(j, key, where);
  if (!v.is_number_integer()) {
    throw config_error{where + ": \"" + key + "\" must be an integer"};
  }
  return v.get<int>();
}

hour_window window(json const& v, std::string const& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer()) {
    throw config_error{where + ": hour window must be [start_hour, end_hour]"};
  }
  return hour_window{v[0].get<int>(), v[1].get<int>()};
}

std::filesystem::path resolve(std::filesystem::path const& base, std::string const& p) {
  auto path = std::filesystem::path{p};
  return path.is_absolute() ? path : base / path;
}

}  // namespace

fare_book parse_rate_cards(json const& j, linear_fare_model rapido) {
  require_object(j, "rate cards");
  reject_unknown(j, {"ola", "uber", "eta", "_comment"}, "rate cards");
  fare_book book;

  auto const& o = member(j, "ola", "rate cards");
  require_object(o, "ola");
  reject_unknown(o,
                 {"base_fare", "base_distance_km", "per_km", "per_min", "booking_fee", "min_fare",
                  "night_multiplier", "night_window"},
                 "ola");
  book.ola.base_fare = rupees(o, "base_fare", "ola");
  book.ola.base_distance_km = number(o, "base_distance_km", "ola");
  book.ola.per_km = rupees(o, "per_km", "ola");
  book.ola.per_min = rupees(o, "per_min", "ola");
  book.ola.booking_fee = rupees(o, "booking_fee", "ola");
  book.ola.min_fare = rupees(o, "min_fare", "ola");
  book.ola.night_multiplier = number(o, "night_multiplier", "ola");
  book.ola.night_window = window(member(o, "night_window", "ola"), "ola.night_window");

  auto const& u = member(j, "uber", "rate cards");
  require_object(u, "uber");
  reject_unknown(u,
                 {"base_fare", "per_km", "min_fare", "peak_windows", "peak_multiplier",
                  "xl_multiplier", "xl_threshold"},
                 "uber");
  book.uber.base_fare = rupees(u, "base_fare", "uber");
  book.uber.per_km = rupees(u, "per_km", "uber");
  book.uber.min_fare = rupees(u, "min_fare", "uber");
  auto const& peaks = member(u, "peak_windows", "uber");
  if (!peaks.is_array()) {
    throw config_error{"uber: \"peak_windows\" must be an array"};
  }
  for (auto const& w : peaks) {
    book.uber.peak_windows.push_back(window(w, "uber.peak_windows"));
  }
  book.uber.peak_multiplier = number(u, "peak_multiplier", "uber");
  book.uber.xl_multiplier = number(u, "xl_multiplier", "uber");
  book.uber.xl_threshold = integer(u, "xl_threshold", "uber");

  auto const& e = member(j, "eta", "rate cards");
  require_object(e, "eta");
  reject_unknown(e, {"pickup_wait_min", "speed_kmh"}, "eta");
  auto const& waits = member(e, "pickup_wait_min", "eta");
  require_object(waits, "eta.pickup_wait_min");
  for (auto const p : kAllProviders) {
    book.eta.pickup_wait_min[index_of(p)] =
        number(waits, std::string{to_string(p)}.c_str(), "eta.pickup_wait_min");
  }
  reject_unknown(waits, {"ola", "uber", "rapido"}, "eta.pickup_wait_min");
  auto const& speeds = member(e, "speed_kmh", "eta");
  require_object(speeds, "eta.speed_kmh");
  reject_unknown(speeds, {"low", "medium", "high"}, "eta.speed_kmh");
  book.eta.speed_low_kmh = number(speeds, "low", "eta.speed_kmh");
  book.eta.speed_medium_kmh = number(speeds, "medium", "eta.speed_kmh");
  book.eta.speed_high_kmh = number(speeds, "high", "eta.speed_kmh");

  book.rapido = rapido;
  try {
    book.validate();
  } catch (invalid_parameters const& ex) {
    throw config_error{std::string{"rate cards: "} + ex.what()};
  }
  return book;
}

fare_book load_fare_book(std::filesystem::path const& rate_cards,
                         std::filesystem::path const& rapido_model) {
  auto const model = load_model(rapido_model);
  try {
    return parse_rate_cards(read_json(rate_cards), model);
  } catch (config_error const& e) {
    throw config_error{rate_cards.string() + ": " + e.what()};
  }
}

service_config parse_service_config(json const& j, std::filesystem::path const& base) {
  require_object(j, "service config");
  reject_unknown(j,
                 {"port", "rate_cards", "areas", "rapido_model", "circuity", "fanout", "weights",
                  "providers", "_comment"},
                 "service config");
  auto const path_of = [&](char const* key) {
    auto const& v = member(j, key, "service config");
    if (!v.is_string()) {
      throw config_error{std::string{"service config: \""} + key + "\" must be a path string"};
    }
    return resolve(base, v.get<std::string>());
  };

  service_config c;
  if (j.contains("port")) {
    c.port = integer(j, "port", "service config");
    if (c.port < 0 || c.port > 65535) {
      throw config_error{"service config: port out of range"};
    }
  }
  c.rate_cards = path_of("rate_cards");
  c.areas = path_of("areas");
  c.rapido_model = path_of("rapido_model");
  if (j.contains("circuity")) {
    c.circuity = number(j, "circuity", "service config");
    if (!(c.circuity >= 1.0)) {
      throw config_error{"service config: circuity must be >= 1"};
    }
  }

  if (j.contains("fanout")) {
    auto const& f = j["fanout"];
    require_object(f, "fanout");
    reject_unknown(f, {"per_provider_timeout_ms", "retry_once_on", "providers_enabled"}, "fanout");
    if (f.contains("per_provider_timeout_ms")) {
      c.fanout.per_provider_timeout =
          std::chrono::milliseconds{integer(f, "per_provider_timeout_ms", "fanout")};
    }
    if (f.contains("retry_once_on")) {
      c.fanout.retry_once_on.clear();
      for (auto const& k : f["retry_once_on"]) {
        auto const kind = k.is_string() ? parse_failure_kind(k.get<std::string>()) : std::nullopt;
        if (!kind) {
          throw config_error{"fanout: bad failure kind " + k.dump()};
        }
        c.fanout.retry_once_on.insert(*kind);
      }
    }
    if (f.contains("providers_enabled")) {
      c.fanout.providers_enabled.clear();
      for (auto const& p : f["providers_enabled"]) {
        auto const id = p.is_string() ? parse_provider_id(p.get<std::string>()) : std::nullopt;
        if (!id) {
          throw config_error{"fanout: bad provider " + p.dump()};
        }
        c.fanout.providers_enabled.insert(*id);
      }
    }
    try {
      c.fanout.validate();
    } catch (error const& e) {
      throw config_error{std::string{"fanout: "} + e.what()};
    }
  }

  if (j.contains("weights")) {
    auto const& w = j["weights"];
    require_object(w, "weights");
    reject_unknown(w, {"fare", "eta"}, "weights");
    c.weights = score_weights{number(w, "fare", "weights"), number(w, "eta", "weights")};
    try {
      c.weights.validate();
    } catch (error const& e) {
      throw config_error{std::string{"weights: "} + e.what()};
    }
  }

  for (auto const p : kAllProviders) {
    c.endpoints[p] = kEmbedded;
  }
  if (j.contains("providers")) {
    auto const& ps = j["providers"];
    require_object(ps, "providers");
    for (auto const& [key, v] : ps.items()) {
      auto const id = parse_provider_id(key);
      if (!id) {
        throw config_error{"providers: unknown provider \"" + key + "\""};
      }
      if (!v.is_string() || v.get<std::string>().empty()) {
        throw config_error{"providers: \"" + key + "\" must be \"embedded\" or a URL"};
      }
      auto url = v.get<std::string>();
      if (url != kEmbedded && !url.starts_with("http://")) {
        throw config_error{"providers: \"" + key + "\" must be \"embedded\" or an http:// URL"};
      }
      c.endpoints[*id] = std::move(url);
    }
  }
  return c;
}

service_config load_service_config(std::filesystem::path const& path) {
  auto const j = read_json(path);
  try {
    return parse_service_config(j, path.parent_path());
  } catch (config_error const& e) {
    throw config_error{path.string() + ": " + e.what()};
  }
}

service_runtime make_runtime(service_config cfg) {
  auto ctx = std::make_shared<pricing_context>();
  ctx->areas = load_areas(cfg.areas);
  ctx->fares = load_fare_book(cfg.rate_cards, cfg.rapido_model);
  ctx->circuity = cfg.circuity;

  service_runtime rt;
  rt.pricing = ctx;
  for (auto const& [p, target] : cfg.endpoints) {
    if (target == kEmbedded) {
      rt.endpoints[p] = std::make_shared<embedded_endpoint>(p, rt.pricing);
    } else {
      rt.endpoints[p] = std::make_shared<http_endpoint>(p, target);
    }
  }
  rt.config = std::move(cfg);
  return rt;
}

service_runtime load_runtime(std::filesystem::path const& config_path) {
  return make_runtime(load_service_config(config_path));
}

}  // namespace farecmp
