#pragma once

#include "json.hpp"

#include "farecmp/providers.h"

// JSON shapes shared by the provider quote protocol and the public API.
namespace farecmp::wire {

// {pickup, drop, passengers, departure, traffic}; traffic defaults to medium
// and passengers to 1 when absent. Throws bad_request on malformed input.
quote_request parse_quote_request(nlohmann::json const&);
nlohmann::json to_json(quote_request const&);

// {provider, fare_rupees, eta_min, distance_km}
nlohmann::json to_json(provider_quote const&);
provider_quote parse_quote(nlohmann::json const&);

// {provider, kind, detail}
nlohmann::json to_json(provider_failure const&);

nlohmann::json error_body(std::string_view error, std::string_view detail);

// Distances go on the wire rounded to metres.
double wire_distance(double km);

}  // namespace farecmp::wire
