#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include "json.hpp"

#include "farecmp/comparison.h"
#include "farecmp/error.h"
#include "farecmp/fare_models.h"
#include "farecmp/providers.h"

namespace farecmp {

struct config_error : error {
  using error::error;
};

inline constexpr char const* kEmbedded = "embedded";
inline constexpr char const* kConfigEnvVar = "FARECMP_CONFIG";

struct service_config {
  int port{8080};
  std::filesystem::path rate_cards;
  std::filesystem::path areas;
  std::filesystem::path rapido_model;
  double circuity{kDefaultCircuity};
  fanout_config fanout;
  score_weights weights;
  std::map<provider_id, std::string> endpoints;  // URL or "embedded"
};

// Relative file paths are resolved against the config file's directory.
// Unknown keys are rejected.
service_config load_service_config(std::filesystem::path const&);
service_config parse_service_config(nlohmann::json const&, std::filesystem::path const& base_dir);

// Rate-card file: "ola", "uber" and "eta" objects. Money values are rupees.
fare_book parse_rate_cards(nlohmann::json const&, linear_fare_model rapido);
fare_book load_fare_book(std::filesystem::path const& rate_cards,
                         std::filesystem::path const& rapido_model);

struct service_runtime {
  service_config config;
  std::shared_ptr<pricing_context const> pricing;
  endpoint_map endpoints;
};

// Loads every referenced file; throws on the first problem so a service never
// starts half-configured.
service_runtime load_runtime(std::filesystem::path const& config_path);
service_runtime make_runtime(service_config);

}  // namespace farecmp
