#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "farecmp/error.h"
#include "farecmp/fare_models.h"
#include "farecmp/geo.h"
#include "farecmp/local_time.h"
#include "farecmp/money.h"
#include "farecmp/provider_id.h"

namespace farecmp {

// A request the caller got wrong (unknown area, passengers out of range,
// pickup equal to drop, malformed field). Maps to HTTP 400 / bad_request.
struct bad_request : error {
  using error::error;
};

struct quote_request {
  std::string pickup;
  std::string drop;
  int passengers{1};
  local_datetime departure;
  traffic_level traffic{traffic_level::medium};

  friend bool operator==(quote_request const&, quote_request const&) = default;
};

// Checks the registry-independent invariants.
void validate(quote_request const&);

struct provider_quote {
  provider_id provider{provider_id::ola};
  money fare;
  int eta_min{0};
  double distance_km{0.0};
  std::chrono::system_clock::time_point computed_at;
};

enum class failure_kind { timeout, unavailable, bad_request, internal };

std::string_view to_string(failure_kind);
std::optional<failure_kind> parse_failure_kind(std::string_view);

struct provider_failure {
  provider_id provider{provider_id::ola};
  failure_kind kind{failure_kind::internal};
  std::string detail;
};

using provider_outcome = std::variant<provider_quote, provider_failure>;
using outcome_map = std::map<provider_id, provider_outcome>;

// Everything needed to price a trip in-process. Immutable once built.
struct pricing_context {
  area_registry areas;
  fare_book fares;
  double circuity{kDefaultCircuity};
};

// Prices one provider for `req`. Distance is the circuity-scaled great-circle
// distance between the two area centroids; Ola's per-minute term uses
// trip_duration_min. Any input problem is rethrown as bad_request.
provider_quote quote_provider(provider_id, quote_request const&, pricing_context const&);

// One provider's quote source. fetch() must return within roughly `timeout`.
class provider_endpoint {
public:
  virtual ~provider_endpoint() = default;
  virtual provider_outcome fetch(quote_request const&, std::chrono::milliseconds timeout) = 0;
  virtual bool reachable(std::chrono::milliseconds timeout) = 0;
  virtual std::string describe() const = 0;
};

class embedded_endpoint final : public provider_endpoint {
public:
  embedded_endpoint(provider_id, std::shared_ptr<pricing_context const>);

  provider_outcome fetch(quote_request const&, std::chrono::milliseconds) override;
  bool reachable(std::chrono::milliseconds) override { return true; }
  std::string describe() const override { return "embedded"; }

private:
  provider_id provider_;
  std::shared_ptr<pricing_context const> ctx_;
};

// Speaks the provider quote protocol (POST /v1/quote) to `base_url`,
// e.g. "http://127.0.0.1:9001".
class http_endpoint final : public provider_endpoint {
public:
  http_endpoint(provider_id, std::string base_url);

  provider_outcome fetch(quote_request const&, std::chrono::milliseconds timeout) override;
  bool reachable(std::chrono::milliseconds timeout) override;
  std::string describe() const override { return base_url_; }

private:
  provider_id provider_;
  std::string base_url_;
};

using endpoint_map = std::map<provider_id, std::shared_ptr<provider_endpoint>>;

struct fanout_config {
  std::chrono::milliseconds per_provider_timeout{800};
  std::set<failure_kind> retry_once_on{failure_kind::timeout, failure_kind::unavailable};
  std::set<provider_id> providers_enabled{kAllProviders.begin(), kAllProviders.end()};

  void validate() const;
};

// Every enabled provider failed. The full outcome map is still available.
struct all_providers_failed : error {
  explicit all_providers_failed(outcome_map);
  outcome_map outcomes;
};

// Queries every enabled provider concurrently, retrying a failed attempt
// once if its kind is in cfg.retry_once_on. The result holds exactly one
// entry per enabled provider. Throws all_providers_failed when no provider
// produced a quote.
outcome_map fan_out(quote_request const&, fanout_config const&, endpoint_map const&);

}  // namespace farecmp
