#include "farecmp/providers.h"

#include <future>

#include "httplib.h"

#include "farecmp/wire.h"

namespace farecmp {

void validate(quote_request const& req) {
  if (normalize_area_name(req.pickup).empty() || normalize_area_name(req.drop).empty()) {
    throw bad_request{"pickup and drop must be non-empty"};
  }
  if (normalize_area_name(req.pickup) == normalize_area_name(req.drop)) {
    throw bad_request{"pickup and drop must differ"};
  }
  if (req.passengers < 1 || req.passengers > kMaxPassengers) {
    throw bad_request{"passengers must be in [1, " + std::to_string(kMaxPassengers) + "], got " +
                      std::to_string(req.passengers)};
  }
}

std::string_view to_string(failure_kind k) {
  switch (k) {
    case failure_kind::timeout: return "timeout";
    case failure_kind::unavailable: return "unavailable";
    case failure_kind::bad_request: return "bad_request";
    case failure_kind::internal: return "internal";
  }
  return "?";
}

std::optional<failure_kind> parse_failure_kind(std::string_view s) {
  for (auto const k : {failure_kind::timeout, failure_kind::unavailable, failure_kind::bad_request,
                       failure_kind::internal}) {
    if (to_string(k) == s) {
      return k;
    }
  }
  return std::nullopt;
}

provider_quote quote_provider(provider_id p, quote_request const& req,
                              pricing_context const& ctx) {
  validate(req);
  try {
    auto const distance = route_distance(ctx.areas.resolve(req.pickup),
                                         ctx.areas.resolve(req.drop), ctx.circuity);
    auto const& f = ctx.fares;
    provider_quote q;
    q.provider = p;
    q.distance_km = distance;
    switch (p) {
      case provider_id::ola:
        q.fare = ola_fare(distance, trip_duration_min(distance, req.traffic, f.eta), req.departure,
                          f.ola);
        break;
      case provider_id::uber:
        q.fare = uber_fare(distance, req.passengers, req.departure, f.uber);
        break;
      case provider_id::rapido: q.fare = rapido_fare(distance, f.rapido); break;
    }
    q.eta_min = eta_minutes(distance, req.traffic, f.eta.pickup_wait(p), f.eta);
    q.computed_at = std::chrono::system_clock::now();
    return q;
  } catch (bad_request const&) {
    throw;
  } catch (error const& e) {
    throw bad_request{e.what()};
  }
}

embedded_endpoint::embedded_endpoint(provider_id p, std::shared_ptr<pricing_context const> ctx)
    : provider_{p}, ctx_{std::move(ctx)} {}

provider_outcome embedded_endpoint::fetch(quote_request const& req, std::chrono::milliseconds) {
  try {
    return quote_provider(provider_, req, *ctx_);
  } catch (bad_request const& e) {
    return provider_failure{provider_, failure_kind::bad_request, e.what()};
  } catch (std::exception const& e) {
    return provider_failure{provider_, failure_kind::internal, e.what()};
  }
}

http_endpoint::http_endpoint(provider_id p, std::string base_url)
    : provider_{p}, base_url_{std::move(base_url)} {}

namespace {

void apply_timeouts(httplib::Client& cli, std::chrono::milliseconds timeout) {
  cli.set_connection_timeout(timeout);
  cli.set_read_timeout(timeout);
  cli.set_write_timeout(timeout);
  cli.set_keep_alive(false);
}

std::string detail_of(std::string const& body) {
  auto const j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_object() && j.contains("detail") && j["detail"].is_string()) {
    return j["detail"].get<std::string>();
  }
  return {};
}

}  // namespace

provider_outcome http_endpoint::fetch(quote_request const& req,
                                      std::chrono::milliseconds timeout) {
  httplib::Client cli{base_url_};
  apply_timeouts(cli, timeout);
  auto const res = cli.Post("/v1/quote", wire::to_json(req).dump(), "application/json");
  if (!res) {
    auto const err = res.error();
    auto const msg = httplib::to_string(err);
    switch (err) {
      case httplib::Error::Read:
      case httplib::Error::ConnectionTimeout:
        return provider_failure{provider_, failure_kind::timeout,
                                "no response within " + std::to_string(timeout.count()) + " ms"};
      default: return provider_failure{provider_, failure_kind::unavailable, msg};
    }
  }
  switch (res->status) {
    case 200: {
      auto const j = nlohmann::json::parse(res->body, nullptr, false);
      if (j.is_discarded()) {
        return provider_failure{provider_, failure_kind::internal, "malformed quote payload"};
      }
      try {
        auto q = wire::parse_quote(j);
        if (q.provider != provider_) {
          return provider_failure{provider_, failure_kind::internal,
                                  "quote names provider " + std::string{to_string(q.provider)}};
        }
        return q;
      } catch (error const& e) {
        return provider_failure{provider_, failure_kind::internal, e.what()};
      }
    }
    case 400: return provider_failure{provider_, failure_kind::bad_request, detail_of(res->body)};
    case 503:
      return provider_failure{provider_, failure_kind::unavailable, "provider returned 503"};
    default:
      return provider_failure{provider_, failure_kind::internal,
                              "unexpected HTTP status " + std::to_string(res->status)};
  }
}

bool http_endpoint::reachable(std::chrono::milliseconds timeout) {
  httplib::Client cli{base_url_};
  apply_timeouts(cli, timeout);
  auto const res = cli.Get("/v1/health");
  return res && res->status == 200;
}

void fanout_config::validate() const {
  if (per_provider_timeout.count() <= 0) {
    throw error{"per_provider_timeout_ms must be > 0"};
  }
  if (providers_enabled.empty()) {
    throw error{"at least one provider must be enabled"};
  }
}

all_providers_failed::all_providers_failed(outcome_map m)
    : error{"all providers failed"}, outcomes{std::move(m)} {}

namespace {

provider_outcome fetch_with_retry(provider_id p, provider_endpoint* ep, quote_request const& req,
                                  fanout_config const& cfg) {
  if (ep == nullptr) {
    return provider_failure{p, failure_kind::unavailable, "no endpoint configured"};
  }
  auto const attempt = [&]() -> provider_outcome {
    try {
      return ep->fetch(req, cfg.per_provider_timeout);
    } catch (std::exception const& e) {
      return provider_failure{p, failure_kind::internal, e.what()};
    }
  };
  auto outcome = attempt();
  if (auto const* f = std::get_if<provider_failure>(&outcome);
      f != nullptr && cfg.retry_once_on.contains(f->kind)) {
    outcome = attempt();
  }
  return outcome;
}

}  // namespace

outcome_map fan_out(quote_request const& req, fanout_config const& cfg,
                    endpoint_map const& endpoints) {
  cfg.validate();

  std::vector<std::pair<provider_id, std::future<provider_outcome>>> pending;
  pending.reserve(cfg.providers_enabled.size());
  for (auto const p : cfg.providers_enabled) {
    auto const it = endpoints.find(p);
    auto* ep = it == end(endpoints) ? nullptr : it->second.get();
    pending.emplace_back(p, std::async(std::launch::async, fetch_with_retry, p, ep,
                                       std::cref(req), std::cref(cfg)));
  }

  outcome_map outcomes;
  auto any_quote = false;
  for (auto& [p, fut] : pending) {
    auto outcome = fut.get();
    any_quote = any_quote || std::holds_alternative<provider_quote>(outcome);
    outcomes.emplace(p, std::move(outcome));
  }
  if (!any_quote) {
    throw all_providers_failed{std::move(outcomes)};
  }
  return outcomes;
}

}  // namespace farecmp
