#include "farecmp/api.h"

#include <future>

#include "httplib.h"

#include "farecmp/wire.h"

namespace farecmp {

using nlohmann::json;

json to_json(comparison_result const& r) {
  auto quotes = json::array();
  for (auto const& q : r.quotes) {
    quotes.push_back(wire::to_json(q));
  }
  auto failures = json::array();
  for (auto const& f : r.failures) {
    failures.push_back(wire::to_json(f));
  }
  auto const id = [](std::optional<provider_id> p) -> json {
    return p ? json(to_string(*p)) : json(nullptr);
  };
  return json{{"quotes", std::move(quotes)},
              {"failures", std::move(failures)},
              {"cheapest", id(r.cheapest)},
              {"fastest", id(r.fastest)},
              {"best", id(r.best)},
              {"savings_pct", r.savings_pct ? json(*r.savings_pct) : json(nullptr)}};
}

compare_service::compare_service(service_runtime rt) : rt_{std::move(rt)} {}

api_response compare_service::compare(std::string_view body) const {
  auto const j = json::parse(body, nullptr, false);
  if (j.is_discarded()) {
    return {400, wire::error_body("bad_request", "request body is not valid JSON")};
  }
  quote_request req;
  try {
    req = wire::parse_quote_request(j);
    rt_.pricing->areas.resolve(req.pickup);
    rt_.pricing->areas.resolve(req.drop);
  } catch (error const& e) {
    return {400, wire::error_body("bad_request", e.what())};
  }

  try {
    auto const outcomes = fan_out(req, rt_.config.fanout, rt_.endpoints);
    return {200, to_json(farecmp::compare(outcomes, rt_.config.weights))};
  } catch (all_providers_failed const& e) {
    auto body_json = to_json(farecmp::compare(e.outcomes, rt_.config.weights));
    body_json["error"] = "all_providers_failed";
    return {502, std::move(body_json)};
  }
}

api_response compare_service::areas() const { return {200, json(rt_.pricing->areas.names())}; }

api_response compare_service::health() const {
  auto const timeout = std::min(rt_.config.fanout.per_provider_timeout,
                                std::chrono::milliseconds{500});
  std::vector<std::pair<provider_id, std::future<bool>>> probes;
  for (auto const p : rt_.config.fanout.providers_enabled) {
    auto const it = rt_.endpoints.find(p);
    if (it == end(rt_.endpoints)) {
      std::promise<bool> missing;
      missing.set_value(false);
      probes.emplace_back(p, missing.get_future());
      continue;
    }
    probes.emplace_back(p, std::async(std::launch::async, [ep = it->second, timeout] {
                          return ep->reachable(timeout);
                        }));
  }
  auto providers = json::object();
  for (auto& [p, f] : probes) {
    providers[std::string{to_string(p)}] = f.get();
  }
  return {200, json{{"status", "ok"}, {"providers", std::move(providers)}}};
}

namespace {

void reply(httplib::Response& res, api_response const& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

}  // namespace

api_server::api_server(std::shared_ptr<compare_service const> service)
    : service_{std::move(service)}, server_{std::make_unique<httplib::Server>()} {
  server_->set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
  server_->Options(R"(/v1/.*)", [](httplib::Request const&, httplib::Response& res) {
    res.status = 204;
  });
  server_->Post("/v1/compare", [this](httplib::Request const& req, httplib::Response& res) {
    reply(res, service_->compare(req.body));
  });
  server_->Get("/v1/areas", [this](httplib::Request const&, httplib::Response& res) {
    reply(res, service_->areas());
  });
  server_->Get("/v1/health", [this](httplib::Request const&, httplib::Response& res) {
    reply(res, service_->health());
  });
  server_->set_exception_handler(
      [](httplib::Request const&, httplib::Response& res, std::exception_ptr ep) {
        auto detail = std::string{"unexpected error"};
        try {
          std::rethrow_exception(ep);
        } catch (std::exception const& e) {
          detail = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(wire::error_body("internal", detail).dump(), "application/json");
      });
}

api_server::~api_server() { stop(); }

int api_server::bind(std::string const& host, int port) {
  if (port == 0) {
    return server_->bind_to_any_port(host);
  }
  return server_->bind_to_port(host, port) ? port : -1;
}

bool api_server::run() { return server_->listen_after_bind(); }

void api_server::start() {
  thread_ = std::thread{[this] { server_->listen_after_bind(); }};
  server_->wait_until_ready();
}

void api_server::stop() {
  if (server_) {
    server_->stop();
  }
  if (thread_.joinable()) {
    thread_.join();
  }
}

}  // namespace farecmp
