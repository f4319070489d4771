#include "farecmp/mock_provider.h"

#include "httplib.h"

#include "farecmp/wire.h"

namespace farecmp {

mock_provider_server::mock_provider_server(provider_id p,
                                           std::shared_ptr<pricing_context const> ctx,
                                           mock_behavior behavior, std::uint64_t seed)
    : provider_{p},
      ctx_{std::move(ctx)},
      server_{std::make_unique<httplib::Server>()},
      behavior_{behavior},
      rng_{seed} {
  server_->Post("/v1/quote", [this](httplib::Request const& req, httplib::Response& res) {
    auto const d = next_decision();
    if (d.delay.count() > 0 && !sleep_for(d.delay)) {
      res.status = 503;
      res.set_content(R"({"error":"unavailable"})", "application/json");
      return;
    }
    if (d.fail) {
      res.status = 503;
      res.set_content(R"({"error":"unavailable"})", "application/json");
      return;
    }
    try {
      auto const body = nlohmann::json::parse(req.body, nullptr, false);
      if (body.is_discarded()) {
        throw bad_request{"request body is not valid JSON"};
      }
      auto const q = quote_provider(provider_, wire::parse_quote_request(body), *ctx_);
      res.status = 200;
      res.set_content(wire::to_json(q).dump(), "application/json");
    } catch (bad_request const& e) {
      res.status = 400;
      res.set_content(wire::error_body("bad_request", e.what()).dump(), "application/json");
    }
  });
  server_->Get("/v1/health", [this](httplib::Request const&, httplib::Response& res) {
    if (this->behavior().hard_fail) {
      res.status = 503;
      res.set_content(R"({"error":"unavailable"})", "application/json");
    } else {
      res.set_content(R"({"status":"ok"})", "application/json");
    }
  });

  port_ = server_->bind_to_any_port("127.0.0.1");
  if (port_ <= 0) {
    throw error{"mock provider server could not bind a port"};
  }
  thread_ = std::thread{[this] { server_->listen_after_bind(); }};
  server_->wait_until_ready();
}

mock_provider_server::~mock_provider_server() { stop(); }

void mock_provider_server::stop() {
  {
    std::lock_guard lock{mutex_};
    stopping_ = true;
  }
  stop_cv_.notify_all();
  if (server_) {
    server_->stop();
  }
  if (thread_.joinable()) {
    thread_.join();
  }
}

std::string mock_provider_server::url() const {
  return "http://127.0.0.1:" + std::to_string(port_);
}

void mock_provider_server::set_behavior(mock_behavior b) {
  std::lock_guard lock{mutex_};
  behavior_ = b;
}

mock_behavior mock_provider_server::behavior() const {
  std::lock_guard lock{mutex_};
  return behavior_;
}

void mock_provider_server::reset(std::uint64_t seed) {
  std::lock_guard lock{mutex_};
  rng_.seed(seed);
  calls_ = 0;
}

mock_provider_server::decision mock_provider_server::next_decision() {
  std::lock_guard lock{mutex_};
  auto const n = ++calls_;  // 1-based index of this call
  decision d;
  d.delay = behavior_.latency;
  if (n <= static_cast<std::size_t>(std::max(0, behavior_.slow_first))) {
    d.delay += behavior_.slow_latency;
  }
  // Always draw so that the fault sequence depends only on seed and call index.
  auto const roll = std::uniform_real_distribution<double>{0.0, 1.0}(rng_);
  d.fail = behavior_.hard_fail || roll < behavior_.failure_rate ||
           n <= static_cast<std::size_t>(std::max(0, behavior_.fail_first));
  return d;
}

bool mock_provider_server::sleep_for(std::chrono::milliseconds delay) {
  std::unique_lock lock{mutex_};
  return !stop_cv_.wait_for(lock, delay, [this] { return stopping_; });
}

}  // namespace farecmp
