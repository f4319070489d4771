#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "farecmp/providers.h"

namespace httplib {
class Server;
}

namespace farecmp {

struct mock_behavior {
  std::chrono::milliseconds latency{0};  // added before every answer
  double failure_rate{0.0};              // probability of a 503 per call
  bool hard_fail{false};                 // always 503, health reports down
  int fail_first{0};                     // the first N calls answer 503
  int slow_first{0};                     // the first N calls sleep `slow_latency`
  std::chrono::milliseconds slow_latency{0};
};

// In-process HTTP server speaking the provider quote protocol for a single
// provider, backed by the real pricing models. Faults are injected per call
// from a seeded generator, so a given seed and call sequence always yields
// the same faults.
class mock_provider_server {
public:
  mock_provider_server(provider_id, std::shared_ptr<pricing_context const>, mock_behavior = {},
                       std::uint64_t seed = 0);
  ~mock_provider_server();

  mock_provider_server(mock_provider_server const&) = delete;
  mock_provider_server& operator=(mock_provider_server const&) = delete;

  provider_id provider() const noexcept { return provider_; }
  int port() const noexcept { return port_; }
  std::string url() const;

  void set_behavior(mock_behavior);
  mock_behavior behavior() const;

  // Quote calls received (POST /v1/quote), including failed ones.
  std::size_t call_count() const noexcept { return calls_.load(); }
  void reset(std::uint64_t seed);

  void stop();

private:
  struct decision {
    std::chrono::milliseconds delay{0};
    bool fail{false};
  };
  decision next_decision();
  bool sleep_for(std::chrono::milliseconds);

  provider_id provider_;
  std::shared_ptr<pricing_context const> ctx_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_{0};

  mutable std::mutex mutex_;
  std::condition_variable stop_cv_;
  bool stopping_{false};
  mock_behavior behavior_;
  std::mt19937_64 rng_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace farecmp
