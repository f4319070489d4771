#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include "json.hpp"

#include "farecmp/comparison.h"
#include "farecmp/config.h"

namespace httplib {
class Server;
}

namespace farecmp {

struct api_response {
  int status{200};
  nlohmann::json body;
};

// {quotes, failures, cheapest, fastest, best, savings_pct}; absent
// designations serialize as null.
nlohmann::json to_json(comparison_result const&);

// Request handling independent of the HTTP transport. Holds only immutable
// state and is safe to call from any number of threads.
class compare_service {
public:
  explicit compare_service(service_runtime);

  api_response compare(std::string_view body) const;
  api_response areas() const;
  api_response health() const;

  service_runtime const& runtime() const noexcept { return rt_; }

private:
  service_runtime rt_;
};

class api_server {
public:
  explicit api_server(std::shared_ptr<compare_service const>);
  ~api_server();

  api_server(api_server const&) = delete;
  api_server& operator=(api_server const&) = delete;

  // Binds host:port (port 0 picks a free one) and returns the bound port,
  // or -1 on failure.
  int bind(std::string const& host, int port);

  // Serves on the bound socket until stop(); blocking.
  bool run();

  // run() on a background thread; returns once the server accepts.
  void start();
  void stop();

private:
  std::shared_ptr<compare_service const> service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace farecmp
