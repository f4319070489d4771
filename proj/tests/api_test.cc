#include <future>

#include "gtest/gtest.h"
#include "httplib.h"

#include "farecmp/api.h"
#include "farecmp/mock_provider.h"
#include "farecmp/wire.h"

#include "golden.h"
#include "test_util.h"

using namespace farecmp;
using namespace std::chrono_literals;
using nlohmann::json;

namespace {

std::string body_for(quote_request const& req) { return wire::to_json(req).dump(); }

service_runtime example_runtime() { return load_runtime(test::kTestData / "service_example.json"); }

}  // namespace

TEST(api_config, example_config_loads) {
  auto const rt = example_runtime();
  EXPECT_EQ(3U, rt.pricing->areas.size());
  EXPECT_EQ(300ms, rt.config.fanout.per_provider_timeout);
  EXPECT_EQ(test::example_fare_book().ola, rt.pricing->fares.ola);
  EXPECT_EQ(test::example_fare_book().uber, rt.pricing->fares.uber);
  EXPECT_EQ(test::example_fare_book().rapido, rt.pricing->fares.rapido);
  EXPECT_EQ(test::example_fare_book().eta, rt.pricing->fares.eta);
}

TEST(api_config, startup_fails_fast_on_bad_files) {
  EXPECT_THROW(load_runtime(test::kTestData / "service_malformed.json"), error);
  EXPECT_THROW(load_runtime(test::kTestData / "nope.json"), io_error);

  test::temp_dir tmp;
  auto const base = json::parse(std::ifstream{test::kTestData / "service_example.json"});
  auto const with = [&](std::string const& key, json const& value) {
    auto j = base;
    j[key] = value;
    for (auto const k : {"rate_cards", "areas", "rapido_model"}) {
      if (k != key) {
        j[k] = (test::kTestData / j[k].get<std::string>()).string();
      }
    }
    return tmp.write(key + ".json", j.dump());
  };
  EXPECT_THROW(load_runtime(with("weights", {{"fare", 0.9}, {"eta", 0.3}})), config_error);
  EXPECT_THROW(load_runtime(with("typo_key", 1)), config_error);
  EXPECT_THROW(load_runtime(with("circuity", 0.8)), config_error);
  EXPECT_THROW(load_runtime(with("areas", tmp.write("a.csv", "name,lat,lon\nX,95,0\n").string())),
               parse_error);
  EXPECT_THROW(load_runtime(with("rapido_model", tmp.write("m.json", "[]").string())), parse_error);
  EXPECT_THROW(load_runtime(with("providers", {{"lyft", "embedded"}})), config_error);
}

TEST(api_compare, happy_path_matches_golden) {
  compare_service const svc{example_runtime()};
  auto const res = svc.compare(body_for(test::example_request()));
  ASSERT_EQ(200, res.status) << res.body.dump();
  auto const mismatch = test::json_mismatch(test::load_golden("compare_happy.json"), res.body);
  EXPECT_TRUE(mismatch.empty()) << mismatch << "\n" << res.body.dump(2);
}

TEST(api_compare, partial_failure_matches_golden) {
  auto rt = example_runtime();
  mock_provider_server slow{provider_id::rapido, rt.pricing, mock_behavior{.latency = 5000ms}};
  rt.endpoints[provider_id::rapido] = std::make_shared<http_endpoint>(provider_id::rapido, slow.url());
  compare_service const svc{std::move(rt)};

  auto const res = svc.compare(body_for(test::example_request()));
  ASSERT_EQ(200, res.status) << res.body.dump();
  auto const mismatch = test::json_mismatch(test::load_golden("compare_partial.json"), res.body);
  EXPECT_TRUE(mismatch.empty()) << mismatch << "\n" << res.body.dump(2);
}

TEST(api_compare, validation_errors_are_400) {
  compare_service const svc{example_runtime()};
  auto const expect_400 = [&](std::string const& body) {
    auto const res = svc.compare(body);
    EXPECT_EQ(400, res.status) << body;
    EXPECT_EQ("bad_request", res.body.value("error", ""));
    EXPECT_FALSE(res.body.value("detail", "").empty());
  };
  expect_400(body_for(test::example_request("Alpha", " alpha")));
  expect_400(body_for(test::example_request("Alpha", "Atlantis")));
  auto j = wire::to_json(test::example_request());
  j["passengers"] = 7;
  expect_400(j.dump());
  expect_400("{");
  expect_400("[]");
}

TEST(api_compare, all_providers_failed_is_502) {
  auto rt = example_runtime();
  std::vector<std::unique_ptr<mock_provider_server>> mocks;
  for (auto const p : kAllProviders) {
    mocks.push_back(std::make_unique<mock_provider_server>(p, rt.pricing,
                                                           mock_behavior{.hard_fail = true}));
    rt.endpoints[p] = std::make_shared<http_endpoint>(p, mocks.back()->url());
  }
  compare_service const svc{std::move(rt)};
  auto const res = svc.compare(body_for(test::example_request()));
  EXPECT_EQ(502, res.status);
  EXPECT_EQ(3U, res.body["failures"].size());
  EXPECT_TRUE(res.body["quotes"].empty());
  EXPECT_TRUE(res.body["cheapest"].is_null());
  EXPECT_TRUE(res.body["savings_pct"].is_null());
}

TEST(api_areas, sorted_display_names) {
  compare_service const svc{example_runtime()};
  EXPECT_EQ((json{"Alpha", "Beta", "Gamma"}), svc.areas().body);

  auto rt = example_runtime();
  auto ctx = std::make_shared<pricing_context>(*rt.pricing);
  ctx->areas = area_registry{};
  rt.pricing = ctx;
  EXPECT_EQ(json::array(), compare_service{std::move(rt)}.areas().body);
}

TEST(api_health, reports_provider_reachability) {
  auto rt = example_runtime();
  compare_service const embedded{rt};
  EXPECT_EQ((json{{"status", "ok"}, {"providers", {{"ola", true}, {"rapido", true}, {"uber", true}}}}),
            embedded.health().body);

  mock_provider_server down{provider_id::uber, rt.pricing, mock_behavior{.hard_fail = true}};
  rt.endpoints[provider_id::uber] = std::make_shared<http_endpoint>(provider_id::uber, down.url());
  compare_service const partial{std::move(rt)};
  auto const h = partial.health().body;
  EXPECT_EQ("ok", h["status"]);
  EXPECT_FALSE(h["providers"]["uber"].get<bool>());
  EXPECT_TRUE(h["providers"]["ola"].get<bool>());
}

TEST(api_server, serves_over_http_with_cors) {
  auto const svc = std::make_shared<compare_service const>(example_runtime());
  api_server server{svc};
  auto const port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  server.start();

  httplib::Client cli{"127.0.0.1", port};
  auto const health = cli.Get("/v1/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(200, health->status);
  EXPECT_EQ("*", health->get_header_value("Access-Control-Allow-Origin"));
  EXPECT_EQ("ok", json::parse(health->body)["status"]);

  auto const areas = cli.Get("/v1/areas");
  ASSERT_TRUE(areas);
  EXPECT_EQ((json{"Alpha", "Beta", "Gamma"}), json::parse(areas->body));

  auto const preflight = cli.Options("/v1/compare");
  ASSERT_TRUE(preflight);
  EXPECT_EQ(204, preflight->status);

  auto const bad = cli.Post("/v1/compare", "{}", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(400, bad->status);

  // Concurrent identical requests produce identical bodies.
  auto const body = body_for(test::example_request());
  std::vector<std::future<std::string>> calls;
  for (auto i = 0; i != 16; ++i) {
    calls.push_back(std::async(std::launch::async, [&] {
      httplib::Client c{"127.0.0.1", port};
      auto const r = c.Post("/v1/compare", body, "application/json");
      return r && r->status == 200 ? r->body : (r ? "status " + std::to_string(r->status) + " " + r->body : "transport " + httplib::to_string(r.error()));
    }));
  }
  auto const first = calls.front().get();
  EXPECT_TRUE(test::json_mismatch(test::load_golden("compare_happy.json"), json::parse(first)).empty());
  for (auto i = std::size_t{1}; i != calls.size(); ++i) {
    EXPECT_EQ(first, calls[i].get());
  }

  server.stop();
  httplib::Client after{"127.0.0.1", port};
  after.set_connection_timeout(200ms);
  EXPECT_FALSE(after.Get("/v1/health"));  // connection refused once stopped
}
