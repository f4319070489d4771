#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fmt/core.h"

#include "farecmp/api.h"
#include "farecmp/config.h"
#include "farecmp/ingestion.h"
#include "farecmp/simulation.h"

namespace fs = std::filesystem;
using namespace farecmp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

fs::path config_path(std::string const& flag) {
  if (!flag.empty()) {
    return flag;
  }
  if (auto const* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
    return env;
  }
  return FARECMP_DEFAULT_CONFIG;
}

local_datetime now_local() {
  auto const t = std::time(nullptr);
  std::tm tm{};
  localtime_r(&t, &tm);
  return local_datetime{
      std::chrono::year_month_day{std::chrono::year{tm.tm_year + 1900},
                                  std::chrono::month{static_cast<unsigned>(tm.tm_mon + 1)},
                                  std::chrono::day{static_cast<unsigned>(tm.tm_mday)}},
      tm.tm_hour, tm.tm_min};
}

std::string badges(comparison_result const& r, provider_id p) {
  std::string out;
  auto const add = [&](std::optional<provider_id> const& d, char const* label) {
    if (d == p) {
      out += out.empty() ? "" : " ";
      out += label;
    }
  };
  add(r.cheapest, "CHEAPEST");
  add(r.fastest, "FASTEST");
  add(r.best, "BEST");
  return out;
}

void print_comparison(comparison_result const& r) {
  fmt::print("{:<8} {:>8} {:>8} {:>12}  {}\n", "provider", "fare", "eta", "distance", "");
  for (auto const& q : r.quotes) {
    fmt::print("{:<8} {:>8} {:>8} {:>12}  {}\n", to_string(q.provider),
               fmt::format("Rs {}", q.fare.whole_rupees()), fmt::format("{} min", q.eta_min),
               fmt::format("{:.2f} km", q.distance_km), badges(r, q.provider));
  }
  for (auto const& f : r.failures) {
    fmt::print("{:<8} {:>8} {:>8} {:>12}  FAILED {}: {}\n", to_string(f.provider), "-", "-", "-",
               to_string(f.kind), f.detail);
  }
  if (r.savings_pct) {
    fmt::print("savings: {:.2f}% below the average quote by choosing {}\n", *r.savings_pct,
               to_string(*r.cheapest));
  }
}

int cmd_quote(std::string const& from, std::string const& to, int passengers,
              std::string const& time, std::string const& traffic, std::string const& config) {
  quote_request req;
  req.pickup = from;
  req.drop = to;
  req.passengers = passengers;
  if (time.empty()) {
    req.departure = now_local();
  } else {
    auto const t = parse_local_datetime(time);
    if (!t) {
      std::cerr << "error: --time must look like 2025-03-03T14:00\n";
      return kExitUsage;
    }
    req.departure = *t;
  }
  req.traffic = *parse_traffic_level(traffic);

  auto const rt = load_runtime(config_path(config));
  validate(req);
  rt.pricing->areas.resolve(req.pickup);
  rt.pricing->areas.resolve(req.drop);

  try {
    auto const outcomes = fan_out(req, rt.config.fanout, rt.endpoints);
    print_comparison(compare(outcomes, rt.config.weights));
    return kExitOk;
  } catch (all_providers_failed const& e) {
    print_comparison(compare(e.outcomes, rt.config.weights));
    std::cerr << "error: AllProvidersFailed: every provider failed\n";
    return kExitFailure;
  }
}

int cmd_fit(std::string const& input, std::string const& out, double min_fare,
            std::string const& areas, std::string const& config, bool lenient) {
  auto const registry =
      areas.empty() ? load_areas(load_service_config(config_path(config)).areas) : load_areas(areas);
  trip_load_options opt;
  opt.policy = lenient ? row_policy::skip_invalid : row_policy::strict;
  auto const ds = load_trips(input, registry, opt);
  for (auto const& r : ds.rejected) {
    std::cerr << "warning: skipped line " << r.line << ": " << r.reason << '\n';
  }
  auto const fit = fit_linear_model(ds, money::from_rupees(min_fare));
  if (fit.slope_clamped) {
    std::cerr << fmt::format("warning: OLS slope {:.6f} is negative; clamped to 0\n",
                             fit.raw_slope_rupees_per_km);
  }
  save_model(fit.model, out);
  fmt::print("records={}\n", ds.records.size());
  fmt::print("intercept_rupees={}\n", fit.model.intercept_rupees);
  fmt::print("slope_rupees_per_km={}\n", fit.model.slope_rupees_per_km);
  fmt::print("min_fare_rupees={}\n", fit.model.min_fare.rupees());
  fmt::print("rmse_rupees={}\n", fit.rmse_rupees);
  return kExitOk;
}

int cmd_areas(std::string const& areas, std::string const& config) {
  auto const registry =
      areas.empty() ? load_areas(load_service_config(config_path(config)).areas) : load_areas(areas);
  for (auto const& name : registry.names()) {
    fmt::print("{}\n", name);
  }
  return kExitOk;
}

void print_wins(char const* label, std::map<provider_id, std::size_t> const& wins,
                std::size_t total) {
  fmt::print("{}:", label);
  for (auto const& [p, count] : wins) {
    fmt::print(" {}={} ({:.1f}%)", to_string(p), count,
               total == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(total));
  }
  fmt::print("\n");
}

int cmd_simulate(std::size_t n, std::uint64_t seed, std::string const& config) {
  auto const rt = load_runtime(config_path(config));
  auto const report = run_simulation(*rt.pricing, rt.config.weights, n, seed);
  auto const within = report.mean_savings_pct >= kSavingsBandLowPct &&
                      report.mean_savings_pct <= kSavingsBandHighPct;
  fmt::print("requests={} seed={} compared={}\n", report.requests, seed,
             report.savings_pct.size());
  fmt::print("savings_pct mean={:.4f} median={:.4f} p90={:.4f}\n", report.mean_savings_pct,
             report.median_savings_pct, report.p90_savings_pct);
  fmt::print("expected_band_pct=[{:.0f}, {:.0f}] measured={:.4f} within_band={}\n",
             kSavingsBandLowPct, kSavingsBandHighPct, report.mean_savings_pct,
             within ? "yes" : "no");
  print_wins("fastest_wins", report.fastest_wins, report.requests);
  print_wins("cheapest_wins", report.cheapest_wins, report.requests);
  print_wins("best_wins", report.best_wins, report.requests);
  fmt::print("mean_savings_pct={:.17g}\n", report.mean_savings_pct);
  return kExitOk;
}

int cmd_serve(std::string const& host, int port, std::string const& config) {
  auto rt = load_runtime(config_path(config));
  if (port >= 0) {
    rt.config.port = port;
  }
  auto const requested = rt.config.port;
  auto const service = std::make_shared<compare_service const>(std::move(rt));
  api_server server{service};
  auto const bound = server.bind(host, requested);
  if (bound <= 0) {
    std::cerr << "error: cannot bind " << host << ":" << requested << '\n';
    return kExitFailure;
  }
  fmt::print("listening on http://{}:{}\n", host, bound);
  std::fflush(stdout);
  return server.run() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ride fare comparison for Ola, Uber and Rapido"};
  app.require_subcommand(1);

  std::string config;

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  std::string host = "127.0.0.1";
  auto port = -1;
  serve->add_option("--port", port, "Listen port (overrides config; 0 picks a free port)")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--config", config, "Service config JSON");

  auto* quote = app.add_subcommand("quote", "Compare fares for one trip");
  std::string from, to, time, traffic = "medium";
  auto passengers = 1;
  quote->add_option("--from", from, "Pickup area")->required();
  quote->add_option("--to", to, "Drop area")->required();
  quote->add_option("--passengers", passengers, "Passenger count")
      ->check(CLI::Range(1, kMaxPassengers));
  quote->add_option("--time", time, "Departure, YYYY-MM-DDTHH:MM (default: now)");
  quote->add_option("--traffic", traffic, "Traffic level")
      ->check(CLI::IsMember({"low", "medium", "high"}));
  quote->add_option("--config", config, "Service config JSON");

  auto* fit = app.add_subcommand("fit", "Fit the Rapido fare line from trip data");
  std::string input, out, areas;
  auto min_fare = 25.0;
  auto lenient = false;
  fit->add_option("--input", input, "Trips CSV (from,to,distance_km,fare)")->required();
  fit->add_option("--out", out, "Model JSON to write")->required();
  fit->add_option("--min-fare", min_fare, "Minimum fare in rupees")
      ->check(CLI::NonNegativeNumber);
  fit->add_option("--areas", areas, "Areas CSV for distance back-fill (default: from config)");
  fit->add_option("--config", config, "Service config JSON");
  fit->add_flag("--skip-invalid", lenient, "Skip bad rows instead of failing");

  auto* list = app.add_subcommand("areas", "List known area names");
  list->add_option("--areas", areas, "Areas CSV (default: from config)");
  list->add_option("--config", config, "Service config JSON");

  auto* simulate = app.add_subcommand("simulate", "Estimate average savings over random trips");
  std::size_t n = 1000;
  std::uint64_t seed = 42;
  simulate->add_option("--n", n, "Number of random requests")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Random seed");
  simulate->add_option("--config", config, "Service config JSON");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    auto const* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << sub->help();
    return kExitUsage;
  }

  try {
    if (*serve) {
      return cmd_serve(host, port, config);
    }
    if (*quote) {
      return cmd_quote(from, to, passengers, time, traffic, config);
    }
    if (*fit) {
      return cmd_fit(input, out, min_fare, areas, config, lenient);
    }
    if (*list) {
      return cmd_areas(areas, config);
    }
    if (*simulate) {
      return cmd_simulate(n, seed, config);
    }
  } catch (unknown_area const& e) {
    std::cerr << "error: UnknownArea: " << e.what() << '\n';
    return kExitFailure;
  } catch (degenerate_data const& e) {
    std::cerr << "error: DegenerateData: " << e.what() << '\n';
    return kExitFailure;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
