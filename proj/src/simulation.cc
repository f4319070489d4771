#include "farecmp/simulation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace farecmp {

namespace {

constexpr auto kSimulationDate =
    std::chrono::year_month_day{std::chrono::year{2025}, std::chrono::month{3}, std::chrono::day{3}};

}  // namespace

std::vector<quote_request> sample_requests(area_registry const& registry, std::size_t n,
                                           std::uint64_t seed) {
  if (registry.size() < 2) {
    throw error{"simulation needs at least 2 areas"};
  }
  auto const& areas = registry.areas();
  std::mt19937_64 rng{seed};
  std::uniform_int_distribution<std::size_t> pick_pickup{0, areas.size() - 1};
  std::uniform_int_distribution<std::size_t> pick_drop{0, areas.size() - 2};
  std::uniform_int_distribution<int> pick_passengers{1, kMaxPassengers};
  std::uniform_int_distribution<int> pick_minute{0, 24 * 60 - 1};
  std::uniform_int_distribution<int> pick_traffic{0, 2};

  std::vector<quote_request> out;
  out.reserve(n);
  for (auto i = std::size_t{0}; i != n; ++i) {
    auto const pickup = pick_pickup(rng);
    auto drop = pick_drop(rng);
    if (drop >= pickup) {
      ++drop;
    }
    quote_request req;
    req.pickup = areas[pickup].name;
    req.drop = areas[drop].name;
    req.passengers = pick_passengers(rng);
    auto const minute = pick_minute(rng);
    req.departure = local_datetime{kSimulationDate, minute / 60, minute % 60};
    req.traffic = static_cast<traffic_level>(pick_traffic(rng));
    out.push_back(std::move(req));
  }
  return out;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) {
    return 0.0;
  }
  std::sort(begin(values), end(values));
  auto const rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::clamp(rank, std::size_t{1}, values.size()) - 1];
}

double median(std::vector<double> values) {
  if (values.empty()) {
    return 0.0;
  }
  std::sort(begin(values), end(values));
  auto const mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

simulation_report run_simulation(pricing_context const& ctx, score_weights const& weights,
                                 std::size_t n, std::uint64_t seed) {
  simulation_report report;
  report.requests = n;
  for (auto const p : kAllProviders) {
    report.fastest_wins[p] = 0;
    report.cheapest_wins[p] = 0;
    report.best_wins[p] = 0;
  }

  for (auto const& req : sample_requests(ctx.areas, n, seed)) {
    outcome_map outcomes;
    for (auto const p : kAllProviders) {
      try {
        outcomes.emplace(p, quote_provider(p, req, ctx));
      } catch (bad_request const& e) {
        outcomes.emplace(p, provider_failure{p, failure_kind::bad_request, e.what()});
      }
    }
    auto const result = compare(outcomes, weights);
    if (result.cheapest) {
      ++report.cheapest_wins[*result.cheapest];
      ++report.fastest_wins[*result.fastest];
      ++report.best_wins[*result.best];
    }
    if (result.savings_pct) {
      report.savings_pct.push_back(*result.savings_pct);
    }
  }

  if (!report.savings_pct.empty()) {
    auto const sum = std::accumulate(begin(report.savings_pct), end(report.savings_pct), 0.0);
    report.mean_savings_pct = sum / static_cast<double>(report.savings_pct.size());
    report.median_savings_pct = median(report.savings_pct);
    report.p90_savings_pct = percentile(report.savings_pct, 0.9);
  }
  return report;
}

}  // namespace farecmp
