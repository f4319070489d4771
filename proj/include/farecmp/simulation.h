#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "farecmp/comparison.h"
#include "farecmp/providers.h"

namespace farecmp {

// Request distribution used by the savings simulation, all uniform and all
// drawn from one std::mt19937_64 seeded with `seed`, in this order per
// request: pickup area, drop area (distinct from pickup), passengers in
// [1, 6], departure minute of day on a fixed date, traffic level.
std::vector<quote_request> sample_requests(area_registry const&, std::size_t n,
                                           std::uint64_t seed);

struct simulation_report {
  std::size_t requests{0};
  std::vector<double> savings_pct;  // per compared request, in sample order
  double mean_savings_pct{0.0};
  double median_savings_pct{0.0};
  double p90_savings_pct{0.0};
  std::map<provider_id, std::size_t> fastest_wins;
  std::map<provider_id, std::size_t> cheapest_wins;
  std::map<provider_id, std::size_t> best_wins;
};

inline constexpr double kSavingsBandLowPct = 10.0;
inline constexpr double kSavingsBandHighPct = 15.0;

// Prices every sampled request in-process with all three providers and
// compares them, measuring savings relative to the mean of the quotes.
simulation_report run_simulation(pricing_context const&, score_weights const&, std::size_t n,
                                 std::uint64_t seed);

// Nearest-rank percentile, q in (0, 1].
double percentile(std::vector<double> values, double q);
double median(std::vector<double> values);

}  // namespace farecmp
