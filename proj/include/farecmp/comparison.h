#pragma once

#include <optional>
#include <span>
#include <vector>

#include "farecmp/error.h"
#include "farecmp/providers.h"

namespace farecmp {

struct no_quotes : error {
  no_quotes() : error{"no quotes to choose from"} {}
};

struct too_few_quotes : error {
  too_few_quotes() : error{"savings need at least 2 quotes"} {}
};

struct chosen_missing : error {
  explicit chosen_missing(provider_id p)
      : error{"chosen provider " + std::string{to_string(p)} + " has no quote"} {}
};

struct score_weights {
  double fare{0.7};
  double eta{0.3};

  void validate() const;
};

struct comparison_result {
  std::vector<provider_quote> quotes;      // by (fare, provider name)
  std::vector<provider_failure> failures;  // by provider name
  std::optional<provider_id> cheapest;
  std::optional<provider_id> fastest;
  std::optional<provider_id> best;
  std::optional<double> savings_pct;  // relative to the cheapest quote
};

// Ascending fare, ties by provider name.
std::vector<provider_quote> rank_by_fare(std::vector<provider_quote>);

// Lowest ETA, ties by lower fare, then provider name.
provider_id fastest_option(std::span<provider_quote const>);

// Fares and ETAs are min-max normalized to [0, 1] (all zero when the range
// is empty) and combined as w.fare * fare + w.eta * eta. Lowest score wins;
// ties go to the lower fare, then provider name.
provider_id best_option(std::span<provider_quote const>, score_weights const& = {});

// 100 * (mean fare - chosen fare) / mean fare, unrounded.
double savings_pct(std::span<provider_quote const>, provider_id chosen);

comparison_result compare(outcome_map const&, score_weights const& = {});

}  // namespace farecmp
