#include "farecmp/comparison.h"

#include <algorithm>
#include <cmath>

namespace farecmp {

namespace {

bool by_fare_then_name(provider_quote const& a, provider_quote const& b) {
  if (a.fare != b.fare) {
    return a.fare < b.fare;
  }
  return to_string(a.provider) < to_string(b.provider);
}

}  // namespace

void score_weights::validate() const {
  if (!(fare >= 0.0 && fare <= 1.0 && eta >= 0.0 && eta <= 1.0) ||
      std::abs(fare + eta - 1.0) > 1e-9) {
    throw error{"score weights must lie in [0, 1] and sum to 1"};
  }
}

std::vector<provider_quote> rank_by_fare(std::vector<provider_quote> quotes) {
  std::stable_sort(begin(quotes), end(quotes), by_fare_then_name);
  return quotes;
}

provider_id fastest_option(std::span<provider_quote const> quotes) {
  if (quotes.empty()) {
    throw no_quotes{};
  }
  return std::min_element(begin(quotes), end(quotes),
                          [](provider_quote const& a, provider_quote const& b) {
                            if (a.eta_min != b.eta_min) {
                              return a.eta_min < b.eta_min;
                            }
                            return by_fare_then_name(a, b);
                          })
      ->provider;
}

provider_id best_option(std::span<provider_quote const> quotes, score_weights const& w) {
  if (quotes.empty()) {
    throw no_quotes{};
  }
  auto const [fmin, fmax] = std::minmax_element(
      begin(quotes), end(quotes), [](auto const& a, auto const& b) { return a.fare < b.fare; });
  auto const [emin, emax] = std::minmax_element(
      begin(quotes), end(quotes), [](auto const& a, auto const& b) { return a.eta_min < b.eta_min; });
  auto const fare_lo = fmin->fare.paise;
  auto const fare_span = fmax->fare.paise - fare_lo;
  auto const eta_lo = emin->eta_min;
  auto const eta_span = emax->eta_min - eta_lo;

  // Normalizing integer differences keeps the score exactly invariant under
  // integer scaling of all fares.
  auto const score = [&](provider_quote const& q) {
    auto const fare_norm = fare_span == 0 ? 0.0
                                          : static_cast<double>(q.fare.paise - fare_lo) /
                                                static_cast<double>(fare_span);
    auto const eta_norm = eta_span == 0 ? 0.0
                                        : static_cast<double>(q.eta_min - eta_lo) /
                                              static_cast<double>(eta_span);
    return w.fare * fare_norm + w.eta * eta_norm;
  };

  auto const* best = &quotes.front();
  auto best_score = score(*best);
  for (auto const& q : quotes.subspan(1)) {
    auto const s = score(q);
    if (s < best_score || (s == best_score && by_fare_then_name(q, *best))) {
      best = &q;
      best_score = s;
    }
  }
  return best->provider;
}

double savings_pct(std::span<provider_quote const> quotes, provider_id chosen) {
  if (quotes.size() < 2) {
    throw too_few_quotes{};
  }
  auto const it = std::find_if(begin(quotes), end(quotes),
                               [&](auto const& q) { return q.provider == chosen; });
  if (it == end(quotes)) {
    throw chosen_missing{chosen};
  }
  // Summing exact paise keeps mean >= min fare, so the cheapest quote never
  // shows a negative saving.
  auto total = std::int64_t{0};
  for (auto const& q : quotes) {
    total += q.fare.paise;
  }
  auto const mean = static_cast<double>(total) / static_cast<double>(quotes.size());
  if (mean == 0.0) {
    return 0.0;
  }
  return 100.0 * (mean - static_cast<double>(it->fare.paise)) / mean;
}

comparison_result compare(outcome_map const& outcomes, score_weights const& w) {
  comparison_result r;
  std::vector<provider_quote> quotes;
  for (auto const& [p, outcome] : outcomes) {
    if (auto const* q = std::get_if<provider_quote>(&outcome)) {
      quotes.push_back(*q);
    } else {
      r.failures.push_back(std::get<provider_failure>(outcome));
    }
  }
  std::sort(begin(r.failures), end(r.failures), [](auto const& a, auto const& b) {
    return to_string(a.provider) < to_string(b.provider);
  });
  r.quotes = rank_by_fare(std::move(quotes));
  if (r.quotes.empty()) {
    return r;
  }
  r.cheapest = r.quotes.front().provider;
  r.fastest = fastest_option(r.quotes);
  r.best = best_option(r.quotes, w);
  if (r.quotes.size() >= 2) {
    r.savings_pct = savings_pct(r.quotes, *r.cheapest);
  }
  return r;
}

}  // namespace farecmp
