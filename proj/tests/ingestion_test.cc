#include <algorithm>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

#include "farecmp/ingestion.h"

#include "test_util.h"

using namespace farecmp;

namespace {

area_registry equator() { return load_areas(test::kTestData / "areas_equator.csv"); }

trip_dataset parse(std::string const& text, trip_load_options opt = {}) {
  std::istringstream in{text};
  return parse_trips(in, "trips.csv", equator(), opt);
}

trip_dataset points(std::vector<std::pair<double, std::int64_t>> const& pts) {
  trip_dataset ds;
  for (auto const& [d, fare] : pts) {
    ds.records.push_back(trip_record{"Alpha", "Beta", d, false, money::from_rupees(fare), 0});
  }
  return ds;
}

}  // namespace

TEST(load_trips, passes_given_distances_through) {
  auto const ds = parse(
      "from,to,distance_km,fare\n"
      "# comment\n"
      "Alpha,Beta,4.5,60\n"
      "Beta,Gamma,2,40\n"
      "Gamma,Alpha,7.25,90\n");
  ASSERT_EQ(3U, ds.records.size());
  EXPECT_EQ(4.5, ds.records[0].distance_km);
  EXPECT_EQ(2.0, ds.records[1].distance_km);
  EXPECT_EQ(7.25, ds.records[2].distance_km);
  EXPECT_EQ(money::from_rupees(90), ds.records[2].fare);
  EXPECT_EQ(5U, ds.records[2].line);
}

TEST(load_trips, back_fills_blank_distance_from_registry) {
  trip_load_options opt;
  opt.circuity = 1.3;
  auto const ds = parse("from,to,distance_km,fare\nalpha, Gamma ,,120\n", opt);
  ASSERT_EQ(1U, ds.records.size());
  auto const reg = equator();
  EXPECT_TRUE(ds.records[0].distance_derived);
  EXPECT_DOUBLE_EQ(route_distance(reg.resolve("Alpha"), reg.resolve("Gamma"), 1.3),
                   ds.records[0].distance_km);
  EXPECT_NEAR(26.0, ds.records[0].distance_km, 1e-6);
}

TEST(load_trips, validation_errors) {
  try {
    parse("from,to,distance_km,fare\nAlpha,Beta,3,50\nAlpha,Beta,3,0\n");
    FAIL() << "expected non_positive";
  } catch (non_positive const& e) {
    EXPECT_EQ("fare", e.field());
    EXPECT_EQ(3U, e.line());
  }
  try {
    parse("from,to,distance_km,fare\nAlpha,Beta,-2,50\n");
    FAIL() << "expected non_positive";
  } catch (non_positive const& e) {
    EXPECT_EQ("distance", e.field());
  }
  EXPECT_THROW(parse("from,to,distance_km,fare\nAlpha,Atlantis,,50\n"), unknown_area);
  EXPECT_THROW(parse("from,to,distance_km,fare\nAlpha,Beta,x,50\n"), parse_error);
  EXPECT_THROW(parse("from,to,distance_km,fare\nAlpha,Beta,3,50.5\n"), parse_error);
  EXPECT_THROW(parse("from,to,fare\nAlpha,Beta,50\n"), parse_error);
  EXPECT_THROW(load_trips("/nonexistent.csv", equator()), io_error);
}

TEST(load_trips, lenient_mode_accounts_for_every_row) {
  trip_load_options opt;
  opt.policy = row_policy::skip_invalid;
  auto const ds = parse(
      "from,to,distance_km,fare\n"
      "Alpha,Beta,3,50\n"
      "Alpha,Beta,3,0\n"
      "Alpha,Atlantis,,50\n"
      "Alpha,Beta,abc,50\n"
      "Beta,Gamma,,70\n",
      opt);
  EXPECT_EQ(2U, ds.records.size());
  ASSERT_EQ(3U, ds.rejected.size());
  EXPECT_EQ(3U, ds.rejected[0].line);
  EXPECT_EQ(5U, ds.data_rows);
  EXPECT_EQ(ds.data_rows, ds.records.size() + ds.rejected.size());
}

TEST(fit_linear_model, collinear_points_are_recovered) {
  auto const fit = fit_linear_model(points({{1, 28}, {2, 36}, {3, 44}}), money::from_rupees(25));
  EXPECT_NEAR(20.0, fit.model.intercept_rupees, 1e-9 * 20.0);
  EXPECT_NEAR(8.0, fit.model.slope_rupees_per_km, 1e-9 * 8.0);
  EXPECT_EQ(money::from_rupees(25), fit.model.min_fare);
  EXPECT_NEAR(0.0, fit.rmse_rupees, 1e-9);
  EXPECT_FALSE(fit.slope_clamped);
}

TEST(fit_linear_model, two_point_closed_form) {
  // Line through (2, 30) and (6, 70): slope (70-30)/(6-2), intercept 30 - 2*slope.
  auto const fit = fit_linear_model(points({{2, 30}, {6, 70}}), money::from_rupees(25));
  EXPECT_NEAR(10.0, fit.model.intercept_rupees, 1e-12);
  EXPECT_NEAR(10.0, fit.model.slope_rupees_per_km, 1e-12);
}

TEST(fit_linear_model, degenerate_inputs) {
  EXPECT_THROW(fit_linear_model(points({{5, 40}, {5, 60}}), money{}), degenerate_data);
  EXPECT_THROW(fit_linear_model(points({{5, 40}}), money{}), degenerate_data);
  EXPECT_THROW(fit_linear_model(points({}), money{}), degenerate_data);
}

TEST(fit_linear_model, negative_slope_is_clamped) {
  auto const fit = fit_linear_model(points({{1, 90}, {2, 80}, {3, 70}}), money::from_rupees(25));
  EXPECT_TRUE(fit.slope_clamped);
  EXPECT_NEAR(-10.0, fit.raw_slope_rupees_per_km, 1e-12);
  EXPECT_EQ(0.0, fit.model.slope_rupees_per_km);
  EXPECT_NEAR(80.0, fit.model.intercept_rupees, 1e-12);
}

TEST(fit_linear_model, residuals_orthogonal_and_permutation_invariant) {
  std::mt19937_64 rng{5};
  std::uniform_real_distribution<double> dist{0.5, 30.0};
  std::normal_distribution<double> noise{0.0, 6.0};
  std::vector<std::pair<double, std::int64_t>> pts;
  for (auto i = 0; i != 200; ++i) {
    auto const d = dist(rng);
    pts.emplace_back(d, std::max<std::int64_t>(1, std::llround(25 + 9 * d + noise(rng))));
  }
  auto const fit = fit_linear_model(points(pts), money{});
  ASSERT_FALSE(fit.slope_clamped);
  auto sum_r = 0.0;
  auto sum_rd = 0.0;
  for (auto const& [d, fare] : pts) {
    auto const r = static_cast<double>(fare) -
                   (fit.model.intercept_rupees + fit.model.slope_rupees_per_km * d);
    sum_r += r;
    sum_rd += r * d;
  }
  EXPECT_LT(std::abs(sum_r), 1e-6);
  EXPECT_LT(std::abs(sum_rd), 1e-6);

  for (auto k = 0; k != 10; ++k) {
    std::shuffle(begin(pts), end(pts), rng);
    auto const again = fit_linear_model(points(pts), money{});
    EXPECT_EQ(fit.model, again.model);
  }
}

TEST(model_file, round_trip_and_errors) {
  test::temp_dir tmp;
  auto const m = linear_fare_model{29.34557863630431, 12.025300419625815, money{2550}};
  save_model(m, tmp.path() / "m.json");
  EXPECT_EQ(m, load_model(tmp.path() / "m.json"));

  EXPECT_THROW(load_model(tmp.path() / "missing.json"), io_error);
  EXPECT_THROW(load_model(tmp.write("bad.json", "{not json")), parse_error);
  EXPECT_THROW(load_model(tmp.write("partial.json", R"({"intercept_rupees": 1})")), parse_error);
  EXPECT_THROW(load_model(tmp.write(
                   "neg.json",
                   R"({"intercept_rupees": 1, "slope_rupees_per_km": -1, "min_fare_rupees": 2})")),
               parse_error);
}
