#include "mobanon/promesse.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mobanon/geo.hpp"
#include "mobanon/metrics.hpp"
#include "mobanon/synthetic.hpp"
#include "testutil.hpp"

using namespace mobanon;

namespace {

/// Straight trace along the equator with records every `spacingMeters`.
Trace straightTrace(const std::string& user, int count, double spacingMeters,
                    Timestamp t0, Timestamp interval) {
  Location origin{0.0, 0.0};
  std::vector<Record> records;
  for (int i = 0; i < count; ++i) {
    records.push_back(Record{
        user, unproject(origin, PlanarPoint{i * spacingMeters, 0.0}),
        t0 + i * interval});
  }
  return Trace(user, std::move(records));
}

}  // namespace

TEST_CASE("smoothSpeed hand-checked walk on a straight trace") {
  // 11 records, a hair over 100 m apart, 60 s apart, eps = 100: one sample is
  // emitted per record, exactly 100 m from the previous one. After endpoint
  // removal 9 records remain, at 100..900 m along the line, and the original
  // timestamps 1060..1540 already are uniform with interval 60.
  Trace input = straightTrace("u", 11, 100.001, 1000, 60);
  auto result = smoothSpeed(input, PromesseConfig{100.0});
  REQUIRE(result.has_value());
  const auto& records = result->records();
  REQUIRE(records.size() == 9);

  Location start = input.records().front().loc;
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(std::abs(distanceMeters(start, records[i].loc) -
                   100.0 * static_cast<double>(i + 1)) <= 0.1);
    CHECK(records[i].time == 1060 + 60 * static_cast<Timestamp>(i));
    CHECK(records[i].user == "u");
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    CHECK(std::abs(distanceMeters(records[i - 1].loc, records[i].loc) -
                   100.0) <= 0.1);
  }
}

TEST_CASE("stationary traces are not protectable") {
  // All records inside one eps-disc produce a single sample.
  std::vector<Record> records;
  Location origin{48.0, 2.0};
  for (int i = 0; i < 10; ++i) {
    records.push_back(Record{
        "u", unproject(origin, PlanarPoint{(i % 3) * 10.0, (i % 2) * 10.0}),
        1000 + i * 30});
  }
  auto result = smoothSpeed(Trace("u", records), PromesseConfig{100.0});
  CHECK(!result.has_value());
}

TEST_CASE("traces with up to three samples are dropped") {
  // 210 m of path yields 3 raw samples: too short once endpoints go.
  Trace three = straightTrace("u", 3, 105.0, 0, 60);
  CHECK(!smoothSpeed(three, PromesseConfig{100.0}).has_value());

  // One more record crosses the threshold: 4 raw samples, 2 kept.
  Trace four = straightTrace("u", 4, 105.0, 0, 60);
  auto result = smoothSpeed(four, PromesseConfig{100.0});
  REQUIRE(result.has_value());
  CHECK(result->size() == 2);
}

TEST_CASE("zero retained duration drops the trace") {
  // A single long jump: every interior sample carries the same timestamp.
  Location origin{48.0, 2.0};
  std::vector<Record> records{
      Record{"u", origin, 0},
      Record{"u", unproject(origin, PlanarPoint{350.0, 0.0}), 100}};
  CHECK(!smoothSpeed(Trace("u", records), PromesseConfig{100.0}).has_value());
}

TEST_CASE("single-record traces never crash") {
  Trace one("u", {Record{"u", Location{48.0, 2.0}, 42}});
  CHECK(!smoothSpeed(one, PromesseConfig{100.0}).has_value());
}

TEST_CASE("smoothSpeed structural invariants on jagged traces") {
  const double eps = 100.0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Trace input = testutil::jaggedTrace("u", seed, 400, 15.0, 0.5, 10, 20);
    auto result = smoothSpeed(input, PromesseConfig{eps});
    if (!result.has_value()) continue;
    const auto& out = result->records();

    // Constant chord spacing.
    for (std::size_t i = 1; i < out.size(); ++i) {
      CHECK(std::abs(distanceMeters(out[i - 1].loc, out[i].loc) - eps) <= 0.1);
    }

    // Constant sampling interval, up to rounding.
    if (out.size() >= 2) {
      double interval =
          static_cast<double>(out.back().time - out.front().time) /
          static_cast<double>(out.size() - 1);
      for (std::size_t i = 1; i < out.size(); ++i) {
        CHECK(std::abs(static_cast<double>(out[i].time - out[i - 1].time) -
                       interval) <= 1.0);
      }
    }

    // Output time span inside the input time span.
    CHECK(out.front().time >= input.startTime());
    CHECK(out.back().time <= input.endTime());
  }
}

TEST_CASE("smoothSpeed output stays on dense gentle traces") {
  // Dense sampling and soft turns keep the resampled points on the path.
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    Trace input = testutil::jaggedTrace("u", seed, 2000, 2.0, 0.09, 1, 0);
    auto result = smoothSpeed(input, PromesseConfig{50.0});
    REQUIRE(result.has_value());
    std::vector<Location> polyline = input.polyline();
    for (const Record& r : result->records()) {
      CHECK(projectOntoPolyline(r.loc, polyline).distanceMeters <= 0.5);
    }
  }
}

TEST_CASE("endpoint blur keeps outputs away from the original endpoints") {
  const double eps = 100.0;
  for (std::uint64_t seed = 200; seed < 240; ++seed) {
    Trace input = testutil::jaggedTrace("u", seed, 120, 15.0, 0.5, 10, 20);
    double pathLength = 0.0;
    for (std::size_t i = 1; i < input.size(); ++i) {
      pathLength += distanceMeters(input.records()[i - 1].loc,
                                   input.records()[i].loc);
    }
    if (pathLength < 3.0 * eps) continue;
    auto result = smoothSpeed(input, PromesseConfig{eps});
    if (!result.has_value()) continue;

    Location first = input.records().front().loc;
    Location last = input.records().back().loc;
    for (const Record& r : result->records()) {
      CHECK(distanceMeters(r.loc, first) >= eps - 0.1);
      CHECK(distanceMeters(r.loc, last) >= eps - 0.1);
    }
  }
}

TEST_CASE("output size tracks pathLength/eps on straight traces") {
  // ~4 km of path at eps=200: 21 raw samples, 19 after endpoint removal.
  // Spacing sits a hair above the divisor so the threshold comparisons do
  // not land on floating-point ties.
  Trace straight = straightTrace("u", 201, 20.001, 0, 5);
  auto out = smoothSpeed(straight, PromesseConfig{200.0});
  REQUIRE(out.has_value());
  CHECK(out->size() == 19);
  CHECK(smoothSpeed(straight, PromesseConfig{100.0})->size() == 39);
  CHECK(smoothSpeed(straight, PromesseConfig{500.0})->size() == 7);
}

TEST_CASE("halving eps at least doubles the output size") {
  Trace straight = straightTrace("u", 201, 20.0, 0, 5);  // 4 km
  auto atEps = smoothSpeed(straight, PromesseConfig{200.0});
  auto atHalf = smoothSpeed(straight, PromesseConfig{100.0});
  REQUIRE(atEps.has_value());
  REQUIRE(atHalf.has_value());
  CHECK(atHalf->size() >= 2 * atEps->size() - 2);

  for (std::uint64_t seed = 300; seed < 310; ++seed) {
    Trace input = testutil::jaggedTrace("u", seed, 600, 15.0, 0.4, 10, 0);
    auto coarse = smoothSpeed(input, PromesseConfig{120.0});
    auto fine = smoothSpeed(input, PromesseConfig{60.0});
    if (!coarse.has_value() || !fine.has_value()) continue;
    CHECK(fine->size() >= 2 * coarse->size() - 2);
  }
}

TEST_CASE("promesse over a dataset") {
  std::vector<Trace> traces;
  traces.push_back(straightTrace("mover", 30, 60.0, 0, 30));
  // A stationary user disappears from the output.
  traces.push_back(Trace(
      "idle", {Record{"idle", Location{48.0, 2.0}, 0},
               Record{"idle", Location{48.0, 2.0001}, 600}}));
  Dataset d(traces);

  PromesseConfig cfg{100.0};
  Dataset out = promesse(d, cfg);
  CHECK(out.traceCount() == 1);
  CHECK(out.traces().contains("mover"));

  // Purely deterministic, also across thread counts.
  CHECK(promesse(d, cfg) == out);
  CHECK(promesse(d, cfg, 1) == out);
  CHECK(promesse(d, cfg, 7) == out);

  Dataset empty = promesse(Dataset(std::vector<Trace>{traces[1]}), cfg);
  CHECK(empty.empty());

  CHECK_THROWS_AS(smoothSpeed(traces[0], PromesseConfig{0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(smoothSpeed(traces[0], PromesseConfig{-10.0}),
                  std::invalid_argument);
}

TEST_CASE("a large eps hides every stay") {
  SyntheticSpec spec;
  spec.userCount = 15;
  spec.poisPerTrace = 2;
  spec.poiDwellSeconds = 1200;
  spec.seed = 88;
  Dataset original = generateSynthetic(spec).dataset;

  Dataset protectedDs = promesse(original, PromesseConfig{500.0});
  AttackConfig attack;
  CHECK(datasetFscore(original, protectedDs, attack) == 0.0);
}
