#include "mobanon/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "mobanon/rng.hpp"

namespace mobanon {

namespace {

// 2020-01-01T00:00:00Z; traces start within a day of it.
constexpr Timestamp kBaseEpoch = 1577836800;

double round7(double degrees) { return std::round(degrees * 1e7) / 1e7; }

/// Locations are quantized to the CSV precision (7 decimals, ~1 cm) so a
/// generated dataset survives a write/read cycle unchanged.
Location quantized(const Location& origin, const PlanarPoint& p) {
  Location loc = unproject(origin, p);
  return Location{round7(loc.lat), round7(loc.lon)};
}

PlanarPoint jittered(const PlanarPoint& center, double radius,
                     SplitMix64& rng) {
  double r = radius * std::sqrt(rng.nextUnit());
  double theta = 2.0 * std::numbers::pi * rng.nextUnit();
  return PlanarPoint{center.x + r * std::cos(theta),
                     center.y + r * std::sin(theta)};
}

double planarDistance(const PlanarPoint& a, const PlanarPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

SyntheticData generateSynthetic(const SyntheticSpec& spec) {
  if (spec.userCount == 0) {
    throw std::invalid_argument("generateSynthetic: userCount must be >= 1");
  }
  if (spec.poiDiameterMeters < 0.0 || !(spec.travelSpeedMps > 0.0) ||
      spec.samplingIntervalSeconds < 1 || !(spec.extentMeters > 0.0) ||
      spec.poiDwellSeconds < 0) {
    throw std::invalid_argument("generateSynthetic: bad spec");
  }

  // Consecutive waypoints are kept apart so travel legs are real journeys
  // and planted stays never blur into each other.
  const double minSeparation =
      std::min(std::max(2.0 * spec.poiDiameterMeters, spec.extentMeters / 10.0),
               0.45 * spec.extentMeters);
  const double stepMeters =
      spec.travelSpeedMps * static_cast<double>(spec.samplingIntervalSeconds);
  const double jitterRadius = spec.poiDiameterMeters / 2.0;

  std::vector<Trace> traces;
  std::map<UserId, std::vector<Poi>> groundTruth;

  for (std::uint32_t u = 0; u < spec.userCount; ++u) {
    std::string id = "u" + std::to_string(u);
    if (id.size() < 5) id.insert(1, 5 - id.size(), '0');
    SplitMix64 rng = userStream(spec.seed, id);

    auto randomPoint = [&] {
      return PlanarPoint{(rng.nextUnit() - 0.5) * spec.extentMeters,
                         (rng.nextUnit() - 0.5) * spec.extentMeters};
    };

    // Waypoints: start, one per planted stay, end.
    std::vector<PlanarPoint> waypoints{randomPoint()};
    for (std::uint32_t k = 0; k < spec.poisPerTrace + 1; ++k) {
      PlanarPoint candidate = randomPoint();
      for (int attempt = 0;
           attempt < 1000 &&
           planarDistance(candidate, waypoints.back()) < minSeparation;
           ++attempt) {
        candidate = randomPoint();
      }
      waypoints.push_back(candidate);
    }

    Timestamp t = kBaseEpoch +
                  static_cast<Timestamp>(rng.nextUnit() * kSecondsPerDay);
    std::vector<Record> records;
    std::vector<Poi> stays;
    records.push_back(Record{id, quantized(spec.origin, waypoints[0]), t});

    for (std::size_t leg = 0; leg + 1 < waypoints.size(); ++leg) {
      const PlanarPoint& from = waypoints[leg];
      const PlanarPoint& to = waypoints[leg + 1];
      double length = planarDistance(from, to);

      // Straight travel sampled every interval, then the arrival itself.
      std::int64_t fullSteps =
          static_cast<std::int64_t>(std::floor(length / stepMeters - 1e-9));
      if (fullSteps < 0) fullSteps = 0;
      for (std::int64_t s = 1; s <= fullSteps; ++s) {
        double f = static_cast<double>(s) * stepMeters / length;
        PlanarPoint p{from.x + f * (to.x - from.x),
                      from.y + f * (to.y - from.y)};
        records.push_back(Record{id, quantized(spec.origin, p),
                                 t + s * spec.samplingIntervalSeconds});
      }
      Timestamp travelTime = std::max<Timestamp>(
          fullSteps * spec.samplingIntervalSeconds + 1,
          static_cast<Timestamp>(std::llround(length / spec.travelSpeedMps)));
      t += travelTime;
      records.push_back(Record{id, quantized(spec.origin, to), t});

      bool isStay = leg + 1 < waypoints.size() - 1;  // interior waypoints
      if (isStay && spec.poiDwellSeconds > 0) {
        std::int64_t stayRecords =
            spec.poiDwellSeconds / spec.samplingIntervalSeconds;
        Timestamp stayStart = t;
        for (std::int64_t j = 1; j <= stayRecords; ++j) {
          PlanarPoint p = jittered(to, jitterRadius, rng);
          records.push_back(Record{id, quantized(spec.origin, p),
                                   t + j * spec.samplingIntervalSeconds});
        }
        t += stayRecords * spec.samplingIntervalSeconds;
        stays.push_back(Poi{id, unproject(spec.origin, to), stayStart, t,
                            static_cast<std::size_t>(stayRecords) + 1});
      }
    }

    traces.emplace_back(id, std::move(records));
    groundTruth.emplace(std::move(id), std::move(stays));
  }

  return SyntheticData{Dataset(std::move(traces)), std::move(groundTruth)};
}

}  // namespace mobanon
