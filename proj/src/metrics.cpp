#include "mobanon/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

#include "mobanon/geo.hpp"
#include "mobanon/parallel.hpp"
#include "mobanon/rng.hpp"

namespace mobanon {

namespace {

/// Indices of `pois` in (lat, lon, start) order, so matching does not depend
/// on how the caller ordered the set.
std::vector<std::size_t> canonicalOrder(std::span<const Poi> pois) {
  std::vector<std::size_t> order(pois.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Poi& pa = pois[a];
    const Poi& pb = pois[b];
    if (pa.center.lat != pb.center.lat) return pa.center.lat < pb.center.lat;
    if (pa.center.lon != pb.center.lon) return pa.center.lon < pb.center.lon;
    return pa.start < pb.start;
  });
  return order;
}

std::size_t countMatchedReference(std::span<const Poi> reference,
                                  std::span<const Poi> retrieved,
                                  double ellMeters) {
  auto pairs = matchPois(reference, retrieved, ellMeters);
  std::set<std::size_t> matched;
  for (const auto& [ref, ret] : pairs) matched.insert(ref);
  return matched.size();
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> matchPois(
    std::span<const Poi> reference, std::span<const Poi> retrieved,
    double ellMeters) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (reference.empty() || retrieved.empty()) return pairs;

  std::vector<std::size_t> order = canonicalOrder(reference);
  for (std::size_t j = 0; j < retrieved.size(); ++j) {
    double bestDist = 0.0;
    std::size_t bestIndex = reference.size();
    for (std::size_t index : order) {
      double dist =
          distanceMeters(reference[index].center, retrieved[j].center);
      if (bestIndex == reference.size() || dist < bestDist) {
        bestDist = dist;
        bestIndex = index;
      }
    }
    if (bestDist <= ellMeters) pairs.emplace_back(bestIndex, j);
  }
  return pairs;
}

std::optional<double> recall(std::span<const Poi> reference,
                             std::span<const Poi> retrieved,
                             double ellMeters) {
  if (reference.empty()) return std::nullopt;
  return static_cast<double>(
             countMatchedReference(reference, retrieved, ellMeters)) /
         static_cast<double>(reference.size());
}

std::optional<double> precision(std::span<const Poi> reference,
                                std::span<const Poi> retrieved,
                                double ellMeters) {
  if (retrieved.empty()) return std::nullopt;
  return static_cast<double>(
             countMatchedReference(reference, retrieved, ellMeters)) /
         static_cast<double>(retrieved.size());
}

std::optional<double> fscore(std::span<const Poi> reference,
                             std::span<const Poi> retrieved,
                             double ellMeters) {
  if (reference.empty() && retrieved.empty()) return std::nullopt;
  if (reference.empty() || retrieved.empty()) return 0.0;
  double p = *precision(reference, retrieved, ellMeters);
  double r = *recall(reference, retrieved, ellMeters);
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

double datasetFscore(const std::map<UserId, std::vector<Poi>>& originalPois,
                     const std::map<UserId, std::vector<Poi>>& protectedPois,
                     double ellMeters) {
  static const std::vector<Poi> kNoPois;
  std::set<UserId> users;
  for (const auto& [user, pois] : originalPois) users.insert(user);
  for (const auto& [user, pois] : protectedPois) users.insert(user);

  double sum = 0.0;
  std::size_t defined = 0;
  for (const UserId& user : users) {
    auto origIt = originalPois.find(user);
    auto protIt = protectedPois.find(user);
    const std::vector<Poi>& p = origIt != originalPois.end() ? origIt->second
                                                             : kNoPois;
    const std::vector<Poi>& pPrime =
        protIt != protectedPois.end() ? protIt->second : kNoPois;
    if (auto score = fscore(p, pPrime, ellMeters)) {
      sum += *score;
      ++defined;
    }
  }
  return defined > 0 ? sum / static_cast<double>(defined) : 0.0;
}

double datasetFscore(const Dataset& original, const Dataset& protectedDs,
                     const AttackConfig& attackCfg, double ellMeters,
                     unsigned threads) {
  for (const auto& [user, trace] : protectedDs.traces()) {
    if (!original.traces().contains(user)) {
      throw std::invalid_argument("datasetFscore: protected user '" + user +
                                  "' missing from original dataset");
    }
  }
  if (ellMeters < 0.0) ellMeters = attackCfg.maxDiameterMeters / 2.0;
  auto origPois = extractAllPois(original, attackCfg, threads);
  auto protPois = extractAllPois(protectedDs, attackCfg, threads);
  return datasetFscore(origPois, protPois, ellMeters);
}

double spatialError(const Dataset& original, const Dataset& protectedDs,
                    unsigned threads) {
  std::vector<const Trace*> inputs;
  inputs.reserve(protectedDs.traceCount());
  for (const auto& [user, trace] : protectedDs.traces()) {
    if (!original.traces().contains(user)) {
      throw std::invalid_argument("spatialError: protected user '" + user +
                                  "' missing from original dataset");
    }
    inputs.push_back(&trace);
  }

  std::vector<double> sums(inputs.size(), 0.0);
  parallelFor(inputs.size(), threads, [&](std::size_t i) {
    const Trace& trace = *inputs[i];
    std::vector<Location> polyline =
        original.traces().at(trace.user()).polyline();
    double sum = 0.0;
    for (const Record& r : trace.records()) {
      sum += projectOntoPolyline(r.loc, polyline).distanceMeters;
    }
    sums[i] = sum;
  });

  std::size_t count = protectedDs.recordCount();
  if (count == 0) return 0.0;
  double total = 0.0;
  for (double s : sums) total += s;
  return total / static_cast<double>(count);
}

std::vector<RangeQuery> generateQueries(const Dataset& original,
                                        const QueryGenConfig& cfg) {
  if (original.empty() || original.recordCount() == 0) {
    throw std::invalid_argument("generateQueries: empty dataset");
  }
  if (cfg.minDurationSeconds > cfg.maxDurationSeconds ||
      cfg.minHalfDiagonalMeters > cfg.maxHalfDiagonalMeters ||
      cfg.minDurationSeconds <= 0 || !(cfg.minHalfDiagonalMeters > 0.0)) {
    throw std::invalid_argument("generateQueries: bad configuration");
  }

  std::vector<const Record*> records;
  records.reserve(original.recordCount());
  for (const auto& [user, trace] : original.traces()) {
    for (const Record& r : trace.records()) records.push_back(&r);
  }

  SplitMix64 rng = userStream(cfg.seed, "range-queries");
  std::vector<RangeQuery> queries;
  queries.reserve(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const Record& r = *records[rng.next() % records.size()];
    std::int64_t durationSpan =
        cfg.maxDurationSeconds - cfg.minDurationSeconds + 1;
    Timestamp duration =
        cfg.minDurationSeconds +
        static_cast<Timestamp>(rng.nextUnit() * static_cast<double>(durationSpan));
    duration = std::min(duration, cfg.maxDurationSeconds);
    double halfDiagonal =
        cfg.minHalfDiagonalMeters +
        rng.nextUnit() * (cfg.maxHalfDiagonalMeters - cfg.minHalfDiagonalMeters);

    Timestamp start = r.time - duration / 2;
    queries.push_back(RangeQuery{r.loc, halfDiagonal, start, start + duration});
  }
  return queries;
}

std::size_t evaluateQuery(const Dataset& d, const RangeQuery& q) {
  const double halfSide = q.halfDiagonalMeters / std::numbers::sqrt2;
  std::size_t users = 0;
  for (const auto& [user, trace] : d.traces()) {
    const auto& records = trace.records();
    auto first = std::lower_bound(
        records.begin(), records.end(), q.windowStart,
        [](const Record& r, Timestamp t) { return r.time < t; });
    for (auto it = first; it != records.end() && it->time <= q.windowEnd;
         ++it) {
      PlanarPoint p = project(q.center, it->loc);
      if (std::abs(p.x) <= halfSide && std::abs(p.y) <= halfSide) {
        ++users;
        break;
      }
    }
  }
  return users;
}

double queryDistortion(const Dataset& original, const Dataset& protectedDs,
                       std::span<const RangeQuery> queries, unsigned threads) {
  if (queries.empty()) return 0.0;
  std::vector<double> distortions(queries.size(), 0.0);
  std::vector<bool> undefined(queries.size(), false);
  parallelFor(queries.size(), threads, [&](std::size_t i) {
    std::size_t origCount = evaluateQuery(original, queries[i]);
    if (origCount == 0) {
      undefined[i] = true;
      return;
    }
    std::size_t protCount = evaluateQuery(protectedDs, queries[i]);
    double diff = static_cast<double>(origCount) - static_cast<double>(protCount);
    distortions[i] = std::abs(diff) / static_cast<double>(origCount);
  });

  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (undefined[i]) {
      throw std::invalid_argument(
          "queryDistortion: query " + std::to_string(i) +
          " matches no user of the original dataset");
    }
  }
  double sum = 0.0;
  for (double v : distortions) sum += v;
  return sum / static_cast<double>(queries.size());
}

double compression(const Dataset& original, const Dataset& protectedDs) {
  std::size_t origCount = original.recordCount();
  if (origCount == 0) {
    throw std::invalid_argument("compression: original dataset is empty");
  }
  return static_cast<double>(protectedDs.recordCount()) /
         static_cast<double>(origCount);
}

}  // namespace mobanon
