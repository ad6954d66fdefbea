#include "mobanon/attack.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "mobanon/geo.hpp"
#include "mobanon/parallel.hpp"

namespace mobanon {

namespace {

double hypot2(double x, double y) { return std::sqrt(x * x + y * y); }

/// Candidate stay cluster. All geometry lives in the local plane of the
/// cluster's first record. A cheap upper bound on the max member-to-centroid
/// distance avoids rescanning members after every insertion; the exact scan
/// only runs when the bound crosses the radius.
class Cluster {
 public:
  Cluster(const Trace& trace, std::size_t firstIndex)
      : origin_(trace.records()[firstIndex].loc) {
    members_.push_back(PlanarPoint{0.0, 0.0});
  }

  bool tryAdd(const Location& loc, double radius) {
    PlanarPoint q = project(origin_, loc);
    double n = static_cast<double>(members_.size() + 1);
    double cx = (sumX_ + q.x) / n;
    double cy = (sumY_ + q.y) / n;
    double shift = hypot2(cx - centroidX_, cy - centroidY_);
    double bound =
        std::max(maxDistBound_ + shift, hypot2(q.x - cx, q.y - cy));

    if (bound > radius) {
      double exact = hypot2(q.x - cx, q.y - cy);
      for (const PlanarPoint& m : members_) {
        exact = std::max(exact, hypot2(m.x - cx, m.y - cy));
      }
      if (exact > radius) return false;
      bound = exact;
    }

    members_.push_back(q);
    sumX_ += q.x;
    sumY_ += q.y;
    centroidX_ = cx;
    centroidY_ = cy;
    maxDistBound_ = bound;
    return true;
  }

  Location centroid() const {
    return unproject(origin_, PlanarPoint{centroidX_, centroidY_});
  }

  std::size_t size() const { return members_.size(); }

 private:
  Location origin_;
  std::vector<PlanarPoint> members_;
  double sumX_ = 0.0, sumY_ = 0.0;
  double centroidX_ = 0.0, centroidY_ = 0.0;
  double maxDistBound_ = 0.0;
};

}  // namespace

std::vector<Poi> extractPois(const Trace& trace, const AttackConfig& cfg) {
  if (!(cfg.maxDiameterMeters > 0.0) || cfg.minStaySeconds <= 0) {
    throw std::invalid_argument("extractPois: bad attack configuration");
  }
  const double radius = cfg.maxDiameterMeters / 2.0;
  const auto& records = trace.records();

  std::vector<Poi> pois;
  std::size_t start = 0;
  Cluster cluster(trace, 0);

  auto flush = [&](std::size_t endIndex) {  // candidate is [start, endIndex]
    Timestamp span = records[endIndex].time - records[start].time;
    if (span >= cfg.minStaySeconds) {
      pois.push_back(Poi{trace.user(), cluster.centroid(),
                         records[start].time, records[endIndex].time,
                         cluster.size()});
    }
  };

  for (std::size_t i = 1; i < records.size(); ++i) {
    if (cluster.tryAdd(records[i].loc, radius)) continue;
    flush(i - 1);
    start = i;
    cluster = Cluster(trace, i);
  }
  flush(records.size() - 1);
  return pois;
}

std::map<UserId, std::vector<Poi>> extractAllPois(const Dataset& d,
                                                  const AttackConfig& cfg,
                                                  unsigned threads) {
  std::vector<const Trace*> inputs;
  inputs.reserve(d.traceCount());
  for (const auto& [user, trace] : d.traces()) inputs.push_back(&trace);

  std::vector<std::vector<Poi>> results(inputs.size());
  parallelFor(inputs.size(), threads, [&](std::size_t i) {
    results[i] = extractPois(*inputs[i], cfg);
  });

  std::map<UserId, std::vector<Poi>> byUser;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    byUser.emplace(inputs[i]->user(), std::move(results[i]));
  }
  return byUser;
}

}  // namespace mobanon
