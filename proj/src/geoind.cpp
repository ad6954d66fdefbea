#include "mobanon/geoind.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "mobanon/geo.hpp"
#include "mobanon/parallel.hpp"

namespace mobanon {

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1/e
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kDegToRad = std::numbers::pi / 180.0;

/// Displacement that cannot push the latitude out of range; longitude
/// wrapping is handled by unproject.
Location displace(const Location& orig, double dx, double dy) {
  double latRaw = orig.lat + (dy / kEarthRadiusMeters) * kRadToDeg;
  if (latRaw < -90.0 || latRaw > 90.0) {
    dy = (std::clamp(latRaw, -90.0, 90.0) - orig.lat) * kDegToRad *
         kEarthRadiusMeters;
  }
  return unproject(orig, PlanarPoint{dx, dy});
}

}  // namespace

double lambertWm1(double x) {
  if (!(x < 0.0) || x < -kInvE - 1e-14) {
    throw std::invalid_argument("lambertWm1: argument outside [-1/e, 0)");
  }
  if (x <= -kInvE) return -1.0;

  double w;
  if (x < -0.25) {
    // Series around the branch point x = -1/e.
    double p = -std::sqrt(2.0 * (1.0 + std::numbers::e * x));
    w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
  } else {
    // Asymptotic guess from the double logarithm.
    double l1 = std::log(-x);
    double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int i = 0; i < 50; ++i) {
    double ew = std::exp(w);
    double f = w * ew - x;
    double halley = (w + 2.0) * f / (2.0 * w + 2.0);
    if (!std::isfinite(halley)) halley = 0.0;  // Newton step near w = -1
    double denom = ew * (w + 1.0) - halley;
    if (denom == 0.0 || !std::isfinite(denom)) break;
    double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-12 * (1.0 + std::abs(w))) break;
  }
  return std::min(w, -1.0);
}

PolarNoise samplePlanarLaplace(double epsilon, SplitMix64& rng) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("samplePlanarLaplace: epsilon must be > 0");
  }
  double angle = 2.0 * std::numbers::pi * rng.nextUnit();
  double p = rng.nextUnit();
  // Inverse of the radius CDF 1 - (1 + eps*r) * exp(-eps*r).
  double radius = -(lambertWm1((p - 1.0) * kInvE) + 1.0) / epsilon;
  return PolarNoise{angle, radius};
}

double planarLaplaceRadiusCdf(double epsilon, double radius) {
  if (radius <= 0.0) return 0.0;
  double er = epsilon * radius;
  return 1.0 - (1.0 + er) * std::exp(-er);
}

Dataset geoind(const Dataset& d, const GeoIndConfig& cfg, unsigned threads) {
  if (!(cfg.epsilon > 0.0)) {
    throw std::invalid_argument("geoind: epsilon must be > 0");
  }

  std::vector<const Trace*> inputs;
  inputs.reserve(d.traceCount());
  for (const auto& [user, trace] : d.traces()) inputs.push_back(&trace);

  std::vector<std::optional<Trace>> outputs(inputs.size());
  parallelFor(inputs.size(), threads, [&](std::size_t i) {
    const Trace& trace = *inputs[i];
    std::vector<Record> noisy;
    noisy.reserve(trace.size());
    for (std::size_t index = 0; index < trace.size(); ++index) {
      const Record& r = trace.records()[index];
      SplitMix64 rng = recordStream(cfg.seed, trace.user(), index);
      PolarNoise noise = samplePlanarLaplace(cfg.epsilon, rng);
      Location moved =
          displace(r.loc, noise.radiusMeters * std::cos(noise.angleRadians),
                   noise.radiusMeters * std::sin(noise.angleRadians));
      noisy.push_back(Record{r.user, moved, r.time});
    }
    outputs[i] = Trace(trace.user(), std::move(noisy));
  });

  std::vector<Trace> traces;
  traces.reserve(outputs.size());
  for (auto& out : outputs) traces.push_back(std::move(*out));
  return Dataset(std::move(traces));
}

double parseEpsilon(std::string_view text) {
  auto parseNumber = [](std::string_view s, double& out) {
    const char* first = s.data();
    const char* last = first + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
  };

  if (text.starts_with("ln(")) {
    std::size_t close = text.find(')');
    if (close != std::string_view::npos && close + 1 < text.size() &&
        text[close + 1] == '/') {
      double k, l;
      if (parseNumber(text.substr(3, close - 3), k) &&
          parseNumber(text.substr(close + 2), l) && k > 0.0 && l != 0.0) {
        return std::log(k) / l;
      }
    }
    throw std::invalid_argument("bad epsilon literal '" + std::string(text) +
                                "', want e.g. ln(4)/200");
  }

  double value;
  if (!parseNumber(text, value)) {
    throw std::invalid_argument("bad epsilon value '" + std::string(text) +
                                "'");
  }
  return value;
}

}  // namespace mobanon
