#ifndef MOBANON_GEOIND_HPP
#define MOBANON_GEOIND_HPP

#include <cstdint>
#include <string_view>

#include "mobanon/model.hpp"
#include "mobanon/rng.hpp"

namespace mobanon {

struct GeoIndConfig {
  /// Privacy parameter in 1/meters, e.g. ln(4)/200.
  double epsilon = 0.006931471805599453;
  std::uint64_t seed = 0;
};

/// Lower real branch of the Lambert W function, defined on [-1/e, 0).
/// Halley iteration, relative error <= 1e-9.
double lambertWm1(double x);

struct PolarNoise {
  double angleRadians = 0.0;
  double radiusMeters = 0.0;
};

/// One planar-Laplace draw: uniform angle, radius by inverse CDF
/// r = -(1/eps) * (W_{-1}((p-1)/e) + 1) with p uniform in [0, 1).
PolarNoise samplePlanarLaplace(double epsilon, SplitMix64& rng);

/// Analytic CDF of the planar-Laplace radius: 1 - (1 + eps*r) * exp(-eps*r).
double planarLaplaceRadiusCdf(double epsilon, double radius);

/// Displaces every record independently by planar-Laplace noise in the local
/// plane centered at the record. User ids, timestamps and record counts are
/// unchanged. Deterministic per (seed, user id, record index).
Dataset geoind(const Dataset& d, const GeoIndConfig& cfg, unsigned threads = 0);

/// Accepts a decimal value or the literal form `ln(K)/L`.
double parseEpsilon(std::string_view text);

}  // namespace mobanon

#endif  // MOBANON_GEOIND_HPP
