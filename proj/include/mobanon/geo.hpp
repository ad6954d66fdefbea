#ifndef MOBANON_GEO_HPP
#define MOBANON_GEO_HPP

#include <span>
#include <vector>

namespace mobanon {

inline constexpr double kEarthRadiusMeters = 6371000.0;

/// A WGS84 point. Construction checks the coordinate ranges.
struct Location {
  Location(double latDeg, double lonDeg);

  double lat;  // degrees, [-90, 90]
  double lon;  // degrees, [-180, 180]

  bool operator==(const Location& other) const = default;
};

/// Meters east/north of a projection origin.
struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Great-circle (haversine) distance in meters, mean Earth radius.
double distanceMeters(const Location& a, const Location& b);

/// Azimuthal equirectangular projection centered at `origin`.
/// Accurate to well under GPS noise within ~100 km of the origin.
PlanarPoint project(const Location& origin, const Location& p);
Location unproject(const Location& origin, const PlanarPoint& q);

/// Point on the segment prev->curr (in the local plane centered at prev)
/// at great-circle distance `epsMeters` from prev.
/// Requires 0 < epsMeters <= distanceMeters(prev, curr).
Location interpolate(const Location& prev, const Location& curr, double epsMeters);

struct PolylineProjection {
  Location closest;
  double distanceMeters = 0.0;
};

/// Closest point of the polyline to `point`, computed in the local plane
/// centered at `point`. The polyline must have at least one vertex;
/// zero-length segments are treated as vertices.
PolylineProjection projectOntoPolyline(const Location& point,
                                       std::span<const Location> polyline);

}  // namespace mobanon

#endif  // MOBANON_GEO_HPP
