#include "mobanon/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mobanon {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double wrapLongitude(double lonDeg) {
  if (lonDeg >= -180.0 && lonDeg <= 180.0) return lonDeg;
  lonDeg = std::fmod(lonDeg + 180.0, 360.0);
  if (lonDeg < 0) lonDeg += 360.0;
  return lonDeg - 180.0;
}

double squaredNorm(const PlanarPoint& p) { return p.x * p.x + p.y * p.y; }

}  // namespace

Location::Location(double latDeg, double lonDeg) : lat(latDeg), lon(lonDeg) {
  if (!(lat >= -90.0 && lat <= 90.0)) {
    throw std::invalid_argument("latitude out of range [-90, 90]: " +
                                std::to_string(latDeg));
  }
  if (!(lon >= -180.0 && lon <= 180.0)) {
    throw std::invalid_argument("longitude out of range [-180, 180]: " +
                                std::to_string(lonDeg));
  }
}

double distanceMeters(const Location& a, const Location& b) {
  double lat1 = a.lat * kDegToRad;
  double lat2 = b.lat * kDegToRad;
  double dLat = (b.lat - a.lat) * kDegToRad;
  double dLon = (b.lon - a.lon) * kDegToRad;

  double sinLat = std::sin(dLat / 2.0);
  double sinLon = std::sin(dLon / 2.0);
  double h = sinLat * sinLat + std::cos(lat1) * std::cos(lat2) * sinLon * sinLon;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusMeters * std::asin(std::sqrt(h));
}

PlanarPoint project(const Location& origin, const Location& p) {
  double dLon = p.lon - origin.lon;
  // Shortest direction across the antimeridian.
  if (dLon > 180.0) dLon -= 360.0;
  if (dLon < -180.0) dLon += 360.0;
  return PlanarPoint{
      kEarthRadiusMeters * std::cos(origin.lat * kDegToRad) * dLon * kDegToRad,
      kEarthRadiusMeters * (p.lat - origin.lat) * kDegToRad};
}

Location unproject(const Location& origin, const PlanarPoint& q) {
  double lat = origin.lat + (q.y / kEarthRadiusMeters) * kRadToDeg;
  double cosLat = std::cos(origin.lat * kDegToRad);
  double lon = origin.lon;
  if (cosLat > 0.0) {
    lon += (q.x / (kEarthRadiusMeters * cosLat)) * kRadToDeg;
  }
  return Location{lat, wrapLongitude(lon)};
}

Location interpolate(const Location& prev, const Location& curr,
                     double epsMeters) {
  double total = distanceMeters(prev, curr);
  if (!(epsMeters > 0.0)) {
    throw std::invalid_argument("interpolate: eps must be positive");
  }
  if (epsMeters > total) {
    throw std::invalid_argument("interpolate: eps exceeds segment length");
  }

  PlanarPoint v = project(prev, curr);
  double norm = std::sqrt(squaredNorm(v));
  if (norm == 0.0) return curr;

  // The planar chord length differs from the great-circle distance by a
  // fraction that matters at km scale; two proportional corrections bring
  // the output within millimeters of the requested distance.
  double t = epsMeters / norm;
  for (int i = 0; i < 2; ++i) {
    Location candidate = unproject(prev, PlanarPoint{t * v.x, t * v.y});
    double d = distanceMeters(prev, candidate);
    if (d <= 0.0) break;
    t *= epsMeters / d;
  }
  t = std::clamp(t, 0.0, 1.0);
  return unproject(prev, PlanarPoint{t * v.x, t * v.y});
}

PolylineProjection projectOntoPolyline(const Location& point,
                                       std::span<const Location> polyline) {
  if (polyline.empty()) {
    throw std::invalid_argument("projectOntoPolyline: empty polyline");
  }

  std::vector<PlanarPoint> vertices;
  vertices.reserve(polyline.size());
  for (const Location& v : polyline) vertices.push_back(project(point, v));

  // The query point is the plane origin.
  PlanarPoint best = vertices.front();
  double bestSq = squaredNorm(best);

  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const PlanarPoint& a = vertices[i];
    const PlanarPoint& b = vertices[i + 1];
    double abx = b.x - a.x;
    double aby = b.y - a.y;
    double lenSq = abx * abx + aby * aby;

    PlanarPoint foot = b;
    if (lenSq > 0.0) {
      // Closest point of segment ab to the origin.
      double t = std::clamp(-(a.x * abx + a.y * aby) / lenSq, 0.0, 1.0);
      foot = PlanarPoint{a.x + t * abx, a.y + t * aby};
    }
    double footSq = squaredNorm(foot);
    if (footSq < bestSq) {
      bestSq = footSq;
      best = foot;
    }
  }

  return PolylineProjection{unproject(point, best), std::sqrt(bestSq)};
}

}  // namespace mobanon
