#ifndef MOBANON_SYNTHETIC_HPP
#define MOBANON_SYNTHETIC_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "mobanon/model.hpp"

namespace mobanon {

/// Generator parameters for traces with planted stays. The planted stays act
/// as ground truth when judging the POI-extraction attack.
struct SyntheticSpec {
  std::uint32_t userCount = 1;
  std::uint32_t poisPerTrace = 0;
  double poiDiameterMeters = 100.0;
  std::int64_t poiDwellSeconds = 1800;
  double travelSpeedMps = 15.0;
  std::int64_t samplingIntervalSeconds = 2;
  std::uint64_t seed = 0;
  Location origin{48.0, 2.0};
  double extentMeters = 10000.0;
};

struct SyntheticData {
  Dataset dataset;
  std::map<UserId, std::vector<Poi>> groundTruth;
};

/// Each trace alternates planted stays (records jittered uniformly within
/// poiDiameter/2 of a stay center for poiDwell) with straight travel legs at
/// travelSpeed, sampled every samplingInterval. Deterministic per seed.
SyntheticData generateSynthetic(const SyntheticSpec& spec);

}  // namespace mobanon

#endif  // MOBANON_SYNTHETIC_HPP
