#ifndef MOBANON_ATTACK_HPP
#define MOBANON_ATTACK_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "mobanon/model.hpp"

namespace mobanon {

struct AttackConfig {
  double maxDiameterMeters = 200.0;   // max POI diameter
  std::int64_t minStaySeconds = 900;  // min dwell time
};

/// Sequential stay-point clustering: grows a candidate cluster while every
/// member stays within maxDiameter/2 of the running centroid; when the next
/// record breaks that, the candidate is emitted iff its time span reaches
/// minStay and the scan restarts from the breaking record.
std::vector<Poi> extractPois(const Trace& trace, const AttackConfig& cfg);

/// extractPois per trace, keyed by user id.
std::map<UserId, std::vector<Poi>> extractAllPois(const Dataset& d,
                                                  const AttackConfig& cfg,
                                                  unsigned threads = 0);

}  // namespace mobanon

#endif  // MOBANON_ATTACK_HPP
