#ifndef MOBANON_PROMESSE_HPP
#define MOBANON_PROMESSE_HPP

#include <optional>

#include "mobanon/model.hpp"

namespace mobanon {

struct PromesseConfig {
  /// Spacing of the resampled records, meters. Should be at least the
  /// diameter of the stay areas that must be hidden.
  double epsMeters = 200.0;
};

/// Speed smoothing of a single trace: resamples the trajectory at constant
/// eps spacing, removes the first and last sample to blur the endpoints, and
/// redistributes the retained time span uniformly. Traces that keep fewer
/// than two samples (or retain no duration) are not protectable and yield
/// an empty result.
std::optional<Trace> smoothSpeed(const Trace& trace, const PromesseConfig& cfg);

/// Applies smoothSpeed to every trace independently; dropped traces are
/// omitted from the output. Deterministic; traces may run in parallel.
Dataset promesse(const Dataset& d, const PromesseConfig& cfg,
                 unsigned threads = 0);

}  // namespace mobanon

#endif  // MOBANON_PROMESSE_HPP
