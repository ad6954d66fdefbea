#ifndef MOBANON_METRICS_HPP
#define MOBANON_METRICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mobanon/attack.hpp"
#include "mobanon/model.hpp"

namespace mobanon {

// --- POI retrieval quality -------------------------------------------------

/// Pairs each p' of `retrieved` with its closest element of `reference` when
/// that distance is at most `ellMeters`. Ties are broken by the lowest index
/// in a canonical (lat, lon, start) ordering of `reference`, so the result
/// does not depend on input order. Returns (referenceIndex, retrievedIndex)
/// pairs.
std::vector<std::pair<std::size_t, std::size_t>> matchPois(
    std::span<const Poi> reference, std::span<const Poi> retrieved,
    double ellMeters);

/// |reference ∩ match| / |reference|; absent when `reference` is empty.
std::optional<double> recall(std::span<const Poi> reference,
                             std::span<const Poi> retrieved, double ellMeters);

/// |reference ∩ match| / |retrieved|; absent when `retrieved` is empty.
std::optional<double> precision(std::span<const Poi> reference,
                                std::span<const Poi> retrieved,
                                double ellMeters);

/// Harmonic mean of precision and recall; 0 when either set is empty or both
/// scores are 0; absent when both sets are empty.
std::optional<double> fscore(std::span<const Poi> reference,
                             std::span<const Poi> retrieved, double ellMeters);

/// Mean per-trace F-score between the POIs of the original and the protected
/// dataset; traces where the score is undefined are excluded. The matching
/// threshold defaults to half the attack diameter.
double datasetFscore(const Dataset& original, const Dataset& protectedDs,
                     const AttackConfig& attackCfg, double ellMeters = -1.0,
                     unsigned threads = 0);

/// Same, over POI sets already extracted per user.
double datasetFscore(const std::map<UserId, std::vector<Poi>>& originalPois,
                     const std::map<UserId, std::vector<Poi>>& protectedPois,
                     double ellMeters);

// --- Spatial error -----------------------------------------------------------

/// Mean distance from each protected record to its projection onto the
/// original trace of the same user, seen as a polyline. Throws if a protected
/// user is missing from the original dataset.
double spatialError(const Dataset& original, const Dataset& protectedDs,
                    unsigned threads = 0);

// --- Range queries -----------------------------------------------------------

struct RangeQuery {
  Location center;
  double halfDiagonalMeters = 0.0;
  Timestamp windowStart = 0;
  Timestamp windowEnd = 0;

  bool operator==(const RangeQuery& other) const = default;
};

struct QueryGenConfig {
  std::size_t count = 1000;
  std::int64_t minDurationSeconds = 2 * 3600;
  std::int64_t maxDurationSeconds = 8 * 3600;
  double minHalfDiagonalMeters = 500.0;
  double maxHalfDiagonalMeters = 5000.0;
  std::uint64_t seed = 0;
};

/// Random queries centered on records of the dataset, guaranteeing that every
/// query matches at least one user of the original. Deterministic per seed.
std::vector<RangeQuery> generateQueries(const Dataset& original,
                                        const QueryGenConfig& cfg);

/// Number of distinct users having at least one record inside the query's
/// time window and its axis-aligned square (side 2*halfDiagonal/sqrt(2),
/// in the local plane of the query center).
std::size_t evaluateQuery(const Dataset& d, const RangeQuery& q);

/// Mean over queries of |Q(D) - Q(D')| / Q(D). Throws if some query has
/// Q(D) = 0.
double queryDistortion(const Dataset& original, const Dataset& protectedDs,
                       std::span<const RangeQuery> queries,
                       unsigned threads = 0);

// --- Compression -------------------------------------------------------------

/// |D'| / |D|. Throws when the original dataset is empty.
double compression(const Dataset& original, const Dataset& protectedDs);

}  // namespace mobanon

#endif  // MOBANON_METRICS_HPP
