#ifndef MOBANON_PREPROCESS_HPP
#define MOBANON_PREPROCESS_HPP

#include <cstdint>

#include "mobanon/model.hpp"

namespace mobanon {

/// Cuts every trace where the gap between consecutive records exceeds
/// `maxGapSeconds` (strictly). Parts become independent virtual users named
/// `<origUser>-<partIndex>`. With `renameSingleParts` off, a trace that
/// produced a single part keeps its original id.
Dataset splitOnGaps(const Dataset& d, std::int64_t maxGapSeconds = 4 * 3600,
                    bool renameSingleParts = true);

/// Keeps, per trace, the records with time < firstRecordTime + days * 86400.
Dataset truncateDays(const Dataset& d, int days = 20);

/// Shifts every trace by a whole number of days so its first record falls on
/// the globally earliest calendar day (UTC). Time of day is preserved.
Dataset alignStartDay(const Dataset& d);

/// Excises calendar days (UTC) with no records from each trace by shifting
/// later records back by the missing days; time of day is preserved.
Dataset dropEmptyDays(const Dataset& d);

struct PreprocessOptions {
  std::int64_t maxGapSeconds = 4 * 3600;
  int days = 20;
};

/// Full preparation pipeline: dropEmptyDays, truncateDays, splitOnGaps,
/// alignStartDay. Split parts keep the original id when no cut happened,
/// which makes the pipeline idempotent on its own output.
Dataset preprocess(const Dataset& d, const PreprocessOptions& options = {});

}  // namespace mobanon

#endif  // MOBANON_PREPROCESS_HPP
