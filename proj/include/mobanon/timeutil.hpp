#ifndef MOBANON_TIMEUTIL_HPP
#define MOBANON_TIMEUTIL_HPP

#include <cstdint>
#include <optional>
#include <string_view>

#include "mobanon/model.hpp"

namespace mobanon {

/// Day number of a timestamp (floor division, works for negative times).
inline std::int64_t epochDay(Timestamp t) {
  std::int64_t d = t / kSecondsPerDay;
  if (t % kSecondsPerDay < 0) --d;
  return d;
}

/// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t daysFromCivil(int year, int month, int day);

/// Parses `YYYY-MM-DDTHH:MM:SSZ` (UTC). Returns nothing on any deviation.
std::optional<Timestamp> parseIso8601Utc(std::string_view text);

}  // namespace mobanon

#endif  // MOBANON_TIMEUTIL_HPP
