#include "mobanon/timeutil.hpp"

#include <charconv>

namespace mobanon {

namespace {

bool parseFixedInt(std::string_view text, std::size_t pos, std::size_t len,
                   int& out) {
  if (pos + len > text.size()) return false;
  const char* first = text.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, out);
  return ec == std::errc() && ptr == first + len;
}

}  // namespace

// Howard Hinnant's days-from-civil algorithm.
std::int64_t daysFromCivil(int year, int month, int day) {
  year -= month <= 2;
  const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy = (153u * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::optional<Timestamp> parseIso8601Utc(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (text.size() != 20) return std::nullopt;
  if (text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':' || text[19] != 'Z') {
    return std::nullopt;
  }
  int year, month, day, hour, minute, second;
  if (!parseFixedInt(text, 0, 4, year) || !parseFixedInt(text, 5, 2, month) ||
      !parseFixedInt(text, 8, 2, day) || !parseFixedInt(text, 11, 2, hour) ||
      !parseFixedInt(text, 14, 2, minute) ||
      !parseFixedInt(text, 17, 2, second)) {
    return std::nullopt;
  }
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 ||
      minute > 59 || second > 60) {
    return std::nullopt;
  }
  return daysFromCivil(year, month, day) * kSecondsPerDay + hour * 3600 +
         minute * 60 + second;
}

}  // namespace mobanon
