#ifndef MOBANON_MODEL_HPP
#define MOBANON_MODEL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mobanon/geo.hpp"

namespace mobanon {

using UserId = std::string;

/// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

inline constexpr Timestamp kSecondsPerDay = 86400;

struct Record {
  UserId user;
  Location loc;
  Timestamp time = 0;

  bool operator==(const Record& other) const = default;
};

/// Time-ordered records of one user. Non-empty, timestamps non-decreasing,
/// every record carries the trace's user id.
class Trace {
 public:
  Trace(UserId user, std::vector<Record> records);

  const UserId& user() const { return user_; }
  const std::vector<Record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  Timestamp startTime() const { return records_.front().time; }
  Timestamp endTime() const { return records_.back().time; }

  /// Vertices of the trace seen as a polyline.
  std::vector<Location> polyline() const;

  bool operator==(const Trace& other) const = default;

 private:
  UserId user_;
  std::vector<Record> records_;
};

/// One trace per user id. Immutable after construction.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<Trace> traces);

  const std::map<UserId, Trace>& traces() const { return traces_; }
  bool empty() const { return traces_.empty(); }
  std::size_t traceCount() const { return traces_.size(); }

  /// Total number of records across all traces.
  std::size_t recordCount() const;

  /// All records, traces in user-id order, records in time order.
  std::vector<Record> allRecords() const;

  bool operator==(const Dataset& other) const = default;

 private:
  std::map<UserId, Trace> traces_;
};

/// Groups records by user and sorts them by time. Records sharing a
/// (user, time) pair are collapsed to the first one in input order.
Dataset buildDataset(std::vector<Record> records);

/// An extracted stay point: cluster centroid plus dwell interval.
struct Poi {
  UserId user;
  Location center;
  Timestamp start = 0;
  Timestamp end = 0;
  std::size_t recordCount = 0;

  bool operator==(const Poi& other) const = default;
};

}  // namespace mobanon

#endif  // MOBANON_MODEL_HPP
