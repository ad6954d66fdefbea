#include "mobanon/preprocess.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "mobanon/timeutil.hpp"

namespace mobanon {

namespace {

Trace shiftedTrace(const Trace& trace, Timestamp offsetSeconds) {
  if (offsetSeconds == 0) return trace;
  std::vector<Record> records = trace.records();
  for (Record& r : records) r.time += offsetSeconds;
  return Trace(trace.user(), std::move(records));
}

}  // namespace

Dataset splitOnGaps(const Dataset& d, std::int64_t maxGapSeconds,
                    bool renameSingleParts) {
  if (maxGapSeconds <= 0) {
    throw std::invalid_argument("splitOnGaps: maxGap must be positive");
  }
  std::vector<Trace> parts;
  for (const auto& [user, trace] : d.traces()) {
    const auto& records = trace.records();
    std::vector<std::vector<Record>> chunks;
    std::vector<Record> current{records.front()};
    for (std::size_t i = 1; i < records.size(); ++i) {
      if (records[i].time - records[i - 1].time > maxGapSeconds) {
        chunks.push_back(std::move(current));
        current.clear();
      }
      current.push_back(records[i]);
    }
    chunks.push_back(std::move(current));

    bool rename = renameSingleParts || chunks.size() > 1;
    for (std::size_t part = 0; part < chunks.size(); ++part) {
      UserId id = rename ? user + "-" + std::to_string(part) : user;
      for (Record& r : chunks[part]) r.user = id;
      parts.emplace_back(std::move(id), std::move(chunks[part]));
    }
  }
  return Dataset(std::move(parts));
}

Dataset truncateDays(const Dataset& d, int days) {
  if (days < 1) throw std::invalid_argument("truncateDays: days must be >= 1");
  std::vector<Trace> traces;
  for (const auto& [user, trace] : d.traces()) {
    Timestamp cutoff = trace.startTime() + static_cast<Timestamp>(days) *
                                               kSecondsPerDay;
    std::vector<Record> kept;
    for (const Record& r : trace.records()) {
      if (r.time < cutoff) kept.push_back(r);
    }
    // The first record always survives the half-open window.
    traces.emplace_back(user, std::move(kept));
  }
  return Dataset(std::move(traces));
}

Dataset alignStartDay(const Dataset& d) {
  if (d.empty()) {
    throw std::invalid_argument("alignStartDay: empty dataset");
  }
  std::int64_t earliestDay = epochDay(d.traces().begin()->second.startTime());
  for (const auto& [user, trace] : d.traces()) {
    earliestDay = std::min(earliestDay, epochDay(trace.startTime()));
  }

  std::vector<Trace> traces;
  for (const auto& [user, trace] : d.traces()) {
    std::int64_t dayShift = epochDay(trace.startTime()) - earliestDay;
    traces.push_back(shiftedTrace(trace, -dayShift * kSecondsPerDay));
  }
  return Dataset(std::move(traces));
}

Dataset dropEmptyDays(const Dataset& d) {
  std::vector<Trace> traces;
  for (const auto& [user, trace] : d.traces()) {
    std::int64_t firstDay = epochDay(trace.startTime());
    std::vector<Record> records = trace.records();

    // Rank of each populated day replaces its offset from the first day.
    std::int64_t populatedDays = 0;
    std::int64_t previousDay = firstDay - 1;
    for (Record& r : records) {
      std::int64_t day = epochDay(r.time);
      if (day != previousDay) {
        ++populatedDays;
        previousDay = day;
      }
      std::int64_t newDay = firstDay + populatedDays - 1;
      r.time += (newDay - day) * kSecondsPerDay;
    }
    traces.emplace_back(user, std::move(records));
  }
  return Dataset(std::move(traces));
}

Dataset preprocess(const Dataset& d, const PreprocessOptions& options) {
  if (d.empty()) return d;
  Dataset out = dropEmptyDays(d);
  out = truncateDays(out, options.days);
  out = splitOnGaps(out, options.maxGapSeconds, /*renameSingleParts=*/false);
  out = alignStartDay(out);
  return out;
}

}  // namespace mobanon
