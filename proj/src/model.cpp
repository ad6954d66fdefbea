#include "mobanon/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace mobanon {

Trace::Trace(UserId user, std::vector<Record> records)
    : user_(std::move(user)), records_(std::move(records)) {
  if (user_.empty()) throw std::invalid_argument("Trace: empty user id");
  if (records_.empty()) throw std::invalid_argument("Trace: no records");
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].user != user_) {
      throw std::invalid_argument("Trace: record user mismatch for '" + user_ +
                                  "'");
    }
    if (i > 0 && records_[i].time < records_[i - 1].time) {
      throw std::invalid_argument("Trace: records not in chronological order");
    }
  }
}

std::vector<Location> Trace::polyline() const {
  std::vector<Location> points;
  points.reserve(records_.size());
  for (const Record& r : records_) points.push_back(r.loc);
  return points;
}

Dataset::Dataset(std::vector<Trace> traces) {
  for (Trace& t : traces) {
    UserId user = t.user();
    auto [it, inserted] = traces_.emplace(std::move(user), std::move(t));
    if (!inserted) {
      throw std::invalid_argument("Dataset: duplicate user id '" + it->first +
                                  "'");
    }
  }
}

std::size_t Dataset::recordCount() const {
  std::size_t total = 0;
  for (const auto& [user, trace] : traces_) total += trace.size();
  return total;
}

std::vector<Record> Dataset::allRecords() const {
  std::vector<Record> records;
  records.reserve(recordCount());
  for (const auto& [user, trace] : traces_) {
    records.insert(records.end(), trace.records().begin(),
                   trace.records().end());
  }
  return records;
}

Dataset buildDataset(std::vector<Record> records) {
  std::unordered_map<UserId, std::vector<std::pair<std::size_t, Record>>>
      byUser;
  for (std::size_t i = 0; i < records.size(); ++i) {
    byUser[records[i].user].emplace_back(i, std::move(records[i]));
  }

  std::vector<Trace> traces;
  traces.reserve(byUser.size());
  for (auto& [user, indexed] : byUser) {
    std::sort(indexed.begin(), indexed.end(), [](const auto& a, const auto& b) {
      if (a.second.time != b.second.time) return a.second.time < b.second.time;
      return a.first < b.first;  // first in input order wins on ties
    });
    std::vector<Record> kept;
    kept.reserve(indexed.size());
    for (auto& [index, record] : indexed) {
      if (!kept.empty() && kept.back().time == record.time) continue;
      kept.push_back(std::move(record));
    }
    traces.emplace_back(user, std::move(kept));
  }
  return Dataset(std::move(traces));
}

}  // namespace mobanon
