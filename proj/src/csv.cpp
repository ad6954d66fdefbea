#include "mobanon/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mobanon/timeutil.hpp"

namespace mobanon {

namespace {

constexpr std::string_view kDatasetHeader = "user,timestamp,lat,lon";
constexpr std::string_view kPoiHeader = "user,lat,lon,start,end,count";

[[noreturn]] void fail(const std::string& source, std::size_t line,
                       const std::string& message) {
  throw std::runtime_error(source + ":" + std::to_string(line) + ": " +
                           message);
}

// Strips a trailing '\r' so CRLF files parse too.
std::string_view trimmed(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool parseDouble(std::string_view text, double& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parseTimestamp(std::string_view text, Timestamp& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec == std::errc() && ptr == last) return true;
  if (auto iso = parseIso8601Utc(text)) {
    out = *iso;
    return true;
  }
  return false;
}

void appendFixed7(std::string& out, double value) {
  std::array<char, 64> buf;
  auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value,
                    std::chars_format::fixed, 7);
  out.append(buf.data(), ptr);
}

void appendInt(std::string& out, std::int64_t value) {
  std::array<char, 24> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.append(buf.data(), ptr);
}

}  // namespace

Dataset readCsv(std::istream& in, const std::string& sourceName) {
  std::string line;
  std::size_t lineNo = 1;
  if (!std::getline(in, line)) {
    fail(sourceName, lineNo, "missing header");
  }
  if (trimmed(line) != kDatasetHeader) {
    fail(sourceName, lineNo,
         "unexpected header, want '" + std::string(kDatasetHeader) + "'");
  }

  std::vector<Record> records;
  while (std::getline(in, line)) {
    ++lineNo;
    std::string_view row = trimmed(line);
    if (row.empty()) continue;

    std::array<std::string_view, 4> fields;
    std::size_t fieldCount = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= row.size(); ++i) {
      if (i == row.size() || row[i] == ',') {
        if (fieldCount == fields.size()) {
          fail(sourceName, lineNo, "too many fields");
        }
        fields[fieldCount++] = row.substr(start, i - start);
        start = i + 1;
      }
    }
    if (fieldCount != 4) fail(sourceName, lineNo, "expected 4 fields");
    if (fields[0].empty()) fail(sourceName, lineNo, "empty user id");

    Timestamp time;
    if (!parseTimestamp(fields[1], time)) {
      fail(sourceName, lineNo, "bad timestamp '" + std::string(fields[1]) + "'");
    }
    double lat, lon;
    if (!parseDouble(fields[2], lat)) {
      fail(sourceName, lineNo, "bad latitude '" + std::string(fields[2]) + "'");
    }
    if (!parseDouble(fields[3], lon)) {
      fail(sourceName, lineNo, "bad longitude '" + std::string(fields[3]) + "'");
    }
    try {
      records.push_back(
          Record{std::string(fields[0]), Location{lat, lon}, time});
    } catch (const std::invalid_argument& e) {
      fail(sourceName, lineNo, e.what());
    }
  }
  return buildDataset(std::move(records));
}

Dataset readCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  }
  return readCsv(in, path.string());
}

void writeCsv(const Dataset& dataset, std::ostream& out) {
  std::string buffer;
  buffer.reserve(1 << 16);
  buffer.append(kDatasetHeader);
  buffer.push_back('\n');
  for (const auto& [user, trace] : dataset.traces()) {
    for (const Record& r : trace.records()) {
      buffer.append(user);
      buffer.push_back(',');
      appendInt(buffer, r.time);
      buffer.push_back(',');
      appendFixed7(buffer, r.loc.lat);
      buffer.push_back(',');
      appendFixed7(buffer, r.loc.lon);
      buffer.push_back('\n');
      if (buffer.size() > (1 << 16) - 256) {
        out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
        buffer.clear();
      }
    }
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (!out) throw std::runtime_error("dataset write failed");
}

void writeCsv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  writeCsv(dataset, out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

void writePoiCsv(const std::map<UserId, std::vector<Poi>>& pois,
                 std::ostream& out) {
  std::string buffer;
  buffer.append(kPoiHeader);
  buffer.push_back('\n');
  for (const auto& [user, list] : pois) {
    for (const Poi& poi : list) {
      buffer.append(user);
      buffer.push_back(',');
      appendFixed7(buffer, poi.center.lat);
      buffer.push_back(',');
      appendFixed7(buffer, poi.center.lon);
      buffer.push_back(',');
      appendInt(buffer, poi.start);
      buffer.push_back(',');
      appendInt(buffer, poi.end);
      buffer.push_back(',');
      appendInt(buffer, static_cast<std::int64_t>(poi.recordCount));
      buffer.push_back('\n');
    }
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (!out) throw std::runtime_error("POI write failed");
}

void writePoiCsv(const std::map<UserId, std::vector<Poi>>& pois,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  writePoiCsv(pois, out);
}

}  // namespace mobanon
