#ifndef MOBANON_CSV_HPP
#define MOBANON_CSV_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <vector>

#include "mobanon/model.hpp"

namespace mobanon {

// Dataset CSV: header `user,timestamp,lat,lon`, UTF-8, comma separated.
// Timestamps are written as integer epoch seconds and accepted either as
// integers or as ISO-8601 UTC; lat/lon are written with 7 decimal places.

Dataset readCsv(std::istream& in, const std::string& sourceName = "<stream>");
Dataset readCsv(const std::filesystem::path& path);

void writeCsv(const Dataset& dataset, std::ostream& out);
void writeCsv(const Dataset& dataset, const std::filesystem::path& path);

// POI CSV: header `user,lat,lon,start,end,count`.
void writePoiCsv(const std::map<UserId, std::vector<Poi>>& pois,
                 std::ostream& out);
void writePoiCsv(const std::map<UserId, std::vector<Poi>>& pois,
                 const std::filesystem::path& path);

}  // namespace mobanon

#endif  // MOBANON_CSV_HPP
