#include "mobanon/promesse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "mobanon/geo.hpp"
#include "mobanon/parallel.hpp"

namespace mobanon {

namespace {

struct Sample {
  Location loc;
  Timestamp time;
};

}  // namespace

std::optional<Trace> smoothSpeed(const Trace& trace,
                                 const PromesseConfig& cfg) {
  const double eps = cfg.epsMeters;
  if (!(eps > 0.0)) {
    throw std::invalid_argument("smoothSpeed: eps must be positive");
  }

  const auto& records = trace.records();
  std::vector<Sample> samples;
  samples.push_back(Sample{records.front().loc, records.front().time});
  Location prev = records.front().loc;

  for (std::size_t i = 1; i < records.size(); ++i) {
    const Record& curr = records[i];
    double d = distanceMeters(curr.loc, prev);
    while (d >= eps) {
      Location loc = interpolate(prev, curr.loc, eps);
      samples.push_back(Sample{loc, curr.time});
      prev = loc;
      double reduced = distanceMeters(curr.loc, prev);
      if (reduced >= d) break;  // no progress; eps below coordinate resolution
      d = reduced;
    }
  }

  // Endpoint blur must leave at least two samples behind.
  if (samples.size() < 4) return std::nullopt;
  samples.erase(samples.begin());
  samples.pop_back();

  Timestamp tMin = samples.front().time;
  Timestamp tMax = samples.front().time;
  for (const Sample& s : samples) {
    tMin = std::min(tMin, s.time);
    tMax = std::max(tMax, s.time);
  }
  if (tMax == tMin) return std::nullopt;  // no duration to spread

  const double interval = static_cast<double>(tMax - tMin) /
                          static_cast<double>(samples.size() - 1);
  std::vector<Record> output;
  output.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    Timestamp t = tMin + static_cast<Timestamp>(std::llround(
                             static_cast<double>(i) * interval));
    output.push_back(Record{trace.user(), samples[i].loc, t});
  }
  return Trace(trace.user(), std::move(output));
}

Dataset promesse(const Dataset& d, const PromesseConfig& cfg,
                 unsigned threads) {
  std::vector<const Trace*> inputs;
  inputs.reserve(d.traceCount());
  for (const auto& [user, trace] : d.traces()) inputs.push_back(&trace);

  std::vector<std::optional<Trace>> outputs(inputs.size());
  parallelFor(inputs.size(), threads,
              [&](std::size_t i) { outputs[i] = smoothSpeed(*inputs[i], cfg); });

  std::vector<Trace> kept;
  for (auto& out : outputs) {
    if (out) kept.push_back(std::move(*out));
  }
  return Dataset(std::move(kept));
}

}  // namespace mobanon
