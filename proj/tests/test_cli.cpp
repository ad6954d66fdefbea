#include "cli.hpp"

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "mobanon/csv.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;
using mobanon::cli::run;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = testutil::tempDir() / "cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string pathArg(const fs::path& p) { return p.string(); }

}  // namespace

TEST_CASE("synth runs are byte-identical per seed") {
  auto out1 = scratch("synth1.csv");
  auto out2 = scratch("synth2.csv");
  std::vector<std::string> base{"synth", "--users", "4",     "--pois", "2",
                                "--seed", "7",      "--dwell", "600"};

  auto args1 = base;
  args1.insert(args1.end(), {"-o", pathArg(out1)});
  auto args2 = base;
  args2.insert(args2.end(), {"-o", pathArg(out2)});

  CHECK(run(args1) == 0);
  CHECK(run(args2) == 0);
  CHECK(testutil::slurp(out1) == testutil::slurp(out2));
  CHECK(!testutil::slurp(out1).empty());
}

TEST_CASE("anonymize produces output and a report") {
  auto input = scratch("anon-in.csv");
  auto output = scratch("anon-out.csv");
  auto report = scratch("anon-report.json");
  CHECK(run({"synth", "--users", "3", "--pois", "1", "--seed", "3", "-o",
             pathArg(input)}) == 0);

  CHECK(run({"anonymize", "--mechanism", "promesse", "--epsilon", "200",
             "-i", pathArg(input), "-o", pathArg(output), "--report",
             pathArg(report)}) == 0);

  CHECK(fs::exists(output));
  CHECK_NOTHROW(mobanon::readCsv(output));

  std::ifstream reportIn(report);
  nlohmann::json j = nlohmann::json::parse(reportIn);
  CHECK(j["command"] == "anonymize");
  CHECK(j["params"]["mechanism"] == "promesse");
  CHECK(j["params"]["epsilon"] == "200");
  CHECK(j["inputRecords"].get<std::size_t>() > 0);
  CHECK(j.contains("durationMs"));
  CHECK(j.contains("seed"));
}

TEST_CASE("geoind accepts the ln form and respects the seed") {
  auto input = scratch("geo-in.csv");
  auto out1 = scratch("geo-out1.csv");
  auto out2 = scratch("geo-out2.csv");
  CHECK(run({"synth", "--users", "2", "--pois", "1", "--seed", "5", "-o",
             pathArg(input)}) == 0);

  CHECK(run({"anonymize", "--mechanism", "geoind", "--epsilon", "ln(4)/200",
             "--seed", "11", "-i", pathArg(input), "-o", pathArg(out1)}) == 0);
  CHECK(run({"anonymize", "--mechanism", "geoind", "--epsilon", "ln(4)/200",
             "--seed", "11", "-i", pathArg(input), "-o", pathArg(out2)}) == 0);
  CHECK(testutil::slurp(out1) == testutil::slurp(out2));

  // Same record count as the input.
  CHECK(mobanon::readCsv(out1).recordCount() ==
        mobanon::readCsv(input).recordCount());
}

TEST_CASE("attack and eval pipelines run end to end") {
  auto input = scratch("full-in.csv");
  auto anonymized = scratch("full-anon.csv");
  auto pois = scratch("full-pois.csv");
  auto report = scratch("full-report.json");

  CHECK(run({"synth", "--users", "4", "--pois", "2", "--seed", "13", "-o",
             pathArg(input)}) == 0);
  CHECK(run({"anonymize", "--mechanism", "promesse", "--epsilon", "200",
             "-i", pathArg(input), "-o", pathArg(anonymized)}) == 0);

  CHECK(run({"attack", "pois", "--diameter", "200", "--min-stay", "900",
             "--input", pathArg(input), "--output", pathArg(pois)}) == 0);
  CHECK(testutil::slurp(pois).rfind("user,lat,lon,start,end,count", 0) == 0);

  std::string before = testutil::slurp(input);
  CHECK(run({"eval", "fscore", "--original", pathArg(input), "--protected",
             pathArg(anonymized), "--report", pathArg(report)}) == 0);
  CHECK(run({"eval", "spatial-error", "--original", pathArg(input),
             "--protected", pathArg(anonymized)}) == 0);
  CHECK(run({"eval", "range-queries", "--original", pathArg(input),
             "--protected", pathArg(anonymized), "--queries", "50",
             "--seed", "3"}) == 0);
  CHECK(run({"eval", "compression", "--original", pathArg(input),
             "--protected", pathArg(anonymized)}) == 0);

  // Evaluation never mutates its inputs.
  CHECK(testutil::slurp(input) == before);

  std::ifstream reportIn(report);
  nlohmann::json j = nlohmann::json::parse(reportIn);
  CHECK(j["command"] == "eval fscore");
  CHECK(j["metrics"].contains("fscore"));
}

TEST_CASE("preprocess command applies the pipeline") {
  auto input = scratch("prep-in.csv");
  auto output = scratch("prep-out.csv");
  {
    std::ofstream out(input);
    out << "user,timestamp,lat,lon\n";
    out << "u,0,48.0000000,2.0000000\n";
    out << "u,3600,48.0100000,2.0000000\n";
    // 5 hour gap follows.
    out << "u,21601,48.0200000,2.0000000\n";
  }
  CHECK(run({"preprocess", "-i", pathArg(input), "-o", pathArg(output)}) == 0);
  CHECK(mobanon::readCsv(output).traceCount() == 2);
}

TEST_CASE("failures exit nonzero") {
  CHECK(run({"anonymize", "--mechanism", "promesse", "--epsilon", "200",
             "-i", "/does/not/exist.csv", "-o",
             pathArg(scratch("never.csv"))}) != 0);
  CHECK(run({"no-such-command"}) != 0);
  CHECK(run({"anonymize", "--bogus-flag"}) != 0);

  auto bad = scratch("bad.csv");
  {
    std::ofstream out(bad);
    out << "user,timestamp,lat,lon\nu,notatime,48.0,2.0\n";
  }
  CHECK(run({"attack", "pois", "-i", pathArg(bad), "-o",
             pathArg(scratch("bad-pois.csv"))}) != 0);
}

TEST_CASE("bench reports timing") {
  CHECK(run({"bench", "--mechanism", "promesse", "--records", "2000",
             "--epsilon", "150", "--report",
             pathArg(scratch("bench.json"))}) == 0);
  std::ifstream reportIn(scratch("bench.json"));
  nlohmann::json j = nlohmann::json::parse(reportIn);
  CHECK(j["command"] == "bench");
  CHECK(j["inputRecords"].get<std::size_t>() >= 2000);
  CHECK(j["durationMs"].get<double>() > 0.0);
}
