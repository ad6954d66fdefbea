#include "cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "mobanon/attack.hpp"
#include "mobanon/csv.hpp"
#include "mobanon/geoind.hpp"
#include "mobanon/metrics.hpp"
#include "mobanon/preprocess.hpp"
#include "mobanon/promesse.hpp"
#include "mobanon/synthetic.hpp"

namespace mobanon::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsedMs(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since)
      .count();
}

/// Run report; everything needed to reproduce the run goes into `params`.
struct Report {
  std::string command;
  json params = json::object();
  std::uint64_t seed = 0;
  std::size_t inputRecords = 0;
  std::size_t outputRecords = 0;
  double durationMs = 0.0;
  json metrics = json::object();
};

void emitReport(const Report& report, const std::string& reportPath) {
  json j{{"command", report.command}, {"params", report.params},
         {"seed", report.seed},       {"inputRecords", report.inputRecords},
         {"outputRecords", report.outputRecords},
         {"durationMs", report.durationMs},
         {"metrics", report.metrics}};
  std::cout << j.dump(2) << "\n";
  if (!reportPath.empty()) {
    std::ofstream out(reportPath, std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open report file '" + reportPath + "'");
    }
    out << j.dump(2) << "\n";
  }
}

struct CommonPaths {
  std::string input;
  std::string output;
  std::string report;
  unsigned threads = 0;
};

void addSynth(CLI::App& app) {
  auto spec = std::make_shared<SyntheticSpec>();
  auto output = std::make_shared<std::string>();
  auto groundTruth = std::make_shared<std::string>();
  auto report = std::make_shared<std::string>();
  auto originLat = std::make_shared<double>(48.0);
  auto originLon = std::make_shared<double>(2.0);

  CLI::App* cmd = app.add_subcommand(
      "synth", "Generate a synthetic dataset with planted stays");
  cmd->add_option("--users", spec->userCount, "Number of users")
      ->default_val(100);
  cmd->add_option("--pois", spec->poisPerTrace, "Planted stays per trace")
      ->default_val(3);
  cmd->add_option("--poi-diameter", spec->poiDiameterMeters,
                  "Stay diameter, meters")
      ->default_val(100.0);
  cmd->add_option("--dwell", spec->poiDwellSeconds, "Stay duration, seconds")
      ->default_val(1800);
  cmd->add_option("--speed", spec->travelSpeedMps, "Travel speed, m/s")
      ->default_val(15.0);
  cmd->add_option("--interval", spec->samplingIntervalSeconds,
                  "Sampling interval, seconds")
      ->default_val(2);
  cmd->add_option("--seed", spec->seed, "RNG seed")->default_val(0);
  cmd->add_option("--origin-lat", *originLat, "Area origin latitude")
      ->default_val(48.0);
  cmd->add_option("--origin-lon", *originLon, "Area origin longitude")
      ->default_val(2.0);
  cmd->add_option("--extent", spec->extentMeters, "Area side length, meters")
      ->default_val(10000.0);
  cmd->add_option("-o,--output", *output, "Output dataset CSV")->required();
  cmd->add_option("--ground-truth", *groundTruth,
                  "Optional CSV of planted stays");
  cmd->add_option("--report", *report, "Write the JSON run report here too");

  cmd->callback([=] {
    spec->origin = Location{*originLat, *originLon};
    auto start = Clock::now();
    SyntheticData data = generateSynthetic(*spec);
    writeCsv(data.dataset, std::filesystem::path(*output));
    if (!groundTruth->empty()) {
      writePoiCsv(data.groundTruth, std::filesystem::path(*groundTruth));
    }
    Report r;
    r.command = "synth";
    r.seed = spec->seed;
    r.params = {{"users", spec->userCount},
                {"pois", spec->poisPerTrace},
                {"poiDiameter", spec->poiDiameterMeters},
                {"dwell", spec->poiDwellSeconds},
                {"speed", spec->travelSpeedMps},
                {"interval", spec->samplingIntervalSeconds},
                {"seed", spec->seed},
                {"originLat", *originLat},
                {"originLon", *originLon},
                {"extent", spec->extentMeters},
                {"output", *output},
                {"groundTruth", *groundTruth}};
    r.outputRecords = data.dataset.recordCount();
    r.durationMs = elapsedMs(start);
    emitReport(r, *report);
  });
}

void addPreprocess(CLI::App& app) {
  auto paths = std::make_shared<CommonPaths>();
  auto options = std::make_shared<PreprocessOptions>();

  CLI::App* cmd = app.add_subcommand(
      "preprocess",
      "Drop empty days, truncate, split on gaps, align start days");
  cmd->add_option("-i,--input", paths->input, "Input dataset CSV")->required();
  cmd->add_option("-o,--output", paths->output, "Output dataset CSV")
      ->required();
  cmd->add_option("--max-gap", options->maxGapSeconds,
                  "Split threshold, seconds")
      ->default_val(4 * 3600);
  cmd->add_option("--days", options->days, "Days kept per trace")
      ->default_val(20);
  cmd->add_option("--report", paths->report,
                  "Write the JSON run report here too");

  cmd->callback([=] {
    Dataset input = readCsv(std::filesystem::path(paths->input));
    auto start = Clock::now();
    Dataset output = preprocess(input, *options);
    writeCsv(output, std::filesystem::path(paths->output));
    Report r;
    r.command = "preprocess";
    r.params = {{"input", paths->input},
                {"output", paths->output},
                {"maxGap", options->maxGapSeconds},
                {"days", options->days}};
    r.inputRecords = input.recordCount();
    r.outputRecords = output.recordCount();
    r.durationMs = elapsedMs(start);
    emitReport(r, paths->report);
  });
}

void addAnonymize(CLI::App& app) {
  auto paths = std::make_shared<CommonPaths>();
  auto mechanism = std::make_shared<std::string>();
  auto epsilonText = std::make_shared<std::string>();
  auto seed = std::make_shared<std::uint64_t>(0);

  CLI::App* cmd =
      app.add_subcommand("anonymize", "Apply a protection mechanism");
  cmd->add_option("--mechanism", *mechanism, "promesse or geoind")
      ->required()
      ->check(CLI::IsMember({"promesse", "geoind"}));
  cmd->add_option("--epsilon", *epsilonText,
                  "Mechanism parameter: meters for promesse, 1/meters or "
                  "ln(K)/L for geoind")
      ->required();
  cmd->add_option("--seed", *seed, "RNG seed (geoind only)")->default_val(0);
  cmd->add_option("-i,--input", paths->input, "Input dataset CSV")->required();
  cmd->add_option("-o,--output", paths->output, "Output dataset CSV")
      ->required();
  cmd->add_option("--threads", paths->threads,
                  "Worker threads, 0 = all cores")
      ->default_val(0);
  cmd->add_option("--report", paths->report,
                  "Write the JSON run report here too");

  cmd->callback([=] {
    Dataset input = readCsv(std::filesystem::path(paths->input));

    // Timed section covers generating and writing the protected dataset,
    // not parsing the input.
    auto start = Clock::now();
    Dataset output;
    if (*mechanism == "promesse") {
      PromesseConfig cfg{parseEpsilon(*epsilonText)};
      output = promesse(input, cfg, paths->threads);
    } else {
      GeoIndConfig cfg{parseEpsilon(*epsilonText), *seed};
      output = geoind(input, cfg, paths->threads);
    }
    writeCsv(output, std::filesystem::path(paths->output));
    double durationMs = elapsedMs(start);

    Report r;
    r.command = "anonymize";
    r.seed = *seed;
    r.params = {{"mechanism", *mechanism}, {"epsilon", *epsilonText},
                {"seed", *seed},           {"input", paths->input},
                {"output", paths->output}, {"threads", paths->threads}};
    r.inputRecords = input.recordCount();
    r.outputRecords = output.recordCount();
    r.durationMs = durationMs;
    emitReport(r, paths->report);
  });
}

void addAttack(CLI::App& app) {
  auto paths = std::make_shared<CommonPaths>();
  auto cfg = std::make_shared<AttackConfig>();

  CLI::App* attack =
      app.add_subcommand("attack", "Run a privacy attack on a dataset");
  attack->require_subcommand(1);
  CLI::App* cmd = attack->add_subcommand(
      "pois", "Extract stay points (the POI discovery attack)");
  cmd->add_option("--diameter", cfg->maxDiameterMeters,
                  "Max cluster diameter, meters")
      ->default_val(200.0);
  cmd->add_option("--min-stay", cfg->minStaySeconds, "Min dwell, seconds")
      ->default_val(900);
  cmd->add_option("-i,--input", paths->input, "Input dataset CSV")->required();
  cmd->add_option("-o,--output", paths->output, "Output POI CSV")->required();
  cmd->add_option("--threads", paths->threads,
                  "Worker threads, 0 = all cores")
      ->default_val(0);
  cmd->add_option("--report", paths->report,
                  "Write the JSON run report here too");

  cmd->callback([=] {
    Dataset input = readCsv(std::filesystem::path(paths->input));
    auto start = Clock::now();
    auto pois = extractAllPois(input, *cfg, paths->threads);
    writePoiCsv(pois, std::filesystem::path(paths->output));
    std::size_t poiCount = 0;
    for (const auto& [user, list] : pois) poiCount += list.size();

    Report r;
    r.command = "attack pois";
    r.params = {{"diameter", cfg->maxDiameterMeters},
                {"minStay", cfg->minStaySeconds},
                {"input", paths->input},
                {"output", paths->output},
                {"threads", paths->threads}};
    r.inputRecords = input.recordCount();
    r.outputRecords = poiCount;
    r.durationMs = elapsedMs(start);
    r.metrics = {{"pois", poiCount}};
    emitReport(r, paths->report);
  });
}

void addEval(CLI::App& app) {
  CLI::App* eval =
      app.add_subcommand("eval", "Utility and privacy metrics");
  eval->require_subcommand(1);

  struct EvalState {
    std::string original;
    std::string protectedPath;
    std::string report;
    unsigned threads = 0;
    AttackConfig attack;
    double matchThreshold = -1.0;
    QueryGenConfig queries;
  };
  auto st = std::make_shared<EvalState>();

  auto addCommon = [&](CLI::App* cmd) {
    cmd->add_option("--original", st->original, "Original dataset CSV")
        ->required();
    cmd->add_option("--protected", st->protectedPath, "Protected dataset CSV")
        ->required();
    cmd->add_option("--threads", st->threads, "Worker threads, 0 = all cores")
        ->default_val(0);
    cmd->add_option("--report", st->report,
                    "Write the JSON run report here too");
  };

  auto runEval = [st](const std::string& name, auto&& compute) {
    Dataset original = readCsv(std::filesystem::path(st->original));
    Dataset protectedDs = readCsv(std::filesystem::path(st->protectedPath));
    auto start = Clock::now();
    json metrics = compute(original, protectedDs);
    Report r;
    r.command = "eval " + name;
    r.seed = st->queries.seed;
    r.params = {{"original", st->original},
                {"protected", st->protectedPath},
                {"threads", st->threads}};
    r.inputRecords = original.recordCount();
    r.outputRecords = protectedDs.recordCount();
    r.durationMs = elapsedMs(start);
    r.metrics = metrics;
    return std::pair{r, st->report};
  };

  CLI::App* fscoreCmd = eval->add_subcommand(
      "fscore", "Mean per-trace F-score of POI retrieval");
  addCommon(fscoreCmd);
  fscoreCmd->add_option("--diameter", st->attack.maxDiameterMeters,
                        "Attack max diameter, meters")
      ->default_val(200.0);
  fscoreCmd->add_option("--min-stay", st->attack.minStaySeconds,
                        "Attack min dwell, seconds")
      ->default_val(900);
  fscoreCmd->add_option("--match-threshold", st->matchThreshold,
                        "POI match threshold, meters (default diameter/2)");
  fscoreCmd->callback([st, runEval] {
    auto [r, reportPath] = runEval("fscore", [&](const Dataset& orig,
                                                 const Dataset& prot) {
      double value = datasetFscore(orig, prot, st->attack, st->matchThreshold,
                                   st->threads);
      return json{{"fscore", value},
                  {"diameter", st->attack.maxDiameterMeters},
                  {"minStay", st->attack.minStaySeconds},
                  {"matchThreshold", st->matchThreshold < 0
                                         ? st->attack.maxDiameterMeters / 2.0
                                         : st->matchThreshold}};
    });
    emitReport(r, reportPath);
  });

  CLI::App* spatialCmd = eval->add_subcommand(
      "spatial-error", "Mean distance to the original trace polyline");
  addCommon(spatialCmd);
  spatialCmd->callback([st, runEval] {
    auto [r, reportPath] =
        runEval("spatial-error", [&](const Dataset& orig, const Dataset& prot) {
          return json{{"spatialErrorMeters",
                       spatialError(orig, prot, st->threads)}};
        });
    emitReport(r, reportPath);
  });

  CLI::App* rangeCmd = eval->add_subcommand(
      "range-queries", "Mean relative error of unique-user counts");
  addCommon(rangeCmd);
  rangeCmd->add_option("--queries", st->queries.count, "Number of queries")
      ->default_val(1000);
  rangeCmd->add_option("--seed", st->queries.seed, "Query generator seed")
      ->default_val(0);
  rangeCmd->add_option("--min-duration", st->queries.minDurationSeconds,
                       "Min window, seconds")
      ->default_val(2 * 3600);
  rangeCmd->add_option("--max-duration", st->queries.maxDurationSeconds,
                       "Max window, seconds")
      ->default_val(8 * 3600);
  rangeCmd->add_option("--min-half-diagonal",
                       st->queries.minHalfDiagonalMeters,
                       "Min area half-diagonal, meters")
      ->default_val(500.0);
  rangeCmd->add_option("--max-half-diagonal",
                       st->queries.maxHalfDiagonalMeters,
                       "Max area half-diagonal, meters")
      ->default_val(5000.0);
  rangeCmd->callback([st, runEval] {
    auto [r, reportPath] =
        runEval("range-queries", [&](const Dataset& orig, const Dataset& prot) {
          auto queries = generateQueries(orig, st->queries);
          double value = queryDistortion(orig, prot, queries, st->threads);
          return json{{"queryDistortion", value},
                      {"queries", st->queries.count},
                      {"seed", st->queries.seed}};
        });
    emitReport(r, reportPath);
  });

  CLI::App* compressionCmd = eval->add_subcommand(
      "compression", "Protected-to-original record count ratio");
  addCommon(compressionCmd);
  compressionCmd->callback([st, runEval] {
    auto [r, reportPath] =
        runEval("compression", [&](const Dataset& orig, const Dataset& prot) {
          return json{{"compression", compression(orig, prot)}};
        });
    emitReport(r, reportPath);
  });
}

void addBench(CLI::App& app) {
  auto mechanism = std::make_shared<std::string>("promesse");
  auto records = std::make_shared<std::size_t>(1000000);
  auto epsilonText = std::make_shared<std::string>("200");
  auto seed = std::make_shared<std::uint64_t>(0);
  auto threads = std::make_shared<unsigned>(0);
  auto report = std::make_shared<std::string>();

  CLI::App* cmd = app.add_subcommand(
      "bench", "Time a mechanism on an in-memory synthetic dataset");
  cmd->add_option("--mechanism", *mechanism, "promesse or geoind")
      ->check(CLI::IsMember({"promesse", "geoind"}))
      ->default_val("promesse");
  cmd->add_option("--records", *records, "Approximate dataset size")
      ->default_val(1000000);
  cmd->add_option("--epsilon", *epsilonText, "Mechanism parameter")
      ->default_val("200");
  cmd->add_option("--seed", *seed, "RNG seed")->default_val(0);
  cmd->add_option("--threads", *threads, "Worker threads, 0 = all cores")
      ->default_val(0);
  cmd->add_option("--report", *report, "Write the JSON run report here too");

  cmd->callback([=] {
    SyntheticSpec spec;
    spec.seed = *seed;
    spec.poisPerTrace = 2;
    spec.poiDwellSeconds = 900;
    spec.samplingIntervalSeconds = 5;

    // Trace sizes vary per user; grow the user count until the target holds.
    spec.userCount = 1;
    std::size_t perUser =
        std::max<std::size_t>(1, generateSynthetic(spec).dataset.recordCount());
    spec.userCount = static_cast<std::uint32_t>(
        std::max<std::size_t>(1, (*records + perUser - 1) / perUser));
    Dataset input = generateSynthetic(spec).dataset;
    while (input.recordCount() < *records) {
      std::size_t have = std::max<std::size_t>(1, input.recordCount());
      double scale = static_cast<double>(*records) / static_cast<double>(have);
      spec.userCount = static_cast<std::uint32_t>(
          static_cast<double>(spec.userCount) * scale) + 1;
      input = generateSynthetic(spec).dataset;
    }

    std::filesystem::path outPath =
        std::filesystem::temp_directory_path() /
        ("mobanon-bench-" + std::to_string(*seed) + ".csv");

    auto start = Clock::now();
    Dataset output;
    if (*mechanism == "promesse") {
      output = promesse(input, PromesseConfig{parseEpsilon(*epsilonText)},
                        *threads);
    } else {
      output = geoind(input, GeoIndConfig{parseEpsilon(*epsilonText), *seed},
                      *threads);
    }
    writeCsv(output, outPath);
    double durationMs = elapsedMs(start);
    std::filesystem::remove(outPath);

    Report r;
    r.command = "bench";
    r.seed = *seed;
    r.params = {{"mechanism", *mechanism}, {"records", *records},
                {"epsilon", *epsilonText}, {"seed", *seed},
                {"threads", *threads},     {"users", spec.userCount}};
    r.inputRecords = input.recordCount();
    r.outputRecords = output.recordCount();
    r.durationMs = durationMs;
    r.metrics = {{"recordsPerSecond",
                  durationMs > 0.0
                      ? static_cast<double>(input.recordCount()) /
                            (durationMs / 1000.0)
                      : 0.0}};
    emitReport(r, *report);
  });
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Mobility dataset anonymization toolkit", "mobanon"};
  app.require_subcommand(1);
  addSynth(app);
  addPreprocess(app);
  addAnonymize(app);
  addAttack(app);
  addEval(app);
  addBench(app);

  // CLI11 wants argv-style reversed arguments.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace mobanon::cli
