#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "optic/analytics.hpp"
#include "optic/engine.hpp"
#include "optic/errors.hpp"

namespace {

#ifndef OPTIC_DATA_DIR
#define OPTIC_DATA_DIR ""
#endif

// Bundled assets (fig2.*) resolve against the data directory when the path
// does not exist as given.
std::string resolveData(const std::string& path) {
  namespace fs = std::filesystem;
  if (path.empty() || fs::exists(path)) return path;
  fs::path bundled = fs::path(OPTIC_DATA_DIR) / path;
  if (fs::exists(bundled)) return bundled.string();
  return path;
}

void emitText(const std::string& text, const std::string& reportPath) {
  std::cout << text;
  if (!reportPath.empty()) {
    std::ofstream out(reportPath);
    if (!out) throw optic::Error("cannot write report file '" + reportPath + "'");
    out << text;
  }
}

struct SimulateArgs {
  std::string topo, rib, scenario, report;
  std::size_t fuzz = 0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool weightOnly = false;
  bool optSecondMr = false;
  bool optDropMed = false;
  bool medIgnore = false;
  bool retainUnused = false;
};

optic::EngineOptions makeOptions(const SimulateArgs& a) {
  optic::EngineOptions opts;
  opts.extract.optSecondMr = a.optSecondMr;
  opts.extract.optDropMed = a.optDropMed;
  opts.medMode = a.medIgnore ? optic::MedMode::Ignore : optic::MedMode::DefaultZero;
  opts.retainUnused = a.retainUnused;
  return opts;
}

int runSimulate(const SimulateArgs& a) {
  optic::EngineOptions opts = makeOptions(a);
  if (a.fuzz > 0) {
    optic::FuzzParams params;
    params.cases = a.fuzz;
    params.seed = a.seed;
    params.options = opts;
    params.jobs = a.jobs;
    params.weightOnly = a.weightOnly;
    optic::FuzzSummary summary = optic::runFuzz(params);
    std::ostringstream out;
    out << "fuzz cases=" << summary.cases << " checks=" << summary.totalChecks
        << " mismatches=" << summary.mismatches
        << " extracts-after-bootstrap=" << summary.extractCallsAfterBootstrap
        << "\n";
    for (const std::string& f : summary.failures) out << "failure " << f << "\n";
    out << "RESULT " << (summary.pass ? "PASS" : "FAIL") << "\n";
    emitText(out.str(), a.report);
    return summary.pass ? 0 : 1;
  }

  if (a.topo.empty() || a.rib.empty())
    throw optic::ParameterError("simulate needs --topo and --rib (or --fuzz)");
  optic::Topology topo = optic::parseTopologyFile(resolveData(a.topo));
  optic::Rib rib = optic::parseRibFile(resolveData(a.rib), topo);
  std::vector<optic::ScenarioEvent> events;
  if (!a.scenario.empty())
    events = optic::parseScenarioFile(resolveData(a.scenario), topo);
  optic::RunReport report =
      optic::runScenario(std::move(topo), rib, events, opts);
  std::ostringstream out;
  optic::writeReport(out, report);
  emitText(out.str(), a.report);
  return report.pass ? 0 : 1;
}

int runDumpState(const SimulateArgs& a) {
  if (a.topo.empty() || a.rib.empty())
    throw optic::ParameterError("dump-state needs --topo and --rib");
  optic::Topology topo = optic::parseTopologyFile(resolveData(a.topo));
  optic::Rib rib = optic::parseRibFile(resolveData(a.rib), topo);
  std::vector<optic::ScenarioEvent> events;
  if (!a.scenario.empty())
    events = optic::parseScenarioFile(resolveData(a.scenario), topo);
  optic::Engine engine(std::move(topo), makeOptions(a));
  engine.loadRib(rib);
  for (const optic::ScenarioEvent& ev : events) {
    switch (ev.kind) {
      case optic::ScenarioEvent::Kind::Igp:
        engine.igpChange(ev.igp);
        break;
      case optic::ScenarioEvent::Kind::BgpAdd:
        engine.bgpAdd(ev.route);
        break;
      case optic::ScenarioEvent::Kind::BgpWithdraw:
        engine.bgpWithdraw(ev.prefix, ev.gateway, ev.originAs);
        break;
    }
  }
  std::ostringstream out;
  engine.meta().dump(out, engine.topology());
  emitText(out.str(), a.report);
  return 0;
}

optic::Variant parseVariant(const std::string& name) {
  return name == "plain" ? optic::Variant::Plain : optic::Variant::Optimized;
}

std::vector<optic::GatewayClass> parseClasses(const std::string& text) {
  // "10:700000,20:100000" -> [(10 gateways, 700000 prefixes), ...]
  std::vector<optic::GatewayClass> classes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw optic::ParameterError("class '" + item + "' is not gateways:prefixes");
    try {
      classes.push_back({static_cast<std::uint32_t>(
                             std::stoul(item.substr(0, colon))),
                         std::stoull(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw optic::ParameterError("class '" + item + "' is not gateways:prefixes");
    }
  }
  if (classes.empty()) throw optic::ParameterError("empty class list");
  return classes;
}

struct PublishedRow {
  const char* preset;
  double distinct;
  std::uint32_t median;
  double lowerBound;
};

constexpr PublishedRow kPublishedTable[] = {
    {"stub", 3475, 4, 235},        {"tier4", 10589, 3, 645},
    {"tier3", 33610, 3, 6219},     {"large-tier3", 101997, 2, 73781},
    {"tier2", 215429, 2, 197194},  {"tier1", 228898, 2, 199633},
};

int runTable2() {
  std::cout << std::fixed << std::setprecision(1);
  std::cout << "preset distinct published err% lower published-lower err% "
               "median published-median\n";
  bool ok = true;
  for (const PublishedRow& row : kPublishedTable) {
    const optic::Preset& preset = optic::table2Preset(row.preset);
    optic::DistinctSets sets = optic::classExpectedDistinctSets(
        preset.classes, optic::Variant::Optimized);
    double lower = optic::lowerBoundDistinctSets(preset.classes);
    std::uint32_t median = optic::medianSetSize(sets);
    double errDistinct = 100.0 * std::abs(sets.total - row.distinct) / row.distinct;
    double errLower = 100.0 * std::abs(lower - row.lowerBound) / row.lowerBound;
    if (errDistinct > 1.0 || errLower > 1.0 || median != row.median) ok = false;
    std::cout << row.preset << " " << sets.total << " " << row.distinct << " "
              << std::setprecision(3) << errDistinct << std::setprecision(1)
              << " " << lower << " " << row.lowerBound << " "
              << std::setprecision(3) << errLower << std::setprecision(1)
              << " " << median << " " << row.median << "\n";
  }
  std::cout << "RESULT " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Protecting-gateway-set simulator and scaling model"};
  app.require_subcommand(1);

  SimulateArgs simArgs;
  auto addCommonFlags = [&](CLI::App* cmd) {
    cmd->add_option("--topo", simArgs.topo, "topology file");
    cmd->add_option("--rib", simArgs.rib, "routing table file");
    cmd->add_option("--scenario", simArgs.scenario, "event scenario file");
    cmd->add_option("--report", simArgs.report, "also write output to this file");
    cmd->add_flag("--opt-second-mr", simArgs.optSecondMr,
                  "reduce singleton-tier sets to two gateways");
    cmd->add_flag("--opt-drop-med", simArgs.optDropMed,
                  "truncate MED chains below the first reachable route");
    cmd->add_flag("--med-ignore", simArgs.medIgnore,
                  "never MED-compare routes lacking a MED value");
    cmd->add_flag("--retain-unused-opr", simArgs.retainUnused,
                  "keep unreferenced stored sets");
  };

  CLI::App* sim = app.add_subcommand("simulate", "run a scenario or fuzz cases");
  addCommonFlags(sim);
  sim->add_option("--fuzz", simArgs.fuzz, "number of random cases");
  sim->add_option("--seed", simArgs.seed, "random seed");
  sim->add_option("--jobs", simArgs.jobs, "parallel fuzz workers");
  sim->add_flag("--weight-only", simArgs.weightOnly,
                "fuzz with weight-change events only");

  CLI::App* dump = app.add_subcommand("dump-state", "print the stored set table");
  addCommonFlags(dump);

  CLI::App* model = app.add_subcommand("model", "closed-form scaling model");
  model->require_subcommand(1);

  std::uint32_t mB = 20, mPs = 5, mBp = 5;
  std::uint64_t mP = 10000;
  std::string variantName = "optimized";
  std::string classesText, presetName;
  std::size_t trials = 100;
  std::uint64_t mSeed = 1;
  double deltaFrom = 1, deltaTo = 15, deltaStep = 1;
  std::uint32_t gwFrom = 100, gwTo = 5000, gwStep = 100;
  double delta = 5.0;

  CLI::App* expected = model->add_subcommand("expected", "expected distinct sets");
  expected->add_option("--B", mB, "gateway pool size");
  expected->add_option("--P", mP, "prefix count");
  expected->add_option("--ps", mPs, "preference spread");
  expected->add_option("--b", mBp, "gateways per prefix");
  expected->add_option("--variant", variantName)
      ->check(CLI::IsMember({"plain", "optimized"}));

  CLI::App* table2 = model->add_subcommand("table2", "preset break-downs vs published values");

  CLI::App* lower = model->add_subcommand("lower-bound", "protection floor");
  lower->add_option("--preset", presetName, "named break-down");
  lower->add_option("--classes", classesText, "gateways:prefixes,... list");

  CLI::App* sweepD = model->add_subcommand("sweep-delta", "CSV over class ratios");
  sweepD->add_option("--B", mB, "total gateways")->default_val(500);
  sweepD->add_option("--P", mP, "total prefixes")->default_val(800000);
  sweepD->add_option("--from", deltaFrom, "first ratio");
  sweepD->add_option("--to", deltaTo, "last ratio");
  sweepD->add_option("--step", deltaStep, "ratio step");

  CLI::App* sweepG = model->add_subcommand("sweep-gateways", "CSV over pool sizes");
  sweepG->add_option("--delta", delta, "class ratio");
  sweepG->add_option("--P", mP, "total prefixes")->default_val(800000);
  sweepG->add_option("--from", gwFrom, "first gateway count");
  sweepG->add_option("--to", gwTo, "last gateway count");
  sweepG->add_option("--step", gwStep, "gateway count step");

  CLI::App* mc = model->add_subcommand("montecarlo", "simulate the generative model");
  mc->add_option("--B", mB, "gateway pool size");
  mc->add_option("--P", mP, "prefix count");
  mc->add_option("--ps", mPs, "preference spread");
  mc->add_option("--b", mBp, "gateways per prefix");
  mc->add_option("--trials", trials, "trial count");
  mc->add_option("--seed", mSeed, "random seed");
  mc->add_option("--variant", variantName)
      ->check(CLI::IsMember({"plain", "optimized"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sim) return runSimulate(simArgs);
    if (*dump) return runDumpState(simArgs);
    if (*expected) {
      optic::DistinctSets sets = optic::expectedDistinctSets(
          mB, mP, mPs, mBp, parseVariant(variantName));
      std::cout << std::fixed << std::setprecision(3);
      std::cout << "expected " << sets.total << "\n";
      for (const auto& [size, count] : sets.bySize)
        std::cout << "size " << size << " " << count << "\n";
      return 0;
    }
    if (*table2) return runTable2();
    if (*lower) {
      std::vector<optic::GatewayClass> classes;
      if (!presetName.empty())
        classes = optic::table2Preset(presetName).classes;
      else if (!classesText.empty())
        classes = parseClasses(classesText);
      else
        throw optic::ParameterError("lower-bound needs --preset or --classes");
      std::cout << std::fixed << std::setprecision(3)
                << "lower-bound " << optic::lowerBoundDistinctSets(classes)
                << "\n";
      return 0;
    }
    if (*sweepD || *sweepG) {
      std::vector<optic::SweepRow> rows;
      const char* xName;
      if (*sweepD) {
        std::vector<double> deltas;
        for (double d = deltaFrom; d <= deltaTo + 1e-9; d += deltaStep)
          deltas.push_back(d);
        rows = optic::sweepDelta(mB, mP, deltas);
        xName = "delta";
      } else {
        std::vector<std::uint32_t> counts;
        for (std::uint32_t g = gwFrom; g <= gwTo; g += gwStep)
          counts.push_back(g);
        rows = optic::sweepGateways(counts, mP, delta);
        xName = "gateways";
      }
      std::cout << xName << ",plain,optimized,lower_bound\n";
      std::cout << std::fixed << std::setprecision(3);
      for (const optic::SweepRow& row : rows)
        std::cout << row.x << "," << row.plain << "," << row.optimized << ","
                  << row.lowerBound << "\n";
      return 0;
    }
    if (*mc) {
      optic::MonteCarloResult result = optic::monteCarloDistinctSets(
          mB, mP, mPs, mBp, trials, mSeed, parseVariant(variantName));
      std::cout << std::fixed << std::setprecision(3);
      std::cout << "distinct mean=" << result.mean
                << " stderr=" << result.standardError
                << " trials=" << result.trials << "\n";
      for (const auto& [size, freq] : result.sizeFrequency)
        std::cout << "size " << size << " freq=" << std::setprecision(6) << freq
                  << std::setprecision(3) << "\n";
      return 0;
    }
  } catch (const optic::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
