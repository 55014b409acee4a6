#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "optic/analytics.hpp"
#include "optic/engine.hpp"
#include "optic/errors.hpp"

namespace py = pybind11;

namespace {

optic::Variant variantFromName(const std::string& name) {
  if (name == "plain") return optic::Variant::Plain;
  if (name == "optimized") return optic::Variant::Optimized;
  throw optic::ParameterError("unknown variant '" + name + "'");
}

optic::EngineOptions makeOptions(bool optSecondMr, bool optDropMed,
                                 bool medIgnore, bool retainUnused) {
  optic::EngineOptions opts;
  opts.extract.optSecondMr = optSecondMr;
  opts.extract.optDropMed = optDropMed;
  opts.medMode =
      medIgnore ? optic::MedMode::Ignore : optic::MedMode::DefaultZero;
  opts.retainUnused = retainUnused;
  return opts;
}

std::vector<optic::GatewayClass> makeClasses(
    const std::vector<std::pair<std::uint32_t, std::uint64_t>>& classes) {
  std::vector<optic::GatewayClass> out;
  for (const auto& [gws, prefixes] : classes) out.push_back({gws, prefixes});
  return out;
}

py::dict distinctToDict(const optic::DistinctSets& sets) {
  py::dict out;
  out["total"] = sets.total;
  out["by_size"] = sets.bySize;
  out["median"] = optic::medianSetSize(sets);
  return out;
}

py::dict reportToDict(const optic::RunReport& report) {
  py::list records;
  for (const optic::EventRecord& rec : report.records) {
    py::list prefixes;
    for (const optic::PrefixOutcome& p : rec.prefixes) {
      py::dict d;
      d["prefix"] = p.prefix;
      d["dataplane"] = p.dataplane ? py::cast(*p.dataplane) : py::none();
      d["alpha"] = p.alpha ? py::cast(*p.alpha) : py::none();
      d["oracle"] = p.oracle ? py::cast(*p.oracle) : py::none();
      d["mismatch"] = p.mismatch;
      prefixes.append(d);
    }
    py::dict d;
    d["event"] = rec.description;
    d["prefixes"] = prefixes;
    d["sets_walked"] = rec.setsWalked;
    d["sets_recomputed"] = rec.setsRecomputed;
    d["meta_size"] = rec.metaSize;
    d["size_histogram"] = rec.sizeHistogram;
    d["mismatches"] = rec.mismatches;
    records.append(d);
  }
  py::dict out;
  out["records"] = records;
  out["total_checks"] = report.totalChecks;
  out["total_mismatches"] = report.totalMismatches;
  out["extracts_after_bootstrap"] = report.extractCallsAfterBootstrap;
  out["pass"] = report.pass;
  return out;
}

}  // namespace

PYBIND11_MODULE(_optic, m) {
  m.doc() = "Protecting-gateway-set routing engine and scaling model";

  py::register_exception<optic::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<optic::ParameterError>(m, "ParameterError",
                                                PyExc_ValueError);

  m.def(
      "spf_distances",
      [](const std::string& topologyPath) {
        optic::Topology topo = optic::parseTopologyFile(topologyPath);
        optic::DistanceMap dist = optic::spf(topo);
        py::dict out;
        for (optic::NodeId id = 0; id < topo.nodeCount(); ++id)
          out[py::cast(topo.nodeName(id))] =
              dist.reachable(id) ? py::cast(dist.at(id)) : py::none();
        return out;
      },
      py::arg("topology_path"),
      "Shortest-path distances from the vantage, None when unreachable.");

  m.def(
      "two_disjoint_paths",
      [](const std::string& topologyPath,
         const std::vector<std::string>& gateways) {
        optic::Topology topo = optic::parseTopologyFile(topologyPath);
        std::vector<optic::NodeId> ids;
        for (const std::string& g : gateways) ids.push_back(topo.nodeId(g));
        return optic::twoDisjointPaths(topo, ids);
      },
      py::arg("topology_path"), py::arg("gateways"),
      "True when the gateway set admits two node-disjoint paths.");

  m.def(
      "set_size_probability",
      [](std::uint32_t perPrefix, std::uint32_t spread, std::uint32_t n,
         const std::string& variant) {
        return optic::setSizeProbability(perPrefix, spread, n,
                                         variantFromName(variant));
      },
      py::arg("per_prefix"), py::arg("spread"), py::arg("n"),
      py::arg("variant") = "optimized");

  m.def(
      "expected_distinct_sets",
      [](std::uint32_t gateways, std::uint64_t prefixes, std::uint32_t spread,
         std::uint32_t perPrefix, const std::string& variant) {
        return distinctToDict(optic::expectedDistinctSets(
            gateways, prefixes, spread, perPrefix, variantFromName(variant)));
      },
      py::arg("gateways"), py::arg("prefixes"), py::arg("spread") = 5,
      py::arg("per_prefix") = 5, py::arg("variant") = "optimized");

  m.def(
      "class_expected_distinct_sets",
      [](const std::vector<std::pair<std::uint32_t, std::uint64_t>>& classes,
         const std::string& variant) {
        return distinctToDict(optic::classExpectedDistinctSets(
            makeClasses(classes), variantFromName(variant)));
      },
      py::arg("classes"), py::arg("variant") = "optimized");

  m.def(
      "lower_bound_distinct_sets",
      [](const std::vector<std::pair<std::uint32_t, std::uint64_t>>& classes) {
        return optic::lowerBoundDistinctSets(makeClasses(classes));
      },
      py::arg("classes"));

  m.def("table2_preset_names", []() {
    std::vector<std::string> names;
    for (const optic::Preset& p : optic::table2Presets()) names.push_back(p.name);
    return names;
  });

  m.def(
      "table2_preset",
      [](const std::string& name) {
        std::vector<std::pair<std::uint32_t, std::uint64_t>> out;
        for (const optic::GatewayClass& c : optic::table2Preset(name).classes)
          out.emplace_back(c.gateways, c.prefixes);
        return out;
      },
      py::arg("name"));

  m.def(
      "run_scenario",
      [](const std::string& topologyPath, const std::string& ribPath,
         const std::string& scenarioPath, bool optSecondMr, bool optDropMed,
         bool medIgnore, bool retainUnused) {
        optic::Topology topo = optic::parseTopologyFile(topologyPath);
        optic::Rib rib = optic::parseRibFile(ribPath, topo);
        std::vector<optic::ScenarioEvent> events;
        if (!scenarioPath.empty())
          events = optic::parseScenarioFile(scenarioPath, topo);
        return reportToDict(optic::runScenario(
            std::move(topo), rib, events,
            makeOptions(optSecondMr, optDropMed, medIgnore, retainUnused)));
      },
      py::arg("topology_path"), py::arg("rib_path"),
      py::arg("scenario_path") = "", py::arg("opt_second_mr") = false,
      py::arg("opt_drop_med") = false, py::arg("med_ignore") = false,
      py::arg("retain_unused_opr") = false);

  m.def(
      "monte_carlo_distinct_sets",
      [](std::uint32_t gateways, std::uint64_t prefixes, std::uint32_t spread,
         std::uint32_t perPrefix, std::size_t trials, std::uint64_t seed,
         const std::string& variant) {
        optic::MonteCarloResult r = optic::monteCarloDistinctSets(
            gateways, prefixes, spread, perPrefix, trials, seed,
            variantFromName(variant));
        py::dict out;
        out["mean"] = r.mean;
        out["stddev"] = r.stddev;
        out["standard_error"] = r.standardError;
        out["trials"] = r.trials;
        out["size_frequency"] = r.sizeFrequency;
        return out;
      },
      py::arg("gateways"), py::arg("prefixes"), py::arg("spread") = 5,
      py::arg("per_prefix") = 5, py::arg("trials") = 100, py::arg("seed") = 1,
      py::arg("variant") = "optimized");

  m.def(
      "run_fuzz",
      [](std::size_t cases, std::uint64_t seed, unsigned jobs, bool weightOnly,
         bool optSecondMr, bool optDropMed, bool medIgnore,
         bool retainUnused) {
        optic::FuzzParams params;
        params.cases = cases;
        params.seed = seed;
        params.jobs = jobs;
        params.weightOnly = weightOnly;
        params.options =
            makeOptions(optSecondMr, optDropMed, medIgnore, retainUnused);
        optic::FuzzSummary s = optic::runFuzz(params);
        py::dict out;
        out["cases"] = s.cases;
        out["total_checks"] = s.totalChecks;
        out["mismatches"] = s.mismatches;
        out["extracts_after_bootstrap"] = s.extractCallsAfterBootstrap;
        out["failures"] = s.failures;
        out["pass"] = s.pass;
        return out;
      },
      py::arg("cases"), py::arg("seed") = 1, py::arg("jobs") = 1,
      py::arg("weight_only") = false, py::arg("opt_second_mr") = false,
      py::arg("opt_drop_med") = false, py::arg("med_ignore") = false,
      py::arg("retain_unused_opr") = false);
}
