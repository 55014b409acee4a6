// Acceptance gate: every release-blocking behavior in one binary, one
// PASS/FAIL line each. Exit status is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>

#include "optic/analytics.hpp"
#include "optic/engine.hpp"

using namespace optic;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::string dataPath(const std::string& file) {
  return std::string(OPTIC_DATA_DIR) + "/" + file;
}

// Optimized expected distinct sets, medians and pair lower bounds across the
// six bundled presets, within 1% of the published reference numbers.
void publishedModelTable() {
  struct Reference {
    const char* name;
    double optimized;
    std::uint32_t median;
    double lower;
  };
  const Reference refs[] = {
      {"stub", 3475, 4, 235},           {"tier4", 10589, 3, 645},
      {"tier3", 33610, 3, 6219},        {"large-tier3", 101997, 2, 73781},
      {"tier2", 215429, 2, 197194},     {"tier1", 228898, 2, 199633},
  };
  Clock::time_point start = Clock::now();
  bool ok = true;
  double worstGap = 0.0;
  std::string culprit;
  for (const Reference& ref : refs) {
    const Preset& preset = table2Preset(ref.name);
    DistinctSets sets =
        classExpectedDistinctSets(preset.classes, Variant::Optimized);
    double lower = lowerBoundDistinctSets(preset.classes);
    double gap = std::max(std::abs(sets.total / ref.optimized - 1.0),
                          std::abs(lower / ref.lower - 1.0));
    if (gap > worstGap) {
      worstGap = gap;
      culprit = ref.name;
    }
    if (gap > 0.01 || medianSetSize(sets) != ref.median) {
      ok = false;
      culprit = ref.name;
    }
  }
  double elapsed = msSince(start);
  ok = ok && elapsed < 1000.0;
  std::ostringstream detail;
  detail << "six presets, worst relative gap " << worstGap * 100.0 << "% ("
         << culprit << "), medians exact, " << elapsed << " ms";
  report("published-model-table", ok, detail.str());
}

// Closed-form tie probabilities and the size-3 expected distinct counts at
// the 100-gateway operating point.
void tieProbabilities() {
  double plain3 = setSizeProbability(100, 100, 3, Variant::Plain);
  double optim3 = setSizeProbability(100, 100, 3, Variant::Optimized);
  double plainCount =
      expectedDistinctSets(100, 800000, 100, 100, Variant::Plain).bySize.at(3);
  double optimCount =
      expectedDistinctSets(100, 800000, 100, 100, Variant::Optimized)
          .bySize.at(3);
  bool ok = std::abs(plain3 - 0.267) <= 0.001 &&
            std::abs(optim3 - 0.097) <= 0.001 &&
            std::abs(plainCount / 118618.0 - 1.0) <= 0.01 &&
            std::abs(optimCount / 61645.0 - 1.0) <= 0.01;
  std::ostringstream detail;
  detail << "p3 plain " << plain3 << ", optimized " << optim3
         << "; size-3 counts " << plainCount << " / " << optimCount;
  report("tie-probabilities", ok, detail.str());
}

// The bundled example: the pre-computed sets absorb the link failure with a
// pure min-search swap (no re-extraction) and stay oracle-exact throughout.
void exampleFailover() {
  Clock::time_point start = Clock::now();
  Topology topo = parseTopologyFile(dataPath("fig2.topo"));
  Rib rib = parseRibFile(dataPath("fig2.rib"), topo);
  std::vector<ScenarioEvent> events =
      parseScenarioFile(dataPath("fig2.scenario"), topo);
  RunReport rep = runScenario(topo, rib, events);
  double elapsed = msSince(start);

  auto outcome = [&](std::size_t rec, const std::string& prefix)
      -> const PrefixOutcome* {
    for (const PrefixOutcome& out : rep.records[rec].prefixes)
      if (out.prefix == prefix) return &out;
    return nullptr;
  };
  bool ok = rep.records.size() == 2;
  const PrefixOutcome* pre = ok ? outcome(0, "p") : nullptr;
  const PrefixOutcome* post = ok ? outcome(1, "p") : nullptr;
  ok = ok && pre && pre->dataplane == "n1" && pre->alpha == Dist{4};
  ok = ok && post && post->dataplane == "n3" && post->alpha == Dist{6};
  ok = ok && rep.records[1].setsRecomputed == 0;
  ok = ok && rep.totalMismatches == 0 && rep.pass;
  ok = ok && elapsed < 100.0;
  std::ostringstream detail;
  detail << "p "
         << (pre && pre->dataplane ? *pre->dataplane : std::string("?"))
         << " -> "
         << (post && post->dataplane ? *post->dataplane : std::string("?"))
         << ", recomputed " << (rep.records.size() > 1
                                    ? rep.records[1].setsRecomputed
                                    : 999)
         << ", mismatches " << rep.totalMismatches << ", " << elapsed
         << " ms";
  report("example-failover", ok, detail.str());
}

// Monte-Carlo simulation of the generative model agrees with the closed
// forms: mean within two standard errors, every size share within three
// binomial sigmas.
void simulationAgreement() {
  Clock::time_point start = Clock::now();
  const std::uint32_t B = 20, ps = 5, b = 5;
  const std::uint64_t P = 10000;
  const std::size_t trials = 200;
  bool ok = true;
  std::ostringstream detail;
  for (Variant v : {Variant::Plain, Variant::Optimized}) {
    MonteCarloResult mc = monteCarloDistinctSets(B, P, ps, b, trials, 1, v);
    double expected = expectedDistinctSets(B, P, ps, b, v).total;
    double meanGap = std::abs(mc.mean - expected);
    ok = ok && meanGap <= 2.0 * mc.standardError;
    for (std::uint32_t n = 2; n <= b; ++n) {
      double p = setSizeProbability(b, ps, n, v);
      auto it = mc.sizeFrequency.find(n);
      double share = it == mc.sizeFrequency.end() ? 0.0 : it->second;
      double sigma =
          std::sqrt(p * (1.0 - p) / (static_cast<double>(trials) *
                                     static_cast<double>(P)));
      ok = ok && std::abs(share - p) <= 3.0 * sigma;
    }
    detail << (v == Variant::Plain ? "plain " : "optimized ") << mc.mean
           << " vs " << expected << " (se " << mc.standardError << "); ";
  }
  double elapsed = msSince(start);
  ok = ok && elapsed < 30000.0;
  detail << elapsed << " ms";
  report("simulation-agreement", ok, detail.str());
}

unsigned acceptanceJobs() {
  unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(hw, 1u, 8u);
}

// Randomized end-to-end runs: every data-plane decision must match the full
// reference re-computation, with and without the set reductions.
void randomizedOracle() {
  Clock::time_point start = Clock::now();
  FuzzParams params;
  params.cases = 1000;
  params.seed = 1;
  params.jobs = acceptanceJobs();
  FuzzSummary plain = runFuzz(params);

  params.seed = 2;
  params.options.extract.optSecondMr = true;
  params.options.extract.optDropMed = true;
  FuzzSummary reduced = runFuzz(params);

  double elapsed = msSince(start);
  bool ok = plain.pass && reduced.pass && plain.mismatches == 0 &&
            reduced.mismatches == 0 && elapsed < 120000.0;
  std::ostringstream detail;
  detail << plain.cases + reduced.cases << " cases, "
         << plain.totalChecks + reduced.totalChecks << " checks, "
         << plain.mismatches + reduced.mismatches << " mismatches, "
         << elapsed << " ms";
  if (!plain.failures.empty()) detail << "; first: " << plain.failures[0];
  if (!reduced.failures.empty()) detail << "; first: " << reduced.failures[0];
  report("randomized-oracle", ok, detail.str());
}

// Finite weight churn keeps traffic optimal without a single re-extraction.
void weightOnlyStability() {
  Clock::time_point start = Clock::now();
  FuzzParams params;
  params.cases = 1000;
  params.seed = 3;
  params.jobs = acceptanceJobs();
  params.weightOnly = true;
  FuzzSummary summary = runFuzz(params);
  double elapsed = msSince(start);
  bool ok = summary.pass && summary.mismatches == 0 &&
            summary.extractCallsAfterBootstrap == 0 && elapsed < 120000.0;
  std::ostringstream detail;
  detail << summary.cases << " cases, " << summary.totalChecks << " checks, "
         << summary.extractCallsAfterBootstrap
         << " post-bootstrap extractions, " << elapsed << " ms";
  report("weight-only-stability", ok, detail.str());
}

// The size distribution sums to one everywhere and the companion reduction
// never increases the expected distinct count.
void distributionDominance() {
  double worst = 0.0;
  bool dominated = true;
  for (Variant v : {Variant::Plain, Variant::Optimized})
    for (std::uint32_t b = 2; b <= 10; ++b)
      for (std::uint32_t ps = 1; ps <= 20; ++ps) {
        double sum = 0.0;
        for (std::uint32_t n = 2; n <= b; ++n)
          sum += setSizeProbability(b, ps, n, v);
        worst = std::max(worst, std::abs(sum - 1.0));
      }
  for (std::uint32_t b = 2; b <= 10; ++b)
    for (std::uint32_t ps = 1; ps <= 20; ++ps) {
      double plain =
          expectedDistinctSets(2 * b, 100000, ps, b, Variant::Plain).total;
      double optim =
          expectedDistinctSets(2 * b, 100000, ps, b, Variant::Optimized).total;
      if (optim > plain * (1.0 + 1e-9)) dominated = false;
    }
  bool ok = worst < 1e-12 && dominated;
  std::ostringstream detail;
  detail << "worst |sum-1| " << worst << ", reduction dominated: "
         << (dominated ? "yes" : "no");
  report("distribution-dominance", ok, detail.str());
}

}  // namespace

int main() {
  publishedModelTable();
  tieProbabilities();
  exampleFailover();
  simulationAgreement();
  randomizedOracle();
  weightOnlyStability();
  distributionDominance();
  std::printf("%d of 7 criteria failed\n", failures);
  return failures;
}
