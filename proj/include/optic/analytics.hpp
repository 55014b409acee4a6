#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace optic {

// Plain keeps the whole second-best tier when the best tier is a singleton;
// Optimized keeps a single companion gateway instead.
enum class Variant { Plain, Optimized };

// Binomial coefficient in floating point; 0 when k > n.
double binomial(std::uint32_t n, std::uint32_t k);

// Probability that a prefix's protecting set has size n when it is advertised
// by `perPrefix` gateways whose preference ranks are i.i.d. uniform on
// {1..spread}. Requires 2 <= n <= perPrefix and spread >= 1.
double setSizeProbability(std::uint32_t perPrefix, std::uint32_t spread,
                          std::uint32_t n, Variant variant);

// Probability that at least one of `prefixes` independent draws produces one
// specific n-subset of the `gateways` pool as its protecting set.
double subsetOccupiedProbability(std::uint32_t gateways, std::uint64_t prefixes,
                                 std::uint32_t spread, std::uint32_t perPrefix,
                                 std::uint32_t n, Variant variant);

struct DistinctSets {
  double total = 0.0;
  std::map<std::uint32_t, double> bySize;  // size -> expected distinct count
};

// Expected number of distinct protecting sets across all prefixes.
DistinctSets expectedDistinctSets(std::uint32_t gateways,
                                  std::uint64_t prefixes, std::uint32_t spread,
                                  std::uint32_t perPrefix, Variant variant);

// One local-pref class: gateways sharing a preference level and the prefixes
// that resolve to that level.
struct GatewayClass {
  std::uint32_t gateways = 0;
  std::uint64_t prefixes = 0;
};

// Per-class evaluation (each class an independent instance of the base model
// with spread = perPrefix = 5 by default), summed over classes. Classes with
// fewer gateways than perPrefix use all of their gateways.
DistinctSets classExpectedDistinctSets(const std::vector<GatewayClass>& classes,
                                       Variant variant,
                                       std::uint32_t spread = 5,
                                       std::uint32_t perPrefix = 5);

// Distinct-count floor for any protecting scheme: per class, expected number
// of distinct pairs after `prefixes` uniform draws of 2-subsets.
double lowerBoundDistinctSets(const std::vector<GatewayClass>& classes);

// Smallest size with at least half the expected distinct-set mass below it.
std::uint32_t medianSetSize(const DistinctSets& sets);

struct Preset {
  std::string name;
  std::vector<GatewayClass> classes;
};

const std::vector<Preset>& table2Presets();
const Preset& table2Preset(const std::string& name);

// Three classes with geometric gateway ratio delta and inverse-geometric
// prefix ratio, rounded to integers summing to the given totals.
std::vector<GatewayClass> deltaBreakdown(std::uint32_t totalGateways,
                                         std::uint64_t totalPrefixes,
                                         double delta);

struct SweepRow {
  double x = 0.0;  // delta or gateway count
  double plain = 0.0;
  double optimized = 0.0;
  double lowerBound = 0.0;
};

std::vector<SweepRow> sweepDelta(std::uint32_t totalGateways,
                                 std::uint64_t totalPrefixes,
                                 const std::vector<double>& deltas);
std::vector<SweepRow> sweepGateways(const std::vector<std::uint32_t>& gatewayCounts,
                                    std::uint64_t totalPrefixes, double delta);

struct MonteCarloResult {
  double mean = 0.0;
  double stddev = 0.0;
  double standardError = 0.0;
  std::size_t trials = 0;
  std::map<std::uint32_t, double> sizeFrequency;  // empirical share per size
};

// Direct simulation of the generative model; deterministic per (seed, trial).
MonteCarloResult monteCarloDistinctSets(std::uint32_t gateways,
                                        std::uint64_t prefixes,
                                        std::uint32_t spread,
                                        std::uint32_t perPrefix,
                                        std::size_t trials, std::uint64_t seed,
                                        Variant variant);

}  // namespace optic
