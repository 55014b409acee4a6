#include "optic/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "optic/errors.hpp"

namespace optic {

double binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (std::uint32_t i = 1; i <= k; ++i)
    result *= static_cast<double>(n - k + i) / static_cast<double>(i);
  return result;
}

double setSizeProbability(std::uint32_t perPrefix, std::uint32_t spread,
                          std::uint32_t n, Variant variant) {
  if (spread < 1) throw ParameterError("preference spread must be >= 1");
  if (n < 2 || n > perPrefix)
    throw ParameterError("set size must lie in [2, gateways per prefix]");
  const double b = perPrefix;
  const double ps = spread;
  double p = 0.0;
  for (std::uint32_t i = 1; i <= spread; ++i) {
    const double above = 1.0 - static_cast<double>(i) / ps;  // ranks beyond i
    if (variant == Variant::Plain) {
      // Either n gateways tie at the minimum rank i, or one sits strictly
      // below and n-1 tie at i (the runner-up tier is then kept whole).
      p += std::pow(ps, -static_cast<double>(n)) *
           std::pow(above, static_cast<double>(perPrefix - n)) *
           ((i - 1) * b * binomial(perPrefix - 1, n - 1) +
            binomial(perPrefix, n));
    } else if (n == 2) {
      // A lone minimum collapses to exactly two gateways.
      p += (b / ps) * std::pow(above, b - 1.0) +
           binomial(perPrefix, 2) * std::pow(ps, -2.0) *
               std::pow(above, b - 2.0);
    } else {
      p += binomial(perPrefix, n) * std::pow(ps, -static_cast<double>(n)) *
           std::pow(above, static_cast<double>(perPrefix - n));
    }
  }
  return p;
}

double subsetOccupiedProbability(std::uint32_t gateways, std::uint64_t prefixes,
                                 std::uint32_t spread, std::uint32_t perPrefix,
                                 std::uint32_t n, Variant variant) {
  if (n > gateways) throw ParameterError("subset larger than the gateway pool");
  const double subsets = binomial(gateways, n);
  if (subsets < 1.0) return 0.0;
  double pn = 0.0;
  if (n >= 2 && n <= perPrefix) pn = setSizeProbability(perPrefix, spread, n, variant);
  const double draws = pn * static_cast<double>(prefixes);
  if (draws <= 0.0) return 0.0;
  if (subsets == 1.0) return 1.0;
  // 1 - (1 - 1/subsets)^draws, stable for huge subset counts.
  return -std::expm1(draws * std::log1p(-1.0 / subsets));
}

DistinctSets expectedDistinctSets(std::uint32_t gateways,
                                  std::uint64_t prefixes, std::uint32_t spread,
                                  std::uint32_t perPrefix, Variant variant) {
  if (perPrefix > gateways)
    throw ParameterError("gateways per prefix exceeds the gateway pool");
  DistinctSets out;
  for (std::uint32_t n = 2; n <= perPrefix; ++n) {
    double contribution =
        binomial(gateways, n) *
        subsetOccupiedProbability(gateways, prefixes, spread, perPrefix, n,
                                  variant);
    out.bySize[n] = contribution;
    out.total += contribution;
  }
  return out;
}

DistinctSets classExpectedDistinctSets(const std::vector<GatewayClass>& classes,
                                       Variant variant, std::uint32_t spread,
                                       std::uint32_t perPrefix) {
  DistinctSets out;
  for (const GatewayClass& cls : classes) {
    if (cls.prefixes == 0) continue;
    std::uint32_t b = std::min(perPrefix, cls.gateways);
    if (b < 2) continue;  // nothing to protect with
    DistinctSets part =
        expectedDistinctSets(cls.gateways, cls.prefixes, spread, b, variant);
    for (const auto& [size, count] : part.bySize) out.bySize[size] += count;
    out.total += part.total;
  }
  return out;
}

double lowerBoundDistinctSets(const std::vector<GatewayClass>& classes) {
  double total = 0.0;
  for (const GatewayClass& cls : classes) {
    if (cls.prefixes == 0) continue;
    if (cls.gateways < 2)
      throw ParameterError(
          "a class advertising prefixes needs at least two gateways");
    const double pairs = binomial(cls.gateways, 2);
    if (pairs == 1.0) {
      total += 1.0;
      continue;
    }
    total += pairs * -std::expm1(static_cast<double>(cls.prefixes) *
                                 std::log1p(-1.0 / pairs));
  }
  return total;
}

std::uint32_t medianSetSize(const DistinctSets& sets) {
  if (sets.total <= 0.0) return 0;
  double cumulative = 0.0;
  for (const auto& [size, count] : sets.bySize) {
    cumulative += count;
    if (cumulative >= sets.total / 2.0) return size;
  }
  return sets.bySize.empty() ? 0 : sets.bySize.rbegin()->first;
}

const std::vector<Preset>& table2Presets() {
  static const std::vector<Preset> presets = {
      {"stub", {{10, 700000}, {20, 100000}, {0, 0}}},
      {"tier4", {{10, 500000}, {25, 200000}, {25, 100000}}},
      {"tier3", {{10, 500000}, {50, 200000}, {100, 100000}}},
      {"large-tier3", {{10, 500000}, {100, 200000}, {500, 100000}}},
      {"tier2", {{5, 500000}, {500, 200000}, {2000, 100000}}},
      {"tier1", {{0, 0}, {50, 600000}, {5000, 200000}}},
  };
  return presets;
}

const Preset& table2Preset(const std::string& name) {
  for (const Preset& p : table2Presets())
    if (p.name == name) return p;
  throw NotFoundError("unknown preset '" + name + "'");
}

std::vector<GatewayClass> deltaBreakdown(std::uint32_t totalGateways,
                                         std::uint64_t totalPrefixes,
                                         double delta) {
  if (delta < 1.0) throw ParameterError("class ratio must be >= 1");
  const double d = delta;
  auto b1 = static_cast<std::int64_t>(
      std::llround(totalGateways / (1.0 + d + d * d)));
  auto b2 = static_cast<std::int64_t>(std::llround(b1 * d));
  std::int64_t b3 = static_cast<std::int64_t>(totalGateways) - b1 - b2;
  auto p1 = static_cast<std::int64_t>(
      std::llround(totalPrefixes / (1.0 + 1.0 / d + 1.0 / (d * d))));
  auto p2 = static_cast<std::int64_t>(std::llround(p1 / d));
  std::int64_t p3 = static_cast<std::int64_t>(totalPrefixes) - p1 - p2;
  if (b3 < 0 || p3 < 0)
    throw ParameterError("break-down does not fit the requested totals");
  return {{static_cast<std::uint32_t>(b1), static_cast<std::uint64_t>(p1)},
          {static_cast<std::uint32_t>(b2), static_cast<std::uint64_t>(p2)},
          {static_cast<std::uint32_t>(b3), static_cast<std::uint64_t>(p3)}};
}

std::vector<SweepRow> sweepDelta(std::uint32_t totalGateways,
                                 std::uint64_t totalPrefixes,
                                 const std::vector<double>& deltas) {
  std::vector<SweepRow> rows;
  for (double d : deltas) {
    std::vector<GatewayClass> classes =
        deltaBreakdown(totalGateways, totalPrefixes, d);
    SweepRow row;
    row.x = d;
    row.plain = classExpectedDistinctSets(classes, Variant::Plain).total;
    row.optimized =
        classExpectedDistinctSets(classes, Variant::Optimized).total;
    row.lowerBound = lowerBoundDistinctSets(classes);
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> sweepGateways(
    const std::vector<std::uint32_t>& gatewayCounts,
    std::uint64_t totalPrefixes, double delta) {
  std::vector<SweepRow> rows;
  for (std::uint32_t b : gatewayCounts) {
    std::vector<GatewayClass> classes =
        deltaBreakdown(b, totalPrefixes, delta);
    SweepRow row;
    row.x = b;
    row.plain = classExpectedDistinctSets(classes, Variant::Plain).total;
    row.optimized =
        classExpectedDistinctSets(classes, Variant::Optimized).total;
    row.lowerBound = lowerBoundDistinctSets(classes);
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::uint64_t drawBelow(std::mt19937_64& rng, std::uint64_t n) {
  return n ? rng() % n : 0;
}

}  // namespace

MonteCarloResult monteCarloDistinctSets(std::uint32_t gateways,
                                        std::uint64_t prefixes,
                                        std::uint32_t spread,
                                        std::uint32_t perPrefix,
                                        std::size_t trials, std::uint64_t seed,
                                        Variant variant) {
  if (trials < 1) throw ParameterError("at least one trial required");
  if (perPrefix < 2 || perPrefix > gateways)
    throw ParameterError("gateways per prefix must lie in [2, gateway pool]");
  if (spread < 1) throw ParameterError("preference spread must be >= 1");

  MonteCarloResult result;
  result.trials = trials;
  double sum = 0.0, sumSq = 0.0;
  std::map<std::uint32_t, std::uint64_t> sizeCounts;

  std::vector<std::uint32_t> pool(gateways);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1)));
    std::set<std::vector<std::uint32_t>> seen;
    for (std::uint64_t p = 0; p < prefixes; ++p) {
      std::iota(pool.begin(), pool.end(), 0u);
      for (std::uint32_t i = 0; i < perPrefix; ++i)
        std::swap(pool[i], pool[i + drawBelow(rng, gateways - i)]);

      std::vector<std::uint32_t> weights(perPrefix);
      std::uint32_t minW = spread + 1;
      for (std::uint32_t i = 0; i < perPrefix; ++i) {
        weights[i] = 1 + static_cast<std::uint32_t>(drawBelow(rng, spread));
        minW = std::min(minW, weights[i]);
      }

      std::vector<std::uint32_t> setGws;
      for (std::uint32_t i = 0; i < perPrefix; ++i)
        if (weights[i] == minW) setGws.push_back(pool[i]);
      if (setGws.size() == 1) {
        std::uint32_t secondW = spread + 1;
        for (std::uint32_t i = 0; i < perPrefix; ++i)
          if (weights[i] > minW) secondW = std::min(secondW, weights[i]);
        std::vector<std::uint32_t> runnersUp;
        for (std::uint32_t i = 0; i < perPrefix; ++i)
          if (weights[i] == secondW) runnersUp.push_back(pool[i]);
        if (variant == Variant::Plain) {
          setGws.insert(setGws.end(), runnersUp.begin(), runnersUp.end());
        } else {
          // The model treats every companion as equally likely.
          setGws.push_back(runnersUp[drawBelow(rng, runnersUp.size())]);
        }
      }
      std::sort(setGws.begin(), setGws.end());
      ++sizeCounts[static_cast<std::uint32_t>(setGws.size())];
      seen.insert(std::move(setGws));
    }
    const double distinct = static_cast<double>(seen.size());
    sum += distinct;
    sumSq += distinct * distinct;
  }

  const double n = static_cast<double>(trials);
  result.mean = sum / n;
  const double variance =
      trials > 1 ? std::max(0.0, (sumSq - sum * sum / n) / (n - 1.0)) : 0.0;
  result.stddev = std::sqrt(variance);
  result.standardError = result.stddev / std::sqrt(n);
  const double draws = n * static_cast<double>(prefixes);
  for (const auto& [size, count] : sizeCounts)
    result.sizeFrequency[size] = static_cast<double>(count) / draws;
  return result;
}

}  // namespace optic
