#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "optic/bgp.hpp"
#include "optic/control_plane.hpp"
#include "optic/data_plane.hpp"
#include "optic/graph.hpp"

namespace optic {

struct EngineOptions {
  ExtractOptions extract;
  MedMode medMode = MedMode::DefaultZero;
  bool retainUnused = false;
};

struct EngineStats {
  std::size_t extractCalls = 0;
  std::size_t extractCallsAfterBootstrap = 0;
  std::size_t setsWalked = 0;
  std::size_t setsRecomputed = 0;
};

struct PrefixOutcome {
  std::string prefix;
  std::optional<std::string> dataplane;
  std::optional<Dist> alpha;
  std::optional<std::string> oracle;
  bool mismatch = false;
};

struct EventRecord {
  std::string description;
  std::vector<PrefixOutcome> prefixes;
  std::size_t setsWalked = 0;
  std::size_t setsRecomputed = 0;
  std::size_t metaSize = 0;
  std::map<std::size_t, std::size_t> sizeHistogram;  // gateway count -> sets
  std::size_t mismatches = 0;
};

struct RunReport {
  std::vector<EventRecord> records;  // bootstrap first, then one per event
  std::size_t totalChecks = 0;
  std::size_t totalMismatches = 0;
  std::size_t extractCallsAfterBootstrap = 0;
  bool pass = true;
};

void writeReport(std::ostream& out, const RunReport& report);

// Holds the whole control/data-plane state of one vantage router and applies
// BGP and IGP events to it.
class Engine {
 public:
  Engine(Topology topo, EngineOptions opts = {});

  // Bootstrap: ingests every route, then builds each prefix's set once.
  void loadRib(const Rib& rib);

  void bgpAdd(const Route& r);
  void bgpWithdraw(const std::string& prefix, const std::string& gateway,
                   std::uint32_t originAs);

  // Applies the event, refreshes every set (fast path), then performs
  // background re-extractions where protection may have changed.
  EventRecord igpChange(const IgpEvent& ev);

  // Oracle cross-check of the current data plane, one outcome per prefix.
  EventRecord checkAll(const std::string& description) const;

  std::optional<NodeId> dataplaneGateway(const std::string& prefix) const;
  std::optional<Dist> dataplaneAlpha(const std::string& prefix) const;

  const Topology& topology() const { return topo_; }
  const DistanceMap& distances() const { return dist_; }
  const Rib& rib() const { return rib_; }
  const MetaSet& meta() const { return meta_; }
  const EngineStats& stats() const { return stats_; }
  const LeafList* leavesFor(const std::string& prefix) const;

 private:
  void updatePrefix(const std::string& prefix);
  void maybeUpdate(const std::string& prefix, int rank, NodeId gateway);
  bool protectedAndMinimal(const OprSet& set) const;
  void fillHistogram(EventRecord& rec) const;

  Topology topo_;
  DistanceMap dist_;
  EngineOptions opts_;
  Rib rib_;
  std::map<std::string, LeafList> leaves_;
  MetaSet meta_;
  EngineStats stats_;
  bool bootstrapped_ = false;
};

// Scenario files: IGP events plus BGP add/withdraw lines.
struct ScenarioEvent {
  enum class Kind { Igp, BgpAdd, BgpWithdraw };
  Kind kind = Kind::Igp;
  IgpEvent igp;
  Route route;  // BgpAdd
  std::string prefix;
  std::string gateway;
  std::uint32_t originAs = 0;  // BgpWithdraw
  std::string describe() const;
};

std::vector<ScenarioEvent> parseScenario(std::istream& in, const Topology& topo,
                                         const std::string& sourceName);
std::vector<ScenarioEvent> parseScenarioFile(const std::string& path,
                                             const Topology& topo);

RunReport runScenario(Topology topo, const Rib& rib,
                      const std::vector<ScenarioEvent>& events,
                      const EngineOptions& opts = {});

// Synthetic instance mirroring the analytical model: gateways dual-homed on
// a ring backbone, per-prefix uniform gateway subsets, preference rank
// realized through the AS-path length, local-pref per class.
struct RandomModelParams {
  std::uint32_t gateways = 20;   // B
  std::uint32_t prefixes = 1000; // P
  std::uint32_t spread = 5;      // ps
  std::uint32_t perPrefix = 5;   // b
  std::uint64_t seed = 1;
  // Optional class break-down (gateways_i, prefixes_i); overrides the two
  // scalar counts when non-empty.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> classes;
};

std::pair<Topology, Rib> generateInstance(const RandomModelParams& params);

// Randomized end-to-end validation: random 2-connected backbones, random
// routing tables, one random event per case, full oracle agreement demanded.
struct FuzzParams {
  std::size_t cases = 100;
  std::uint64_t seed = 1;
  EngineOptions options;
  unsigned jobs = 1;
  bool weightOnly = false;  // restrict events to finite weight changes
};

struct FuzzSummary {
  std::size_t cases = 0;
  std::size_t totalChecks = 0;
  std::size_t mismatches = 0;
  std::size_t extractCallsAfterBootstrap = 0;
  std::vector<std::string> failures;  // first few case descriptions
  bool pass = true;
};

FuzzSummary runFuzz(const FuzzParams& params);

}  // namespace optic
