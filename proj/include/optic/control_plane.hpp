#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "optic/bgp.hpp"
#include "optic/data_plane.hpp"
#include "optic/graph.hpp"

namespace optic {

// Identity of a MED-comparison chain inside one preference tier. Routes of
// the same neighbor AS share a chain; in Ignore mode a MED-less route forms
// a singleton chain keyed by its gateway.
struct ChainKey {
  std::uint32_t originAs = 0;
  std::uint32_t disc = kSharedChain;
  friend auto operator<=>(const ChainKey&, const ChainKey&) = default;
};

ChainKey chainKeyFor(const Route& r, MedMode mode);
std::uint32_t medSortValue(const Route& r);

// Routes of one chain, ordered by (MED, gateway).
struct MedChain {
  std::vector<Route> routes;
};

// One leaf: all routes tied on the MED-excluded attributes.
struct MrSet {
  BetaKey key;
  std::map<ChainKey, MedChain> chains;

  std::size_t gatewayCount() const;
  std::vector<NodeId> gateways() const;
  std::size_t routeCount() const;
};

// Per-prefix ordered structure; leaves sorted most-preferred first. Leaf
// order is a pure function of route attributes, never of IGP distances.
class LeafList {
 public:
  explicit LeafList(MedMode medMode = MedMode::DefaultZero)
      : medMode_(medMode) {}

  // Returns the 1-based rank of the leaf the route landed in.
  // Throws ConflictError when (gateway, origin AS) is already present.
  int insertRoute(const Route& r);

  // Removes the route identified by (gateway, origin AS) and returns the
  // rank it occupied together with the stored route.
  // Throws NotFoundError when absent.
  std::pair<int, Route> removeRoute(NodeId gateway, std::uint32_t originAs);

  bool empty() const { return leaves_.empty(); }
  std::size_t leafCount() const { return leaves_.size(); }
  const MrSet& leaf(std::size_t rank) const;  // 1-based
  const std::map<BetaKey, MrSet>& leaves() const { return leaves_; }
  MedMode medMode() const { return medMode_; }
  std::vector<Route> allRoutes() const;

 private:
  std::map<BetaKey, MrSet> leaves_;
  MedMode medMode_;
};

struct ExtractOptions {
  bool optSecondMr = false;  // reduce to {g1, g2} when tier 1 is a singleton
  bool optDropMed = false;   // omit chain entries below the first reachable
};

// Builds the protecting set: the union of the most-preferred tiers, stopping
// at the smallest x whose gateways admit two node-disjoint paths from the
// vantage. When no union qualifies the full union is returned flagged
// unprotected. Cached distances are filled from `dist`.
OprSet extractOpr(const LeafList& leaves, const Topology& topo,
                  const DistanceMap& dist, const ExtractOptions& opts);

}  // namespace optic
