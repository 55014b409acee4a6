#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "optic/bgp.hpp"
#include "optic/graph.hpp"

namespace optic {

class LeafList;
struct ExtractOptions;

// One route pushed to the data plane.
struct OprItem {
  NodeId gateway = 0;
  std::uint32_t routerId = 0;
  bool ebgpLocal = false;
  std::int32_t localPref = 100;
  std::uint32_t asPathLen = 1;
  std::uint8_t origin = 0;
  bool hasMed = false;
  std::uint32_t med = 0;
  Dist alpha = kInfDist;  // cached; refreshed on every distance change
};

inline constexpr std::uint32_t kSharedChain = 0xffffffffu;

// A MED chain projection: routes of one MED-comparison group in MED order.
// Only the first reachable item (the head) competes in the min-search.
struct OprEntry {
  std::uint32_t leafRank = 1;  // 1-based preference tier
  std::uint32_t originAs = 0;
  std::uint32_t chainDisc = kSharedChain;
  bool truncated = false;  // copy omits control-plane entries below the head
  std::vector<OprItem> items;
  int topIdx = -1;  // derived: first item with finite alpha, -1 if none
};

struct OprSet {
  std::vector<OprEntry> entries;
  std::uint32_t xUsed = 0;   // number of preference tiers merged in
  bool unprotected = false;  // no tier union yields two disjoint paths

  // Derived bookkeeping (not part of the canonical content).
  std::uint64_t hash = 0;
  std::string canon;
  int topEntry = -1;
  int prefixCount = 0;

  std::size_t gatewayCount() const;
  std::vector<NodeId> gateways() const;
  const OprItem* topItem() const;
};

// Canonical byte encoding: entries sorted by (rank, origin AS, chain
// discriminator), each item by MED order; cached distances excluded.
std::string canonicalEncode(const OprSet& set);
std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t hashOpr(const OprSet& set);

struct RefreshOutcome {
  bool exhausted = false;          // no entry has a reachable head
  bool truncatedHeadDied = false;  // a truncated chain lost all visible items
};

// Recomputes every cached alpha and each entry's head index.
RefreshOutcome refreshAlphas(OprSet& set, const DistanceMap& dist);

// Picks the best reachable chain head: lowest preference tier first, then
// cached alpha, then router-id. Returns the gateway, or nothing when the
// set is exhausted (which signals the update path).
std::optional<NodeId> minSearch(OprSet& set, const DistanceMap& dist);

// Content-addressed table of OPR sets plus the prefix map pointing into it.
class MetaSet {
 public:
  using SetPtr = std::shared_ptr<OprSet>;

  explicit MetaSet(bool retainUnused = false) : retainUnused_(retainUnused) {}

  // Returns the stored set with identical content, inserting if absent.
  // Hash collisions are resolved by full content comparison.
  SetPtr intern(OprSet&& candidate);

  // Points `prefix` at `set`, releasing its previous set (removed from the
  // table once unreferenced unless retention is enabled).
  void bind(const std::string& prefix, const SetPtr& set);
  void unbind(const std::string& prefix);

  SetPtr setFor(const std::string& prefix) const;
  std::optional<std::uint64_t> hashFor(const std::string& prefix) const;
  std::vector<std::string> prefixesUsing(std::uint64_t hash) const;

  std::size_t size() const { return setCount_; }
  const std::map<std::uint64_t, std::vector<SetPtr>>& table() const {
    return table_;
  }
  const std::map<std::string, SetPtr>& prefixMap() const { return pbgp_; }

  // One line per set: opr <hash> size=<n> top=<gw> prefixes=<k> [unprotected]
  void dump(std::ostream& out, const Topology& topo) const;

 private:
  std::map<std::uint64_t, std::vector<SetPtr>> table_;
  std::map<std::string, SetPtr> pbgp_;
  std::size_t setCount_ = 0;
  bool retainUnused_ = false;
};

// Re-extracts the OPR set of `prefix` from its leaf list, refreshes cached
// distances, re-runs the min-search, interns the result and rebinds the
// prefix. An empty leaf list withdraws the prefix. Returns the new hash.
std::optional<std::uint64_t> updateOpr(const LeafList& leaves, MetaSet& meta,
                                       const std::string& prefix,
                                       const Topology& topo,
                                       const DistanceMap& dist,
                                       const ExtractOptions& opts);

}  // namespace optic
