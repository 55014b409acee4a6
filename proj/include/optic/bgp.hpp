#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "optic/graph.hpp"

namespace optic {

enum class Origin : std::uint8_t { Igp = 0, Egp = 1, Incomplete = 2 };

// Attributes compared before the IGP distance: local-pref (higher wins),
// AS-path length, origin code. MED only discriminates routes of the same
// neighbor AS and is kept out of the ordering key.
struct BetaAttrs {
  std::int32_t localPref = 100;
  std::uint32_t asPathLen = 1;
  Origin origin = Origin::Igp;
  std::optional<std::uint32_t> med;
  std::uint32_t originAs = 0;
};

// Ordering key over the MED-excluded attributes; smaller key = preferred.
struct BetaKey {
  std::int32_t localPref = 0;
  std::uint32_t asPathLen = 0;
  std::uint8_t origin = 0;

  friend std::strong_ordering operator<=>(const BetaKey& a, const BetaKey& b) {
    if (a.localPref != b.localPref)
      return b.localPref <=> a.localPref;  // higher local-pref first
    if (a.asPathLen != b.asPathLen) return a.asPathLen <=> b.asPathLen;
    return a.origin <=> b.origin;
  }
  friend bool operator==(const BetaKey& a, const BetaKey& b) = default;
};

inline BetaKey betaKey(const BetaAttrs& b) {
  return BetaKey{b.localPref, b.asPathLen, static_cast<std::uint8_t>(b.origin)};
}

struct Route {
  std::string prefix;
  NodeId gateway = 0;
  BetaAttrs beta;
  bool ebgpLocal = false;      // learned over eBGP at the vantage itself
  std::uint32_t routerId = 0;  // defaults to the gateway's numeric id
};

// How routes lacking a MED value are treated.
enum class MedMode {
  DefaultZero,  // missing MED compares as 0
  Ignore,       // MED-less routes are never MED-compared
};

// Effective distance-tier attribute: 0 for a vantage-local eBGP route whose
// gateway is still reachable, the IGP distance otherwise.
Dist alphaOf(const Route& r, const DistanceMap& dist);

class Rib {
 public:
  // Throws ConflictError on duplicate (prefix, gateway, origin_as).
  void add(const Route& r);
  // Throws NotFoundError when absent.
  Route remove(const std::string& prefix, NodeId gateway, std::uint32_t originAs);

  const std::vector<Route>* routesFor(const std::string& prefix) const;
  const std::map<std::string, std::vector<Route>>& byPrefix() const {
    return byPrefix_;
  }
  std::size_t prefixCount() const { return byPrefix_.size(); }

 private:
  std::map<std::string, std::vector<Route>> byPrefix_;
};

// Reference decision process used to cross-check the data plane:
//   1. drop unresolvable routes (infinite alpha)
//   2. keep routes maximal under the MED-excluded ordering
//   3. within each MED-comparison group keep the lowest-MED survivor
//   4. minimum alpha, then lowest router-id
// Empty result iff no route has finite alpha.
std::optional<Route> oracleBest(const std::string& prefix, const Rib& rib,
                                const DistanceMap& dist,
                                MedMode medMode = MedMode::DefaultZero);

// Same, over an explicit route list.
std::optional<Route> oracleBest(const std::vector<Route>& routes,
                                const DistanceMap& dist,
                                MedMode medMode = MedMode::DefaultZero);

// Text format, one route per line ('#' starts a comment):
//   route <prefix> <gateway> lp=<n> aspath=<n> origin=<0|1|2>
//         [med=<n>] as=<asn> [rid=<n>] [ebgp-local]
Route parseRouteLine(const std::string& line, const Topology& topo,
                     const std::string& sourceName, int lineNo);
Rib parseRib(std::istream& in, const Topology& topo,
             const std::string& sourceName);
Rib parseRibFile(const std::string& path, const Topology& topo);

}  // namespace optic
