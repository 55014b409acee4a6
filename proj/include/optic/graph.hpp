#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "optic/errors.hpp"

namespace optic {

using NodeId = std::uint32_t;
using Weight = std::uint64_t;
using Dist = std::uint64_t;

// Infinity is a dedicated sentinel; sums saturate instead of wrapping.
inline constexpr Weight kInfWeight = std::numeric_limits<Weight>::max();
inline constexpr Dist kInfDist = std::numeric_limits<Dist>::max();

inline Dist addDist(Dist a, Dist b) {
  if (a == kInfDist || b == kInfDist) return kInfDist;
  if (a > kInfDist - b) return kInfDist;
  return a + b;
}

struct Node {
  std::string name;
  bool external = false;
  bool up = true;
};

struct Link {
  NodeId u = 0;
  NodeId v = 0;
  Weight weight = 1;  // stored weight; survives down/up cycles
  bool directed = false;
  bool up = true;
};

enum class EventKind { WeightChange, LinkDown, LinkUp, NodeDown, NodeUp };

// IGP events name their targets; names are resolved against the topology
// when the event is applied.
struct IgpEvent {
  EventKind kind = EventKind::WeightChange;
  std::string a;       // node for node events, first endpoint otherwise
  std::string b;       // second endpoint for link events
  Weight weight = 1;   // new weight for WeightChange / LinkUp
  std::string describe() const;
};

// An IGP topology: internal routers and external gateway nodes joined by
// weighted links, with a single vantage router whose viewpoint is modeled.
class Topology {
 public:
  NodeId addNode(const std::string& name, bool external = false);
  void addLink(const std::string& u, const std::string& v, Weight w,
               bool directed = false);
  void setVantage(const std::string& name);

  std::optional<NodeId> findNode(const std::string& name) const;
  NodeId nodeId(const std::string& name) const;  // throws NotFoundError
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const std::string& nodeName(NodeId id) const { return nodes_.at(id).name; }
  std::size_t nodeCount() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  NodeId vantage() const;
  bool hasVantage() const { return vantage_.has_value(); }

  // kInfWeight when the link or either endpoint is down.
  Weight effectiveWeight(const Link& l) const;

  // Throws StructuralError on inconsistency (no vantage, vantage external,
  // zero weight, self loop).
  void validate() const;

  // Mutators used by applyEvent; link lookup honors declared direction.
  Link* findLink(NodeId u, NodeId v);
  Node& mutableNode(NodeId id) { return nodes_.at(id); }
  void insertLink(NodeId u, NodeId v, Weight w, bool directed, bool up);

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::unordered_map<std::string, NodeId> byName_;
  std::optional<NodeId> vantage_;
};

struct DistanceMap {
  std::vector<Dist> dist;
  Dist at(NodeId id) const { return dist.at(id); }
  bool reachable(NodeId id) const { return dist.at(id) != kInfDist; }
};

// Shortest-path distances from the vantage over effective weights.
DistanceMap spf(const Topology& topo);

// Applies a single event and returns the updated topology.
//   WeightChange: existing link, finite weight >= 1
//   LinkDown:     existing up link
//   LinkUp:       revives a down link (optionally re-valued) or inserts a
//                 new undirected link between existing nodes
//   NodeDown / NodeUp: flips a non-vantage node
// Violated preconditions raise NotFoundError / StructuralError.
Topology applyEvent(Topology topo, const IgpEvent& ev);

// True when two paths from the vantage to a virtual node attached to every
// gateway in `gateways` share no intermediate node (vertex-capacity max-flow
// >= 2 on the node-split graph). Gateways themselves count as intermediate.
bool twoDisjointPaths(const Topology& topo, const std::vector<NodeId>& gateways);

// Text format, one directive per line ('#' starts a comment):
//   node <id> [external]
//   edge <u> <v> <weight> [directed]
//   vantage <id>
Topology parseTopology(std::istream& in, const std::string& sourceName);
Topology parseTopologyFile(const std::string& path);

}  // namespace optic
