#include "optic/control_plane.hpp"

#include <algorithm>

namespace optic {

ChainKey chainKeyFor(const Route& r, MedMode mode) {
  if (mode == MedMode::Ignore && !r.beta.med.has_value())
    return ChainKey{r.beta.originAs, r.gateway};
  return ChainKey{r.beta.originAs, kSharedChain};
}

std::uint32_t medSortValue(const Route& r) { return r.beta.med.value_or(0); }

std::size_t MrSet::gatewayCount() const { return gateways().size(); }

std::vector<NodeId> MrSet::gateways() const {
  std::vector<NodeId> out;
  for (const auto& [key, chain] : chains)
    for (const Route& r : chain.routes) out.push_back(r.gateway);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t MrSet::routeCount() const {
  std::size_t n = 0;
  for (const auto& [key, chain] : chains) n += chain.routes.size();
  return n;
}

int LeafList::insertRoute(const Route& r) {
  for (const auto& [bk, leaf] : leaves_)
    for (const auto& [ck, chain] : leaf.chains)
      for (const Route& existing : chain.routes)
        if (existing.gateway == r.gateway &&
            existing.beta.originAs == r.beta.originAs)
          throw ConflictError("route already present");

  BetaKey bk = betaKey(r.beta);
  auto [it, created] = leaves_.try_emplace(bk);
  if (created) it->second.key = bk;
  MedChain& chain = it->second.chains[chainKeyFor(r, medMode_)];
  auto pos = std::find_if(
      chain.routes.begin(), chain.routes.end(), [&](const Route& x) {
        return std::make_pair(medSortValue(x), x.gateway) >
               std::make_pair(medSortValue(r), r.gateway);
      });
  chain.routes.insert(pos, r);
  return static_cast<int>(std::distance(leaves_.begin(), it)) + 1;
}

std::pair<int, Route> LeafList::removeRoute(NodeId gateway,
                                            std::uint32_t originAs) {
  int rank = 0;
  for (auto lit = leaves_.begin(); lit != leaves_.end(); ++lit) {
    ++rank;
    MrSet& leaf = lit->second;
    for (auto cit = leaf.chains.begin(); cit != leaf.chains.end(); ++cit) {
      auto& routes = cit->second.routes;
      auto rit = std::find_if(routes.begin(), routes.end(), [&](const Route& x) {
        return x.gateway == gateway && x.beta.originAs == originAs;
      });
      if (rit == routes.end()) continue;
      Route removed = *rit;
      routes.erase(rit);
      if (routes.empty()) leaf.chains.erase(cit);
      if (leaf.chains.empty()) leaves_.erase(lit);
      return {rank, removed};
    }
  }
  throw NotFoundError("route not present");
}

const MrSet& LeafList::leaf(std::size_t rank) const {
  if (rank == 0 || rank > leaves_.size())
    throw NotFoundError("leaf rank out of range");
  auto it = leaves_.begin();
  std::advance(it, rank - 1);
  return it->second;
}

std::vector<Route> LeafList::allRoutes() const {
  std::vector<Route> out;
  for (const auto& [bk, leaf] : leaves_)
    for (const auto& [ck, chain] : leaf.chains)
      out.insert(out.end(), chain.routes.begin(), chain.routes.end());
  return out;
}

namespace {

OprItem itemFromRoute(const Route& r, const DistanceMap& dist) {
  OprItem item;
  item.gateway = r.gateway;
  item.routerId = r.routerId;
  item.ebgpLocal = r.ebgpLocal;
  item.localPref = r.beta.localPref;
  item.asPathLen = r.beta.asPathLen;
  item.origin = static_cast<std::uint8_t>(r.beta.origin);
  item.hasMed = r.beta.med.has_value();
  item.med = r.beta.med.value_or(0);
  item.alpha = alphaOf(r, dist);
  return item;
}

// Chain copy for the data plane; with optDropMed, entries below the first
// reachable one are omitted and the copy is marked truncated.
OprEntry entryFromChain(std::uint32_t rank, const ChainKey& key,
                        const MedChain& chain, const DistanceMap& dist,
                        bool dropMed) {
  OprEntry e;
  e.leafRank = rank;
  e.originAs = key.originAs;
  e.chainDisc = key.disc;
  std::size_t keep = chain.routes.size();
  if (dropMed) {
    for (std::size_t i = 0; i < chain.routes.size(); ++i) {
      if (alphaOf(chain.routes[i], dist) != kInfDist) {
        keep = i + 1;
        break;
      }
    }
  }
  e.truncated = keep < chain.routes.size();
  for (std::size_t i = 0; i < keep; ++i)
    e.items.push_back(itemFromRoute(chain.routes[i], dist));
  return e;
}

void appendLeaf(OprSet& set, std::uint32_t rank, const MrSet& leaf,
                const DistanceMap& dist, bool dropMed) {
  for (const auto& [key, chain] : leaf.chains)
    set.entries.push_back(entryFromChain(rank, key, chain, dist, dropMed));
}

// Head route of the best-alpha chain of a leaf, if any head is reachable.
const Route* bestAlphaHead(const MrSet& leaf, const DistanceMap& dist) {
  const Route* best = nullptr;
  Dist bestA = kInfDist;
  for (const auto& [key, chain] : leaf.chains) {
    for (const Route& r : chain.routes) {
      Dist a = alphaOf(r, dist);
      if (a == kInfDist) continue;  // chain head = first reachable
      if (!best || std::make_tuple(a, r.routerId, r.gateway) <
                       std::make_tuple(bestA, best->routerId, best->gateway)) {
        best = &r;
        bestA = a;
      }
      break;
    }
  }
  return best;
}

}  // namespace

OprSet extractOpr(const LeafList& leaves, const Topology& topo,
                  const DistanceMap& dist, const ExtractOptions& opts) {
  OprSet set;
  if (leaves.empty()) return set;

  auto leafIt = leaves.leaves().begin();
  const MrSet& first = leafIt->second;

  if (opts.optSecondMr && leaves.leafCount() >= 2 &&
      first.gatewayCount() == 1) {
    NodeId g1 = first.gateways().front();
    auto secondIt = std::next(leafIt);
    if (const Route* g2route = bestAlphaHead(secondIt->second, dist)) {
      if (g2route->gateway != g1 &&
          twoDisjointPaths(topo, {g1, g2route->gateway})) {
        appendLeaf(set, 1, first, dist, opts.optDropMed);
        OprEntry e;
        e.leafRank = 2;
        ChainKey ck = chainKeyFor(*g2route, leaves.medMode());
        e.originAs = ck.originAs;
        e.chainDisc = ck.disc;
        e.truncated = secondIt->second.routeCount() > 1;
        e.items.push_back(itemFromRoute(*g2route, dist));
        set.entries.push_back(std::move(e));
        set.xUsed = 2;
        return set;
      }
    }
  }

  std::vector<NodeId> gws;
  std::uint32_t x = 0;
  bool protectedSet = false;
  for (auto it = leaves.leaves().begin(); it != leaves.leaves().end(); ++it) {
    ++x;
    for (NodeId g : it->second.gateways()) gws.push_back(g);
    if (twoDisjointPaths(topo, gws)) {
      protectedSet = true;
      break;
    }
  }
  if (!protectedSet) x = static_cast<std::uint32_t>(leaves.leafCount());

  std::uint32_t rank = 0;
  for (auto it = leaves.leaves().begin(); it != leaves.leaves().end(); ++it) {
    ++rank;
    if (rank > x) break;
    appendLeaf(set, rank, it->second, dist, opts.optDropMed);
  }
  set.xUsed = x;
  set.unprotected = !protectedSet;
  return set;
}

}  // namespace optic
