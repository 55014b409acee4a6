#include "optic/bgp.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace optic {

Dist alphaOf(const Route& r, const DistanceMap& dist) {
  Dist d = dist.at(r.gateway);
  if (d == kInfDist) return kInfDist;
  return r.ebgpLocal ? 0 : d;
}

void Rib::add(const Route& r) {
  auto& routes = byPrefix_[r.prefix];
  for (const Route& existing : routes) {
    if (existing.gateway == r.gateway &&
        existing.beta.originAs == r.beta.originAs)
      throw ConflictError("duplicate route for prefix '" + r.prefix + "'");
  }
  routes.push_back(r);
}

Route Rib::remove(const std::string& prefix, NodeId gateway,
                  std::uint32_t originAs) {
  auto it = byPrefix_.find(prefix);
  if (it == byPrefix_.end())
    throw NotFoundError("no routes for prefix '" + prefix + "'");
  auto& routes = it->second;
  for (auto rit = routes.begin(); rit != routes.end(); ++rit) {
    if (rit->gateway == gateway && rit->beta.originAs == originAs) {
      Route out = *rit;
      routes.erase(rit);
      if (routes.empty()) byPrefix_.erase(it);
      return out;
    }
  }
  throw NotFoundError("route not present for prefix '" + prefix + "'");
}

const std::vector<Route>* Rib::routesFor(const std::string& prefix) const {
  auto it = byPrefix_.find(prefix);
  return it == byPrefix_.end() ? nullptr : &it->second;
}

namespace {

// Group identity for MED comparison. Under Ignore, a route without MED is
// its own group and never eliminates or gets eliminated.
struct MedGroup {
  std::uint32_t originAs;
  std::uint32_t disc;
  friend auto operator<=>(const MedGroup&, const MedGroup&) = default;
};

constexpr std::uint32_t kSharedGroup = 0xffffffffu;

MedGroup medGroupFor(const Route& r, MedMode mode) {
  if (mode == MedMode::Ignore && !r.beta.med.has_value())
    return MedGroup{r.beta.originAs, r.gateway};
  return MedGroup{r.beta.originAs, kSharedGroup};
}

std::uint32_t medValue(const Route& r) { return r.beta.med.value_or(0); }

}  // namespace

std::optional<Route> oracleBest(const std::vector<Route>& routes,
                                const DistanceMap& dist, MedMode medMode) {
  // Resolvable routes only.
  std::vector<const Route*> usable;
  for (const Route& r : routes)
    if (alphaOf(r, dist) != kInfDist) usable.push_back(&r);
  if (usable.empty()) return std::nullopt;

  BetaKey best = betaKey(usable.front()->beta);
  for (const Route* r : usable) best = std::min(best, betaKey(r->beta));
  std::vector<const Route*> survivors;
  for (const Route* r : usable)
    if (betaKey(r->beta) == best) survivors.push_back(r);

  // MED elimination: lowest MED per group among the (reachable) survivors.
  std::map<MedGroup, const Route*> groupBest;
  for (const Route* r : survivors) {
    MedGroup g = medGroupFor(*r, medMode);
    auto [it, inserted] = groupBest.try_emplace(g, r);
    if (!inserted) {
      const Route* cur = it->second;
      auto key = [](const Route* x) {
        return std::make_pair(medValue(*x), x->gateway);
      };
      if (key(r) < key(cur)) it->second = r;
    }
  }

  const Route* winner = nullptr;
  Dist bestAlpha = kInfDist;
  for (auto& [g, r] : groupBest) {
    Dist a = alphaOf(*r, dist);
    auto key = std::make_tuple(a, r->routerId, r->beta.originAs, r->gateway);
    auto cur = winner ? std::make_tuple(bestAlpha, winner->routerId,
                                        winner->beta.originAs, winner->gateway)
                      : std::make_tuple(kInfDist, 0u, 0u, NodeId{0});
    if (!winner || key < cur) {
      winner = r;
      bestAlpha = a;
    }
  }
  if (!winner) return std::nullopt;
  return *winner;
}

std::optional<Route> oracleBest(const std::string& prefix, const Rib& rib,
                                const DistanceMap& dist, MedMode medMode) {
  const auto* routes = rib.routesFor(prefix);
  if (!routes) return std::nullopt;
  return oracleBest(*routes, dist, medMode);
}

namespace {

std::uint64_t parseUint(const std::string& tok, const std::string& src,
                        int line, const char* what) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(src, line, std::string("bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

Route parseRouteLine(const std::string& line, const Topology& topo,
                     const std::string& sourceName, int lineNo) {
  std::istringstream ss(line);
  std::string tok;
  std::vector<std::string> toks;
  while (ss >> tok) {
    if (tok[0] == '#') break;
    toks.push_back(tok);
  }
  if (toks.size() < 3 || toks[0] != "route")
    throw ParseError(sourceName, lineNo,
                     "usage: route <prefix> <gateway> key=value...");

  Route r;
  r.prefix = toks[1];
  auto gw = topo.findNode(toks[2]);
  if (!gw)
    throw ParseError(sourceName, lineNo, "unknown gateway '" + toks[2] + "'");
  r.gateway = *gw;
  r.routerId = *gw;

  bool haveLp = false, haveAspath = false, haveOrigin = false, haveAs = false;
  for (std::size_t i = 3; i < toks.size(); ++i) {
    const std::string& t = toks[i];
    if (t == "ebgp-local") {
      r.ebgpLocal = true;
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError(sourceName, lineNo, "bad attribute '" + t + "'");
    std::string key = t.substr(0, eq);
    std::string val = t.substr(eq + 1);
    if (key == "lp") {
      r.beta.localPref =
          static_cast<std::int32_t>(parseUint(val, sourceName, lineNo, "lp"));
      haveLp = true;
    } else if (key == "aspath") {
      r.beta.asPathLen = static_cast<std::uint32_t>(
          parseUint(val, sourceName, lineNo, "aspath"));
      haveAspath = true;
    } else if (key == "origin") {
      std::uint64_t v = parseUint(val, sourceName, lineNo, "origin");
      if (v > 2) throw ParseError(sourceName, lineNo, "origin must be 0, 1 or 2");
      r.beta.origin = static_cast<Origin>(v);
      haveOrigin = true;
    } else if (key == "med") {
      r.beta.med = static_cast<std::uint32_t>(
          parseUint(val, sourceName, lineNo, "med"));
    } else if (key == "as") {
      r.beta.originAs =
          static_cast<std::uint32_t>(parseUint(val, sourceName, lineNo, "as"));
      haveAs = true;
    } else if (key == "rid") {
      r.routerId = static_cast<std::uint32_t>(
          parseUint(val, sourceName, lineNo, "rid"));
    } else {
      throw ParseError(sourceName, lineNo, "unknown attribute '" + key + "'");
    }
  }
  if (!haveLp || !haveAspath || !haveOrigin || !haveAs)
    throw ParseError(sourceName, lineNo,
                     "route needs lp=, aspath=, origin= and as=");
  return r;
}

Rib parseRib(std::istream& in, const Topology& topo,
             const std::string& sourceName) {
  Rib rib;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream probe(line);
    std::string first;
    if (!(probe >> first) || first[0] == '#') continue;
    try {
      rib.add(parseRouteLine(line, topo, sourceName, lineNo));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(sourceName, lineNo, e.what());
    }
  }
  return rib;
}

Rib parseRibFile(const std::string& path, const Topology& topo) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open rib file '" + path + "'");
  return parseRib(in, topo, path);
}

}  // namespace optic
