#include "optic/engine.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "optic/errors.hpp"

namespace optic {

namespace {

std::vector<std::string> splitTokens(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::uint64_t parseUnsigned(const std::string& token, const std::string& source,
                            int lineNo, const char* what) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, lineNo,
                     std::string("invalid ") + what + " '" + token + "'");
  }
}

}  // namespace

Engine::Engine(Topology topo, EngineOptions opts)
    : topo_(std::move(topo)),
      dist_(spf(topo_)),
      opts_(opts),
      meta_(opts.retainUnused) {}

const LeafList* Engine::leavesFor(const std::string& prefix) const {
  auto it = leaves_.find(prefix);
  return it == leaves_.end() ? nullptr : &it->second;
}

void Engine::updatePrefix(const std::string& prefix) {
  auto it = leaves_.find(prefix);
  if (it == leaves_.end() || it->second.empty()) {
    meta_.unbind(prefix);
    return;
  }
  ++stats_.extractCalls;
  if (bootstrapped_) ++stats_.extractCallsAfterBootstrap;
  updateOpr(it->second, meta_, prefix, topo_, dist_, opts_.extract);
}

void Engine::maybeUpdate(const std::string& prefix, int rank, NodeId gateway) {
  MetaSet::SetPtr set = meta_.setFor(prefix);
  bool useful = true;
  if (set) {
    useful = rank <= static_cast<int>(set->xUsed);
    if (!useful) {
      std::vector<NodeId> gws = set->gateways();
      useful = std::find(gws.begin(), gws.end(), gateway) != gws.end();
    }
  }
  if (useful) updatePrefix(prefix);
}

void Engine::loadRib(const Rib& rib) {
  for (const auto& [prefix, routes] : rib.byPrefix()) {
    for (const Route& r : routes) {
      rib_.add(r);
      auto [it, inserted] = leaves_.try_emplace(prefix, LeafList(opts_.medMode));
      (void)inserted;
      it->second.insertRoute(r);
    }
  }
  for (const auto& [prefix, ll] : leaves_) {
    (void)ll;
    updatePrefix(prefix);
  }
  bootstrapped_ = true;
}

void Engine::bgpAdd(const Route& r) {
  rib_.add(r);  // rejects duplicates before the leaf list sees them
  auto [it, inserted] = leaves_.try_emplace(r.prefix, LeafList(opts_.medMode));
  (void)inserted;
  int rank = it->second.insertRoute(r);
  maybeUpdate(r.prefix, rank, r.gateway);
}

void Engine::bgpWithdraw(const std::string& prefix, const std::string& gateway,
                         std::uint32_t originAs) {
  NodeId gw = topo_.nodeId(gateway);
  rib_.remove(prefix, gw, originAs);
  auto it = leaves_.find(prefix);
  if (it == leaves_.end())
    throw NotFoundError("no leaf list for prefix '" + prefix + "'");
  auto [rank, removed] = it->second.removeRoute(gw, originAs);
  (void)removed;
  if (it->second.empty()) {
    leaves_.erase(it);
    meta_.unbind(prefix);
    return;
  }
  maybeUpdate(prefix, rank, gw);
}

bool Engine::protectedAndMinimal(const OprSet& set) const {
  if (set.unprotected) return false;
  if (set.xUsed != 1 && set.gatewayCount() != 2) return false;
  return twoDisjointPaths(topo_, set.gateways());
}

EventRecord Engine::igpChange(const IgpEvent& ev) {
  topo_ = applyEvent(std::move(topo_), ev);
  dist_ = spf(topo_);
  const bool weightOnly = ev.kind == EventKind::WeightChange;

  // Fast path: refresh every stored set once and re-run its min-search.
  std::vector<const OprSet*> queued;
  std::size_t walked = 0;
  for (const auto& [hash, bucket] : meta_.table()) {
    (void)hash;
    for (const MetaSet::SetPtr& set : bucket) {
      ++walked;
      RefreshOutcome outcome = refreshAlphas(*set, dist_);
      minSearch(*set, dist_);
      bool needsUpdate;
      if (outcome.exhausted) {
        needsUpdate = true;  // nothing left to forward through
      } else if (weightOnly) {
        needsUpdate = false;  // reachability unchanged, set still protects
      } else if (outcome.truncatedHeadDied) {
        needsUpdate = true;  // omitted chain entries may now be needed
      } else {
        needsUpdate = !protectedAndMinimal(*set);
      }
      if (needsUpdate) queued.push_back(set.get());
    }
  }

  // Background: re-extract each affected prefix. Bindings change underneath,
  // so capture the prefix list first.
  std::set<const OprSet*> queuedSet(queued.begin(), queued.end());
  std::vector<std::string> toUpdate;
  for (const auto& [prefix, set] : meta_.prefixMap())
    if (queuedSet.count(set.get())) toUpdate.push_back(prefix);
  for (const std::string& prefix : toUpdate) updatePrefix(prefix);

  stats_.setsWalked += walked;
  stats_.setsRecomputed += queued.size();

  EventRecord rec = checkAll(ev.describe());
  rec.setsWalked = walked;
  rec.setsRecomputed = queued.size();
  return rec;
}

void Engine::fillHistogram(EventRecord& rec) const {
  for (const auto& [hash, bucket] : meta_.table()) {
    (void)hash;
    for (const MetaSet::SetPtr& set : bucket) ++rec.sizeHistogram[set->gatewayCount()];
  }
}

EventRecord Engine::checkAll(const std::string& description) const {
  EventRecord rec;
  rec.description = description;
  for (const auto& [prefix, ll] : leaves_) {
    (void)ll;
    PrefixOutcome out;
    out.prefix = prefix;
    if (MetaSet::SetPtr set = meta_.setFor(prefix)) {
      if (const OprItem* top = set->topItem()) {
        out.dataplane = topo_.nodeName(top->gateway);
        out.alpha = top->alpha;
      }
    }
    if (std::optional<Route> best = oracleBest(prefix, rib_, dist_, opts_.medMode))
      out.oracle = topo_.nodeName(best->gateway);
    out.mismatch = out.dataplane != out.oracle;
    if (out.mismatch) ++rec.mismatches;
    rec.prefixes.push_back(std::move(out));
  }
  rec.metaSize = meta_.size();
  fillHistogram(rec);
  return rec;
}

std::optional<NodeId> Engine::dataplaneGateway(const std::string& prefix) const {
  if (MetaSet::SetPtr set = meta_.setFor(prefix))
    if (const OprItem* top = set->topItem()) return top->gateway;
  return std::nullopt;
}

std::optional<Dist> Engine::dataplaneAlpha(const std::string& prefix) const {
  if (MetaSet::SetPtr set = meta_.setFor(prefix))
    if (const OprItem* top = set->topItem()) return top->alpha;
  return std::nullopt;
}

void writeReport(std::ostream& out, const RunReport& report) {
  for (const EventRecord& rec : report.records) {
    out << "== " << rec.description << "\n";
    for (const PrefixOutcome& p : rec.prefixes) {
      out << "prefix " << p.prefix << " dataplane="
          << (p.dataplane ? *p.dataplane : std::string("-"));
      if (p.alpha) out << " alpha=" << *p.alpha;
      out << " oracle=" << (p.oracle ? *p.oracle : std::string("-"))
          << (p.mismatch ? " MISMATCH" : " ok") << "\n";
    }
    out << "sets walked=" << rec.setsWalked
        << " recomputed=" << rec.setsRecomputed << " stored=" << rec.metaSize
        << " sizes={";
    bool first = true;
    for (const auto& [size, count] : rec.sizeHistogram) {
      if (!first) out << ",";
      first = false;
      out << size << ":" << count;
    }
    out << "} mismatches=" << rec.mismatches << "\n";
  }
  out << "summary records=" << report.records.size()
      << " checks=" << report.totalChecks
      << " mismatches=" << report.totalMismatches
      << " extracts-after-bootstrap=" << report.extractCallsAfterBootstrap
      << "\n";
  out << "RESULT " << (report.pass ? "PASS" : "FAIL") << "\n";
}

std::string ScenarioEvent::describe() const {
  switch (kind) {
    case Kind::Igp:
      return igp.describe();
    case Kind::BgpAdd:
      return "bgp-add " + prefix + " " + gateway;
    case Kind::BgpWithdraw:
      return "bgp-withdraw " + prefix + " " + gateway + " " +
             std::to_string(originAs);
  }
  return {};
}

std::vector<ScenarioEvent> parseScenario(std::istream& in, const Topology& topo,
                                         const std::string& sourceName) {
  std::vector<ScenarioEvent> events;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::vector<std::string> tokens = splitTokens(line);
    if (tokens.empty()) continue;
    if (tokens[0] != "event")
      throw ParseError(sourceName, lineNo,
                       "expected 'event', got '" + tokens[0] + "'");
    if (tokens.size() < 2)
      throw ParseError(sourceName, lineNo, "missing event kind");
    const std::string& kind = tokens[1];
    auto needArgs = [&](std::size_t n) {
      if (tokens.size() != n + 2)
        throw ParseError(sourceName, lineNo,
                         "'" + kind + "' expects " + std::to_string(n) +
                             " argument(s)");
    };
    ScenarioEvent ev;
    if (kind == "weight") {
      needArgs(3);
      ev.igp = {EventKind::WeightChange, tokens[2], tokens[3],
                parseUnsigned(tokens[4], sourceName, lineNo, "weight")};
    } else if (kind == "link-down") {
      needArgs(2);
      ev.igp = {EventKind::LinkDown, tokens[2], tokens[3], 1};
    } else if (kind == "link-up") {
      needArgs(3);
      ev.igp = {EventKind::LinkUp, tokens[2], tokens[3],
                parseUnsigned(tokens[4], sourceName, lineNo, "weight")};
    } else if (kind == "node-down") {
      needArgs(1);
      ev.igp = {EventKind::NodeDown, tokens[2], "", 1};
    } else if (kind == "node-up") {
      needArgs(1);
      ev.igp = {EventKind::NodeUp, tokens[2], "", 1};
    } else if (kind == "bgp-add") {
      ev.kind = ScenarioEvent::Kind::BgpAdd;
      std::string routeLine = "route";
      for (std::size_t i = 2; i < tokens.size(); ++i)
        routeLine += " " + tokens[i];
      ev.route = parseRouteLine(routeLine, topo, sourceName, lineNo);
      ev.prefix = ev.route.prefix;
      ev.gateway = topo.nodeName(ev.route.gateway);
    } else if (kind == "bgp-withdraw") {
      needArgs(3);
      ev.kind = ScenarioEvent::Kind::BgpWithdraw;
      ev.prefix = tokens[2];
      ev.gateway = tokens[3];
      ev.originAs = static_cast<std::uint32_t>(
          parseUnsigned(tokens[4], sourceName, lineNo, "origin AS"));
    } else {
      throw ParseError(sourceName, lineNo, "unknown event kind '" + kind + "'");
    }
    events.push_back(std::move(ev));
  }
  return events;
}

std::vector<ScenarioEvent> parseScenarioFile(const std::string& path,
                                             const Topology& topo) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file '" + path + "'");
  return parseScenario(in, topo, path);
}

RunReport runScenario(Topology topo, const Rib& rib,
                      const std::vector<ScenarioEvent>& events,
                      const EngineOptions& opts) {
  Engine eng(std::move(topo), opts);
  eng.loadRib(rib);
  RunReport report;
  report.records.push_back(eng.checkAll("bootstrap"));
  for (const ScenarioEvent& ev : events) {
    switch (ev.kind) {
      case ScenarioEvent::Kind::Igp:
        report.records.push_back(eng.igpChange(ev.igp));
        break;
      case ScenarioEvent::Kind::BgpAdd:
        eng.bgpAdd(ev.route);
        report.records.push_back(eng.checkAll(ev.describe()));
        break;
      case ScenarioEvent::Kind::BgpWithdraw:
        eng.bgpWithdraw(ev.prefix, ev.gateway, ev.originAs);
        report.records.push_back(eng.checkAll(ev.describe()));
        break;
    }
  }
  for (const EventRecord& rec : report.records) {
    report.totalChecks += rec.prefixes.size();
    report.totalMismatches += rec.mismatches;
  }
  report.extractCallsAfterBootstrap = eng.stats().extractCallsAfterBootstrap;
  report.pass = report.totalMismatches == 0;
  return report;
}

namespace {

std::uint64_t drawBelow(std::mt19937_64& rng, std::uint64_t n) {
  return n ? rng() % n : 0;
}

std::vector<std::uint32_t> sampleDistinct(std::mt19937_64& rng, std::uint32_t n,
                                          std::uint32_t k) {
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  for (std::uint32_t i = 0; i < k && i < n; ++i)
    std::swap(idx[i], idx[i + drawBelow(rng, n - i)]);
  idx.resize(std::min(k, n));
  return idx;
}

// The internal backbone must survive the loss of any single router.
bool backboneBiconnected(const Topology& topo) {
  std::vector<NodeId> internals;
  for (NodeId id = 0; id < topo.nodeCount(); ++id)
    if (!topo.node(id).external) internals.push_back(id);
  if (internals.size() < 3) return false;
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const Link& l : topo.links()) {
    if (!l.up || l.directed) continue;
    if (topo.node(l.u).external || topo.node(l.v).external) continue;
    adj[l.u].push_back(l.v);
    adj[l.v].push_back(l.u);
  }
  for (NodeId removed : internals) {
    NodeId start = internals[0] == removed ? internals[1] : internals[0];
    std::set<NodeId> seen{start};
    std::vector<NodeId> queue{start};
    while (!queue.empty()) {
      NodeId cur = queue.back();
      queue.pop_back();
      for (NodeId next : adj[cur]) {
        if (next == removed || seen.count(next)) continue;
        seen.insert(next);
        queue.push_back(next);
      }
    }
    if (seen.size() != internals.size() - 1) return false;
  }
  return true;
}

}  // namespace

std::pair<Topology, Rib> generateInstance(const RandomModelParams& params) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> classes = params.classes;
  if (classes.empty()) classes.emplace_back(params.gateways, params.prefixes);
  std::uint32_t totalGws = 0;
  for (const auto& [b, p] : classes) {
    (void)p;
    totalGws += b;
  }
  if (totalGws == 0) throw ParameterError("instance needs at least one gateway");
  if (params.spread == 0)
    throw ParameterError("preference spread must be positive");

  std::mt19937_64 rng(params.seed);
  Topology topo;
  std::uint32_t internals =
      std::clamp<std::uint32_t>(totalGws / 2, 4u, 128u);
  for (std::uint32_t i = 0; i < internals; ++i)
    topo.addNode("r" + std::to_string(i));
  topo.setVantage("r0");
  for (std::uint32_t i = 0; i < internals; ++i)
    topo.addLink("r" + std::to_string(i),
                 "r" + std::to_string((i + 1) % internals),
                 1 + drawBelow(rng, 3));
  for (std::uint32_t c = 0; c < internals / 3; ++c) {
    std::uint32_t u = static_cast<std::uint32_t>(drawBelow(rng, internals));
    std::uint32_t v = static_cast<std::uint32_t>(drawBelow(rng, internals));
    if (u == v) continue;
    topo.addLink("r" + std::to_string(u), "r" + std::to_string(v),
                 1 + drawBelow(rng, 3));
  }

  // Every gateway is dual-homed so any pair of them is always protectable.
  std::vector<NodeId> gwNodes;
  for (std::uint32_t g = 0; g < totalGws; ++g) {
    std::string name = "g" + std::to_string(g);
    gwNodes.push_back(topo.addNode(name, /*external=*/true));
    std::uint32_t a = static_cast<std::uint32_t>(drawBelow(rng, internals));
    std::uint32_t b =
        (a + 1 + static_cast<std::uint32_t>(drawBelow(rng, internals - 1))) %
        internals;
    topo.addLink(name, "r" + std::to_string(a), 1 + drawBelow(rng, 3));
    topo.addLink(name, "r" + std::to_string(b), 1 + drawBelow(rng, 3));
  }
  topo.validate();
  if (!backboneBiconnected(topo))
    throw StructuralError("generated backbone is not 2-connected");

  Rib rib;
  std::uint32_t classBase = 0;
  std::uint32_t prefixId = 0;
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    auto [classGws, classPrefixes] = classes[ci];
    std::uint32_t perPrefix = std::min(params.perPrefix, classGws);
    std::int32_t localPref =
        100 + 10 * static_cast<std::int32_t>(classes.size() - 1 - ci);
    if (perPrefix == 0) {
      classBase += classGws;
      continue;
    }
    for (std::uint32_t k = 0; k < classPrefixes; ++k) {
      std::string prefix = "p" + std::to_string(prefixId++);
      for (std::uint32_t idx : sampleDistinct(rng, classGws, perPrefix)) {
        Route r;
        r.prefix = prefix;
        r.gateway = gwNodes[classBase + idx];
        r.routerId = r.gateway;
        r.beta.localPref = localPref;
        r.beta.asPathLen =
            1 + static_cast<std::uint32_t>(drawBelow(rng, params.spread));
        r.beta.origin = Origin::Igp;
        r.beta.originAs = 64000 + classBase + idx;
        rib.add(r);
      }
    }
    classBase += classGws;
  }
  return {std::move(topo), std::move(rib)};
}

namespace {

struct FuzzCase {
  Topology topo;
  Rib rib;
  IgpEvent event;
  std::string summary;
};

FuzzCase makeFuzzCase(std::uint64_t seed, bool weightOnly) {
  std::mt19937_64 rng(seed);
  FuzzCase fc;
  std::uint32_t internals = 8 + static_cast<std::uint32_t>(drawBelow(rng, 33));
  std::uint32_t gws = 3 + static_cast<std::uint32_t>(drawBelow(rng, 8));
  std::uint32_t prefixes = 20 + static_cast<std::uint32_t>(drawBelow(rng, 181));

  for (std::uint32_t i = 0; i < internals; ++i)
    fc.topo.addNode("r" + std::to_string(i));
  fc.topo.setVantage("r0");
  // A ring keeps the backbone 2-connected; chords add path diversity.
  for (std::uint32_t i = 0; i < internals; ++i)
    fc.topo.addLink("r" + std::to_string(i),
                    "r" + std::to_string((i + 1) % internals),
                    1 + drawBelow(rng, 10));
  for (std::uint32_t c = 0; c < internals / 2; ++c) {
    std::uint32_t u = static_cast<std::uint32_t>(drawBelow(rng, internals));
    std::uint32_t v = static_cast<std::uint32_t>(drawBelow(rng, internals));
    if (u == v) continue;
    fc.topo.addLink("r" + std::to_string(u), "r" + std::to_string(v),
                    1 + drawBelow(rng, 10));
  }

  std::vector<NodeId> gwNodes;
  for (std::uint32_t g = 0; g < gws; ++g) {
    std::string name = "g" + std::to_string(g);
    gwNodes.push_back(fc.topo.addNode(name, /*external=*/true));
    std::uint32_t attachments = 1 + static_cast<std::uint32_t>(drawBelow(rng, 2));
    std::vector<std::uint32_t> hosts = sampleDistinct(rng, internals, attachments);
    for (std::uint32_t h : hosts)
      fc.topo.addLink(name, "r" + std::to_string(h), 1 + drawBelow(rng, 10));
  }
  fc.topo.validate();
  if (!backboneBiconnected(fc.topo))
    throw StructuralError("generated backbone is not 2-connected");

  static const std::int32_t kLocalPrefs[] = {100, 100, 80, 60};
  for (std::uint32_t k = 0; k < prefixes; ++k) {
    std::string prefix = "p" + std::to_string(k);
    std::uint32_t want =
        2 + static_cast<std::uint32_t>(
                drawBelow(rng, std::min<std::uint32_t>(6, gws) - 1));
    std::vector<std::uint32_t> picked = sampleDistinct(rng, gws, want);
    // Some prefixes get a cluster of routes from one AS so MED ordering and
    // chain truncation actually trigger.
    bool medCluster = picked.size() >= 2 && drawBelow(rng, 10) < 4;
    std::size_t clusterCount =
        medCluster ? 2 + drawBelow(rng, picked.size() - 1) : 0;
    std::uint32_t clusterAs =
        65000 + static_cast<std::uint32_t>(drawBelow(rng, 50));
    for (std::size_t t = 0; t < picked.size(); ++t) {
      Route r;
      r.prefix = prefix;
      r.gateway = gwNodes[picked[t]];
      r.routerId = drawBelow(rng, 10) < 2
                       ? 1 + static_cast<std::uint32_t>(drawBelow(rng, 5))
                       : r.gateway;
      r.beta.localPref = kLocalPrefs[drawBelow(rng, 4)];
      r.beta.asPathLen = 1 + static_cast<std::uint32_t>(drawBelow(rng, 5));
      r.beta.origin = static_cast<Origin>(drawBelow(rng, 3));
      if (t < clusterCount) {
        r.beta.originAs = clusterAs;
        r.beta.med = static_cast<std::uint32_t>(drawBelow(rng, 51));
      } else {
        r.beta.originAs =
            64000 + k * 16 + static_cast<std::uint32_t>(t);
        if (drawBelow(rng, 10) < 3)
          r.beta.med = static_cast<std::uint32_t>(drawBelow(rng, 51));
      }
      if (drawBelow(rng, 20) == 0) r.ebgpLocal = true;
      fc.rib.add(r);
    }
  }

  const std::vector<Link>& links = fc.topo.links();
  auto randomLink = [&]() -> const Link& {
    while (true) {
      const Link& l = links[drawBelow(rng, links.size())];
      if (l.up) return l;
    }
  };
  std::uint64_t roll = weightOnly ? 0 : drawBelow(rng, 10);
  if (roll < 4) {
    const Link& l = randomLink();
    fc.event = {EventKind::WeightChange, fc.topo.nodeName(l.u),
                fc.topo.nodeName(l.v), 1 + drawBelow(rng, 10)};
  } else if (roll < 7) {
    const Link& l = randomLink();
    fc.event = {EventKind::LinkDown, fc.topo.nodeName(l.u),
                fc.topo.nodeName(l.v), 1};
  } else {
    // Any node but the vantage, gateways included.
    NodeId victim =
        1 + static_cast<NodeId>(drawBelow(rng, fc.topo.nodeCount() - 1));
    fc.event = {EventKind::NodeDown, fc.topo.nodeName(victim), "", 1};
  }

  std::ostringstream os;
  os << "seed=" << seed << " internals=" << internals << " gateways=" << gws
     << " prefixes=" << prefixes << " event=" << fc.event.describe();
  fc.summary = os.str();
  return fc;
}

struct CaseOutcome {
  std::size_t checks = 0;
  std::size_t mismatches = 0;
  std::size_t extractsAfterBootstrap = 0;
  std::string summary;
};

CaseOutcome runFuzzCase(std::uint64_t seed, const EngineOptions& opts,
                        bool weightOnly) {
  CaseOutcome out;
  try {
    FuzzCase fc = makeFuzzCase(seed, weightOnly);
    out.summary = fc.summary;
    Engine eng(std::move(fc.topo), opts);
    eng.loadRib(fc.rib);
    EventRecord boot = eng.checkAll("bootstrap");
    out.checks += boot.prefixes.size();
    out.mismatches += boot.mismatches;
    EventRecord rec = eng.igpChange(fc.event);
    out.checks += rec.prefixes.size();
    out.mismatches += rec.mismatches;
    out.extractsAfterBootstrap = eng.stats().extractCallsAfterBootstrap;
  } catch (const std::exception& e) {
    out.mismatches += 1;
    out.summary += std::string(" exception: ") + e.what();
  }
  return out;
}

}  // namespace

FuzzSummary runFuzz(const FuzzParams& params) {
  std::vector<CaseOutcome> outcomes(params.cases);
  unsigned jobs = std::max(1u, params.jobs);
  if (params.cases > 0)
    jobs = static_cast<unsigned>(
        std::min<std::size_t>(jobs, params.cases));
  auto worker = [&](unsigned w) {
    for (std::size_t i = w; i < params.cases; i += jobs)
      outcomes[i] =
          runFuzzCase(params.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)),
                      params.options, params.weightOnly);
  };
  if (jobs <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (std::thread& t : threads) t.join();
  }

  FuzzSummary summary;
  summary.cases = params.cases;
  for (const CaseOutcome& o : outcomes) {
    summary.totalChecks += o.checks;
    summary.mismatches += o.mismatches;
    summary.extractCallsAfterBootstrap += o.extractsAfterBootstrap;
    if (o.mismatches > 0 && summary.failures.size() < 5)
      summary.failures.push_back(o.summary);
  }
  summary.pass = summary.mismatches == 0;
  return summary;
}

}  // namespace optic
