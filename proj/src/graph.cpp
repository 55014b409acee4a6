#include "optic/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

namespace optic {

std::string IgpEvent::describe() const {
  switch (kind) {
    case EventKind::WeightChange:
      return "weight " + a + " " + b + " " + std::to_string(weight);
    case EventKind::LinkDown:
      return "link-down " + a + " " + b;
    case EventKind::LinkUp:
      return "link-up " + a + " " + b + " " + std::to_string(weight);
    case EventKind::NodeDown:
      return "node-down " + a;
    case EventKind::NodeUp:
      return "node-up " + a;
  }
  return "?";
}

NodeId Topology::addNode(const std::string& name, bool external) {
  if (byName_.count(name))
    throw ConflictError("duplicate node '" + name + "'");
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{name, external, true});
  byName_.emplace(name, id);
  return id;
}

void Topology::addLink(const std::string& u, const std::string& v, Weight w,
                       bool directed) {
  NodeId a = nodeId(u);
  NodeId b = nodeId(v);
  if (a == b) throw StructuralError("self loop on node '" + u + "'");
  if (w == 0 || w == kInfWeight)
    throw StructuralError("link weight must be a positive finite integer");
  links_.push_back(Link{a, b, w, directed, true});
}

void Topology::setVantage(const std::string& name) {
  vantage_ = nodeId(name);
}

std::optional<NodeId> Topology::findNode(const std::string& name) const {
  auto it = byName_.find(name);
  if (it == byName_.end()) return std::nullopt;
  return it->second;
}

NodeId Topology::nodeId(const std::string& name) const {
  auto it = byName_.find(name);
  if (it == byName_.end()) throw NotFoundError("unknown node '" + name + "'");
  return it->second;
}

NodeId Topology::vantage() const {
  if (!vantage_) throw StructuralError("no vantage defined");
  return *vantage_;
}

Weight Topology::effectiveWeight(const Link& l) const {
  if (!l.up || !nodes_[l.u].up || !nodes_[l.v].up) return kInfWeight;
  return l.weight;
}

void Topology::validate() const {
  if (!vantage_) throw StructuralError("no vantage defined");
  if (nodes_[*vantage_].external)
    throw StructuralError("vantage must be an internal node");
  for (const Link& l : links_) {
    if (l.weight == 0 || l.weight == kInfWeight)
      throw StructuralError("link weight must be a positive finite integer");
    if (l.u == l.v) throw StructuralError("self loop");
  }
}

Link* Topology::findLink(NodeId u, NodeId v) {
  for (Link& l : links_) {
    if (l.directed) {
      if (l.u == u && l.v == v) return &l;
    } else if ((l.u == u && l.v == v) || (l.u == v && l.v == u)) {
      return &l;
    }
  }
  return nullptr;
}

void Topology::insertLink(NodeId u, NodeId v, Weight w, bool directed, bool up) {
  links_.push_back(Link{u, v, w, directed, up});
}

DistanceMap spf(const Topology& topo) {
  const std::size_t n = topo.nodeCount();
  DistanceMap out;
  out.dist.assign(n, kInfDist);

  struct Arc {
    NodeId to;
    Weight w;
  };
  std::vector<std::vector<Arc>> adj(n);
  for (const Link& l : topo.links()) {
    Weight w = topo.effectiveWeight(l);
    if (w == kInfWeight) continue;
    adj[l.u].push_back({l.v, w});
    if (!l.directed) adj[l.v].push_back({l.u, w});
  }

  using Item = std::pair<Dist, NodeId>;  // ordered pair makes pops canonical
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  NodeId s = topo.vantage();
  out.dist[s] = 0;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != out.dist[u]) continue;
    for (const Arc& arc : adj[u]) {
      Dist nd = addDist(d, arc.w);
      if (nd < out.dist[arc.to]) {
        out.dist[arc.to] = nd;
        pq.push({nd, arc.to});
      }
    }
  }
  return out;
}

Topology applyEvent(Topology topo, const IgpEvent& ev) {
  switch (ev.kind) {
    case EventKind::WeightChange: {
      Link* l = topo.findLink(topo.nodeId(ev.a), topo.nodeId(ev.b));
      if (!l)
        throw NotFoundError("no link " + ev.a + " -- " + ev.b);
      if (ev.weight == 0 || ev.weight == kInfWeight)
        throw StructuralError("weight-change requires a positive finite weight");
      l->weight = ev.weight;
      break;
    }
    case EventKind::LinkDown: {
      Link* l = topo.findLink(topo.nodeId(ev.a), topo.nodeId(ev.b));
      if (!l)
        throw NotFoundError("no link " + ev.a + " -- " + ev.b);
      if (!l->up)
        throw StructuralError("link " + ev.a + " -- " + ev.b + " already down");
      l->up = false;
      break;
    }
    case EventKind::LinkUp: {
      NodeId u = topo.nodeId(ev.a);
      NodeId v = topo.nodeId(ev.b);
      if (ev.weight == 0 || ev.weight == kInfWeight)
        throw StructuralError("link-up requires a positive finite weight");
      if (Link* l = topo.findLink(u, v)) {
        if (l->up)
          throw StructuralError("link " + ev.a + " -- " + ev.b + " already up");
        l->up = true;
        l->weight = ev.weight;
      } else {
        topo.insertLink(u, v, ev.weight, false, true);
      }
      break;
    }
    case EventKind::NodeDown: {
      NodeId id = topo.nodeId(ev.a);
      if (id == topo.vantage())
        throw StructuralError("vantage failure is out of scope");
      Node& nd = topo.mutableNode(id);
      if (!nd.up) throw StructuralError("node " + ev.a + " already down");
      nd.up = false;
      break;
    }
    case EventKind::NodeUp: {
      Node& nd = topo.mutableNode(topo.nodeId(ev.a));
      if (nd.up) throw StructuralError("node " + ev.a + " already up");
      nd.up = true;
      break;
    }
  }
  return topo;
}

namespace {

// Unit-capacity max-flow (Dinic) on the node-split graph, early exit at 2.
class FlowNet {
 public:
  explicit FlowNet(int n) : head_(n, -1) {}

  void addArc(int from, int to, int cap) {
    arcs_.push_back({to, head_[from], cap});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  int maxflowUpTo(int s, int t, int limit) {
    int flow = 0;
    while (flow < limit && bfs(s, t)) {
      it_ = head_;
      while (flow < limit) {
        int pushed = dfs(s, t, 1);
        if (pushed == 0) break;
        flow += pushed;
      }
    }
    return flow;
  }

 private:
  struct Arc {
    int to;
    int next;
    int cap;
  };

  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = arcs_[e].next) {
        if (arcs_[e].cap > 0 && level_[arcs_[e].to] < 0) {
          level_[arcs_[e].to] = level_[u] + 1;
          q.push(arcs_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  int dfs(int u, int t, int pushed) {
    if (u == t) return pushed;
    for (int& e = it_[u]; e != -1; e = arcs_[e].next) {
      Arc& a = arcs_[e];
      if (a.cap > 0 && level_[a.to] == level_[u] + 1) {
        int got = dfs(a.to, t, std::min(pushed, a.cap));
        if (got > 0) {
          a.cap -= got;
          arcs_[e ^ 1].cap += got;
          return got;
        }
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace

bool twoDisjointPaths(const Topology& topo,
                      const std::vector<NodeId>& gateways) {
  if (gateways.empty()) return false;
  std::vector<NodeId> gws = gateways;
  std::sort(gws.begin(), gws.end());
  gws.erase(std::unique(gws.begin(), gws.end()), gws.end());

  const int n = static_cast<int>(topo.nodeCount());
  // in(x)=2x, out(x)=2x+1, virtual sink = 2n.
  FlowNet net(2 * n + 1);
  const int sink = 2 * n;
  NodeId s = topo.vantage();
  for (int x = 0; x < n; ++x)
    net.addArc(2 * x, 2 * x + 1, static_cast<NodeId>(x) == s ? 2 : 1);
  for (const Link& l : topo.links()) {
    if (topo.effectiveWeight(l) == kInfWeight) continue;
    net.addArc(2 * static_cast<int>(l.u) + 1, 2 * static_cast<int>(l.v), 1);
    if (!l.directed)
      net.addArc(2 * static_cast<int>(l.v) + 1, 2 * static_cast<int>(l.u), 1);
  }
  for (NodeId g : gws) {
    if (g >= topo.nodeCount()) throw NotFoundError("gateway node out of range");
    net.addArc(2 * static_cast<int>(g) + 1, sink, 1);
  }
  return net.maxflowUpTo(2 * static_cast<int>(s) + 1, sink, 2) >= 2;
}

namespace {

std::vector<std::string> splitTokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

Weight parseWeight(const std::string& tok, const std::string& src, int line) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    if (v == 0 || v >= kInfWeight)
      throw ParseError(src, line, "weight must be a positive finite integer");
    return static_cast<Weight>(v);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(src, line, "bad weight '" + tok + "'");
  }
}

}  // namespace

Topology parseTopology(std::istream& in, const std::string& sourceName) {
  Topology topo;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    auto toks = splitTokens(line);
    if (toks.empty()) continue;
    try {
      if (toks[0] == "node") {
        if (toks.size() < 2 || toks.size() > 3)
          throw ParseError(sourceName, lineNo, "usage: node <id> [external]");
        bool ext = false;
        if (toks.size() == 3) {
          if (toks[2] != "external")
            throw ParseError(sourceName, lineNo,
                             "unknown node flag '" + toks[2] + "'");
          ext = true;
        }
        topo.addNode(toks[1], ext);
      } else if (toks[0] == "edge") {
        if (toks.size() < 4 || toks.size() > 5)
          throw ParseError(sourceName, lineNo,
                           "usage: edge <u> <v> <weight> [directed]");
        bool directed = false;
        if (toks.size() == 5) {
          if (toks[4] != "directed")
            throw ParseError(sourceName, lineNo,
                             "unknown edge flag '" + toks[4] + "'");
          directed = true;
        }
        topo.addLink(toks[1], toks[2], parseWeight(toks[3], sourceName, lineNo),
                     directed);
      } else if (toks[0] == "vantage") {
        if (toks.size() != 2)
          throw ParseError(sourceName, lineNo, "usage: vantage <id>");
        topo.setVantage(toks[1]);
      } else {
        throw ParseError(sourceName, lineNo,
                         "unknown directive '" + toks[0] + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(sourceName, lineNo, e.what());
    }
  }
  topo.validate();
  return topo;
}

Topology parseTopologyFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open topology file '" + path + "'");
  return parseTopology(in, path);
}

}  // namespace optic
