#include "optic/data_plane.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

#include "optic/control_plane.hpp"

namespace optic {

std::size_t OprSet::gatewayCount() const { return gateways().size(); }

std::vector<NodeId> OprSet::gateways() const {
  std::vector<NodeId> out;
  for (const OprEntry& e : entries)
    for (const OprItem& item : e.items) out.push_back(item.gateway);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const OprItem* OprSet::topItem() const {
  if (topEntry < 0 || topEntry >= static_cast<int>(entries.size()))
    return nullptr;
  const OprEntry& e = entries[topEntry];
  if (e.topIdx < 0) return nullptr;
  return &e.items[e.topIdx];
}

namespace {

void putU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

void putU8(std::string& out, std::uint8_t v) {
  out.push_back(static_cast<char>(v));
}

}  // namespace

std::string canonicalEncode(const OprSet& set) {
  std::vector<const OprEntry*> order;
  for (const OprEntry& e : set.entries) order.push_back(&e);
  std::sort(order.begin(), order.end(),
            [](const OprEntry* a, const OprEntry* b) {
              return std::tie(a->leafRank, a->originAs, a->chainDisc) <
                     std::tie(b->leafRank, b->originAs, b->chainDisc);
            });
  std::string out;
  for (const OprEntry* e : order) {
    putU32(out, e->leafRank);
    putU32(out, e->originAs);
    putU32(out, e->chainDisc);
    putU8(out, e->truncated ? 1 : 0);
    putU32(out, static_cast<std::uint32_t>(e->items.size()));
    for (const OprItem& item : e->items) {
      putU32(out, item.gateway);
      putU32(out, item.routerId);
      putU8(out, item.ebgpLocal ? 1 : 0);
      putU32(out, static_cast<std::uint32_t>(item.localPref));
      putU32(out, item.asPathLen);
      putU8(out, item.origin);
      putU8(out, item.hasMed ? 1 : 0);
      putU32(out, item.med);
    }
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t hashOpr(const OprSet& set) {
  return fnv1a64(canonicalEncode(set));
}

RefreshOutcome refreshAlphas(OprSet& set, const DistanceMap& dist) {
  RefreshOutcome out;
  bool anyHead = false;
  for (OprEntry& e : set.entries) {
    e.topIdx = -1;
    for (std::size_t i = 0; i < e.items.size(); ++i) {
      OprItem& item = e.items[i];
      Dist d = dist.at(item.gateway);
      item.alpha = (d == kInfDist) ? kInfDist : (item.ebgpLocal ? 0 : d);
      if (item.alpha != kInfDist && e.topIdx < 0)
        e.topIdx = static_cast<int>(i);
    }
    if (e.topIdx >= 0)
      anyHead = true;
    else if (e.truncated)
      out.truncatedHeadDied = true;
  }
  out.exhausted = !set.entries.empty() && !anyHead;
  return out;
}

std::optional<NodeId> minSearch(OprSet& set, const DistanceMap& dist) {
  (void)dist;  // alphas are cached by refreshAlphas
  set.topEntry = -1;
  std::tuple<std::uint32_t, Dist, std::uint32_t, std::uint32_t, NodeId> best{};
  for (std::size_t i = 0; i < set.entries.size(); ++i) {
    const OprEntry& e = set.entries[i];
    if (e.topIdx < 0) continue;  // exhausted chains never compete
    const OprItem& head = e.items[e.topIdx];
    auto key = std::make_tuple(e.leafRank, head.alpha, head.routerId,
                               e.originAs, head.gateway);
    if (set.topEntry < 0 || key < best) {
      best = key;
      set.topEntry = static_cast<int>(i);
    }
  }
  if (set.topEntry < 0) return std::nullopt;
  return set.entries[set.topEntry].items[set.entries[set.topEntry].topIdx]
      .gateway;
}

MetaSet::SetPtr MetaSet::intern(OprSet&& candidate) {
  candidate.canon = canonicalEncode(candidate);
  candidate.hash = fnv1a64(candidate.canon);
  auto& bucket = table_[candidate.hash];
  for (const SetPtr& existing : bucket)
    if (existing->canon == candidate.canon) {
      // Protection metadata reflects the latest extraction; the canonical
      // content stays untouched.
      existing->xUsed = candidate.xUsed;
      existing->unprotected = candidate.unprotected;
      return existing;
    }
  SetPtr stored = std::make_shared<OprSet>(std::move(candidate));
  stored->prefixCount = 0;
  bucket.push_back(stored);
  ++setCount_;
  return stored;
}

void MetaSet::bind(const std::string& prefix, const SetPtr& set) {
  auto it = pbgp_.find(prefix);
  SetPtr old;
  if (it != pbgp_.end()) old = it->second;
  pbgp_[prefix] = set;
  set->prefixCount += 1;
  if (old) {
    old->prefixCount -= 1;
    if (old->prefixCount == 0 && !retainUnused_ && old != set) {
      auto bit = table_.find(old->hash);
      if (bit != table_.end()) {
        auto& bucket = bit->second;
        bucket.erase(std::remove(bucket.begin(), bucket.end(), old),
                     bucket.end());
        if (bucket.empty()) table_.erase(bit);
        --setCount_;
      }
    }
  }
}

void MetaSet::unbind(const std::string& prefix) {
  auto it = pbgp_.find(prefix);
  if (it == pbgp_.end()) return;
  SetPtr old = it->second;
  pbgp_.erase(it);
  old->prefixCount -= 1;
  if (old->prefixCount == 0 && !retainUnused_) {
    auto bit = table_.find(old->hash);
    if (bit != table_.end()) {
      auto& bucket = bit->second;
      bucket.erase(std::remove(bucket.begin(), bucket.end(), old),
                   bucket.end());
      if (bucket.empty()) table_.erase(bit);
      --setCount_;
    }
  }
}

MetaSet::SetPtr MetaSet::setFor(const std::string& prefix) const {
  auto it = pbgp_.find(prefix);
  return it == pbgp_.end() ? nullptr : it->second;
}

std::optional<std::uint64_t> MetaSet::hashFor(const std::string& prefix) const {
  auto it = pbgp_.find(prefix);
  if (it == pbgp_.end()) return std::nullopt;
  return it->second->hash;
}

std::vector<std::string> MetaSet::prefixesUsing(std::uint64_t hash) const {
  std::vector<std::string> out;
  for (const auto& [prefix, set] : pbgp_)
    if (set->hash == hash) out.push_back(prefix);
  return out;
}

void MetaSet::dump(std::ostream& out, const Topology& topo) const {
  for (const auto& [hash, bucket] : table_) {
    for (const SetPtr& set : bucket) {
      out << "opr " << std::hex << set->hash << std::dec << " size="
          << set->gatewayCount();
      const OprItem* top = set->topItem();
      out << " top=" << (top ? topo.nodeName(top->gateway) : "-");
      out << " prefixes=" << set->prefixCount;
      if (set->unprotected) out << " unprotected";
      out << "\n";
    }
  }
}

std::optional<std::uint64_t> updateOpr(const LeafList& leaves, MetaSet& meta,
                                       const std::string& prefix,
                                       const Topology& topo,
                                       const DistanceMap& dist,
                                       const ExtractOptions& opts) {
  if (leaves.empty()) {
    meta.unbind(prefix);
    return std::nullopt;
  }
  OprSet fresh = extractOpr(leaves, topo, dist, opts);
  refreshAlphas(fresh, dist);
  minSearch(fresh, dist);
  MetaSet::SetPtr stored = meta.intern(std::move(fresh));
  // A shared set's cached state must reflect the latest distances.
  refreshAlphas(*stored, dist);
  minSearch(*stored, dist);
  meta.bind(prefix, stored);
  return stored->hash;
}

}  // namespace optic
