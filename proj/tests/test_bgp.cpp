#include <sstream>

#include "doctest.h"
#include "optic/bgp.hpp"
#include "optic/graph.hpp"
#include "oracles.hpp"

using namespace optic;

namespace {

Topology example() { return parseTopologyFile(testutil::dataPath("fig2.topo")); }

Route mkRoute(const Topology& topo, const char* prefix, const char* gw,
              std::int32_t lp, std::uint32_t aspl, Origin origin,
              std::uint32_t as, std::optional<std::uint32_t> med = {}) {
  Route r;
  r.prefix = prefix;
  r.gateway = topo.nodeId(gw);
  r.routerId = r.gateway;
  r.beta = {lp, aspl, origin, med, as};
  return r;
}

}  // namespace

TEST_SUITE("bgp") {

TEST_CASE("attribute order prefers lp desc, then as-path, then origin") {
  BetaKey strong{200, 3, 1};
  BetaKey weakLp{100, 1, 0};
  CHECK(strong < weakLp);
  BetaKey shortPath{100, 1, 2};
  BetaKey longPath{100, 2, 0};
  CHECK(shortPath < longPath);
  BetaKey igp{100, 2, 0};
  BetaKey incomplete{100, 2, 2};
  CHECK(igp < incomplete);
  CHECK(igp == BetaKey{100, 2, 0});
}

TEST_CASE("distance tier attribute") {
  Topology topo = example();
  DistanceMap d = spf(topo);
  Route r = mkRoute(topo, "p", "n3", 100, 1, Origin::Igp, 1);
  CHECK(alphaOf(r, d) == 6);
  r.ebgpLocal = true;
  CHECK(alphaOf(r, d) == 0);
  Topology noD = applyEvent(example(), {EventKind::NodeDown, "d", "", 1});
  DistanceMap d2 = spf(noD);
  CHECK(alphaOf(r, d2) == kInfDist);  // local flag cannot resurrect it
}

TEST_CASE("decision picks the closest equally-preferred gateway") {
  Topology topo = example();
  Rib rib = parseRibFile(testutil::dataPath("fig2.rib"), topo);
  DistanceMap d = spf(topo);

  auto best = oracleBest("p", rib, d);
  REQUIRE(best.has_value());
  CHECK(topo.nodeName(best->gateway) == "n1");

  Topology post = applyEvent(example(), {EventKind::LinkDown, "a", "c", 1});
  DistanceMap d2 = spf(post);
  best = oracleBest("p", rib, d2);
  REQUIRE(best.has_value());
  CHECK(topo.nodeName(best->gateway) == "n3");
}

TEST_CASE("unreachable routes drop out before attribute comparison") {
  Topology topo = example();
  Rib rib;
  // n1 is strictly preferred but dies with node c; n3 must take over even
  // though its attributes are worse.
  rib.add(mkRoute(topo, "p", "n1", 200, 1, Origin::Igp, 10));
  rib.add(mkRoute(topo, "p", "n3", 100, 5, Origin::Incomplete, 30));
  DistanceMap d = spf(topo);
  auto best = oracleBest("p", rib, d);
  REQUIRE(best.has_value());
  CHECK(topo.nodeName(best->gateway) == "n1");

  Topology noC = applyEvent(example(), {EventKind::NodeDown, "c", "", 1});
  DistanceMap d2 = spf(noC);
  best = oracleBest("p", rib, d2);
  REQUIRE(best.has_value());
  CHECK(topo.nodeName(best->gateway) == "n3");

  Topology noCD = applyEvent(noC, {EventKind::NodeDown, "d", "", 1});
  CHECK(!oracleBest("p", rib, spf(noCD)).has_value());
}

TEST_CASE("med discriminates within one neighbor AS only") {
  Topology topo = example();
  DistanceMap d = spf(topo);
  Rib rib = parseRibFile(testutil::dataPath("fig2.rib"), topo);
  // n4 and n5 are equally far (5); the lower MED wins inside AS 400.
  auto best = oracleBest("q", rib, d);
  REQUIRE(best.has_value());
  CHECK(topo.nodeName(best->gateway) == "n4");

  // A higher-MED route still wins when it is the only survivor of its AS
  // and beats the other AS on distance.
  Rib rib2;
  rib2.add(mkRoute(topo, "q", "n4", 100, 1, Origin::Igp, 400, 10));   // alpha 5
  rib2.add(mkRoute(topo, "q", "n1", 100, 1, Origin::Igp, 400, 30));   // alpha 4
  rib2.add(mkRoute(topo, "q", "n3", 100, 1, Origin::Igp, 500, 99));   // alpha 6
  best = oracleBest("q", rib2, d);
  REQUIRE(best.has_value());
  // Inside AS 400 the med-10 route eliminates the closer med-30 one.
  CHECK(topo.nodeName(best->gateway) == "n4");
}

TEST_CASE("med elimination happens before distance comparison") {
  Topology topo = example();
  DistanceMap d = spf(topo);
  Rib rib;
  rib.add(mkRoute(topo, "p", "n1", 100, 1, Origin::Igp, 64, 50));  // alpha 4
  rib.add(mkRoute(topo, "p", "n3", 100, 1, Origin::Igp, 64, 20));  // alpha 6
  auto best = oracleBest("p", rib, d);
  REQUIRE(best.has_value());
  CHECK(topo.nodeName(best->gateway) == "n3");
}

TEST_CASE("missing med defaults to zero unless ignored") {
  Topology topo = example();
  DistanceMap d = spf(topo);
  Rib rib;
  rib.add(mkRoute(topo, "p", "n3", 100, 1, Origin::Igp, 64));       // no MED
  rib.add(mkRoute(topo, "p", "n1", 100, 1, Origin::Igp, 64, 10));   // MED 10

  auto best = oracleBest("p", rib, d, MedMode::DefaultZero);
  REQUIRE(best.has_value());
  CHECK(topo.nodeName(best->gateway) == "n3");  // med-less counts as 0

  best = oracleBest("p", rib, d, MedMode::Ignore);
  REQUIRE(best.has_value());
  CHECK(topo.nodeName(best->gateway) == "n1");  // separate groups, distance wins
}

TEST_CASE("router id breaks exact distance ties") {
  Topology topo = example();
  DistanceMap d = spf(topo);
  Rib rib;
  Route r4 = mkRoute(topo, "p", "n4", 100, 1, Origin::Igp, 1);  // alpha 5
  Route r5 = mkRoute(topo, "p", "n5", 100, 1, Origin::Igp, 2);  // alpha 5
  r4.routerId = 9;
  r5.routerId = 3;
  rib.add(r4);
  rib.add(r5);
  auto best = oracleBest("p", rib, d);
  REQUIRE(best.has_value());
  CHECK(topo.nodeName(best->gateway) == "n5");
}

TEST_CASE("rib rejects duplicates and missing removals") {
  Topology topo = example();
  Rib rib;
  rib.add(mkRoute(topo, "p", "n1", 100, 1, Origin::Igp, 7));
  CHECK_THROWS_AS(rib.add(mkRoute(topo, "p", "n1", 90, 9, Origin::Egp, 7)),
                  ConflictError);
  rib.add(mkRoute(topo, "p", "n1", 90, 9, Origin::Egp, 8));  // other AS is fine
  CHECK_THROWS_AS(rib.remove("x", topo.nodeId("n1"), 7), NotFoundError);
  CHECK_THROWS_AS(rib.remove("p", topo.nodeId("n2"), 7), NotFoundError);
  CHECK(rib.remove("p", topo.nodeId("n1"), 7).beta.localPref == 100);
  CHECK(rib.routesFor("p")->size() == 1);
  rib.remove("p", topo.nodeId("n1"), 8);
  CHECK(rib.routesFor("p") == nullptr);
  CHECK(rib.prefixCount() == 0);
}

TEST_CASE("route lines parse and validate") {
  Topology topo = example();
  Route r = parseRouteLine(
      "route p n2 lp=120 aspath=3 origin=2 med=7 as=65000 rid=42 ebgp-local",
      topo, "inline", 1);
  CHECK(r.prefix == "p");
  CHECK(r.gateway == topo.nodeId("n2"));
  CHECK(r.beta.localPref == 120);
  CHECK(r.beta.asPathLen == 3);
  CHECK(r.beta.origin == Origin::Incomplete);
  CHECK(r.beta.med == 7u);
  CHECK(r.beta.originAs == 65000);
  CHECK(r.routerId == 42);
  CHECK(r.ebgpLocal);

  Route plain = parseRouteLine("route p n2 lp=100 aspath=1 origin=0 as=1",
                               topo, "inline", 1);
  CHECK(!plain.beta.med.has_value());
  CHECK(plain.routerId == topo.nodeId("n2"));  // defaults to the gateway

  auto bad = [&](const std::string& line) {
    CHECK_THROWS_AS(parseRouteLine(line, topo, "inline", 3), ParseError);
  };
  bad("route p");                                        // too short
  bad("route p zz lp=1 aspath=1 origin=0 as=1");         // unknown gateway
  bad("route p n2 lp=1 aspath=1 origin=3 as=1");         // bad origin
  bad("route p n2 lp=1 aspath=1 origin=0");              // missing as=
  bad("route p n2 lp=1 aspath=x origin=0 as=1");         // bad number
  bad("route p n2 lp=1 aspath=1 origin=0 as=1 foo=2");   // unknown key
  bad("route p n2 lp=1 aspath=1 origin=0 as=1 bareword");
}

TEST_CASE("rib files track line numbers and duplicates") {
  Topology topo = example();
  std::istringstream dup(
      "route p n1 lp=100 aspath=1 origin=0 as=5\n"
      "route p n1 lp=90 aspath=2 origin=0 as=5\n");
  try {
    parseRib(dup, topo, "inline");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line_number == 2);
  }
  CHECK_THROWS_AS(parseRibFile("/nonexistent/rib", topo), NotFoundError);
}

}  // TEST_SUITE
