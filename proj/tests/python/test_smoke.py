"""End-to-end checks of the _optic extension module.

Runs under pytest or as a plain script; PYTHONPATH must point at the built
module and OPTIC_DATA_DIR at the bundled data directory.
"""

import os

import _optic


def data(name):
    return os.path.join(os.environ["OPTIC_DATA_DIR"], name)


def test_spf_distances():
    dist = _optic.spf_distances(data("fig2.topo"))
    assert dist["s"] == 0
    assert dist["a"] == 1
    assert dist["n1"] == 4
    assert dist["n3"] == 6


def test_two_disjoint_paths():
    topo = data("fig2.topo")
    assert _optic.two_disjoint_paths(topo, ["n1", "n2", "n3"])
    assert not _optic.two_disjoint_paths(topo, ["n1", "n2"])


def test_set_size_probability():
    p3 = _optic.set_size_probability(100, 100, 3, variant="plain")
    assert abs(p3 - 0.267) < 1e-3
    opt3 = _optic.set_size_probability(100, 100, 3)
    assert abs(opt3 - 0.097) < 1e-3


def test_expected_distinct_sets():
    sets = _optic.expected_distinct_sets(20, 10000)
    assert sets["total"] > 0
    assert set(sets["by_size"]) == {2, 3, 4, 5}
    plain = _optic.expected_distinct_sets(20, 10000, variant="plain")
    assert sets["total"] <= plain["total"]


def test_presets_and_bounds():
    names = _optic.table2_preset_names()
    assert names == ["stub", "tier4", "tier3", "large-tier3", "tier2", "tier1"]
    classes = _optic.table2_preset("stub")
    sets = _optic.class_expected_distinct_sets(classes)
    assert abs(sets["total"] - 3475.8) < 35
    assert sets["median"] == 4
    lower = _optic.lower_bound_distinct_sets(classes)
    assert abs(lower - 235.0) < 1e-6


def test_run_scenario():
    report = _optic.run_scenario(
        data("fig2.topo"), data("fig2.rib"), data("fig2.scenario"))
    assert report["pass"]
    assert report["total_mismatches"] == 0
    assert len(report["records"]) == 2
    assert report["records"][1]["sets_recomputed"] == 0
    pre = {p["prefix"]: p for p in report["records"][0]["prefixes"]}
    post = {p["prefix"]: p for p in report["records"][1]["prefixes"]}
    assert pre["p"]["dataplane"] == "n1" and pre["p"]["alpha"] == 4
    assert post["p"]["dataplane"] == "n3" and post["p"]["alpha"] == 6
    assert post["p"]["oracle"] == "n3"


def test_run_fuzz():
    summary = _optic.run_fuzz(20, seed=11, jobs=2)
    assert summary["cases"] == 20
    assert summary["mismatches"] == 0
    assert summary["pass"]
    assert summary["failures"] == []


def test_monte_carlo():
    mc = _optic.monte_carlo_distinct_sets(10, 500, trials=8, seed=5)
    assert mc["trials"] == 8
    assert mc["mean"] > 0
    assert abs(sum(mc["size_frequency"].values()) - 1.0) < 1e-9


def test_errors_map_to_valueerror():
    try:
        _optic.set_size_probability(5, 0, 3)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


def main():
    checks = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for fn in checks:
        fn()
        print("ok", fn.__name__)
    print(len(checks), "smoke checks passed")


if __name__ == "__main__":
    main()
