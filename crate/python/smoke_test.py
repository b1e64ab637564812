"""Smoke test for the linarr Python extension.

Build and install first, e.g. ``pip install -e crates/python --no-build-isolation``.
"""

import json

import linarr


def main():
    hesse = linarr.Arrangement.catalog("dual_hesse")
    assert len(hesse) == 9
    assert hesse.profile() == [0, 12]
    assert hesse.exponents() == [1, 4, 4]
    assert not hesse.is_inductively_free()
    r = hesse.freeness()
    assert r["verdict"] == "free" and r["s_membership"] is True

    a = linarr.Arrangement.catalog("family13", "3")
    assert a.charpoly() == [-36, 48, -13, 1]
    assert a.freeness()["route"] == "yoshinaga"
    assert a.free_additions() == [] and a.free_deletions() == []
    assert a.automorphism_order() == 18

    b = linarr.Arrangement.from_json(a.to_json())
    assert b.profile() == a.profile()

    triples = linarr.classify_profiles(12)
    assert [t["ell"] for t in triples] == [9, 11, 11, 11, 11, 12]

    names = [e["name"] for e in linarr.catalog_list()]
    assert "pentagonal" in names
    assert linarr.selfcheck("pentagonal")["class"] == "S-exceptional"

    rep = linarr.exceptional_values("family13")
    assert [v["value"] for v in rep["values"]][:5] == ["-1", "0", "1/2", "1", "2"]

    try:
        linarr.Arrangement.catalog("no_such_entry")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown catalog name accepted")

    tri = linarr.Arrangement.from_json(json.dumps({"lines": [[1, 0, 0], [0, 1, 0], [1, 1, -1]]}))
    assert tri.svg().count("<circle") == 3
    print("python smoke test ok")


if __name__ == "__main__":
    main()
