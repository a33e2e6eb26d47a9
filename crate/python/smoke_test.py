"""Smoke test for the lspace extension module.

Build and run from the repository root:

    cargo build --release -p lspace-py --features extension-module
    cp target/release/liblspace.so python/lspace.so
    python3 python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import lspace  # noqa: E402

TREFOIL = {
    "torsion_orders": [],
    "iota_m": {"free": 1, "torsion": []},
    "iota_l": {"free": 0, "torsion": []},
    "tauc_support": [{"free": 1, "torsion": []}],
    "witness": {"a": 3, "b": 1},
}


def main():
    y = lspace.Manifold(TREFOIL)
    assert (y.g, y.k) == (1, 1), repr(y)
    assert y.interval() == ("closed", "1/1", "1/0")
    assert y.is_lspace("5/1") and not y.is_lspace(lspace.Slope(-1, 1))
    assert y.is_lspace((7, 2), witness="2/1")
    assert y.oracle("3/1", "-1/1") is False
    assert y.dtau(positive=True) == [(1, 0)]
    assert y.cfd_dot().startswith("digraph")
    assert y.twist_compare() is False
    assert lspace.Manifold(y.to_json()).interval() == y.interval()

    s = lspace.Slope(-3, -1)
    assert (s.a, s.b, str(s)) == (3, 1, "3/1")
    assert s == lspace.Slope.parse("3/1")
    assert abs(s.pairing(lspace.Slope(1, 0))) == 1

    v = lspace.sfs(-1, [(1, 2), (1, 2)])
    assert (v["lspace"], v["reason"]) == (False, "euler-zero")
    v = lspace.sfs(-1, [(1, 2), (1, 3), (1, 7)], fiber=3)
    assert v["euler"] == "-1/42" and v["fiber_interval"] == ("0/1", "1/5")

    assert lspace.glue(y, y, [[3, -5], [1, -2]]) is True
    assert lspace.glue(y, y, [[1, 0], [1, -1]]) is False

    try:
        lspace.glue(y, y, [[1, 1], [0, 1]])
    except lspace.LSpaceError as e:
        assert e.args[0] == "DeterminantError"
    else:
        raise AssertionError("expected DeterminantError")

    try:
        lspace.Manifold(json.dumps({**TREFOIL, "iota_l": {"free": 2, "torsion": []}}))
    except lspace.LSpaceError as e:
        assert e.args[0] == "NonTorsionLongitude"
    else:
        raise AssertionError("expected a validation error")

    print("smoke test ok")


if __name__ == "__main__":
    main()
