"""Quick end-to-end check of the Python bindings.

Build first:  pip install --no-build-isolation -e crates/py
"""

import json
import sys

import fcc


def main():
    m = fcc.FManifold([2])
    assert m.n == 2 and m.blocks == [2]
    a0 = m.a0_from_family([[[0, 1], [0]]])
    assert a0 == "u1*u2", a0
    assert m.check_master(a0) == {}
    assert m.check_master("u2^2") != {}

    g = m.connection(a0)
    assert all(m.verify_connection(a0)[k] for k in ("torsionless", "flat_unit", "dnabla_zero"))
    assert m.check_3rc(a0) == []

    lin = fcc.FManifold([2, 1])
    a = lin.a0_linear([1, 1])
    assert lin.is_linear(a) and lin.is_flat(a) and lin.dual_is_flat(a)

    cubic = fcc.FManifold([3]).a0_from_family([[[0, 0, 1], [0], [0]]])
    assert not fcc.FManifold([3]).is_flat(cubic)

    h = fcc.FManifold([3]).hierarchy(cubic, 2)
    assert len(h["a"]) == 3 and len(h["V"]) == 3

    rep = fcc.check(json.dumps({"blocks": [2, 1], "epsilon": [1, 1]}), curvature=True, dual=True)
    assert rep["pass"] and rep["flat"] and rep["dual_flat"]

    w = fcc.FManifold([2], constants=["C1"], functions={"F1": "u2"})
    met = w.metric_checks("-u1", [["F1", "C1*u2"], ["C1*u2", "0"]])
    assert met["invariant"] and met["killing"] and met["bridge"]

    try:
        fcc.FManifold([0])
    except ValueError:
        pass
    else:
        raise AssertionError("empty block accepted")

    for cid in fcc.case_ids():
        assert fcc.verify_case(cid)["pass"], cid

    print("python smoke test: ok", len(g), "connection symbols")
    return 0


if __name__ == "__main__":
    sys.exit(main())
