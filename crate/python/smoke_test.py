"""Smoke test for the hochrr_py extension module.

Build and install it first:
    pip install --no-build-isolation -e crates/python
"""

from fractions import Fraction

import hochrr_py as h


def main():
    assert h.l_coefficients(4) == [1, Fraction(-1, 2), Fraction(1, 12), 0, Fraction(-1, 720)]
    assert h.t_coefficients(2) == [Fraction(-1, 2), Fraction(-1, 24)]

    p2 = h.Variety("P2")
    assert p2.dim == 2
    assert p2.sheaf("O(2)").cohomology() == [6, 0, 0]
    assert p2.sheaf("O(-4)").cohomology() == [0, 0, 3]
    assert p2.sheaf("T").euler_characteristic() == 8

    g = h.Geometry(p2)
    assert g.todd_integral() == 1
    assert [x for _, _, x in g.todd_class()] == [1, Fraction(3, 2), 1]
    for expr, chi in [("O(3)", 10), ("T", 8), ("Omega^1", -1)]:
        r = g.hrr_verify(p2.sheaf(expr))
        assert r["equal"] and r["chi_rr"] == chi, (expr, r)
    assert g.ch_ring_check(p2.sheaf("T"), p2.sheaf("O(1)")) == (True, True)

    report = g.verify("todd-annihilation")
    assert report["passed"] and any(c["status"] == "success" for c in report["components"])

    q = h.Variety("P1xP1")
    r = h.Geometry(q).hrr_verify(q.sheaf("O(2,3)"))
    assert r["chi_cohomology"] == r["chi_rr"] == 12

    assert h.hochschild_dim(2, 1, 4, [0, 0]) == h.polyvector_dim(2, 1, [0, 0]) == 2

    try:
        p2.sheaf("O(1")
    except ValueError:
        pass
    else:
        raise AssertionError("bad expression accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
