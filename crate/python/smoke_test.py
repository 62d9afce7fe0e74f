"""Smoke test for the polyvol extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`,
then run `python python/smoke_test.py`.
"""

from fractions import Fraction
from math import factorial
import json

import polyvol


def check(cond, what):
    if not cond:
        raise SystemExit(f"FAIL: {what}")
    print(f"ok    {what}")


def main():
    square = polyvol.Polytope.from_vertices([[0, 0], [1, 0], [0, 1], [1, 1]])
    for alg in ["primal", "descent", "lawrence"]:
        r = square.volume(algorithm=alg, euclidean=True)
        check(r.volume == 2 and r.euclidean_volume == 1, f"square via {alg}")

    cube = polyvol.Polytope.from_constraints(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [-1, 0, 0, 1], [0, -1, 0, 1], [0, 0, -1, 1]]
    )
    r = cube.volume()
    check(r.volume == factorial(3) and r.exact, "cube from constraints")
    check(r.volume == r.grading_denominator * r.volume_cone_pyramid, "Vol P = k Vol P-bar")

    tri = polyvol.Polytope.from_vertices([[0, 0], [Fraction(1, 2), 0], ["0", "2/3"]])
    check(tri.volume().volume == Fraction(1, 3), "rational triangle")

    fixed = tri.volume(algorithm="lawrence", precision=10)
    check(not fixed.exact and abs(fixed.volume - Fraction(1, 3)) <= fixed.error_bound, "fixed precision")

    doubled = square.with_grading([0, 0, 2]).volume()
    check(doubled.grading_denominator == 2 and doubled.volume == Fraction(1, 2), "doubled grading")

    birkhoff = polyvol.Polytope.parse(open_data("birkhoff3.in"))
    r = birkhoff.volume(verify=100)
    check(r.volume == 3 and r.diagnostics["verification"]["violations"] == 0, "Birkhoff-3 with verification")
    check(json.loads(r.to_json())["volume"] == {"num": "3", "den": "1"}, "json report")

    check(polyvol.det([[2, 1], [1, 3]]) == 5, "det")
    check(polyvol.primitivize([4, -6, 10]) == [2, -3, 5], "primitivize")
    basis = polyvol.lattice_basis_of_span([[2, 2, 0], [0, 3, 3]])
    check(len(basis) == 2, "lattice basis of span")

    try:
        polyvol.Polytope.parse("amb_space 2\nvertices 1\n0 x\n")
    except polyvol.PolyvolError as e:
        check(e.args[1] == 2 and "line 3" in e.args[0], "parse error carries line and exit code")
    else:
        raise SystemExit("FAIL: parse error not raised")

    print("all smoke checks passed")


def open_data(name):
    import pathlib

    return (pathlib.Path(__file__).resolve().parent.parent / "data" / name).read_text()


if __name__ == "__main__":
    main()
