#!/usr/bin/env python3
"""Regenerate the shipped decomposition fixtures in crates/core/fixtures.

Closure lists are written by hand (or generated for the cube complexes);
the subadjacency list is derived from them so the two encodings agree.
"""

import itertools
import json
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "fixtures")


def cell(cid, dim, bounded=True, **extra):
    c = {"id": cid, "dim": dim, "bounded": bounded}
    c.update(extra)
    return c


def finish(cells, closure, comment):
    owner = {}
    for c in cells:
        owner[c["id"]] = c["id"]
        for p in c.get("pieces", []):
            owner[p["id"]] = c["id"]
    sub = set()
    for upper, members in closure.items():
        for m in members:
            lower = owner[m]
            if lower != upper:
                sub.add((lower, upper))
    return {
        "comment": comment,
        "cells": cells,
        "subadjacency": sorted([a, b] for a, b in sub),
        "closure": {k: sorted(set(v)) for k, v in closure.items()},
    }


def cube_cells():
    """Cells of [0,1]^3 as patterns over {0, 1, o}; 'o' is the open interval."""
    return ["".join(p) for p in itertools.product("01o", repeat=3)]


def cube_closure(pat):
    choices = [("0", "1", "o") if ch == "o" else (ch,) for ch in pat]
    return ["".join(p) for p in itertools.product(*choices)]


def dim_of(pat):
    return pat.count("o")


def whitney():
    polys = {
        "O": ["x1", "x2", "x3"],
        "P": ["x1", "x2", "x3 - 1"],
        "R": ["x1 - 1", "x2 - 1", "x3 - 1"],
        "S": ["x1 - 1", "x2 + 1", "x3 - 1"],
    }
    samples = {
        "O": ["0", "0", "0"],
        "P": ["0", "0", "1"],
        "R": ["1", "1", "1"],
        "S": ["1", "-1", "1"],
        "Z": ["0", "0", "1/2"],
        "E+": ["1/2", "1/2", "1"],
        "E-": ["1/2", "-1/2", "1"],
        "G": ["1", "0", "0"],
        "W": ["1/2", "1/4", "1/4"],
    }
    geo = {k: {"formula": "f1 = 0 & f2 = 0 & f3 = 0", "polys": v} for k, v in polys.items()}
    geo["Z"] = {"formula": "f1 = 0 & f2 = 0 & f3 > 0 & f4 < 0", "polys": ["x1", "x2", "x3", "x3 - 1"]}
    geo["E+"] = {"formula": "f1 = 0 & f2 = 0 & f3 > 0 & f4 < 0", "polys": ["x2 - x1", "x3 - 1", "x1", "x1 - 1"]}
    geo["E-"] = {"formula": "f1 = 0 & f2 = 0 & f3 > 0 & f4 < 0", "polys": ["x2 + x1", "x3 - 1", "x1", "x1 - 1"]}
    geo["G"] = {"formula": "f1 = 0 & f2 = 0 & f3 > 0 & f4 < 0", "polys": ["x1 - 1", "x3 - x2^2", "x2 + 1", "x2 - 1"]}
    geo["W"] = {
        "formula": "f1 = 0 & f2 > 0 & f3 < 0 & f4 < 0 & f5 > 0",
        "polys": ["x1^2*x3 - x2^2", "x1", "x1 - 1", "x2 - x1", "x2 + x1"],
    }
    dims = {"O": 0, "P": 0, "R": 0, "S": 0, "Z": 1, "E+": 1, "E-": 1, "G": 1, "W": 2}
    cells = [cell(k, dims[k], geometry=geo[k], sample=samples[k]) for k in dims]
    closure = {
        "O": ["O"],
        "P": ["P"],
        "R": ["R"],
        "S": ["S"],
        "Z": ["Z", "O", "P"],
        "E+": ["E+", "P", "R"],
        "E-": ["E-", "P", "S"],
        "G": ["G", "R", "S"],
        "W": list(dims),
    }
    comment = (
        "Closure of the surface x1^2 x3 = x2^2 over 0 < x1 < 1, -x1 < x2 < x1, cut into "
        "four corners, four edges and the open sheet W. Edge G is (1, t, t^2) for -1 < t < 1."
    )
    return finish(cells, closure, comment)


def noncf():
    # The open segment {0} x (0,1) x {1/2} splits the face x1 = 0; the two
    # x3-edges on that face keep their midpoints, recorded as pieces.
    split = {"00o", "01o"}
    cells = []
    closure = {}
    for pat in cube_cells():
        if pat == "0oo":
            continue
        extra = {}
        if pat in split:
            extra["pieces"] = [
                {"id": pat + ".lo", "dim": 1},
                {"id": pat + ".mid", "dim": 0},
                {"id": pat + ".hi", "dim": 1},
            ]
        cells.append(cell(pat, dim_of(pat), **extra))
        closure[pat] = cube_closure(pat)
    cells.append(cell("seg", 1))
    cells.append(cell("0oo-", 2))
    cells.append(cell("0oo+", 2))
    closure["seg"] = ["seg", "00o.mid", "01o.mid"]
    closure["0oo-"] = ["0oo-", "seg", "0o0", "000", "010", "00o.lo", "00o.mid", "01o.lo", "01o.mid"]
    closure["0oo+"] = ["0oo+", "seg", "0o1", "001", "011", "00o.hi", "00o.mid", "01o.hi", "01o.mid"]
    closure["ooo"] = [c for c in closure["ooo"] if c != "0oo"] + ["seg", "0oo-", "0oo+"]
    for k in list(closure):
        if "0oo" in closure[k] and k != "ooo":
            raise AssertionError(k)
    comment = (
        "Cells of [0,1]^3 named by coordinate pattern over {0, 1, o} with o the open unit "
        "interval. The target 1-cell 'seg' is {0} x (0,1) x {1/2}: the text writes "
        "[0,1] x {0} x {1/2}, but its stated endpoints (0,0,1/2) and (0,1,1/2) and the "
        "undivided edges (0,0,z), (0,1,z) fit only this segment. Its endpoints are not cells; "
        "they are the pieces 00o.mid and 01o.mid."
    )
    return finish(cells, closure, comment)


def wbnotcf():
    z_pieces = [
        {"id": "Z.neg", "dim": 1},
        {"id": "Z.0", "dim": 0},
        {"id": "Z.pos", "dim": 1},
    ]
    rename = {"00o": "Z.pos", "000": "Z.0"}
    cells = []
    closure = {}
    for pat in cube_cells():
        if pat in rename:
            continue
        cells.append(cell(pat, dim_of(pat)))
        closure[pat] = [rename.get(c, c) for c in cube_closure(pat)]
    cells.append(cell("Z", 1, pieces=z_pieces))
    cells.append(cell("P", 0))
    closure["Z"] = ["Z", "P", "001"]
    closure["P"] = ["P"]
    comment = (
        "Open cube (0,1)^3 with its faces, eleven edges (not the x3-axis edge) and seven "
        "corners (not the origin), plus Z = {0} x {0} x (-1,1) and P = (0,0,-1). Z is cut into "
        "pieces Z.neg, Z.0, Z.pos for closure bookkeeping. The faces adjacent to Z are read as "
        "0oo and o0o, whose closures contain the segment Z.pos; the face oo0 meets Z only at "
        "the origin and is well-bordered."
    )
    return finish(cells, closure, comment)


def cfsubadj():
    cells = [
        cell("C1", 1, pieces=[{"id": "C1.pt", "dim": 0}, {"id": "C1.rest", "dim": 1}]),
        cell("C2", 1, pieces=[{"id": "C2.pt", "dim": 0}, {"id": "C2.rest", "dim": 1}]),
    ]
    closure = {"C1": ["C1", "C2.pt"], "C2": ["C2", "C1.pt"]}
    comment = (
        "C1 is the unit circle minus {x >= 0, y <= 0}; C2 is the open segment (-1,2) x {0} "
        "(the text names both cells C1). Closure lists record only the parts of cells of P: "
        "C1.pt is (-1,0) and C2.pt is (1,0). The points (0,-1) and (2,0) lie in the closures "
        "but in no cell."
    )
    return finish(cells, closure, comment)


def sphere_minus_point():
    cells = [cell("N", 0), cell("C", 2)]
    closure = {"N": ["N"], "C": ["C", "N"]}
    comment = "The 2-sphere as the point N and the open cell C = S^2 minus N."
    return finish(cells, closure, comment)


def lazard_q_points():
    samples = {
        "A": ["0", "0"],
        "B": ["1", "0"],
        "U": ["3/5", "-1/2"],
        "L": ["1/2", "-1"],
        "Q": ["9/10", "-2/5"],
    }
    dims = {"A": 0, "B": 0, "U": 1, "L": 1, "Q": 2}
    cells = [cell(k, dims[k], sample=samples[k]) for k in dims]
    closure = {
        "A": ["A"],
        "B": ["B"],
        "U": ["U", "A", "B"],
        "L": ["L", "A", "B"],
        "Q": list(dims),
    }
    comment = (
        "Closed region bounded by two arcs U and L from A = (0,0) to B = (1,0); sample points "
        "read off the figure. The triangles spanned by (A, U, Q) and (A, L, Q) overlap."
    )
    return finish(cells, closure, comment)


FIXTURES = {
    "whitney": whitney,
    "noncf": noncf,
    "wbnotcf": wbnotcf,
    "cfsubadj": cfsubadj,
    "sphere_minus_point": sphere_minus_point,
    "lazard_q_points": lazard_q_points,
}


def main():
    os.makedirs(OUT, exist_ok=True)
    for name, build in FIXTURES.items():
        with open(os.path.join(OUT, name + ".json"), "w") as fh:
            json.dump(build(), fh, indent=1, sort_keys=True)
            fh.write("\n")


if __name__ == "__main__":
    main()
