#!/usr/bin/env python3
"""Regenerate the bundled algebra files in samples/ (deterministic)."""

from __future__ import annotations

import json
import pathlib
import sys
from fractions import Fraction

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from cyclic_ainfty.ainfinity import dga_structure
from cyclic_ainfty.graded import BilinearForm, DgSpace, GradedMap, GradedSpace
from cyclic_ainfty.specfile import AlgebraInput, algebra_to_json

F = Fraction
Z, I = F(0), F(1)
SAMPLES = pathlib.Path(__file__).resolve().parent.parent / "samples"


def write(name: str, doc: dict) -> None:
    SAMPLES.mkdir(exist_ok=True)
    path = SAMPLES / name
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def dga_input(space, d_matrix, form_parity, form_symmetry, form_matrix, product,
              cutoff=None, **options):
    V = DgSpace(space, GradedMap(space, space, 1, d_matrix))
    B = BilinearForm(space, form_parity, form_symmetry, form_matrix)
    A = dga_structure(V, product, cutoff=max(2, cutoff or 2))
    return AlgebraInput(V, B, dict(A.ops), None, cutoff,
                        options.get("require_harmonious"), options.get("seed"))


def frobenius_dga() -> dict:
    # exterior algebra on one odd generator, orthogonal sum with a
    # contractible unital piece: e, th | f, h with dh = f
    sp = GradedSpace(("e", "th", "f", "h"), (0, 1, 0, 1))
    d = [[Z] * 4 for _ in range(4)]
    d[2][3] = I
    form = [[Z] * 4 for _ in range(4)]
    form[0][1] = form[1][0] = I
    form[2][3] = form[3][2] = I
    product = {
        (0, 0): {0: I}, (0, 1): {1: I}, (1, 0): {1: I},
        (2, 2): {2: I}, (2, 3): {3: I}, (3, 2): {3: I},
    }
    inp = dga_input(sp, tuple(map(tuple, d)), 1, 1, tuple(map(tuple, form)), product, cutoff=4)
    return algebra_to_json(inp)


def broken_assoc() -> dict:
    # direct structure constants with m_2(u,u) = v, m_2(u,v) = u: the arity-3
    # relation fails at (u,u,u)
    return {
        "basis": [{"name": "u", "parity": 1}, {"name": "v", "parity": 0}],
        "operations": [
            {"n": 2, "entries": [
                {"in": [0, 0], "out": 1, "c": "1"},
                {"in": [0, 1], "out": 0, "c": "1"},
            ]},
        ],
    }


def bad_scalar() -> dict:
    return {
        "basis": [{"name": "a", "parity": 0}, {"name": "b", "parity": 1}],
        "differential": [["0", "1/0"], ["0", "0"]],
    }


def contractible() -> dict:
    sp = GradedSpace(("a", "b"), (0, 1))
    d = ((Z, I), (Z, Z))
    form = ((Z, I), (I, Z))
    inp = dga_input(sp, d, 1, 1, form, {}, cutoff=None)
    return algebra_to_json(inp)


def dzero_frobenius() -> dict:
    # k[x]/(x^3) with the top-coefficient pairing, zero differential
    sp = GradedSpace(("one", "x", "x2"), (0, 0, 0))
    d = tuple((Z,) * 3 for _ in range(3))
    form = ((Z, Z, I), (Z, I, Z), (I, Z, Z))
    product = {
        (0, 0): {0: I}, (0, 1): {1: I}, (1, 0): {1: I},
        (0, 2): {2: I}, (2, 0): {2: I}, (1, 1): {2: I},
    }
    inp = dga_input(sp, d, 0, 1, form, product, cutoff=4)
    return algebra_to_json(inp)


def mixed6() -> dict:
    # zero-form contractible pair + self-paired contractible pair + paired
    # harmonic pair, all under one odd symmetric form
    sp = GradedSpace(("p", "q", "u", "du", "e", "o"), (0, 1, 1, 0, 0, 1))
    d = [[Z] * 6 for _ in range(6)]
    d[0][1] = I       # d q = p (zero-form block)
    d[3][2] = I       # d u = du
    form = [[Z] * 6 for _ in range(6)]
    form[3][2] = I    # <du, u> = 1
    form[2][3] = I    # <u, du> = 1
    form[4][5] = I    # <e, o> = 1
    form[5][4] = I
    V = DgSpace(sp, GradedMap(sp, sp, 1, tuple(map(tuple, d))))
    B = BilinearForm(sp, 1, 1, tuple(map(tuple, form)))
    inp = AlgebraInput(V, B, {}, None, None, None, None)
    return algebra_to_json(inp)


def five_dim() -> dict:
    # exterior block + contractible block + a square-zero generator with no
    # pairing: 5-dimensional, 3-dimensional homology, degenerate on homology
    sp = GradedSpace(("e", "th", "f", "h", "n"), (0, 1, 0, 1, 1))
    d = [[Z] * 5 for _ in range(5)]
    d[2][3] = I
    form = [[Z] * 5 for _ in range(5)]
    form[0][1] = form[1][0] = I
    form[2][3] = form[3][2] = F(1, 2)
    product = {
        (0, 0): {0: I}, (0, 1): {1: I}, (1, 0): {1: I},
        (2, 2): {2: I}, (2, 3): {3: I}, (3, 2): {3: I},
    }
    inp = dga_input(sp, tuple(map(tuple, d)), 1, 1, tuple(map(tuple, form)), product, cutoff=5)
    return algebra_to_json(inp)


def main() -> None:
    write("frobenius_dga.json", frobenius_dga())
    write("broken_assoc.json", broken_assoc())
    write("bad_scalar.json", bad_scalar())
    write("contractible.json", contractible())
    write("dzero_frobenius.json", dzero_frobenius())
    write("mixed6.json", mixed6())
    write("five_dim.json", five_dim())


if __name__ == "__main__":
    main()
