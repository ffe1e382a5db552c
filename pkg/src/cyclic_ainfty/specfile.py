"""JSON algebra description files.

Schema (all scalars are canonical rational strings, matrices act on columns:
entry [i][j] is the coefficient of basis vector i in the image of basis
vector j; form entry [i][j] is <e_i, e_j>):

    {
      "basis": [{"name": "x", "parity": 1}, ...],
      "differential": [["0", "1"], ["0", "0"]],            # optional, default 0
      "form": {"parity": 1, "symmetry": 1,
               "matrix": [["0", "1"], ["1", "0"]]},        # optional, default 0
      "operations": [{"n": 2,
                      "entries": [{"in": [0, 1], "out": 0, "c": "1/2"}]}],
      "hodge": {"s": [[...]], "t": [[...]],
                "harmonious": true},                        # optional
      "options": {"cutoff": 4, "require_harmonious": true,
                  "seed": 0}                                # optional
    }

Operations are structure constants on the parity reversion of the basis.
Parsing fails with a field-precise diagnostic on the first violation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .ainfinity import AInfinityStructure, SparseOp
from .graded import BilinearForm, DgSpace, GradedError, GradedMap, GradedSpace
from .hodge import HodgeData
from .rationals import ScalarFormatError, format_scalar, parse_scalar

__all__ = ["AlgebraInput", "SpecFileError", "parse_algebra", "load_algebra_file", "algebra_to_json"]


class SpecFileError(ValueError):
    """Parse/validation failure; ``field`` names the offending location."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class AlgebraInput:
    V: DgSpace
    B: BilinearForm
    operations: dict            # n -> SparseOp on the shifted space
    hodge: Optional[HodgeData]
    cutoff: Optional[int]
    require_harmonious: Optional[bool]
    seed: Optional[int]

    def structure(self, cutoff: int) -> AInfinityStructure:
        for n in self.operations:
            if n > cutoff:
                raise SpecFileError("options.cutoff",
                                    f"cutoff {cutoff} is below the arity-{n} operation present")
        return AInfinityStructure(self.V, cutoff, self.operations)

    def default_cutoff(self) -> int:
        if self.cutoff is not None:
            return self.cutoff
        highest = max(list(self.operations) + [1])
        return min(6, max(2, highest + 1))


def _expect(cond: bool, field: str, message: str) -> None:
    if not cond:
        raise SpecFileError(field, message)


def _scalar(value: Any, field: str):
    try:
        return parse_scalar(value)
    except ScalarFormatError as exc:
        raise SpecFileError(field, str(exc)) from None


def _matrix(value: Any, field: str, n: int):
    _expect(isinstance(value, list) and len(value) == n, field, f"expected a list of {n} rows")
    rows = []
    for i, row in enumerate(value):
        _expect(isinstance(row, list) and len(row) == n, f"{field}[{i}]",
                f"expected a list of {n} scalars")
        rows.append(tuple(_scalar(x, f"{field}[{i}][{j}]") for j, x in enumerate(row)))
    return tuple(rows)


def parse_algebra(doc: Any) -> AlgebraInput:
    _expect(isinstance(doc, dict), "$", "top level must be a JSON object")
    unknown = set(doc) - {"basis", "differential", "form", "operations", "hodge", "options"}
    _expect(not unknown, "$", f"unknown fields: {sorted(unknown)}")

    basis = doc.get("basis")
    _expect(isinstance(basis, list) and basis, "basis", "expected a nonempty list")
    names, parities = [], []
    for i, item in enumerate(basis):
        _expect(isinstance(item, dict), f"basis[{i}]", "expected an object")
        _expect(isinstance(item.get("name"), str) and item["name"], f"basis[{i}].name",
                "expected a nonempty string")
        _expect(item.get("parity") in (0, 1), f"basis[{i}].parity", "expected 0 or 1")
        names.append(item["name"])
        parities.append(item["parity"])
    _expect(len(set(names)) == len(names), "basis", "basis names must be unique")
    try:
        space = GradedSpace(tuple(names), tuple(parities))
    except GradedError as exc:
        raise SpecFileError("basis", str(exc)) from None
    n = space.dim

    if "differential" in doc:
        d_matrix = _matrix(doc["differential"], "differential", n)
    else:
        from .rationals import ZERO
        d_matrix = tuple((ZERO,) * n for _ in range(n))
    try:
        V = DgSpace(space, GradedMap(space, space, 1, d_matrix))
    except GradedError as exc:
        raise SpecFileError("differential", str(exc)) from None

    if "form" in doc:
        f = doc["form"]
        _expect(isinstance(f, dict), "form", "expected an object")
        _expect(f.get("parity") in (0, 1), "form.parity", "expected 0 or 1")
        _expect(f.get("symmetry") in (1, -1), "form.symmetry", "expected 1 or -1")
        matrix = _matrix(f.get("matrix"), "form.matrix", n)
        form_parity, form_symmetry = f["parity"], f["symmetry"]
    else:
        from .rationals import ZERO
        matrix = tuple((ZERO,) * n for _ in range(n))
        form_parity, form_symmetry = 0, 1
    # candidate data: identity violations are a checker verdict, not a parse error
    B = BilinearForm(space, form_parity, form_symmetry, matrix, validate=False)

    operations: dict[int, SparseOp] = {}
    shifted = space.reversed()
    ops_doc = doc.get("operations", [])
    _expect(isinstance(ops_doc, list), "operations", "expected a list")
    for k, block in enumerate(ops_doc):
        fld = f"operations[{k}]"
        _expect(isinstance(block, dict), fld, "expected an object")
        arity = block.get("n")
        _expect(isinstance(arity, int) and arity >= 2, f"{fld}.n", "expected an integer >= 2")
        _expect(arity not in operations, f"{fld}.n", f"duplicate arity {arity}")
        entries = block.get("entries", [])
        _expect(isinstance(entries, list), f"{fld}.entries", "expected a list")
        items = []
        for e_i, entry in enumerate(entries):
            efld = f"{fld}.entries[{e_i}]"
            _expect(isinstance(entry, dict), efld, "expected an object")
            ins = entry.get("in")
            _expect(isinstance(ins, list) and len(ins) == arity, f"{efld}.in",
                    f"expected a list of {arity} basis indices")
            for idx in ins:
                _expect(isinstance(idx, int) and 0 <= idx < n, f"{efld}.in",
                        f"basis index out of range 0..{n - 1}")
            out = entry.get("out")
            _expect(isinstance(out, int) and 0 <= out < n, f"{efld}.out",
                    f"expected a basis index 0..{n - 1}")
            items.append((tuple(ins), out, _scalar(entry.get("c"), f"{efld}.c")))
        try:
            operations[arity] = SparseOp.from_entry_list(shifted, arity, items)
        except GradedError as exc:
            raise SpecFileError(fld, str(exc)) from None

    hodge = None
    if "hodge" in doc:
        h = doc["hodge"]
        _expect(isinstance(h, dict), "hodge", "expected an object")
        try:
            s = GradedMap(space, space, 1, _matrix(h.get("s"), "hodge.s", n))
        except GradedError as exc:
            raise SpecFileError("hodge.s", str(exc)) from None
        try:
            t = GradedMap(space, space, 0, _matrix(h.get("t"), "hodge.t", n))
        except GradedError as exc:
            raise SpecFileError("hodge.t", str(exc)) from None
        harmonious = h.get("harmonious", False)
        _expect(isinstance(harmonious, bool), "hodge.harmonious", "expected a boolean")
        hodge = HodgeData(s, t, harmonious)

    cutoff = require_harmonious = seed = None
    if "options" in doc:
        o = doc["options"]
        _expect(isinstance(o, dict), "options", "expected an object")
        unknown = set(o) - {"cutoff", "require_harmonious", "seed"}
        _expect(not unknown, "options", f"unknown fields: {sorted(unknown)}")
        if "cutoff" in o:
            _expect(isinstance(o["cutoff"], int) and o["cutoff"] >= 2, "options.cutoff",
                    "expected an integer >= 2")
            cutoff = o["cutoff"]
        if "require_harmonious" in o:
            _expect(isinstance(o["require_harmonious"], bool), "options.require_harmonious",
                    "expected a boolean")
            require_harmonious = o["require_harmonious"]
        if "seed" in o:
            _expect(isinstance(o["seed"], int), "options.seed", "expected an integer")
            seed = o["seed"]

    return AlgebraInput(V, B, operations, hodge, cutoff, require_harmonious, seed)


def load_algebra_file(path: str) -> AlgebraInput:
    import json

    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpecFileError("$", f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SpecFileError("$", f"invalid JSON: {exc}") from None
    return parse_algebra(doc)


def algebra_to_json(inp: AlgebraInput) -> dict:
    """Canonical serialization; parse(algebra_to_json(x)) reproduces x."""
    space = inp.V.space
    doc: dict[str, Any] = {
        "basis": [{"name": nm, "parity": p} for nm, p in zip(space.names, space.parities)],
        "differential": [[format_scalar(x) for x in row] for row in inp.V.d.matrix],
        "form": {
            "parity": inp.B.parity,
            "symmetry": inp.B.symmetry,
            "matrix": [[format_scalar(x) for x in row] for row in inp.B.matrix],
        },
        "operations": [
            {
                "n": n,
                "entries": [{"in": list(i), "out": o, "c": format_scalar(c)}
                            for i, o, c in inp.operations[n].entry_list()],
            }
            for n in sorted(inp.operations)
        ],
    }
    if inp.hodge is not None:
        doc["hodge"] = inp.hodge.as_dict()
    options = {}
    if inp.cutoff is not None:
        options["cutoff"] = inp.cutoff
    if inp.require_harmonious is not None:
        options["require_harmonious"] = inp.require_harmonious
    if inp.seed is not None:
        options["seed"] = inp.seed
    if options:
        doc["options"] = options
    return doc
