"""A-infinity structures on the parity-reversed space.

Operations ``m_n`` live on the shift A = (parity reversion of V) as odd
multilinear maps, stored sparsely as structure constants.  ``m_1`` is the
differential of V read on A (same matrix, flipped parities).  Evaluation and
composition follow the Koszul sign rule throughout; the higher associativity
check, the cyclic tensors and the rotation-invariance check are all exact.

The pairing used for cyclic tensors is the given bilinear form transported
to the shifted space with the twist ``omega(e_i, e_j) = (-1)^(p_i) <e_i, e_j>``
(p_i the unshifted parity of e_i).  This twist is what makes associative
algebras with symmetric invariant forms come out rotation-invariant with the
uniform sign ``(-1)^(|a_0| (|a_1|+...+|a_n|))`` in shifted parities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .graded import (
    BilinearForm,
    DgSpace,
    GradedError,
    GradedMap,
    GradedSpace,
    Matrix,
    Vector,
)
from .rationals import ONE, ZERO

__all__ = [
    "SparseOp",
    "AInfinityStructure",
    "CyclicTensor",
    "FormReport",
    "StasheffReport",
    "CyclicReport",
    "check_form",
    "check_stasheff",
    "cyclic_tensor",
    "check_cyclic",
    "dga_structure",
    "shifted_form_matrix",
    "rotation_sign",
]

Entries = dict[tuple[int, ...], dict[int, Fraction]]


class SparseOp:
    """Sparse multilinear operator A^(x)n -> A on a graded space.

    ``entries[ins][out]`` is the coefficient of basis vector ``out`` in the
    value on the basis multi-index ``ins``.  Treated as immutable.
    """

    __slots__ = ("space", "arity", "parity", "entries")

    def __init__(self, space: GradedSpace, arity: int, parity: int,
                 entries: Optional[Entries] = None) -> None:
        if arity < 1:
            raise GradedError("operator arity must be at least 1")
        if parity not in (0, 1):
            raise GradedError("operator parity must be 0 or 1")
        clean: Entries = {}
        q = space.parities
        for ins, outs in (entries or {}).items():
            if len(ins) != arity or any(not 0 <= i < space.dim for i in ins):
                raise GradedError(f"bad input multi-index {ins}")
            kept = {}
            for out, c in outs.items():
                c = Fraction(c)
                if c == 0:
                    continue
                if (sum(q[i] for i in ins) + parity - q[out]) % 2 != 0:
                    raise GradedError(
                        f"entry {ins} -> {out} violates parity for a parity-{parity} operator"
                    )
                kept[out] = c
            if kept:
                clean[ins] = kept
        self.space = space
        self.arity = arity
        self.parity = parity
        self.entries = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(space: GradedSpace, arity: int, parity: int = 1) -> "SparseOp":
        return SparseOp(space, arity, parity, {})

    @staticmethod
    def from_graded_map(f: GradedMap) -> "SparseOp":
        if f.source != f.target:
            raise GradedError("only endomorphisms convert to sparse operators")
        entries: Entries = {}
        for j in range(f.source.dim):
            outs = {i: f.matrix[i][j] for i in range(f.target.dim) if f.matrix[i][j] != 0}
            if outs:
                entries[(j,)] = outs
        return SparseOp(f.source, 1, f.parity, entries)

    @staticmethod
    def from_entry_list(space: GradedSpace, arity: int,
                        items: Iterable[tuple[Sequence[int], int, Fraction]],
                        parity: int = 1) -> "SparseOp":
        entries: Entries = {}
        for ins, out, c in items:
            slot = entries.setdefault(tuple(ins), {})
            slot[out] = slot.get(out, ZERO) + Fraction(c)
        return SparseOp(space, arity, parity, entries)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.entries

    def entry_list(self) -> list[tuple[tuple[int, ...], int, Fraction]]:
        out = []
        for ins in sorted(self.entries):
            for o in sorted(self.entries[ins]):
                out.append((ins, o, self.entries[ins][o]))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseOp):
            return NotImplemented
        return (self.space == other.space and self.arity == other.arity
                and self.entries == other.entries
                and (self.is_zero() or self.parity == other.parity))

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        return hash((self.space, self.arity, self.parity))

    def __repr__(self) -> str:
        return f"SparseOp(arity={self.arity}, parity={self.parity}, nnz={len(self.entry_list())})"

    # -- arithmetic --------------------------------------------------------

    def add(self, other: "SparseOp") -> "SparseOp":
        if (self.space, self.arity) != (other.space, other.arity):
            raise GradedError("cannot add operators of different shapes")
        if not self.is_zero() and not other.is_zero() and self.parity != other.parity:
            raise GradedError("cannot add operators of different parities")
        merged: Entries = {ins: dict(outs) for ins, outs in self.entries.items()}
        for ins, outs in other.entries.items():
            slot = merged.setdefault(ins, {})
            for o, c in outs.items():
                slot[o] = slot.get(o, ZERO) + c
        parity = self.parity if not self.is_zero() else other.parity
        return SparseOp(self.space, self.arity, parity, merged)

    def scale(self, c: Fraction) -> "SparseOp":
        return SparseOp(self.space, self.arity, self.parity,
                        {ins: {o: c * v for o, v in outs.items()} for ins, outs in self.entries.items()})

    # -- evaluation --------------------------------------------------------

    def apply_basis(self, ins: tuple[int, ...]) -> dict[int, Fraction]:
        return dict(self.entries.get(ins, {}))

    def apply(self, vectors: Sequence[Vector]) -> Vector:
        """Multilinear evaluation on coordinate vectors (no external signs)."""
        if len(vectors) != self.arity:
            raise GradedError(f"arity-{self.arity} operator applied to {len(vectors)} vectors")
        n = self.space.dim
        out = [ZERO] * n
        for ins, outs in self.entries.items():
            factor = ONE
            for slot, idx in enumerate(ins):
                x = vectors[slot][idx]
                if x == 0:
                    factor = ZERO
                    break
                factor *= x
            if factor == 0:
                continue
            for o, c in outs.items():
                out[o] += factor * c
        return tuple(out)

    # -- composition -------------------------------------------------------

    def graft(self, children: Sequence[Optional["SparseOp"]]) -> "SparseOp":
        """Compose ``self (G_1 (x) ... (x) G_k)`` with Koszul signs.

        ``None`` stands for an identity slot.  The sign of each summand is
        the product over children of (-1)^(|G_i| * parity of the inputs fed
        to the children left of G_i), matching right-to-left slot application.
        """
        if len(children) != self.arity:
            raise GradedError("graft needs exactly one child per slot")
        q = self.space.parities
        child_parity = [0 if g is None else g.parity for g in children]
        child_arity = [1 if g is None else g.arity for g in children]
        by_out: list[Optional[dict[int, list[tuple[tuple[int, ...], Fraction]]]]] = []
        for g in children:
            if g is None:
                by_out.append(None)
                continue
            if g.space != self.space:
                raise GradedError("graft children must live on the same space")
            table: dict[int, list[tuple[tuple[int, ...], Fraction]]] = {}
            for ins, outs in g.entries.items():
                for o, c in outs.items():
                    table.setdefault(o, []).append((ins, c))
            by_out.append(table)

        result: Entries = {}
        for parent_ins, parent_outs in self.entries.items():
            candidate_lists = []
            ok = True
            for slot, o in enumerate(parent_ins):
                table = by_out[slot]
                if table is None:
                    candidate_lists.append([((o,), ONE)])
                else:
                    cands = table.get(o)
                    if not cands:
                        ok = False
                        break
                    candidate_lists.append(cands)
            if not ok:
                continue
            for combo in itertools.product(*candidate_lists):
                sign = 1
                prefix_parity = 0
                coeff = ONE
                full: list[int] = []
                for slot, (ins_i, c_i) in enumerate(combo):
                    if child_parity[slot] and prefix_parity:
                        sign = -sign
                    coeff *= c_i
                    full.extend(ins_i)
                    prefix_parity = (prefix_parity + sum(q[j] for j in ins_i)) % 2
                key = tuple(full)
                slot_dict = result.setdefault(key, {})
                for r, c_p in parent_outs.items():
                    slot_dict[r] = slot_dict.get(r, ZERO) + sign * coeff * c_p
        parity = (self.parity + sum(child_parity)) % 2
        return SparseOp(self.space, sum(child_arity), parity, result)


# ---------------------------------------------------------------------------
# the structure


class AInfinityStructure:
    """Operations m_n (2 <= n <= cutoff) on the shift of a dg space.

    The structure is *verified up to the cutoff*: relation n is fully
    checkable iff n <= cutoff, since it only involves m_j with j <= n.
    """

    def __init__(self, dg: DgSpace, cutoff: int, ops: Mapping[int, SparseOp]) -> None:
        if cutoff < 2:
            raise GradedError("cutoff must be at least 2")
        shifted = dg.space.reversed()
        for n, op in ops.items():
            if not 2 <= n <= cutoff:
                raise GradedError(f"operation arity {n} outside 2..{cutoff}")
            if op.arity != n:
                raise GradedError(f"operation stored at arity {n} has arity {op.arity}")
            if op.space != shifted:
                raise GradedError("operations must live on the parity reversion of V")
            if not op.is_zero() and op.parity != 1:
                raise GradedError("A-infinity operations must be odd")
        self.dg = dg
        self.cutoff = cutoff
        self.shifted = shifted
        self.ops = {n: ops[n] for n in sorted(ops)}

    @property
    def m1(self) -> SparseOp:
        d_shift = GradedMap(self.shifted, self.shifted, 1, self.dg.d.matrix)
        return SparseOp.from_graded_map(d_shift)

    def op(self, n: int) -> SparseOp:
        if n == 1:
            return self.m1
        got = self.ops.get(n)
        if got is None:
            return SparseOp.zero(self.shifted, n)
        return got

    def max_nonzero_arity(self) -> int:
        nz = [n for n, op in self.ops.items() if not op.is_zero()]
        return max(nz, default=1)

    def ops_as_dict(self) -> dict:
        from .rationals import format_scalar

        out = []
        for n in sorted(self.ops):
            op = self.ops[n]
            out.append({
                "n": n,
                "entries": [
                    {"in": list(ins), "out": o, "c": format_scalar(c)}
                    for ins, o, c in op.entry_list()
                ],
            })
        return {"cutoff": self.cutoff, "operations": out}


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class FormReport:
    homogeneity: tuple
    symmetry: tuple
    compatibility: tuple

    @property
    def passed(self) -> bool:
        return not (self.homogeneity or self.symmetry or self.compatibility)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "homogeneity_violations": [list(v[:2]) for v in self.homogeneity],
            "symmetry_violations": [list(v[:2]) for v in self.symmetry],
            "compatibility_violations": [[i, j] for i, j, _ in self.compatibility],
        }


@dataclass(frozen=True)
class StasheffReport:
    cutoff: int
    verdicts: dict
    witnesses: dict

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def as_dict(self) -> dict:
        from .rationals import format_scalar

        return {
            "passed": self.passed,
            "cutoff": self.cutoff,
            "note": f"relations checked for arities 1..{self.cutoff}; higher arities "
                    "would involve operations beyond the cutoff and are not claimed",
            "relations": {
                str(n): (
                    {"passed": True} if self.verdicts[n] else
                    {"passed": False,
                     "witness": {"in": list(self.witnesses[n][0]),
                                 "out": self.witnesses[n][1],
                                 "value": format_scalar(self.witnesses[n][2])}}
                )
                for n in sorted(self.verdicts)
            },
        }


@dataclass(frozen=True)
class CyclicReport:
    cutoff: int
    verdicts: dict
    witnesses: dict

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def as_dict(self) -> dict:
        from .rationals import format_scalar

        return {
            "passed": self.passed,
            "cutoff": self.cutoff,
            "arities": {
                str(n): (
                    {"passed": True} if self.verdicts[n] else
                    {"passed": False,
                     "witness": {"index": list(self.witnesses[n][0]),
                                 "value": format_scalar(self.witnesses[n][1]),
                                 "rotated_value": format_scalar(self.witnesses[n][2])}}
                )
                for n in sorted(self.verdicts)
            },
        }


@dataclass(frozen=True)
class CyclicTensor:
    """Sparse tensor <m_n(-, ..., -), -> on the shifted space."""

    arity: int
    space: GradedSpace
    entries: dict = field(compare=False)

    def value(self, ins: tuple[int, ...]) -> Fraction:
        return self.entries.get(ins, ZERO)


# ---------------------------------------------------------------------------
# checks


def check_form(V: DgSpace, B: BilinearForm) -> FormReport:
    """Verify homogeneity, declared symmetry, and compatibility with d."""
    return FormReport(
        homogeneity=tuple(B.homogeneity_violations()),
        symmetry=tuple(B.symmetry_violations()),
        compatibility=tuple(B.compatibility_violations(V)),
    )


def check_stasheff(A: AInfinityStructure) -> StasheffReport:
    """Exact higher-associativity check for every arity up to the cutoff.

    For each n the sum of ``m_(i+1+k) (id^i (x) m_j (x) id^k)`` over
    i + j + k = n must vanish identically; the first nonzero structure
    constant is reported as a witness.
    """
    verdicts = {}
    witnesses = {}
    for n in range(1, A.cutoff + 1):
        total = SparseOp.zero(A.shifted, n, parity=0)
        for j in range(1, n + 1):
            inner = A.op(j)
            if inner.is_zero():
                continue
            for i in range(0, n - j + 1):
                k = n - j - i
                outer = A.op(i + 1 + k)
                if outer.is_zero():
                    continue
                term = outer.graft([None] * i + [inner] + [None] * k)
                total = total.add(term)
        ok = total.is_zero()
        verdicts[n] = ok
        if not ok:
            ins, out, c = total.entry_list()[0]
            witnesses[n] = (ins, out, c)
    return StasheffReport(A.cutoff, verdicts, witnesses)


def shifted_form_matrix(B: BilinearForm) -> Matrix:
    """The pairing on the shifted space: row sign (-1)^(unshifted parity)."""
    p = B.space.parities
    return tuple(
        tuple(-x if p[i] else x for x in B.matrix[i])
        for i in range(B.space.dim)
    )


def cyclic_tensor(A: AInfinityStructure, B: BilinearForm, n: int) -> CyclicTensor:
    """The (n+1)-tensor pairing m_n against one more argument, Eq-style."""
    if not 2 <= n <= A.cutoff:
        raise GradedError(f"cyclic tensor arity {n} outside 2..{A.cutoff}")
    if B.space != A.dg.space:
        raise GradedError("form and structure live on different spaces")
    omega = shifted_form_matrix(B)
    dim = A.shifted.dim
    entries: dict[tuple[int, ...], Fraction] = {}
    for ins, outs in A.op(n).entries.items():
        for o, c in outs.items():
            row = omega[o]
            for last in range(dim):
                if row[last] != 0:
                    key = ins + (last,)
                    val = entries.get(key, ZERO) + c * row[last]
                    if val == 0:
                        entries.pop(key, None)
                    else:
                        entries[key] = val
    return CyclicTensor(n, A.shifted, entries)


def rotation_sign(space: GradedSpace, ins: tuple[int, ...]) -> int:
    """Koszul sign for rotating the first tensor factor to the end."""
    q = space.parities
    rest = sum(q[i] for i in ins[1:])
    return -1 if (q[ins[0]] and rest % 2) else 1


def check_cyclic(A: AInfinityStructure, B: BilinearForm) -> CyclicReport:
    """Rotation invariance of every cyclic tensor up to the cutoff.

    Checks the generating cycle only: invariance under it implies invariance
    under the whole cyclic group (the full rotation sign closes up to +1).
    """
    verdicts = {}
    witnesses = {}
    for n in range(2, A.cutoff + 1):
        T = cyclic_tensor(A, B, n)
        keys = set(T.entries)
        for key in list(keys):
            keys.add(key[-1:] + key[:-1])  # inverse rotation of key
        ok = True
        for key in sorted(keys):
            rotated = key[1:] + key[:1]
            expected = rotation_sign(A.shifted, key) * T.value(rotated)
            got = T.value(key)
            if got != expected:
                ok = False
                witnesses[n] = (key, got, expected)
                break
        verdicts[n] = ok
    return CyclicReport(A.cutoff, verdicts, witnesses)


# ---------------------------------------------------------------------------
# associative input algebras


def dga_structure(V: DgSpace, product: Mapping[tuple[int, int], Mapping[int, Fraction]],
                  cutoff: int, validate: bool = True) -> AInfinityStructure:
    """Structure with m_2 the transported associative product, m_(>=3) = 0.

    ``product[(i, j)][k]`` is the coefficient of ``e_k`` in ``e_i e_j`` on V.
    Transport to the shift multiplies by (-1)^(shifted parity of the first
    argument).  With ``validate`` the product is checked to be associative
    and d a derivation for it.
    """
    space = V.space
    if validate:
        _validate_dga(V, product)
    shifted = space.reversed()
    qs = shifted.parities
    entries: Entries = {}
    for (i, j), outs in product.items():
        kept = {k: (-c if qs[i] else Fraction(c)) for k, c in outs.items() if c != 0}
        if kept:
            entries[(i, j)] = kept
    m2 = SparseOp(shifted, 2, 1, entries)
    return AInfinityStructure(V, cutoff, {2: m2})


def _multiply(space: GradedSpace, product, x: Vector, y: Vector) -> Vector:
    out = [ZERO] * space.dim
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            for k, c in product.get((i, j), {}).items():
                out[k] += xi * yj * c
    return tuple(out)


def _validate_dga(V: DgSpace, product) -> None:
    space = V.space
    n = space.dim
    basis = [space.basis_vector(i) for i in range(n)]
    for (i, j), outs in product.items():
        for k, c in outs.items():
            if c != 0 and (space.parities[i] + space.parities[j] - space.parities[k]) % 2 != 0:
                raise GradedError(f"product entry ({i},{j})->{k} is not parity homogeneous")
    for i in range(n):
        for j in range(n):
            ij = _multiply(space, product, basis[i], basis[j])
            for k in range(n):
                left = _multiply(space, product, ij, basis[k])
                right = _multiply(space, product, basis[i], _multiply(space, product, basis[j], basis[k]))
                if left != right:
                    raise GradedError(f"product is not associative at ({i},{j},{k})")
    for i in range(n):
        for j in range(n):
            lhs = V.d(_multiply(space, product, basis[i], basis[j]))
            rhs = _multiply(space, product, V.d(basis[i]), basis[j])
            sign = -1 if space.parities[i] else 1
            term = _multiply(space, product, basis[i], V.d(basis[j]))
            rhs = tuple(a + sign * b for a, b in zip(rhs, term))
            if lhs != rhs:
                raise GradedError(f"d is not a derivation at ({i},{j})")
