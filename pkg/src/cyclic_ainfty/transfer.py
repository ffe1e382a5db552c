"""Tree-sum transfer of structures to the harmonic subspace.

Each planar rooted tree evaluates to a multilinear operator: leaves and the
root edge apply t, internal edges apply s, a vertex with k children applies
m_k, composed canopy-to-trunk with Koszul signs.  Summing over all trees
with n leaves gives the transferred operation; restricting to a basis of
im t yields the minimal model, whose exactness properties (higher
associativity, rotation invariance, vanishing differential) are verified
rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .ainfinity import (
    AInfinityStructure,
    CyclicReport,
    FormReport,
    SparseOp,
    StasheffReport,
    check_cyclic,
    check_form,
    check_stasheff,
)
from .graded import (
    BilinearForm,
    DgSpace,
    GradedError,
    GradedMap,
    GradedSpace,
    Matrix,
    Subspace,
    Vector,
    compose,
    vec_is_zero,
)
from .hodge import AxiomReport, HodgeData, verify
from .rationals import ZERO
from .trees import PlanarTree, enumerate_trees

__all__ = [
    "TransferError",
    "MinimalModelError",
    "TransferredStructure",
    "MinimalModelReport",
    "evaluate_tree",
    "transfer",
    "minimal_model",
]


class TransferError(ValueError):
    pass


class MinimalModelError(TransferError):
    """A minimal-model precondition failed; ``report`` carries the witnesses."""

    def __init__(self, message: str, report: Optional[dict] = None) -> None:
        super().__init__(message)
        self.report = report or {}


def _shifted_endomorphism(f: GradedMap, shifted: GradedSpace) -> SparseOp:
    """Transport an endomorphism of V to the shift: same matrix, same parity."""
    return SparseOp.from_graded_map(GradedMap(shifted, shifted, f.parity, f.matrix))


def _eval_vertex(node: PlanarTree, A: AInfinityStructure,
                 s_op: SparseOp, t_op: SparseOp) -> SparseOp:
    k = len(node.children)
    if k > A.cutoff:
        raise TransferError(
            f"tree vertex of arity {k} exceeds the structure cutoff {A.cutoff}"
        )
    children: list[SparseOp] = []
    for child in node.children:
        if child.is_leaf:
            children.append(t_op)
        else:
            children.append(s_op.graft([_eval_vertex(child, A, s_op, t_op)]))
    return A.op(k).graft(children)


def evaluate_tree(tree: PlanarTree, A: AInfinityStructure, H: HodgeData) -> SparseOp:
    """The operator of a single tree: t at every extremity, s inside."""
    if tree.is_leaf:
        raise TransferError("cannot evaluate a bare leaf")
    s_op = _shifted_endomorphism(H.s, A.shifted)
    t_op = _shifted_endomorphism(H.t, A.shifted)
    return t_op.graft([_eval_vertex(tree, A, s_op, t_op)])


@dataclass(frozen=True)
class TransferredStructure:
    """Transferred operations plus their restriction to the harmonic basis.

    ``ambient_ops`` live on the shift of V; the ``harmonic`` structure is the
    same data in the coordinates of the chosen basis of im t (present only
    when im t is d-closed).  ``restricted_form`` is filled by minimal_model.
    """

    cutoff: int
    ambient_ops: dict
    hodge: HodgeData
    harmonic: Optional[AInfinityStructure]
    harmonic_basis: tuple[Vector, ...]
    restricted_form: Optional[BilinearForm] = None
    restricted_form_nondegenerate: Optional[bool] = None

    def as_dict(self) -> dict:
        from .rationals import format_scalar

        ops = []
        source = self.harmonic if self.harmonic is not None else None
        if source is not None:
            ops = source.ops_as_dict()["operations"]
        else:
            for n in sorted(self.ambient_ops):
                op = self.ambient_ops[n]
                ops.append({
                    "n": n,
                    "entries": [{"in": list(i), "out": o, "c": format_scalar(c)}
                                for i, o, c in op.entry_list()],
                })
        out = {"cutoff": self.cutoff, "operations": ops}
        if self.harmonic is not None:
            block = {
                "names": list(self.harmonic.dg.space.names),
                "parities": list(self.harmonic.dg.space.parities),
                "vectors": [[format_scalar(x) for x in col] for col in self.harmonic_basis],
            }
            if self.restricted_form is not None:
                block["form"] = [[format_scalar(x) for x in row]
                                 for row in self.restricted_form.matrix]
                block["nondegenerate"] = self.restricted_form_nondegenerate
            out["harmonic_basis"] = block
        return out


def _structural_checks(A: AInfinityStructure, H: HodgeData) -> None:
    V = A.dg
    one = GradedMap.identity(V.space)
    if H.s.parity != 1 or H.t.parity != 0:
        raise TransferError("Hodge operators have wrong parities")
    if not compose(H.s, H.s).is_zero():
        raise TransferError("s does not square to zero")
    if not compose(H.s, V.d).add(compose(V.d, H.s)).sub(one.sub(H.t)).is_zero():
        raise TransferError("sd + ds != 1 - t; not Hodge data for this differential")
    if not (compose(H.s, H.t).is_zero() and compose(H.t, H.s).is_zero()):
        raise TransferError("st and ts must vanish")
    if not compose(H.t, H.t).sub(H.t).is_zero():
        raise TransferError("t is not idempotent")


def _is_identity_embedding(basis: Sequence[Vector], dim: int) -> bool:
    if len(basis) != dim:
        return False
    for j, col in enumerate(basis):
        if any(col[i] != (1 if i == j else 0) for i in range(dim)):
            return False
    return True


def _restrict_ops(ambient_ops: dict, W: Subspace, V: DgSpace, cutoff: int) -> AInfinityStructure:
    amb_shift = V.space.reversed()
    names = tuple(f"h{i}" for i in range(W.dim))
    parities = tuple(V.space.parity_of(v) for v in W.vectors)
    h_space = GradedSpace(names, parities)  # type: ignore[arg-type]
    h_dg = DgSpace(h_space, GradedMap.zero(h_space, h_space, 1))
    h_shift = h_space.reversed()

    if _is_identity_embedding(W.vectors, V.space.dim):
        ops = {n: SparseOp(h_shift, n, op.parity, op.entries)
               for n, op in ambient_ops.items()}
        return AInfinityStructure(h_dg, cutoff, ops)

    ops = {}
    import itertools

    for n, op in ambient_ops.items():
        entries: dict[tuple[int, ...], dict] = {}
        if not op.is_zero():
            for ins in itertools.product(range(W.dim), repeat=n):
                value = op.apply([W.vectors[i] for i in ins])
                if vec_is_zero(value):
                    continue
                coords = W.coords_of(value)
                if coords is None:
                    raise TransferError(
                        "transferred operation does not preserve the harmonic subspace"
                    )
                outs = {o: c for o, c in enumerate(coords) if c != 0}
                if outs:
                    entries[ins] = outs
        ops[n] = SparseOp(h_shift, n, 1, entries)
    return AInfinityStructure(h_dg, cutoff, ops)


def transfer(A: AInfinityStructure, H: HodgeData, cutoff: int) -> TransferredStructure:
    """Sum the tree operators for every arity 2..cutoff.

    Exact arithmetic makes the summation order irrelevant; the harmonic
    restriction is computed whenever im t is closed under d (in particular
    for harmonious data).
    """
    if cutoff < 2:
        raise TransferError("transfer cutoff must be at least 2")
    if cutoff > A.cutoff:
        raise TransferError(
            f"transfer cutoff {cutoff} exceeds the structure cutoff {A.cutoff}; "
            "operations beyond the structure cutoff are unknown"
        )
    _structural_checks(A, H)
    V = A.dg
    s_op = _shifted_endomorphism(H.s, A.shifted)
    t_op = _shifted_endomorphism(H.t, A.shifted)

    ambient_ops: dict[int, SparseOp] = {}
    for n in range(2, cutoff + 1):
        total = SparseOp.zero(A.shifted, n)
        for tree in enumerate_trees(n):
            total = total.add(t_op.graft([_eval_vertex(tree, A, s_op, t_op)]))
        ambient_ops[n] = total

    W = H.t.image()
    harmonic = None
    if all(vec_is_zero(V.d(w)) for w in W.vectors):
        harmonic = _restrict_ops(ambient_ops, W, V, cutoff)
    return TransferredStructure(cutoff, ambient_ops, H, harmonic, tuple(W.vectors))


@dataclass(frozen=True)
class MinimalModelReport:
    input_form: FormReport
    input_stasheff: StasheffReport
    input_cyclic: CyclicReport
    hodge: AxiomReport
    output_stasheff: Optional[StasheffReport]
    output_cyclic: Optional[CyclicReport]
    m1_zero: Optional[bool]
    restricted_form_nondegenerate: Optional[bool]

    @property
    def preconditions_pass(self) -> bool:
        return (self.input_form.passed and self.input_stasheff.passed
                and self.input_cyclic.passed and self.hodge.passes_harmonious)

    @property
    def passed(self) -> bool:
        return (self.preconditions_pass
                and self.output_stasheff is not None and self.output_stasheff.passed
                and self.output_cyclic is not None and self.output_cyclic.passed
                and bool(self.m1_zero))

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "input": {
                "form": self.input_form.as_dict(),
                "stasheff": self.input_stasheff.as_dict(),
                "cyclic": self.input_cyclic.as_dict(),
                "hodge": self.hodge.as_dict(),
            },
            "output": {
                "stasheff": self.output_stasheff.as_dict() if self.output_stasheff else None,
                "cyclic": self.output_cyclic.as_dict() if self.output_cyclic else None,
                "m1_zero": self.m1_zero,
                "restricted_form_nondegenerate": self.restricted_form_nondegenerate,
            },
        }


def minimal_model(A: AInfinityStructure, B: BilinearForm, H: HodgeData,
                  cutoff: int) -> tuple[TransferredStructure, MinimalModelReport]:
    """Transfer to the harmonic basis with full before/after verification.

    Preconditions (each reported with witnesses on failure): the form passes
    its identity checks, the input passes higher associativity and rotation
    invariance up to the cutoff, and the Hodge data passes all seven axioms
    plus harmoniousness.  The output report re-runs the associativity and
    rotation checks on the restricted structure, asserts the restricted
    differential vanishes, and records whether the restricted form is
    nondegenerate.
    """
    form_rep = check_form(A.dg, B)
    stasheff_rep = check_stasheff(A)
    cyclic_rep = check_cyclic(A, B)
    hodge_rep = verify(H, A.dg, B)

    def bail(msg: str) -> MinimalModelError:
        partial = MinimalModelReport(form_rep, stasheff_rep, cyclic_rep, hodge_rep,
                                     None, None, None, None)
        return MinimalModelError(msg, partial.as_dict())

    if not form_rep.passed:
        raise bail("form fails symmetry/compatibility checks")
    if not stasheff_rep.passed:
        raise bail("input structure fails higher associativity")
    if not cyclic_rep.passed:
        raise bail("input structure is not cyclic for this form")
    if not hodge_rep.axioms_pass:
        raise bail(f"Hodge data fails axioms: {hodge_rep.failures()}")
    if not hodge_rep.harmonious:
        raise bail("Hodge data is not harmonious; im t does not carry the homology")

    ts = transfer(A, H, cutoff)
    assert ts.harmonic is not None  # harmonious => im t is d-closed
    m1_zero = ts.harmonic.m1.is_zero()

    W = Subspace(A.dg.space, ts.harmonic_basis)
    restricted = BilinearForm(ts.harmonic.dg.space, B.parity, B.symmetry,
                              B.restrict_matrix(W))
    out_stasheff = check_stasheff(ts.harmonic)
    out_cyclic = check_cyclic(ts.harmonic, restricted)
    nondeg = restricted.is_nondegenerate_on(Subspace.full(restricted.space))

    report = MinimalModelReport(form_rep, stasheff_rep, cyclic_rep, hodge_rep,
                                out_stasheff, out_cyclic, m1_zero, nondeg)
    result = TransferredStructure(ts.cutoff, ts.ambient_ops, ts.hodge, ts.harmonic,
                                  ts.harmonic_basis, restricted, nondeg)
    return result, report
