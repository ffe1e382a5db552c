"""Exact Z/2-graded linear algebra over the rationals.

Spaces carry an ordered basis with parities (0 = even, 1 = odd).  Maps and
bilinear forms are dense rational matrices constrained to be parity
homogeneous.  All pivoting is deterministic (leftmost nonzero column, first
available row) so repeated runs produce identical bases.

Matrix convention: a map ``f`` with matrix ``M`` sends basis vector ``e_j``
of the source to ``sum_i M[i][j] e_i`` in the target; vectors are coordinate
tuples.  A bilinear form has ``matrix[i][j] = <e_i, e_j>``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .rationals import ONE, ZERO

__all__ = [
    "Vector",
    "Matrix",
    "GradedError",
    "GradedSpace",
    "GradedMap",
    "DgSpace",
    "BilinearForm",
    "Subspace",
    "HomologyData",
    "compose",
    "slot_apply",
    "homology",
    "radical",
    "rref",
    "kernel_basis",
    "solve",
    "invert",
    "matrix_rank",
]

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


class GradedError(ValueError):
    """Raised on dimension, parity or homogeneity violations."""


# ---------------------------------------------------------------------------
# plain rational matrix kernels


def _as_matrix(rows: Iterable[Iterable[Fraction]]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Fraction, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def vec_is_zero(v: Vector) -> bool:
    return all(a == 0 for a in v)


def rref(matrix: Sequence[Sequence[Fraction]]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with deterministic pivoting.

    Returns the reduced matrix and the pivot column indices.  Pivots are
    chosen leftmost-column-first, earliest-row-first.
    """
    rows = [list(row) for row in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return _as_matrix(rows), tuple(pivots)


def matrix_rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    _, pivots = rref(matrix)
    return len(pivots)


def kernel_basis(matrix: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> list[Vector]:
    """Basis of the null space ``{x : M x = 0}``, deterministic."""
    nrows = len(matrix)
    if ncols is None:
        if nrows == 0:
            raise GradedError("kernel of a 0-row matrix needs an explicit column count")
        ncols = len(matrix[0])
    if nrows == 0:
        return [tuple(ONE if i == j else ZERO for i in range(ncols)) for j in range(ncols)]
    red, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis: list[Vector] = []
    for fc in free:
        vec = [ZERO] * ncols
        vec[fc] = ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(tuple(vec))
    return basis


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Vector]:
    """One solution of ``M x = rhs`` (deterministic: free variables zero), or None."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if nrows == 0:
        return zero_vector(ncols)
    aug = [list(matrix[i]) + [Fraction(rhs[i])] for i in range(nrows)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    sol = [ZERO] * ncols
    for r, pc in enumerate(pivots):
        sol[pc] = red[r][ncols]
    return tuple(sol)


def invert(matrix: Sequence[Sequence[Fraction]]) -> Matrix:
    """Inverse of a square rational matrix; raises GradedError if singular."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise GradedError("cannot invert a non-square matrix")
    aug = [list(matrix[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
        raise GradedError("matrix is singular")
    return _as_matrix(row[n:] for row in red)


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    nrows = len(a)
    inner = len(b)
    ncols = len(b[0]) if inner else 0
    out = []
    for i in range(nrows):
        row_a = a[i]
        row = [ZERO] * ncols
        for k in range(inner):
            aik = row_a[k]
            if aik == 0:
                continue
            row_b = b[k]
            for j in range(ncols):
                if row_b[j] != 0:
                    row[j] += aik * row_b[j]
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(sum((row[k] * v[k] for k in range(len(v)) if v[k] != 0), ZERO) for row in a)


def columns_to_matrix(cols: Sequence[Vector], dim: int) -> Matrix:
    return tuple(tuple(col[i] for col in cols) for i in range(dim))


def independent_subset(cols: Sequence[Vector], dim: int, start: Sequence[Vector] = ()) -> list[Vector]:
    """Greedily extend ``start`` by columns from ``cols`` keeping independence."""
    kept = list(start)
    rank = matrix_rank(columns_to_matrix(kept, dim)) if kept else 0
    for col in cols:
        trial = kept + [col]
        if matrix_rank(columns_to_matrix(trial, dim)) > rank:
            kept.append(col)
            rank += 1
    return kept


# ---------------------------------------------------------------------------
# graded spaces


@dataclass(frozen=True)
class GradedSpace:
    """Finite ordered basis with Z/2 parities; names must be unique."""

    names: tuple[str, ...]
    parities: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.names) != len(self.parities):
            raise GradedError("basis names and parities differ in length")
        if len(set(self.names)) != len(self.names):
            raise GradedError("basis names must be unique")
        if any(p not in (0, 1) for p in self.parities):
            raise GradedError("parities must be 0 or 1")

    @property
    def dim(self) -> int:
        return len(self.names)

    def reversed(self) -> "GradedSpace":
        """Parity reversion: same basis, every parity flipped.  An involution."""
        return GradedSpace(self.names, tuple(1 - p for p in self.parities))

    def parity_of(self, v: Vector) -> Optional[int]:
        """Parity of a homogeneous vector (None for the zero vector)."""
        if len(v) != self.dim:
            raise GradedError("vector length does not match space dimension")
        seen = {self.parities[i] for i, c in enumerate(v) if c != 0}
        if not seen:
            return None
        if len(seen) > 1:
            raise GradedError("vector is not homogeneous")
        return seen.pop()

    def basis_vector(self, i: int) -> Vector:
        return tuple(ONE if j == i else ZERO for j in range(self.dim))

    def dims_by_parity(self) -> tuple[int, int]:
        even = sum(1 for p in self.parities if p == 0)
        return even, self.dim - even


def standard_space(parities: Sequence[int], prefix: str = "e") -> GradedSpace:
    return GradedSpace(tuple(f"{prefix}{i}" for i in range(len(parities))), tuple(parities))


# ---------------------------------------------------------------------------
# graded maps


@dataclass(frozen=True)
class GradedMap:
    """Parity-homogeneous linear map between graded spaces."""

    source: GradedSpace
    target: GradedSpace
    parity: int
    matrix: Matrix

    def __post_init__(self) -> None:
        if self.parity not in (0, 1):
            raise GradedError("map parity must be 0 or 1")
        m = _as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.dim or any(len(row) != self.source.dim for row in m):
            raise GradedError("matrix shape does not match source/target dimensions")
        for i in range(self.target.dim):
            for j in range(self.source.dim):
                if m[i][j] != 0 and (self.target.parities[i] - self.source.parities[j] - self.parity) % 2 != 0:
                    raise GradedError(
                        f"entry ({i},{j}) violates parity: map of parity {self.parity} "
                        f"cannot send a parity-{self.source.parities[j]} vector to "
                        f"parity {self.target.parities[i]}"
                    )

    @property
    def arity(self) -> int:
        return 1

    @staticmethod
    def identity(space: GradedSpace) -> "GradedMap":
        n = space.dim
        return GradedMap(space, space, 0, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(source: GradedSpace, target: GradedSpace, parity: int) -> "GradedMap":
        return GradedMap(source, target, parity, tuple((ZERO,) * source.dim for _ in range(target.dim)))

    def __call__(self, v: Vector) -> Vector:
        if len(v) != self.source.dim:
            raise GradedError("vector length does not match map source")
        return mat_vec(self.matrix, v)

    def apply(self, vectors: Sequence[Vector]) -> Vector:
        if len(vectors) != 1:
            raise GradedError("a GradedMap takes exactly one argument")
        return self(vectors[0])

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.matrix)

    def add(self, other: "GradedMap") -> "GradedMap":
        if (self.source, self.target, self.parity) != (other.source, other.target, other.parity):
            raise GradedError("cannot add maps of different shapes or parities")
        return GradedMap(self.source, self.target, self.parity,
                         tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.matrix, other.matrix)))

    def sub(self, other: "GradedMap") -> "GradedMap":
        return self.add(other.scale(Fraction(-1)))

    def scale(self, c: Fraction) -> "GradedMap":
        return GradedMap(self.source, self.target, self.parity,
                         tuple(tuple(c * a for a in row) for row in self.matrix))

    def image(self) -> "Subspace":
        cols = [tuple(self.matrix[i][j] for i in range(self.target.dim)) for j in range(self.source.dim)]
        cols = [c for c in cols if not vec_is_zero(c)]
        basis = independent_subset(cols, self.target.dim)
        return Subspace(self.target, tuple(basis))

    def kernel(self) -> "Subspace":
        """Kernel with a homogeneous basis (computed per parity)."""
        vecs: list[Vector] = []
        for parity in (0, 1):
            idx = [j for j in range(self.source.dim) if self.source.parities[j] == parity]
            if not idx:
                continue
            sub = [[self.matrix[i][j] for j in idx] for i in range(self.target.dim)]
            for k in kernel_basis(sub, ncols=len(idx)):
                full = [ZERO] * self.source.dim
                for pos, j in enumerate(idx):
                    full[j] = k[pos]
                vecs.append(tuple(full))
        return Subspace(self.source, tuple(vecs))


def compose(g: GradedMap, f: GradedMap) -> GradedMap:
    """Composite ``g o f``; parities add mod 2."""
    if f.target != g.source:
        raise GradedError("compose: target of inner map differs from source of outer map")
    return GradedMap(f.source, g.target, (f.parity + g.parity) % 2, mat_mul(g.matrix, f.matrix))


def conjugate(f: GradedMap, g: GradedMap, g_inv: Optional[GradedMap] = None) -> GradedMap:
    """``g o f o g^-1`` for an even isomorphism g on the same space."""
    if g_inv is None:
        g_inv = GradedMap(g.target, g.source, 0, invert(g.matrix))
    return compose(compose(g, f), g_inv)


# ---------------------------------------------------------------------------
# Koszul slot application


def slot_apply(f, i: int, args: Sequence[Vector], space: GradedSpace) -> tuple[int, list[Vector]]:
    """Apply ``id^i (x) f (x) id^rest`` to homogeneous vectors, Koszul sign out front.

    ``f`` needs ``arity``, ``parity`` and ``apply(list_of_vectors) -> vector``;
    both GradedMap (arity 1) and sparse multilinear operators qualify.  The
    emitted sign is ``(-1)^(|f| * (|a_1| + ... + |a_i|))``; slots other than
    the ``arity`` consumed ones pass through unchanged.
    """
    n = len(args)
    k = f.arity
    if i < 0 or i + k > n:
        raise GradedError(f"slot {i} out of range for arity-{k} operator on {n} arguments")
    sign = 1
    if f.parity % 2 == 1:
        passed = 0
        for j in range(i):
            p = space.parity_of(args[j])
            if p:
                passed += 1
        if passed % 2 == 1:
            sign = -1
    result = list(args[:i])
    result.append(f.apply(list(args[i:i + k])))
    result.extend(args[i + k:])
    return sign, result


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """Span of homogeneous, linearly independent coordinate columns."""

    ambient: GradedSpace
    vectors: tuple[Vector, ...]

    def __post_init__(self) -> None:
        vecs = tuple(tuple(Fraction(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        for v in vecs:
            if len(v) != self.ambient.dim:
                raise GradedError("spanning vector has wrong length")
            if vec_is_zero(v):
                raise GradedError("spanning vectors must be nonzero")
            self.ambient.parity_of(v)  # raises if inhomogeneous
        if vecs and matrix_rank(columns_to_matrix(vecs, self.ambient.dim)) != len(vecs):
            raise GradedError("spanning vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @staticmethod
    def zero(ambient: GradedSpace) -> "Subspace":
        return Subspace(ambient, ())

    @staticmethod
    def full(ambient: GradedSpace) -> "Subspace":
        return Subspace(ambient, tuple(ambient.basis_vector(i) for i in range(ambient.dim)))

    @staticmethod
    def spanned_by(ambient: GradedSpace, cols: Sequence[Vector]) -> "Subspace":
        basis = independent_subset([c for c in cols if not vec_is_zero(c)], ambient.dim)
        return Subspace(ambient, tuple(basis))

    def matrix(self) -> Matrix:
        return columns_to_matrix(self.vectors, self.ambient.dim)

    def coords_of(self, v: Vector) -> Optional[Vector]:
        if self.dim == 0:
            return () if vec_is_zero(v) else None
        return solve(self.matrix(), v)

    def contains(self, v: Vector) -> bool:
        return self.coords_of(v) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def same_span(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.contains_subspace(other)

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise GradedError("subspace sum needs a common ambient space")
        return Subspace.spanned_by(self.ambient, list(self.vectors) + list(other.vectors))

    def parities(self) -> tuple[int, ...]:
        return tuple(self.ambient.parity_of(v) for v in self.vectors)  # type: ignore[misc]

    def complement_in(self, within: "Subspace") -> "Subspace":
        """A complement of self inside ``within`` chosen from within's basis, deterministic."""
        if not within.contains_subspace(self):
            raise GradedError("complement_in: subspace is not contained in the given space")
        kept = independent_subset(list(within.vectors), self.ambient.dim, start=list(self.vectors))
        return Subspace(self.ambient, tuple(kept[self.dim:]))


def full_complement(sub: Subspace) -> Subspace:
    """Complement of a subspace inside the whole ambient space (from standard basis)."""
    return sub.complement_in(Subspace.full(sub.ambient))


# ---------------------------------------------------------------------------
# dg spaces and homology


@dataclass(frozen=True)
class DgSpace:
    """Graded space with an odd square-zero differential."""

    space: GradedSpace
    d: GradedMap

    def __post_init__(self) -> None:
        if self.d.source != self.space or self.d.target != self.space:
            raise GradedError("differential must be an endomorphism of the space")
        if self.d.parity != 1:
            raise GradedError("differential must be odd")
        if not compose(self.d, self.d).is_zero():
            raise GradedError("differential does not square to zero")

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass(frozen=True)
class HomologyData:
    betti: tuple[int, int]
    representatives: Subspace
    boundaries: Subspace
    cycles: Subspace


def homology(V: DgSpace) -> HomologyData:
    """Cycles, boundaries and deterministic homology representatives.

    Representatives are cycle-kernel basis vectors extending the boundary
    basis (first-available pivot order), so repeated runs agree.
    """
    cycles = V.d.kernel()
    boundaries = V.d.image()
    ext = independent_subset(list(cycles.vectors), V.dim, start=list(boundaries.vectors))
    reps = Subspace(V.space, tuple(ext[boundaries.dim:]))
    even = sum(1 for v in reps.vectors if V.space.parity_of(v) == 0)
    return HomologyData((even, reps.dim - even), reps, boundaries, cycles)


# ---------------------------------------------------------------------------
# bilinear forms


@dataclass(frozen=True)
class BilinearForm:
    """Homogeneous bilinear form with a declared symmetry sign.

    ``matrix[i][j] = <e_i, e_j>``.  With ``validate=True`` (default) the
    constructor enforces parity homogeneity and the symmetry identity
    ``<x,y> = symmetry * (-1)^(|x||y|) <y,x>`` entrywise; pass
    ``validate=False`` to carry candidate data for checkers to report on.
    """

    space: GradedSpace
    parity: int
    symmetry: int
    matrix: Matrix
    validate: bool = True

    def __post_init__(self) -> None:
        m = _as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if self.parity not in (0, 1):
            raise GradedError("form parity must be 0 or 1")
        if self.symmetry not in (1, -1):
            raise GradedError("form symmetry must be +1 or -1")
        n = self.space.dim
        if len(m) != n or any(len(row) != n for row in m):
            raise GradedError("form matrix must be square of the space dimension")
        if self.validate:
            bad = self.homogeneity_violations() + self.symmetry_violations()
            if bad:
                i, j, why = bad[0]
                raise GradedError(f"form entry ({i},{j}) invalid: {why}")

    def homogeneity_violations(self) -> list[tuple[int, int, str]]:
        out = []
        p = self.space.parities
        for i in range(self.space.dim):
            for j in range(self.space.dim):
                if self.matrix[i][j] != 0 and (p[i] + p[j]) % 2 != self.parity:
                    out.append((i, j, f"nonzero on parities ({p[i]},{p[j]}) for a parity-{self.parity} form"))
        return out

    def symmetry_violations(self) -> list[tuple[int, int, str]]:
        out = []
        p = self.space.parities
        for i in range(self.space.dim):
            for j in range(self.space.dim):
                sign = self.symmetry * (-1) ** (p[i] * p[j])
                if self.matrix[i][j] != sign * self.matrix[j][i]:
                    out.append((i, j, f"<e{i},e{j}> = {self.matrix[i][j]} but symmetry demands {sign * self.matrix[j][i]}"))
        return out

    def value(self, x: Vector, y: Vector) -> Fraction:
        total = ZERO
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.matrix[i]
            for j, yj in enumerate(y):
                if yj != 0 and row[j] != 0:
                    total += xi * row[j] * yj
        return total

    def compatibility_violations(self, V: DgSpace) -> list[tuple[int, int, Fraction]]:
        """Entries where ``<d e_i, e_j> + (-1)^|e_i| <e_i, d e_j>`` is nonzero."""
        out = []
        n = self.space.dim
        for i in range(n):
            ei = self.space.basis_vector(i)
            dei = V.d(ei)
            sign = -1 if self.space.parities[i] else 1
            for j in range(n):
                ej = self.space.basis_vector(j)
                val = self.value(dei, ej) + sign * self.value(ei, V.d(ej))
                if val != 0:
                    out.append((i, j, val))
        return out

    def is_compatible(self, V: DgSpace) -> bool:
        return not self.compatibility_violations(V)

    def orthogonal_in(self, of: Subspace, within: Subspace) -> Subspace:
        """{x in within : <x, y> = 0 for all y in of}, homogeneous basis."""
        amb = self.space
        conds = []
        for y in of.vectors:
            conds.append(tuple(self.value(amb.basis_vector(i), y) for i in range(amb.dim)))
        vecs: list[Vector] = []
        for parity in (0, 1):
            idx = [k for k, v in enumerate(within.vectors) if amb.parity_of(v) == parity]
            if not idx:
                continue
            rows = [[sum(cond[i] * within.vectors[k][i] for i in range(amb.dim)) for k in idx] for cond in conds]
            if not rows:
                rows = []
            for coeffs in kernel_basis(rows, ncols=len(idx)):
                vec = zero_vector(amb.dim)
                for pos, k in enumerate(idx):
                    if coeffs[pos] != 0:
                        vec = vec_add(vec, vec_scale(coeffs[pos], within.vectors[k]))
                vecs.append(vec)
        return Subspace.spanned_by(amb, vecs)

    def restrict_matrix(self, sub: Subspace) -> Matrix:
        return tuple(tuple(self.value(u, v) for v in sub.vectors) for u in sub.vectors)

    def is_nondegenerate_on(self, sub: Subspace) -> bool:
        if sub.dim == 0:
            return True
        return matrix_rank(self.restrict_matrix(sub)) == sub.dim


def radical(B: BilinearForm, V: Optional[DgSpace] = None) -> Subspace:
    """The radical {x : <x, y> = 0 for all y}; d-stable when a compatible
    differential is supplied (asserted)."""
    rad = B.orthogonal_in(Subspace.full(B.space), Subspace.full(B.space))
    if V is not None:
        for v in rad.vectors:
            if not rad.contains(V.d(v)):
                raise GradedError("radical is not d-stable; the form is not compatible with d")
    return rad
