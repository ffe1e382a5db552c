"""Randomized desk-scale instances for tests and experiments.

Hodge instances are assembled from explicit orthogonal model blocks (zero
form, nondegenerate with zero differential, nondegenerate contractible) and
then smeared by a random parity-preserving change of basis, so every
generated pair (V, B) provably admits a harmonious decomposition while the
matrices look arbitrary.  The generators self-check the data they emit.

Associative inputs come from small Frobenius-type building blocks (truncated
polynomial, exterior, contractible) combined by orthogonal sums and graded
tensor products, again followed by a random change of basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .ainfinity import AInfinityStructure, dga_structure
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
    homology,
    invert,
    mat_mul,
    mat_vec,
    solve,
    standard_space,
    vec_is_zero,
)
from .hodge import AlmostHodgeData, HodgeData, decompose, verify
from .rationals import ONE, ZERO

__all__ = [
    "HodgeInstance",
    "AlmostInstance",
    "DgaInstance",
    "random_even_automorphism",
    "random_hodge_instance",
    "random_almost_instance",
    "random_cyclic_dga",
    "dga_to_structure",
    "massey_instance",
    "second_hodge_decomposition",
    "induced_homology_product",
    "corrupt_st_breaking_67",
]

F = Fraction


def _nonzero_rational(rng: random.Random) -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 2, 3])
    den = rng.choice([1, 1, 2, 3])
    return F(num, den)


def random_even_automorphism(space: GradedSpace, rng: random.Random,
                             shears: int = 6) -> GradedMap:
    """Random parity-preserving invertible map: diagonal units + shears."""
    n = space.dim
    mat = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for i in range(n):
        mat[i][i] = F(rng.choice([1, 1, 1, -1]))
    same = {0: [i for i in range(n) if space.parities[i] == 0],
            1: [i for i in range(n) if space.parities[i] == 1]}
    for _ in range(shears):
        par = rng.choice([0, 1])
        idx = same[par]
        if len(idx) < 2:
            continue
        i, j = rng.sample(idx, 2)
        c = F(rng.choice([-2, -1, 1, 2]))
        for k in range(n):
            mat[i][k] += c * mat[j][k]
    return GradedMap(space, space, 0, tuple(tuple(row) for row in mat))


# ---------------------------------------------------------------------------
# model blocks for Hodge instances


@dataclass
class _Model:
    parities: list
    d: dict            # (row, col) -> coeff
    form: dict         # (row, col) -> coeff
    s: dict            # (row, col) -> coeff
    t_diag: list       # indices where t = 1
    units: list        # groups of (u, v) index pairs scaled together
    harmonic_parities: list

    def dim(self) -> int:
        return len(self.parities)

    def add_basis(self, parity: int) -> int:
        self.parities.append(parity)
        return len(self.parities) - 1


def _add_zero_h(model: _Model, parity: int) -> None:
    i = model.add_basis(parity)
    model.t_diag.append(i)
    model.harmonic_parities.append(parity)


def _add_zero_contractible(model: _Model, eps: int) -> None:
    u = model.add_basis(eps)
    v = model.add_basis((eps + 1) % 2)
    model.d[(v, u)] = ONE
    model.s[(u, v)] = ONE
    model.units.append([(u, v)])


def _add_harmonic_unit(model: _Model, p: int, sigma: int, rng: random.Random) -> None:
    c = _nonzero_rational(rng)
    if p == 0 and sigma == 1:
        if rng.random() < 0.5:
            i = model.add_basis(0)
            model.form[(i, i)] = c
            model.t_diag.append(i)
            model.harmonic_parities.append(0)
        else:
            i = model.add_basis(1)
            j = model.add_basis(1)
            model.form[(i, j)] = c
            model.form[(j, i)] = -c
            model.t_diag += [i, j]
            model.harmonic_parities += [1, 1]
    elif p == 0 and sigma == -1:
        if rng.random() < 0.5:
            i = model.add_basis(1)
            model.form[(i, i)] = c
            model.t_diag.append(i)
            model.harmonic_parities.append(1)
        else:
            i = model.add_basis(0)
            j = model.add_basis(0)
            model.form[(i, j)] = c
            model.form[(j, i)] = -c
            model.t_diag += [i, j]
            model.harmonic_parities += [0, 0]
    else:
        e = model.add_basis(0)
        o = model.add_basis(1)
        model.form[(e, o)] = c
        model.form[(o, e)] = sigma * c
        model.t_diag += [e, o]
        model.harmonic_parities += [0, 1]


def _add_contractible_unit(model: _Model, p: int, sigma: int, rng: random.Random) -> None:
    c = _nonzero_rational(rng)
    if p == 1:
        # one self-paired pair (u, du); the symmetry pins the parity of u
        eps = 1 if sigma == 1 else 0
        u = model.add_basis(eps)
        v = model.add_basis((eps + 1) % 2)
        model.d[(v, u)] = ONE
        model.s[(u, v)] = ONE
        model.form[(v, u)] = c
        model.form[(u, v)] = sigma * c
        model.units.append([(u, v)])
    else:
        # hyperbolic pair of contractible pieces of opposite parities
        eps = rng.choice([0, 1])
        u1 = model.add_basis(eps)
        v1 = model.add_basis((eps + 1) % 2)
        u2 = model.add_basis((eps + 1) % 2)
        v2 = model.add_basis(eps)
        model.d[(v1, u1)] = ONE
        model.d[(v2, u2)] = ONE
        model.s[(u1, v1)] = ONE
        model.s[(u2, v2)] = ONE
        model.form[(v1, u2)] = c
        model.form[(u2, v1)] = F(sigma) * F((-1) ** (eps + 1)) * c
        model.form[(u1, v2)] = F((-1) ** (eps + 1)) * c
        model.form[(v2, u1)] = F(-sigma) * c
        model.units.append([(u1, v1), (u2, v2)])


def _model_to_instance(model: _Model, p: int, sigma: int, rng: random.Random,
                       conjugate: bool = True):
    n = model.dim()
    space = standard_space(model.parities)

    def dense(entries: dict) -> Matrix:
        out = [[ZERO] * n for _ in range(n)]
        for (i, j), c in entries.items():
            out[i][j] = c
        return tuple(tuple(r) for r in out)

    d_mat = dense(model.d)
    s_mat = dense(model.s)
    t_entries = {(i, i): ONE for i in model.t_diag}
    t_mat = dense(t_entries)
    form_mat = dense(model.form)

    if conjugate and n > 0:
        g = random_even_automorphism(space, rng)
        g_inv = invert(g.matrix)
        d_mat = mat_mul(mat_mul(g.matrix, d_mat), g_inv)
        s_mat = mat_mul(mat_mul(g.matrix, s_mat), g_inv)
        t_mat = mat_mul(mat_mul(g.matrix, t_mat), g_inv)
        g_inv_t = tuple(tuple(g_inv[j][i] for j in range(n)) for i in range(n))
        form_mat = mat_mul(mat_mul(g_inv_t, form_mat), g_inv)

    V = DgSpace(space, GradedMap(space, space, 1, d_mat))
    B = BilinearForm(space, p, sigma, form_mat)
    hd = HodgeData(GradedMap(space, space, 1, s_mat), GradedMap(space, space, 0, t_mat), True)
    report = verify(hd, V, B)
    if not report.passes_harmonious:
        raise GradedError(f"instance generator produced bad data: {report.failures()}")
    return V, B, hd


@dataclass(frozen=True)
class HodgeInstance:
    V: DgSpace
    B: BilinearForm
    hodge: HodgeData
    form_parity: int
    form_symmetry: int
    kind: str
    harmonic_parities: tuple


def _sample_model(rng: random.Random, p: int, sigma: int, kind: str,
                  max_dim: int, need_mixed_homology: bool) -> _Model:
    model = _Model([], {}, {}, {}, [], [], [])
    if need_mixed_homology:
        if p == 1:
            _add_harmonic_unit(model, p, sigma, rng)
        else:
            _add_zero_h(model, 0)
            _add_zero_h(model, 1)
    budget = max_dim - model.dim()
    while budget > 0:
        choices = []
        if kind in ("zero", "mixed"):
            choices += ["zero_h", "zero_c"] if budget >= 2 else ["zero_h"]
        if kind in ("nondeg", "mixed"):
            if budget >= 2:
                choices.append("harm")
            need = 2 if p == 1 else 4
            if budget >= need:
                choices.append("contract")
        if not choices:
            break
        pick = rng.choice(choices)
        if pick == "zero_h":
            _add_zero_h(model, rng.choice([0, 1]))
        elif pick == "zero_c":
            _add_zero_contractible(model, rng.choice([0, 1]))
        elif pick == "harm":
            _add_harmonic_unit(model, p, sigma, rng)
        else:
            _add_contractible_unit(model, p, sigma, rng)
        budget = max_dim - model.dim()
        if model.dim() >= 1 and rng.random() < 0.25:
            break
    if model.dim() == 0:
        _add_zero_h(model, rng.choice([0, 1]))
    return model


def random_hodge_instance(rng: random.Random, max_dim: int = 6,
                          kind: Optional[str] = None,
                          need_mixed_homology: bool = False) -> HodgeInstance:
    """A random (V, B, genuine harmonious data) triple.

    ``kind`` picks the form class: "zero" (identically zero), "nondeg"
    (nondegenerate) or "mixed" (properly degenerate); default random.
    """
    p = rng.choice([0, 1])
    sigma = rng.choice([1, -1])
    if kind is None:
        kind = rng.choice(["zero", "nondeg", "mixed"])
    model = _sample_model(rng, p, sigma, kind, max_dim, need_mixed_homology)
    V, B, hd = _model_to_instance(model, p, sigma, rng)
    return HodgeInstance(V, B, hd, p, sigma, kind, tuple(model.harmonic_parities))


@dataclass(frozen=True)
class AlmostInstance:
    V: DgSpace
    B: BilinearForm
    almost: AlmostHodgeData
    genuine: HodgeData
    scalings: tuple


def random_almost_instance(rng: random.Random, max_dim: int = 6) -> AlmostInstance:
    """Almost Hodge data built by rescaling s blockwise on a genuine model.

    Each orthogonal contractible unit gets its own nonzero rational factor,
    so ds' + s'd + t is invertible but not 1; the genuine pair is returned
    as the exact expected output of the Green correction.
    """
    p = rng.choice([0, 1])
    sigma = rng.choice([1, -1])
    model = _sample_model(rng, p, sigma, "mixed" if rng.random() < 0.5 else "nondeg",
                          max_dim, need_mixed_homology=False)
    if not model.units:
        _add_zero_contractible(model, rng.choice([0, 1]))

    scalings = []
    scaled_s = dict(model.s)
    for unit in model.units:
        lam = _nonzero_rational(rng)
        scalings.append(lam)
        for (u, v) in unit:
            scaled_s[(u, v)] = lam

    n = model.dim()
    space = standard_space(model.parities)

    def dense(entries: dict) -> Matrix:
        out = [[ZERO] * n for _ in range(n)]
        for (i, j), c in entries.items():
            out[i][j] = c
        return tuple(tuple(r) for r in out)

    g = random_even_automorphism(space, rng)
    g_inv = invert(g.matrix)
    g_inv_t = tuple(tuple(g_inv[j][i] for j in range(n)) for i in range(n))

    def conj(m: Matrix) -> Matrix:
        return mat_mul(mat_mul(g.matrix, m), g_inv)

    d_mat = conj(dense(model.d))
    t_mat = conj(dense({(i, i): ONE for i in model.t_diag}))
    s_mat = conj(dense(model.s))
    s_scaled = conj(dense(scaled_s))
    form_mat = mat_mul(mat_mul(g_inv_t, dense(model.form)), g_inv)

    V = DgSpace(space, GradedMap(space, space, 1, d_mat))
    B = BilinearForm(space, p, sigma, form_mat)
    genuine = HodgeData(GradedMap(space, space, 1, s_mat), GradedMap(space, space, 0, t_mat), True)
    almost = AlmostHodgeData(GradedMap(space, space, 1, s_scaled), genuine.t)
    rep = verify(genuine, V, B)
    if not rep.passes_harmonious:
        raise GradedError(f"almost generator produced bad genuine data: {rep.failures()}")
    return AlmostInstance(V, B, almost, genuine, tuple(scalings))


# ---------------------------------------------------------------------------
# corruption helpers


def corrupt_st_breaking_67(H: HodgeData, V: DgSpace) -> Optional[GradedMap]:
    """s' = s + eps preserving axioms (1)-(3) but breaking (6)/(7) and sds = s.

    eps sends one even harmonic generator to an odd one (or back), so it
    needs homology in both parities; returns the corrupted s or None.
    """
    D = decompose(H, V)
    W = D.harmonic
    amb = V.space
    evens = [w for w in W.vectors if amb.parity_of(w) == 0]
    odds = [w for w in W.vectors if amb.parity_of(w) == 1]
    if not evens or not odds:
        return None
    cols = list(D.boundaries.vectors) + list(D.isotropic.vectors) + list(W.vectors)
    n = amb.dim
    M = tuple(tuple(c[i] for c in cols) for i in range(n))
    Minv = invert(M)
    src = cols.index(evens[0])
    dst = odds[0]
    eps = tuple(tuple(dst[i] * Minv[src][j] for j in range(n)) for i in range(n))
    s_mat = tuple(tuple(H.s.matrix[i][j] + eps[i][j] for j in range(n)) for i in range(n))
    return GradedMap(amb, amb, 1, s_mat)


# ---------------------------------------------------------------------------
# associative inputs


@dataclass(frozen=True)
class DgaInstance:
    V: DgSpace
    B: BilinearForm
    product: dict
    family: str


def _poly_block(m: int, rng: random.Random):
    """k[x]/(x^m): all even, pairing picks the top coefficient."""
    c = _nonzero_rational(rng)
    parities = [0] * m
    product = {}
    for i in range(m):
        for j in range(m):
            if i + j < m:
                product[(i, j)] = {i + j: ONE}
    form = {}
    for i in range(m):
        form[(i, m - 1 - i)] = c
    return parities, {}, product, form, 0, 1


def _exterior_block(rng: random.Random):
    """1, theta with theta odd and theta^2 = 0; odd symmetric pairing."""
    c = _nonzero_rational(rng)
    parities = [0, 1]
    product = {(0, 0): {0: ONE}, (0, 1): {1: ONE}, (1, 0): {1: ONE}}
    form = {(0, 1): c, (1, 0): c}
    return parities, {}, product, form, 1, 1


def _contractible_block(rng: random.Random):
    """1, h with h odd, dh = 1, h^2 = alpha; odd symmetric pairing."""
    alpha = rng.choice([ZERO, ONE, F(-1), F(1, 2)])
    c = _nonzero_rational(rng)
    parities = [0, 1]
    d = {(0, 1): ONE}
    product = {(0, 0): {0: ONE}, (0, 1): {1: ONE}, (1, 0): {1: ONE}}
    if alpha != 0:
        product[(1, 1)] = {0: alpha}
    form = {(0, 1): c, (1, 0): c}
    return parities, d, product, form, 1, 1


def _zero_form_block(rng: random.Random):
    """Contractible pair with all products and the pairing zero."""
    parities = [0, 1]
    d = {(0, 1): ONE}
    return parities, d, {}, {}, None, None


def _direct_sum(b1, b2):
    p1, d1, m1, f1, fp1, fs1 = b1
    p2, d2, m2, f2, fp2, fs2 = b2
    off = len(p1)
    parities = p1 + p2
    d = dict(d1)
    d.update({(i + off, j + off): c for (i, j), c in d2.items()})
    prod = {k: dict(v) for k, v in m1.items()}
    for (i, j), outs in m2.items():
        prod[(i + off, j + off)] = {k + off: c for k, c in outs.items()}
    form = dict(f1)
    form.update({(i + off, j + off): c for (i, j), c in f2.items()})
    fp = fp1 if fp1 is not None else fp2
    fs = fs1 if fs1 is not None else fs2
    if fp1 is not None and fp2 is not None and (fp1 != fp2 or fs1 != fs2):
        raise GradedError("cannot orthogonally sum forms of different types")
    return parities, d, prod, form, fp, fs


def _tensor(b1, b2):
    """Graded tensor product of two blocks (Koszul signs in product and form)."""
    p1, d1, m1, f1, fp1, fs1 = b1
    p2, d2, m2, f2, fp2, fs2 = b2
    n1, n2 = len(p1), len(p2)

    def pair(a, b):
        return a * n2 + b

    parities = [(p1[a] + p2[b]) % 2 for a in range(n1) for b in range(n2)]
    d = {}
    for (i, j), c in d1.items():
        for b in range(n2):
            d[(pair(i, b), pair(j, b))] = d.get((pair(i, b), pair(j, b)), ZERO) + c
    for (i, j), c in d2.items():
        for a in range(n1):
            sign = F(-1) ** p1[a]
            key = (pair(a, i), pair(a, j))
            d[key] = d.get(key, ZERO) + sign * c
    prod = {}
    for (i, j), outs1 in m1.items():
        for (k, l), outs2 in m2.items():
            sign = F(-1) ** (p2[k] * p1[j])
            slot = prod.setdefault((pair(i, k), pair(j, l)), {})
            for o1, c1 in outs1.items():
                for o2, c2 in outs2.items():
                    key = pair(o1, o2)
                    slot[key] = slot.get(key, ZERO) + sign * c1 * c2
    form = {}
    for (i, j), c1 in f1.items():
        for (k, l), c2 in f2.items():
            sign = F(-1) ** (p2[k] * p1[j])
            form[(pair(i, k), pair(j, l))] = sign * c1 * c2
    fp = None if fp1 is None else (fp1 + fp2) % 2
    fs = None
    return parities, d, prod, form, fp, fs


def _block_to_instance(block, rng: random.Random, family: str,
                       conjugate: bool = True) -> DgaInstance:
    parities, d_entries, product, form_entries, fp, fs = block
    n = len(parities)
    space = standard_space(parities)

    d_mat = [[ZERO] * n for _ in range(n)]
    for (i, j), c in d_entries.items():
        d_mat[i][j] = c
    form_mat = [[ZERO] * n for _ in range(n)]
    for (i, j), c in form_entries.items():
        form_mat[i][j] = c

    if fp is None:
        fp = 0
        for (i, j), c in form_entries.items():
            if c != 0:
                fp = (parities[i] + parities[j]) % 2
                break
    if fs is None:
        fs = _detect_symmetry(parities, form_mat)

    if conjugate:
        g = random_even_automorphism(space, rng)
        g_inv = invert(g.matrix)
        g_inv_t = tuple(tuple(g_inv[j][i] for j in range(n)) for i in range(n))
        d_new = mat_mul(mat_mul(g.matrix, tuple(tuple(r) for r in d_mat)), g_inv)
        form_new = mat_mul(mat_mul(g_inv_t, tuple(tuple(r) for r in form_mat)), g_inv)
        prod_new = {}
        for a in range(n):
            for b in range(n):
                out = [ZERO] * n
                for i in range(n):
                    if g_inv[i][a] == 0:
                        continue
                    for j in range(n):
                        if g_inv[j][b] == 0:
                            continue
                        for k, c in product.get((i, j), {}).items():
                            out[k] += g_inv[i][a] * g_inv[j][b] * c
                img = mat_vec(g.matrix, tuple(out))
                outs = {k: c for k, c in enumerate(img) if c != 0}
                if outs:
                    prod_new[(a, b)] = outs
        d_mat, form_mat, product = d_new, form_new, prod_new
    else:
        d_mat = tuple(tuple(r) for r in d_mat)
        form_mat = tuple(tuple(r) for r in form_mat)

    V = DgSpace(space, GradedMap(space, space, 1, d_mat))
    B = BilinearForm(space, fp, fs, form_mat)
    return DgaInstance(V, B, product, family)


def _detect_symmetry(parities, form_mat) -> int:
    n = len(parities)
    for sigma in (1, -1):
        ok = True
        for i in range(n):
            for j in range(n):
                if form_mat[i][j] != sigma * F(-1) ** (parities[i] * parities[j]) * form_mat[j][i]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return sigma
    raise GradedError("generated form has no definite symmetry")


def random_cyclic_dga(rng: random.Random, max_dim: int = 5) -> DgaInstance:
    """A random associative dg algebra with a symmetric invariant pairing.

    Every instance provably admits a harmonious Hodge decomposition: its
    form radical is an orthogonal dg summand by construction.
    """
    nil = ([1], {}, {}, {}, None, None)
    recipes = [
        ("poly2", lambda: _poly_block(2, rng)),
        ("poly3", lambda: _poly_block(3, rng)),
        ("poly4", lambda: _poly_block(4, rng)),
        ("poly5", lambda: _poly_block(5, rng)),
        ("ext", lambda: _exterior_block(rng)),
        ("contract", lambda: _contractible_block(rng)),
        ("ext+contract", lambda: _direct_sum(_exterior_block(rng), _contractible_block(rng))),
        ("contract+contract", lambda: _direct_sum(_contractible_block(rng), _contractible_block(rng))),
        ("ext*contract", lambda: _tensor(_exterior_block(rng), _contractible_block(rng))),
        ("poly2*contract", lambda: _tensor(_poly_block(2, rng), _contractible_block(rng))),
        ("ext*ext", lambda: _tensor(_exterior_block(rng), _exterior_block(rng))),
        ("poly2*ext", lambda: _tensor(_poly_block(2, rng), _exterior_block(rng))),
        ("ext+zero", lambda: _direct_sum(_exterior_block(rng), _zero_form_block(rng))),
        ("poly3+zero", lambda: _direct_sum(_poly_block(3, rng), _zero_form_block(rng))),
        ("poly2+poly3", lambda: _direct_sum(_poly_block(2, rng), _poly_block(3, rng))),
        ("ext+nil", lambda: _direct_sum(_exterior_block(rng), nil)),
        ("ext+contract+nil", lambda: _direct_sum(
            _direct_sum(_exterior_block(rng), _contractible_block(rng)), nil)),
    ]
    while True:
        family, make = rng.choice(recipes)
        block = make()
        if len(block[0]) <= max_dim:
            return _block_to_instance(block, rng, family)


def dga_to_structure(inst: DgaInstance, cutoff: int) -> AInfinityStructure:
    return dga_structure(inst.V, inst.product, cutoff)


def massey_instance() -> DgaInstance:
    """Deterministic 7-dim instance whose minimal model has m_3 != 0.

    Non-unital exterior algebra on odd x, y, z with the unit and top class
    removed and dz = xy; the pairing reads off the top coefficient.  The
    products x y bound, so the transferred triple products are genuine
    Massey products.
    """
    names = ["x", "y", "z", "xy", "xz", "yz", "xyz"]
    mono = {"x": ("x",), "y": ("y",), "z": ("z",), "xy": ("x", "y"),
            "xz": ("x", "z"), "yz": ("y", "z"), "xyz": ("x", "y", "z")}
    idx = {nm: i for i, nm in enumerate(names)}
    parities = tuple(len(mono[nm]) % 2 for nm in names)
    space = GradedSpace(tuple(names), parities)

    def wedge(m1, m2):
        merged = list(m1) + list(m2)
        if len(set(merged)) != len(merged):
            return None
        sign, arr = 1, merged[:]
        for i in range(len(arr)):
            for j in range(len(arr) - 1 - i):
                if arr[j] > arr[j + 1]:
                    arr[j], arr[j + 1] = arr[j + 1], arr[j]
                    sign = -sign
        return sign, "".join(arr)

    product = {}
    form = [[ZERO] * 7 for _ in range(7)]
    for a in names:
        for b in names:
            w = wedge(mono[a], mono[b])
            if w is None:
                continue
            sign, target = w
            if target in idx:
                product[(idx[a], idx[b])] = {idx[target]: F(sign)}
            if target == "xyz":
                form[idx[a]][idx[b]] = F(sign)
    d_mat = [[ZERO] * 7 for _ in range(7)]
    d_mat[idx["xy"]][idx["z"]] = ONE
    V = DgSpace(space, GradedMap(space, space, 1, tuple(map(tuple, d_mat))))
    B = BilinearForm(space, 1, 1, tuple(map(tuple, form)))
    return DgaInstance(V, B, product, "massey")


# ---------------------------------------------------------------------------
# oracles


def second_hodge_decomposition(V: DgSpace, B: BilinearForm, rng: random.Random) -> HodgeData:
    """An independently constructed harmonious decomposition.

    Builds one for a randomly conjugated copy of (V, B) and pulls it back,
    so its deterministic choices differ from the direct construction's.
    """
    from .hodge import build_harmonious

    n = V.space.dim
    g = random_even_automorphism(V.space, rng)
    g_inv = invert(g.matrix)
    g_inv_t = tuple(tuple(g_inv[j][i] for j in range(n)) for i in range(n))
    d_g = mat_mul(mat_mul(g.matrix, V.d.matrix), g_inv)
    form_g = mat_mul(mat_mul(g_inv_t, B.matrix), g_inv)
    Vg = DgSpace(V.space, GradedMap(V.space, V.space, 1, d_g))
    Bg = BilinearForm(V.space, B.parity, B.symmetry, form_g)
    Hg = build_harmonious(Vg, Bg)
    s = mat_mul(mat_mul(g_inv, Hg.s.matrix), g.matrix)
    t = mat_mul(mat_mul(g_inv, Hg.t.matrix), g.matrix)
    out = HodgeData(GradedMap(V.space, V.space, 1, s), GradedMap(V.space, V.space, 0, t), True)
    rep = verify(out, V, B)
    if not rep.passes_harmonious:
        raise GradedError("pulled-back decomposition fails verification")
    return out


def induced_homology_product(V: DgSpace, product: dict, reps: Subspace) -> dict:
    """Product induced on homology classes of the given representatives.

    Multiplies representatives in V, then expresses the (cycle) result as a
    combination of representatives modulo boundaries.  Independent of any
    transfer machinery.
    """
    from .ainfinity import _multiply

    hom = homology(V)
    amb = V.space
    cols = list(reps.vectors) + list(hom.boundaries.vectors)
    n = amb.dim
    mat = tuple(tuple(c[i] for c in cols) for i in range(n)) if cols else ()
    out: dict = {}
    for i, wi in enumerate(reps.vectors):
        for j, wj in enumerate(reps.vectors):
            prod = _multiply(amb, product, wi, wj)
            if vec_is_zero(prod):
                continue
            if not vec_is_zero(V.d(prod)):
                raise GradedError("product of cycles is not a cycle")
            coords = solve(mat, prod)
            if coords is None:
                raise GradedError("cycle not expressible in representatives + boundaries")
            outs = {k: coords[k] for k in range(reps.dim) if coords[k] != 0}
            if outs:
                out[(i, j)] = outs
    return out
