import random
from fractions import Fraction

import pytest

from cyclic_ainfty.graded import (
    BilinearForm,
    DgSpace,
    GradedMap,
    GradedSpace,
    Subspace,
    compose,
    homology,
    radical,
)
from cyclic_ainfty.hodge import (
    AlmostHodgeData,
    Decomposition,
    DecompositionError,
    HodgeData,
    HodgeError,
    NoDgComplementError,
    build_harmonious,
    decompose,
    dg_complement,
    from_decomposition,
    green_correct,
    verify,
)
from cyclic_ainfty.random_instances import (
    corrupt_st_breaking_67,
    random_almost_instance,
    random_hodge_instance,
)

F = Fraction
Z, I = F(0), F(1)


def zero_form(sp, parity=0, symmetry=1):
    n = sp.dim
    return BilinearForm(sp, parity, symmetry, tuple((Z,) * n for _ in range(n)))


# ---------------------------------------------------------------------------
# verify


def test_trivial_decomposition_all_pass_when_d_zero():
    sp = GradedSpace(("a", "b"), (0, 1))
    V = DgSpace(sp, GradedMap.zero(sp, sp, 1))
    B = zero_form(sp)
    hd = HodgeData(GradedMap.zero(sp, sp, 1), GradedMap.identity(sp), True)
    rep = verify(hd, V, B)
    assert rep.axioms_pass and rep.harmonious
    assert rep.remark_67_iff_sds and rep.remark_harmonious_iff_dsd


def test_trivial_decomposition_with_nonzero_d_not_harmonious(contractible_pair):
    V, B = contractible_pair
    hd = HodgeData(GradedMap.zero(V.space, V.space, 1), GradedMap.identity(V.space), False)
    rep = verify(hd, V, B)
    assert rep.axioms_pass           # (1)-(7) all hold for (0, id)
    assert not rep.harmonious        # dt = d != 0
    assert not rep.dsd_equals_d
    assert rep.remark_harmonious_iff_dsd  # the equivalence itself holds


def test_verify_rejects_wrong_parities(contractible_pair):
    V, B = contractible_pair
    with pytest.raises(HodgeError):
        verify((GradedMap.zero(V.space, V.space, 0), GradedMap.identity(V.space)), V, B)


def test_verify_on_random_constructions(rng):
    for _ in range(10):
        inst = random_hodge_instance(rng, max_dim=6)
        H = build_harmonious(inst.V, inst.B)
        rep = verify(H, inst.V, inst.B)
        assert rep.passes_harmonious
        assert rep.sds_equals_s and rep.dsd_equals_d
        # round trip through the geometric dictionary
        D = decompose(H, inst.V)
        H2 = from_decomposition(D, inst.V, inst.B)
        D2 = decompose(H2, inst.V)
        assert D.boundaries.same_span(D2.boundaries)
        assert D.isotropic.same_span(D2.isotropic)
        assert D.harmonic.same_span(D2.harmonic)


# ---------------------------------------------------------------------------
# from_decomposition / decompose


def test_from_decomposition_contractible(contractible_pair):
    V, B = contractible_pair
    sp = V.space
    D = Decomposition(
        boundaries=Subspace(sp, ((I, Z),)),
        isotropic=Subspace(sp, ((Z, I),)),
        harmonic=Subspace.zero(sp),
    )
    H = from_decomposition(D, V, B)
    assert H.s((I, Z)) == (Z, I)     # s(a) = b
    assert H.t.is_zero()
    assert verify(H, V, B).passes_harmonious


def test_from_decomposition_zero_differential():
    sp = GradedSpace(("a", "b"), (0, 1))
    V = DgSpace(sp, GradedMap.zero(sp, sp, 1))
    B = zero_form(sp)
    D = Decomposition(Subspace.zero(sp), Subspace.zero(sp), Subspace.full(sp))
    H = from_decomposition(D, V, B)
    assert H.s.is_zero()
    assert H.t == GradedMap.identity(sp)


def test_from_decomposition_reports_specific_failure(contractible_pair):
    V, B = contractible_pair
    sp = V.space
    bad = Decomposition(
        boundaries=Subspace(sp, ((I, Z),)),
        isotropic=Subspace.zero(sp),
        harmonic=Subspace(sp, ((Z, I),)),   # b is not closed
    )
    with pytest.raises(DecompositionError, match="dimension|annihilated"):
        from_decomposition(bad, V, B)

    bad2 = Decomposition(
        boundaries=Subspace(sp, ((Z, I),)),  # wrong: b does not span im d
        isotropic=Subspace(sp, ((I, Z),)),
        harmonic=Subspace.zero(sp),
    )
    with pytest.raises(DecompositionError, match="im d"):
        from_decomposition(bad2, V, B)


def test_nonisotropic_block_reported():
    # d = 0 so im d = 0; U must be isotropic and here it is not
    sp = GradedSpace(("a",), (0,))
    V = DgSpace(sp, GradedMap.zero(sp, sp, 1))
    B = BilinearForm(sp, 0, 1, ((I,),))
    D = Decomposition(Subspace.zero(sp), Subspace.full(sp), Subspace.zero(sp))
    with pytest.raises(DecompositionError, match="dimension differs|isotropic"):
        from_decomposition(D, V, B)


def test_decompose_trivial_and_contractible(contractible_pair):
    sp = GradedSpace(("a", "b"), (0, 1))
    V0 = DgSpace(sp, GradedMap.zero(sp, sp, 1))
    H0 = HodgeData(GradedMap.zero(sp, sp, 1), GradedMap.identity(sp), True)
    D0 = decompose(H0, V0)
    assert D0.boundaries.dim == 0 and D0.isotropic.dim == 0
    assert D0.harmonic.same_span(Subspace.full(sp))

    V, B = contractible_pair
    H = build_harmonious(V, B)
    D = decompose(H, V)
    assert D.boundaries.vectors == ((I, Z),)
    assert D.isotropic.vectors == ((Z, I),)
    assert D.harmonic.dim == 0


def test_decompose_rejects_non_harmonious(contractible_pair):
    V, B = contractible_pair
    hd = HodgeData(GradedMap.zero(V.space, V.space, 1), GradedMap.identity(V.space), False)
    with pytest.raises(HodgeError, match="harmonious"):
        decompose(hd, V)


# ---------------------------------------------------------------------------
# build_harmonious


def test_build_zero_form_any_complex():
    sp = GradedSpace(("a", "b", "c"), (0, 1, 0))
    d = GradedMap(sp, sp, 1, ((Z, I, Z), (Z, Z, Z), (Z, Z, Z)))
    V = DgSpace(sp, d)
    B = zero_form(sp)
    H = build_harmonious(V, B)
    rep = verify(H, V, B)
    assert rep.passes_harmonious
    assert H.t.image().dim == 1      # the homology class of c


def test_build_contractible_hand_case(contractible_pair):
    V, B = contractible_pair
    H = build_harmonious(V, B)
    assert H.t.is_zero()
    assert H.s((I, Z)) == (Z, I)
    assert verify(H, V, B).passes_harmonious


def test_build_six_dim_mixed_blockwise_oracle():
    # zero-form contractible pair | nondeg contractible pair | nondeg d=0 pair
    sp = GradedSpace(("p", "q", "u", "du", "e", "o"), (0, 1, 1, 0, 0, 1))
    d = [[Z] * 6 for _ in range(6)]
    d[0][1] = I
    d[3][2] = I
    form = [[Z] * 6 for _ in range(6)]
    form[3][2] = form[2][3] = I
    form[4][5] = form[5][4] = I
    V = DgSpace(sp, GradedMap(sp, sp, 1, tuple(map(tuple, d))))
    B = BilinearForm(sp, 1, 1, tuple(map(tuple, form)))
    H = build_harmonious(V, B)
    rep = verify(H, V, B)
    assert rep.passes_harmonious
    betti = homology(V).betti
    W = H.t.image()
    pars = W.parities()
    assert (pars.count(0), pars.count(1)) == betti == (1, 1)

    # blockwise oracle: solve each 2-dim block independently and direct-sum
    def block(names, pars, dm, fm, parity):
        bsp = GradedSpace(names, pars)
        bV = DgSpace(bsp, GradedMap(bsp, bsp, 1, dm))
        bB = BilinearForm(bsp, parity, 1, fm)
        return build_harmonious(bV, bB), bV, bB

    (h1, *_), (h2, *_), (h3, *_) = (
        block(("p", "q"), (0, 1), ((Z, I), (Z, Z)), ((Z, Z), (Z, Z)), 1),
        block(("u", "du"), (1, 0), ((Z, Z), (I, Z)), ((Z, I), (I, Z)), 1),
        block(("e", "o"), (0, 1), ((Z, Z), (Z, Z)), ((Z, I), (I, Z)), 1),
    )
    s_sum = [[Z] * 6 for _ in range(6)]
    t_sum = [[Z] * 6 for _ in range(6)]
    for off, h in ((0, h1), (2, h2), (4, h3)):
        for i in range(2):
            for j in range(2):
                s_sum[off + i][off + j] = h.s.matrix[i][j]
                t_sum[off + i][off + j] = h.t.matrix[i][j]
    assembled = HodgeData(GradedMap(sp, sp, 1, tuple(map(tuple, s_sum))),
                          GradedMap(sp, sp, 0, tuple(map(tuple, t_sum))), True)
    assert verify(assembled, V, B).passes_harmonious
    # both constructions pick out the same harmonic subspace here
    assert assembled.t.image().same_span(W)


def test_build_respects_radical_splitting(rng):
    for _ in range(8):
        inst = random_hodge_instance(rng, kind="mixed")
        H = build_harmonious(inst.V, inst.B)
        rad = radical(inst.B, inst.V)
        # s and t preserve the radical
        for v in rad.vectors:
            assert rad.contains(H.s(v))
            assert rad.contains(H.t(v))


def test_build_zero_dimensional_space():
    sp = GradedSpace((), ())
    V = DgSpace(sp, GradedMap.zero(sp, sp, 1))
    B = BilinearForm(sp, 0, 1, ())
    H = build_harmonious(V, B)
    assert verify(H, V, B).passes_harmonious


def test_obstructed_radical_raises():
    # even antisymmetric <b,b> = 1 on the contractible pair: compatible,
    # but the radical span(a) has no d-stable complement and no harmonious
    # decomposition exists (brute force over all (s, t) shows axiom (2) fails)
    sp = GradedSpace(("a", "b"), (0, 1))
    V = DgSpace(sp, GradedMap(sp, sp, 1, ((Z, I), (Z, Z))))
    B = BilinearForm(sp, 0, -1, ((Z, Z), (Z, I)))
    assert B.is_compatible(V)
    with pytest.raises(NoDgComplementError):
        build_harmonious(V, B)
    # brute force the claim: the only (s, t) with (1), (3), (4), (6), (7)
    # and dt = 0 is s(a) = b, t = 0, and it violates (2)
    s = GradedMap(sp, sp, 1, ((Z, Z), (I, Z)))
    t = GradedMap.zero(sp, sp, 0)
    rep = verify((s, t), V, B)
    assert rep.s_square_zero and rep.homotopy and rep.harmonious
    assert not rep.s_self_adjoint


def test_dg_complement_construction(rng):
    for _ in range(10):
        inst = random_hodge_instance(rng, kind="mixed")
        rad = radical(inst.B, inst.V)
        comp = dg_complement(inst.V, rad)
        assert rad.dim + comp.dim == inst.V.dim
        for v in comp.vectors:
            assert comp.contains(inst.V.d(v))


# ---------------------------------------------------------------------------
# green correction


def test_green_on_genuine_data_is_identity(rng):
    inst = random_hodge_instance(rng, kind="nondeg")
    H = build_harmonious(inst.V, inst.B)
    out = green_correct(AlmostHodgeData(H.s, H.t), inst.V, inst.B)
    assert out.s == H.s and out.t == H.t


def test_green_recovers_s_from_doubled(contractible_pair):
    V, B = contractible_pair
    H = build_harmonious(V, B)
    doubled = AlmostHodgeData(H.s.scale(F(2)), H.t)
    out = green_correct(doubled, V, B)
    assert out.s == H.s
    assert verify(out, V, B).passes_harmonious


def test_green_blockwise_rescaling_oracle(rng):
    for _ in range(12):
        ai = random_almost_instance(rng)
        out = green_correct(ai.almost, ai.V, ai.B)
        # blockwise inverse oracle: the correction cancels every block factor
        assert out.s == ai.genuine.s
        assert out.t == ai.genuine.t
        rep = verify(out, ai.V, ai.B)
        assert rep.passes_harmonious
        # (sG)d + d(sG) = 1 - t exactly
        one = GradedMap.identity(ai.V.space)
        lhs = compose(out.s, ai.V.d).add(compose(ai.V.d, out.s))
        assert lhs == one.sub(out.t)


def test_green_rejects_noninvertible(contractible_pair):
    V, B = contractible_pair
    bad = AlmostHodgeData(GradedMap.zero(V.space, V.space, 1),
                          GradedMap.zero(V.space, V.space, 0))
    with pytest.raises(HodgeError, match="invertible"):
        green_correct(bad, V, B)


# ---------------------------------------------------------------------------
# remark equivalences


def test_equivalences_on_corrupted_instances(rng):
    flipped = 0
    for _ in range(20):
        inst = random_hodge_instance(rng, need_mixed_homology=True)
        H = build_harmonious(inst.V, inst.B)
        s_bad = corrupt_st_breaking_67(H, inst.V)
        assert s_bad is not None
        rep = verify((s_bad, H.t), inst.V, inst.B)
        # (1) and (3) survive the corruption; (6)/(7) and sds = s flip together
        assert rep.s_square_zero and rep.homotopy
        assert not rep.st_ts_zero
        assert not rep.sds_equals_s
        if rep.remark_67_iff_sds is not None:
            assert rep.remark_67_iff_sds
            flipped += 1
    assert flipped  # the equivalence was actually exercised


def test_dsd_flip_via_trivialization(rng):
    count = 0
    for _ in range(10):
        inst = random_hodge_instance(rng)
        if inst.V.d.is_zero():
            continue
        trivial = HodgeData(GradedMap.zero(inst.V.space, inst.V.space, 1),
                            GradedMap.identity(inst.V.space), False)
        rep = verify(trivial, inst.V, inst.B)
        assert rep.axioms_pass
        assert not rep.harmonious and not rep.dsd_equals_d
        assert rep.remark_harmonious_iff_dsd
        count += 1
    assert count
