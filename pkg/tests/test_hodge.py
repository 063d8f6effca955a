from fractions import Fraction as F

import pytest

import hhodge.hodge as hodge
from hhodge.groups import automorphisms, build_group, cyclic_subgroup
from hhodge.hodge import (
    EquivariantSheafData,
    ModuliContext,
    aut_transport,
    bch_hurwitz_hodge,
    bch_hurwitz_hodge_dual,
    bch_pushforward_general,
    bch_s_node,
    bch_s_puncture,
    bch_s_puncture_dual,
    boundary_restriction_crrt,
    ch_hodge_base,
    ch_hurwitz_hodge_grr,
    dualizing_sheaf_data,
    isotypic_class,
    rank_closed_form_node,
    rank_closed_form_puncture,
    rank_rh,
    structure_sheaf_data,
    verify_identities,
)
from hhodge.repring import (
    cyclic_irrep_char,
    eta,
    induce,
    perm_character,
    regular_character,
    trivial_character,
    zero_character,
)
from hhodge.tautring import Monomial, RepTautClass, TautClass

C1 = build_group("cyclic:1")
C2 = build_group("cyclic:2")
C3 = build_group("cyclic:3")
S3 = build_group("sym:3")


def ind_vk(G, m, k):
    return induce(G, cyclic_subgroup(G, m), cyclic_irrep_char(G, m, k))


def test_context_validation():
    with pytest.raises(ValueError):
        ModuliContext(C2, 0, 2, (0, 0))
    with pytest.raises(ValueError):
        ModuliContext(C2, 0, 3, (0, 0))
    with pytest.raises(ValueError):
        ModuliContext(C2, 1, 1, (5,))
    with pytest.raises(ValueError):
        ModuliContext(C2, 1, 1, (0,), trunc=2)


def test_puncture_class_examples():
    ctx = ModuliContext(C2, 0, 3, (1, 1, 0))
    assert bch_s_puncture(ctx, 1) == RepTautClass.constant(
        ctx.ring, ind_vk(C2, 1, 1).scale(F(1, 2))
    )
    assert bch_s_puncture(ctx, 3).is_zero()
    ctx3 = ModuliContext(C3, 1, 1, (1,), 1)
    cls = bch_s_puncture(ctx3, 1)
    degree1 = (ind_vk(C3, 1, 1) + ind_vk(C3, 1, 2)).scale(F(-1, 9))
    assert cls.terms[Monomial.build(psis=[(1, 1)])] == degree1
    with pytest.raises(ValueError):
        bch_s_puncture(ctx3, 2)


def test_puncture_degree_zero_is_brk():
    ctx = ModuliContext(S3, 1, 1, (S3.index_of("(1 2 3)"),))
    cls = bch_s_puncture(ctx, 1)
    r = 3
    want = zero_character(S3)
    for k in range(1, r):
        want = want + ind_vk(S3, ctx.m[0], k).scale(F(k, r))
    assert cls.degree_part(0) == RepTautClass.constant(ctx.ring, want)
    # chi_1 of the degree-0 part is the classical local term |G|/2 (1 - 1/r)
    assert cls.chi(0).degree_part(0).scalar_part() == F(6, 2) * (1 - F(1, r))


def test_node_class_examples():
    ctx = ModuliContext(C2, 1, 1, (1,), 1)
    identity_loop, sigma_loop = ctx.cut_graphs
    assert bch_s_node(ctx, identity_loop).is_zero()
    cls = bch_s_node(ctx, sigma_loop)
    mon = Monomial.build(boundary=(sigma_loop, 0, 0))
    assert cls.terms == {mon: ind_vk(C2, 1, 1).scale(F(1, 8))}
    assert cls.degree_part(0).is_zero()
    other = ModuliContext(C2, 1, 1, (0,), 1)
    with pytest.raises(ValueError):
        bch_s_node(other, sigma_loop)


def test_node_degree_zero_always_vanishes():
    ctx = ModuliContext(S3, 2, 0, (), 3)
    for gc in ctx.cut_graphs:
        assert bch_s_node(ctx, gc).degree_part(0).is_zero()


def test_ch_hodge_base_examples():
    assert ch_hodge_base(ModuliContext(C2, 0, 3, (1, 1, 0))).scalar_part() == 0
    ctx = ModuliContext(C1, 2, 0, ())
    chb = ch_hodge_base(ctx)
    assert chb.degree_part(0) == TautClass.scalar(ctx.ring, 2)
    loop, tree = ctx.cut_graphs
    expected = (
        TautClass.kappa(ctx.ring, 1).scale(F(-1, 12))
        - TautClass.boundary(ctx.ring, loop).scale(F(1, 24))
        - TautClass.boundary(ctx.ring, tree).scale(F(1, 24))
    )
    assert chb.degree_part(1) == expected


def test_ch_hodge_base_even_positive_degrees_vanish():
    ctx = ModuliContext(C2, 2, 1, (1,))
    chb = ch_hodge_base(ctx)
    for j in range(2, ctx.trunc + 1, 2):
        assert chb.degree_part(j).is_zero()


def test_bch_examples():
    ctx = ModuliContext(C2, 0, 3, (1, 1, 0))
    assert bch_hurwitz_hodge(ctx).is_zero()
    ctx = ModuliContext(C3, 0, 3, (1, 1, 1))
    out = bch_hurwitz_hodge(ctx)
    assert out == RepTautClass.constant(ctx.ring, ind_vk(C3, 1, 2))
    assert out.chi(0).scalar_part() == 1
    for g, n in [(1, 1), (1, 2), (2, 0), (2, 1)]:
        ctx = ModuliContext(C1, g, n, tuple(0 for _ in range(n)))
        assert bch_hurwitz_hodge(ctx).chi(0) == ch_hodge_base(ctx)


def test_bch_degree_zero_formula():
    # C[G/G0] + (g-1)C[G] + sum_i sum_k (k/r_i) Ind V^k
    ctx = ModuliContext(S3, 1, 2, (S3.index_of("(1 2)"), S3.index_of("(1 2 3)")))
    G0 = ctx.default_g0()
    want = perm_character(S3, G0) + regular_character(S3).scale(ctx.g - 1)
    for i in range(ctx.n):
        r = ctx.r[i]
        for k in range(1, r):
            want = want + ind_vk(S3, ctx.m[i], k).scale(F(k, r))
    got = bch_hurwitz_hodge(ctx, G0).degree_part(0)
    assert got == RepTautClass.constant(ctx.ring, want)
    assert got.chi(0).scalar_part() == rank_rh(ctx, G0)


def test_grr_examples():
    for G, g, n, m in [
        (C2, 0, 3, (1, 1, 0)),
        (C3, 0, 3, (1, 1, 1)),
        (C2, 1, 1, (1,)),
        (C1, 2, 0, ()),
    ]:
        ctx = ModuliContext(G, g, n, m)
        grr = ch_hurwitz_hodge_grr(ctx)
        assert grr.degree_part(0).scalar_part() == rank_rh(ctx)
    for g, n in [(1, 1), (2, 0), (2, 1), (1, 2)]:
        ctx = ModuliContext(C1, g, n, tuple(0 for _ in range(n)))
        assert ch_hurwitz_hodge_grr(ctx) == ch_hodge_base(ctx)


def test_grr_degree_one_hand_value():
    ctx = ModuliContext(C2, 1, 1, (1,))
    grr = ch_hurwitz_hodge_grr(ctx)
    loop_e, loop_s = ctx.cut_graphs
    expected = (
        TautClass.kappa(ctx.ring, 1).scale(F(-1, 6))
        + TautClass.psi(ctx.ring, 1).scale(F(1, 24))
        - TautClass.boundary(ctx.ring, loop_e).scale(F(1, 24))
        - TautClass.boundary(ctx.ring, loop_s).scale(F(1, 24))
    )
    assert grr.degree_part(1) == expected


def test_rank_examples():
    assert rank_rh(ModuliContext(C2, 0, 3, (1, 1, 0))) == 0
    assert rank_rh(ModuliContext(C3, 0, 3, (1, 1, 1))) == 1
    for g, n in [(1, 1), (2, 0)]:
        ctx = ModuliContext(C1, g, n, tuple(0 for _ in range(n)))
        assert rank_rh(ctx) == g


def test_puncture_duality_telescopes():
    ctx = ModuliContext(S3, 1, 2, (S3.index_of("(1 2)"), S3.index_of("(1 2 3)")))
    for i in (1, 2):
        total = bch_s_puncture(ctx, i) + bch_s_puncture_dual(ctx, i)
        want = regular_character(S3) - perm_character(
            S3, cyclic_subgroup(S3, ctx.m[i - 1])
        )
        assert total == RepTautClass.constant(ctx.ring, want)


def test_corrections_have_no_invariants():
    # eta(1, coefficient) = 0 for node classes and for I-processed punctures
    ctx = ModuliContext(S3, 2, 1, (S3.index_of("(1 2)"),))
    one = trivial_character(S3)
    for gc in ctx.cut_graphs:
        for chi in bch_s_node(ctx, gc).terms.values():
            assert eta(one, chi) == 0
    data = structure_sheaf_data(ctx)
    general = bch_pushforward_general(ctx, data)
    base_part = RepTautClass.from_taut(data.base_class, regular_character(S3))
    corrections = base_part - general
    for chi in corrections.terms.values():
        assert eta(one, chi) == 0


def test_mumford_dual_assembles():
    ctx = ModuliContext(C2, 1, 1, (1,))
    G0 = ctx.default_g0()
    lhs = bch_hurwitz_hodge(ctx, G0) + bch_hurwitz_hodge_dual(ctx, G0)
    want = perm_character(C2, G0).scale(2) + regular_character(C2).scale(1)
    want = want - perm_character(C2, cyclic_subgroup(C2, 1))
    assert lhs == RepTautClass.constant(ctx.ring, want)


@pytest.mark.parametrize(
    "G,g,n,m",
    [
        (C2, 1, 1, (1,)),
        (C3, 1, 2, (1, 2)),
        (S3, 2, 1, (1,)),
        (S3, 0, 4, (1, 3, 1, 3)),
    ],
)
def test_rank_closed_forms_match_assembled_classes(G, g, n, m):
    # the closed-form printer goes through series division and exponential
    # composition, a route independent of the delta-Bernoulli assembly
    ctx = ModuliContext(G, g, n, m)
    for i in range(1, n + 1):
        assert rank_closed_form_puncture(ctx, i) == bch_s_puncture(ctx, i).chi(0)
    for gc in ctx.cut_graphs:
        assert rank_closed_form_node(ctx, gc) == bch_s_node(ctx, gc).chi(0)


def test_isotypic_class_is_rational():
    ctx = ModuliContext(C3, 1, 1, (1,))
    bch = bch_hurwitz_hodge(ctx)
    W = ind_vk(C3, 1, 1)
    cls = isotypic_class(bch, W)
    assert all(isinstance(c, F) for c in cls.terms.values())


def test_verify_identities_pass():
    for G, g, n, m in [
        (C2, 1, 1, (1,)),
        (C1, 2, 0, ()),
        (S3, 1, 1, (S3.index_of("(1 2 3)"),)),
        (C3, 0, 4, (1, 2, 1, 2)),
    ]:
        report = verify_identities(ModuliContext(G, g, n, m))
        failures = {
            k: v for k, v in report.items() if k != "all_passed" and not v["passed"]
        }
        assert report["all_passed"], failures


def test_verify_identities_with_generated_g0():
    ctx = ModuliContext(C2, 0, 4, (1, 1, 1, 1))
    report = verify_identities(ctx, ctx.generated_g0())
    assert report["all_passed"]
    # the genus-0 principal component here is connected: G0 = G
    assert ctx.generated_g0().order == 2


def test_perturbed_delta_bernoulli_is_caught(monkeypatch):
    real = hodge.delta_bernoulli

    def corrupted(n, q):
        value = real(n, q)
        if n == 2 and q == F(1, 2):
            return value + F(1, 100)
        return value

    monkeypatch.setattr(hodge, "delta_bernoulli", corrupted)
    report = verify_identities(ModuliContext(C2, 1, 1, (1,)))
    assert not report["consistency"]["passed"]
    assert "monomial" in report["consistency"]["details"]


def test_boundary_restriction_examples():
    ctx = ModuliContext(C1, 2, 0, ())
    loop, tree = ctx.cut_graphs
    full1 = C1.full_subgroup()
    ke = boundary_restriction_crrt(C1, loop, full1, G_cut=full1)
    assert ke.symbols == {"crrt_cut": 1}
    assert ke.trivial_summand == trivial_character(C1)
    ctx2 = ModuliContext(C2, 2, 0, ())
    full2 = C2.full_subgroup()
    tree_e = next(g for g in ctx2.cut_graphs if g.kind == "tree" and g.m_plus == 0)
    ke = boundary_restriction_crrt(C2, tree_e, full2, G_plus=full2, G_minus=full2)
    assert ke.trivial_summand == regular_character(C2) - trivial_character(C2)
    loop_s = next(g for g in ctx2.cut_graphs if g.kind == "loop" and g.m_plus == 1)
    ke = boundary_restriction_crrt(C2, loop_s, full2, G_cut=full2)
    assert ke.trivial_summand == trivial_character(C2)


def test_boundary_restriction_arity_errors():
    ctx = ModuliContext(C2, 2, 0, ())
    full = C2.full_subgroup()
    loop = next(g for g in ctx.cut_graphs if g.kind == "loop")
    tree = next(g for g in ctx.cut_graphs if g.kind == "tree")
    with pytest.raises(ValueError):
        boundary_restriction_crrt(C2, loop, full, G_plus=full, G_minus=full)
    with pytest.raises(ValueError):
        boundary_restriction_crrt(C2, tree, full, G_cut=full)


def test_aut_transport_examples():
    inversion = next(t for t in automorphisms(C3) if t != (0, 1, 2))
    ctx = ModuliContext(C3, 0, 3, (1, 1, 1))
    result = bch_hurwitz_hodge(ctx)
    new_ctx, moved = aut_transport(inversion, ctx, result)
    assert new_ctx.m == (2, 2, 2)
    assert moved == RepTautClass.constant(new_ctx.ring, ind_vk(C3, 1, 1))
    assert moved == bch_hurwitz_hodge(new_ctx)
    same_ctx, same = aut_transport((0, 1, 2), ctx, result)
    assert same == result and same_ctx.m == ctx.m
    with pytest.raises(Exception):
        aut_transport((1, 0, 2), ctx, result)


def test_aut_transport_covariance_s3():
    ctx = ModuliContext(S3, 1, 1, (S3.index_of("(1 2)"),))
    result = bch_hurwitz_hodge(ctx)
    for theta in automorphisms(S3):
        new_ctx, moved = aut_transport(theta, ctx, result)
        assert moved == bch_hurwitz_hodge(new_ctx)


def test_general_pushforward_rank_zero():
    ctx = ModuliContext(C2, 1, 1, (1,))
    data = EquivariantSheafData.build(
        ctx,
        TautClass.psi(ctx.ring, 1),
        0,
        [zero_character(cyclic_subgroup(C2, 1).group)],
        [
            (zero_character(cyclic_subgroup(C2, gc.m_plus).group),) * 2
            for gc in ctx.cut_graphs
        ],
    )
    out = bch_pushforward_general(ctx, data)
    assert out == RepTautClass.from_taut(data.base_class, regular_character(C2))


@pytest.mark.parametrize(
    "G,g,n,m",
    [
        (C2, 1, 1, (1,)),
        (C3, 0, 4, (1, 2, 0, 0)),
        (C2, 2, 0, ()),
        (S3, 1, 1, (3,)),
    ],
)
def test_general_pushforward_structure_sheaf(G, g, n, m):
    ctx = ModuliContext(G, g, n, m)
    G0 = ctx.default_g0()
    general = bch_pushforward_general(ctx, structure_sheaf_data(ctx))
    bch = bch_hurwitz_hodge(ctx, G0)
    assert general + bch == RepTautClass.constant(ctx.ring, perm_character(G, G0))


@pytest.mark.parametrize(
    "G,g,n,m",
    [
        (C2, 1, 1, (1,)),
        (C3, 0, 4, (1, 2, 0, 0)),
        (C2, 2, 0, ()),
        (S3, 1, 1, (3,)),
    ],
)
def test_general_pushforward_dualizing_sheaf(G, g, n, m):
    ctx = ModuliContext(G, g, n, m)
    general = bch_pushforward_general(ctx, dualizing_sheaf_data(ctx))
    expected = RepTautClass.from_taut(
        ch_hodge_base(ctx).parity_dual() - TautClass.scalar(ctx.ring, 1),
        regular_character(G),
    )
    for i in range(1, n + 1):
        expected = expected + bch_s_puncture_dual(ctx, i)
    for gc in ctx.cut_graphs:
        expected = expected - bch_s_node(ctx, gc)
    assert general == expected


def test_twisted_puncture_duality_at_cyclic_level():
    # cst*(O) + cst(omega) is C[<m>] tensored with some class whose degree-0
    # part is (r-1)/r; the I map kills every regular multiple, which is what
    # makes the dualizing-sheaf corollary hold after induction
    from hhodge.hodge import _char_poly_mul, _delta_series, _twist_series

    for G, m in [(C2, 1), (C3, 1), (S3, S3.index_of("(1 2 3)")), (S3, S3.index_of("(1 2)"))]:
        H = cyclic_subgroup(G, m)
        r = H.order
        D = 3
        # cst(omega): the delta series times the twist L~ (x) V^1
        omega_side = _char_poly_mul(
            _delta_series(m, r, G, D, 0, 1),
            _twist_series(((1, cyclic_irrep_char(G, m, 1)),), r, D, 0, 1),
            D,
        )
        # cst*(O): psi -> -psi and V^k -> V^{-k}
        dual_side = {}
        for j in range(D + 1):
            coeff = zero_character(H.group)
            for k in range(1, r):
                coeff = coeff + cyclic_irrep_char(G, m, r - k).scale(
                    hodge.delta_bernoulli(j + 1, F(k, r)) * (-1) ** j
                )
            if not coeff.is_zero():
                dual_side[(j,)] = coeff
        total = dict(omega_side)
        for key, chi in dual_side.items():
            total[key] = total[key] + chi if key in total else chi
        total = {k: v for k, v in total.items() if not v.is_zero()}
        reg = regular_character(H.group)
        for key, chi in total.items():
            multiple = chi.value_at(0).as_rational()
            assert multiple is not None
            assert chi == reg.scale(multiple / r), (G.spec, m, key)
        got = total.get((0,), zero_character(H.group))
        assert got == reg.scale(F(r - 1, r)), (G.spec, m)


def test_sheaf_data_shape_validation():
    ctx = ModuliContext(C2, 1, 1, (1,))
    with pytest.raises(ValueError):
        EquivariantSheafData.build(ctx, TautClass.zero(ctx.ring), 1, [], [])
    with pytest.raises(ValueError):
        EquivariantSheafData.build(
            ctx,
            TautClass.zero(ctx.ring),
            2,
            [trivial_character(cyclic_subgroup(C2, 1).group)],
            [
                (trivial_character(cyclic_subgroup(C2, gc.m_plus).group),) * 2
                for gc in ctx.cut_graphs
            ],
        )
