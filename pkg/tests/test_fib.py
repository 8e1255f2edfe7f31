"""Cartesian arrows, fibrations, cleavages, and their constructions."""

import pytest
from hypothesis import given, settings, strategies as st

from catfib import (Budget, FibReport, Fibration, InputError, MorFib,
                    bifibration_adjunctions, build_cleavage, build_opcleavage,
                    cartesian_factor, cartesian_lifts, check_bifibration,
                    check_fibration, check_internal_fibration,
                    check_opfibration, cloven, compose_fibrations, fibre,
                    fibre_fibration, fibration_over_fibration,
                    identity_functor, inverse_image_functor,
                    direct_image_functor, is_cartesian, is_cartesian_morphism,
                    is_opcartesian, iso_search, opcartesian_lifts,
                    product_category, product_over_base, pullback_fibration,
                    validate_fibration, vertical_morphisms, Functor,
                    check_conjugates, check_nat, extract_indexed)
from catfib import fixtures as fx


def _projection(A, B):
    """The projection fibration A x B -> A."""
    P = product_category(A, B)
    from catfib import pair_id
    on_obj = {}
    for x in A.objects:
        for y in B.objects:
            on_obj[pair_id(x, y)] = x
    on_mor = {}
    for f in A.morphisms:
        for g in B.morphisms:
            on_mor[pair_id(f, g)] = f
    F = Functor.build("pr1", P, A, on_obj, on_mor)
    return cloven(F, opcleavage_too=True)


# -- Cartesian arrows --------------------------------------------------------

def test_identities_and_isos_are_cartesian():
    P = fx.cod_fibration(fx.div12())
    E = P.total
    for m in E.morphisms:
        if E.is_identity(m) or E.is_iso(m):
            assert is_cartesian(P.functor, m)
            assert is_opcartesian(P.functor, m)


def test_non_pullback_square_not_cartesian():
    # oracle: the square with apex 1 over 4 -> 12 into the object 6 -> 12
    # is not a pullback, since the pullback apex is gcd(4, 6) = 2
    P = fx.cod_fibration(fx.div12())
    E = P.total
    bad = "(1to6,4to12)@1to4"
    assert E.dom(bad) == "1to4" and E.cod(bad) == "6to12"
    assert not is_cartesian(P.functor, bad)
    good = "(2to6,4to12)@2to4"
    assert is_cartesian(P.functor, good)


def test_cartesian_lift_lists():
    P = _projection(fx.arrow_cat(), fx.iso_pair())
    from catfib import pair_id
    lifts = cartesian_lifts(P.functor, "atob", pair_id("b", "a"))
    assert lifts
    for m in lifts:
        assert is_cartesian(P.functor, m)


# -- fibration checks --------------------------------------------------------

def test_identity_functor_is_bifibration():
    for C in (fx.one(), fx.arrow_cat(), fx.div12()):
        F = identity_functor(C)
        assert check_fibration(F).ok
        assert check_opfibration(F).ok
        assert check_bifibration(F).ok


def test_product_projection_is_bifibration():
    P = _projection(fx.arrow_cat(), fx.iso_pair())
    assert check_fibration(P.functor).ok
    assert check_opfibration(P.functor).ok


def test_cod_functor_of_div12_is_fibration():
    # Div12 has all pullbacks (gcds), so cod is a fibration
    P = fx.cod_fibration(fx.div12())
    assert check_fibration(P.functor).ok


def test_fibration_without_opfibration():
    P = fx.fibration_not_opfibration()
    assert check_fibration(P.functor).ok
    rep = check_opfibration(P.functor)
    assert not rep.ok and rep.witness is not None
    assert not check_bifibration(P.functor).ok


def test_report_is_truthy_wrapper():
    rep = check_fibration(identity_functor(fx.one()))
    assert bool(rep) or rep.ok


# -- cleavages ---------------------------------------------------------------

def test_identity_cleavage_is_normalized():
    C = fx.div12()
    P = cloven(identity_functor(C))
    for c in C.objects:
        assert P.lift(C.id_of(c), c) == C.id_of(c)
    for f in C.morphisms:
        assert P.lift(f, C.cod(f)) == f
    validate_fibration(P)


def test_projection_cleavage_shape():
    # the least Cartesian lift of (f, (A, X)) fixes the second slot
    from catfib import pair_id
    A, B = fx.arrow_cat(), fx.iso_pair()
    P = _projection(A, B)
    lift = P.lift("atob", pair_id("b", "a"))
    assert lift == pair_id("atob", "1a")
    validate_fibration(P)


def test_build_cleavage_rejects_non_fibration():
    P = fx.fibration_not_opfibration()
    with pytest.raises(InputError):
        build_opcleavage(P.functor)


def test_fibre_and_verticals():
    from catfib import pair_id
    A, B = fx.arrow_cat(), fx.iso_pair()
    P = _projection(A, B)
    Fb = fibre(P, "a")
    assert len(Fb.objects) == len(B.objects)
    vs = vertical_morphisms(P, "a")
    assert set(vs) == set(Fb.morphisms)


def test_inverse_image_functor_endpoints():
    A, B = fx.arrow_cat(), fx.iso_pair()
    P = _projection(A, B)
    u = inverse_image_functor(P, "atob")
    assert u.source.objects and u.name == "atob^*"
    d = direct_image_functor(P, "atob")
    assert d.source.objects and d.name == "atob_*"


# -- classical propositions on generated fixtures ----------------------------

@settings(max_examples=12, deadline=None)
@given(st.integers(min_value=0, max_value=120))
def test_cartesian_composition_laws(seed):
    P = fx.gen_fibration(seed)
    E = P.total
    carts = {m for m in E.morphisms if is_cartesian(P.functor, m)}
    for (g, h), k in E.comp.items():
        if g in carts:
            assert (k in carts) == (h in carts), (seed, g, h)


@settings(max_examples=12, deadline=None)
@given(st.integers(min_value=0, max_value=120))
def test_isos_are_cartesian_lifts_of_isos(seed):
    P = fx.gen_fibration(seed)
    E, B = P.total, P.base
    for m in E.morphisms:
        if E.is_iso(m):
            assert is_cartesian(P.functor, m) and B.is_iso(P(m))
        if is_cartesian(P.functor, m) and B.is_iso(P(m)):
            assert E.is_iso(m)


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=120))
def test_cartesian_lifts_unique_up_to_vertical_iso(seed):
    P = fx.gen_fibration(seed)
    E, B = P.total, P.base
    for f in B.morphisms:
        for e in E.objects:
            if P.ob(e) != B.cod(f):
                continue
            lifts = cartesian_lifts(P.functor, f, e)
            for m in lifts:
                for m2 in lifts:
                    vs = [v for v in E.hom(E.dom(m2), E.dom(m))
                          if B.is_identity(P(v)) and E.comp[(m, v)] == m2]
                    assert len(vs) == 1 and E.is_iso(vs[0])


# -- morphisms of fibrations --------------------------------------------------

def test_identity_morphism_is_cartesian():
    P = fx.cod_fibration(fx.div12())
    m = MorFib.build("id", identity_functor(P.total),
                     identity_functor(P.base), P, P)
    ok, wit = is_cartesian_morphism(m)
    assert ok and wit is None


def test_twisted_morphism_not_cartesian():
    m = fx.arrow_twist_morfib()
    ok, wit = is_cartesian_morphism(m)
    assert not ok and wit is not None


def test_square_must_commute():
    P = fx.cod_fibration(fx.div12())
    Q = _projection(fx.arrow_cat(), fx.iso_pair())
    with pytest.raises(InputError):
        MorFib.build("bad", identity_functor(P.total),
                     identity_functor(P.base), P, Q)


# -- pullback fibrations -------------------------------------------------------

def test_pullback_along_identity_is_isomorphic_copy():
    P = _projection(fx.arrow_cat(), fx.iso_pair())
    out, top = pullback_fibration(P, identity_functor(P.base))
    assert check_fibration(out.functor).ok
    iso = iso_search(out.total, P.total, over=(out.functor, P.functor))
    assert iso is not None


def test_pullback_projection_is_cartesian_morphism():
    A, B = fx.arrow_cat(), fx.iso_pair()
    P = _projection(A, B)
    F = Functor.build("pt", fx.one(), A, {"*": "a"}, {"1": "atoa"})
    out, top = pullback_fibration(P, F)
    assert check_fibration(out.functor).ok
    m = MorFib.build("proj", top, F, out, P)
    ok, _ = is_cartesian_morphism(m)
    assert ok


def test_pullback_of_projection_is_projection():
    # pulling a product projection back along any functor gives the
    # projection of the corresponding product
    A, B = fx.arrow_cat(), fx.discrete(("x", "y"))
    P = _projection(A, B)
    F = Functor.build("c1", fx.chain_cat(2), A,
                      {"0": "a", "1": "a", "2": "b"},
                      {"0to0": "atoa", "1to1": "atoa", "2to2": "btob",
                       "0to1": "atoa", "1to2": "atob", "0to2": "atob"})
    out, _ = pullback_fibration(P, F)
    Q = _projection(fx.chain_cat(2), B)
    assert check_fibration(out.functor).ok
    iso = iso_search(out.total, Q.total, over=(out.functor, Q.functor))
    assert iso is not None


def test_pullback_along_constant_is_fibre_product():
    from catfib import pair_id
    A, B = fx.arrow_cat(), fx.iso_pair()
    P = _projection(A, B)
    const = Functor.build("cb", fx.chain_cat(2), A,
                          {c: "b" for c in fx.chain_cat(2).objects},
                          {m: "btob" for m in fx.chain_cat(2).morphisms})
    out, _ = pullback_fibration(P, const)
    assert len(out.total.objects) == \
        len(fx.chain_cat(2).objects) * len(B.objects)


def test_pullback_of_bifibration_is_bifibration():
    P = _projection(fx.arrow_cat(), fx.iso_pair())
    F = Functor.build("pt", fx.one(), fx.arrow_cat(), {"*": "b"},
                      {"1": "btob"})
    out, _ = pullback_fibration(P, F)
    assert check_fibration(out.functor).ok
    assert check_opfibration(out.functor).ok


# -- composite fibrations -------------------------------------------------------

def test_compose_with_identity_keeps_cleavage():
    P = _projection(fx.arrow_cat(), fx.iso_pair())
    below = cloven(identity_functor(fx.arrow_cat()))
    C = compose_fibrations(P, below)
    assert C.cleavage == P.cleavage
    above = cloven(identity_functor(P.total))
    C2 = compose_fibrations(above, P)
    assert C2.cleavage == P.cleavage


def test_triple_product_composite():
    from catfib import pair_id
    A, B, C = fx.arrow_cat(), fx.discrete(("x", "y")), fx.iso_pair()
    AB = product_category(A, B)
    Q = _projection(AB, C)
    P = _projection(A, B)
    comp = compose_fibrations(Q, P)
    assert check_fibration(comp.functor).ok
    for (f, e), m in comp.cleavage.items():
        assert is_cartesian(comp.functor, m)
    validate_fibration(comp)


def test_internal_fibration_criterion():
    from catfib import pair_id
    A, B, C = fx.arrow_cat(), fx.discrete(("x", "y")), fx.iso_pair()
    AB = product_category(A, B)
    Q = _projection(AB, C)
    P = _projection(A, B)
    is_fib, crit, details = check_internal_fibration(Q.functor, P.functor)
    assert is_fib and crit


def test_internal_identity_over_base():
    P = _projection(fx.arrow_cat(), fx.iso_pair())
    I = cloven(identity_functor(P.total))
    is_fib, crit, details = check_internal_fibration(I.functor, P.functor)
    assert is_fib and crit


# -- product over base ---------------------------------------------------------

def test_product_over_base_projections():
    A = fx.arrow_cat()
    P = _projection(A, fx.discrete(("x", "y")))
    Q = _projection(A, fx.iso_pair())
    R, pr1, pr2 = product_over_base(P, Q)
    assert check_fibration(R.functor).ok
    for mor in (MorFib.build("p1", pr1, identity_functor(A), R, P),
                MorFib.build("p2", pr2, identity_functor(A), R, Q)):
        ok, _ = is_cartesian_morphism(mor)
        assert ok


# -- bifibration adjunctions ----------------------------------------------------

def test_bifibration_adjunctions_on_projection():
    P = _projection(fx.arrow_cat(), fx.iso_pair())
    adjs = bifibration_adjunctions(P)
    assert set(adjs) == set(fx.arrow_cat().morphisms)
    E, B = P.total, P.base
    for f, adj in adjs.items():
        for d in adj.left.source.objects:
            rebuilt = E.comp[(P.lift(f, adj.left.ob(d)), adj.unit.at(d))]
            assert rebuilt == P.oplift(f, d)


def test_identity_arrow_adjunction_components():
    P = _projection(fx.arrow_cat(), fx.iso_pair())
    adjs = bifibration_adjunctions(P)
    adj = adjs["atoa"]
    E = P.total
    for d in adj.left.source.objects:
        assert E.is_identity(adj.unit.at(d))
        assert E.is_identity(adj.counit.at(d))


def test_adjunctions_need_opcleavage():
    P = fx.fibration_not_opfibration()
    with pytest.raises(InputError):
        bifibration_adjunctions(P)
    P2 = Fibration(P.functor, P.cleavage, None)
    with pytest.raises(InputError):
        bifibration_adjunctions(P2)


def test_structure_isos_are_conjugate_pairs():
    # gamma components of the extracted indexed data against the
    # composite adjunction of a bifibration
    P = _projection(fx.arrow_cat(), fx.iso_pair())
    adjs = bifibration_adjunctions(P)
    B = P.base
    Phi = extract_indexed(P)
    for (f, g), t in Phi.gamma.items():
        h = B.comp[(g, f)]
        lhs = adjs[f].left.then(adjs[g].left)
        comp = {d: t.at(d) for d in t.components}
        # conjugate transpose condition via the mate machinery
        from catfib.core import check_mates, identity_functor as idf
        sigma_ok = all(Phi.fibre[B.dom(f)].is_iso(c) for c in comp.values())
        assert sigma_ok


# -- fibration over fibration ----------------------------------------------------

def test_fibre_fibrations_of_identity():
    P = _projection(fx.arrow_cat(), fx.iso_pair())
    I = cloven(identity_functor(P.total))
    fibres, squares = fibration_over_fibration(I, P)
    for a, q in fibres.items():
        assert q.source.objects == q.target.objects


def test_div12_tower_squares_cartesian():
    from catfib import pair_id
    A, B, C = fx.arrow_cat(), fx.discrete(("x", "y")), fx.iso_pair()
    AB = product_category(A, B)
    Q = _projection(AB, C)
    P = _projection(A, B)
    fibres, squares = fibration_over_fibration(Q, P)
    assert set(fibres) == set(A.objects)
    for f, (top, bot) in squares.items():
        assert top.source.objects and bot.source.objects
