"""Category tables, functors, transformations, adjunctions, images."""

import math
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from catfib import (Budget, FinCat, Functor, InputError, SearchBudgetExceeded,
                    Subcategory, check_adjunction, check_conjugates,
                    check_mates, check_nat, find_universal,
                    functor_properties, identity_functor, image_operators,
                    is_nat_iso, is_replete_subcategory, iso_search,
                    nat_iso_search, nat_vertical, opposite_functor,
                    product_category, validate_category, validate_functor,
                    whisker_left, whisker_right)
from catfib import fixtures as fx


# -- category validation ---------------------------------------------------

def test_one_and_arrow_are_valid():
    one = fx.one()
    assert one.objects == ("*",)
    assert one.morphisms == ("1",)
    arr = fx.arrow_cat()
    assert arr.dom("atob") == "a" and arr.cod("atob") == "b"
    assert arr.comp[("btob", "atob")] == "atob"


def test_non_composable_composite_rejected():
    with pytest.raises(InputError):
        validate_category(
            "Bad", ("a", "b"),
            {"1a": ("a", "a"), "1b": ("b", "b"), "f": ("a", "b")},
            {"a": "1a", "b": "1b"},
            {("f", "f"): "f",
             ("1a", "1a"): "1a", ("1b", "1b"): "1b",
             ("1b", "f"): "f", ("f", "1a"): "f"})


def test_empty_category_is_legal():
    E = validate_category("Empty", (), {}, {}, {})
    assert E.objects == () and E.morphisms == ()
    assert functor_properties(identity_functor(E))["faithful"]


def test_opposite_involution():
    C = fx.div12()
    assert C.opposite().opposite().table() == C.table()


# -- functor validation ----------------------------------------------------

def test_identity_functor_on_arrow():
    arr = fx.arrow_cat()
    F = identity_functor(arr)
    assert F("atob") == "atob" and F.ob("a") == "a"


def test_collapse_to_one():
    arr, one = fx.arrow_cat(), fx.one()
    F = validate_functor("c", arr, one,
                         {"a": "*", "b": "*"},
                         {m: "1" for m in arr.mor})
    assert F("atob") == "1"


def test_endpoint_violation_rejected():
    arr = fx.arrow_cat()
    disc = fx.discrete(("a", "b"))
    with pytest.raises(InputError):
        validate_functor("bad", arr, disc,
                         {"a": "a", "b": "b"},
                         {"atoa": "1a", "btob": "1b", "atob": "1a"})


# -- natural transformations -----------------------------------------------

def _evaluation_functors():
    """The two functors Arr -> Par picking the parallel arrows f and g."""
    arr, par = fx.arrow_cat(), fx.parallel_pair()
    mk = lambda m: Functor.build("ev_" + m, arr, par,
                                 {"a": "a", "b": "b"},
                                 {"atoa": "1a", "btob": "1b", "atob": m})
    return par, mk("f"), mk("g")


def test_nat_between_evaluation_functors():
    # oracle: the only naturality square is 1b . f = g . 1a, i.e. f = g
    par, F, G = _evaluation_functors()
    squares_commute = par.comp[("1b", "f")] == par.comp[("g", "1a")]
    assert not squares_commute
    with pytest.raises(InputError):
        check_nat("t", F, G, {"a": "1a", "b": "1b"})
    t = check_nat("t", F, F, {"a": "1a", "b": "1b"})
    assert is_nat_iso(t)


def test_wrong_endpoints_rejected():
    par, F, _ = _evaluation_functors()
    with pytest.raises(InputError):
        check_nat("t", F, F, {"a": "1a", "b": "f"})


def test_vertical_composition_and_whiskering():
    C = fx.translation(3)
    idc = identity_functor(C)
    s = check_nat("s", idc, idc, {"*": "1"})
    t = check_nat("t", idc, idc, {"*": "2"})
    assert nat_vertical(s, t).at("*") == C.comp[("2", "1")] == "0"
    assert whisker_left(idc, s).at("*") == "1"
    assert whisker_right(s, idc).at("*") == "1"


def test_nat_iso_search_finds_twist():
    C = fx.translation(2)
    idc = identity_functor(C)
    t = nat_iso_search(idc, idc)
    assert t is not None and t.at("*") == "0"


# -- functor properties ----------------------------------------------------

def test_identity_properties_all_true():
    props = functor_properties(identity_functor(fx.div12()))
    assert all(props[k] for k in
               ("faithful", "full", "isofull", "pseudomonic", "replete",
                "essentially_surjective", "injective_on_objects"))


def test_iso2_to_one_properties():
    # oracle: every hom-set of Iso2 is a singleton, so the collapse is
    # hom-wise injective; all objects and isos are hit
    iso2, one = fx.iso_pair(), fx.one()
    F = validate_functor("q", iso2, one,
                         {"a": "*", "b": "*"}, {m: "1" for m in iso2.mor})
    for x in iso2.objects:
        for y in iso2.objects:
            assert len(iso2.hom(x, y)) == 1
    props = functor_properties(F)
    assert props["full"] and props["essentially_surjective"] and props["isofull"]
    assert props["faithful"]


def test_parallel_collapse_not_faithful():
    # oracle: hom(a, b) in Par has two arrows mapping to the single
    # arrow of One
    par, one = fx.parallel_pair(), fx.one()
    F = validate_functor("q", par, one,
                         {"a": "*", "b": "*"}, {m: "1" for m in par.mor})
    assert len(par.hom("a", "b")) == 2
    props = functor_properties(F)
    assert not props["faithful"]
    # hom(b, a) is empty in Par, so the collapse is not full either
    assert not props["full"]
    assert props["essentially_surjective"]


def test_disc2_into_iso2_properties():
    # oracle: u: a -> b is an iso of Iso2 with no preimage in Disc2
    iso2 = fx.iso_pair()
    disc = fx.discrete(("a", "b"))
    J = validate_functor("j", disc, iso2,
                         {"a": "a", "b": "b"}, {"1a": "1a", "1b": "1b"})
    assert iso2.is_iso("u")
    props = functor_properties(J)
    assert props["faithful"] and props["injective_on_objects"]
    assert not props["replete"] and not props["full"]


def test_pseudomonic_reflects_isos():
    for C, D, F in _functor_pool():
        props = functor_properties(F)
        if not props["pseudomonic"]:
            continue
        for m in C.morphisms:
            if D.is_iso(F(m)):
                assert C.is_iso(m), (F.name, m)


def _functor_pool():
    iso2, disc, arr, one = (fx.iso_pair(), fx.discrete(("a", "b")),
                            fx.arrow_cat(), fx.one())
    pool = [
        (iso2, iso2, identity_functor(iso2)),
        (disc, iso2, Functor.build("j", disc, iso2, {"a": "a", "b": "b"},
                                   {"1a": "1a", "1b": "1b"})),
        (arr, one, Functor.build("q", arr, one, {"a": "*", "b": "*"},
                                 {m: "1" for m in arr.mor})),
        (one, arr, Functor.build("pa", one, arr, {"*": "a"}, {"1": "atoa"})),
    ]
    return pool


# -- universal objects -----------------------------------------------------

def test_div12_pullback_is_gcd():
    # oracle: pullbacks in a divisibility poset are gcds
    C = fx.div12()
    cone = find_universal(C, "pullback", ("4to12", "6to12"))
    assert cone is not None
    assert cone.apex == str(math.gcd(4, 6)) == "2"


def test_div12_terminal_is_top():
    # oracle: the top element divides nothing else; every d divides 12
    C = fx.div12()
    cone = find_universal(C, "terminal")
    assert cone.apex == "12"
    assert find_universal(C, "initial").apex == "1"


def test_div12_product_is_gcd():
    cone = find_universal(fx.div12(), "product", ("4", "6"))
    assert cone.apex == "2"


def test_split_coequalizer():
    C = fx.arrow_cat()
    cone = find_universal(C, "coequalizer", ("atob", "atob"))
    assert cone is not None and cone.apex == "b"
    assert cone.legs == ("btob",)


def test_missing_universal_is_absent():
    assert find_universal(fx.parallel_pair(), "coequalizer",
                          ("f", "g")) is None
    assert find_universal(fx.discrete(("a", "b")), "terminal") is None


def test_universal_choice_deterministic():
    C = fx.div12()
    a = find_universal(C, "pullback", ("4to12", "6to12"))
    b = find_universal(C, "pullback", ("4to12", "6to12"))
    assert a.apex == b.apex and a.legs == b.legs


# -- adjunctions -----------------------------------------------------------

def test_identity_adjunction():
    C = fx.div12()
    idc = identity_functor(C)
    adj = check_adjunction(idc, idc,
                           {c: C.id_of(c) for c in C.objects},
                           {c: C.id_of(c) for c in C.objects})
    for c in C.objects:
        for d in C.objects:
            for h in C.hom(c, d):
                assert adj.left_transpose(c, h) == h


def test_initial_terminal_adjunction_one_arrow():
    # oracle: the only candidate components are forced; enumerate them
    one, arr = fx.one(), fx.arrow_cat()
    left = Functor.build("pick_a", one, arr, {"*": "a"}, {"1": "atoa"})
    right = Functor.build("collapse", arr, one, {"a": "*", "b": "*"},
                          {m: "1" for m in arr.mor})
    assert arr.hom("a", "a") == ("atoa",) and arr.hom("a", "b") == ("atob",)
    adj = check_adjunction(left, right, {"*": "1"},
                           {"a": "atoa", "b": "atob"})
    assert adj.right_transpose("b", "1") == "atob"


def test_swapped_unit_counit_rejected():
    one, arr = fx.one(), fx.arrow_cat()
    left = Functor.build("pick_b", one, arr, {"*": "b"}, {"1": "btob"})
    right = Functor.build("collapse", arr, one, {"a": "*", "b": "*"},
                          {m: "1" for m in arr.mor})
    with pytest.raises(InputError):
        check_adjunction(left, right, {"*": "1"}, {"a": "atoa", "b": "btob"})


def test_identity_mate_square():
    C = fx.div12()
    idc = identity_functor(C)
    comp = {c: C.id_of(c) for c in C.objects}
    adj = check_adjunction(idc, idc, comp, comp)
    iota = check_nat("i", idc, idc, comp)
    ok, wit = check_mates(adj, adj, idc, idc, iota, iota)
    assert ok and wit is None


def test_perturbed_mate_square_fails():
    # oracle: in Z2 the mate law at h = 0 becomes 1 = 0
    C = fx.translation(2)
    idc = identity_functor(C)
    ident = {"*": "0"}
    adj = check_adjunction(idc, idc, ident, ident)
    iota = check_nat("i", idc, idc, ident)
    zeta = check_nat("z", idc, idc, {"*": "1"})
    ok, wit = check_mates(adj, adj, idc, idc, iota, zeta)
    assert not ok and wit is not None
    ok2, _ = check_conjugates(adj, adj, iota, zeta)
    assert not ok2


def test_mate_is_unique_partner():
    # for fixed xi = iota exactly one zeta satisfies the mate law
    C = fx.translation(2)
    idc = identity_functor(C)
    ident = {"*": "0"}
    adj = check_adjunction(idc, idc, ident, ident)
    iota = check_nat("i", idc, idc, ident)
    good = [z for z in C.morphisms
            if check_mates(adj, adj, idc, idc, iota,
                           check_nat("z", idc, idc, {"*": z}))[0]]
    assert good == ["0"]


# -- images ----------------------------------------------------------------

def test_identity_images_are_whole_category():
    C = fx.iso_pair()
    ims = image_operators(identity_functor(C))
    for sub in ims.values():
        assert set(sub.objects) == set(C.objects)
        assert set(sub.morphisms) == set(C.morphisms)


def test_point_into_iso2_images():
    # oracle: b is isomorphic to a via u, so replete closures swallow Iso2
    iso2 = fx.iso_pair()
    pt = fx.discrete(("a",))
    J = Functor.build("pt", pt, iso2, {"a": "a"}, {"1a": "1a"})
    ims = image_operators(J)
    assert set(ims["im"].objects) == {"a"}
    assert set(ims["im"].morphisms) == {"1a"}
    assert set(ims["fim"].objects) == {"a"}
    assert set(ims["fim"].morphisms) == {"1a"}
    assert set(ims["rim"].objects) == {"a", "b"}
    assert set(ims["rim"].morphisms) == {"1a", "1b", "u", "v"}
    assert set(ims["rfim"].morphisms) == set(iso2.morphisms)
    assert is_replete_subcategory(ims["rim"])


def test_surjective_images():
    arr, one = fx.arrow_cat(), fx.one()
    F = Functor.build("q", arr, one, {"a": "*", "b": "*"},
                      {m: "1" for m in arr.mor})
    for sub in image_operators(F).values():
        assert set(sub.objects) == {"*"} and set(sub.morphisms) == {"1"}


def test_image_coherence():
    # rfim = rim of the full image = full image of the replete image
    for C, D, F in _functor_pool():
        ims = image_operators(F)
        rfim = ims["rfim"]
        fim_objs = set(ims["fim"].objects)
        rim_objs = set(ims["rim"].objects)
        closure = set()
        for x in D.objects:
            if any(any(D.is_iso(m) for m in D.hom(x, y)) for y in fim_objs):
                closure.add(x)
        assert set(rfim.objects) == closure
        assert closure >= rim_objs or not functor_properties(F)["replete"]


def test_replete_functor_rim_equals_im():
    for C, D, F in _functor_pool():
        props = functor_properties(F)
        ims = image_operators(F)
        if props["replete"]:
            assert ims["rim"].key() == ims["im"].key()
        if props["full"]:
            assert set(ims["fim"].morphisms) == set(ims["im"].morphisms)
        if props["isofull"]:
            assert set(ims["im"].morphisms) == {F(m) for m in C.morphisms}


# -- products, iso search, budget -------------------------------------------

def test_product_category_projection_shape():
    A, B = fx.arrow_cat(), fx.discrete(("x", "y"))
    P = product_category(A, B)
    assert len(P.objects) == len(A.objects) * len(B.objects)
    assert len(P.mor) == len(A.mor) * len(B.mor)


def test_iso_search_finds_relabelling():
    C = fx.discrete(("a", "b"))
    D = fx.discrete(("x", "y"))
    D = FinCat.build("D2", D.objects, D.mor, D.ident, D.comp)
    iso = iso_search(C, D)
    assert iso is not None
    assert sorted(iso.on_obj.values()) == ["x", "y"]


def test_iso_search_respects_over():
    # over a base, only the base-compatible bijection survives
    B = fx.discrete(("x", "y"))
    C = fx.discrete(("a", "b"))
    P = Functor.build("p", C, B, {"a": "x", "b": "y"}, {"1a": "1x", "1b": "1y"})
    Q = Functor.build("q", C, B, {"a": "y", "b": "x"}, {"1a": "1y", "1b": "1x"})
    iso = iso_search(C, C, over=(P, Q))
    assert iso is not None and iso.ob("a") == "b"


def test_budget_exhaustion_is_distinct():
    C = fx.div12()
    with pytest.raises(SearchBudgetExceeded):
        iso_search(C, C, budget=Budget(3))


def test_nonisomorphic_categories_give_none():
    assert iso_search(fx.discrete(("a", "b")), fx.one()) is None


# -- seeded generator sanity (property) -------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=400))
def test_generated_indexed_categories_validate(seed):
    Phi = fx.gen_indexed(seed)
    assert set(Phi.fibre) == set(Phi.base.objects)
    again = fx.gen_indexed(seed)
    assert again.base.table() == Phi.base.table()
    for f in Phi.base.morphisms:
        assert again.inv[f].on_mor == Phi.inv[f].on_mor
