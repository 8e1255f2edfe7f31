"""Indexed categories with explicit coherence data and the Grothendieck
(op-)construction.

An indexed category assigns to each base object a fibre category, to each
base arrow an inverse-image functor, and carries structure isomorphisms
gamma_{f,g}: f* . g* => (g.f)* and delta_A: Id => (1_A)* subject to the
cocycle conditions. The Grothendieck construction turns this data into a
cloven fibration; extraction inverts the process.
"""

from .core import (FinCat, Functor, InputError, NatTransf, check_nat,
                   identity_functor, pair_id)
from .fib import (Fibration, cartesian_factor, compose_fibrations, fibre,
                  fibration_over_fibration, inverse_image_functor)


class IndexedCat:
    """base, fibre: obj -> FinCat, inv: mor -> Functor, gamma, delta."""

    def __init__(self, name, base, fibre, inv, gamma, delta):
        self.name = name
        self.base = base
        self.fibre = fibre
        self.inv = inv
        self.gamma = gamma
        self.delta = delta

    def __repr__(self):
        return "IndexedCat(%s)" % self.name


class OpIndexedCat:
    """Covariant variant: dir: mor -> Functor fibre(dom) -> fibre(cod),
    gamma_{f,g}: (g.f)_* => g_* . f_*, delta_A: (1_A)_* => Id."""

    def __init__(self, name, base, fibre, dir, gamma, delta):
        self.name = name
        self.base = base
        self.fibre = fibre
        self.dir = dir
        self.gamma = gamma
        self.delta = delta

    def __repr__(self):
        return "OpIndexedCat(%s)" % self.name


def strict_indexed(name, base, fibre, inv):
    """Wrap strictly functorial data with identity gamma and delta."""
    gamma = {}
    for f in base.morphisms:
        for g in base.morphisms:
            if base.composable(g, f):
                comp = inv[g].then(inv[f], "%s*%s*" % (f, g))
                gamma[(f, g)] = NatTransf(
                    "gamma(%s,%s)" % (f, g), comp, inv[base.comp[(g, f)]],
                    {x: fibre[base.dom(f)].id_of(comp.ob(x))
                     for x in fibre[base.cod(g)].objects})
    delta = {}
    for a in base.objects:
        delta[a] = NatTransf("delta(%s)" % a, identity_functor(fibre[a]),
                             inv[base.id_of(a)],
                             {x: fibre[a].id_of(x) for x in fibre[a].objects})
    return IndexedCat(name, base, fibre, inv, gamma, delta)


def strict_opindexed(name, base, fibre, dir):
    gamma = {}
    for f in base.morphisms:
        for g in base.morphisms:
            if base.composable(g, f):
                comp = dir[f].then(dir[g], "%s_*%s_*" % (f, g))
                gamma[(f, g)] = NatTransf(
                    "gamma(%s,%s)" % (f, g), dir[base.comp[(g, f)]], comp,
                    {x: fibre[base.cod(g)].id_of(comp.ob(x))
                     for x in fibre[base.dom(f)].objects})
    delta = {}
    for a in base.objects:
        delta[a] = NatTransf("delta(%s)" % a, dir[base.id_of(a)],
                             identity_functor(fibre[a]),
                             {x: fibre[a].id_of(x) for x in fibre[a].objects})
    return OpIndexedCat(name, base, fibre, dir, gamma, delta)


def validate_indexed(Phi):
    """Check endpoints, iso components, and the cocycle conditions."""
    B = Phi.base
    for a in B.objects:
        if a not in Phi.fibre:
            raise InputError("%s: missing fibre at %s" % (Phi.name, a))
    for f in B.morphisms:
        F = Phi.inv.get(f)
        if F is None:
            raise InputError("%s: missing inverse image along %s" % (Phi.name, f))
        if F.source != Phi.fibre[B.cod(f)] or F.target != Phi.fibre[B.dom(f)]:
            raise InputError("%s: inverse image along %s has wrong endpoints" % (Phi.name, f))
    for a in B.objects:
        d = Phi.delta.get(a)
        if d is None:
            raise InputError("%s: missing delta at %s" % (Phi.name, a))
        check_nat(d.name, identity_functor(Phi.fibre[a]), Phi.inv[B.id_of(a)],
                  d.components)
        for x, m in d.components.items():
            if not Phi.fibre[a].is_iso(m):
                raise InputError("%s: delta(%s) at %s not iso" % (Phi.name, a, x))
    for f in B.morphisms:
        for g in B.morphisms:
            if not B.composable(g, f):
                continue
            t = Phi.gamma.get((f, g))
            if t is None:
                raise InputError("%s: missing gamma(%s,%s)" % (Phi.name, f, g))
            comp = Phi.inv[g].then(Phi.inv[f])
            check_nat(t.name, comp, Phi.inv[B.comp[(g, f)]], t.components)
            Fa = Phi.fibre[B.dom(f)]
            for x, m in t.components.items():
                if not Fa.is_iso(m):
                    raise InputError("%s: gamma(%s,%s) at %s not iso" % (Phi.name, f, g, x))
    # cocycle: associativity on composable triples
    for f in B.morphisms:
        for g in B.morphisms:
            if not B.composable(g, f):
                continue
            for h in B.morphisms:
                if not B.composable(h, g):
                    continue
                gf = B.comp[(g, f)]
                hg = B.comp[(h, g)]
                Fa = Phi.fibre[B.dom(f)]
                for x in Phi.fibre[B.cod(h)].objects:
                    left = Fa.comp[(Phi.gamma[(gf, h)].at(x),
                                    Phi.gamma[(f, g)].at(Phi.inv[h].ob(x)))]
                    right = Fa.comp[(Phi.gamma[(f, hg)].at(x),
                                     Phi.inv[f](Phi.gamma[(g, h)].at(x)))]
                    if left != right:
                        raise InputError("%s: cocycle fails at (%s,%s,%s) on %s"
                                         % (Phi.name, f, g, h, x))
    # cocycle: unit laws
    for f in B.morphisms:
        a, b = B.dom(f), B.cod(f)
        Fa = Phi.fibre[a]
        for x in Phi.fibre[b].objects:
            fx = Phi.inv[f].ob(x)
            if Fa.comp[(Phi.gamma[(B.id_of(a), f)].at(x), Phi.delta[a].at(fx))] \
                    != Fa.id_of(fx):
                raise InputError("%s: left unit law fails along %s at %s" % (Phi.name, f, x))
            if Fa.comp[(Phi.gamma[(f, B.id_of(b))].at(x),
                        Phi.inv[f](Phi.delta[b].at(x)))] != Fa.id_of(fx):
                raise InputError("%s: right unit law fails along %s at %s" % (Phi.name, f, x))
    return True


def validate_opindexed(Psi):
    B = Psi.base
    for f in B.morphisms:
        F = Psi.dir.get(f)
        if F is None:
            raise InputError("%s: missing direct image along %s" % (Psi.name, f))
        if F.source != Psi.fibre[B.dom(f)] or F.target != Psi.fibre[B.cod(f)]:
            raise InputError("%s: direct image along %s has wrong endpoints" % (Psi.name, f))
    for a in B.objects:
        d = Psi.delta.get(a)
        check_nat(d.name, Psi.dir[B.id_of(a)], identity_functor(Psi.fibre[a]),
                  d.components)
        for x, m in d.components.items():
            if not Psi.fibre[a].is_iso(m):
                raise InputError("%s: delta(%s) at %s not iso" % (Psi.name, a, x))
    for f in B.morphisms:
        for g in B.morphisms:
            if not B.composable(g, f):
                continue
            t = Psi.gamma.get((f, g))
            comp = Psi.dir[f].then(Psi.dir[g])
            check_nat(t.name, Psi.dir[B.comp[(g, f)]], comp, t.components)
            Fc = Psi.fibre[B.cod(g)]
            for x, m in t.components.items():
                if not Fc.is_iso(m):
                    raise InputError("%s: gamma(%s,%s) at %s not iso" % (Psi.name, f, g, x))
    for f in B.morphisms:
        for g in B.morphisms:
            if not B.composable(g, f):
                continue
            for h in B.morphisms:
                if not B.composable(h, g):
                    continue
                gf = B.comp[(g, f)]
                hg = B.comp[(h, g)]
                Fd = Psi.fibre[B.cod(h)]
                for x in Psi.fibre[B.dom(f)].objects:
                    left = Fd.comp[(Psi.gamma[(g, h)].at(Psi.dir[f].ob(x)),
                                    Psi.gamma[(f, hg)].at(x))]
                    right = Fd.comp[(Psi.dir[h](Psi.gamma[(f, g)].at(x)),
                                     Psi.gamma[(gf, h)].at(x))]
                    if left != right:
                        raise InputError("%s: cocycle fails at (%s,%s,%s) on %s"
                                         % (Psi.name, f, g, h, x))
    for f in B.morphisms:
        a, b = B.dom(f), B.cod(f)
        Fb = Psi.fibre[b]
        for x in Psi.fibre[a].objects:
            fx = Psi.dir[f].ob(x)
            if Fb.comp[(Psi.dir[f](Psi.delta[a].at(x)),
                        Psi.gamma[(B.id_of(a), f)].at(x))] != Fb.id_of(fx):
                raise InputError("%s: left unit law fails along %s at %s" % (Psi.name, f, x))
            if Fb.comp[(Psi.delta[b].at(fx), Psi.gamma[(f, B.id_of(b))].at(x))] \
                    != Fb.id_of(fx):
                raise InputError("%s: right unit law fails along %s at %s" % (Psi.name, f, x))
    return True


def _gmor(f, h, anchor):
    return pair_id(f, h) + "@" + anchor


def grothendieck(Phi, name=None):
    """Total category of pairs (B, E); a morphism (A,D) -> (B,E) over f is a
    fibre morphism h: D -> f*E; composition twists by gamma. The canonical
    cleavage lifts f at (B,E) to (f, 1_{f*E}), normalized on identities."""
    B = Phi.base
    nm = name or "G(%s)" % Phi.name
    objs = []
    for a in B.objects:
        objs.extend(pair_id(a, x) for x in Phi.fibre[a].objects)
    mor = {}
    parts = {}
    for f in B.morphisms:
        a, b = B.dom(f), B.cod(f)
        Fa = Phi.fibre[a]
        for e in Phi.fibre[b].objects:
            fe = Phi.inv[f].ob(e)
            for d in Fa.objects:
                for h in Fa.hom(d, fe):
                    mid = _gmor(f, h, e)
                    mor[mid] = (pair_id(a, d), pair_id(b, e))
                    parts[mid] = (f, h, e)
    ident = {}
    for b in B.objects:
        for e in Phi.fibre[b].objects:
            ident[pair_id(b, e)] = _gmor(B.id_of(b), Phi.delta[b].at(e), e)
    comp = {}
    for m2, (g, k, kk) in parts.items():
        for m1, (f, h, e) in parts.items():
            if mor[m1][1] != mor[m2][0]:
                continue
            gf = B.comp[(g, f)]
            Fa = Phi.fibre[B.dom(f)]
            tw = Fa.compose_chain(Phi.gamma[(f, g)].at(kk), Phi.inv[f](k), h)
            comp[(m2, m1)] = _gmor(gf, tw, kk)
    total = FinCat(nm, objs, mor, ident, comp)
    obj_parts = {}
    for a in B.objects:
        for x in Phi.fibre[a].objects:
            obj_parts[pair_id(a, x)] = (a, x)
    proj = Functor("P_" + nm, total, B,
                   {o: obj_parts[o][0] for o in objs},
                   {m: parts[m][0] for m in mor})
    cleavage = {}
    for f in B.morphisms:
        b = B.cod(f)
        for e in Phi.fibre[b].objects:
            o = pair_id(b, e)
            if B.is_identity(f):
                cleavage[(f, o)] = total.id_of(o)
            else:
                fe = Phi.inv[f].ob(e)
                cleavage[(f, o)] = _gmor(f, Phi.fibre[B.dom(f)].id_of(fe), e)
    out = Fibration(proj, cleavage)
    out.pair_obj = obj_parts
    out.pair_mor = parts
    return out


def grothendieck_op(Psi, name=None):
    """Dual construction: a morphism (A,D) -> (B,E) over f is h: f_*D -> E."""
    B = Psi.base
    nm = name or "Gop(%s)" % Psi.name
    objs = []
    for a in B.objects:
        objs.extend(pair_id(a, x) for x in Psi.fibre[a].objects)
    mor = {}
    parts = {}
    for f in B.morphisms:
        a, b = B.dom(f), B.cod(f)
        Fb = Psi.fibre[b]
        for d in Psi.fibre[a].objects:
            fd = Psi.dir[f].ob(d)
            for e in Fb.objects:
                for h in Fb.hom(fd, e):
                    mid = _gmor(f, h, d)
                    mor[mid] = (pair_id(a, d), pair_id(b, e))
                    parts[mid] = (f, h, d)
    ident = {}
    for a in B.objects:
        for d in Psi.fibre[a].objects:
            ident[pair_id(a, d)] = _gmor(B.id_of(a), Psi.delta[a].at(d), d)
    comp = {}
    for m2, (g, k, ee) in parts.items():
        for m1, (f, h, d) in parts.items():
            if mor[m1][1] != mor[m2][0]:
                continue
            gf = B.comp[(g, f)]
            Fc = Psi.fibre[B.cod(g)]
            tw = Fc.compose_chain(k, Psi.dir[g](h), Psi.gamma[(f, g)].at(d))
            comp[(m2, m1)] = _gmor(gf, tw, d)
    total = FinCat(nm, objs, mor, ident, comp)
    obj_parts = {}
    for a in B.objects:
        for x in Psi.fibre[a].objects:
            obj_parts[pair_id(a, x)] = (a, x)
    proj = Functor("P_" + nm, total, B,
                   {o: obj_parts[o][0] for o in objs},
                   {m: parts[m][0] for m in mor})
    opcleavage = {}
    for f in B.morphisms:
        a = B.dom(f)
        for d in Psi.fibre[a].objects:
            o = pair_id(a, d)
            if B.is_identity(f):
                opcleavage[(f, o)] = total.id_of(o)
            else:
                fd = Psi.dir[f].ob(d)
                opcleavage[(f, o)] = _gmor(f, Psi.fibre[B.cod(f)].id_of(fd), d)
    out = Fibration(proj, opcleavage=opcleavage)
    out.pair_obj = obj_parts
    out.pair_mor = parts
    return out


def op_of_indexed(Phi, name=None):
    """The opindexed category over the opposite base with opposite fibres.

    The op-construction of this data has the same tables as the opposite
    of the Grothendieck construction of Phi.
    """
    B = Phi.base
    Bop = B.opposite()
    fibre = {a: Phi.fibre[a].opposite() for a in B.objects}
    dir = {}
    for f in B.morphisms:
        F = Phi.inv[f]
        dir[f] = Functor(F.name + "^op", fibre[B.cod(f)], fibre[B.dom(f)],
                         dict(F.on_obj), dict(F.on_mor))
    gamma = {}
    for (f, g), t in Phi.gamma.items():
        # (f,g) composable in B (cod f = dom g) becomes the pair (g,f) in B^op
        gamma[(g, f)] = NatTransf(t.name, dir[Bop.comp[(f, g)]],
                                  dir[g].then(dir[f]), dict(t.components))
    delta = {}
    for a in B.objects:
        d = Phi.delta[a]
        delta[a] = NatTransf(d.name, dir[B.id_of(a)], identity_functor(fibre[a]),
                             dict(d.components))
    return OpIndexedCat(name or Phi.name + "^op", Bop, fibre, dir, gamma, delta)


def extract_indexed(P, name=None):
    """Read an indexed category off a cloven fibration.

    Fibres and inverse images come from the cleavage; gamma and delta are
    the unique vertical arrows factoring composed lifts through lifts.
    """
    B = P.base
    E = P.total
    nm = name or "Ix(%s)" % P.name
    fibres = {a: fibre(P, a) for a in B.objects}
    inv = {f: inverse_image_functor(P, f) for f in B.morphisms}
    delta = {}
    for a in B.objects:
        comps = {}
        for x in fibres[a].objects:
            comps[x] = cartesian_factor(P, P.lift(B.id_of(a), x),
                                        E.id_of(x), B.id_of(a))
        delta[a] = NatTransf("delta(%s)" % a, identity_functor(fibres[a]),
                             inv[B.id_of(a)], comps)
    gamma = {}
    for f in B.morphisms:
        for g in B.morphisms:
            if not B.composable(g, f):
                continue
            gf = B.comp[(g, f)]
            a = B.dom(f)
            comps = {}
            for x in fibres[B.cod(g)].objects:
                both = E.comp[(P.lift(g, x), P.lift(f, inv[g].ob(x)))]
                comps[x] = cartesian_factor(P, P.lift(gf, x), both, B.id_of(a))
            gamma[(f, g)] = NatTransf("gamma(%s,%s)" % (f, g),
                                      inv[g].then(inv[f]), inv[gf], comps)
    return IndexedCat(nm, B, fibres, inv, gamma, delta)


def fibre_comparison(Phi, G, a):
    """Canonical isomorphism from the fibre of grothendieck(Phi) at a onto
    Phi(a): (a,x) -> x, with vertical components untwisted by delta."""
    Fa = Phi.fibre[a]
    Ga = fibre(G, a)
    on_obj = {o: G.pair_obj[o][1] for o in Ga.objects}
    on_mor = {}
    for m in Ga.morphisms:
        # m = (1_a, h)@e with h: d -> (1_a)*e; untwist to delta^{-1} . h
        _, h, e = G.pair_mor[m]
        dinv = Fa.inverse(Phi.delta[a].at(e))
        on_mor[m] = Fa.comp[(dinv, h)]
    return Functor.build("cmp(%s,%s)" % (Phi.name, a), Ga, Fa, on_obj, on_mor)


def roundtrip_iso(P, name=None):
    """Isomorphism of categories over the base from the Grothendieck
    construction of the extracted indexed category back onto the total
    category: (B,E) -> E and (f,h)@E -> lift(f,E) . h. Returns the pair
    (forward functor, inverse functor); both composites are verified to be
    identities."""
    Phi = extract_indexed(P)
    G = grothendieck(Phi)
    E = P.total
    on_obj = {o: G.pair_obj[o][1] for o in G.total.objects}
    on_mor = {}
    for m in G.total.morphisms:
        f, h, e = G.pair_mor[m]
        on_mor[m] = E.comp[(P.lift(f, e), h)]
    T = Functor.build(name or "rt(%s)" % P.name, G.total, E, on_obj, on_mor)
    back_obj = {}
    back_mor = {}
    for e in E.objects:
        back_obj[e] = pair_id(P.ob(e), e)
    for m in E.morphisms:
        f = P.functor(m)
        e = E.cod(m)
        hbar = cartesian_factor(P, P.lift(f, e), m, P.base.id_of(P.ob(E.dom(m))))
        back_mor[m] = _gmor(f, hbar, e)
    Tinv = Functor.build(T.name + "^-1", E, G.total, back_obj, back_mor)
    for e in E.objects:
        if T.ob(back_obj[e]) != e:
            raise InputError("roundtrip: T . T^-1 not identity at %s" % e)
    for m in E.morphisms:
        if T(Tinv(m)) != m:
            raise InputError("roundtrip: T . T^-1 not identity at %s" % m)
    for o in G.total.objects:
        if Tinv.ob(T.ob(o)) != o:
            raise InputError("roundtrip: T^-1 . T not identity at %s" % o)
    for m in G.total.morphisms:
        if Tinv(T(m)) != m:
            raise InputError("roundtrip: T^-1 . T not identity at %s" % m)
    for o in G.total.objects:
        if P.ob(T.ob(o)) != G.ob(o):
            raise InputError("roundtrip: witness does not live over the base")
    for m in G.total.morphisms:
        if P.functor(T(m)) != G.functor(m):
            raise InputError("roundtrip: witness does not live over the base")
    return T, Tinv


def indexed_of_fibrations(Qfib, Pfib, name=None):
    """Package a fibration over a fibration as base-indexed data: per base
    object the fibre fibration of Q, per base arrow the pair of inverse
    images, with the structure isomorphisms of both levels."""
    fibres, squares = fibration_over_fibration(Qfib, Pfib)
    top = extract_indexed(compose_fibrations(Qfib, Pfib),
                          name="%s_top" % (name or Qfib.name))
    bot = extract_indexed(Pfib, name="%s_base" % (name or Pfib.name))
    return fibres, squares, top, bot


def two_level_grothendieck(base, fibrations, squares, gamma_top, gamma_bot,
                           delta_top, delta_bot, name=None):
    """Assemble per-object fibrations and per-arrow Cartesian squares into
    a fibration over a fibration.

    fibrations: obj -> Fibration Xi(a); squares: mor f -> (top, bottom)
    functor pair from Xi(cod f) to Xi(dom f); gamma/delta: coherence data
    for both levels. Builds the two Grothendieck constructions and the
    connecting functor Q, returning (Q functor, upper fibration over the
    base, lower fibration over the base).
    """
    nm = name or "Xi"
    top_ix = IndexedCat(nm + "_top", base,
                        {a: fibrations[a].total for a in base.objects},
                        {f: squares[f][0] for f in base.morphisms},
                        gamma_top, delta_top)
    bot_ix = IndexedCat(nm + "_bot", base,
                        {a: fibrations[a].base for a in base.objects},
                        {f: squares[f][1] for f in base.morphisms},
                        gamma_bot, delta_bot)
    validate_indexed(top_ix)
    validate_indexed(bot_ix)
    upper = grothendieck(top_ix)
    lower = grothendieck(bot_ix)
    on_obj = {}
    on_mor = {}
    for o in upper.total.objects:
        a, x = upper.pair_obj[o]
        on_obj[o] = pair_id(a, fibrations[a].ob(x))
    for m in upper.total.morphisms:
        f, h, e = upper.pair_mor[m]
        a, b = base.dom(f), base.cod(f)
        on_mor[m] = _gmor(f, fibrations[a].functor(h), fibrations[b].ob(e))
    Q = Functor.build("Q_" + nm, upper.total, lower.total, on_obj, on_mor)
    return Q, upper, lower
