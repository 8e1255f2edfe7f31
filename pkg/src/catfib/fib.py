"""Fibrations of finite categories: Cartesian arrows, cleavages, transport.

A fibration is carried by a functor P: E -> B. Cartesian arrows are decided
by their universal property over the explicit tables; cleavages are chosen
deterministically (identity lifts for identities, otherwise the
lexicographically least Cartesian lift).
"""

from .core import (Budget, Functor, InputError, NatTransf, Adjunction,
                   check_adjunction, FinCat, identity_functor, pair_id)


class FibReport:
    """Outcome of a fibration-style check with an optional witness."""

    def __init__(self, ok, witness=None):
        self.ok = ok
        self.witness = witness

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "FibReport(%s%s)" % (self.ok, "" if self.ok else ", " + str(self.witness))


def is_cartesian(P, h):
    """h is Cartesian over P(h): every k into cod(h) whose image factors
    through P(h) factors uniquely through h over the given base factor."""
    E, B = P.source, P.target
    f = P(h)
    e_cod = E.cod(h)
    e_dom = E.dom(h)
    for k in E.morphisms:
        if E.cod(k) != e_cod:
            continue
        pk = P(k)
        for g in B.morphisms:
            if not B.composable(f, g) or B.comp[(f, g)] != pk:
                continue
            count = 0
            for l in E.hom(E.dom(k), e_dom):
                if P(l) == g and E.comp[(h, l)] == k:
                    count += 1
            if count != 1:
                return False
    return True


def is_opcartesian(P, h):
    E, B = P.source, P.target
    f = P(h)
    e_dom = E.dom(h)
    for k in E.morphisms:
        if E.dom(k) != e_dom:
            continue
        pk = P(k)
        for g in B.morphisms:
            if not B.composable(g, f) or B.comp[(g, f)] != pk:
                continue
            count = 0
            for l in E.hom(E.cod(h), E.cod(k)):
                if P(l) == g and E.comp[(l, h)] == k:
                    count += 1
            if count != 1:
                return False
    return True


def cartesian_lifts(P, f, e):
    """All Cartesian arrows over f with codomain e, sorted."""
    E = P.source
    return tuple(m for m in E.morphisms
                 if E.cod(m) == e and P(m) == f and is_cartesian(P, m))


def opcartesian_lifts(P, f, d):
    E = P.source
    return tuple(m for m in E.morphisms
                 if E.dom(m) == d and P(m) == f and is_opcartesian(P, m))


def check_fibration(P):
    """Every (arrow of the base, object over its codomain) has a Cartesian lift."""
    E, B = P.source, P.target
    over = {b: [e for e in E.objects if P.ob(e) == b] for b in B.objects}
    for f in B.morphisms:
        for e in over[B.cod(f)]:
            if not cartesian_lifts(P, f, e):
                return FibReport(False, ("no cartesian lift", f, e))
    return FibReport(True)


def check_opfibration(P):
    E, B = P.source, P.target
    over = {b: [e for e in E.objects if P.ob(e) == b] for b in B.objects}
    for f in B.morphisms:
        for d in over[B.dom(f)]:
            if not opcartesian_lifts(P, f, d):
                return FibReport(False, ("no opcartesian lift", f, d))
    return FibReport(True)


def check_bifibration(P):
    r = check_fibration(P)
    if not r:
        return r
    return check_opfibration(P)


class Fibration:
    """A functor together with an optional cleavage and opcleavage.

    cleavage maps (base arrow f, object e over cod f) to a chosen Cartesian
    lift; opcleavage maps (f, d over dom f) to a chosen opCartesian lift.
    """

    def __init__(self, functor, cleavage=None, opcleavage=None):
        self.functor = functor
        self.total = functor.source
        self.base = functor.target
        self.cleavage = cleavage
        self.opcleavage = opcleavage

    @property
    def name(self):
        return self.functor.name

    def ob(self, e):
        return self.functor.ob(e)

    def __call__(self, m):
        return self.functor(m)

    def lift(self, f, e):
        return self.cleavage[(f, e)]

    def oplift(self, f, d):
        return self.opcleavage[(f, d)]

    def __repr__(self):
        return "Fibration(%s)" % self.functor.name


def build_cleavage(P):
    """Choose Cartesian lifts: identities for identities, else lexicographically least."""
    E, B = P.source, P.target
    cleavage = {}
    for f in B.morphisms:
        for e in E.objects:
            if P.ob(e) != B.cod(f):
                continue
            if B.is_identity(f):
                cleavage[(f, e)] = E.id_of(e)
                continue
            lifts = cartesian_lifts(P, f, e)
            if not lifts:
                raise InputError("not a fibration: no cartesian lift of %s at %s" % (f, e))
            cleavage[(f, e)] = lifts[0]
    return cleavage


def build_opcleavage(P):
    E, B = P.source, P.target
    opcleavage = {}
    for f in B.morphisms:
        for d in E.objects:
            if P.ob(d) != B.dom(f):
                continue
            if B.is_identity(f):
                opcleavage[(f, d)] = E.id_of(d)
                continue
            lifts = opcartesian_lifts(P, f, d)
            if not lifts:
                raise InputError("not an opfibration: no opcartesian lift of %s at %s" % (f, d))
            opcleavage[(f, d)] = lifts[0]
    return opcleavage


def cloven(functor, opcleavage_too=False):
    P = Fibration(functor, build_cleavage(functor))
    if opcleavage_too:
        P.opcleavage = build_opcleavage(functor)
    return P


def validate_fibration(P):
    """Check a Fibration's cleavage data: correct endpoints, Cartesian, normalized."""
    E, B = P.total, P.base
    if P.cleavage is not None:
        need = {(f, e) for f in B.morphisms for e in E.objects if P.ob(e) == B.cod(f)}
        if set(P.cleavage) != need:
            raise InputError("%s: cleavage must cover exactly the lifting problems" % P.name)
        for (f, e), m in P.cleavage.items():
            if E.cod(m) != e or P.functor(m) != f:
                raise InputError("%s: lift of %s at %s has wrong endpoints" % (P.name, f, e))
            if B.is_identity(f) and not E.is_identity(m):
                raise InputError("%s: cleavage not normalized at %s" % (P.name, e))
            if not is_cartesian(P.functor, m):
                raise InputError("%s: chosen lift of %s at %s not cartesian" % (P.name, f, e))
    if P.opcleavage is not None:
        need = {(f, d) for f in B.morphisms for d in E.objects if P.ob(d) == B.dom(f)}
        if set(P.opcleavage) != need:
            raise InputError("%s: opcleavage must cover exactly the lifting problems" % P.name)
        for (f, d), m in P.opcleavage.items():
            if E.dom(m) != d or P.functor(m) != f:
                raise InputError("%s: oplift of %s at %s has wrong endpoints" % (P.name, f, d))
            if B.is_identity(f) and not E.is_identity(m):
                raise InputError("%s: opcleavage not normalized at %s" % (P.name, d))
            if not is_opcartesian(P.functor, m):
                raise InputError("%s: chosen oplift of %s at %s not opcartesian" % (P.name, f, d))
    return True


def vertical_morphisms(P, b):
    E = P.functor.source if isinstance(P, Fibration) else P.source
    F = P.functor if isinstance(P, Fibration) else P
    B = F.target
    return tuple(m for m in E.morphisms if F(m) == B.id_of(b))


def fibre(P, b, name=None):
    """The fibre category over b: objects over b, vertical morphisms."""
    F = P.functor if isinstance(P, Fibration) else P
    E, B = F.source, F.target
    objs = [e for e in E.objects if F.ob(e) == b]
    mors = {m: E.mor[m] for m in E.morphisms
            if F(m) == B.id_of(b) and E.dom(m) in objs}
    ident = {e: E.id_of(e) for e in objs}
    comp = {(g, f): h for (g, f), h in E.comp.items() if g in mors and f in mors}
    return FinCat(name or "%s@%s" % (E.name, b), objs, mors, ident, comp)


def cartesian_factor(P, cart, m, g):
    """Unique l over g with cart . l = m, for cart Cartesian; raises if not unique."""
    F = P.functor if isinstance(P, Fibration) else P
    E = F.source
    found = [l for l in E.hom(E.dom(m), E.dom(cart))
             if F(l) == g and E.comp[(cart, l)] == m]
    if len(found) != 1:
        raise InputError("cartesian factorization of %s through %s over %s not unique "
                         "(%d found)" % (m, cart, g, len(found)))
    return found[0]


def opcartesian_factor(P, opcart, m, g):
    """Unique l over g with l . opcart = m, for opcart opCartesian."""
    F = P.functor if isinstance(P, Fibration) else P
    E = F.source
    found = [l for l in E.hom(E.cod(opcart), E.cod(m))
             if F(l) == g and E.comp[(l, opcart)] == m]
    if len(found) != 1:
        raise InputError("opcartesian factorization of %s through %s over %s not unique "
                         "(%d found)" % (m, opcart, g, len(found)))
    return found[0]


def inverse_image_functor(P, f, name=None):
    """Transport along the cleavage: the inverse image functor between fibres."""
    B = P.base
    a, b = B.dom(f), B.cod(f)
    Fa, Fb = fibre(P, a), fibre(P, b)
    on_obj = {}
    on_mor = {}
    for e in Fb.objects:
        on_obj[e] = P.total.dom(P.lift(f, e))
    for v in Fb.morphisms:
        d, c = Fb.mor[v]
        m = P.total.comp[(v, P.lift(f, d))]
        on_mor[v] = cartesian_factor(P, P.lift(f, c), m, B.id_of(a))
    return Functor(name or "%s^*" % f, Fb, Fa, on_obj, on_mor)


def direct_image_functor(P, f, name=None):
    """Transport along the opcleavage: the direct image functor between fibres."""
    B = P.base
    a, b = B.dom(f), B.cod(f)
    Fa, Fb = fibre(P, a), fibre(P, b)
    on_obj = {}
    on_mor = {}
    for d in Fa.objects:
        on_obj[d] = P.total.cod(P.oplift(f, d))
    for v in Fa.morphisms:
        d, c = Fa.mor[v]
        m = P.total.comp[(P.oplift(f, c), v)]
        on_mor[v] = opcartesian_factor(P, P.oplift(f, d), m, B.id_of(b))
    return Functor(name or "%s_*" % f, Fa, Fb, on_obj, on_mor)


def bifibration_adjunctions(P):
    """Per base arrow, the adjunction direct image -| inverse image.

    Requires cleavage and opcleavage. The unit at D is the unique vertical
    factoring the opCartesian arrow through the Cartesian one; the counit
    dually. Both triangle identities (and the hom-set bijection) are
    checked via check_adjunction. Also verifies that composing the unit
    with the Cartesian lift rebuilds the opCartesian lift.
    """
    if P.cleavage is None or P.opcleavage is None:
        raise InputError("bifibration_adjunctions requires cleavage and opcleavage")
    E, B = P.total, P.base
    out = {}
    for f in B.morphisms:
        a, b = B.dom(f), B.cod(f)
        lower = direct_image_functor(P, f)
        upper = inverse_image_functor(P, f)
        unit = {}
        for d in lower.source.objects:
            cart = P.lift(f, lower.ob(d))
            unit[d] = cartesian_factor(P, cart, P.oplift(f, d), B.id_of(a))
        counit = {}
        for e in upper.source.objects:
            opcart = P.oplift(f, upper.ob(e))
            counit[e] = opcartesian_factor(P, opcart, P.lift(f, e), B.id_of(b))
        adj = check_adjunction(lower, upper, unit, counit)
        for d in lower.source.objects:
            rebuilt = E.comp[(P.lift(f, lower.ob(d)), unit[d])]
            if rebuilt != P.oplift(f, d):
                raise InputError("unit at %s does not rebuild the opcartesian lift of %s" % (d, f))
        out[f] = adj
    return out


class MorFib:
    """A morphism of fibrations: a commuting square of functors."""

    def __init__(self, name, top, base, source, target):
        self.name = name
        self.top = top
        self.base = base
        self.source = source
        self.target = target

    def __repr__(self):
        return "MorFib(%s)" % self.name

    @staticmethod
    def build(name, top, base, source, target):
        P, Q = source, target
        if top.source != P.total or top.target != Q.total:
            raise InputError("%s: top functor endpoints wrong" % name)
        if base.source != P.base or base.target != Q.base:
            raise InputError("%s: base functor endpoints wrong" % name)
        for e in P.total.objects:
            if Q.ob(top.ob(e)) != base.ob(P.ob(e)):
                raise InputError("%s: square does not commute at object %s" % (name, e))
        for m in P.total.morphisms:
            if Q.functor(top(m)) != base(P.functor(m)):
                raise InputError("%s: square does not commute at morphism %s" % (name, m))
        return MorFib(name, top, base, source, target)


def is_cartesian_morphism(mor):
    """The top functor preserves Cartesian arrows."""
    P, Q = mor.source, mor.target
    for m in P.total.morphisms:
        if is_cartesian(P.functor, m) and not is_cartesian(Q.functor, mor.top(m)):
            return False, m
    return True, None


def pullback_fibration(P, F, name=None):
    """Pullback of a cloven fibration P: E -> B along F: A -> B.

    Total category: pairs (a, e) with F(a) = P(e); the projection to A is a
    fibration with lift of u at (a, e) given by (u, lift of F(u) at e).
    Returns (fibration over A, top projection functor to E).
    """
    E, B, A = P.total, P.base, F.source
    nm = name or "pb(%s,%s)" % (P.name, F.name)
    obj_parts = {pair_id(a, e): (a, e) for a in A.objects for e in E.objects
                 if F.ob(a) == P.ob(e)}
    objs = list(obj_parts)
    mor = {}
    parts = {}
    for u in A.morphisms:
        for m in E.morphisms:
            if F(u) == P.functor(m):
                mid = pair_id(u, m)
                mor[mid] = (pair_id(A.dom(u), E.dom(m)), pair_id(A.cod(u), E.cod(m)))
                parts[mid] = (u, m)
    ident = {o: pair_id(A.id_of(a), E.id_of(e)) for o, (a, e) in obj_parts.items()}
    comp = {}
    for g, (ug, mg) in parts.items():
        for f, (uf, mf) in parts.items():
            if mor[f][1] == mor[g][0]:
                comp[(g, f)] = pair_id(A.comp[(ug, uf)], E.comp[(mg, mf)])
    total = FinCat(nm + "_tot", objs, mor, ident, comp)
    proj = Functor(nm, total, A,
                   {o: a for o, (a, e) in obj_parts.items()},
                   {m: parts[m][0] for m in mor})
    cleavage = {}
    for u in A.morphisms:
        for o, (a, e) in obj_parts.items():
            if a != A.cod(u):
                continue
            if A.is_identity(u):
                cleavage[(u, o)] = total.id_of(o)
            else:
                cleavage[(u, o)] = pair_id(u, P.lift(F(u), e))
    top = Functor(nm + "_top", total, E,
                  {o: e for o, (a, e) in obj_parts.items()},
                  {m: parts[m][1] for m in mor})
    out = Fibration(proj, cleavage)
    out.pair_obj = obj_parts
    out.pair_mor = parts
    return out, top


def compose_fibrations(Q, P, name=None):
    """Composite of cloven fibrations Q: E -> D and P: D -> B.

    The lift of f at e is the Q-lift, at e, of the P-lift of f at Q(e).
    """
    comp_functor = Q.functor.then(P.functor, name or "(%s;%s)" % (Q.name, P.name))
    B = P.base
    cleavage = {}
    for f in B.morphisms:
        for e in Q.total.objects:
            if comp_functor.ob(e) != B.cod(f):
                continue
            if B.is_identity(f):
                cleavage[(f, e)] = Q.total.id_of(e)
            else:
                mid = P.lift(f, Q.ob(e))
                cleavage[(f, e)] = Q.lift(mid, e)
    return Fibration(comp_functor, cleavage)


def product_over_base(P, Q, name=None):
    """2-product of two cloven fibrations over the same base: the pullback
    total category with pairwise lifts, plus the two projections."""
    if P.base != Q.base:
        raise InputError("product_over_base: different bases")
    E, D, B = P.total, Q.total, P.base
    nm = name or "(%sx%s)" % (P.name, Q.name)
    obj_parts = {pair_id(e, d): (e, d) for e in E.objects for d in D.objects
                 if P.ob(e) == Q.ob(d)}
    objs = list(obj_parts)
    mor = {}
    parts = {}
    for m in E.morphisms:
        for n in D.morphisms:
            if P.functor(m) == Q.functor(n):
                mid = pair_id(m, n)
                mor[mid] = (pair_id(E.dom(m), D.dom(n)), pair_id(E.cod(m), D.cod(n)))
                parts[mid] = (m, n)
    ident = {o: pair_id(E.id_of(e), D.id_of(d)) for o, (e, d) in obj_parts.items()}
    comp = {}
    for g, (mg, ng) in parts.items():
        for f, (mf, nf) in parts.items():
            if mor[f][1] == mor[g][0]:
                comp[(g, f)] = pair_id(E.comp[(mg, mf)], D.comp[(ng, nf)])
    total = FinCat(nm + "_tot", objs, mor, ident, comp)
    proj = Functor(nm, total, B,
                   {o: P.ob(e) for o, (e, d) in obj_parts.items()},
                   {m: P.functor(parts[m][0]) for m in mor})
    cleavage = {}
    for f in B.morphisms:
        for o, (e, d) in obj_parts.items():
            if P.ob(e) != B.cod(f):
                continue
            if B.is_identity(f):
                cleavage[(f, o)] = total.id_of(o)
            else:
                cleavage[(f, o)] = pair_id(P.lift(f, e), Q.lift(f, d))
    fib = Fibration(proj, cleavage)
    fib.pair_obj = obj_parts
    fib.pair_mor = parts
    pr1 = Functor(nm + "_pr1", total, E,
                  {o: e for o, (e, d) in obj_parts.items()},
                  {m: parts[m][0] for m in mor})
    pr2 = Functor(nm + "_pr2", total, D,
                  {o: d for o, (e, d) in obj_parts.items()},
                  {m: parts[m][1] for m in mor})
    return fib, pr1, pr2


def check_internal_fibration(Q, P):
    """Decide the two sides of the fibration-over-a-fibration criterion.

    Q: E -> D over the base via P: D -> B (P and P.Q fibrations). Q is a
    fibration iff Q maps (P.Q)-Cartesian arrows to P-Cartesian arrows and
    every vertical arrow of D has Q-Cartesian lifts at every object above
    its codomain. Returns (is_fibration, criterion_holds, details).
    """
    E, D, B = Q.source, Q.target, P.target
    R = Q.then(P)
    qfib = check_fibration(Q)
    cart_over = all(is_cartesian(P, Q(m)) for m in E.morphisms if is_cartesian(R, m))
    vert_lifts = True
    for v in D.morphisms:
        if not B.is_identity(P(v)):
            continue
        for e in E.objects:
            if Q.ob(e) != D.cod(v):
                continue
            if not any(Q(m) == v and E.cod(m) == e and is_cartesian(Q, m)
                       for m in E.morphisms):
                vert_lifts = False
                break
        if not vert_lifts:
            break
    criterion = cart_over and vert_lifts
    return qfib.ok, criterion, {"cartesian_over_base": cart_over,
                                "vertical_lifts": vert_lifts}


def fibre_fibration(Q, P, a, name=None):
    """Restriction of Q: E -> D to the fibres over base object a."""
    R = Q.then(P)
    Ea = fibre(R, a, name=(name or "E@%s" % a))
    Da = fibre(P, a, name=(name or "D@%s" % a))
    F = Functor("%s@%s" % (Q.name, a), Ea, Da,
                {e: Q.ob(e) for e in Ea.objects},
                {m: Q(m) for m in Ea.morphisms})
    return F


def fibration_over_fibration(Qfib, Pfib):
    """Decompose a fibration over a fibration into fibre fibrations and
    inverse-image squares.

    Qfib: E -> D and Pfib: D -> B cloven; the composite cleavage makes the
    restriction to each base fibre a fibration, and for each base arrow f
    the pair (inverse image upstairs, inverse image downstairs) is a
    Cartesian morphism between the fibre fibrations.
    Returns (dict a -> fibre fibration functor, dict f -> (top, base) functor pair).
    """
    Q, P = Qfib.functor, Pfib.functor
    B = Pfib.base
    Rfib = compose_fibrations(Qfib, Pfib)
    fibres = {}
    for a in B.objects:
        F = fibre_fibration(Q, P, a)
        rep = check_fibration(F)
        if not rep:
            raise InputError("fibre over %s is not a fibration: %s" % (a, rep.witness))
        fibres[a] = F
    squares = {}
    for f in B.morphisms:
        a = B.dom(f)
        top = inverse_image_functor(Rfib, f, name="%s^*top" % f)
        bot = inverse_image_functor(Pfib, f, name="%s^*base" % f)
        Fa, Fb = fibres[a], fibres[B.cod(f)]
        for e in Fb.source.objects:
            if Fa.ob(top.ob(e)) != bot.ob(Fb.ob(e)):
                raise InputError("inverse-image square fails at object %s over %s" % (e, f))
        for m in Fb.source.morphisms:
            if Fa(top(m)) != bot(Fb(m)):
                raise InputError("inverse-image square fails at morphism %s over %s" % (m, f))
        squares[f] = (top, bot)
    return fibres, squares
