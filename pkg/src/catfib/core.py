"""Finite categories as explicit tables, checked exhaustively.

Objects and morphisms are identified by strings. A category stores its
morphism table (dom/cod), the identity assignment and the full composition
table; every law is decidable and checked by enumeration. Witness selection
is deterministic: candidates are always scanned in lexicographic identifier
order.
"""

from dataclasses import dataclass, field
from itertools import product


class InputError(Exception):
    """Input data fails structural validation."""


class SearchBudgetExceeded(Exception):
    """An exhaustive search would exceed its candidate budget."""


DEFAULT_BUDGET = 10**7


class Budget:
    """Counts candidates inspected by a search and aborts when exhausted.

    Distinct from a negative search result: running out of budget raises,
    it never reports "not found".
    """

    def __init__(self, limit=DEFAULT_BUDGET):
        self.limit = int(limit)
        self.used = 0

    def spend(self, amount=1):
        self.used += amount
        if self.used > self.limit:
            raise SearchBudgetExceeded(
                "search budget exceeded: %d > %d" % (self.used, self.limit))


def pair_id(a, b):
    """Deterministic identifier for pairs in constructed categories."""
    return "(%s,%s)" % (a, b)


class FinCat:
    """A finite category: explicit object, morphism and composition tables.

    mor maps morphism id -> (dom, cod); ident maps object -> identity id;
    comp maps (g, f) -> g after f, total exactly on composable pairs.
    Instances are assumed validated (use FinCat.build).
    """

    def __init__(self, name, objects, mor, ident, comp):
        self.name = name
        self.objects = tuple(sorted(objects))
        self.mor = dict(mor)
        self.ident = dict(ident)
        self.comp = dict(comp)
        self.morphisms = tuple(sorted(self.mor))
        self._hom = {}
        for m in self.morphisms:
            d, c = self.mor[m]
            self._hom.setdefault((d, c), []).append(m)
        self._inverse = None

    def dom(self, m):
        return self.mor[m][0]

    def cod(self, m):
        return self.mor[m][1]

    def id_of(self, a):
        return self.ident[a]

    def is_identity(self, m):
        d, c = self.mor[m]
        return d == c and self.ident[d] == m

    def composable(self, g, f):
        return self.cod(f) == self.dom(g)

    def compose(self, g, f):
        return self.comp[(g, f)]

    def compose_chain(self, *ms):
        """Compose right-to-left: compose_chain(h, g, f) = h after g after f."""
        out = ms[0]
        for m in ms[1:]:
            out = self.comp[(out, m)]
        return out

    def hom(self, a, b):
        return tuple(self._hom.get((a, b), ()))

    def _build_inverses(self):
        inv = {}
        for m in self.morphisms:
            d, c = self.mor[m]
            for n in self.hom(c, d):
                if self.comp[(m, n)] == self.ident[c] and self.comp[(n, m)] == self.ident[d]:
                    inv[m] = n
                    break
        self._inverse = inv

    def inverse(self, m):
        """Two-sided inverse of m, or None."""
        if self._inverse is None:
            self._build_inverses()
        return self._inverse.get(m)

    def is_iso(self, m):
        return self.inverse(m) is not None

    def isos(self):
        if self._inverse is None:
            self._build_inverses()
        return tuple(sorted(self._inverse))

    def opposite(self):
        """Same identifiers, dom/cod swapped, composition reversed."""
        mor = {m: (c, d) for m, (d, c) in self.mor.items()}
        comp = {(f, g): h for (g, f), h in self.comp.items()}
        return FinCat(self.name + "_op", self.objects, mor, self.ident, comp)

    def table(self):
        return (self.objects, tuple(sorted(self.mor.items())),
                tuple(sorted(self.ident.items())), tuple(sorted(self.comp.items())))

    def __eq__(self, other):
        return isinstance(other, FinCat) and self.table() == other.table()

    def __repr__(self):
        return "FinCat(%s: %d objects, %d morphisms)" % (
            self.name, len(self.objects), len(self.morphisms))

    @staticmethod
    def build(name, objects, mor, ident, comp):
        """Validate raw tables and return the category.

        Checks identifier sanity, totality of composition on exactly the
        composable pairs, endpoint compatibility, unit laws and
        associativity. The empty category is legal.
        """
        objects = tuple(sorted(objects))
        obset = set(objects)
        if len(obset) != len(objects):
            raise InputError("%s: duplicate object identifiers" % name)
        for m, (d, c) in mor.items():
            if d not in obset or c not in obset:
                raise InputError("%s: morphism %s has unknown endpoint" % (name, m))
        if set(ident) != obset:
            raise InputError("%s: identity table must cover exactly the objects" % name)
        for a, i in ident.items():
            if i not in mor:
                raise InputError("%s: identity of %s is not a morphism" % (name, a))
            if mor[i] != (a, a):
                raise InputError("%s: identity of %s has endpoints %s" % (name, a, mor[i]))
        composable = set()
        for g, (dg, cg) in mor.items():
            for f, (df, cf) in mor.items():
                if cf == dg:
                    composable.add((g, f))
        if set(comp) != composable:
            missing = sorted(composable - set(comp))[:3]
            extra = sorted(set(comp) - composable)[:3]
            raise InputError("%s: composition must be total exactly on composable "
                             "pairs (missing %s, extra %s)" % (name, missing, extra))
        for (g, f), h in comp.items():
            if h not in mor:
                raise InputError("%s: composite %s of (%s,%s) is not a morphism" % (name, h, g, f))
            if mor[h] != (mor[f][0], mor[g][1]):
                raise InputError("%s: composite %s . %s = %s has wrong endpoints" % (name, g, f, h))
        cat = FinCat(name, objects, mor, ident, comp)
        for f in cat.morphisms:
            d, c = cat.mor[f]
            if cat.comp[(f, ident[d])] != f or cat.comp[(ident[c], f)] != f:
                raise InputError("%s: unit law fails at %s" % (name, f))
        for g in cat.morphisms:
            for f in cat.morphisms:
                if not cat.composable(g, f):
                    continue
                gf = cat.comp[(g, f)]
                for h in cat.morphisms:
                    if not cat.composable(h, g):
                        continue
                    if cat.comp[(h, gf)] != cat.comp[(cat.comp[(h, g)], f)]:
                        raise InputError("%s: associativity fails at (%s,%s,%s)" % (name, h, g, f))
        return cat


def validate_category(name, objects, mor, ident, comp):
    return FinCat.build(name, objects, mor, ident, comp)


def product_category(C, D, name=None):
    """C x D with pair identifiers."""
    objects = [pair_id(a, b) for a in C.objects for b in D.objects]
    mor = {}
    for f in C.morphisms:
        for g in D.morphisms:
            mor[pair_id(f, g)] = (pair_id(C.dom(f), D.dom(g)), pair_id(C.cod(f), D.cod(g)))
    ident = {pair_id(a, b): pair_id(C.id_of(a), D.id_of(b))
             for a in C.objects for b in D.objects}
    comp = {}
    for (g2, f2), h2 in D.comp.items():
        for (g1, f1), h1 in C.comp.items():
            comp[(pair_id(g1, g2), pair_id(f1, f2))] = pair_id(h1, h2)
    return FinCat(name or "(%sx%s)" % (C.name, D.name), objects, mor, ident, comp)


class Functor:
    """A functor as explicit object and morphism tables."""

    def __init__(self, name, source, target, on_obj, on_mor):
        self.name = name
        self.source = source
        self.target = target
        self.on_obj = dict(on_obj)
        self.on_mor = dict(on_mor)

    def ob(self, a):
        return self.on_obj[a]

    def __call__(self, m):
        return self.on_mor[m]

    def table(self):
        return (tuple(sorted(self.on_obj.items())), tuple(sorted(self.on_mor.items())))

    def __eq__(self, other):
        return (isinstance(other, Functor) and self.table() == other.table()
                and self.source == other.source and self.target == other.target)

    def __repr__(self):
        return "Functor(%s: %s -> %s)" % (self.name, self.source.name, self.target.name)

    @staticmethod
    def build(name, source, target, on_obj, on_mor):
        if set(on_obj) != set(source.objects):
            raise InputError("%s: object table must cover the source objects" % name)
        for a, x in on_obj.items():
            if x not in set(target.objects):
                raise InputError("%s: image object %s unknown" % (name, x))
        if set(on_mor) != set(source.morphisms):
            raise InputError("%s: morphism table must cover the source morphisms" % name)
        for m, n in on_mor.items():
            if n not in target.mor:
                raise InputError("%s: image morphism %s unknown" % (name, n))
            if target.mor[n] != (on_obj[source.dom(m)], on_obj[source.cod(m)]):
                raise InputError("%s: image of %s has wrong endpoints" % (name, m))
        F = Functor(name, source, target, on_obj, on_mor)
        for a in source.objects:
            if F(source.id_of(a)) != target.id_of(F.ob(a)):
                raise InputError("%s: does not preserve identity of %s" % (name, a))
        for (g, f), h in source.comp.items():
            if target.comp[(F(g), F(f))] != F(h):
                raise InputError("%s: does not preserve composite %s . %s" % (name, g, f))
        return F

    def then(self, G, name=None):
        """Composite self ; G (apply self first)."""
        if G.source is not self.target and G.source != self.target:
            raise InputError("composite %s;%s: middle categories differ" % (self.name, G.name))
        return Functor(name or "(%s;%s)" % (self.name, G.name), self.source, G.target,
                       {a: G.ob(self.ob(a)) for a in self.source.objects},
                       {m: G(self(m)) for m in self.source.morphisms})


def validate_functor(name, source, target, on_obj, on_mor):
    return Functor.build(name, source, target, on_obj, on_mor)


def identity_functor(C):
    return Functor("1_" + C.name, C, C,
                   {a: a for a in C.objects}, {m: m for m in C.morphisms})


def opposite_functor(F):
    return Functor(F.name + "_op", F.source.opposite(), F.target.opposite(),
                   F.on_obj, F.on_mor)


class NatTransf:
    """A natural transformation as a component table."""

    def __init__(self, name, F, G, components):
        self.name = name
        self.F = F
        self.G = G
        self.components = dict(components)

    def at(self, a):
        return self.components[a]

    def table(self):
        return tuple(sorted(self.components.items()))

    def __repr__(self):
        return "NatTransf(%s: %s => %s)" % (self.name, self.F.name, self.G.name)


def check_nat(name, F, G, comp):
    """Validate components and every naturality square; returns the transformation."""
    if F.source != G.source or F.target != G.target:
        raise InputError("%s: parallel functors required" % name)
    C, D = F.source, F.target
    if set(comp) != set(C.objects):
        raise InputError("%s: component table must cover the source objects" % name)
    for a, m in comp.items():
        if m not in D.mor or D.mor[m] != (F.ob(a), G.ob(a)):
            raise InputError("%s: component at %s has wrong endpoints" % (name, a))
    for f in C.morphisms:
        a, b = C.dom(f), C.cod(f)
        if D.comp[(G(f), comp[a])] != D.comp[(comp[b], F(f))]:
            raise InputError("%s: naturality square fails at %s" % (name, f))
    return NatTransf(name, F, G, comp)


def is_nat_iso(t):
    return all(t.F.target.is_iso(t.at(a)) for a in t.F.source.objects)


def nat_iso_search(F, G, budget=None):
    """Exhaustive search for a natural isomorphism F => G, or None."""
    if F.source != G.source or F.target != G.target:
        return None
    C, D = F.source, F.target
    budget = budget or Budget()
    options = []
    for a in C.objects:
        isos = [m for m in D.hom(F.ob(a), G.ob(a)) if D.is_iso(m)]
        if not isos:
            return None
        options.append(isos)
    for pick in product(*options):
        budget.spend()
        comp = dict(zip(C.objects, pick))
        if all(D.comp[(G(f), comp[C.dom(f)])] == D.comp[(comp[C.cod(f)], F(f))]
               for f in C.morphisms):
            return NatTransf("iso(%s,%s)" % (F.name, G.name), F, G, comp)
    return None


def nat_vertical(s, t, name=None):
    """Vertical composite s after t (t: F=>G, s: G=>H)."""
    D = t.F.target
    return NatTransf(name or "(%s.%s)" % (s.name, t.name), t.F, s.G,
                     {a: D.comp[(s.at(a), t.at(a))] for a in t.F.source.objects})


def whisker_left(H, t, name=None):
    """H applied after t: components H(t_a), a transformation H.F => H.G."""
    return NatTransf(name or "(%s*%s)" % (H.name, t.name), t.F.then(H), t.G.then(H),
                     {a: H(t.at(a)) for a in t.F.source.objects})


def whisker_right(t, K, name=None):
    """t restricted along K: components t_{K(a)}, a transformation F.K => G.K."""
    return NatTransf(name or "(%s*%s)" % (t.name, K.name), K.then(t.F), K.then(t.G),
                     {a: t.at(K.ob(a)) for a in K.source.objects})


class Adjunction:
    """left -| right with unit and counit, validated by check_adjunction."""

    def __init__(self, left, right, unit, counit):
        self.left = left
        self.right = right
        self.unit = unit
        self.counit = counit

    def left_transpose(self, a, h):
        """Transpose of h: left(a) -> b to a -> right(b)."""
        A = self.left.source
        return A.comp[(self.right(h), self.unit.at(a))]

    def right_transpose(self, b, k):
        """Transpose of k: a -> right(b) to left(a) -> b."""
        B = self.left.target
        return B.comp[(self.counit.at(b), self.left(k))]


def check_adjunction(left, right, unit_comp, counit_comp):
    """Validate an adjunction left -| right from raw unit/counit components.

    Checks naturality of both transformations and the two triangle
    identities, then cross-checks that transposition is a bijection on
    every hom-set.
    """
    A, B = left.source, left.target
    if right.source != B or right.target != A:
        raise InputError("adjunction: right must go back from %s to %s" % (B.name, A.name))
    unit = check_nat("unit", identity_functor(A), left.then(right), unit_comp)
    counit = check_nat("counit", right.then(left), identity_functor(B), counit_comp)
    for a in A.objects:
        if B.comp[(counit.at(left.ob(a)), left(unit.at(a)))] != B.id_of(left.ob(a)):
            raise InputError("adjunction: triangle (counit L)(L unit) fails at %s" % a)
    for b in B.objects:
        if A.comp[(right(counit.at(b)), unit.at(right.ob(b)))] != A.id_of(right.ob(b)):
            raise InputError("adjunction: triangle (R counit)(unit R) fails at %s" % b)
    adj = Adjunction(left, right, unit, counit)
    for a in A.objects:
        for b in B.objects:
            down = {h: adj.left_transpose(a, h) for h in B.hom(left.ob(a), b)}
            if sorted(down.values()) != list(A.hom(a, right.ob(b))):
                raise InputError("adjunction: transposition is not a bijection at (%s,%s)" % (a, b))
            for h, k in down.items():
                if adj.right_transpose(b, k) != h:
                    raise InputError("adjunction: transposes do not round-trip at %s" % h)
    return adj


def check_mates(adj1, adj2, H, K, xi, zeta):
    """Mate-pair condition for a square of adjunctions.

    adj1: F -| G on A, B; adj2: F' -| G' on A', B'; H: A -> A', K: B -> B',
    xi: F'.H => K.F, zeta: H.G => G'.K. Holds iff for every h: F(a) -> b the
    two transposes agree: zeta_b . H(G(h) . unit_a) equals
    G'(K(h) . xi_a) . unit'_{H(a)}.
    """
    A, B = adj1.left.source, adj1.left.target
    A2, B2 = adj2.left.source, adj2.left.target
    for a in A.objects:
        for b in B.objects:
            for h in B.hom(adj1.left.ob(a), b):
                lhs = A2.comp[(zeta.at(b), H(adj1.left_transpose(a, h)))]
                rhs_top = B2.comp[(K(h), xi.at(a))]
                rhs = A2.comp[(adj2.right(rhs_top), adj2.unit.at(H.ob(a)))]
                if lhs != rhs:
                    return False, "mate condition fails at %s" % h
    return True, None


def check_conjugates(adj1, adj2, sigma, tau):
    """Conjugate pair: mates along identity functors.

    sigma: adj2.left => adj1.left, tau: adj1.right => adj2.right.
    """
    A = adj1.left.source
    B = adj1.left.target
    return check_mates(adj1, adj2, identity_functor(A), identity_functor(B), sigma, tau)


def functor_properties(F):
    """Exhaustively decided predicates of a functor between finite categories."""
    C, D = F.source, F.target
    image_ob = set(F.on_obj.values())
    faithful = True
    full = True
    isofull = True
    for a in C.objects:
        for b in C.objects:
            seen = {}
            for f in C.hom(a, b):
                if F(f) in seen:
                    faithful = False
                seen[F(f)] = f
            for g in D.hom(F.ob(a), F.ob(b)):
                if g not in seen:
                    full = False
                    if D.is_iso(g):
                        isofull = False
    ess_surj = all(any(any(D.is_iso(m) for m in D.hom(x, e)) for x in image_ob)
                   for e in D.objects)
    inj_obj = len(image_ob) == len(C.objects)
    replete = True
    for m in D.isos():
        if D.dom(m) in image_ob:
            if not any(F(p) == m and C.is_iso(p) for p in C.morphisms):
                replete = False
                break
    reflects = all(C.is_iso(p) or not D.is_iso(F(p)) for p in C.morphisms)
    props = {
        "faithful": faithful,
        "full": full,
        "isofull": isofull,
        "essentially_surjective": ess_surj,
        "injective_on_objects": inj_obj,
        "replete": replete,
        "reflects_isos": reflects,
        "pseudomonic": isofull and faithful,
    }
    return props


class Subcategory:
    """A subcategory presented by its object and morphism id sets."""

    def __init__(self, cat, objects, morphisms):
        self.cat = cat
        self.objects = tuple(sorted(objects))
        self.morphisms = tuple(sorted(morphisms))

    def as_fincat(self, name):
        obset = set(self.objects)
        mset = set(self.morphisms)
        mor = {m: self.cat.mor[m] for m in mset}
        ident = {a: self.cat.ident[a] for a in obset}
        comp = {(g, f): h for (g, f), h in self.cat.comp.items()
                if g in mset and f in mset}
        for h in comp.values():
            if h not in mset:
                raise InputError("subcategory %s is not closed under composition" % name)
        return FinCat.build(name, obset, mor, ident, comp)

    def key(self):
        return (self.objects, self.morphisms)

    def __eq__(self, other):
        return isinstance(other, Subcategory) and self.key() == other.key()

    def __repr__(self):
        return "Subcategory(%d objects, %d morphisms)" % (len(self.objects), len(self.morphisms))


def _compose_closure(cat, morphisms):
    out = set(morphisms)
    frontier = True
    while frontier:
        frontier = False
        for g in list(out):
            for f in list(out):
                if cat.composable(g, f):
                    h = cat.comp[(g, f)]
                    if h not in out:
                        out.add(h)
                        frontier = True
    return out


def image_operators(F):
    """The four images of a functor: im, rim, fim, rfim.

    im: closure of the set-image under composition. rim: im extended by
    every iso out of an object isomorphic to an image object. fim: full on
    the image objects. rfim: full on all objects isomorphic to image
    objects. All four are returned as verified subcategories of the target.
    """
    D = F.target
    image_ob = set(F.on_obj.values())
    base_mor = set(F.on_mor.values()) | {D.id_of(x) for x in image_ob}
    im_mor = _compose_closure(D, base_mor)
    im = Subcategory(D, image_ob, im_mor)

    iso_ob = set()
    for e in D.objects:
        for x in image_ob:
            if any(D.is_iso(m) for m in D.hom(x, e)):
                iso_ob.add(e)
    rim_seed = set(im_mor)
    for m in D.isos():
        if D.dom(m) in iso_ob and D.cod(m) in iso_ob:
            rim_seed.add(m)
    rim = Subcategory(D, iso_ob, _compose_closure(D, rim_seed))

    fim_mor = {m for m in D.morphisms
               if D.dom(m) in image_ob and D.cod(m) in image_ob}
    fim = Subcategory(D, image_ob, fim_mor)

    rfim_mor = {m for m in D.morphisms
                if D.dom(m) in iso_ob and D.cod(m) in iso_ob}
    rfim = Subcategory(D, iso_ob, rfim_mor)
    return {"im": im, "rim": rim, "fim": fim, "rfim": rfim}


def is_replete_subcategory(sub):
    """Every target iso out of a subcategory object lies in the subcategory."""
    D = sub.cat
    obs = set(sub.objects)
    mors = set(sub.morphisms)
    for m in D.isos():
        if D.dom(m) in obs and m not in mors:
            return False
    return True


class Cone:
    """A chosen universal cone (or cocone)."""

    def __init__(self, kind, apex, legs):
        self.kind = kind
        self.apex = apex
        self.legs = tuple(legs)

    def __repr__(self):
        return "Cone(%s: apex %s, legs %s)" % (self.kind, self.apex, self.legs)

    def __eq__(self, other):
        return (isinstance(other, Cone) and self.kind == other.kind
                and self.apex == other.apex and self.legs == other.legs)


def _unique(iterable):
    found = None
    count = 0
    for x in iterable:
        count += 1
        found = x
        if count > 1:
            return None
    return found if count == 1 else None


def find_universal(C, kind, data=(), budget=None):
    """Search for a chosen limit or colimit of the given shape.

    kind is one of terminal, initial, product, coproduct, pullback,
    pushout, equalizer, coequalizer; data lists the object or morphism
    identifiers of the diagram. Returns a Cone or None. The choice is
    deterministic: lexicographically least apex, then legs.
    """
    budget = budget or Budget()

    if kind in ("terminal", "initial"):
        op = kind == "initial"
        for t in C.objects:
            budget.spend()
            if all(len(C.hom(t, x) if op else C.hom(x, t)) == 1 for x in C.objects):
                return Cone(kind, t, ())
        return None

    if kind in ("product", "coproduct"):
        a, b = data
        op = kind == "coproduct"
        hom = (lambda x, y: C.hom(y, x)) if op else C.hom
        for p in C.objects:
            for p1 in hom(p, a):
                for p2 in hom(p, b):
                    budget.spend()
                    ok = True
                    for x in C.objects:
                        for f in hom(x, a):
                            for g in hom(x, b):
                                pairing = (lambda m: (C.comp[(m, p1) if op else (p1, m)],
                                                      C.comp[(m, p2) if op else (p2, m)]))
                                if _unique(m for m in hom(x, p) if pairing(m) == (f, g)) is None:
                                    ok = False
                                    break
                            if not ok:
                                break
                        if not ok:
                            break
                    if ok:
                        return Cone(kind, p, (p1, p2))
        return None

    if kind in ("pullback", "pushout"):
        f, g = data
        op = kind == "pushout"
        D = C.opposite() if op else C
        a, b = D.dom(f), D.dom(g)
        if D.cod(f) != D.cod(g):
            raise InputError("%s of non-cospan (%s,%s)" % (kind, f, g))
        for p in D.objects:
            for p1 in D.hom(p, a):
                if D.comp.get((f, p1)) is None:
                    continue
                for p2 in D.hom(p, b):
                    budget.spend()
                    if D.comp[(f, p1)] != D.comp[(g, p2)]:
                        continue
                    ok = True
                    for x in D.objects:
                        for u in D.hom(x, a):
                            for v in D.hom(x, b):
                                if D.comp[(f, u)] != D.comp[(g, v)]:
                                    continue
                                if _unique(m for m in D.hom(x, p)
                                           if D.comp[(p1, m)] == u and D.comp[(p2, m)] == v) is None:
                                    ok = False
                                    break
                            if not ok:
                                break
                        if not ok:
                            break
                    if ok:
                        return Cone(kind, p, (p1, p2))
        return None

    if kind in ("equalizer", "coequalizer"):
        f, g = data
        op = kind == "coequalizer"
        D = C.opposite() if op else C
        if (D.dom(f), D.cod(f)) != (D.dom(g), D.cod(g)):
            raise InputError("%s of non-parallel pair (%s,%s)" % (kind, f, g))
        a = D.dom(f)
        for e in D.objects:
            for leg in D.hom(e, a):
                budget.spend()
                if D.comp[(f, leg)] != D.comp[(g, leg)]:
                    continue
                ok = True
                for x in D.objects:
                    for u in D.hom(x, a):
                        if D.comp[(f, u)] != D.comp[(g, u)]:
                            continue
                        if _unique(m for m in D.hom(x, e) if D.comp[(leg, m)] == u) is None:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    return Cone(kind, e, (leg,))
        return None

    raise InputError("unknown universal kind %s" % kind)


def iso_search(C, D, budget=None, over=None, fixed_obj=None):
    """Search for an isomorphism of categories C -> D by backtracking.

    over, when given, is a pair (P, Q) of functors P: C -> B, Q: D -> B and
    the isomorphism must satisfy Q . iso = P. fixed_obj pins part of the
    object bijection. Returns a Functor or None; raises
    SearchBudgetExceeded if the candidate budget runs out.
    """
    budget = budget or Budget()
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None

    def obj_sig(cat, a):
        return (len(cat.hom(a, a)),
                tuple(sorted(len(cat.hom(a, b)) for b in cat.objects)),
                tuple(sorted(len(cat.hom(b, a)) for b in cat.objects)))

    csig = {a: obj_sig(C, a) for a in C.objects}
    dsig = {a: obj_sig(D, a) for a in D.objects}

    def extend_mor(omap):
        mmap = {}
        for a in C.objects:
            mmap[C.id_of(a)] = D.id_of(omap[a])
        pending = [m for m in C.morphisms if m not in mmap]

        def backtrack(i, mmap):
            if i == len(pending):
                for (g, f), h in C.comp.items():
                    if D.comp[(mmap[g], mmap[f])] != mmap[h]:
                        return None
                return dict(mmap)
            m = pending[i]
            a, b = C.dom(m), C.cod(m)
            used = set(mmap.values())
            for n in D.hom(omap[a], omap[b]):
                budget.spend()
                if n in used:
                    continue
                if over is not None and over[1](n) != over[0](m):
                    continue
                mmap[m] = n
                ok = True
                for (g, f), h in C.comp.items():
                    if g in mmap and f in mmap and h in mmap:
                        if D.comp[(mmap[g], mmap[f])] != mmap[h]:
                            ok = False
                            break
                if ok:
                    out = backtrack(i + 1, mmap)
                    if out is not None:
                        return out
                del mmap[m]
            return None

        return backtrack(0, mmap)

    objs = list(C.objects)

    def assign(i, omap, used):
        if i == len(objs):
            if over is not None:
                if any(over[1].ob(omap[a]) != over[0].ob(a) for a in objs):
                    return None
            mmap = extend_mor(omap)
            if mmap is not None:
                return Functor("iso_%s_%s" % (C.name, D.name), C, D, dict(omap), mmap)
            return None
        a = objs[i]
        if fixed_obj and a in fixed_obj:
            candidates = [fixed_obj[a]]
        else:
            candidates = [x for x in D.objects if x not in used and dsig[x] == csig[a]]
        for x in candidates:
            budget.spend()
            if x in used:
                continue
            if over is not None and over[1].ob(x) != over[0].ob(a):
                continue
            omap[a] = x
            out = assign(i + 1, omap, used | {x})
            if out is not None:
                return out
            del omap[a]
        return None

    return assign(0, {}, set())
