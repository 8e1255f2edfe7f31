"""Monoids and modules in finite monoidal categories, and their fibred forms.

A monoidal structure is an explicit tensor table on a finite category with
chosen coherence isomorphisms; every axiom (bifunctoriality, naturality,
pentagon, triangle, hexagons when symmetric) is decided by enumeration.
On top of it this module enumerates monoid and module objects, assembles
the split fibration of modules over monoids through restriction of
scalars, computes tensor products over a monoid as coequalizers, extends
scalars along a monoid morphism and certifies the induced adjunction,
transports all of it along lax monoidal functors, and packages monoidal
indexed categories into fibrations of monoids and the two-level
construction of modules over monoids over the base.
"""

from itertools import product as iproduct

from .core import (Budget, FinCat, Functor, InputError, NatTransf,
                   check_adjunction, find_universal, identity_functor,
                   pair_id)
from .fib import is_opcartesian
from .indexed import (IndexedCat, grothendieck, strict_indexed,
                      two_level_grothendieck, validate_indexed)


class MonCat:
    """A monoidal structure on a finite category.

    tensor_obj maps object pairs to objects and tensor_mor maps morphism
    pairs to morphisms; unit is the unit object. alpha, lam and rho hold
    the chosen associator and unitor components, sigma (optional) the
    symmetry. Instances are assumed validated (use validate_monoidal).
    """

    def __init__(self, name, cat, tensor_obj, tensor_mor, unit,
                 alpha, lam, rho, sigma=None):
        self.name = name
        self.cat = cat
        self.tensor_obj = dict(tensor_obj)
        self.tensor_mor = dict(tensor_mor)
        self.unit = unit
        self.alpha = dict(alpha)
        self.lam = dict(lam)
        self.rho = dict(rho)
        self.sigma = None if sigma is None else dict(sigma)

    def ten(self, a, b):
        return self.tensor_obj[(a, b)]

    def tmor(self, f, g):
        return self.tensor_mor[(f, g)]

    def __repr__(self):
        return "MonCat(%s on %s)" % (self.name, self.cat.name)


def validate_monoidal(V):
    """Check the full coherence of a monoidal structure by enumeration.

    Verifies tensor totality and bifunctoriality, that the associator and
    unitors are natural isomorphisms with the right endpoints, the
    pentagon and the triangle, and, when a symmetry is present, its
    naturality, self-inversity and both hexagons. Raises InputError
    naming the failing cell; returns V.
    """
    C = V.cat
    obs = set(C.objects)
    if V.unit not in obs:
        raise InputError("%s: unit object %s unknown" % (V.name, V.unit))
    for a, b in iproduct(C.objects, C.objects):
        t = V.tensor_obj.get((a, b))
        if t is None or t not in obs:
            raise InputError("%s: missing tensor object at (%s,%s)" % (V.name, a, b))
    for f, g in iproduct(C.morphisms, C.morphisms):
        t = V.tensor_mor.get((f, g))
        if t is None or t not in C.mor:
            raise InputError("%s: missing tensor morphism at (%s,%s)" % (V.name, f, g))
        want = (V.ten(C.dom(f), C.dom(g)), V.ten(C.cod(f), C.cod(g)))
        if C.mor[t] != want:
            raise InputError("%s: tensor of (%s,%s) has wrong endpoints" % (V.name, f, g))
    for a, b in iproduct(C.objects, C.objects):
        if V.tmor(C.id_of(a), C.id_of(b)) != C.id_of(V.ten(a, b)):
            raise InputError("%s: tensor of identities at (%s,%s) is not an identity"
                             % (V.name, a, b))
    for (g1, f1), h1 in C.comp.items():
        for (g2, f2), h2 in C.comp.items():
            if V.tmor(h1, h2) != C.comp[(V.tmor(g1, g2), V.tmor(f1, f2))]:
                raise InputError("%s: tensor breaks interchange at (%s,%s);(%s,%s)"
                                 % (V.name, g1, g2, f1, f2))
    for a in C.objects:
        l = V.lam.get(a)
        if l is None or l not in C.mor or C.mor[l] != (V.ten(V.unit, a), a):
            raise InputError("%s: left unitor at %s missing or with wrong endpoints"
                             % (V.name, a))
        if not C.is_iso(l):
            raise InputError("%s: left unitor at %s is not invertible" % (V.name, a))
        r = V.rho.get(a)
        if r is None or r not in C.mor or C.mor[r] != (V.ten(a, V.unit), a):
            raise InputError("%s: right unitor at %s missing or with wrong endpoints"
                             % (V.name, a))
        if not C.is_iso(r):
            raise InputError("%s: right unitor at %s is not invertible" % (V.name, a))
    uid = C.id_of(V.unit)
    for f in C.morphisms:
        a, b = C.dom(f), C.cod(f)
        if C.comp[(f, V.lam[a])] != C.comp[(V.lam[b], V.tmor(uid, f))]:
            raise InputError("%s: left unitor not natural at %s" % (V.name, f))
        if C.comp[(f, V.rho[a])] != C.comp[(V.rho[b], V.tmor(f, uid))]:
            raise InputError("%s: right unitor not natural at %s" % (V.name, f))
    for a, b, c in iproduct(C.objects, C.objects, C.objects):
        m = V.alpha.get((a, b, c))
        want = (V.ten(V.ten(a, b), c), V.ten(a, V.ten(b, c)))
        if m is None or m not in C.mor or C.mor[m] != want:
            raise InputError("%s: associator at (%s,%s,%s) missing or with wrong "
                             "endpoints" % (V.name, a, b, c))
        if not C.is_iso(m):
            raise InputError("%s: associator at (%s,%s,%s) is not invertible"
                             % (V.name, a, b, c))
    for f, g, h in iproduct(C.morphisms, C.morphisms, C.morphisms):
        src = (C.dom(f), C.dom(g), C.dom(h))
        tgt = (C.cod(f), C.cod(g), C.cod(h))
        if C.comp[(V.tmor(f, V.tmor(g, h)), V.alpha[src])] != \
                C.comp[(V.alpha[tgt], V.tmor(V.tmor(f, g), h))]:
            raise InputError("%s: associator not natural at (%s,%s,%s)"
                             % (V.name, f, g, h))
    for a, b, c, d in iproduct(C.objects, C.objects, C.objects, C.objects):
        left = C.comp[(V.alpha[(a, b, V.ten(c, d))], V.alpha[(V.ten(a, b), c, d)])]
        right = C.compose_chain(V.tmor(C.id_of(a), V.alpha[(b, c, d)]),
                                V.alpha[(a, V.ten(b, c), d)],
                                V.tmor(V.alpha[(a, b, c)], C.id_of(d)))
        if left != right:
            raise InputError("%s: pentagon fails at (%s,%s,%s,%s)" % (V.name, a, b, c, d))
    for a, b in iproduct(C.objects, C.objects):
        if C.comp[(V.tmor(C.id_of(a), V.lam[b]), V.alpha[(a, V.unit, b)])] != \
                V.tmor(V.rho[a], C.id_of(b)):
            raise InputError("%s: triangle fails at (%s,%s)" % (V.name, a, b))
    if V.sigma is not None:
        for a, b in iproduct(C.objects, C.objects):
            s = V.sigma.get((a, b))
            if s is None or s not in C.mor or C.mor[s] != (V.ten(a, b), V.ten(b, a)):
                raise InputError("%s: symmetry at (%s,%s) missing or with wrong "
                                 "endpoints" % (V.name, a, b))
        for a, b in iproduct(C.objects, C.objects):
            if C.comp[(V.sigma[(b, a)], V.sigma[(a, b)])] != C.id_of(V.ten(a, b)):
                raise InputError("%s: symmetry is not self-inverse at (%s,%s)"
                                 % (V.name, a, b))
        for f, g in iproduct(C.morphisms, C.morphisms):
            if C.comp[(V.sigma[(C.cod(f), C.cod(g))], V.tmor(f, g))] != \
                    C.comp[(V.tmor(g, f), V.sigma[(C.dom(f), C.dom(g))])]:
                raise InputError("%s: symmetry not natural at (%s,%s)" % (V.name, f, g))
        for a, b, c in iproduct(C.objects, C.objects, C.objects):
            left = C.compose_chain(V.alpha[(b, c, a)], V.sigma[(a, V.ten(b, c))],
                                   V.alpha[(a, b, c)])
            right = C.compose_chain(V.tmor(C.id_of(b), V.sigma[(a, c)]),
                                    V.alpha[(b, a, c)],
                                    V.tmor(V.sigma[(a, b)], C.id_of(c)))
            if left != right:
                raise InputError("%s: hexagon fails at (%s,%s,%s)" % (V.name, a, b, c))
            left = C.compose_chain(C.inverse(V.alpha[(c, a, b)]),
                                   V.sigma[(V.ten(a, b), c)],
                                   C.inverse(V.alpha[(a, b, c)]))
            right = C.compose_chain(V.tmor(V.sigma[(a, c)], C.id_of(b)),
                                    C.inverse(V.alpha[(a, c, b)]),
                                    V.tmor(C.id_of(a), V.sigma[(b, c)]))
            if left != right:
                raise InputError("%s: inverse hexagon fails at (%s,%s,%s)"
                                 % (V.name, a, b, c))
    return V


def _smor(f, src, tgt):
    # a structure morphism: the same underlying arrow may connect several
    # different structures on the same carriers
    return "%s:%s>%s" % (f, src, tgt)


class MonoidObj:
    """A monoid (carrier R, mu: R(x)R -> R, eta: I -> R)."""

    def __init__(self, carrier, mu, eta, commutative=None):
        self.carrier = carrier
        self.mu = mu
        self.eta = eta
        self.commutative = commutative

    def key(self):
        return (self.carrier, self.mu, self.eta)

    def __eq__(self, other):
        return isinstance(other, MonoidObj) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "MonoidObj%s" % (self.key(),)


def mon_id(mon):
    """Identifier of a monoid as an object of the category of monoids."""
    return "(%s;%s;%s)" % mon.key()


def _monoid_law(V, R, mu, eta):
    C = V.cat
    i = C.id_of(R)
    if C.comp[(mu, V.tmor(mu, i))] != \
            C.compose_chain(mu, V.tmor(i, mu), V.alpha[(R, R, R)]):
        return "associativity"
    if C.comp[(mu, V.tmor(eta, i))] != V.lam[R]:
        return "left unit"
    if C.comp[(mu, V.tmor(i, eta))] != V.rho[R]:
        return "right unit"
    return None


def _commutative(V, R, mu):
    if V.sigma is None:
        return None
    return V.cat.comp[(mu, V.sigma[(R, R)])] == mu


def validate_monoid(V, carrier, mu, eta):
    """Check endpoints and the monoid laws; returns the object with its
    commutativity flag when V is symmetric."""
    C = V.cat
    if C.mor.get(mu) != (V.ten(carrier, carrier), carrier):
        raise InputError("%s: multiplication %s has wrong endpoints" % (V.name, mu))
    if C.mor.get(eta) != (V.unit, carrier):
        raise InputError("%s: unit %s has wrong endpoints" % (V.name, eta))
    bad = _monoid_law(V, carrier, mu, eta)
    if bad is not None:
        raise InputError("%s: monoid (%s,%s,%s) fails %s"
                         % (V.name, carrier, mu, eta, bad))
    return MonoidObj(carrier, mu, eta, _commutative(V, carrier, mu))


def monoids(V):
    """All monoids of V, lexicographic in (carrier, mu, eta)."""
    C = V.cat
    out = []
    for R in C.objects:
        for mu in C.hom(V.ten(R, R), R):
            for eta in C.hom(V.unit, R):
                if _monoid_law(V, R, mu, eta) is None:
                    out.append(MonoidObj(R, mu, eta, _commutative(V, R, mu)))
    return out


def is_monoid_morphism(V, f, src, tgt):
    """f respects multiplication and unit between the two monoid structures."""
    C = V.cat
    if C.mor.get(f) != (src.carrier, tgt.carrier):
        return False
    if C.comp[(tgt.mu, V.tmor(f, f))] != C.comp[(f, src.mu)]:
        return False
    return C.comp[(f, src.eta)] == tgt.eta


def mon_category(V, commutative=False, name=None):
    """The category of monoids of V (of commutative ones when requested).

    Objects are monoid identifiers; morphisms are underlying arrows tagged
    with source and target structure. The result carries mon_obj and
    mon_mor lookup tables.
    """
    if commutative and V.sigma is None:
        raise InputError("%s: commutative monoids need a symmetry" % V.name)
    C = V.cat
    mons = [m for m in monoids(V) if not commutative or m.commutative]
    objs = {mon_id(m): m for m in mons}
    mor = {}
    parts = {}
    for m1 in mons:
        for m2 in mons:
            for f in C.hom(m1.carrier, m2.carrier):
                if not is_monoid_morphism(V, f, m1, m2):
                    continue
                mid = _smor(f, mon_id(m1), mon_id(m2))
                mor[mid] = (mon_id(m1), mon_id(m2))
                parts[mid] = (f, mon_id(m1), mon_id(m2))
    ident = {mon_id(m): _smor(C.id_of(m.carrier), mon_id(m), mon_id(m))
             for m in mons}
    comp = {}
    for n2, (g, s2, t2) in parts.items():
        for n1, (f, s1, t1) in parts.items():
            if t1 == s2:
                comp[(n2, n1)] = _smor(C.comp[(g, f)], s1, t2)
    cat = FinCat.build(name or ("Comm(%s)" if commutative else "Mon(%s)") % V.name,
                       objs, mor, ident, comp)
    cat.mon_obj = objs
    cat.mon_mor = parts
    return cat


def comm_category(V, name=None):
    return mon_category(V, commutative=True, name=name)


class ModuleObj:
    """A right module (M, kappa: M(x)R -> M) over a monoid."""

    def __init__(self, monoid, carrier, kappa):
        self.monoid = monoid
        self.carrier = carrier
        self.kappa = kappa

    def key(self):
        return (mon_id(self.monoid), self.carrier, self.kappa)

    def __eq__(self, other):
        return isinstance(other, ModuleObj) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "ModuleObj%s" % (self.key(),)


def mod_id(mod):
    """Identifier of a module as an object of the fibre over its monoid."""
    return pair_id(mod.carrier, mod.kappa)


def _module_law(V, mon, M, kappa):
    C = V.cat
    R = mon.carrier
    if C.comp[(kappa, V.tmor(kappa, C.id_of(R)))] != \
            C.compose_chain(kappa, V.tmor(C.id_of(M), mon.mu), V.alpha[(M, R, R)]):
        return "action associativity"
    if C.comp[(kappa, V.tmor(C.id_of(M), mon.eta))] != V.rho[M]:
        return "action unit"
    return None


def validate_module(V, mon, carrier, kappa):
    C = V.cat
    if C.mor.get(kappa) != (V.ten(carrier, mon.carrier), carrier):
        raise InputError("%s: action %s has wrong endpoints" % (V.name, kappa))
    bad = _module_law(V, mon, carrier, kappa)
    if bad is not None:
        raise InputError("%s: module (%s,%s) over %s fails %s"
                         % (V.name, carrier, kappa, mon_id(mon), bad))
    return ModuleObj(mon, carrier, kappa)


def modules(V, mon):
    """All right modules over mon, lexicographic in (carrier, action)."""
    C = V.cat
    out = []
    for M in C.objects:
        for kappa in C.hom(V.ten(M, mon.carrier), M):
            if _module_law(V, mon, M, kappa) is None:
                out.append(ModuleObj(mon, M, kappa))
    return out


def is_module_morphism(V, f, src, tgt):
    """f intertwines the two right actions of the common monoid."""
    C = V.cat
    if C.mor.get(f) != (src.carrier, tgt.carrier):
        return False
    r = C.id_of(src.monoid.carrier)
    return C.comp[(tgt.kappa, V.tmor(f, r))] == C.comp[(f, src.kappa)]


def mod_category(V, mon, name=None):
    """The fibre category of right modules over a fixed monoid.

    Carries mod_obj and mod_mor lookup tables analogous to mon_category.
    """
    C = V.cat
    mods = modules(V, mon)
    objs = {mod_id(m): m for m in mods}
    mor = {}
    parts = {}
    for m1 in mods:
        for m2 in mods:
            for f in C.hom(m1.carrier, m2.carrier):
                if not is_module_morphism(V, f, m1, m2):
                    continue
                mid = _smor(f, mod_id(m1), mod_id(m2))
                mor[mid] = (mod_id(m1), mod_id(m2))
                parts[mid] = (f, mod_id(m1), mod_id(m2))
    ident = {mod_id(m): _smor(C.id_of(m.carrier), mod_id(m), mod_id(m))
             for m in mods}
    comp = {}
    for n2, (g, s2, t2) in parts.items():
        for n1, (f, s1, t1) in parts.items():
            if t1 == s2:
                comp[(n2, n1)] = _smor(C.comp[(g, f)], s1, t2)
    cat = FinCat.build(name or "Mod%s(%s)" % (mon_id(mon), V.name),
                       objs, mor, ident, comp)
    cat.mod_obj = objs
    cat.mod_mor = parts
    return cat


class LeftModuleObj:
    """A left module (N, action: R(x)N -> N) over a monoid."""

    def __init__(self, monoid, carrier, action):
        self.monoid = monoid
        self.carrier = carrier
        self.action = action

    def key(self):
        return (mon_id(self.monoid), self.carrier, self.action)

    def __eq__(self, other):
        return isinstance(other, LeftModuleObj) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "LeftModuleObj%s" % (self.key(),)


def _left_module_law(V, mon, N, action):
    C = V.cat
    R = mon.carrier
    if C.comp[(action, V.tmor(mon.mu, C.id_of(N)))] != \
            C.compose_chain(action, V.tmor(C.id_of(R), action), V.alpha[(R, R, N)]):
        return "action associativity"
    if C.comp[(action, V.tmor(mon.eta, C.id_of(N)))] != V.lam[N]:
        return "action unit"
    return None


def validate_left_module(V, mon, carrier, action):
    C = V.cat
    if C.mor.get(action) != (V.ten(mon.carrier, carrier), carrier):
        raise InputError("%s: left action %s has wrong endpoints" % (V.name, action))
    bad = _left_module_law(V, mon, carrier, action)
    if bad is not None:
        raise InputError("%s: left module (%s,%s) over %s fails %s"
                         % (V.name, carrier, action, mon_id(mon), bad))
    return LeftModuleObj(mon, carrier, action)


class BimoduleObj:
    """A left module and a right module on one carrier whose actions
    commute through the middle associativity square."""

    def __init__(self, left_monoid, right_monoid, carrier, left_action,
                 right_action):
        self.left_monoid = left_monoid
        self.right_monoid = right_monoid
        self.carrier = carrier
        self.left_action = left_action
        self.right_action = right_action

    def key(self):
        return (mon_id(self.left_monoid), mon_id(self.right_monoid),
                self.carrier, self.left_action, self.right_action)

    def __eq__(self, other):
        return isinstance(other, BimoduleObj) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "BimoduleObj%s" % (self.key(),)


def validate_bimodule(V, bim):
    C = V.cat
    validate_left_module(V, bim.left_monoid, bim.carrier, bim.left_action)
    validate_module(V, bim.right_monoid, bim.carrier, bim.right_action)
    R = bim.left_monoid.carrier
    S = bim.right_monoid.carrier
    N = bim.carrier
    if C.comp[(bim.right_action, V.tmor(bim.left_action, C.id_of(S)))] != \
            C.compose_chain(bim.left_action, V.tmor(C.id_of(R), bim.right_action),
                            V.alpha[(R, N, S)]):
        raise InputError("%s: bimodule %s fails middle associativity"
                         % (V.name, bim.carrier))
    return bim


def restriction_functor(V, f, src, tgt, fib_src, fib_tgt, name=None):
    """Restriction of scalars along the monoid morphism f: src -> tgt.

    Sends a module over tgt to its carrier acted through f, and keeps the
    underlying arrow of every morphism; the assignment is strictly
    functorial, which is what makes the module fibration split.
    """
    C = V.cat
    on_obj = {}
    for nid, n in fib_tgt.mod_obj.items():
        k = C.comp[(n.kappa, V.tmor(C.id_of(n.carrier), f))]
        on_obj[nid] = pair_id(n.carrier, k)
    on_mor = {}
    for mid, (phi, s, t) in fib_tgt.mod_mor.items():
        on_mor[mid] = _smor(phi, on_obj[s], on_obj[t])
    return Functor.build(name or "%s#" % _smor(f, mon_id(src), mon_id(tgt)),
                         fib_tgt, fib_src, on_obj, on_mor)


def mod_fibration(V, name=None):
    """The split fibration of modules over monoids of V.

    The base is the category of monoids, the fibre over a monoid is its
    module category, and the inverse image along a monoid morphism is
    restriction of scalars. Restriction is strictly functorial, so the
    construction goes through the strict indexed category; the canonical
    cleavage lifts f at a module to (f, identity on the carrier).
    """
    base = mon_category(V)
    fibres = {mid: mod_category(V, m) for mid, m in base.mon_obj.items()}
    inv = {}
    for u, (f, s, t) in base.mon_mor.items():
        inv[u] = restriction_functor(V, f, base.mon_obj[s], base.mon_obj[t],
                                     fibres[s], fibres[t])
    ix = strict_indexed("ModIx(%s)" % V.name, base, fibres, inv)
    validate_indexed(ix)
    P = grothendieck(ix, name or "Mod(%s)" % V.name)
    P.value = V
    P.mon_cat = base
    P.mod_fibres = fibres
    P.indexed = ix
    return P


def _left_parts(left):
    if isinstance(left, BimoduleObj):
        return left.left_monoid, left.carrier, left.left_action
    return left.monoid, left.carrier, left.action


def action_coequalizer_pair(V, mod, left):
    """The parallel pair coequalized by the tensor over the monoid: act on
    the right factor of M, against act on the left factor of N through the
    associator."""
    C = V.cat
    lmon, N, lact = _left_parts(left)
    if lmon.key() != mod.monoid.key():
        raise InputError("%s: tensor over different monoids %s and %s"
                         % (V.name, mon_id(mod.monoid), mon_id(lmon)))
    M = mod.carrier
    R = mod.monoid.carrier
    u1 = V.tmor(mod.kappa, C.id_of(N))
    u2 = C.comp[(V.tmor(C.id_of(M), lact), V.alpha[(M, R, N)])]
    return u1, u2


def reflexive_section(V, mod, left):
    """The common section of the action pair, built from the monoid unit."""
    C = V.cat
    _, N, _ = _left_parts(left)
    M = mod.carrier
    ins = C.comp[(V.tmor(C.id_of(M), mod.monoid.eta), C.inverse(V.rho[M]))]
    return V.tmor(ins, C.id_of(N))


def _cofactors(C, q, t):
    return [w for w in C.hom(C.cod(q), C.cod(t)) if C.comp[(w, q)] == t]


def coequalizer_preserved_by(V, q, u1, u2, s, budget=None):
    """Decide whether q (x) 1_s still coequalizes the pair tensored with s
    universally. Returns None when it does, else a witness description."""
    budget = budget or Budget()
    C = V.cat
    i = C.id_of(s)
    q1 = V.tmor(q, i)
    v1, v2 = V.tmor(u1, i), V.tmor(u2, i)
    if C.comp[(q1, v1)] != C.comp[(q1, v2)]:
        return "fork broken at %s" % q1
    for x in C.objects:
        for t in C.hom(C.dom(q1), x):
            budget.spend()
            if C.comp[(t, v1)] != C.comp[(t, v2)]:
                continue
            n = len(_cofactors(C, q1, t))
            if n != 1:
                return "%d factorizations of %s through %s" % (n, t, q1)
    return None


def tensor_over_monoid(V, mod, left, budget=None):
    """Tensor a right module with a left module (or bimodule) over their
    common monoid: the coequalizer of the action pair.

    Returns (object, coequalizer arrow, induced right module or None).
    When left is a bimodule, the right action on the tensor is the unique
    arrow compatible with the coequalizer; this needs tensoring with the
    right carrier to preserve the coequalizer, which is checked locally.
    """
    budget = budget or Budget()
    C = V.cat
    u1, u2 = action_coequalizer_pair(V, mod, left)
    cone = find_universal(C, "coequalizer", (u1, u2), budget)
    if cone is None:
        raise InputError("%s: required coequalizer absent for (%s,%s)"
                         % (V.name, u1, u2))
    q = cone.legs[0]
    if not isinstance(left, BimoduleObj):
        return cone.apex, q, None
    S = left.right_monoid
    sc = S.carrier
    bad = coequalizer_preserved_by(V, q, u1, u2, sc, budget)
    if bad is not None:
        raise InputError("%s: right tensor fails to preserve the coequalizer: %s"
                         % (V.name, bad))
    M, N = mod.carrier, left.carrier
    t = C.compose_chain(q, V.tmor(C.id_of(M), left.right_action),
                        V.alpha[(M, N, sc)])
    ws = _cofactors(C, V.tmor(q, C.id_of(sc)), t)
    if len(ws) != 1:
        raise InputError("%s: induced action through %s not unique (%d found)"
                         % (V.name, q, len(ws)))
    induced = validate_module(V, S, cone.apex, ws[0])
    return cone.apex, q, induced


def scalars_bimodule(V, f, src, tgt):
    """The target of a monoid morphism as a bimodule: left action through
    f, right action by multiplication."""
    C = V.cat
    if not is_monoid_morphism(V, f, src, tgt):
        raise InputError("%s: %s is not a monoid morphism %s -> %s"
                         % (V.name, f, mon_id(src), mon_id(tgt)))
    s = tgt.carrier
    lact = C.comp[(tgt.mu, V.tmor(f, C.id_of(s)))]
    return validate_bimodule(V, BimoduleObj(src, tgt, s, lact, tgt.mu))


def extend_scalars(V, f, src, tgt, mod, budget=None):
    """Extension of scalars along f, applied to one right module over src.

    Tensors with the target-as-bimodule and returns (induced module over
    tgt, unit arrow from the original carrier, coequalizer arrow).
    """
    budget = budget or Budget()
    C = V.cat
    bim = scalars_bimodule(V, f, src, tgt)
    apex, q, induced = tensor_over_monoid(V, mod, bim, budget)
    M = mod.carrier
    eta = C.compose_chain(q, V.tmor(C.id_of(M), tgt.eta), C.inverse(V.rho[M]))
    return induced, eta, q


def extension_functor(V, f, src, tgt, fib_src, fib_tgt, budget=None, name=None):
    """Extension of scalars as a functor between the fibre categories.

    Also returns the per-object unit arrows and coequalizer arrows, which
    the adjunction certificate is assembled from.
    """
    budget = budget or Budget()
    C = V.cat
    on_obj = {}
    units = {}
    coeqs = {}
    for xid, m in fib_src.mod_obj.items():
        ind, eta, q = extend_scalars(V, f, src, tgt, m, budget)
        on_obj[xid] = mod_id(ind)
        units[xid] = eta
        coeqs[xid] = q
    on_mor = {}
    for mid, (phi, s, t) in fib_src.mod_mor.items():
        want = C.comp[(coeqs[t], V.tmor(phi, C.id_of(tgt.carrier)))]
        ws = _cofactors(C, coeqs[s], want)
        if len(ws) != 1:
            raise InputError("%s: extension of %s not unique (%d found)"
                             % (V.name, mid, len(ws)))
        on_mor[mid] = _smor(ws[0], on_obj[s], on_obj[t])
    F = Functor.build(name or "%s!" % _smor(f, mon_id(src), mon_id(tgt)),
                      fib_src, fib_tgt, on_obj, on_mor)
    return F, units, coeqs


def adjunction_check(V, f, src, tgt, budget=None):
    """Certify extension of scalars left adjoint to restriction along f.

    The unit at a module is the tensor insertion, the counit at a module
    over tgt factors its action through the coequalizer; naturality, both
    triangles and the hom bijections are then validated.
    """
    budget = budget or Budget()
    C = V.cat
    fib_src = mod_category(V, src)
    fib_tgt = mod_category(V, tgt)
    ext, units, coeqs = extension_functor(V, f, src, tgt, fib_src, fib_tgt, budget)
    res = restriction_functor(V, f, src, tgt, fib_src, fib_tgt)
    unit_comp = {}
    for xid in fib_src.objects:
        c = _smor(units[xid], xid, res.ob(ext.ob(xid)))
        if c not in fib_src.mor:
            raise InputError("%s: unit at %s is not a module morphism" % (V.name, xid))
        unit_comp[xid] = c
    counit_comp = {}
    for yid, n in fib_tgt.mod_obj.items():
        rid = res.ob(yid)
        ws = _cofactors(C, coeqs[rid], n.kappa)
        if len(ws) != 1:
            raise InputError("%s: counit at %s not unique (%d found)"
                             % (V.name, yid, len(ws)))
        c = _smor(ws[0], ext.ob(rid), yid)
        if c not in fib_tgt.mor:
            raise InputError("%s: counit at %s is not a module morphism" % (V.name, yid))
        counit_comp[yid] = c
    return check_adjunction(ext, res, unit_comp, counit_comp)


def extension_opcartesian(V, P, f, src, tgt, mod, budget=None):
    """Locate the unit arrow over f in the total category of the module
    fibration P and decide whether it is opCartesian there."""
    budget = budget or Budget()
    C = V.cat
    ind, eta, _ = extend_scalars(V, f, src, tgt, mod, budget)
    u = _smor(f, mon_id(src), mon_id(tgt))
    rest = C.comp[(ind.kappa, V.tmor(C.id_of(ind.carrier), f))]
    h = _smor(eta, mod_id(mod), pair_id(ind.carrier, rest))
    want = (u, h, mod_id(ind))
    mid = None
    for m, p in P.pair_mor.items():
        if p == want:
            mid = m
            break
    if mid is None:
        raise InputError("%s: unit of %s at %s does not appear in %s"
                         % (V.name, u, mod_id(mod), P.name))
    return mid, is_opcartesian(P.functor, mid)


def check_monoidal_functor(F, phi, psi, V, W):
    """Validate (F, phi, psi): V -> W as a lax monoidal functor.

    phi maps object pairs to structure components F(a)(x)F(b) -> F(a(x)b)
    and psi is the unit component. Checks naturality of phi and the
    associativity and unit coherence, raising InputError on the failing
    cell. Returns flags {monoidal, strong, strict, symmetric}; symmetric
    is None when either side lacks a symmetry.
    """
    C, D = V.cat, W.cat
    if F.source != C or F.target != D:
        raise InputError("%s: endpoints do not match the monoidal structures" % F.name)
    for a, b in iproduct(C.objects, C.objects):
        m = phi.get((a, b))
        want = (W.ten(F.ob(a), F.ob(b)), F.ob(V.ten(a, b)))
        if m is None or m not in D.mor or D.mor[m] != want:
            raise InputError("%s: structure morphism at (%s,%s) missing or with "
                             "wrong endpoints" % (F.name, a, b))
    if psi not in D.mor or D.mor[psi] != (W.unit, F.ob(V.unit)):
        raise InputError("%s: unit structure morphism has wrong endpoints" % F.name)
    for f, g in iproduct(C.morphisms, C.morphisms):
        src = (C.dom(f), C.dom(g))
        tgt = (C.cod(f), C.cod(g))
        if D.comp[(F(V.tmor(f, g)), phi[src])] != \
                D.comp[(phi[tgt], W.tmor(F(f), F(g)))]:
            raise InputError("%s: structure morphism not natural at (%s,%s)"
                             % (F.name, f, g))
    for a, b, c in iproduct(C.objects, C.objects, C.objects):
        left = D.compose_chain(F(V.alpha[(a, b, c)]), phi[(V.ten(a, b), c)],
                               W.tmor(phi[(a, b)], D.id_of(F.ob(c))))
        right = D.compose_chain(phi[(a, V.ten(b, c))],
                                W.tmor(D.id_of(F.ob(a)), phi[(b, c)]),
                                W.alpha[(F.ob(a), F.ob(b), F.ob(c))])
        if left != right:
            raise InputError("%s: associativity coherence fails at (%s,%s,%s)"
                             % (F.name, a, b, c))
    for a in C.objects:
        if D.compose_chain(F(V.lam[a]), phi[(V.unit, a)],
                           W.tmor(psi, D.id_of(F.ob(a)))) != W.lam[F.ob(a)]:
            raise InputError("%s: left unit coherence fails at %s" % (F.name, a))
        if D.compose_chain(F(V.rho[a]), phi[(a, V.unit)],
                           W.tmor(D.id_of(F.ob(a)), psi)) != W.rho[F.ob(a)]:
            raise InputError("%s: right unit coherence fails at %s" % (F.name, a))
    strong = D.is_iso(psi) and all(D.is_iso(m) for m in phi.values())
    strict = D.is_identity(psi) and all(D.is_identity(m) for m in phi.values())
    symmetric = None
    if V.sigma is not None and W.sigma is not None:
        symmetric = all(
            D.comp[(F(V.sigma[(a, b)]), phi[(a, b)])] ==
            D.comp[(phi[(b, a)], W.sigma[(F.ob(a), F.ob(b))])]
            for a, b in iproduct(C.objects, C.objects))
    return {"monoidal": True, "strong": strong, "strict": strict,
            "symmetric": symmetric}


def induced_monoid(V, W, F, phi, psi, mon):
    """Image of a monoid under a lax monoidal functor; the laws are
    re-checked on the image, never assumed."""
    D = W.cat
    r = mon.carrier
    mu = D.comp[(F(mon.mu), phi[(r, r)])]
    eta = D.comp[(F(mon.eta), psi)]
    return validate_monoid(W, F.ob(r), mu, eta)


def induced_module(V, W, F, phi, mon2, mod):
    """Image of a module under a lax monoidal functor, over the already
    transported monoid mon2."""
    D = W.cat
    kap = D.comp[(F(mod.kappa), phi[(mod.carrier, mod.monoid.carrier)])]
    return validate_module(W, mon2, F.ob(mod.carrier), kap)


def mon_of_functor(V, W, F, phi, psi, mon_src=None, mon_tgt=None, name=None):
    """The functor between monoid categories induced by a lax monoidal
    functor: transported structures on objects, image arrows on morphisms."""
    mon_src = mon_src if mon_src is not None else mon_category(V)
    mon_tgt = mon_tgt if mon_tgt is not None else mon_category(W)
    on_obj = {}
    for mid, m in mon_src.mon_obj.items():
        on_obj[mid] = mon_id(induced_monoid(V, W, F, phi, psi, m))
    on_mor = {}
    for u, (f, s, t) in mon_src.mon_mor.items():
        on_mor[u] = _smor(F(f), on_obj[s], on_obj[t])
    return Functor.build(name or "Mon(%s)" % F.name, mon_src, mon_tgt,
                         on_obj, on_mor)


def mod_of_functor(V, W, F, phi, psi, P_src=None, P_tgt=None, name=None):
    """The functor between the total categories of the module fibrations
    induced by a lax monoidal functor, together with the monoid-level
    functor it lives over."""
    P_src = P_src if P_src is not None else mod_fibration(V)
    P_tgt = P_tgt if P_tgt is not None else mod_fibration(W)
    monF = mon_of_functor(V, W, F, phi, psi, P_src.mon_cat, P_tgt.mon_cat)
    rev = {p: m for m, p in P_tgt.pair_mor.items()}
    mon2 = {mid: P_tgt.mon_cat.mon_obj[monF.ob(mid)]
            for mid in P_src.mon_cat.mon_obj}

    def image_mod(mid, xid):
        x = P_src.mod_fibres[mid].mod_obj[xid]
        return mod_id(induced_module(V, W, F, phi, mon2[mid], x))

    on_obj = {}
    for o, (mid, xid) in P_src.pair_obj.items():
        on_obj[o] = pair_id(monF.ob(mid), image_mod(mid, xid))
    on_mor = {}
    for m, (u, h, e) in P_src.pair_mor.items():
        _, s, t = P_src.mon_cat.mon_mor[u]
        hphi, hs, ht = P_src.mod_fibres[s].mod_mor[h]
        h2 = _smor(F(hphi), image_mod(s, hs), image_mod(s, ht))
        key = (monF(u), h2, image_mod(t, e))
        got = rev.get(key)
        if got is None:
            raise InputError("%s: image of %s is not a module morphism"
                             % (F.name, m))
        on_mor[m] = got
    G = Functor.build(name or "Mod(%s)" % F.name, P_src.total, P_tgt.total,
                      on_obj, on_mor)
    return G, monF


class MonIndexedCat:
    """An indexed category with monoidal fibres and monoidal inverse images.

    ix is the underlying indexed category; fibre_mon maps a base object to
    the monoidal structure on its fibre; phi[f] and psi[f] are the
    structure morphisms making the inverse image along f lax monoidal.
    """

    def __init__(self, name, ix, fibre_mon, phi, psi):
        self.name = name
        self.ix = ix
        self.fibre_mon = dict(fibre_mon)
        self.phi = dict(phi)
        self.psi = dict(psi)

    def __repr__(self):
        return "MonIndexedCat(%s)" % self.name


def _composite_structure(Phi, f, g):
    # monoidal structure of "inverse image along g, then along f"
    ix = Phi.ix
    B = ix.base
    D = Phi.fibre_mon[B.dom(f)].cat
    Fs, Gs = ix.inv[f], ix.inv[g]
    cphi = {(x, y): D.comp[(Fs(Phi.phi[g][(x, y)]),
                            Phi.phi[f][(Gs.ob(x), Gs.ob(y))])]
            for x, y in iproduct(ix.fibre[B.cod(g)].objects,
                                 ix.fibre[B.cod(g)].objects)}
    cpsi = D.comp[(Fs(Phi.psi[g]), Phi.psi[f])]
    return cphi, cpsi


def validate_mon_indexed(Phi):
    """Validate a monoidal indexed category.

    The underlying indexed data must validate, every fibre structure must
    cohere, every inverse image must be lax monoidal, and gamma and delta
    must be monoidal transformations against the composite structures.
    Returns the per-arrow monoidal functor flags.
    """
    ix = Phi.ix
    B = ix.base
    validate_indexed(ix)
    for a in B.objects:
        Va = Phi.fibre_mon.get(a)
        if Va is None or Va.cat != ix.fibre[a]:
            raise InputError("%s: fibre structure at %s missing or on the wrong "
                             "category" % (Phi.name, a))
        validate_monoidal(Va)
    flags = {}
    for f in B.morphisms:
        a, b = B.dom(f), B.cod(f)
        flags[f] = check_monoidal_functor(ix.inv[f], Phi.phi[f], Phi.psi[f],
                                          Phi.fibre_mon[b], Phi.fibre_mon[a])
    for (f, g), t in ix.gamma.items():
        gf = B.comp[(g, f)]
        Va = Phi.fibre_mon[B.dom(f)]
        Vcg = Phi.fibre_mon[B.cod(g)]
        D = Va.cat
        cphi, cpsi = _composite_structure(Phi, f, g)
        for x, y in iproduct(ix.fibre[B.cod(g)].objects,
                             ix.fibre[B.cod(g)].objects):
            left = D.comp[(t.at(Vcg.ten(x, y)), cphi[(x, y)])]
            right = D.comp[(Phi.phi[gf][(x, y)], Va.tmor(t.at(x), t.at(y)))]
            if left != right:
                raise InputError("%s: gamma(%s,%s) not monoidal at (%s,%s)"
                                 % (Phi.name, f, g, x, y))
        if D.comp[(t.at(Vcg.unit), cpsi)] != Phi.psi[gf]:
            raise InputError("%s: gamma(%s,%s) not monoidal on the unit"
                             % (Phi.name, f, g))
    for a in B.objects:
        d = ix.delta[a]
        Va = Phi.fibre_mon[a]
        D = Va.cat
        ia = B.id_of(a)
        for x, y in iproduct(ix.fibre[a].objects, ix.fibre[a].objects):
            left = d.at(Va.ten(x, y))
            right = D.comp[(Phi.phi[ia][(x, y)], Va.tmor(d.at(x), d.at(y)))]
            if left != right:
                raise InputError("%s: delta(%s) not monoidal at (%s,%s)"
                                 % (Phi.name, a, x, y))
        if d.at(Va.unit) != Phi.psi[ia]:
            raise InputError("%s: delta(%s) not monoidal on the unit"
                             % (Phi.name, a))
    return flags


def mon_fibration(Phi, name=None):
    """The fibration of fibrewise monoids of a monoidal indexed category.

    Applies the monoid category construction to every fibre and every
    inverse image, transports gamma and delta componentwise, re-validates
    the result as an indexed category, and takes its total category.
    """
    validate_mon_indexed(Phi)
    ix = Phi.ix
    B = ix.base
    mons = {a: mon_category(Phi.fibre_mon[a]) for a in B.objects}
    minv = {}
    for f in B.morphisms:
        a, b = B.dom(f), B.cod(f)
        minv[f] = mon_of_functor(Phi.fibre_mon[b], Phi.fibre_mon[a], ix.inv[f],
                                 Phi.phi[f], Phi.psi[f], mons[b], mons[a])
    gamma = {}
    for (f, g), t in ix.gamma.items():
        gf = B.comp[(g, f)]
        comp = minv[g].then(minv[f])
        comps = {}
        for mid, m in mons[B.cod(g)].mon_obj.items():
            comps[mid] = _smor(t.at(m.carrier), comp.ob(mid), minv[gf].ob(mid))
        gamma[(f, g)] = NatTransf("Mon(%s)" % t.name, comp, minv[gf], comps)
    delta = {}
    for a in B.objects:
        d = ix.delta[a]
        ia = B.id_of(a)
        comps = {}
        for mid, m in mons[a].mon_obj.items():
            comps[mid] = _smor(d.at(m.carrier), mid, minv[ia].ob(mid))
        delta[a] = NatTransf("Mon(%s)" % d.name, identity_functor(mons[a]),
                             minv[ia], comps)
    mix = IndexedCat("MonIx(%s)" % Phi.name, B, mons, minv, gamma, delta)
    validate_indexed(mix)
    P = grothendieck(mix, name or "Mon(%s)" % Phi.name)
    P.indexed = mix
    P.mon_cats = mons
    return P


def mod_over_mon(Phi, name=None):
    """Modules over monoids over the base, as a two-level construction.

    Builds the fibrewise module fibrations, the per-arrow square of
    induced functors, and the coherence data of both levels, then runs the
    two-level Grothendieck construction. Returns (connecting functor Q,
    upper fibration of modules, lower fibration of monoids).
    """
    validate_mon_indexed(Phi)
    ix = Phi.ix
    B = ix.base
    fibs = {a: mod_fibration(Phi.fibre_mon[a]) for a in B.objects}
    squares = {}
    for f in B.morphisms:
        a, b = B.dom(f), B.cod(f)
        squares[f] = mod_of_functor(Phi.fibre_mon[b], Phi.fibre_mon[a],
                                    ix.inv[f], Phi.phi[f], Phi.psi[f],
                                    fibs[b], fibs[a])
    rev = {a: {p: m for m, p in fibs[a].pair_mor.items()} for a in B.objects}

    def locate(a, u, h, anchor, ctx):
        got = rev[a].get((u, h, anchor))
        if got is None:
            raise InputError("%s: %s does not assemble to a module morphism over %s"
                             % (Phi.name, ctx, a))
        return got

    def twist_component(a, c_mon, c_mod, R2, M2, R1, M1, o):
        # the pair (monoid component, module component) as one arrow of
        # the module total category over a
        Va = Phi.fibre_mon[a]
        D = Va.cat
        u = _smor(c_mon, mon_id(R2), mon_id(R1))
        restk = D.comp[(M1.kappa, Va.tmor(D.id_of(M1.carrier), c_mon))]
        h = _smor(c_mod, mod_id(M2), pair_id(M1.carrier, restk))
        return locate(a, u, h, mod_id(M1), "component at %s" % o)

    gamma_top, gamma_bot = {}, {}
    for (f, g), t in ix.gamma.items():
        a, cg = B.dom(f), B.cod(g)
        gf = B.comp[(g, f)]
        Va, Vcg = Phi.fibre_mon[a], Phi.fibre_mon[cg]
        cphi, cpsi = _composite_structure(Phi, f, g)
        FG = ix.inv[g].then(ix.inv[f])
        tcomps, bcomps = {}, {}
        for mid, R in fibs[cg].mon_cat.mon_obj.items():
            R2 = induced_monoid(Vcg, Va, FG, cphi, cpsi, R)
            R1 = induced_monoid(Vcg, Va, ix.inv[gf], Phi.phi[gf], Phi.psi[gf], R)
            bcomps[mid] = _smor(t.at(R.carrier), mon_id(R2), mon_id(R1))
            for xid, X in fibs[cg].mod_fibres[mid].mod_obj.items():
                M2 = induced_module(Vcg, Va, FG, cphi, R2, X)
                M1 = induced_module(Vcg, Va, ix.inv[gf], Phi.phi[gf], R1, X)
                o = pair_id(mid, xid)
                tcomps[o] = twist_component(a, t.at(R.carrier), t.at(X.carrier),
                                            R2, M2, R1, M1, o)
        gamma_top[(f, g)] = NatTransf("ModG(%s,%s)" % (f, g),
                                      squares[g][0].then(squares[f][0]),
                                      squares[gf][0], tcomps)
        gamma_bot[(f, g)] = NatTransf("MonG(%s,%s)" % (f, g),
                                      squares[g][1].then(squares[f][1]),
                                      squares[gf][1], bcomps)
    delta_top, delta_bot = {}, {}
    for a in B.objects:
        d = ix.delta[a]
        ia = B.id_of(a)
        Va = Phi.fibre_mon[a]
        tcomps, bcomps = {}, {}
        for mid, R in fibs[a].mon_cat.mon_obj.items():
            R1 = induced_monoid(Va, Va, ix.inv[ia], Phi.phi[ia], Phi.psi[ia], R)
            bcomps[mid] = _smor(d.at(R.carrier), mid, mon_id(R1))
            for xid, X in fibs[a].mod_fibres[mid].mod_obj.items():
                M1 = induced_module(Va, Va, ix.inv[ia], Phi.phi[ia], R1, X)
                o = pair_id(mid, xid)
                tcomps[o] = twist_component(a, d.at(R.carrier), d.at(X.carrier),
                                            R, X, R1, M1, o)
        delta_top[a] = NatTransf("ModD(%s)" % a, identity_functor(fibs[a].total),
                                 squares[ia][0], tcomps)
        delta_bot[a] = NatTransf("MonD(%s)" % a, identity_functor(fibs[a].base),
                                 squares[ia][1], bcomps)
    Q, upper, lower = two_level_grothendieck(B, fibs, squares, gamma_top,
                                             gamma_bot, delta_top, delta_bot,
                                             name or "ModMon(%s)" % Phi.name)
    upper.mod_fibrations = fibs
    return Q, upper, lower


def cartesian_moncat(C, name=None, budget=None):
    """Build a Cartesian monoidal structure from chosen finite products.

    Requires a terminal object and a binary product for every object pair
    (InputError otherwise); assembles tensor, associator, unitors and
    symmetry from product pairings and re-validates the whole structure.
    """
    budget = budget or Budget()
    term = find_universal(C, "terminal", (), budget)
    if term is None:
        raise InputError("%s: no terminal object" % C.name)
    unit = term.apex
    cones = {}
    for a, b in iproduct(C.objects, C.objects):
        cone = find_universal(C, "product", (a, b), budget)
        if cone is None:
            raise InputError("%s: no product of (%s,%s)" % (C.name, a, b))
        cones[(a, b)] = cone

    def pairing(u, v, ab):
        p1, p2 = cones[ab].legs
        found = [w for w in C.hom(C.dom(u), cones[ab].apex)
                 if C.comp[(p1, w)] == u and C.comp[(p2, w)] == v]
        if len(found) != 1:
            raise InputError("%s: pairing of (%s,%s) not unique (%d found)"
                             % (C.name, u, v, len(found)))
        return found[0]

    tensor_obj = {ab: cone.apex for ab, cone in cones.items()}
    tensor_mor = {}
    for f, g in iproduct(C.morphisms, C.morphisms):
        p1, p2 = cones[(C.dom(f), C.dom(g))].legs
        tensor_mor[(f, g)] = pairing(C.comp[(f, p1)], C.comp[(g, p2)],
                                     (C.cod(f), C.cod(g)))
    alpha = {}
    for a, b, c in iproduct(C.objects, C.objects, C.objects):
        outer = cones[(tensor_obj[(a, b)], c)]
        l1, l2 = outer.legs
        pa = C.comp[(cones[(a, b)].legs[0], l1)]
        pb = C.comp[(cones[(a, b)].legs[1], l1)]
        alpha[(a, b, c)] = pairing(pa, pairing(pb, l2, (b, c)),
                                   (a, tensor_obj[(b, c)]))
    lam = {a: cones[(unit, a)].legs[1] for a in C.objects}
    rho = {a: cones[(a, unit)].legs[0] for a in C.objects}
    sigma = {}
    for a, b in iproduct(C.objects, C.objects):
        p1, p2 = cones[(a, b)].legs
        sigma[(a, b)] = pairing(p2, p1, (b, a))
    return validate_monoidal(MonCat(name or "x(%s)" % C.name, C, tensor_obj,
                                    tensor_mor, unit, alpha, lam, rho, sigma))


def cartesian_monoids(C, carrier, budget=None):
    """Monoid structures on one carrier against chosen products, with the
    laws evaluated on global points.

    Needs only a terminal object and the product carrier x carrier, not a
    total tensor. Sound when the terminal object separates parallel
    arrows, as in categories of finite sets. Returns (mu, eta) pairs in
    lexicographic order.
    """
    budget = budget or Budget()
    term = find_universal(C, "terminal", (), budget)
    if term is None:
        raise InputError("%s: no terminal object" % C.name)
    one = term.apex
    cone = find_universal(C, "product", (carrier, carrier), budget)
    if cone is None:
        raise InputError("%s: no product of (%s,%s)" % (C.name, carrier, carrier))
    p1, p2 = cone.legs

    def pairing(u, v):
        found = [w for w in C.hom(C.dom(u), cone.apex)
                 if C.comp[(p1, w)] == u and C.comp[(p2, w)] == v]
        if len(found) != 1:
            raise InputError("%s: pairing of (%s,%s) not unique (%d found)"
                             % (C.name, u, v, len(found)))
        return found[0]

    points = C.hom(one, carrier)
    out = []
    for mu in C.hom(cone.apex, carrier):
        def act(x, y):
            return C.comp[(mu, pairing(x, y))]
        for eta in points:
            budget.spend()
            if any(act(eta, x) != x or act(x, eta) != x for x in points):
                continue
            if any(act(act(x, y), z) != act(x, act(y, z))
                   for x, y, z in iproduct(points, points, points)):
                continue
            out.append((mu, eta))
    return out
