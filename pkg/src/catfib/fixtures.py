"""Named example structures and seeded generators for tests and reports.

Everything here is deterministic: named fixtures are fixed tables, and the
generators derive all choices from an explicit seed. Generator bases are
restricted to shapes whose only composites are forced (chains, cospans,
spans, parallel pairs), so strict indexed data can be generated freely and
presheaves can be filled in edge by edge.
"""

import itertools
import random

from .core import FinCat, Functor, identity_functor, pair_id
from .fib import MorFib, cloven
from .indexed import grothendieck, strict_indexed
from .sites import CoveringFunction, Presheaf, arrows_into
from .algebra import MonCat, MonIndexedCat, cartesian_moncat, validate_monoidal


def one():
    """The category with a single object and its identity."""
    return FinCat.build("One", ("*",), {"1": ("*", "*")}, {"*": "1"},
                        {("1", "1"): "1"})


def discrete(names, name=None):
    objs = tuple(names)
    mor = {"1%s" % a: (a, a) for a in objs}
    ident = {a: "1%s" % a for a in objs}
    comp = {(i, i): i for i in mor}
    return FinCat.build(name or "Disc%d" % len(objs), objs, mor, ident, comp)


def poset_cat(name, elems, le):
    """Thin category of a finite poset; morphisms are named AtoB."""
    objs = tuple(str(e) for e in elems)
    pairs = [(str(a), str(b)) for a in elems for b in elems if le(a, b)]
    mor = {"%sto%s" % p: p for p in pairs}
    ident = {a: "%sto%s" % (a, a) for a in objs}
    comp = {}
    for (b1, c) in pairs:
        for (a, b2) in pairs:
            if b2 == b1:
                comp[("%sto%s" % (b1, c), "%sto%s" % (a, b2))] = "%sto%s" % (a, c)
    return FinCat.build(name, objs, mor, ident, comp)


def arrow_cat():
    return poset_cat("Arr", ["a", "b"], lambda x, y: x == y or (x, y) == ("a", "b"))


def chain_cat(n):
    return poset_cat("Chain%d" % n, range(n + 1), lambda x, y: x <= y)


def vee():
    """Cospan shape a -> c <- b."""
    order = {("a", "c"), ("b", "c")}
    return poset_cat("Vee", ["a", "b", "c"],
                     lambda x, y: x == y or (x, y) in order)


def wedge():
    """Span shape a <- c -> b."""
    order = {("c", "a"), ("c", "b")}
    return poset_cat("Wedge", ["a", "b", "c"],
                     lambda x, y: x == y or (x, y) in order)


def div12():
    """Divisors of 12 under divisibility; meets are gcds, top is 12."""
    return poset_cat("Div12", [1, 2, 3, 4, 6, 12], lambda x, y: y % x == 0)


def parallel_pair():
    mor = {"1a": ("a", "a"), "1b": ("b", "b"), "f": ("a", "b"), "g": ("a", "b")}
    comp = {("1a", "1a"): "1a", ("1b", "1b"): "1b",
            ("f", "1a"): "f", ("1b", "f"): "f",
            ("g", "1a"): "g", ("1b", "g"): "g"}
    return FinCat.build("Par", ("a", "b"), mor, {"a": "1a", "b": "1b"}, comp)


def iso_pair():
    """Two objects joined by a pair of mutually inverse arrows."""
    mor = {"1a": ("a", "a"), "1b": ("b", "b"), "u": ("a", "b"), "v": ("b", "a")}
    comp = {("1a", "1a"): "1a", ("1b", "1b"): "1b",
            ("u", "1a"): "u", ("1b", "u"): "u",
            ("v", "1b"): "v", ("1a", "v"): "v",
            ("v", "u"): "1a", ("u", "v"): "1b"}
    return FinCat.build("Iso2", ("a", "b"), mor, {"a": "1a", "b": "1b"}, comp)


def codiscrete(names, name=None):
    """Exactly one morphism between every ordered pair of objects."""
    objs = tuple(names)
    mor = {"%sto%s" % (a, b): (a, b) for a in objs for b in objs}
    ident = {a: "%sto%s" % (a, a) for a in objs}
    comp = {}
    for a in objs:
        for b in objs:
            for c in objs:
                comp[("%sto%s" % (b, c), "%sto%s" % (a, b))] = "%sto%s" % (a, c)
    return FinCat.build(name or "Codisc%d" % len(objs), objs, mor, ident, comp)


def monoid_cat(name, elems, op, unit):
    """One-object category of a finite monoid; morphisms named by element."""
    mor = {str(e): ("*", "*") for e in elems}
    comp = {(str(g), str(f)): str(op(g, f)) for g in elems for f in elems}
    return FinCat.build(name, ("*",), mor, {"*": str(unit)}, comp)


def translation(n):
    """The additive cyclic group of order n as a one-object category."""
    return monoid_cat("Z%d" % n, range(n), lambda g, f: (g + f) % n, 0)


def mult01():
    """The multiplicative monoid {0, 1} as a one-object category."""
    return monoid_cat("M01", [0, 1], lambda g, f: g * f, 1)


def finset_id(m, n, images):
    return "%sto%s[%s]" % (m, n, ",".join(str(i) for i in images))


def finite_sets(sizes=(0, 1, 2), validate=False, name=None):
    """Skeletal finite sets on the given sizes, morphisms = image tuples.

    Built correct by construction; pass validate=True to re-check the
    tables on small instances (the larger ones exceed the brute-force
    associativity sweep's comfort zone).
    """
    sizes = tuple(sorted(set(int(s) for s in sizes)))
    if any(s > 9 for s in sizes):
        raise ValueError("single-digit sizes only, got %s" % (sizes,))
    objects = tuple(str(n) for n in sizes)
    mor = {}
    data = {}
    for m in sizes:
        for n in sizes:
            if m > 0 and n == 0:
                continue
            for images in itertools.product(range(n), repeat=m):
                i = finset_id(m, n, images)
                mor[i] = (str(m), str(n))
                data[i] = (m, n, images)
    ident = {str(n): finset_id(n, n, tuple(range(n))) for n in sizes}
    comp = {}
    for i2, (m2, n2, im2) in data.items():
        for i1, (m1, n1, im1) in data.items():
            if n1 == m2:
                comp[(i2, i1)] = finset_id(m1, n2, tuple(im2[k] for k in im1))
    nm = name or "FinSet" + "".join(str(s) for s in sizes)
    if validate:
        return FinCat.build(nm, objects, mor, ident, comp)
    return FinCat(nm, objects, mor, ident, comp)


def cod_fibration(C, name=None, op=False):
    """The codomain functor on the arrow category of C, cloven.

    A fibration exactly when C has the needed pullbacks; chains and
    divisor posets do, cospan shapes do not. Pass op=True to choose an
    opcleavage as well (postcomposition makes this an opfibration for
    every C).
    """
    objs = tuple(C.morphisms)
    mor = {}
    parts = {}
    for x in objs:
        for y in objs:
            for u in C.hom(C.dom(x), C.dom(y)):
                for v in C.hom(C.cod(x), C.cod(y)):
                    if C.comp[(y, u)] != C.comp[(v, x)]:
                        continue
                    i = "%s@%s" % (pair_id(u, v), x)
                    mor[i] = (x, y)
                    parts[i] = (u, v)
    ident = {x: "%s@%s" % (pair_id(C.id_of(C.dom(x)), C.id_of(C.cod(x))), x) for x in objs}
    comp = {}
    for i2, (u2, v2) in parts.items():
        for i1, (u1, v1) in parts.items():
            if mor[i1][1] == mor[i2][0]:
                comp[(i2, i1)] = "%s@%s" % (
                    pair_id(C.comp[(u2, u1)], C.comp[(v2, v1)]), mor[i1][0])
    total = FinCat.build("Arr(%s)" % C.name, objs, mor, ident, comp)
    Q = Functor.build(name or "cod(%s)" % C.name, total, C,
                      {x: C.cod(x) for x in objs},
                      {i: parts[i][1] for i in mor})
    return cloven(Q, opcleavage_too=op)


def fibration_not_opfibration():
    """A Grothendieck fibration with no opCartesian lift of the base arrow
    at one total object (the inverse image misses part of the fibre)."""
    base = arrow_cat()
    fa = discrete(["x", "y"], name="Fa")
    fb = one()
    inv = {"atoa": identity_functor(fa), "btob": identity_functor(fb),
           "atob": Functor.build("pick_x", fb, fa, {"*": "x"}, {"1": "1x"})}
    Phi = strict_indexed("NotOp", base, {"a": fa, "b": fb}, inv)
    return grothendieck(Phi)


def arrow_twist_morfib():
    """A morphism of fibrations that sends a Cartesian arrow to a
    non-Cartesian one (the image arrow enters the wrong end of a fibre)."""
    base = arrow_cat()
    fb = one()
    f1 = discrete(["w"], name="F1")
    inv1 = {"atoa": identity_functor(f1), "btob": identity_functor(fb),
            "atob": Functor.build("w", fb, f1, {"*": "w"}, {"1": "1w"})}
    P1 = grothendieck(strict_indexed("Src", base, {"a": f1, "b": fb}, inv1))
    f2 = poset_cat("F2", ["w1", "w2"],
                   lambda x, y: x == y or (x, y) == ("w1", "w2"))
    inv2 = {"atoa": identity_functor(f2), "btob": identity_functor(fb),
            "atob": Functor.build("w2", fb, f2, {"*": "w2"}, {"1": "w2tow2"})}
    P2 = grothendieck(strict_indexed("Tgt", base, {"a": f2, "b": fb}, inv2))
    rev = {p: m for m, p in P2.pair_mor.items()}
    on_obj = {pair_id("a", "w"): pair_id("a", "w1"),
              pair_id("b", "*"): pair_id("b", "*")}
    on_mor = {}
    for m, (f, h, e) in P1.pair_mor.items():
        if f == "atob":
            on_mor[m] = rev[("atob", "w1tow2", "*")]
        else:
            x = P1.total.dom(m)
            on_mor[m] = P2.total.id_of(on_obj[x])
    top = Functor.build("twist", P1.total, P2.total, on_obj, on_mor)
    return MorFib.build("twist", top, identity_functor(base), P1, P2)


def trivial_moncat():
    C = one()
    ids = {("*", "*"): "*"}
    return validate_monoidal(MonCat("TrivV", C, ids, {("1", "1"): "1"}, "*",
                                    {("*", "*", "*"): "1"}, {"*": "1"},
                                    {"*": "1"}, {("*", "*"): "1"}))


def translation_moncat(n):
    """The cyclic group of order n with tensor = addition; all coherence
    components are identities and the symmetry is the identity."""
    C = translation(n)
    ids = {("*", "*"): "*"}
    tmor = {(str(i), str(j)): str((i + j) % n) for i in range(n) for j in range(n)}
    return validate_monoidal(MonCat("Z%dV" % n, C, ids, tmor, "*",
                                    {("*", "*", "*"): "0"}, {"*": "0"},
                                    {"*": "0"}, {("*", "*"): "0"}))


def mult01_moncat():
    C = mult01()
    ids = {("*", "*"): "*"}
    tmor = {(str(i), str(j)): str(i * j) for i in (0, 1) for j in (0, 1)}
    return validate_monoidal(MonCat("M01V", C, ids, tmor, "*",
                                    {("*", "*", "*"): "1"}, {"*": "1"},
                                    {"*": "1"}, {("*", "*"): "1"}))


def bool2_moncat():
    """Two objects, every hom-set {0,1}, composition and tensor by
    multiplication of labels, object tensor by join; strictly coherent."""
    objs = ("i", "x")
    mor = {}
    for a in objs:
        for b in objs:
            for v in (0, 1):
                mor["%d:%s>%s" % (v, a, b)] = (a, b)
    ident = {a: "1:%s>%s" % (a, a) for a in objs}
    comp = {}
    for m2, (b2, c) in mor.items():
        for m1, (a, b1) in mor.items():
            if b1 == b2:
                v = int(m2[0]) * int(m1[0])
                comp[(m2, m1)] = "%d:%s>%s" % (v, a, c)
    C = FinCat.build("Bool2", objs, mor, ident, comp)

    def join(a, b):
        return "x" if "x" in (a, b) else "i"

    ten_obj = {(a, b): join(a, b) for a in objs for b in objs}
    ten_mor = {}
    for m2, (a2, b2) in mor.items():
        for m1, (a1, b1) in mor.items():
            v = int(m1[0]) * int(m2[0])
            ten_mor[(m1, m2)] = "%d:%s>%s" % (v, join(a1, a2), join(b1, b2))
    alpha = {(a, b, c): C.id_of(join(join(a, b), c))
             for a in objs for b in objs for c in objs}
    lam = {a: C.id_of(a) for a in objs}
    rho = {a: C.id_of(a) for a in objs}
    sigma = {(a, b): C.id_of(join(a, b)) for a in objs for b in objs}
    return validate_monoidal(MonCat("Bool2V", C, ten_obj, ten_mor, "i",
                                    alpha, lam, rho, sigma))


def div12_moncat():
    """Cartesian structure on the divisor poset: tensor = gcd, unit 12."""
    return cartesian_moncat(div12())


def doubling_functor(n=3):
    """Multiplication by 2 on the cyclic group of order n (an involution
    when n = 3)."""
    C = translation(n)
    return Functor.build("dbl", C, C, {"*": "*"},
                         {str(k): str((2 * k) % n) for k in range(n)})


def strict_phi(V, T):
    """Identity structure components for a strictly monoidal endofunctor:
    the component at (x, y) sits at T(x) tensor T(y)."""
    C = V.cat
    return {(x, y): C.id_of(V.ten(T.ob(x), T.ob(y)))
            for x in C.objects for y in C.objects}


def constant_mon_indexed(base, V, name=None):
    """The constant monoidal indexed category on V over the given base."""
    fib = {a: V.cat for a in base.objects}
    inv = {f: identity_functor(V.cat) for f in base.morphisms}
    ix = strict_indexed("%sIx" % V.name, base, fib, inv)
    phi = {f: strict_phi(V, inv[f]) for f in base.morphisms}
    psi = {f: V.cat.id_of(V.unit) for f in base.morphisms}
    return MonIndexedCat(name or "Const(%s)" % V.name, ix,
                         {a: V for a in base.objects}, phi, psi)


def twisted_mon_indexed():
    """Monoidal indexed category over the group Z2 whose nonidentity arrow
    acts on the Z3 fibre by doubling (a strict monoidal involution)."""
    base = translation(2)
    V = translation_moncat(3)
    dbl = doubling_functor(3)
    inv = {"0": identity_functor(V.cat), "1": dbl}
    ix = strict_indexed("TwistIx", base, {"*": V.cat}, inv)
    phi = {f: strict_phi(V, inv[f]) for f in base.morphisms}
    psi = {f: V.cat.id_of(V.unit) for f in base.morphisms}
    return MonIndexedCat("Twist", ix, {"*": V}, phi, psi)


def endofunctors(C):
    """All endofunctors of a small category, by exhaustive search."""
    out = []
    obs = C.objects
    nonid = [m for m in C.morphisms if not C.is_identity(m)]
    for omap_vals in itertools.product(obs, repeat=len(obs)):
        omap = dict(zip(obs, omap_vals))
        choices = []
        for m in nonid:
            opts = C.hom(omap[C.dom(m)], omap[C.cod(m)])
            if not opts:
                choices = None
                break
            choices.append(opts)
        if choices is None:
            continue
        for pick in itertools.product(*choices):
            mmap = {C.id_of(a): C.id_of(omap[a]) for a in obs}
            mmap.update(zip(nonid, pick))
            if all(C.comp[(mmap[g], mmap[f])] == mmap[h]
                   for (g, f), h in C.comp.items()):
                out.append(Functor("end%d" % len(out), C, C, omap, mmap))
    return out


def _gen_bases():
    return [one, arrow_cat, lambda: chain_cat(2), vee, wedge, parallel_pair,
            lambda: discrete(["a", "b"])]


def _gen_fibres():
    return [one, arrow_cat, iso_pair, lambda: discrete(["x", "y"]),
            lambda: poset_cat("F2", ["w1", "w2"],
                              lambda x, y: x == y or (x, y) == ("w1", "w2"))]


def gen_indexed(seed):
    """A seeded strict indexed category over a relation-free base shape.

    Free arrows get arbitrary endofunctors of the fibre; composites are
    forced by strictness.
    """
    rng = random.Random(seed)
    base = rng.choice(_gen_bases())()
    fib = rng.choice(_gen_fibres())()
    ends = endofunctors(fib)
    inv = {base.id_of(a): identity_functor(fib) for a in base.objects}
    dec = {}
    for (g, f), h in base.comp.items():
        if not base.is_identity(g) and not base.is_identity(f):
            dec[h] = (g, f)
    for m in base.morphisms:
        if m not in inv and m not in dec:
            inv[m] = rng.choice(ends)
    changed = True
    while changed:
        changed = False
        for h, (g, f) in dec.items():
            if h not in inv and g in inv and f in inv:
                inv[h] = inv[g].then(inv[f])
                changed = True
    return strict_indexed("Gen%d" % seed, base,
                          {a: fib for a in base.objects}, inv)


def gen_fibration(seed):
    """A seeded cloven fibration: the Grothendieck construction of a
    seeded indexed category."""
    return grothendieck(gen_indexed(seed))


def gen_covering(seed, C):
    """A seeded covering function: random subsets of the arrows into each
    object, with the identity singleton thrown in half the time."""
    rng = random.Random(seed)
    cov = {}
    for c in C.objects:
        arrows = arrows_into(C, c)
        rs = []
        for _ in range(rng.randint(0, 2)):
            rs.append(frozenset(m for m in arrows if rng.random() < 0.6))
        if rng.random() < 0.5:
            rs.append(frozenset([C.id_of(c)]))
        cov[c] = rs
    return CoveringFunction("K%d" % seed, C, cov)


def gen_presheaf(seed, C):
    """A seeded presheaf on a base whose only composites are forced by a
    middle object (chains and the generator shapes); free arrows get
    random maps, composites are composed."""
    rng = random.Random(seed)
    on_obj = {c: tuple("%s%d" % (c, i) for i in range(rng.randint(1, 3)))
              for c in C.objects}
    on_mor = {C.id_of(c): {x: x for x in on_obj[c]} for c in C.objects}
    dec = {}
    for (g, f), h in C.comp.items():
        if not C.is_identity(g) and not C.is_identity(f):
            dec[h] = (g, f)
    for m in C.morphisms:
        if m in on_mor or m in dec:
            continue
        src = on_obj[C.cod(m)]
        dst = on_obj[C.dom(m)]
        on_mor[m] = {x: rng.choice(dst) for x in src}
    changed = True
    while changed:
        changed = False
        for h, (g, f) in dec.items():
            if h not in on_mor and g in on_mor and f in on_mor:
                on_mor[h] = {x: on_mor[f][on_mor[g][x]]
                             for x in on_obj[C.cod(g)]}
                changed = True
    return Presheaf("P%d" % seed, C, on_obj, on_mor)


def _vertical_endo_morphism(P, Phi, T):
    """The fibred endomorphism of a constant-fibre Grothendieck fibration
    induced by an endofunctor commuting with every inverse image."""
    rev = {p: m for m, p in P.pair_mor.items()}
    on_obj = {o: pair_id(a, T.ob(x)) for o, (a, x) in P.pair_obj.items()}
    on_mor = {m: rev[(f, T(h), T.ob(e))] for m, (f, h, e) in P.pair_mor.items()}
    top = Functor.build("vert", P.total, P.total, on_obj, on_mor)
    return MorFib.build("vert", top, identity_functor(P.base), P, P)


def _base_restriction_morphism(Phi, P, keep):
    """Inclusion of the Grothendieck construction restricted to a full
    subcategory of the base."""
    B = Phi.base
    mors = [m for m in B.morphisms
            if B.dom(m) in keep and B.cod(m) in keep]
    sub = FinCat.build("Sub", keep, {m: B.mor[m] for m in mors},
                       {a: B.ident[a] for a in keep},
                       {(g, f): h for (g, f), h in B.comp.items()
                        if g in set(mors) and f in set(mors)})
    Phi2 = strict_indexed("Res", sub, {a: Phi.fibre[a] for a in keep},
                          {m: Phi.inv[m] for m in mors})
    P2 = grothendieck(Phi2)
    incl_b = Functor.build("inclb", sub, B, {a: a for a in keep},
                           {m: m for m in mors})
    top = Functor.build("inclt", P2.total, P.total,
                        {o: o for o in P2.total.objects},
                        {m: m for m in P2.total.morphisms})
    return MorFib.build("incl", top, incl_b, P2, P)


def _fibre_restriction_morphism(Phi, P, seed):
    """Inclusion induced by a full subcategory of the constant fibre that
    is closed under every inverse image."""
    rng = random.Random(seed)
    D = Phi.fibre[Phi.base.objects[0]]
    keep = set(rng.sample(D.objects, rng.randint(1, len(D.objects))))
    changed = True
    while changed:
        changed = False
        for f in Phi.base.morphisms:
            for x in list(keep):
                y = Phi.inv[f].ob(x)
                if y not in keep:
                    keep.add(y)
                    changed = True
    keep = tuple(sorted(keep))
    mors = [m for m in D.morphisms
            if D.dom(m) in keep and D.cod(m) in keep]
    sub = FinCat.build("FSub", keep, {m: D.mor[m] for m in mors},
                       {a: D.ident[a] for a in keep},
                       {(g, f): h for (g, f), h in D.comp.items()
                        if g in set(mors) and f in set(mors)})
    inv = {}
    for f in Phi.base.morphisms:
        inv[f] = Functor.build("r", sub, sub,
                               {a: Phi.inv[f].ob(a) for a in sub.objects},
                               {m: Phi.inv[f](m) for m in sub.morphisms})
    Phi2 = strict_indexed("FRes", Phi.base,
                          {a: sub for a in Phi.base.objects}, inv)
    P2 = grothendieck(Phi2)
    top = Functor.build("inclf", P2.total, P.total,
                        {o: o for o in P2.total.objects},
                        {m: m for m in P2.total.morphisms})
    return MorFib.build("fincl", top, identity_functor(Phi.base), P2, P)


def gen_fibration_morphism(seed):
    """A seeded morphism of fibrations, rotating through identity,
    vertical-endofunctor, base-restriction and fibre-restriction kinds."""
    rng = random.Random(seed)
    Phi = gen_indexed(seed * 7 + 3)
    P = grothendieck(Phi)
    kind = seed % 4
    if kind == 1:
        D = Phi.fibre[Phi.base.objects[0]]
        ends = endofunctors(D)
        rng.shuffle(ends)
        for T in ends:
            if all(T.then(Phi.inv[f]) == Phi.inv[f].then(T)
                   for f in Phi.base.morphisms):
                return _vertical_endo_morphism(P, Phi, T)
    if kind == 2 and len(Phi.base.objects) > 1:
        keep = tuple(sorted(rng.sample(Phi.base.objects,
                                       rng.randint(1, len(Phi.base.objects)))))
        return _base_restriction_morphism(Phi, P, keep)
    if kind == 3:
        return _fibre_restriction_morphism(Phi, P, seed)
    top = identity_functor(P.total)
    return MorFib.build("id", top, identity_functor(P.base), P, P)
