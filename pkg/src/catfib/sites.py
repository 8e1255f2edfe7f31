"""Covering functions on finite categories: axioms, saturations, sheaves.

A covering of an object is a finite set of arrows into it; a covering
function assigns a finite set of coverings to each object. Coverings are
compared by refinement (every arrow factors through the other covering);
covering functions by subordination. Saturation of a sifted covering
function is computed within sieves, matching the identity
(sift(K))_Sat = sift(K_Sat) = J_K.
"""

import itertools

from .core import Budget, FinCat, InputError, find_universal
from .fib import cartesian_lifts


class CoveringFunction:
    """cov maps object ids to frozensets of coverings (frozensets of
    morphism ids with the key object as codomain)."""

    def __init__(self, name, cat, cov):
        self.name = name
        self.cat = cat
        self.cov = {c: frozenset(frozenset(r) for r in cov.get(c, ())) for c in cat.objects}

    def coverings(self, c):
        return self.cov[c]

    def all_pairs(self):
        for c in self.cat.objects:
            for r in sorted(self.cov[c], key=sorted):
                yield c, r

    def is_sifted(self):
        return all(is_sieve(self.cat, r) for _, r in self.all_pairs())

    def __eq__(self, other):
        return (isinstance(other, CoveringFunction)
                and self.cat == other.cat and self.cov == other.cov)

    def __repr__(self):
        return "CoveringFunction(%s)" % self.name


def validate_covering_function(K):
    C = K.cat
    for c, r in K.all_pairs():
        for f in r:
            if f not in C.mor:
                raise InputError("%s: unknown arrow %s in a covering of %s" % (K.name, f, c))
            if C.cod(f) != c:
                raise InputError("%s: arrow %s does not target %s" % (K.name, f, c))
    return True


def arrows_into(C, c):
    return tuple(m for m in C.morphisms if C.cod(m) == c)


def refines(C, R, S):
    """Every arrow of R factors through an arrow of S."""
    for f in R:
        if f in S:
            continue
        if not any(C.composable(g, h) and C.comp[(g, h)] == f
                   for g in S for h in C.morphisms):
            return False
    return True


def has_refinement(K, c, R):
    return any(refines(K.cat, S, R) for S in K.cov[c])


def subordinate(K1, K2):
    """Every K1-covering admits a refinement in K2."""
    if K1.cat != K2.cat:
        raise InputError("subordination across different categories")
    return all(has_refinement(K2, c, r) for c, r in K1.all_pairs())


def equivalent(K1, K2):
    return subordinate(K1, K2) and subordinate(K2, K1)


def is_sieve(C, R):
    for f in R:
        for h in C.morphisms:
            if C.composable(f, h) and C.comp[(f, h)] not in R:
                return False
    return True


def generate_sieve(C, R):
    out = set(R)
    for f in R:
        for h in C.morphisms:
            if C.composable(f, h):
                out.add(C.comp[(f, h)])
    return frozenset(out)


def maximal_sieve(C, c):
    return frozenset(arrows_into(C, c))


def pullback_sieve(C, S, g):
    """g*(S) = arrows h into dom g with g . h in S; a sieve when S is."""
    d = C.dom(g)
    return frozenset(h for h in arrows_into(C, d) if C.comp[(g, h)] in S)


def all_coverings(C, c, budget=None):
    """All subsets of the arrows into c, the empty covering included."""
    arrows = arrows_into(C, c)
    budget = budget or Budget()
    out = []
    for n in range(len(arrows) + 1):
        for combo in itertools.combinations(arrows, n):
            budget.spend()
            out.append(frozenset(combo))
    return out


def all_sieves(C, c, budget=None):
    return [r for r in all_coverings(C, c, budget) if is_sieve(C, r)]


def composite_covering(C, R, family):
    """Union of f . R_f over f in R, family mapping each f to a covering."""
    out = set()
    for f in R:
        for g in family[f]:
            out.add(C.comp[(f, g)])
    return frozenset(out)


def all_pullback_cones(C, f, g):
    """Every pullback cone of the cospan (f, g) as (apex, p, q) with
    p into dom g, q into dom f and g . p = f . q."""
    cones = []
    for x in C.objects:
        for p in C.hom(x, C.dom(g)):
            for q in C.hom(x, C.dom(f)):
                if C.comp[(g, p)] != C.comp[(f, q)]:
                    continue
                if _is_pullback(C, f, g, x, p, q):
                    cones.append((x, p, q))
    return cones


def _is_pullback(C, f, g, x, p, q):
    for y in C.objects:
        for p2 in C.hom(y, C.dom(g)):
            for q2 in C.hom(y, C.dom(f)):
                if C.comp[(g, p2)] != C.comp[(f, q2)]:
                    continue
                count = sum(1 for l in C.hom(y, x)
                            if C.comp[(p, l)] == p2 and C.comp[(q, l)] == q2)
                if count != 1:
                    return False
    return True


def no_covering(C):
    return CoveringFunction("none(%s)" % C.name, C, {})


def empty_covering(C):
    return CoveringFunction("empty(%s)" % C.name, C,
                            {c: (frozenset(),) for c in C.objects})


def coarsest_pretopology(C):
    return CoveringFunction("coarse(%s)" % C.name, C,
                            {c: (frozenset([C.id_of(c)]),) for c in C.objects})


def finest_pretopology(C, budget=None):
    return CoveringFunction("fine(%s)" % C.name, C,
                            {c: all_coverings(C, c, budget) for c in C.objects})


def satisfies_m_tilde(K):
    """Every isomorphism singleton is a covering."""
    C = K.cat
    return all(frozenset([m]) in K.cov[C.cod(m)] for m in C.isos())


def satisfies_m_tilde_prime(K):
    """Every identity covering is a covering."""
    C = K.cat
    return all(frozenset([C.id_of(c)]) in K.cov[c] for c in C.objects)


def is_coverage(K, budget=None):
    """Axiom (C) alone: coverings pull back along arbitrary arrows up to
    refinement."""
    C = K.cat
    budget = budget or Budget()
    for c, r in K.all_pairs():
        for g in arrows_into(C, c):
            budget.spend()
            if not any(refines(C, frozenset(C.comp[(g, h)] for h in s), r)
                       for s in K.cov[C.dom(g)]):
                return False
    return True


def covering_axioms(K, budget=None):
    """Decide the axiom battery; returns (flags dict, witnesses dict)."""
    C = K.cat
    budget = budget or Budget()
    flags = {}
    wit = {}

    def fail(key, w):
        flags[key] = False
        wit.setdefault(key, w)

    flags["M"] = True
    for c in C.objects:
        ok = any(any(C.composable(g, h) and C.comp[(g, h)] == C.id_of(c)
                     for g in r for h in C.morphisms)
                 for r in K.cov[c])
        if not ok:
            fail("M", ("object not covered by a split epi", c))
            break

    flags["M_tilde"] = True
    for m in C.morphisms:
        if C.is_iso(m) and frozenset([m]) not in K.cov[C.cod(m)]:
            fail("M_tilde", ("iso singleton missing", m))
            break

    flags["M_tilde_prime"] = True
    for c in C.objects:
        if frozenset([C.id_of(c)]) not in K.cov[c]:
            fail("M_tilde_prime", ("identity covering missing", c))
            break

    flags["C"] = True
    for c, r in K.all_pairs():
        for g in arrows_into(C, c):
            d = C.dom(g)
            budget.spend()
            ok = any(refines(C, frozenset(C.comp[(g, h)] for h in s), r)
                     for s in K.cov[d])
            if not ok:
                fail("C", ("no covering of the domain composes into a refinement", r, g))
                break
        if flags["C"] is False:
            break

    flags["C_tilde"] = True
    for c, r in K.all_pairs():
        for g in arrows_into(C, c):
            d = C.dom(g)
            options = []
            for f in sorted(r):
                cones = all_pullback_cones(C, f, g)
                if not cones:
                    options = None
                    break
                options.append([p for (_, p, _) in cones])
            if options is None:
                fail("C_tilde", ("missing pullback of a covering arrow", r, g))
                break
            found = False
            for choice in itertools.product(*options):
                budget.spend()
                if frozenset(choice) in K.cov[d]:
                    found = True
                    break
            if not found:
                fail("C_tilde", ("no pullback-covering in K", r, g))
                break
        if flags["C_tilde"] is False:
            break

    flags["L"] = True
    flags["L_tilde"] = True
    for c, r in K.all_pairs():
        arrows = sorted(r)
        per_arrow = [sorted(K.cov[C.dom(f)], key=sorted) for f in arrows]
        for combo in itertools.product(*per_arrow):
            budget.spend()
            family = dict(zip(arrows, combo))
            comp = composite_covering(C, r, family)
            if flags["L"] and not has_refinement(K, c, comp):
                fail("L", ("composite covering has no refinement", r, comp))
            if flags["L_tilde"] and comp not in K.cov[c]:
                fail("L_tilde", ("composite covering not in K", r, comp))
            if not flags["L"] and not flags["L_tilde"]:
                break
        if not flags["L"] and not flags["L_tilde"]:
            break

    flags["sifted"] = True
    for c, r in K.all_pairs():
        if not is_sieve(C, r):
            fail("sifted", ("covering not a sieve", c, r))
            break

    flags["saturated"] = True
    for c in C.objects:
        for r in all_coverings(C, c, budget):
            if r not in K.cov[c] and has_refinement(K, c, r):
                fail("saturated", ("refinable covering missing", c, r))
                break
        if flags["saturated"] is False:
            break

    flags["sieve_saturated"] = True
    for c in C.objects:
        ksieves = [r for r in K.cov[c] if is_sieve(C, r)]
        for s in all_sieves(C, c, budget):
            if s in K.cov[c]:
                continue
            if any(r <= s for r in ksieves):
                fail("sieve_saturated", ("sieve containing a K-sieve missing", c, s))
                break
        if flags["sieve_saturated"] is False:
            break

    flags["coverage"] = flags["C"]
    flags["pretopology"] = flags["M"] and flags["C"] and flags["L"]
    flags["grothendieck_topology"] = flags["sifted"] and _topology_axioms(K, budget, wit)
    return flags, wit


def _topology_axioms(K, budget, wit):
    """(M_s), (C_s') and (L_s') for a sifted covering function."""
    C = K.cat
    for c in C.objects:
        if maximal_sieve(C, c) not in K.cov[c]:
            wit.setdefault("grothendieck_topology", ("maximal sieve missing", c))
            return False
    for c, r in K.all_pairs():
        if not is_sieve(C, r):
            return False
        for g in arrows_into(C, c):
            budget.spend()
            if pullback_sieve(C, r, g) not in K.cov[C.dom(g)]:
                wit.setdefault("grothendieck_topology",
                               ("pullback sieve not a K-sieve", r, g))
                return False
    for c in C.objects:
        for s in K.cov[c]:
            for r in all_sieves(C, c, budget):
                if r in K.cov[c]:
                    continue
                if all(pullback_sieve(C, r, f) in K.cov[C.dom(f)] for f in s):
                    wit.setdefault("grothendieck_topology",
                                   ("locally covering sieve missing", c, r))
                    return False
    return True


def transform(K, kind, budget=None):
    C = K.cat
    budget = budget or Budget()
    if kind == "sift":
        cov = {c: frozenset(generate_sieve(C, r) for r in K.cov[c])
               for c in C.objects}
        return CoveringFunction("sift(%s)" % K.name, C, cov)
    if kind == "saturate":
        if K.is_sifted():
            cov = {c: frozenset(s for s in all_sieves(C, c, budget)
                                if any(r <= s for r in K.cov[c]))
                   for c in C.objects}
        else:
            cov = {c: frozenset(r for r in all_coverings(C, c, budget)
                                if has_refinement(K, c, r))
                   for c in C.objects}
        return CoveringFunction("sat(%s)" % K.name, C, cov)
    if kind == "sifted_saturate":
        cov = {c: frozenset(s for s in all_sieves(C, c, budget)
                            if any(r <= s for r in K.cov[c]))
               for c in C.objects}
        return CoveringFunction("J(%s)" % K.name, C, cov)
    if kind == "max_generating":
        if not K.is_sifted():
            raise InputError("max_generating requires a sifted covering function")
        cov = {c: frozenset(r for r in all_coverings(C, c, budget)
                            if generate_sieve(C, r) in K.cov[c])
               for c in C.objects}
        return CoveringFunction("max(%s)" % K.name, C, cov)
    raise InputError("unknown transform kind: %s" % kind)


def pullback_covering(C, R, g, budget=None):
    """Chosen pullback-covering of R along g, or None if a pullback is
    missing. The choice is the deterministic one of find_universal."""
    legs = []
    for f in sorted(R):
        cone = find_universal(C, "pullback", (g, f), budget=budget)
        if cone is None:
            return None
        # legs ordered to match the cospan (g, f); the leg over dom g
        legs.append(cone.legs[0])
    return frozenset(legs)


class Presheaf:
    """Contravariant finite-set-valued functor: on_obj maps objects to
    element tuples, on_mor maps f: A -> B to a dict P(B) -> P(A)."""

    def __init__(self, name, cat, on_obj, on_mor):
        self.name = name
        self.cat = cat
        self.on_obj = {c: tuple(v) for c, v in on_obj.items()}
        self.on_mor = {m: dict(v) for m, v in on_mor.items()}

    def at(self, c):
        return self.on_obj[c]

    def map(self, m):
        return self.on_mor[m]

    def __repr__(self):
        return "Presheaf(%s)" % self.name


def validate_presheaf(P):
    C = P.cat
    for c in C.objects:
        if c not in P.on_obj:
            raise InputError("%s: missing value at %s" % (P.name, c))
        if len(set(P.on_obj[c])) != len(P.on_obj[c]):
            raise InputError("%s: duplicate elements at %s" % (P.name, c))
    for m in C.morphisms:
        tab = P.on_mor.get(m)
        if tab is None:
            raise InputError("%s: missing map along %s" % (P.name, m))
        src, dst = P.on_obj[C.cod(m)], P.on_obj[C.dom(m)]
        if set(tab) != set(src):
            raise InputError("%s: map along %s not defined on all of P(%s)"
                             % (P.name, m, C.cod(m)))
        for x, y in tab.items():
            if y not in dst:
                raise InputError("%s: map along %s leaves P(%s)" % (P.name, m, C.dom(m)))
    for c in C.objects:
        i = C.id_of(c)
        if any(P.on_mor[i][x] != x for x in P.on_obj[c]):
            raise InputError("%s: identity at %s not the identity map" % (P.name, c))
    for (g, f), h in C.comp.items():
        for x in P.on_obj[C.cod(g)]:
            if P.on_mor[h][x] != P.on_mor[f][P.on_mor[g][x]]:
                raise InputError("%s: functoriality fails on (%s,%s)" % (P.name, g, f))
    return True


def sheaf_family(P, c, R, budget=None):
    """Sheaf axiom in family form: every compatible family over R has a
    unique amalgamation in P(c)."""
    C = P.cat
    budget = budget or Budget()
    arrows = sorted(R)
    pre = {}
    for f in arrows:
        for g in arrows:
            pairs = []
            for h in C.morphisms:
                if not C.composable(f, h):
                    continue
                for k in C.morphisms:
                    if C.composable(g, k) and C.comp[(f, h)] == C.comp[(g, k)]:
                        pairs.append((h, k))
            pre[(f, g)] = pairs
    for family in itertools.product(*[P.at(C.dom(f)) for f in arrows]):
        budget.spend()
        x = dict(zip(arrows, family))
        compatible = True
        for f in arrows:
            for g in arrows:
                for h, k in pre[(f, g)]:
                    if P.map(h)[x[f]] != P.map(k)[x[g]]:
                        compatible = False
                        break
                if not compatible:
                    break
            if not compatible:
                break
        if not compatible:
            continue
        amalg = [v for v in P.at(c) if all(P.map(f)[v] == x[f] for f in arrows)]
        if len(amalg) != 1:
            return False, ("family with %d amalgamations" % len(amalg), x)
    return True, None


def sheaf_equalizer(P, c, R, budget=None):
    """Sheaf axiom as an equalizer over chosen pullbacks of covering pairs."""
    C = P.cat
    arrows = sorted(R)
    pb = {}
    for f in arrows:
        for g in arrows:
            cone = find_universal(C, "pullback", (f, g), budget=budget)
            if cone is None:
                raise InputError("equalizer form needs pullbacks: (%s,%s) has none" % (f, g))
            pb[(f, g)] = cone
    def e(v):
        return tuple(P.map(f)[v] for f in arrows)
    vectors = list(itertools.product(*[P.at(C.dom(f)) for f in arrows]))
    def p1(vec):
        x = dict(zip(arrows, vec))
        return tuple(P.map(pb[(f, g)].legs[0])[x[f]] for f in arrows for g in arrows)
    def p2(vec):
        x = dict(zip(arrows, vec))
        return tuple(P.map(pb[(f, g)].legs[1])[x[g]] for f in arrows for g in arrows)
    images = {}
    for v in P.at(c):
        ev = e(v)
        if ev in images:
            return False, ("two sections with equal restrictions", v, images[ev])
        images[ev] = v
    for vec in vectors:
        matched = p1(vec) == p2(vec)
        if matched and vec not in images:
            return False, ("matching family with no section", vec)
        if not matched and vec in images:
            return False, ("section restricting to a non-matching family", images[vec])
    return True, None


def sheaf_check(P, K, form="family", budget=None):
    """Per-covering verdicts over a covering function; overall boolean."""
    verdicts = {}
    ok = True
    for c, r in K.all_pairs():
        if form == "family":
            v, w = sheaf_family(P, c, r, budget)
        elif form == "equalizer":
            v, w = sheaf_equalizer(P, c, r, budget)
        elif form == "both":
            v, w = sheaf_family(P, c, r, budget)
            v2, _ = sheaf_equalizer(P, c, r, budget)
            if v != v2:
                raise InputError("family and equalizer forms disagree on %s" % sorted(r))
        else:
            raise InputError("unknown sheaf check form: %s" % form)
        verdicts[(c, r)] = (v, w)
        ok = ok and v
    return ok, verdicts


def representable(C, x):
    on_obj = {a: C.hom(a, x) for a in C.objects}
    on_mor = {}
    for m in C.morphisms:
        on_mor[m] = {h: C.comp[(h, m)] for h in C.hom(C.cod(m), x)}
    return Presheaf("y(%s)" % x, C, on_obj, on_mor)


def is_subcanonical(K, budget=None):
    for x in K.cat.objects:
        ok, _ = sheaf_check(representable(K.cat, x), K, "family", budget)
        if not ok:
            return False
    return True


def canonical_covering_function(C, budget=None):
    """Largest covering function for which every representable is a sheaf."""
    budget = budget or Budget()
    reps = [representable(C, x) for x in C.objects]
    cov = {}
    for c in C.objects:
        good = []
        for r in all_coverings(C, c, budget):
            if all(sheaf_family(P, c, r, budget)[0] for P in reps):
                good.append(r)
        cov[c] = frozenset(good)
    return CoveringFunction("can(%s)" % C.name, C, cov)


def check_site_morphism(F, K, L, budget=None):
    """Flags for F: (source, K) -> (target, L)."""
    if F.source != K.cat or F.target != L.cat:
        raise InputError("site morphism endpoints do not match the covering functions")
    C = K.cat
    morphism = True
    strict = True
    wit = {}
    for c, r in K.all_pairs():
        fr = frozenset(F(f) for f in r)
        if fr not in L.cov[F.ob(c)]:
            strict = False
            wit.setdefault("strict", (c, r))
        if not has_refinement(L, F.ob(c), fr):
            morphism = False
            wit.setdefault("morphism", (c, r))
    preserves = True
    for c, r in K.all_pairs():
        for f in sorted(r):
            for g in arrows_into(C, c):
                cone = find_universal(C, "pullback", (g, f), budget=budget)
                if cone is None:
                    continue
                if not _is_pullback(F.target, F(f), F(g), F.ob(cone.apex),
                                    F(cone.legs[0]), F(cone.legs[1])):
                    preserves = False
                    wit.setdefault("preserves_pullbacks_of_coverings", (f, g))
    return {"morphism": morphism, "strict": strict,
            "preserves_pullbacks_of_coverings": preserves}, wit


def induced_covering(P, K, budget=None):
    """K_P on the total category: all families of Cartesian lifts of the
    K-coverings of the projections of each object."""
    E = P.total
    budget = budget or Budget()
    cov = {}
    for e in E.objects:
        got = set()
        for r in K.cov[P.ob(e)]:
            options = []
            for f in sorted(r):
                lifts = cartesian_lifts(P.functor, f, e)
                if not lifts:
                    raise InputError("no cartesian lift of %s at %s" % (f, e))
                options.append(lifts)
            for choice in itertools.product(*options):
                budget.spend()
                got.add(frozenset(choice))
        cov[e] = frozenset(got)
    return CoveringFunction("%s_%s" % (K.name, P.name), E, cov)
