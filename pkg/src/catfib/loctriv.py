"""Trivial subfunctors, fibred images, and locally trivial objects.

A subfunctor of trivial objects in a fibration is a pair of subcategories
(total, base) compatible with the projection and closed, fibre by fibre,
under vertical isomorphisms. Local triviality relativizes membership to a
covering function on the base: an object is locally trivial when some
covering pulls it back into the trivial objects.
"""

from .core import (Budget, Functor, InputError, Subcategory,
                   find_universal, functor_properties, image_operators,
                   is_replete_subcategory)
from .fib import (cartesian_lifts, check_fibration, cloven, fibre,
                  is_cartesian)
from .fib import is_cartesian_morphism as _cartesian_morphism
from .sites import (CoveringFunction, all_coverings, is_coverage, refines,
                    satisfies_m_tilde, satisfies_m_tilde_prime, subordinate)


class TrivSubfunctor:
    """Validated subfunctor of trivial objects with its computed flags."""

    def __init__(self, fibration, total, base, restriction, flags):
        self.fibration = fibration
        self.total = total
        self.base = base
        self.restriction = restriction
        self.flags = flags

    def __repr__(self):
        return "TrivSubfunctor(%d/%d objects)" % (len(self.total.objects),
                                                  len(self.base.objects))


def _is_vertical_iso(P, m):
    E, B = P.total, P.base
    return E.is_iso(m) and B.is_identity(P(m))


def _fibrewise_replete(P, total_objs, total_mors, base_objs):
    """Each fibre restriction closed under the vertical isomorphisms of
    the ambient fibre; returns an offending iso or None."""
    for m in P.total.morphisms:
        if not _is_vertical_iso(P, m):
            continue
        if P.ob(P.total.dom(m)) not in base_objs:
            continue
        if P.total.dom(m) in total_objs:
            if m not in total_mors or P.total.cod(m) not in total_objs:
                return m
    return None


def _fibrewise_full(P, total_objs, total_mors):
    E = P.total
    for m in E.morphisms:
        if not P.base.is_identity(P(m)):
            continue
        if E.dom(m) in total_objs and E.cod(m) in total_objs and m not in total_mors:
            return False
    return True


def _globally_full(cat, objs, mors):
    for m in cat.morphisms:
        if cat.dom(m) in objs and cat.cod(m) in objs and m not in mors:
            return False
    return True


def subfunctor_flags(P, total, base):
    """Subfibration flags for a candidate subfunctor (pair of Subcategory).

    strong means the restriction is a fibration whose Cartesian arrows are
    Cartesian in the ambient fibration.
    """
    tobj, tmor = set(total.objects), set(total.morphisms)
    bobj, bmor = set(base.objects), set(base.morphisms)
    tcat = total.as_fincat("sub_total")
    bcat = base.as_fincat("sub_base")
    for e in tobj:
        if P.ob(e) not in bobj:
            raise InputError("projection leaves the base subcategory at %s" % e)
    for m in tmor:
        if P(m) not in bmor:
            raise InputError("projection leaves the base subcategory at %s" % m)
    restriction = Functor.build("restrict(%s)" % P.name, tcat, bcat,
                                {e: P.ob(e) for e in tcat.objects},
                                {m: P(m) for m in tcat.morphisms})
    fib_report = check_fibration(restriction)
    strong = bool(fib_report)
    if strong:
        for m in tcat.morphisms:
            if is_cartesian(restriction, m) and not is_cartesian(P.functor, m):
                strong = False
                break
    return {
        "subfibration": bool(fib_report),
        "strong_subfibration": strong,
        "replete": _fibrewise_replete(P, tobj, tmor, bobj) is None,
        "full": _fibrewise_full(P, tobj, tmor),
        "globally_replete": (is_replete_subcategory(total)
                             and is_replete_subcategory(base)),
        "globally_full": (_globally_full(P.total, tobj, tmor)
                          and _globally_full(P.base, bobj, bmor)),
    }


def validate_triv(P, total_objs, total_mors, base_objs, base_mors):
    """Validate a candidate subfunctor of trivial objects.

    Fibrewise repleteness is mandatory; the remaining conditions are
    reported as flags.
    """
    total = Subcategory(P.total, total_objs, total_mors)
    base = Subcategory(P.base, base_objs, base_mors)
    tcat = total.as_fincat("triv_total")
    bcat = base.as_fincat("triv_base")
    for e in total.objects:
        if P.ob(e) not in set(base.objects):
            raise InputError("trivial object %s projects outside the base part" % e)
    for m in total.morphisms:
        if P(m) not in set(base.morphisms):
            raise InputError("trivial morphism %s projects outside the base part" % m)
    offender = _fibrewise_replete(P, set(total.objects), set(total.morphisms),
                                  set(base.objects))
    if offender is not None:
        raise InputError("trivial objects not closed under the vertical "
                         "isomorphism %s" % offender)
    restriction = Functor.build("triv(%s)" % P.name, tcat, bcat,
                                {e: P.ob(e) for e in tcat.objects},
                                {m: P(m) for m in tcat.morphisms})
    flags = subfunctor_flags(P, total, base)
    return TrivSubfunctor(P, total, base, restriction, flags)


def triv_all(P):
    """The whole fibration as its own subfunctor of trivial objects."""
    return validate_triv(P, P.total.objects, P.total.morphisms,
                         P.base.objects, P.base.morphisms)


def _fibre_restriction(mor, a):
    """Restriction of the top functor to the fibres over a and G(a)."""
    Q, P = mor.source, mor.target
    Fa = fibre(Q, a)
    Fb = fibre(P, mor.base.ob(a))
    return Functor.build("%s@%s" % (mor.name, a), Fa, Fb,
                         {e: mor.top.ob(e) for e in Fa.objects},
                         {m: mor.top(m) for m in Fa.morphisms})


def _monic_on_morphisms(F):
    return len(set(F.on_mor.values())) == len(F.source.morphisms)


def _surjective_on_objects(F):
    return set(F.on_obj.values()) == set(F.target.objects)


def fibred_functor_properties(mor):
    """Fibred (per fibre of the source) and global property reports for a
    morphism of fibrations, with the transfer implications evaluated."""
    Q, P = mor.source, mor.target
    per_fibre = {}
    for a in Q.base.objects:
        fa = _fibre_restriction(mor, a)
        per_fibre[a] = functor_properties(fa)
        per_fibre[a]["monic_on_morphisms"] = _monic_on_morphisms(fa)
    keys = ("faithful", "full", "isofull", "pseudomonic", "replete",
            "essentially_surjective", "injective_on_objects", "monic_on_morphisms")
    fibred = {k: all(per_fibre[a][k] for a in per_fibre) for k in keys}
    top = functor_properties(mor.top)
    top["monic_on_morphisms"] = _monic_on_morphisms(mor.top)
    bot = functor_properties(mor.base)
    bot["monic_on_morphisms"] = _monic_on_morphisms(mor.base)
    glob = {k: top[k] and bot[k] for k in keys}
    cartesian, _ = _cartesian_morphism(mor)

    implications = []

    def imply(name, hyp, concl):
        implications.append({"name": name, "hypotheses_met": hyp,
                             "holds": concl if hyp else None,
                             "ok": (not hyp) or concl})

    imply("globally faithful gives fibrewise faithful",
          glob["faithful"], fibred["faithful"])
    for k in ("full", "isofull", "pseudomonic"):
        imply("faithful base carries global %s to the fibres" % k,
              bot["faithful"] and glob[k], fibred[k])
    imply("monic base carries global repleteness to the fibres",
          bot["faithful"] and bot["injective_on_objects"] and glob["replete"],
          fibred["replete"])
    imply("iso-reflecting isofull base carries global essential surjectivity",
          bot["reflects_isos"] and bot["isofull"] and glob["essentially_surjective"],
          fibred["essentially_surjective"])
    for k in ("replete", "injective_on_objects", "essentially_surjective"):
        imply("fibrewise %s with %s base is globally so" % (k, k),
              fibred[k] and bot[k], glob[k])
    imply("fibrewise isofull with iso-reflecting isofull base is globally isofull",
          fibred["isofull"] and bot["reflects_isos"] and bot["isofull"],
          glob["isofull"])
    for k in ("isofull", "full", "faithful", "pseudomonic", "monic_on_morphisms"):
        imply("cartesian fibrewise %s with %s base is globally so" % (k, k),
              cartesian and fibred[k] and bot[k], glob[k])
    imply("replete top over a surjective-on-objects source is globally replete",
          _surjective_on_objects(Q.functor) and top["replete"], glob["replete"])
    imply("essentially surjective top over a surjective-on-objects target",
          _surjective_on_objects(P.functor) and top["essentially_surjective"],
          glob["essentially_surjective"])
    return {"fibred": fibred, "per_fibre": per_fibre, "top": top, "base": bot,
            "global": glob, "cartesian": cartesian, "implications": implications}


def _vertical_iso_objects(P, image_objs):
    out = set()
    E = P.total
    for e in E.objects:
        for x in image_objs:
            if any(_is_vertical_iso(P, m) for m in E.hom(x, e)):
                out.add(e)
    return out


def _compose_closure(cat, morphisms):
    out = set(morphisms)
    grew = True
    while grew:
        grew = False
        for g in list(out):
            for f in list(out):
                if cat.composable(g, f) and cat.comp[(g, f)] not in out:
                    out.add(cat.comp[(g, f)])
                    grew = True
    return out


def fibred_images(mor):
    """The six image subfunctors of a morphism of fibrations.

    image, full_image and the two global replete variants restrict the
    target to the corresponding images of the top and base functors;
    replete_image and replete_full_image close the top level under
    vertical isomorphisms only, over the plain or full image of the base.
    """
    P = mor.target
    E = P.total
    top_ops = image_operators(mor.top)
    base_ops = image_operators(mor.base)
    image_objs = set(top_ops["im"].objects)
    vobjs = _vertical_iso_objects(P, image_objs)
    seed = set(top_ops["im"].morphisms)
    for m in E.morphisms:
        if _is_vertical_iso(P, m) and E.dom(m) in vobjs and E.cod(m) in vobjs:
            seed.add(m)
    rim_v = Subcategory(E, vobjs, _compose_closure(E, seed))
    rfim_v = Subcategory(E, vobjs, [m for m in E.morphisms
                                    if E.dom(m) in vobjs and E.cod(m) in vobjs])
    candidates = {
        "image": (top_ops["im"], base_ops["im"]),
        "full_image": (top_ops["fim"], base_ops["fim"]),
        "global_replete_image": (top_ops["rim"], base_ops["rim"]),
        "global_replete_full_image": (top_ops["rfim"], base_ops["rfim"]),
        "replete_image": (rim_v, base_ops["im"]),
        "replete_full_image": (rfim_v, base_ops["fim"]),
    }
    out = {}
    for name, (total, base) in candidates.items():
        out[name] = {"total": total, "base": base,
                     "flags": subfunctor_flags(P, total, base)}
    return out


def check_image_theorems(mor):
    """Subfibration conclusions for the images, under their hypotheses."""
    props = fibred_functor_properties(mor)
    images = fibred_images(mor)
    top, bot = props["top"], props["base"]
    cartesian = props["cartesian"]

    def flags(name):
        return images[name]["flags"]

    report = {}
    hyp = top["pseudomonic"] and bot["pseudomonic"]
    concl = None
    if hyp:
        concl = (flags("image")["subfibration"]
                 and flags("replete_image")["subfibration"]
                 and flags("replete_image")["replete"]
                 and flags("global_replete_image")["subfibration"]
                 and flags("global_replete_image")["globally_replete"])
    report["pseudomonic_images_are_subfibrations"] = {
        "hypotheses_met": hyp, "holds": concl}

    hyp = top["isofull"] and bot["isofull"] and cartesian and bot["faithful"]
    concl = None
    if hyp:
        concl = (flags("image")["strong_subfibration"]
                 and flags("replete_image")["strong_subfibration"]
                 and flags("replete_image")["replete"]
                 and flags("global_replete_image")["strong_subfibration"]
                 and flags("global_replete_image")["globally_replete"])
    report["isofull_cartesian_images_are_strong"] = {
        "hypotheses_met": hyp, "holds": concl}

    hyp = cartesian and bot["full"]
    concl = None
    if hyp:
        concl = (flags("full_image")["strong_subfibration"]
                 and flags("full_image")["globally_full"]
                 and flags("replete_full_image")["strong_subfibration"]
                 and flags("replete_full_image")["globally_full"]
                 and flags("replete_full_image")["replete"]
                 and flags("global_replete_full_image")["strong_subfibration"]
                 and flags("global_replete_full_image")["globally_full"]
                 and flags("global_replete_full_image")["globally_replete"])
    report["cartesian_full_images_are_full_strong"] = {
        "hypotheses_met": hyp, "holds": concl}
    return report


def triv_from_terminal_fibre(P, chosen):
    """Trivial objects from a set of objects in the fibre over a terminal
    object: objects admitting a Cartesian arrow to a chosen object over
    the unique base map; full on morphisms, whole base."""
    if P.cleavage is None:
        raise InputError("triv_from_terminal_fibre needs a cloven fibration")
    term = find_universal(P.base, "terminal")
    if term is None:
        raise InputError("base category has no terminal object")
    t = term.apex
    fibre_objs = {e for e in P.total.objects if P.ob(e) == t}
    chosen = set(chosen)
    if not chosen <= fibre_objs:
        raise InputError("chosen objects do not lie in the fibre over %s" % t)
    E, B = P.total, P.base
    total_objs = set()
    for e in E.objects:
        bang = B.hom(P.ob(e), t)[0]
        for c in sorted(chosen):
            if any(E.dom(m) == e for m in cartesian_lifts(P.functor, bang, c)):
                total_objs.add(e)
                break
    total_mors = [m for m in E.morphisms
                  if E.dom(m) in total_objs and E.cod(m) in total_objs]
    return validate_triv(P, total_objs, total_mors, B.objects, B.morphisms)


def _replete_objects(C, objs):
    objs = set(objs)
    for m in C.isos():
        if C.dom(m) in objs and C.cod(m) not in objs:
            return m
    return None


def loc_in_site(K, triv_objs):
    """Locally trivial objects in a site: objects with a covering whose
    domains are trivial. Returns the full subcategory, the induced
    covering function on it, the witness coverings, and axiom flags."""
    C = K.cat
    triv_objs = set(triv_objs)
    for c in triv_objs:
        if c not in C.objects:
            raise InputError("unknown trivial object %s" % c)
    offender = _replete_objects(C, triv_objs)
    if offender is not None:
        raise InputError("trivial objects not closed under the isomorphism %s"
                         % offender)
    loc_objs = []
    witness = {}
    for c in C.objects:
        good = [r for r in K.cov[c] if all(C.dom(f) in triv_objs for f in r)]
        if good:
            loc_objs.append(c)
            witness[c] = min(good, key=sorted)
    loc_mors = [m for m in C.morphisms
                if C.dom(m) in set(loc_objs) and C.cod(m) in set(loc_objs)]
    loc_cat = Subcategory(C, loc_objs, loc_mors).as_fincat("Loc(%s)" % K.name)
    kl = CoveringFunction("%s_l" % K.name, loc_cat, {
        c: [r for r in K.cov[c]
            if all(C.dom(f) in triv_objs and C.dom(f) in set(loc_objs) for f in r)]
        for c in loc_cat.objects})
    flags = {"M_tilde_prime": satisfies_m_tilde_prime(K),
             "triv_in_loc": triv_objs <= set(loc_objs)}
    return loc_cat, kl, witness, flags


class LocSubfunctor:
    """Full subfunctor of locally trivial objects with witness coverings."""

    def __init__(self, fibration, total, base, restriction,
                 witness_total, witness_base, kl, flags):
        self.fibration = fibration
        self.total = total
        self.base = base
        self.restriction = restriction
        self.witness_total = witness_total
        self.witness_base = witness_base
        self.kl = kl
        self.flags = flags

    def __repr__(self):
        return "LocSubfunctor(%d/%d objects)" % (len(self.total.objects),
                                                 len(self.base.objects))


def _trivial_for(P, triv, e, r):
    """The chosen Cartesian lifts over r at e all have trivial domains,
    cross-checked against the full sets of Cartesian lifts."""
    E = P.total
    tobj = set(triv.total.objects)
    chosen = all(E.dom(P.lift(f, e)) in tobj for f in r)
    exists = all(any(E.dom(m) in tobj for m in cartesian_lifts(P.functor, f, e))
                 for f in r)
    if chosen != exists:
        raise InputError("cleavage-dependent local triviality at %s: trivial "
                         "objects are not fibrewise replete" % e)
    return chosen


def loc_in_fibred_site(P, K, triv):
    """Locally trivial objects in a fibred site.

    An object of the total category qualifies when some covering of its
    projection has all inverse images trivial; the base level reuses the
    site-level notion with the trivial base objects.
    """
    if P.cleavage is None:
        raise InputError("loc_in_fibred_site needs a cloven fibration")
    if triv.fibration is not P and triv.fibration.functor != P.functor:
        raise InputError("trivial subfunctor belongs to a different fibration")
    E, B = P.total, P.base
    loc_base_cat, kl, witness_base, site_flags = loc_in_site(K, triv.base.objects)
    total_objs = []
    witness_total = {}
    for e in E.objects:
        good = [r for r in K.cov[P.ob(e)] if _trivial_for(P, triv, e, r)]
        if good:
            total_objs.append(e)
            witness_total[e] = min(good, key=sorted)
    total = Subcategory(E, total_objs, [m for m in E.morphisms
                                        if E.dom(m) in set(total_objs)
                                        and E.cod(m) in set(total_objs)])
    base = Subcategory(B, loc_base_cat.objects, loc_base_cat.morphisms)
    tcat = total.as_fincat("loc_total")
    restriction = Functor.build("loc(%s)" % P.name, tcat, loc_base_cat,
                                {e: P.ob(e) for e in tcat.objects},
                                {m: P(m) for m in tcat.morphisms})
    flags = {"M_tilde": satisfies_m_tilde(K),
             "M_tilde_prime": site_flags["M_tilde_prime"],
             "triv_in_loc": (set(triv.total.objects) <= set(total_objs)
                             and site_flags["triv_in_loc"])}
    return LocSubfunctor(P, total, base, restriction,
                         witness_total, witness_base, kl, flags)


def _kl_on_base(K, triv):
    """K-coverings with trivial domains, indexed over the whole base."""
    C = K.cat
    tobj = set(triv.base.objects)
    return CoveringFunction("%s_l" % K.name, C, {
        c: [r for r in K.cov[c] if all(C.dom(f) in tobj for f in r)]
        for c in C.objects})


def check_loc_theorems(P, K, triv, K2=None, budget=None):
    """Verify the locally-trivial-subfunctor theorems on an instance.

    Each entry reports its hypotheses; conclusions are only evaluated when
    the hypotheses hold, never silently skipped.
    """
    budget = budget or Budget()
    report = {}
    triv_hyp = {
        "triv_replete": triv.flags["replete"],
        "triv_globally_full": triv.flags["globally_full"],
        "triv_strong_subfibration": triv.flags["strong_subfibration"],
    }
    loc = loc_in_fibred_site(P, K, triv)
    kl = _kl_on_base(K, triv)
    kl_coverage = is_coverage(kl, budget)

    hyp = dict(triv_hyp)
    hyp["kl_coverage"] = kl_coverage
    entry = {"hypotheses": hyp, "status": "hypotheses not met"}
    if all(hyp.values()):
        flags = subfunctor_flags(P, loc.total, loc.base)
        ok = flags["replete"] and flags["globally_full"] and flags["strong_subfibration"]
        entry["status"] = "verified" if ok else "failed"
        entry["flags"] = flags
    report["loc_strong_subfibration"] = entry

    entry = {"hypotheses": dict(triv_hyp), "status": "hypotheses not met"}
    if all(triv_hyp.values()):
        ok = True
        witness = None
        E, B = P.total, P.base
        tobj = set(triv.base.objects)
        for e in E.objects:
            b = P.ob(e)
            covered = [r for r in K.cov[b] if _trivial_for(P, triv, e, r)]
            if not covered:
                continue
            for s in all_coverings(B, b, budget):
                if not all(B.dom(f) in tobj for f in s):
                    continue
                if not any(refines(B, s, r) for r in covered):
                    continue
                if not _trivial_for(P, triv, e, s):
                    ok = False
                    witness = (e, s)
                    break
            if not ok:
                break
        entry["status"] = "verified" if ok else "failed"
        if witness:
            entry["witness"] = witness
    report["refinement_transfer"] = entry

    if K2 is not None:
        kl2 = _kl_on_base(K2, triv)
        hyp = dict(triv_hyp)
        hyp["kl_subordinate"] = subordinate(kl, kl2)
        entry = {"hypotheses": hyp, "status": "hypotheses not met"}
        if all(hyp.values()):
            loc2 = loc_in_fibred_site(P, K2, triv)
            mono = (set(loc.total.objects) <= set(loc2.total.objects)
                    and set(loc.base.objects) <= set(loc2.base.objects))
            entry["status"] = "verified" if mono else "failed"
            if subordinate(kl2, kl):
                same = (loc.total.objects == loc2.total.objects
                        and loc.base.objects == loc2.base.objects)
                entry["equivalent_gives_equal"] = same
                if not same:
                    entry["status"] = "failed"
            if is_coverage(kl2, budget) and kl_coverage and entry["status"] == "verified":
                try:
                    sub2 = Subcategory(P.total, loc2.total.objects, loc2.total.morphisms)
                    P2 = cloven(Functor.build(
                        "loc2", sub2.as_fincat("loc2_total"),
                        Subcategory(P.base, loc2.base.objects,
                                    loc2.base.morphisms).as_fincat("loc2_base"),
                        {e: P.ob(e) for e in loc2.total.objects},
                        {m: P(m) for m in loc2.total.morphisms}))
                    inner_total = Subcategory(P2.total, loc.total.objects,
                                              loc.total.morphisms)
                    inner_base = Subcategory(P2.base, loc.base.objects,
                                             loc.base.morphisms)
                    inner = subfunctor_flags(P2, inner_total, inner_base)
                    ok = (inner["replete"] and inner["globally_full"]
                          and inner["strong_subfibration"])
                except InputError:
                    ok = False
                entry["loc_in_loc_strong"] = ok
                if not ok:
                    entry["status"] = "failed"
        report["subordination"] = entry
    return report
