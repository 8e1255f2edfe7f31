"""Checks and constructions over workspace files, from the command line.

    catfib <command> [KEY=VALUE | NAME]... [--in FILE]... [--entity NAME]...
           [--budget N] [--seed N] [--json] [--out FILE]

Positional arguments are either KEY=VALUE pairs or bare entity names,
assigned to the command's expected keys in order. Exit codes: 0 when all
checks pass or the construction succeeds, 1 when a checked property
fails (the report carries a witness), 2 for invalid input, 3 when a
search budget is exceeded.

Reports are deterministic for a fixed input and budget; construction
commands include the constructed entities as workspace text that parses
back into equal entities. --seed is accepted for symmetry with the
randomized property suites and is otherwise ignored.
"""

import argparse
import json
import sys

from .core import (Budget, InputError, SearchBudgetExceeded, nat_iso_search)
from .fib import (Fibration, MorFib, build_cleavage, build_opcleavage,
                  check_fibration, check_opfibration, validate_fibration)
from .indexed import (extract_indexed, fibre_comparison, grothendieck,
                      grothendieck_op, op_of_indexed, roundtrip_iso)
from .sites import (check_site_morphism, covering_axioms, induced_covering,
                    sheaf_check, transform)
from .loctriv import (check_image_theorems, check_loc_theorems,
                      fibred_functor_properties, loc_in_fibred_site,
                      validate_triv)
from . import algebra
from .fixtures import strict_phi
from .workspace import (KINDS, Workspace, add_with_deps, emit_workspace,
                        parse_file)

AXIOM_ORDER = ("M", "M_tilde", "M_tilde_prime", "C", "C_tilde", "L",
               "L_tilde", "sifted", "saturated", "sieve_saturated",
               "coverage", "pretopology", "grothendieck_topology")


def _w(x):
    """Deterministic single-line rendering of a witness value."""
    if isinstance(x, str):
        return x
    if isinstance(x, (frozenset, set)):
        return "{%s}" % ",".join(sorted(_w(e) for e in x))
    if isinstance(x, (tuple, list)):
        return "(%s)" % ",".join(_w(e) for e in x)
    if isinstance(x, dict):
        return "; ".join("%s=%s" % (k, _w(x[k])) for k in sorted(x, key=str))
    return str(x)


def _v(name, status, witness=None):
    out = {"name": name, "status": status}
    if witness is not None:
        out["witness"] = _w(witness)
    return out


def _need(ws, kind, name):
    b = ws.bucket(kind)
    if name not in b:
        raise InputError("unknown %s %s" % (kind, name))
    return b[name]


def _cloven(P):
    if P.cleavage is None:
        return Fibration(P.functor, build_cleavage(P.functor), P.opcleavage)
    return P


def _resolve_triv(P, decl):
    objs = decl.objects
    if decl.mors:
        mors = decl.mors
    else:
        keep = set(objs)
        mors = tuple(m for m in P.total.morphisms
                     if P.total.dom(m) in keep and P.total.cod(m) in keep)
    return validate_triv(P, objs, mors, P.base.objects, P.base.morphisms)


def cmd_validate(ws, kv, budget):
    verdicts = []
    for kind in KINDS:
        for name in sorted(ws.bucket(kind)):
            where = ws.provenance.get((kind, name), ("<constructed>", 0))
            verdicts.append(_v("%s %s" % (kind, name), "pass",
                               "%s:%d" % where))
    return verdicts, True, None


def cmd_fib_check(ws, kv, budget):
    P = _need(ws, "fibration", kv["P"])
    r = check_fibration(P.functor)
    ro = check_opfibration(P.functor)
    verdicts = [
        _v("fibration", "pass" if r.ok else "fail",
           None if r.ok else r.witness),
        _v("opfibration", "pass" if ro.ok else "no",
           None if ro.ok else ro.witness),
        _v("bifibration", "pass" if r.ok and ro.ok else "no"),
    ]
    ok = r.ok
    if P.cleavage is not None or P.opcleavage is not None:
        try:
            validate_fibration(P)
            verdicts.append(_v("cleavage_data", "pass"))
        except InputError as e:
            verdicts.append(_v("cleavage_data", "fail", str(e)))
            ok = False
    return verdicts, ok, None


def cmd_cleavage(ws, kv, budget):
    P = _need(ws, "fibration", kv["P"])
    r = check_fibration(P.functor)
    if not r.ok:
        return [_v("fibration", "fail", r.witness)], False, None
    ro = check_opfibration(P.functor)
    opcleavage = build_opcleavage(P.functor) if ro.ok else None
    P2 = Fibration(P.functor, build_cleavage(P.functor), opcleavage)
    out = Workspace()
    add_with_deps(out, "fibration", kv["P"], P2)
    verdicts = [_v("fibration", "pass"),
                _v("opfibration", "pass" if ro.ok else "no"),
                _v("constructed", "pass", kv["P"])]
    return verdicts, True, out


def cmd_groth(ws, kv, budget):
    Phi = _need(ws, "indexed", kv["Phi"])
    G = grothendieck(Phi)
    r = check_fibration(G.functor)
    out = Workspace()
    add_with_deps(out, "fibration", G.name, G)
    verdicts = [_v("constructed", "pass", G.name),
                _v("fibration", "pass" if r.ok else "fail",
                   None if r.ok else r.witness)]
    return verdicts, r.ok, out


def cmd_groth_op(ws, kv, budget):
    Phi = _need(ws, "indexed", kv["Phi"])
    G = grothendieck_op(op_of_indexed(Phi))
    r = check_opfibration(G.functor)
    out = Workspace()
    add_with_deps(out, "fibration", G.name, G)
    verdicts = [_v("constructed", "pass", G.name),
                _v("opfibration", "pass" if r.ok else "fail",
                   None if r.ok else r.witness)]
    return verdicts, r.ok, out


def _is_strict(Phi):
    for (f, g), t in Phi.gamma.items():
        Fa = Phi.fibre[Phi.base.dom(f)]
        if any(not Fa.is_identity(m) for m in t.components.values()):
            return False
    for a, d in Phi.delta.items():
        Fa = Phi.fibre[a]
        if any(not Fa.is_identity(m) for m in d.components.values()):
            return False
    return True


def cmd_extract(ws, kv, budget):
    P = _cloven(_need(ws, "fibration", kv["P"]))
    Phi = extract_indexed(P)
    strict = _is_strict(Phi)
    verdicts = [_v("extracted", "pass", Phi.name),
                _v("strict", "pass" if strict else "no")]
    out = None
    if strict:
        out = Workspace()
        add_with_deps(out, "indexed", Phi.name, Phi)
    return verdicts, True, out


def cmd_roundtrip(ws, kv, budget):
    if ("P" in kv) == ("Phi" in kv):
        raise InputError("roundtrip takes exactly one of P=<fibration> "
                         "or Phi=<indexed>")
    verdicts = []
    ok = True
    if "P" in kv:
        P = _cloven(_need(ws, "fibration", kv["P"]))
        try:
            T, _ = roundtrip_iso(P)
            verdicts.append(_v("roundtrip_iso", "pass", T.name))
        except InputError as e:
            verdicts.append(_v("roundtrip_iso", "fail", str(e)))
            ok = False
        return verdicts, ok, None
    Phi = _need(ws, "indexed", kv["Phi"])
    G = grothendieck(Phi)
    Phi2 = extract_indexed(G)
    cmp = {}
    for a in Phi.base.objects:
        c = fibre_comparison(Phi, G, a)
        fa = Phi.fibre[a]
        bij = (len(set(c.on_obj.values())) == len(c.on_obj) == len(fa.objects)
               and len(set(c.on_mor.values())) == len(c.on_mor)
               == len(fa.morphisms))
        cmp[a] = c
        verdicts.append(_v("fibre %s" % a, "pass" if bij else "fail"))
        ok = ok and bij
    for f in sorted(Phi.base.morphisms):
        a, b = Phi.base.dom(f), Phi.base.cod(f)
        left = Phi2.inv[f].then(cmp[a])
        right = cmp[b].then(Phi.inv[f])
        if left == right or nat_iso_search(left, right, budget) is not None:
            verdicts.append(_v("inv %s" % f, "pass"))
        else:
            verdicts.append(_v("inv %s" % f, "fail"))
            ok = False
    return verdicts, ok, None


def cmd_site_axioms(ws, kv, budget):
    K = _need(ws, "covering", kv["K"])
    flags, wit = covering_axioms(K, budget)
    verdicts = [_v(k, "pass" if flags[k] else "fail", wit.get(k))
                for k in AXIOM_ORDER if k in flags]
    return verdicts, all(flags[k] for k in flags), None


def cmd_site_transform(ws, kv, budget):
    K = _need(ws, "covering", kv["K"])
    K2 = transform(K, kv["kind"], budget)
    out = Workspace()
    add_with_deps(out, "covering", K2.name, K2)
    return [_v("constructed", "pass", K2.name)], True, out


def cmd_sheaf_check(ws, kv, budget):
    X = _need(ws, "presheaf", kv["X"])
    K = _need(ws, "covering", kv["K"])
    if X.cat != K.cat:
        raise InputError("presheaf %s and covering %s live on different "
                         "categories" % (kv["X"], kv["K"]))
    form = kv.get("form", "family")
    ok, verd = sheaf_check(X, K, form, budget)
    verdicts = []
    for c, r in K.all_pairs():
        v, w = verd[(c, r)]
        verdicts.append(_v("%s <- {%s}" % (c, ",".join(sorted(r))),
                           "pass" if v else "fail", w))
    return verdicts, ok, None


def cmd_site_morphism(ws, kv, budget):
    F = _need(ws, "functor", kv["F"])
    K = _need(ws, "covering", kv["K"])
    L = _need(ws, "covering", kv["L"])
    flags, wit = check_site_morphism(F, K, L, budget)
    verdicts = [
        _v("morphism", "pass" if flags["morphism"] else "fail",
           wit.get("morphism")),
        _v("strict", "pass" if flags["strict"] else "no", wit.get("strict")),
        _v("preserves_pullbacks_of_coverings",
           "pass" if flags["preserves_pullbacks_of_coverings"] else "no",
           wit.get("preserves_pullbacks_of_coverings")),
    ]
    return verdicts, flags["morphism"], None


def cmd_induced_covering(ws, kv, budget):
    P = _cloven(_need(ws, "fibration", kv["P"]))
    K = _need(ws, "covering", kv["K"])
    if K.cat != P.base:
        raise InputError("covering %s does not live on the base of %s"
                         % (kv["K"], kv["P"]))
    KP = induced_covering(P, K, budget)
    out = Workspace()
    add_with_deps(out, "covering", KP.name, KP)
    return [_v("constructed", "pass", KP.name)], True, out


def cmd_loctriv(ws, kv, budget):
    decl = _need(ws, "trivial", kv["T"])
    P = _cloven(_need(ws, "fibration", decl.fib))
    K = _need(ws, "covering", kv["K"])
    if K.cat != P.base:
        raise InputError("covering %s does not live on the base of %s"
                         % (kv["K"], decl.fib))
    triv = _resolve_triv(P, decl)
    loc = loc_in_fibred_site(P, K, triv)
    verdicts = []
    for k in sorted(triv.flags):
        verdicts.append(_v("triv:%s" % k, "pass" if triv.flags[k] else "no"))
    for k in sorted(loc.flags):
        verdicts.append(_v("loc:%s" % k, "pass" if loc.flags[k] else "no"))
    verdicts.append(_v("loc_objects", "pass", tuple(sorted(loc.total.objects))))
    verdicts.append(_v("loc_base_objects", "pass",
                       tuple(sorted(loc.base.objects))))
    out = Workspace()
    add_with_deps(out, "covering", loc.kl.name, loc.kl)
    return verdicts, True, out


_LOC_STATUS = {"verified": "pass", "failed": "fail",
               "hypotheses not met": "skip"}


def cmd_loc_theorems(ws, kv, budget):
    decl = _need(ws, "trivial", kv["T"])
    P = _cloven(_need(ws, "fibration", decl.fib))
    K = _need(ws, "covering", kv["K"])
    K2 = _need(ws, "covering", kv["K2"]) if "K2" in kv else None
    if K.cat != P.base:
        raise InputError("covering %s does not live on the base of %s"
                         % (kv["K"], decl.fib))
    triv = _resolve_triv(P, decl)
    report = check_loc_theorems(P, K, triv, K2, budget)
    verdicts = []
    ok = True
    for name in sorted(report):
        entry = report[name]
        status = _LOC_STATUS[entry["status"]]
        wit = {k: v for k, v in entry.items() if k != "status"}
        verdicts.append(_v(name, status, wit))
        ok = ok and status != "fail"
    return verdicts, ok, None


def cmd_images(ws, kv, budget):
    mor = MorFib.build(kv.get("name", "m"),
                       _need(ws, "functor", kv["top"]),
                       _need(ws, "functor", kv["base"]),
                       _need(ws, "fibration", kv["src"]),
                       _need(ws, "fibration", kv["tgt"]))
    props = fibred_functor_properties(mor)
    verdicts = [_v("fibred_properties", "pass", props["fibred"]),
                _v("global_properties", "pass", props["global"]),
                _v("cartesian", "pass" if props["cartesian"] else "no")]
    ok = True
    for imp in props["implications"]:
        if not imp["hypotheses_met"]:
            verdicts.append(_v(imp["name"], "skip"))
        elif imp["holds"]:
            verdicts.append(_v(imp["name"], "pass"))
        else:
            verdicts.append(_v(imp["name"], "fail"))
            ok = False
    for name, entry in sorted(check_image_theorems(mor).items()):
        if not entry["hypotheses_met"]:
            verdicts.append(_v(name, "skip"))
        elif entry["holds"]:
            verdicts.append(_v(name, "pass"))
        else:
            verdicts.append(_v(name, "fail"))
            ok = False
    return verdicts, ok, None


def _truthy(s):
    return str(s).lower() in ("1", "true", "yes")


def cmd_alg_monoids(ws, kv, budget):
    V = _need(ws, "monoidal", kv["V"])
    commutative = _truthy(kv.get("commutative", ""))
    mons = algebra.monoids(V)
    if commutative:
        mons = [m for m in mons if m.commutative]
    if "carrier" in kv:
        mons = [m for m in mons if m.carrier == kv["carrier"]]
    verdicts = [_v("count", "pass", str(len(mons)))]
    for m in mons:
        note = None
        if m.commutative is not None:
            note = "commutative" if m.commutative else "noncommutative"
        verdicts.append(_v(algebra.mon_id(m), "pass", note))
    out = Workspace()
    cat = algebra.mon_category(V, commutative=commutative)
    add_with_deps(out, "category", cat.name, cat)
    return verdicts, True, out


def cmd_alg_modfib(ws, kv, budget):
    V = _need(ws, "monoidal", kv["V"])
    P = algebra.mod_fibration(V)
    r = check_fibration(P.functor)
    ro = check_opfibration(P.functor)
    verdicts = [_v("constructed", "pass", P.name),
                _v("fibration", "pass" if r.ok else "fail",
                   None if r.ok else r.witness),
                _v("opfibration", "pass" if ro.ok else "no",
                   None if ro.ok else ro.witness),
                _v("bifibration", "pass" if r.ok and ro.ok else "no")]
    out = Workspace()
    add_with_deps(out, "fibration", P.name, P)
    return verdicts, r.ok, out


def cmd_alg_extend(ws, kv, budget):
    V = _need(ws, "monoidal", kv["V"])
    f = kv["f"]
    if f not in V.cat.mor:
        raise InputError("unknown arrow %s in %s" % (f, kv["V"]))
    mons = {algebra.mon_id(m): m for m in algebra.monoids(V)}
    if kv["src"] not in mons:
        raise InputError("unknown monoid %s" % kv["src"])
    if kv["tgt"] not in mons:
        raise InputError("unknown monoid %s" % kv["tgt"])
    src, tgt = mons[kv["src"]], mons[kv["tgt"]]
    if not algebra.is_monoid_morphism(V, f, src, tgt):
        raise InputError("%s is not a monoid morphism %s -> %s"
                         % (f, kv["src"], kv["tgt"]))
    mods = {algebra.mod_id(m): m for m in algebra.modules(V, src)}
    if kv["mod"] not in mods:
        raise InputError("unknown module %s over %s" % (kv["mod"], kv["src"]))
    mod = mods[kv["mod"]]
    ind, eta, q = algebra.extend_scalars(V, f, src, tgt, mod, budget)
    P = algebra.mod_fibration(V)
    _, isop = algebra.extension_opcartesian(V, P, f, src, tgt, mod, budget)
    verdicts = [_v("extended", "pass", algebra.mod_id(ind)),
                _v("unit", "pass", eta),
                _v("opcartesian", "pass" if isop else "fail")]
    out = Workspace()
    cat = algebra.mod_category(V, tgt)
    add_with_deps(out, "category", cat.name, cat)
    return verdicts, isop, out


def _mon_indexed_of(ws, kv):
    Phi = _need(ws, "indexed", kv["Phi"])
    V = _need(ws, "monoidal", kv["V"])
    for a in Phi.base.objects:
        if Phi.fibre[a] != V.cat:
            raise InputError("fibre over %s is not the category of %s"
                             % (a, kv["V"]))
    phi = {f: strict_phi(V, Phi.inv[f]) for f in Phi.base.morphisms}
    psi = {f: V.cat.id_of(V.unit) for f in Phi.base.morphisms}
    return algebra.MonIndexedCat(Phi.name, Phi,
                                 {a: V for a in Phi.base.objects}, phi, psi)


def cmd_mon_indexed(ws, kv, budget):
    M = _mon_indexed_of(ws, kv)
    try:
        flags = algebra.validate_mon_indexed(M)
    except InputError as e:
        return [_v("monoidal_indexed", "fail", str(e))], False, None
    verdicts = [_v("monoidal_indexed", "pass")]
    for f in sorted(flags):
        verdicts.append(_v("inv %s" % f, "pass", flags[f]))
    G = algebra.mon_fibration(M)
    r = check_fibration(G.functor)
    verdicts.append(_v("mon_fibration", "pass" if r.ok else "fail",
                       G.name if r.ok else r.witness))
    out = Workspace()
    add_with_deps(out, "fibration", G.name, G)
    return verdicts, r.ok, out


def cmd_mod_over_mon(ws, kv, budget):
    M = _mon_indexed_of(ws, kv)
    try:
        algebra.validate_mon_indexed(M)
    except InputError as e:
        return [_v("monoidal_indexed", "fail", str(e))], False, None
    Q, upper, lower = algebra.mod_over_mon(M)
    ru = check_fibration(upper.functor)
    rl = check_fibration(lower.functor)
    verdicts = [_v("constructed", "pass", Q.name),
                _v("modules_fibration", "pass" if ru.ok else "fail",
                   None if ru.ok else ru.witness),
                _v("monoids_fibration", "pass" if rl.ok else "fail",
                   None if rl.ok else rl.witness)]
    out = Workspace()
    add_with_deps(out, "functor", Q.name, Q)
    add_with_deps(out, "fibration", upper.name, upper)
    add_with_deps(out, "fibration", lower.name, lower)
    return verdicts, ru.ok and rl.ok, out


class _Cmd:
    def __init__(self, required, optional, handler):
        self.required = required
        self.optional = optional
        self.handler = handler


COMMANDS = {
    "validate": _Cmd((), (), cmd_validate),
    "fib-check": _Cmd(("P",), (), cmd_fib_check),
    "cleavage": _Cmd(("P",), (), cmd_cleavage),
    "groth": _Cmd(("Phi",), (), cmd_groth),
    "groth-op": _Cmd(("Phi",), (), cmd_groth_op),
    "extract": _Cmd(("P",), (), cmd_extract),
    "roundtrip": _Cmd((), ("P", "Phi"), cmd_roundtrip),
    "site-axioms": _Cmd(("K",), (), cmd_site_axioms),
    "site-transform": _Cmd(("K", "kind"), (), cmd_site_transform),
    "sheaf-check": _Cmd(("X", "K"), ("form",), cmd_sheaf_check),
    "site-morphism": _Cmd(("F", "K", "L"), (), cmd_site_morphism),
    "induced-covering": _Cmd(("P", "K"), (), cmd_induced_covering),
    "loctriv": _Cmd(("T", "K"), (), cmd_loctriv),
    "loc-theorems": _Cmd(("T", "K"), ("K2",), cmd_loc_theorems),
    "images": _Cmd(("top", "base", "src", "tgt"), ("name",), cmd_images),
    "alg-monoids": _Cmd(("V",), ("commutative", "carrier"), cmd_alg_monoids),
    "alg-modfib": _Cmd(("V",), (), cmd_alg_modfib),
    "alg-extend": _Cmd(("V", "f", "src", "tgt", "mod"), (), cmd_alg_extend),
    "mon-indexed": _Cmd(("Phi", "V"), (), cmd_mon_indexed),
    "mod-over-mon": _Cmd(("Phi", "V"), (), cmd_mod_over_mon),
}


def _assign_args(cmd, spec, raw):
    keys = tuple(spec.required) + tuple(spec.optional)
    kv = {}
    bare = []
    for a in raw:
        if "=" in a and a.split("=", 1)[0] in keys:
            k, val = a.split("=", 1)
            if k in kv:
                raise InputError("duplicate argument %s" % k)
            kv[k] = val
        else:
            bare.append(a)
    for a in bare:
        for k in keys:
            if k not in kv:
                kv[k] = a
                break
        else:
            raise InputError("unexpected argument %r for %s" % (a, cmd))
    for k in spec.required:
        if k not in kv:
            raise InputError("%s requires %s=<name>" % (cmd, k))
    return kv


def _emit_report(report, ok, ns):
    if ns.out and "entities" in report:
        with open(ns.out, "w") as fh:
            fh.write(report["entities"])
    if ns.json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    print("command: %s" % report["command"])
    for v in report["verdicts"]:
        line = "%s: %s" % (v["name"], v["status"])
        if "witness" in v:
            line += " -- " + v["witness"]
        print(line)
    if "entities" in report and not ns.out:
        print("---")
        sys.stdout.write(report["entities"])


def _error_report(ns, command, kind, message, code):
    report = {"command": command, "elapsed_ms": 0,
              "verdicts": [_v(kind, "error", message)]}
    if ns.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("command: %s" % command, file=sys.stderr)
        print("%s: error -- %s" % (kind, message), file=sys.stderr)
    return code


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="catfib",
        description="checks and constructions over finite-category "
                    "workspace files")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("args", nargs="*", metavar="KEY=VALUE|NAME")
    ap.add_argument("--in", dest="inputs", action="append", default=[],
                    metavar="FILE", help="workspace file (repeatable)")
    ap.add_argument("--entity", action="append", default=[], metavar="NAME",
                    help="bare entity argument (repeatable)")
    ap.add_argument("--budget", type=int, default=None,
                    help="search budget (default 10^7)")
    ap.add_argument("--seed", type=int, default=None,
                    help="seed for generated property-suite fixtures")
    ap.add_argument("--json", action="store_true",
                    help="emit the report as JSON")
    ap.add_argument("--out", default=None, metavar="FILE",
                    help="write constructed entities to FILE")
    ns = ap.parse_intermixed_args(argv)
    spec = COMMANDS[ns.command]
    budget = Budget(ns.budget) if ns.budget else Budget()
    try:
        ws = Workspace()
        for path in ns.inputs:
            parse_file(path, ws)
        kv = _assign_args(ns.command, spec, list(ns.args) + list(ns.entity))
        verdicts, ok, out_ws = spec.handler(ws, kv, budget)
    except SearchBudgetExceeded as e:
        return _error_report(ns, ns.command, "budget", str(e), 3)
    except InputError as e:
        return _error_report(ns, ns.command, "input", str(e), 2)
    except OSError as e:
        return _error_report(ns, ns.command, "input", str(e), 2)
    report = {"command": ns.command, "verdicts": verdicts, "elapsed_ms": 0}
    if out_ws is not None:
        report["entities"] = emit_workspace(out_ws)
    _emit_report(report, ok, ns)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
