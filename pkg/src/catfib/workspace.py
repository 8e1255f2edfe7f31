"""Parsing and serialization of workspace files.

A workspace file is line oriented and consists of named blocks, each
closed by a line reading `end`. Lines whose first nonblank character is
`#` are comments. Indentation is ignored. Names are whitespace-free
tokens and must not begin with `#`; presheaf elements must not contain
`=>`. Blocks must appear before any block that refers to them.

    category C
      objects a b
      id 1a: a
      id 1b: b
      f: a -> b
      g . f = h
    end

    functor F: C -> D
      ob a => x
      mor f => u
    end

    nat t: F => G
      at a => u
    end

    covering K on C
      cover c <- f g
    end

    presheaf X on C
      set a = a0 a1
      map f: b0=>a1 b1=>a0
    end

    monoidal V on C
      unit i
      ten a b = c
      tmor f g = h
      alpha a b c = m
      lam a = m
      rho a = m
      sigma a b = m
    end

    indexed Phi on B
      fibre a = Ca
      inv f = F
    end

    fibration P = F
      lift f at e = m
      oplift f at d = m
    end

    trivial T in P
      objects x y
      mors m1 m2
    end

Composites with identities are implied in category blocks, as are
identity images in functor blocks, identity maps in presheaf blocks,
and inverse images along identities in indexed blocks (the data is
strict). Covering lines may list no arrows; `sigma` lines, `lift` and
`oplift` lines, and `mors` lines are optional.

Every entity is validated as it is parsed. Parsing the canonical
emission of a workspace reproduces an equal workspace.
"""

import re

from .core import FinCat, Functor, InputError, check_nat, identity_functor
from .fib import Fibration
from .indexed import strict_indexed, validate_indexed
from .sites import (CoveringFunction, Presheaf, validate_covering_function,
                    validate_presheaf)
from .algebra import MonCat, validate_monoidal


class ParseError(InputError):
    """A workspace file failed to parse or an entity failed to validate."""


KINDS = ("category", "functor", "nat", "covering", "presheaf",
         "monoidal", "indexed", "fibration", "trivial")

_BUCKET = {"category": "categories", "functor": "functors", "nat": "nats",
           "covering": "coverings", "presheaf": "presheaves",
           "monoidal": "monoidals", "indexed": "indexeds",
           "fibration": "fibrations", "trivial": "trivials"}


class TrivDecl:
    """A named choice of trivial objects inside a declared fibration."""

    def __init__(self, name, fib, objects, mors=()):
        self.name = name
        self.fib = fib
        self.objects = tuple(objects)
        self.mors = tuple(mors)

    def __repr__(self):
        return "TrivDecl(%s in %s)" % (self.name, self.fib)


class Workspace:
    """All entities declared by a set of workspace files, by kind and name."""

    def __init__(self):
        for attr in _BUCKET.values():
            setattr(self, attr, {})
        self.provenance = {}

    def bucket(self, kind):
        return getattr(self, _BUCKET[kind])

    def add(self, kind, name, entity, where=("<constructed>", 0)):
        b = self.bucket(kind)
        if name in b:
            raise InputError("duplicate %s %s" % (kind, name))
        b[name] = entity
        self.provenance[(kind, name)] = where
        return entity

    def __eq__(self, other):
        if not isinstance(other, Workspace):
            return NotImplemented
        return emit_workspace(self) == emit_workspace(other)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __repr__(self):
        counts = ", ".join("%s=%d" % (k, len(self.bucket(k)))
                           for k in KINDS if self.bucket(k))
        return "Workspace(%s)" % counts


def _clean(raw):
    s = raw.strip()
    if s.startswith("#"):
        return ""
    return s


def _fail(fname, lineno, msg):
    raise ParseError("%s:%d: %s" % (fname, lineno, msg))


def _lookup(ws, kind, name, fname, lineno):
    b = ws.bucket(kind)
    if name not in b:
        _fail(fname, lineno, "unknown %s %s" % (kind, name))
    return b[name]


def _add(ws, kind, name, entity, fname, lineno):
    existing = ws.bucket(kind).get(name)
    if existing is not None:
        # re-declaring an equal entity is a no-op, so files that embed
        # their dependencies can be combined
        if _same(existing, entity) or _same_block(kind, name, existing, entity):
            return
        _fail(fname, lineno, "duplicate %s %s" % (kind, name))
    ws.add(kind, name, entity, (fname, lineno))


def _parse_category(ws, header, body, fname, lineno):
    m = re.match(r"^category\s+(\S+)\s*$", header)
    if not m:
        _fail(fname, lineno, "bad category header: %s" % header)
    name = m.group(1)
    objects = None
    mor = {}
    ident = {}
    comp = {}
    for ln, line in body:
        toks = line.split()
        if toks[0] == "objects":
            objects = (objects or ()) + tuple(toks[1:])
        elif toks[0] == "id":
            mm = re.match(r"^id\s+(\S+):\s+(\S+)\s*$", line)
            if not mm:
                _fail(fname, ln, "bad identity line: %s" % line)
            i, a = mm.groups()
            ident[a] = i
            mor[i] = (a, a)
        elif " = " in line:
            lhs, rhs = line.split(" = ", 1)
            parts = lhs.split(" . ")
            if len(parts) != 2 or len(rhs.split()) != 1:
                _fail(fname, ln, "bad composition line: %s" % line)
            comp[(parts[0].strip(), parts[1].strip())] = rhs.strip()
        elif " -> " in line:
            mm = re.match(r"^(\S+):\s+(\S+)\s+->\s+(\S+)\s*$", line)
            if not mm:
                _fail(fname, ln, "bad morphism line: %s" % line)
            f, d, c = mm.groups()
            mor[f] = (d, c)
        else:
            _fail(fname, ln, "unrecognized category line: %s" % line)
    if objects is None:
        _fail(fname, lineno, "category %s has no objects line" % name)
    filled = {}
    for f, (d, c) in mor.items():
        if d in ident:
            filled[(f, ident[d])] = f
        if c in ident:
            filled[(ident[c], f)] = f
    filled.update(comp)
    try:
        cat = FinCat.build(name, objects, mor, ident, filled)
    except InputError as e:
        _fail(fname, lineno, "category %s: %s" % (name, e))
    _add(ws, "category", name, cat, fname, lineno)


def _parse_functor(ws, header, body, fname, lineno):
    m = re.match(r"^functor\s+(\S+):\s+(\S+)\s+->\s+(\S+)\s*$", header)
    if not m:
        _fail(fname, lineno, "bad functor header: %s" % header)
    name, srcn, tgtn = m.groups()
    src = _lookup(ws, "category", srcn, fname, lineno)
    tgt = _lookup(ws, "category", tgtn, fname, lineno)
    on_obj = {}
    on_mor = {}
    for ln, line in body:
        toks = line.split()
        if len(toks) == 4 and toks[0] == "ob" and toks[2] == "=>":
            on_obj[toks[1]] = toks[3]
        elif len(toks) == 4 and toks[0] == "mor" and toks[2] == "=>":
            on_mor[toks[1]] = toks[3]
        else:
            _fail(fname, ln, "unrecognized functor line: %s" % line)
    for a in src.objects:
        if a in on_obj and on_obj[a] in tgt.ident:
            on_mor.setdefault(src.id_of(a), tgt.id_of(on_obj[a]))
    try:
        F = Functor.build(name, src, tgt, on_obj, on_mor)
    except InputError as e:
        _fail(fname, lineno, "functor %s: %s" % (name, e))
    _add(ws, "functor", name, F, fname, lineno)


def _parse_nat(ws, header, body, fname, lineno):
    m = re.match(r"^nat\s+(\S+):\s+(\S+)\s+=>\s+(\S+)\s*$", header)
    if not m:
        _fail(fname, lineno, "bad nat header: %s" % header)
    name, fn, gn = m.groups()
    F = _lookup(ws, "functor", fn, fname, lineno)
    G = _lookup(ws, "functor", gn, fname, lineno)
    components = {}
    for ln, line in body:
        toks = line.split()
        if len(toks) == 4 and toks[0] == "at" and toks[2] == "=>":
            components[toks[1]] = toks[3]
        else:
            _fail(fname, ln, "unrecognized nat line: %s" % line)
    try:
        t = check_nat(name, F, G, components)
    except InputError as e:
        _fail(fname, lineno, "nat %s: %s" % (name, e))
    _add(ws, "nat", name, t, fname, lineno)


def _parse_covering(ws, header, body, fname, lineno):
    m = re.match(r"^covering\s+(\S+)\s+on\s+(\S+)\s*$", header)
    if not m:
        _fail(fname, lineno, "bad covering header: %s" % header)
    name, catn = m.groups()
    cat = _lookup(ws, "category", catn, fname, lineno)
    cov = {}
    for ln, line in body:
        toks = line.split()
        if len(toks) >= 3 and toks[0] == "cover" and toks[2] == "<-":
            cov.setdefault(toks[1], []).append(frozenset(toks[3:]))
        else:
            _fail(fname, ln, "unrecognized covering line: %s" % line)
    for c in cov:
        if c not in cat.ident:
            _fail(fname, lineno, "covering %s: unknown object %s" % (name, c))
    K = CoveringFunction(name, cat, cov)
    try:
        validate_covering_function(K)
    except InputError as e:
        _fail(fname, lineno, "covering %s: %s" % (name, e))
    _add(ws, "covering", name, K, fname, lineno)


def _parse_presheaf(ws, header, body, fname, lineno):
    m = re.match(r"^presheaf\s+(\S+)\s+on\s+(\S+)\s*$", header)
    if not m:
        _fail(fname, lineno, "bad presheaf header: %s" % header)
    name, catn = m.groups()
    cat = _lookup(ws, "category", catn, fname, lineno)
    on_obj = {}
    on_mor = {}
    for ln, line in body:
        toks = line.split()
        if toks[0] == "set" and len(toks) >= 3 and toks[2] == "=":
            on_obj[toks[1]] = tuple(toks[3:])
        elif toks[0] == "map":
            mm = re.match(r"^map\s+(\S+):\s*(.*)$", line)
            if not mm:
                _fail(fname, ln, "bad map line: %s" % line)
            f, rest = mm.groups()
            table = {}
            for pair in rest.split():
                if "=>" not in pair:
                    _fail(fname, ln, "bad element pair: %s" % pair)
                x, y = pair.split("=>", 1)
                table[x] = y
            on_mor[f] = table
        else:
            _fail(fname, ln, "unrecognized presheaf line: %s" % line)
    for c in cat.objects:
        if c in on_obj:
            on_mor.setdefault(cat.id_of(c), {x: x for x in on_obj[c]})
    try:
        P = Presheaf(name, cat, on_obj, on_mor)
        validate_presheaf(P)
    except InputError as e:
        _fail(fname, lineno, "presheaf %s: %s" % (name, e))
    _add(ws, "presheaf", name, P, fname, lineno)


def _parse_monoidal(ws, header, body, fname, lineno):
    m = re.match(r"^monoidal\s+(\S+)\s+on\s+(\S+)\s*$", header)
    if not m:
        _fail(fname, lineno, "bad monoidal header: %s" % header)
    name, catn = m.groups()
    cat = _lookup(ws, "category", catn, fname, lineno)
    unit = None
    ten = {}
    tmor = {}
    alpha = {}
    lam = {}
    rho = {}
    sigma = {}
    shapes = {"unit": 2, "ten": 5, "tmor": 5, "alpha": 6, "lam": 4,
              "rho": 4, "sigma": 5}
    for ln, line in body:
        toks = line.split()
        kw = toks[0]
        if kw not in shapes or len(toks) != shapes[kw] or \
                (kw != "unit" and toks[-2] != "="):
            _fail(fname, ln, "unrecognized monoidal line: %s" % line)
        if kw == "unit":
            unit = toks[1]
        elif kw == "ten":
            ten[(toks[1], toks[2])] = toks[4]
        elif kw == "tmor":
            tmor[(toks[1], toks[2])] = toks[4]
        elif kw == "alpha":
            alpha[(toks[1], toks[2], toks[3])] = toks[5]
        elif kw == "lam":
            lam[toks[1]] = toks[3]
        elif kw == "rho":
            rho[toks[1]] = toks[3]
        else:
            sigma[(toks[1], toks[2])] = toks[4]
    if unit is None:
        _fail(fname, lineno, "monoidal %s has no unit line" % name)
    try:
        V = validate_monoidal(MonCat(name, cat, ten, tmor, unit, alpha,
                                     lam, rho, sigma or None))
    except InputError as e:
        _fail(fname, lineno, "monoidal %s: %s" % (name, e))
    _add(ws, "monoidal", name, V, fname, lineno)


def _parse_indexed(ws, header, body, fname, lineno):
    m = re.match(r"^indexed\s+(\S+)\s+on\s+(\S+)\s*$", header)
    if not m:
        _fail(fname, lineno, "bad indexed header: %s" % header)
    name, basen = m.groups()
    base = _lookup(ws, "category", basen, fname, lineno)
    fibre = {}
    inv = {}
    for ln, line in body:
        toks = line.split()
        if len(toks) == 4 and toks[0] == "fibre" and toks[2] == "=":
            fibre[toks[1]] = _lookup(ws, "category", toks[3], fname, ln)
        elif len(toks) == 4 and toks[0] == "inv" and toks[2] == "=":
            inv[toks[1]] = _lookup(ws, "functor", toks[3], fname, ln)
        else:
            _fail(fname, ln, "unrecognized indexed line: %s" % line)
    for a in base.objects:
        if a not in fibre:
            _fail(fname, lineno, "indexed %s: no fibre over %s" % (name, a))
    for a in base.objects:
        inv.setdefault(base.id_of(a), identity_functor(fibre[a]))
    for f in base.morphisms:
        if f not in inv:
            _fail(fname, lineno,
                  "indexed %s: no inverse image along %s" % (name, f))
        F = inv[f]
        if F.source != fibre[base.cod(f)] or F.target != fibre[base.dom(f)]:
            _fail(fname, lineno,
                  "indexed %s: inverse image along %s has wrong fibres"
                  % (name, f))
    try:
        Phi = strict_indexed(name, base, fibre, inv)
        validate_indexed(Phi)
    except InputError as e:
        _fail(fname, lineno, "indexed %s: %s" % (name, e))
    _add(ws, "indexed", name, Phi, fname, lineno)


def _parse_fibration(ws, header, body, fname, lineno):
    m = re.match(r"^fibration\s+(\S+)\s+=\s+(\S+)\s*$", header)
    if not m:
        _fail(fname, lineno, "bad fibration header: %s" % header)
    name, fn = m.groups()
    F = _lookup(ws, "functor", fn, fname, lineno)
    cleavage = {}
    opcleavage = {}
    for ln, line in body:
        toks = line.split()
        if len(toks) == 6 and toks[0] in ("lift", "oplift") and \
                toks[2] == "at" and toks[4] == "=":
            f, e, lift = toks[1], toks[3], toks[5]
            if f not in F.target.mor:
                _fail(fname, ln, "fibration %s: unknown base arrow %s" % (name, f))
            if e not in F.source.ident:
                _fail(fname, ln, "fibration %s: unknown total object %s" % (name, e))
            if lift not in F.source.mor:
                _fail(fname, ln, "fibration %s: unknown total arrow %s" % (name, lift))
            (cleavage if toks[0] == "lift" else opcleavage)[(f, e)] = lift
        else:
            _fail(fname, ln, "unrecognized fibration line: %s" % line)
    P = Fibration(F, cleavage or None, opcleavage or None)
    _add(ws, "fibration", name, P, fname, lineno)


def _parse_trivial(ws, header, body, fname, lineno):
    m = re.match(r"^trivial\s+(\S+)\s+in\s+(\S+)\s*$", header)
    if not m:
        _fail(fname, lineno, "bad trivial header: %s" % header)
    name, fibn = m.groups()
    P = _lookup(ws, "fibration", fibn, fname, lineno)
    objects = []
    mors = []
    for ln, line in body:
        toks = line.split()
        if toks[0] == "objects":
            objects.extend(toks[1:])
        elif toks[0] == "mors":
            mors.extend(toks[1:])
        else:
            _fail(fname, ln, "unrecognized trivial line: %s" % line)
    for x in objects:
        if x not in P.total.ident:
            _fail(fname, lineno, "trivial %s: unknown total object %s" % (name, x))
    for x in mors:
        if x not in P.total.mor:
            _fail(fname, lineno, "trivial %s: unknown total arrow %s" % (name, x))
    _add(ws, "trivial", name, TrivDecl(name, fibn, objects, mors), fname, lineno)


_HANDLERS = {"category": _parse_category, "functor": _parse_functor,
             "nat": _parse_nat, "covering": _parse_covering,
             "presheaf": _parse_presheaf, "monoidal": _parse_monoidal,
             "indexed": _parse_indexed, "fibration": _parse_fibration,
             "trivial": _parse_trivial}


def parse_workspace(text, filename="<workspace>", ws=None):
    """Parse workspace text into ws (a fresh Workspace by default)."""
    if ws is None:
        ws = Workspace()
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        line = _clean(lines[i])
        if not line:
            i += 1
            continue
        header_no = i + 1
        kw = line.split()[0]
        if kw not in _HANDLERS:
            _fail(filename, header_no, "unknown section %r" % kw)
        body = []
        j = i + 1
        while True:
            if j >= len(lines):
                _fail(filename, header_no, "%r block has no end" % kw)
            s = _clean(lines[j])
            if s == "end":
                break
            if s:
                body.append((j + 1, s))
            j += 1
        _HANDLERS[kw](ws, line, body, filename, header_no)
        i = j + 1
    return ws


def parse_file(path, ws=None):
    with open(path) as fh:
        text = fh.read()
    return parse_workspace(text, filename=str(path), ws=ws)


def _tok(s):
    s = str(s)
    if not s or any(ch.isspace() for ch in s) or s.startswith("#"):
        raise InputError("name %r cannot be serialized" % s)
    return s


def _elem(s):
    s = _tok(s)
    if "=>" in s:
        raise InputError("element %r cannot be serialized" % s)
    return s


def _emit_category(name, C):
    lines = ["category %s" % _tok(name)]
    lines.append("  objects" + "".join(" " + _tok(a) for a in C.objects))
    for a, i in sorted(C.ident.items()):
        lines.append("  id %s: %s" % (_tok(i), _tok(a)))
    for f in sorted(C.mor):
        if not C.is_identity(f):
            d, c = C.mor[f]
            lines.append("  %s: %s -> %s" % (_tok(f), _tok(d), _tok(c)))
    for (g, f), h in sorted(C.comp.items()):
        if not C.is_identity(g) and not C.is_identity(f):
            lines.append("  %s . %s = %s" % (_tok(g), _tok(f), _tok(h)))
    lines.append("end")
    return "\n".join(lines)


def _emit_functor(name, F):
    lines = ["functor %s: %s -> %s"
             % (_tok(name), _tok(F.source.name), _tok(F.target.name))]
    for a in sorted(F.source.objects):
        lines.append("  ob %s => %s" % (_tok(a), _tok(F.ob(a))))
    for f in sorted(F.source.morphisms):
        if not F.source.is_identity(f):
            lines.append("  mor %s => %s" % (_tok(f), _tok(F(f))))
    lines.append("end")
    return "\n".join(lines)


def _emit_nat(name, t):
    lines = ["nat %s: %s => %s"
             % (_tok(name), _tok(t.F.name), _tok(t.G.name))]
    for a in sorted(t.components):
        lines.append("  at %s => %s" % (_tok(a), _tok(t.at(a))))
    lines.append("end")
    return "\n".join(lines)


def _emit_covering(name, K):
    lines = ["covering %s on %s" % (_tok(name), _tok(K.cat.name))]
    for c in sorted(K.cat.objects):
        for r in sorted(K.coverings(c), key=sorted):
            lines.append("  cover %s <-%s"
                         % (_tok(c), "".join(" " + _tok(m) for m in sorted(r))))
    lines.append("end")
    return "\n".join(lines)


def _emit_presheaf(name, P):
    lines = ["presheaf %s on %s" % (_tok(name), _tok(P.cat.name))]
    for c in sorted(P.on_obj):
        lines.append("  set %s =%s"
                     % (_tok(c), "".join(" " + _elem(x) for x in P.at(c))))
    for f in sorted(P.on_mor):
        if not P.cat.is_identity(f):
            pairs = "".join(" %s=>%s" % (_elem(x), _elem(y))
                            for x, y in sorted(P.map(f).items()))
            lines.append("  map %s:%s" % (_tok(f), pairs))
    lines.append("end")
    return "\n".join(lines)


def _emit_monoidal(name, V):
    lines = ["monoidal %s on %s" % (_tok(name), _tok(V.cat.name))]
    lines.append("  unit %s" % _tok(V.unit))
    for (a, b), c in sorted(V.tensor_obj.items()):
        lines.append("  ten %s %s = %s" % (_tok(a), _tok(b), _tok(c)))
    for (f, g), h in sorted(V.tensor_mor.items()):
        lines.append("  tmor %s %s = %s" % (_tok(f), _tok(g), _tok(h)))
    for (a, b, c), m in sorted(V.alpha.items()):
        lines.append("  alpha %s %s %s = %s"
                     % (_tok(a), _tok(b), _tok(c), _tok(m)))
    for a, m in sorted(V.lam.items()):
        lines.append("  lam %s = %s" % (_tok(a), _tok(m)))
    for a, m in sorted(V.rho.items()):
        lines.append("  rho %s = %s" % (_tok(a), _tok(m)))
    if V.sigma is not None:
        for (a, b), m in sorted(V.sigma.items()):
            lines.append("  sigma %s %s = %s" % (_tok(a), _tok(b), _tok(m)))
    lines.append("end")
    return "\n".join(lines)


def _emit_indexed(name, Phi):
    lines = ["indexed %s on %s" % (_tok(name), _tok(Phi.base.name))]
    for a in sorted(Phi.fibre):
        lines.append("  fibre %s = %s" % (_tok(a), _tok(Phi.fibre[a].name)))
    for f in sorted(Phi.inv):
        if not Phi.base.is_identity(f):
            lines.append("  inv %s = %s" % (_tok(f), _tok(Phi.inv[f].name)))
    lines.append("end")
    return "\n".join(lines)


def _emit_fibration(name, P):
    lines = ["fibration %s = %s" % (_tok(name), _tok(P.functor.name))]
    for (f, e), m in sorted((P.cleavage or {}).items()):
        lines.append("  lift %s at %s = %s" % (_tok(f), _tok(e), _tok(m)))
    for (f, d), m in sorted((P.opcleavage or {}).items()):
        lines.append("  oplift %s at %s = %s" % (_tok(f), _tok(d), _tok(m)))
    lines.append("end")
    return "\n".join(lines)


def _emit_trivial(name, decl):
    lines = ["trivial %s in %s" % (_tok(name), _tok(decl.fib))]
    lines.append("  objects" + "".join(" " + _tok(x)
                                       for x in sorted(decl.objects)))
    if decl.mors:
        lines.append("  mors" + "".join(" " + _tok(x)
                                        for x in sorted(decl.mors)))
    lines.append("end")
    return "\n".join(lines)


_EMITTERS = {"category": _emit_category, "functor": _emit_functor,
             "nat": _emit_nat, "covering": _emit_covering,
             "presheaf": _emit_presheaf, "monoidal": _emit_monoidal,
             "indexed": _emit_indexed, "fibration": _emit_fibration,
             "trivial": _emit_trivial}


def emit_workspace(ws):
    """Serialize every entity in canonical order; parses back equal."""
    chunks = []
    for kind in KINDS:
        bucket = ws.bucket(kind)
        for name in sorted(bucket):
            chunks.append(_EMITTERS[kind](name, bucket[name]))
    return "\n\n".join(chunks) + ("\n" if chunks else "")


def _same_block(kind, name, a, b):
    """Entities that serialize to the same block are interchangeable."""
    try:
        return _EMITTERS[kind](name, a) == _EMITTERS[kind](name, b)
    except Exception:
        return False


def _same(a, b):
    if a is b:
        return True
    try:
        return bool(a == b)
    except Exception:
        return False


def add_with_deps(ws, kind, name, entity, where=("<constructed>", 0)):
    """Register an entity together with everything its block refers to,
    skipping dependencies already present under the same name."""
    existing = ws.bucket(kind).get(name)
    if existing is not None:
        if _same(existing, entity):
            return entity
        raise InputError("name clash for %s %s" % (kind, name))
    if kind == "functor":
        add_with_deps(ws, "category", entity.source.name, entity.source, where)
        add_with_deps(ws, "category", entity.target.name, entity.target, where)
    elif kind == "nat":
        add_with_deps(ws, "functor", entity.F.name, entity.F, where)
        add_with_deps(ws, "functor", entity.G.name, entity.G, where)
    elif kind in ("covering", "presheaf", "monoidal"):
        add_with_deps(ws, "category", entity.cat.name, entity.cat, where)
    elif kind == "indexed":
        add_with_deps(ws, "category", entity.base.name, entity.base, where)
        for a in sorted(entity.fibre):
            add_with_deps(ws, "category", entity.fibre[a].name,
                          entity.fibre[a], where)
        for f in sorted(entity.inv):
            if not entity.base.is_identity(f):
                add_with_deps(ws, "functor", entity.inv[f].name,
                              entity.inv[f], where)
    elif kind == "fibration":
        add_with_deps(ws, "functor", entity.functor.name, entity.functor, where)
    return ws.add(kind, name, entity, where)
