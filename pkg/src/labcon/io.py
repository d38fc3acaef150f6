"""Text formats: .lcp instances, certificates, PACE .td, DIMACS CNF, PVC and cross-matching inputs.

Every parser raises :class:`ParseError` carrying the offending line number.
Lines whose first token is ``c`` are comments everywhere.
"""

from __future__ import annotations

from pathlib import Path

from .decomposition import TreeDecomposition
from .errors import LabconError, ParseError
from .graph import ContractionSequence, InstancePair, LabeledGraph, WitnessStructure
from .reductions.cnf import CnfFormula
from .reductions.crossmatch import CrossMatchingInstance
from .reductions.pvc import PvcInstance


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        yield no, tok


def _ints(tokens, no, path, what="label"):
    out = []
    for t in tokens:
        try:
            v = int(t)
        except ValueError:
            raise ParseError(f"expected an integer {what}, got {t!r}", no, path) from None
        if v < 0:
            raise ParseError(f"{what} must be non-negative, got {v}", no, path)
        out.append(v)
    return out


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, path) from None


# ---------------------------------------------------------------------------
# instances


def parse_instance(text: str, path=None) -> InstancePair:
    header = None
    gv, ge, hv, he = [], [], [], []
    sections = {"gv": gv, "ge": ge, "hv": hv, "he": he}
    for no, tok in _lines(text):
        if header is None:
            if tok[0] != "p" or len(tok) != 6 or tok[1] != "lcp":
                raise ParseError("expected header 'p lcp <nG> <mG> <nH> <mH>'", no, path)
            header = _ints(tok[2:], no, path, "count")
            continue
        kind = tok[0]
        if kind not in sections:
            raise ParseError(f"unknown line type {kind!r}", no, path)
        want = 2 if kind in ("gv", "hv") else 3
        if len(tok) != want:
            raise ParseError(f"'{kind}' expects {want - 1} value(s)", no, path)
        vals = _ints(tok[1:], no, path)
        if kind in ("ge", "he") and vals[0] == vals[1]:
            raise ParseError(f"self-loop at {vals[0]}", no, path)
        sections[kind].append((no, vals[0] if want == 2 else tuple(vals)))
    if header is None:
        raise ParseError("missing 'p lcp' header", None, path)
    counts = [len(gv), len(ge), len(hv), len(he)]
    names = ["gv", "ge", "hv", "he"]
    for name, want, got in zip(names, header, counts):
        if want != got:
            raise ParseError(f"header announces {want} '{name}' lines, found {got}", None, path)

    def check_unique(items, name):
        seen = {}
        for no, item in items:
            key = tuple(sorted(item)) if isinstance(item, tuple) else item
            if key in seen:
                raise ParseError(f"duplicate {name} {item}", no, path)
            seen[key] = no

    check_unique(gv, "vertex")
    check_unique(hv, "vertex")
    check_unique(ge, "edge")
    check_unique(he, "edge")
    gset = {v for _, v in gv}
    hset = {v for _, v in hv}
    for no, (u, v) in ge:
        for x in (u, v):
            if x not in gset:
                raise ParseError(f"edge endpoint {x} is not a G-vertex", no, path)
    for no, v in hv:
        if v not in gset:
            raise ParseError(f"H-vertex {v} is not a G-vertex", no, path)
    for no, (u, v) in he:
        for x in (u, v):
            if x not in hset:
                raise ParseError(f"edge endpoint {x} is not an H-vertex", no, path)
    g = LabeledGraph([v for _, v in gv], [e for _, e in ge])
    h = LabeledGraph([v for _, v in hv], [e for _, e in he])
    return InstancePair(g, h)


def format_instance(inst: InstancePair, comment: str | None = None) -> str:
    g, h = inst.g, inst.h
    out = []
    if comment:
        out += [f"c {line}" for line in comment.splitlines()]
    out.append(f"p lcp {g.num_vertices} {g.num_edges} {h.num_vertices} {h.num_edges}")
    out += [f"gv {v}" for v in g.vertices]
    out += [f"ge {u} {v}" for u, v in g.edges()]
    out += [f"hv {v}" for v in h.vertices]
    out += [f"he {u} {v}" for u, v in h.edges()]
    return "\n".join(out) + "\n"


def read_instance(path) -> InstancePair:
    return parse_instance(_read(path), path)


def write_instance(path, inst: InstancePair, comment: str | None = None):
    Path(path).write_text(format_instance(inst, comment))


# ---------------------------------------------------------------------------
# certificates


def parse_certificate(text: str, path=None):
    """Return a ContractionSequence (``ct`` lines) or WitnessStructure (``w`` lines)."""
    kind = None
    pairs = []
    classes: dict[int, set[int]] = {}
    for no, tok in _lines(text):
        if tok[0] not in ("ct", "w"):
            raise ParseError(f"unknown certificate line {tok[0]!r}", no, path)
        if kind is None:
            kind = tok[0]
        elif tok[0] != kind:
            raise ParseError("certificate mixes 'ct' and 'w' lines", no, path)
        if kind == "ct":
            if len(tok) != 3:
                raise ParseError("'ct' expects two labels", no, path)
            pairs.append(tuple(_ints(tok[1:], no, path)))
        else:
            if len(tok) < 2:
                raise ParseError("'w' expects a representative", no, path)
            vals = _ints(tok[1:], no, path)
            if vals[0] in classes:
                raise ParseError(f"representative {vals[0]} listed twice", no, path)
            classes[vals[0]] = set(vals)
    if kind == "w":
        return WitnessStructure(classes)
    return ContractionSequence(tuple(pairs))


def format_certificate(cert) -> str:
    if isinstance(cert, WitnessStructure):
        lines = ["c witness structure"]
        for rep, members in cert.classes.items():
            rest = " ".join(str(m) for m in sorted(members - {rep}))
            lines.append(f"w {rep} {rest}".rstrip())
    else:
        lines = ["c contraction sequence"]
        lines += [f"ct {u} {v}" for u, v in cert.pairs]
    return "\n".join(lines) + "\n"


def read_certificate(path):
    return parse_certificate(_read(path), path)


def write_certificate(path, cert):
    Path(path).write_text(format_certificate(cert))


# ---------------------------------------------------------------------------
# PACE .td; vertex ids are 1-based positions in the G-vertex list


def parse_td(text: str, vertex_order, path=None) -> TreeDecomposition:
    order = list(vertex_order)
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for no, tok in _lines(text):
        if header is None:
            if tok[0] != "s" or len(tok) != 5 or tok[1] != "td":
                raise ParseError("expected header 's td <bags> <max_bag> <vertices>'", no, path)
            header = _ints(tok[2:], no, path, "count")
            if header[2] != len(order):
                raise ParseError(
                    f"decomposition names {header[2]} vertices, the instance has {len(order)}", no, path
                )
            continue
        if tok[0] == "b":
            if len(tok) < 2:
                raise ParseError("bag line needs an id", no, path)
            vals = _ints(tok[1:], no, path, "id")
            bid = vals[0]
            if not 1 <= bid <= header[0]:
                raise ParseError(f"bag id {bid} out of range", no, path)
            if bid in bags:
                raise ParseError(f"bag {bid} defined twice", no, path)
            members = []
            for pos in vals[1:]:
                if not 1 <= pos <= len(order):
                    raise ParseError(f"vertex id {pos} out of range", no, path)
                members.append(order[pos - 1])
            bags[bid] = frozenset(members)
        else:
            if len(tok) != 2:
                raise ParseError("tree edge lines hold two bag ids", no, path)
            a, b = _ints(tok, no, path, "id")
            edges.append((a, b))
    if header is None:
        raise ParseError("missing 's td' header", None, path)
    if len(bags) != header[0]:
        raise ParseError(f"header announces {header[0]} bags, found {len(bags)}", None, path)
    for a, b in edges:
        if a not in bags or b not in bags:
            raise ParseError(f"tree edge ({a}, {b}) names an unknown bag", None, path)
    return TreeDecomposition(bags, edges)


def format_td(td: TreeDecomposition, vertex_order) -> str:
    order = list(vertex_order)
    pos = {v: i + 1 for i, v in enumerate(order)}
    ids = {t: i + 1 for i, t in enumerate(sorted(td.bags))}
    max_bag = max((len(b) for b in td.bags.values()), default=0)
    lines = [f"s td {len(td.bags)} {max_bag} {len(order)}"]
    for t in sorted(td.bags):
        members = " ".join(str(p) for p in sorted(pos[v] for v in td.bags[t]))
        lines.append(f"b {ids[t]} {members}".rstrip())
    for a, b in td.edges:
        lines.append(f"{ids[a]} {ids[b]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# DIMACS CNF


def parse_dimacs(text: str, path=None) -> CnfFormula:
    header = None
    lits: list[int] = []
    clauses = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if header is not None or len(tok) != 4 or tok[1] != "cnf":
                raise ParseError("expected a single header 'p cnf <vars> <clauses>'", no, path)
            header = _ints(tok[2:], no, path, "count")
            continue
        if header is None:
            raise ParseError("clause before 'p cnf' header", no, path)
        for t in tok:
            try:
                lit = int(t)
            except ValueError:
                raise ParseError(f"expected a literal, got {t!r}", no, path) from None
            if lit == 0:
                if len(lits) != 3:
                    raise ParseError(f"clause has {len(lits)} literals, expected 3", no, path)
                clauses.append(tuple(lits))
                lits = []
            else:
                if abs(lit) > header[0]:
                    raise ParseError(f"literal {lit} exceeds {header[0]} variables", no, path)
                lits.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header", None, path)
    if lits:
        raise ParseError("last clause is not terminated by 0", None, path)
    if len(clauses) != header[1]:
        raise ParseError(f"header announces {header[1]} clauses, found {len(clauses)}", None, path)
    return CnfFormula(header[0], tuple(clauses))


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {f.num_clauses}"]
    lines += [" ".join(str(l) for l in c) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# PVC:  p pvc <n> <m> <t> / v <label> / e <u> <v> / part <labels...> / budgets <k1..kt>
# CM:   p cm <n> <m>      / v <label> / e <u> <v> / a <labels...>    / b <labels...>


def _graph_body(text, path, magic, nfields):
    header = None
    verts, edges, extra = [], [], []
    for no, tok in _lines(text):
        if header is None:
            if tok[0] != "p" or len(tok) != 2 + nfields or tok[1] != magic:
                raise ParseError(f"expected header 'p {magic}' with {nfields} counts", no, path)
            header = _ints(tok[2:], no, path, "count")
            continue
        if tok[0] == "v":
            if len(tok) != 2:
                raise ParseError("'v' expects one label", no, path)
            verts.append(_ints(tok[1:], no, path)[0])
        elif tok[0] == "e":
            if len(tok) != 3:
                raise ParseError("'e' expects two labels", no, path)
            edges.append(tuple(_ints(tok[1:], no, path)))
        else:
            extra.append((no, tok))
    if header is None:
        raise ParseError(f"missing 'p {magic}' header", None, path)
    if header[0] != len(verts) or header[1] != len(edges):
        raise ParseError("vertex or edge count differs from the header", None, path)
    try:
        g = LabeledGraph(verts, edges)
    except LabconError as exc:
        raise ParseError(str(exc), None, path) from None
    return header, g, extra


def parse_pvc(text: str, path=None) -> PvcInstance:
    header, g, extra = _graph_body(text, path, "pvc", 3)
    parts, budgets = [], None
    for no, tok in extra:
        if tok[0] == "part":
            parts.append(frozenset(_ints(tok[1:], no, path)))
        elif tok[0] == "budgets":
            budgets = _ints(tok[1:], no, path, "budget")
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", no, path)
    if len(parts) != header[2]:
        raise ParseError(f"header announces {header[2]} parts, found {len(parts)}", None, path)
    if budgets is None:
        raise ParseError("missing 'budgets' line", None, path)
    return PvcInstance(g, tuple(parts), tuple(budgets))


def format_pvc(p: PvcInstance) -> str:
    g = p.graph
    lines = [f"p pvc {g.num_vertices} {g.num_edges} {len(p.partition)}"]
    lines += [f"v {v}" for v in g.vertices]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    lines += ["part " + " ".join(str(v) for v in sorted(c)) for c in p.partition]
    lines.append("budgets " + " ".join(str(k) for k in p.budgets))
    return "\n".join(lines) + "\n"


def parse_crossmatch(text: str, path=None) -> CrossMatchingInstance:
    _, g, extra = _graph_body(text, path, "cm", 2)
    sides = {}
    for no, tok in extra:
        if tok[0] not in ("a", "b"):
            raise ParseError(f"unknown line type {tok[0]!r}", no, path)
        sides[tok[0]] = _ints(tok[1:], no, path)
    if set(sides) != {"a", "b"}:
        raise ParseError("both 'a' and 'b' lines are required", None, path)
    return CrossMatchingInstance(g, frozenset(sides["a"]), frozenset(sides["b"]))


def format_crossmatch(cm: CrossMatchingInstance) -> str:
    g = cm.graph
    lines = [f"p cm {g.num_vertices} {g.num_edges}"]
    lines += [f"v {v}" for v in g.vertices]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    lines.append("a " + " ".join(str(v) for v in sorted(cm.side_a)))
    lines.append("b " + " ".join(str(v) for v in sorted(cm.side_b)))
    return "\n".join(lines) + "\n"
