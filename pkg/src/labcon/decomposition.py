"""Tree decompositions: validation, a min-fill heuristic, and nice form.

Nice decompositions use five node kinds (leaf, introduce vertex, introduce
edge, forget, join).  Nodes are stored children-first, so a single forward
pass over ``NiceTreeDecomposition.nodes`` visits every child before its
parent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidDecomposition
from .graph import LabeledGraph, ValidityReport

LEAF = "leaf"
INTRODUCE = "introduce"
INTRODUCE_EDGE = "introduce_edge"
FORGET = "forget"
JOIN = "join"


@dataclass
class TreeDecomposition:
    """Bags keyed by node id plus the undirected tree edges between them."""

    bags: dict[int, frozenset[int]]
    edges: list[tuple[int, int]] = field(default_factory=list)
    root: int | None = None

    def __post_init__(self):
        self.bags = {int(t): frozenset(b) for t, b in self.bags.items()}
        self.edges = [(int(a), int(b)) for a, b in self.edges]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def neighbors(self) -> dict[int, list[int]]:
        nbrs: dict[int, list[int]] = {t: [] for t in self.bags}
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        return nbrs

    def root_id(self) -> int:
        if self.root is not None:
            return self.root
        return min(self.bags)


def validate(td: TreeDecomposition, g: LabeledGraph) -> ValidityReport:
    """Check tree shape, vertex and edge coverage, and subtree connectivity."""
    problems: list[str] = []
    if not td.bags:
        problems.append("decomposition has no bags")
        return ValidityReport(False, problems, None)
    for a, b in td.edges:
        if a not in td.bags or b not in td.bags:
            problems.append(f"tree edge ({a}, {b}) names an unknown bag")
    if problems:
        return ValidityReport(False, problems, td.width)
    if td.root is not None and td.root not in td.bags:
        problems.append(f"root {td.root} is not a bag")

    nbrs = td.neighbors()
    start = td.root_id() if td.root in td.bags or td.root is None else min(td.bags)
    seen = {start}
    stack = [start]
    while stack:
        t = stack.pop()
        for s in nbrs[t]:
            if s not in seen:
                seen.add(s)
                stack.append(s)
    if len(seen) != len(td.bags) or len(td.edges) != len(td.bags) - 1:
        problems.append("bags do not form a tree")

    gv = g.vertex_set
    for t, bag in sorted(td.bags.items()):
        extra = bag - gv
        if extra:
            problems.append(f"bag {t} contains unknown vertices {sorted(extra)}")

    occurs: dict[int, list[int]] = {v: [] for v in g.vertices}
    for t, bag in td.bags.items():
        for v in bag:
            if v in occurs:
                occurs[v].append(t)
    for v in sorted(occurs):
        nodes = occurs[v]
        if not nodes:
            problems.append(f"vertex {v} is in no bag")
            continue
        node_set = set(nodes)
        reach = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            t = stack.pop()
            for s in nbrs[t]:
                if s in node_set and s not in reach:
                    reach.add(s)
                    stack.append(s)
        if reach != node_set:
            problems.append(f"bags containing vertex {v} are not connected")

    for u, v in g.edges():
        if not any(u in bag and v in bag for bag in td.bags.values()):
            problems.append(f"edge ({u}, {v}) is in no bag")

    return ValidityReport(not problems, problems, td.width)


def trivial_decomposition(g: LabeledGraph) -> TreeDecomposition:
    """One bag holding every vertex."""
    return TreeDecomposition({0: frozenset(g.vertices)}, [], 0)


def duplicate_bags(td: TreeDecomposition) -> TreeDecomposition:
    """A redundant but valid copy: every bag gets a twin hung below it."""
    offset = max(td.bags) + 1
    bags = dict(td.bags)
    edges = list(td.edges)
    for t, bag in td.bags.items():
        bags[t + offset] = bag
        edges.append((t, t + offset))
    return TreeDecomposition(bags, edges, td.root)


def elimination_order(g: LabeledGraph) -> list[int]:
    """Min-fill order; ties by current degree, then by smallest label."""
    adj = {v: set(ns) for v, ns in g.adjacency().items()}
    order = []
    while adj:
        best = None
        for v in adj:
            ns = list(adj[v])
            fill = 0
            for i, a in enumerate(ns):
                na = adj[a]
                for b in ns[i + 1:]:
                    if b not in na:
                        fill += 1
            key = (fill, len(ns), v)
            if best is None or key < best:
                best = key
        v = best[2]
        ns = adj.pop(v)
        for a in ns:
            adj[a].discard(v)
            adj[a] |= ns - {a}
        order.append(v)
    return order


def decompose_from_order(g: LabeledGraph, order: list[int]) -> TreeDecomposition:
    """Tree decomposition induced by an elimination order."""
    if not order:
        return TreeDecomposition({0: frozenset()}, [], 0)
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(ns) for v, ns in g.adjacency().items()}
    bags = {}
    for i, v in enumerate(order):
        later = {a for a in adj[v] if pos[a] > i}
        bags[i] = frozenset(later | {v})
        for a in later:
            adj[a] |= later - {a}
    edges = []
    roots = []
    for i, v in enumerate(order):
        later = bags[i] - {v}
        if later:
            parent = min(pos[a] for a in later)
            edges.append((i, parent))
        else:
            roots.append(i)
    # chain the trees of a forest together through their roots
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(bags, edges, roots[-1])


def heuristic_decompose(g: LabeledGraph) -> TreeDecomposition:
    return decompose_from_order(g, elimination_order(g))


# ---------------------------------------------------------------------------
# nice decompositions


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: frozenset[int]
    children: tuple[int, ...] = ()
    vertex: int | None = None
    edge: tuple[int, int] | None = None

    def describe(self) -> str:
        if self.kind in (INTRODUCE, FORGET):
            return f"{self.kind} {self.vertex}"
        if self.kind == INTRODUCE_EDGE:
            return f"{self.kind} {self.edge[0]} {self.edge[1]}"
        return self.kind


@dataclass
class NiceTreeDecomposition:
    nodes: list[NiceNode]
    root: int

    @property
    def width(self) -> int:
        return max((len(n.bag) for n in self.nodes), default=0) - 1

    def count(self, kind: str) -> int:
        return sum(1 for n in self.nodes if n.kind == kind)

    def check(self, g: LabeledGraph) -> ValidityReport:
        """Verify the nice-form invariants against target graph ``g``."""
        problems = []
        introduced: dict[tuple[int, int], int] = {}
        parent_of: dict[int, int] = {}
        for i, n in enumerate(self.nodes):
            for c in n.children:
                if c >= i:
                    problems.append(f"node {i} has child {c} that does not precede it")
                    continue
                if c in parent_of:
                    problems.append(f"node {c} has two parents")
                parent_of[c] = i
            kids = [self.nodes[c] for c in n.children if c < i]
            if n.kind == LEAF:
                if n.children or n.bag:
                    problems.append(f"leaf {i} must have an empty bag and no children")
            elif n.kind == INTRODUCE:
                if len(kids) != 1 or n.vertex in kids[0].bag or kids[0].bag | {n.vertex} != n.bag:
                    problems.append(f"introduce node {i} is malformed")
            elif n.kind == FORGET:
                if len(kids) != 1 or n.vertex not in kids[0].bag or kids[0].bag - {n.vertex} != n.bag:
                    problems.append(f"forget node {i} is malformed")
            elif n.kind == INTRODUCE_EDGE:
                u, v = n.edge
                if len(kids) != 1 or kids[0].bag != n.bag or u not in n.bag or v not in n.bag:
                    problems.append(f"introduce-edge node {i} is malformed")
                key = (min(u, v), max(u, v))
                if key in introduced:
                    problems.append(f"edge {key} introduced twice")
                introduced[key] = i
            elif n.kind == JOIN:
                if len(kids) != 2 or any(k.bag != n.bag for k in kids):
                    problems.append(f"join node {i} is malformed")
            else:
                problems.append(f"node {i} has unknown kind {n.kind!r}")
        if self.nodes:
            if self.root != len(self.nodes) - 1 or self.nodes[self.root].bag:
                problems.append("root must be the last node and have an empty bag")
            if len(parent_of) != len(self.nodes) - 1:
                problems.append("nodes do not form a single rooted tree")
        gedges = g.edge_set()
        missing = gedges - introduced.keys()
        extra = introduced.keys() - gedges
        for e in sorted(missing):
            problems.append(f"edge {e} is never introduced")
        for e in sorted(extra):
            problems.append(f"introduced edge {e} is not an edge of the graph")
        forgotten = [n.vertex for n in self.nodes if n.kind == FORGET]
        if sorted(forgotten) != sorted(g.vertices):
            problems.append("every vertex must be forgotten exactly once")
        return ValidityReport(not problems, problems, self.width)

    def to_tree_decomposition(self) -> TreeDecomposition:
        bags = {i: n.bag for i, n in enumerate(self.nodes)}
        edges = [(c, i) for i, n in enumerate(self.nodes) for c in n.children]
        return TreeDecomposition(bags, edges, self.root)


def nicify(td: TreeDecomposition, g: LabeledGraph) -> NiceTreeDecomposition:
    """Convert a valid decomposition of ``g`` into nice form of equal width."""
    report = validate(td, g)
    if not report.valid:
        raise InvalidDecomposition("; ".join(report.violations))

    nodes: list[NiceNode] = []
    pending = set(g.edge_set())

    def add(node: NiceNode) -> int:
        nodes.append(node)
        return len(nodes) - 1

    def forget(top: int, x: int) -> int:
        bag = nodes[top].bag
        for y in sorted(bag - {x}):
            e = (min(x, y), max(x, y))
            if e in pending:
                pending.discard(e)
                top = add(NiceNode(INTRODUCE_EDGE, bag, (top,), edge=e))
        return add(NiceNode(FORGET, bag - {x}, (top,), vertex=x))

    def morph(top: int, target: frozenset[int]) -> int:
        for x in sorted(nodes[top].bag - target):
            top = forget(top, x)
        for x in sorted(target - nodes[top].bag):
            top = add(NiceNode(INTRODUCE, nodes[top].bag | {x}, (top,), vertex=x))
        return top

    nbrs = td.neighbors()
    root = td.root_id()
    # iterative post-order over the rooted decomposition tree
    parent = {root: None}
    order = []
    stack = [root]
    while stack:
        t = stack.pop()
        order.append(t)
        for s in sorted(nbrs[t], reverse=True):
            if s not in parent:
                parent[s] = t
                stack.append(s)
    kids: dict[int, list[int]] = {t: [] for t in td.bags}
    for t in order:
        if parent[t] is not None:
            kids[parent[t]].append(t)

    top_of: dict[int, int] = {}
    for t in reversed(order):
        bag = td.bags[t]
        if not kids[t]:
            top_of[t] = morph(add(NiceNode(LEAF, frozenset())), bag)
            continue
        tops = [morph(top_of.pop(c), bag) for c in sorted(kids[t])]
        cur = tops[0]
        for other in tops[1:]:
            cur = add(NiceNode(JOIN, bag, (cur, other)))
        top_of[t] = cur
    final = morph(top_of[root], frozenset())
    if pending:
        raise InvalidDecomposition(f"edges {sorted(pending)} could not be placed")
    return NiceTreeDecomposition(nodes, final)


__all__ = [
    "TreeDecomposition",
    "NiceNode",
    "NiceTreeDecomposition",
    "validate",
    "trivial_decomposition",
    "duplicate_bags",
    "elimination_order",
    "decompose_from_order",
    "heuristic_decompose",
    "nicify",
    "LEAF",
    "INTRODUCE",
    "INTRODUCE_EDGE",
    "FORGET",
    "JOIN",
]
