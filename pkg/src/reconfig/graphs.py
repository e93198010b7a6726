"""Graphs, token sets, partitions, and the shared instance model.

Instance text format (UTF-8, line based, everything after '#' is a comment):

    p reconfig <n> <m>
    rule TS|TJ
    pred IS|DS
    e <u> <v>                     m lines, unordered, 1-based dense ids
    start <v1> <v2> ...
    target <v1> <v2> ...
    part <i> <v1> <v2> ...        optional, one line per token set, i = 1..k
    bound <value> unary|binary    optional

The `p` line must come first; the remaining directives may appear in any
order.  The bound's encoding tag only matters for serialization and size
accounting, it never changes what the instance means.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FormatError, InputError

RULES = ("TS", "TJ")
PREDICATES = ("IS", "DS")


def as_token_set(vertices, n=None):
    """Canonicalize an iterable of vertex ids into a sorted tuple.

    Rejects duplicates, and ids outside [1, n] when n is given.
    """
    vs = sorted(vertices)
    for i, v in enumerate(vs):
        if not isinstance(v, int):
            raise InputError("vertex id %r is not an integer" % (v,))
        if v < 1 or (n is not None and v > n):
            raise InputError("vertex id %d out of range" % v)
        if i > 0 and vs[i - 1] == v:
            raise InputError("duplicate vertex id %d in token set" % v)
    return tuple(vs)


class Graph:
    """Undirected simple graph on the vertex set {1, ..., n}.

    Optional labels are human-readable names for generated gadget vertices;
    they are ignored by equality and never serialized.
    """

    def __init__(self, n, edges=(), labels=None):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        self.n = n
        seen = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError("edge (%r, %r) out of range" % (u, v))
            if u == v:
                raise InputError("self-loop at vertex %d" % u)
            seen.add((min(u, v), max(u, v)))
        self.edges = tuple(sorted(seen))
        self.m = len(self.edges)
        self.labels = dict(labels) if labels else {}

        adj = [set() for _ in range(n + 1)]
        nbr = [0] * (n + 1)
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        self._adj = [frozenset(s) for s in adj]
        # Bitmask adjacency; bit v of nbr_mask[u] is set iff uv is an edge.
        self.nbr_mask = nbr
        self.closed_mask = [0] + [nbr[v] | (1 << v) for v in range(1, n + 1)]
        self.all_mask = (1 << (n + 1)) - 2  # bits 1..n

    def check_vertex(self, v):
        if not (1 <= v <= self.n):
            raise InputError("vertex id %r out of range" % (v,))

    def neighbors(self, v):
        self.check_vertex(v)
        return self._adj[v]

    def closed_neighborhood(self, v):
        self.check_vertex(v)
        return self._adj[v] | {v}

    def has_edge(self, u, v):
        self.check_vertex(u)
        self.check_vertex(v)
        return v in self._adj[u]

    def label(self, v):
        return self.labels.get(v, str(v))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return "Graph(n=%d, m=%d)" % (self.n, self.m)


class Partition:
    """A partition of {1, ..., n} into named parts P_1, ..., P_k."""

    def __init__(self, parts, n):
        self.parts = tuple(as_token_set(p, n) for p in parts)
        self.n = n
        covered = [None] * (n + 1)
        for i, part in enumerate(self.parts):
            if not part:
                raise InputError("empty part %d" % (i + 1))
            for v in part:
                if covered[v] is not None:
                    raise InputError("vertex %d in two parts" % v)
                covered[v] = i
        missing = [v for v in range(1, n + 1) if covered[v] is None]
        if missing:
            raise InputError("vertices %s not covered by any part" % missing)
        self._part_of = covered

    @property
    def k(self):
        return len(self.parts)

    def part_index(self, v):
        """0-based index of the part containing v."""
        if not (1 <= v <= self.n):
            raise InputError("vertex id %r out of range" % (v,))
        return self._part_of[v]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts and self.n == other.n

    def __hash__(self):
        return hash((self.parts, self.n))

    def __repr__(self):
        return "Partition(k=%d, n=%d)" % (self.k, self.n)


def is_independent_set(g, s):
    """True iff no edge of g has both endpoints in s."""
    vs = as_token_set(s, g.n)
    mask = 0
    for v in vs:
        mask |= 1 << v
    for v in vs:
        if g.nbr_mask[v] & mask:
            return False
    return True


def is_dominating_set(g, s):
    """True iff every vertex of g is in the closed neighborhood of some token."""
    vs = as_token_set(s, g.n)
    cover = 0
    for v in vs:
        cover |= g.closed_mask[v]
    return cover & g.all_mask == g.all_mask


@dataclass(frozen=True)
class ReconfigInstance:
    """A reconfiguration question: transform start into target by single moves.

    rule TS slides tokens along edges, TJ jumps them anywhere; a partition
    additionally confines each token to its own part.  pred IS keeps every
    intermediate set independent, DS keeps it dominating.  An optional bound
    limits the number of moves.
    """

    graph: Graph
    rule: str
    pred: str
    start: tuple
    target: tuple
    partition: Partition | None = None
    bound: int | None = None
    bound_encoding: str | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        g = self.graph
        if self.rule not in RULES:
            raise InputError("unknown rule %r" % (self.rule,))
        if self.pred not in PREDICATES:
            raise InputError("unknown predicate %r" % (self.pred,))
        object.__setattr__(self, "start", as_token_set(self.start, g.n))
        object.__setattr__(self, "target", as_token_set(self.target, g.n))
        if len(self.start) != len(self.target):
            raise InputError(
                "start has %d tokens but target has %d" % (len(self.start), len(self.target))
            )
        if self.partition is not None:
            if self.partition.n != g.n:
                raise InputError("partition covers %d vertices, graph has %d" % (self.partition.n, g.n))
            if self.partition.k != self.k:
                raise InputError(
                    "partition has %d parts for %d tokens" % (self.partition.k, self.k)
                )
        if self.bound is None:
            if self.bound_encoding is not None:
                raise InputError("bound encoding given without a bound")
        else:
            if self.bound < 0:
                raise InputError("negative bound")
            if self.bound_encoding not in ("unary", "binary"):
                raise InputError("bound encoding must be unary or binary")
        for which, s in (("start", self.start), ("target", self.target)):
            if not satisfies_predicate(self, s):
                raise InputError("%s set fails the %s predicate" % (which, self.pred))

    @property
    def k(self):
        return len(self.start)

    def with_bound(self, value, encoding="unary"):
        return ReconfigInstance(
            self.graph, self.rule, self.pred, self.start, self.target,
            partition=self.partition, bound=value, bound_encoding=encoding, name=self.name,
        )


def satisfies_predicate(inst, s):
    """Predicate check for a candidate token set of inst.

    Dispatches to IS or DS, and when the instance is partitioned also requires
    exactly one token per part.
    """
    vs = as_token_set(s, inst.graph.n)
    if inst.partition is not None:
        counts = [0] * inst.partition.k
        for v in vs:
            counts[inst.partition.part_index(v)] += 1
        if counts != [1] * inst.partition.k:
            return False
    if inst.pred == "IS":
        return is_independent_set(inst.graph, vs)
    return is_dominating_set(inst.graph, vs)


def _parse_ints(parts, lineno, what, count=None):
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise FormatError("bad integer in %s" % what, lineno) from None
    if count is not None and len(vals) != count:
        raise FormatError("%s expects %d fields, got %d" % (what, count, len(vals)), lineno)
    return vals


def parse_instance(text):
    """Parse the instance text format into a ReconfigInstance."""
    n = m = None
    rule = pred = None
    edges = []
    start = target = None
    part_lines = {}
    bound = None
    bound_encoding = None
    header_seen = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind, rest = fields[0], fields[1:]
        if not header_seen:
            if kind != "p":
                raise FormatError("expected 'p reconfig <n> <m>' header", lineno)
            if len(rest) != 3 or rest[0] != "reconfig":
                raise FormatError("malformed header", lineno)
            n, m = _parse_ints(rest[1:], lineno, "header", 2)
            if n < 0 or m < 0:
                raise FormatError("negative count in header", lineno)
            header_seen = True
            continue
        if kind == "p":
            raise FormatError("duplicate header", lineno)
        elif kind == "rule":
            if len(rest) != 1 or rest[0] not in RULES:
                raise FormatError("rule must be TS or TJ", lineno)
            if rule is not None:
                raise FormatError("duplicate rule line", lineno)
            rule = rest[0]
        elif kind == "pred":
            if len(rest) != 1 or rest[0] not in PREDICATES:
                raise FormatError("pred must be IS or DS", lineno)
            if pred is not None:
                raise FormatError("duplicate pred line", lineno)
            pred = rest[0]
        elif kind == "e":
            u, v = _parse_ints(rest, lineno, "edge", 2)
            edges.append((u, v))
        elif kind == "start":
            if start is not None:
                raise FormatError("duplicate start line", lineno)
            start = _parse_ints(rest, lineno, "start")
        elif kind == "target":
            if target is not None:
                raise FormatError("duplicate target line", lineno)
            target = _parse_ints(rest, lineno, "target")
        elif kind == "part":
            vals = _parse_ints(rest, lineno, "part")
            if not vals:
                raise FormatError("part line without index", lineno)
            idx, members = vals[0], vals[1:]
            if idx in part_lines:
                raise FormatError("duplicate part %d" % idx, lineno)
            part_lines[idx] = members
        elif kind == "bound":
            if len(rest) != 2:
                raise FormatError("bound expects '<value> unary|binary'", lineno)
            if bound is not None:
                raise FormatError("duplicate bound line", lineno)
            (bound,) = _parse_ints(rest[:1], lineno, "bound", 1)
            if rest[1] not in ("unary", "binary"):
                raise FormatError("bound encoding must be unary or binary", lineno)
            bound_encoding = rest[1]
        else:
            raise FormatError("unknown directive %r" % kind, lineno)

    if not header_seen:
        raise FormatError("missing header")
    if len(edges) != m:
        raise FormatError("header declares %d edges, found %d" % (m, len(edges)))
    if len({(min(u, v), max(u, v)) for u, v in edges}) != len(edges):
        raise FormatError("duplicate edge line")
    if rule is None or pred is None:
        raise FormatError("missing rule or pred line")
    if start is None or target is None:
        raise FormatError("missing start or target line")

    partition = None
    if part_lines:
        k = len(start)
        if sorted(part_lines) != list(range(1, k + 1)):
            raise FormatError("part indices must be exactly 1..%d" % k)
        partition = _build(Partition, [part_lines[i] for i in range(1, k + 1)], n)
    graph = _build(Graph, n, edges)
    return _build(
        ReconfigInstance, graph, rule, pred, start, target,
        partition=partition, bound=bound, bound_encoding=bound_encoding,
    )


def _build(ctor, *args, **kwargs):
    # Surface structural problems in parsed documents as format errors.
    try:
        return ctor(*args, **kwargs)
    except InputError as exc:
        raise FormatError(str(exc)) from exc


def emit_instance(inst):
    """Serialize an instance; parse_instance(emit_instance(x)) == x."""
    g = inst.graph
    out = ["p reconfig %d %d" % (g.n, g.m)]
    out.append("rule %s" % inst.rule)
    out.append("pred %s" % inst.pred)
    for u, v in g.edges:
        out.append("e %d %d" % (u, v))
    out.append("start %s" % " ".join(str(v) for v in inst.start))
    out.append("target %s" % " ".join(str(v) for v in inst.target))
    if inst.partition is not None:
        for i, part in enumerate(inst.partition.parts, start=1):
            out.append("part %d %s" % (i, " ".join(str(v) for v in part)))
    if inst.bound is not None:
        out.append("bound %d %s" % (inst.bound, inst.bound_encoding))
    return "\n".join(out) + "\n"
