"""Rule-to-rule compilers between the four reconfiguration move rules.

Each function rewrites an instance under one rule (TS, TJ, or their
partitioned forms) into an instance under another, preserving the answer and
mapping minimal sequence lengths through an exact affine function of the
source length and token count.  The cycle of compilers

    TJ -> TS -> partitioned TS -> partitioned TJ -> TJ

covers both predicates, so any rule can reach any other by chaining.

The constructions share a vocabulary of gadget vertices:

    v^i       copy of source vertex v for token slot i
    f^i       parking vertex that slot i's token ends on
    z_*       a two-state latch that flips only once the tokens correspond to
              the final set, pinning the minimal length
    gar/y/z'  guardian vertices that pin a token in place (domination only)
    x^{i,j}_v collision detectors: undominated iff slots i and j both picked v
    v'        domination checkers mirroring the source closed neighborhoods
    v^a..v^d  paired copies whose tokens must agree on one source vertex
    delta_*   edge tokens that serialize one slide into three jumps
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .graphs import Graph, Partition, ReconfigInstance


@dataclass(frozen=True)
class ReductionReport:
    """A produced instance plus the book-keeping of its length map."""

    reduction_name: str
    source_tokens: int
    target_tokens: int
    length_map: str
    produced: ReconfigInstance
    slope: int
    offset: int
    zero_to_zero: bool = False  # map sends 0 to 0 despite a nonzero offset

    def length_of(self, ell):
        """Minimal target length corresponding to minimal source length ell."""
        if ell == 0 and self.zero_to_zero:
            return 0
        return self.slope * ell + self.offset


def _require(inst, rule, pred, partitioned):
    want = "%s %s/%s" % ("partitioned" if partitioned else "unpartitioned", rule, pred)
    have = "%s %s/%s" % (
        "partitioned" if inst.partition is not None else "unpartitioned",
        inst.rule,
        inst.pred,
    )
    if have != want:
        raise PreconditionError("source must be %s, got %s" % (want, have))


def _affine_desc(slope, offset, zero_to_zero):
    if slope == 1:
        core = "l -> l" if offset == 0 else "l -> l + %d" % offset
    elif offset == 0:
        core = "l -> %d*l" % slope
    else:
        core = "l -> %d*l + %d" % (slope, offset)
    if zero_to_zero and offset:
        core += ", except 0 -> 0"
    return core


def _finish(name, src, produced, slope, offset, zero_to_zero=False):
    if src.bound is not None:
        b = 0 if (src.bound == 0 and zero_to_zero) else slope * src.bound + offset
        produced = produced.with_bound(b, src.bound_encoding or "unary")
    return ReductionReport(
        name, src.k, len(produced.start), _affine_desc(slope, offset, zero_to_zero),
        produced, slope, offset, zero_to_zero,
    )


class _Build:
    """Vertex-id allocator with labels and an undirected edge bag."""

    def __init__(self):
        self.n = 0
        self.labels = {}
        self.edges = set()

    def vertex(self, label):
        self.n += 1
        self.labels[self.n] = label
        return self.n

    def connect(self, u, v):
        if u != v:
            self.edges.add((min(u, v), max(u, v)))

    def clique(self, vs):
        vs = list(vs)
        for a in range(len(vs)):
            for b in range(a + 1, len(vs)):
                self.connect(vs[a], vs[b])

    def graph(self):
        return Graph(self.n, sorted(self.edges), labels=self.labels)


def _copies(b, g, k, tag="^"):
    """k vertex-copy maps, allocated copy-major so ids are (i-1)*n + v."""
    return [
        {v: b.vertex("%s%s%d" % (g.label(v), tag, i)) for v in range(1, g.n + 1)}
        for i in range(1, k + 1)
    ]


def tj_to_ts_is(inst):
    """TJ independent-set instance -> TS instance; lengths map l -> l+k+1.

    Slot cliques force one token per slot; a latch token on z_init blocks the
    parking vertices until the slots spell out the target set, so the closing
    k+1 slides are forced and counted exactly once.
    """
    _require(inst, "TJ", "IS", False)
    g, k = inst.graph, inst.k
    b = _Build()
    copy = _copies(b, g, k)
    fs = [b.vertex("f^%d" % i) for i in range(1, k + 1)]
    z_init = b.vertex("z_init")
    z_fin = b.vertex("z_fin")
    for i in range(k):
        b.clique(copy[i].values())
        for v in range(1, g.n + 1):
            b.connect(fs[i], copy[i][v])
        b.connect(fs[i], z_init)
    for i in range(k):
        for j in range(i + 1, k):
            for v, w in g.edges:
                b.connect(copy[i][v], copy[j][w])
                b.connect(copy[i][w], copy[j][v])
            for v in range(1, g.n + 1):
                b.connect(copy[i][v], copy[j][v])
    for i in range(k):
        for v in range(1, g.n + 1):
            if v not in inst.target:
                b.connect(copy[i][v], z_fin)
    b.connect(z_init, z_fin)
    start = sorted([copy[i][v] for i, v in enumerate(inst.start)] + [z_init])
    target = sorted(fs + [z_fin])
    out = ReconfigInstance(b.graph(), "TS", "IS", start, target, name="tj-ts-is")
    return _finish("tj-ts-is", inst, out, 1, k + 1)


def ts_to_pts_is(inst):
    """TS independent-set instance -> partitioned TS; lengths map l -> l+k+1.

    Same latch construction, but the slots are full graph copies held one
    token each by the partition instead of by cliques.
    """
    _require(inst, "TS", "IS", False)
    g, k = inst.graph, inst.k
    b = _Build()
    copy = _copies(b, g, k)
    fs = [b.vertex("f^%d" % i) for i in range(1, k + 1)]
    z_init = b.vertex("z_init")
    z_fin = b.vertex("z_fin")
    for i in range(k):
        for v, w in g.edges:
            b.connect(copy[i][v], copy[i][w])
        for v in range(1, g.n + 1):
            b.connect(fs[i], copy[i][v])
        b.connect(fs[i], z_init)
    for i in range(k):
        for j in range(i + 1, k):
            for v, w in g.edges:
                b.connect(copy[i][v], copy[j][w])
                b.connect(copy[i][w], copy[j][v])
            for v in range(1, g.n + 1):
                b.connect(copy[i][v], copy[j][v])
    for i in range(k):
        for v in range(1, g.n + 1):
            if v not in inst.target:
                b.connect(copy[i][v], z_fin)
    b.connect(z_init, z_fin)
    parts = [sorted(list(copy[i].values()) + [fs[i]]) for i in range(k)]
    parts.append([z_init, z_fin])
    start = sorted([copy[i][v] for i, v in enumerate(inst.start)] + [z_init])
    target = sorted(fs + [z_fin])
    out = ReconfigInstance(
        b.graph(), "TS", "IS", start, target,
        partition=Partition(parts, b.n), name="ts-pts-is",
    )
    return _finish("ts-pts-is", inst, out, 1, k + 1)


def pts_to_ptj_is(inst):
    """Partitioned TS independent set -> partitioned TJ; lengths map l -> 3l.

    Each slide v-w becomes the jump triple v^b -> delta_vw, v^a -> w^a,
    delta_vw -> w^b; the clique on the delta vertices lets at most one part
    be mid-slide, so no interleaving shortcut exists.
    """
    _require(inst, "TS", "IS", True)
    g, P = inst.graph, inst.partition
    b = _Build()
    a = {}
    bb = {}
    for part in P.parts:
        for v in part:
            a[v] = b.vertex("%s.a" % g.label(v))
    for part in P.parts:
        for v in part:
            bb[v] = b.vertex("%s.b" % g.label(v))
    intra = [
        sorted(e for e in g.edges if e[0] in part and e[1] in part)
        for part in map(set, P.parts)
    ]
    delta = {}
    for plan in intra:
        for v, w in plan:
            delta[(v, w)] = b.vertex("d.%s%s" % (g.label(v), g.label(w)))
    for part in P.parts:
        for v in part:
            for w in part:
                if v != w:
                    b.connect(a[v], bb[w])
    for v, w in g.edges:
        b.connect(a[v], a[w])
    for part, plan in zip(P.parts, intra):
        for v, w in plan:
            d = delta[(v, w)]
            b.connect(d, bb[v])
            b.connect(d, bb[w])
            # pin the parked edge token to edges at the a-token's position;
            # without these edges the triple would simulate a jump, not a slide
            for x in part:
                if x != v and x != w:
                    b.connect(d, a[x])
    b.clique(delta.values())
    parts = [sorted(a[v] for v in part) for part in P.parts]
    for i, part in enumerate(P.parts):
        side = [bb[v] for v in part] + [delta[e] for e in intra[i]]
        parts.append(sorted(side))
    start = sorted([a[v] for v in inst.start] + [bb[v] for v in inst.start])
    target = sorted([a[v] for v in inst.target] + [bb[v] for v in inst.target])
    out = ReconfigInstance(
        b.graph(), "TJ", "IS", start, target,
        partition=Partition(parts, b.n), name="pts-ptj-is",
    )
    return _finish("pts-ptj-is", inst, out, 3, 0)


def ptj_to_tj_is(inst):
    """Partitioned TJ independent set -> plain TJ; lengths map l -> 3l.

    The two cliques per part pin two tokens to each gadget, simulating the
    partition without one; a single shared delta vertex per part serializes
    the three-jump simulation of one source jump.
    """
    _require(inst, "TJ", "IS", True)
    g, P = inst.graph, inst.partition
    b = _Build()
    a = {}
    bb = {}
    for part in P.parts:
        for v in part:
            a[v] = b.vertex("%s.a" % g.label(v))
    for part in P.parts:
        for v in part:
            bb[v] = b.vertex("%s.b" % g.label(v))
    ds = [b.vertex("d.%d" % i) for i in range(1, P.k + 1)]
    for i, part in enumerate(P.parts):
        b.clique([a[v] for v in part])
        b.clique([bb[v] for v in part])
        for v in part:
            for w in part:
                if v != w:
                    b.connect(a[v], bb[w])
            b.connect(ds[i], bb[v])
    for v, w in g.edges:
        b.connect(a[v], a[w])
    b.clique(ds)
    start = sorted([a[v] for v in inst.start] + [bb[v] for v in inst.start])
    target = sorted([a[v] for v in inst.target] + [bb[v] for v in inst.target])
    out = ReconfigInstance(b.graph(), "TJ", "IS", start, target, name="ptj-tj-is")
    return _finish("ptj-tj-is", inst, out, 3, 0)


def tj_to_ts_ds(inst):
    """TJ dominating-set instance -> TS instance; lengths map l -> l+k+1.

    The slot cliques are as in the independent-set version, but one-per-slot
    is now enforced by guardian vertices, vertex collisions by the x
    detectors, and domination of the source graph by the v' checkers.
    """
    _require(inst, "TJ", "DS", False)
    g, k = inst.graph, inst.k
    n = g.n
    b = _Build()
    copy = _copies(b, g, k)
    gar = [b.vertex("gar^%d" % i) for i in range(1, k + 1)]
    garp = [b.vertex("gar'^%d" % i) for i in range(1, k + 1)]
    xs = {}
    for i in range(k):
        for j in range(i + 1, k):
            for v in range(1, n + 1):
                xs[(i, j, v)] = b.vertex("x.%d.%d.%s" % (i + 1, j + 1, g.label(v)))
    prime = {v: b.vertex("%s'" % g.label(v)) for v in range(1, n + 1)}
    fs = [b.vertex("f^%d" % i) for i in range(1, k + 1)]
    z_init = b.vertex("z_init")
    z_fin = b.vertex("z_fin")
    z_gar = b.vertex("z_gar")
    z_garp = b.vertex("z_gar'")
    for i in range(k):
        b.clique(copy[i].values())
        for v in range(1, n + 1):
            b.connect(gar[i], copy[i][v])
            b.connect(garp[i], copy[i][v])
    for (i, j, v), x in xs.items():
        for w in range(1, n + 1):
            if w != v:
                b.connect(x, copy[i][w])
                b.connect(x, copy[j][w])
    for v in range(1, n + 1):
        for i in range(k):
            for w in g.closed_neighborhood(v):
                b.connect(prime[v], copy[i][w])
    for i in range(k):
        b.connect(fs[i], gar[i])
        b.connect(fs[i], garp[i])
        for v in inst.target:
            b.connect(fs[i], copy[i][v])
        b.connect(fs[i], z_init)
    for z in (z_gar, z_garp):
        b.connect(z, z_init)
        b.connect(z, z_fin)
    b.connect(z_fin, z_init)
    for v in range(1, n + 1):
        b.connect(z_fin, prime[v])
        for i in range(k):
            b.connect(z_fin, copy[i][v])
    for x in xs.values():
        b.connect(z_fin, x)
    start = sorted([copy[i][v] for i, v in enumerate(inst.start)] + [z_init])
    target = sorted(fs + [z_fin])
    out = ReconfigInstance(b.graph(), "TS", "DS", start, target, name="tj-ts-ds")
    return _finish("tj-ts-ds", inst, out, 1, k + 1)


def ts_to_pts_ds(inst):
    """TS dominating-set instance -> partitioned TS; lengths map l -> l+k+1.

    Slots become graph copies held by the partition; y_dom keeps every copy
    vertex dominated from a separate checker part so slides inside a copy
    mirror slides in the source exactly.
    """
    _require(inst, "TS", "DS", False)
    g, k = inst.graph, inst.k
    n = g.n
    b = _Build()
    copy = _copies(b, g, k)
    xs = {}
    for i in range(k):
        for j in range(i + 1, k):
            for v in range(1, n + 1):
                xs[(i, j, v)] = b.vertex("x.%d.%d.%s" % (i + 1, j + 1, g.label(v)))
    prime = {v: b.vertex("%s'" % g.label(v)) for v in range(1, n + 1)}
    y_dom = b.vertex("y_dom")
    y_gar = b.vertex("y_gar")
    y_garp = b.vertex("y_gar'")
    fs = [b.vertex("f^%d" % i) for i in range(1, k + 1)]
    z_init = b.vertex("z_init")
    z_fin = b.vertex("z_fin")
    z_gar = b.vertex("z_gar")
    z_garp = b.vertex("z_gar'")
    for i in range(k):
        for v, w in g.edges:
            b.connect(copy[i][v], copy[i][w])
    for (i, j, v), x in xs.items():
        for w in range(1, n + 1):
            if w != v:
                b.connect(x, copy[i][w])
                b.connect(x, copy[j][w])
    for v in range(1, n + 1):
        for i in range(k):
            for w in g.closed_neighborhood(v):
                b.connect(prime[v], copy[i][w])
    b.connect(y_dom, y_gar)
    b.connect(y_dom, y_garp)
    for i in range(k):
        for v in range(1, n + 1):
            b.connect(y_dom, copy[i][v])
    for i in range(k):
        for v in inst.target:
            b.connect(fs[i], copy[i][v])
        b.connect(fs[i], z_init)
    for z in (z_gar, z_garp):
        b.connect(z, z_init)
        b.connect(z, z_fin)
    b.connect(z_fin, z_init)
    for v in range(1, n + 1):
        b.connect(z_fin, prime[v])
        for i in range(k):
            b.connect(z_fin, copy[i][v])
    for x in xs.values():
        b.connect(z_fin, x)
    parts = [sorted(list(copy[i].values()) + [fs[i]]) for i in range(k)]
    checker = sorted(list(prime.values()) + list(xs.values()) + [y_dom, y_gar, y_garp])
    parts.append(checker)
    parts.append([z_init, z_fin, z_gar, z_garp])
    start = sorted([copy[i][v] for i, v in enumerate(inst.start)] + [y_dom, z_init])
    target = sorted(fs + [y_dom, z_fin])
    out = ReconfigInstance(
        b.graph(), "TS", "DS", start, target,
        partition=Partition(parts, b.n), name="ts-pts-ds",
    )
    return _finish("ts-pts-ds", inst, out, 1, k + 1)


def pts_to_ptj_ds(inst):
    """Partitioned TS dominating set -> partitioned TJ; lengths map l -> 3l+1
    (0 when the source needs no moves).

    Each part keeps two agreeing tokens on mirrored a/c copies; the edge
    token must sit on delta_vw to cover the b/d copies exposed mid-slide, so
    a slide costs three jumps, plus one final jump parking the edge token.
    """
    _require(inst, "TS", "DS", True)
    g, P = inst.graph, inst.partition
    b = _Build()
    a = {}
    c = {}
    bb = {}
    dd = {}
    for part in P.parts:
        for v in part:
            a[v] = b.vertex("%s.a" % g.label(v))
    for part in P.parts:
        for v in part:
            c[v] = b.vertex("%s.c" % g.label(v))
    for part in P.parts:
        for v in part:
            bb[v] = b.vertex("%s.b" % g.label(v))
    for part in P.parts:
        for v in part:
            dd[v] = b.vertex("%s.d" % g.label(v))
    intra = [
        sorted(e for e in g.edges if e[0] in part and e[1] in part)
        for part in map(set, P.parts)
    ]
    delta = {}
    for plan in intra:
        for v, w in plan:
            delta[(v, w)] = b.vertex("d.%s%s" % (g.label(v), g.label(w)))
    d_empty = b.vertex("d.empty")
    prime = {v: b.vertex("%s'" % g.label(v)) for v in range(1, g.n + 1)}
    z_dom = b.vertex("z_dom")
    for part in P.parts:
        for v in part:
            b.connect(a[v], bb[v])
            b.connect(c[v], dd[v])
            for w in part:
                if v != w:
                    b.connect(a[v], dd[w])
                    b.connect(c[v], bb[w])
        b.clique([a[v] for v in part])
        b.clique([c[v] for v in part])
    for (v, w), d in delta.items():
        b.connect(d, bb[v])
        b.connect(d, bb[w])
        b.connect(d, dd[v])
        b.connect(d, dd[w])
    b.clique(list(delta.values()) + [d_empty])
    for v in range(1, g.n + 1):
        for w in g.closed_neighborhood(v):
            b.connect(prime[v], a[w])
    parts = [sorted(a[v] for v in part) for part in P.parts]
    parts += [sorted(c[v] for v in part) for part in P.parts]
    parts.append(sorted(list(delta.values()) + [d_empty]))
    checker = sorted(
        list(prime.values()) + list(bb.values()) + list(dd.values()) + [z_dom]
    )
    parts.append(checker)
    start = sorted(
        [a[v] for v in inst.start] + [c[v] for v in inst.start] + [d_empty, z_dom]
    )
    target = sorted(
        [a[v] for v in inst.target] + [c[v] for v in inst.target] + [d_empty, z_dom]
    )
    out = ReconfigInstance(
        b.graph(), "TJ", "DS", start, target,
        partition=Partition(parts, b.n), name="pts-ptj-ds",
    )
    return _finish("pts-ptj-ds", inst, out, 3, 1, zero_to_zero=True)


def ptj_to_tj_ds(inst):
    """Partitioned TJ dominating set -> plain TJ; lengths map unchanged.

    Guardian pairs per part are dominated only from inside the part, so any
    size-k dominating set keeps one token per part and jumps stay part-local.
    """
    _require(inst, "TJ", "DS", True)
    g, P = inst.graph, inst.partition
    n = g.n
    labels = {v: g.label(v) for v in range(1, n + 1)} if g.labels else {}
    edges = list(g.edges)
    for i, part in enumerate(P.parts, start=1):
        gar = n + 2 * i - 1
        garp = n + 2 * i
        labels[gar] = "gar.%d" % i
        labels[garp] = "gar'.%d" % i
        for v in part:
            edges.append((v, gar))
            edges.append((v, garp))
    gg = Graph(n + 2 * P.k, edges, labels=labels or None)
    out = ReconfigInstance(gg, "TJ", "DS", inst.start, inst.target, name="ptj-tj-ds")
    return _finish("ptj-tj-ds", inst, out, 1, 0)


IS_REDUCTIONS = {
    "tj-ts-is": tj_to_ts_is,
    "ts-pts-is": ts_to_pts_is,
    "pts-ptj-is": pts_to_ptj_is,
    "ptj-tj-is": ptj_to_tj_is,
}

DS_REDUCTIONS = {
    "tj-ts-ds": tj_to_ts_ds,
    "ts-pts-ds": ts_to_pts_ds,
    "pts-ptj-ds": pts_to_ptj_ds,
    "ptj-tj-ds": ptj_to_tj_ds,
}

REDUCTIONS = {**IS_REDUCTIONS, **DS_REDUCTIONS}
