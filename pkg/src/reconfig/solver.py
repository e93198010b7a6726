"""Exact BFS solver over the configuration graph, plus sequence verification.

States are canonical sorted token tuples.  The BFS expands successors in
lexicographic order, so shortest witnesses are deterministic.  This module is
the ground truth that every compiler in the package is checked against.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .errors import PreconditionError
from .graphs import as_token_set, satisfies_predicate


@dataclass
class SolveResult:
    reachable: bool
    shortest_length: int | None
    states_explored: int
    witness: list | None
    bound_applied: int | None = None  # effective bound after clamping, None when unbounded
    bound_clamped: bool = False


@dataclass
class VerifyResult:
    ok: bool
    reason: str | None = None  # machine-readable code when not ok
    index: int | None = None   # offending element (or move-target) position

    def __bool__(self):
        return self.ok


def state_space_size(inst):
    """Number of k-token placements: C(n,k), or the product of part sizes."""
    if inst.partition is not None:
        size = 1
        for part in inst.partition.parts:
            size *= len(part)
        return size
    return math.comb(inst.graph.n, inst.k)


def _legal_moves(inst):
    """Precompute per-vertex candidate target lists for a single token move."""
    g = inst.graph
    n = g.n
    candidates = [()] * (n + 1)
    for u in range(1, n + 1):
        if inst.rule == "TS":
            pool = g._adj[u]
        else:
            pool = range(1, n + 1)
        if inst.partition is not None:
            pi = inst.partition.part_index(u)
            pool = [w for w in pool if inst.partition.part_index(w) == pi]
        candidates[u] = tuple(sorted(w for w in pool if w != u))
    return candidates


def _successor_masks(inst, state, occ, candidates):
    """Yield (new_occ, u, w) for every legal move out of `state`."""
    g = inst.graph
    if inst.pred == "DS":
        # count[x] = number of tokens whose closed neighborhood covers x;
        # a move u->w is legal iff every vertex covered only by u stays
        # covered by w.
        count = [0] * (g.n + 1)
        for v in state:
            m = g.closed_mask[v] >> 1
            x = 1
            while m:
                if m & 1:
                    count[x] += 1
                m >>= 1
                x += 1
        crit = {}
        for u in state:
            cm = 0
            m = g.closed_mask[u] >> 1
            x = 1
            while m:
                if m & 1 and count[x] == 1:
                    cm |= 1 << x
                m >>= 1
                x += 1
            crit[u] = cm
    for u in state:
        occ_without = occ ^ (1 << u)
        for w in candidates[u]:
            wb = 1 << w
            if occ & wb:
                continue
            if inst.pred == "IS":
                if g.nbr_mask[w] & occ_without:
                    continue
            else:
                if crit[u] & ~g.closed_mask[w]:
                    continue
            yield occ_without | wb, u, w


def _unmask(mask):
    out = []
    mask >>= 1  # bit v corresponds to vertex v, bit 0 is unused
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


def successors(inst, s):
    """All token sets reachable from s by one legal move, sorted, deduplicated."""
    state = as_token_set(s, inst.graph.n)
    if not satisfies_predicate(inst, state):
        raise PreconditionError("state %s fails the predicate" % (state,))
    occ = 0
    for v in state:
        occ |= 1 << v
    candidates = _legal_moves(inst)
    out = {_unmask(m) for m, _, _ in _successor_masks(inst, state, occ, candidates)}
    return sorted(out)


def solve(inst):
    """Breadth-first search from start; exact shortest move count.

    With a bound present, `reachable` means reachable within the bound; the
    bound is clamped to state_space_size - 1 first (a shortest sequence never
    repeats a set), and the clamp is reported on the result.
    """
    start = inst.start
    target = inst.target

    bound_applied = None
    bound_clamped = False
    if inst.bound is not None:
        cap = max(state_space_size(inst) - 1, 0)
        bound_applied = min(inst.bound, cap)
        bound_clamped = bound_applied < inst.bound

    if start == target:
        return SolveResult(True, 0, 1, [start], bound_applied, bound_clamped)

    candidates = _legal_moves(inst)
    dist = {start: 0}
    parent = {start: None}
    queue = deque([start])
    explored = 0
    found = None
    while queue:
        state = queue.popleft()
        d = dist[state]
        if bound_applied is not None and d >= bound_applied:
            continue
        explored += 1
        occ = 0
        for v in state:
            occ |= 1 << v
        nxt = sorted(_unmask(m) for m, _, _ in _successor_masks(inst, state, occ, candidates))
        for s2 in nxt:
            if s2 in dist:
                continue
            dist[s2] = d + 1
            parent[s2] = state
            if s2 == target:
                found = s2
                queue.clear()
                break
            queue.append(s2)
        if found:
            break

    if found is None:
        return SolveResult(False, None, explored, None, bound_applied, bound_clamped)
    path = []
    cur = found
    while cur is not None:
        path.append(cur)
        cur = parent[cur]
    path.reverse()
    return SolveResult(True, len(path) - 1, explored, path, bound_applied, bound_clamped)


def verify_sequence(inst, seq):
    """Check a move sequence end to end; returns a VerifyResult with a reason code.

    Codes: empty, not-a-set, start-mismatch, target-mismatch, predicate,
    illegal-move, bound.
    """
    if not seq:
        return VerifyResult(False, "empty")
    states = []
    for i, raw in enumerate(seq):
        try:
            states.append(as_token_set(raw, inst.graph.n))
        except Exception:
            return VerifyResult(False, "not-a-set", i)
    if states[0] != inst.start:
        return VerifyResult(False, "start-mismatch", 0)
    if states[-1] != inst.target:
        return VerifyResult(False, "target-mismatch", len(states) - 1)
    for i, s in enumerate(states):
        if not satisfies_predicate(inst, s):
            return VerifyResult(False, "predicate", i)
    for i in range(1, len(states)):
        prev, cur = states[i - 1], states[i]
        gone = set(prev) - set(cur)
        new = set(cur) - set(prev)
        if len(prev) != len(cur) or len(gone) != 1 or len(new) != 1:
            return VerifyResult(False, "illegal-move", i)
        u, w = gone.pop(), new.pop()
        if inst.rule == "TS" and not inst.graph.has_edge(u, w):
            return VerifyResult(False, "illegal-move", i)
        if inst.partition is not None and (
            inst.partition.part_index(u) != inst.partition.part_index(w)
        ):
            return VerifyResult(False, "illegal-move", i)
    if inst.bound is not None and len(states) - 1 > inst.bound:
        return VerifyResult(False, "bound")
    return VerifyResult(True)
