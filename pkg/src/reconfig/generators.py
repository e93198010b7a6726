"""Deterministic case generators shared by the test suite and the CLI verifier.

These only produce inputs; they never decide answers.  Everything is seeded or
exhaustive so that runs are reproducible.
"""

from __future__ import annotations

import random
from itertools import combinations

from .graphs import (
    Graph,
    Partition,
    ReconfigInstance,
    is_dominating_set,
    is_independent_set,
)

_connected_cache = {}


def connected_graphs(n):
    """All connected labeled simple graphs on vertices 1..n, deterministic order."""
    if n in _connected_cache:
        return _connected_cache[n]
    pairs = list(combinations(range(1, n + 1), 2))
    out = []
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        if _connected(n, edges):
            out.append(Graph(n, edges))
    _connected_cache[n] = out
    return out


def _connected(n, edges):
    if n <= 1:
        return True
    adj = {v: set() for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {1}
    stack = [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def contiguous_partitions(n, k):
    """Partitions of 1..n into k runs of consecutive ids; the deterministic
    family used when a case source needs partitioned instances."""
    if k == 1:
        return [Partition([range(1, n + 1)], n)]
    if k == 2:
        return [
            Partition([range(1, c + 1), range(c + 1, n + 1)], n)
            for c in range(1, n)
        ]
    raise ValueError("only k <= 2 supported")


def valid_sets(graph, pred, k):
    """All k-subsets satisfying the predicate, in lexicographic order."""
    check = is_independent_set if pred == "IS" else is_dominating_set
    return [s for s in combinations(range(1, graph.n + 1), k) if check(graph, s)]


def random_graph(rng, n, p=0.4):
    edges = [(u, v) for u, v in combinations(range(1, n + 1), 2) if rng.random() < p]
    return Graph(n, edges)


def random_instance(rng, n_max=7, k_max=3, rules=("TS", "TJ"), preds=("IS", "DS"),
                    allow_partition=True, force_partition=False, max_tries=60):
    """A random valid instance, or None if sampling kept failing.

    DS instances need denser graphs for small dominating sets to exist, so the
    edge probability is re-rolled per attempt.
    """
    for _ in range(max_tries):
        n = rng.randint(2, n_max)
        k = rng.randint(1, min(k_max, n))
        pred = rng.choice(list(preds))
        rule = rng.choice(list(rules))
        g = random_graph(rng, n, p=rng.uniform(0.25, 0.75))
        partition = None
        if force_partition or (allow_partition and rng.random() < 0.5):
            ids = list(range(1, n + 1))
            rng.shuffle(ids)
            cuts = sorted(rng.sample(range(1, n), k - 1)) if k > 1 else []
            bounds = [0] + cuts + [n]
            parts = [ids[bounds[i]:bounds[i + 1]] for i in range(k)]
            partition = Partition(parts, n)
            choices_start = [rng.choice(p) for p in partition.parts]
            choices_target = [rng.choice(p) for p in partition.parts]
            start, target = tuple(sorted(choices_start)), tuple(sorted(choices_target))
            if len(set(start)) != k or len(set(target)) != k:
                continue
        else:
            start = tuple(sorted(rng.sample(range(1, n + 1), k)))
            target = tuple(sorted(rng.sample(range(1, n + 1), k)))
        check = is_independent_set if pred == "IS" else is_dominating_set
        if not (check(g, start) and check(g, target)):
            continue
        return ReconfigInstance(g, rule, pred, start, target, partition=partition)
    return None


def seeded_rng(seed):
    return random.Random(seed)
