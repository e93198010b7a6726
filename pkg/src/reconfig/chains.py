"""Chained positive satisfiability with partitioned exactly-one-true steps.

An instance has q variables per step, partitioned into k parts; each of the r
steps sets exactly one variable per part to true.  A CNF formula F over 2q
positive variables (1..q refer to step t, q+1..2q to step t+1) must hold for
every consecutive pair of steps.  r may be astronomically large (bounded by
q^k); satisfiability is decided by powering the step-transition relation.

Text format ('#' comments allowed):

    chain <k> <q> <r>
    part <i> <j...>          k lines, partitioning 1..q
    clause <j...>            one line per clause, indices in [1,2q]; a bare
                             `clause` line is the empty (unsatisfiable) clause
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import FormatError, InputError

R_LIMIT = 2**62


@dataclass(frozen=True)
class ChainSatInstance:
    k: int
    q: int
    r: int
    partition: tuple   # k sorted tuples covering 1..q
    formula: tuple     # clauses as sorted tuples of indices in [1, 2q]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.k < 1 or self.q < 1:
            raise InputError("need k >= 1 and q >= 1")
        object.__setattr__(
            self, "partition", tuple(tuple(sorted(p)) for p in self.partition)
        )
        object.__setattr__(
            self, "formula", tuple(tuple(sorted(set(c))) for c in self.formula)
        )
        if len(self.partition) != self.k:
            raise InputError(
                "expected %d parts, got %d" % (self.k, len(self.partition))
            )
        seen = set()
        for p in self.partition:
            if not p:
                raise InputError("empty part")
            for j in p:
                if not (1 <= j <= self.q) or j in seen:
                    raise InputError("parts must partition 1..q")
                seen.add(j)
        if len(seen) != self.q:
            raise InputError("parts must cover 1..q")
        for c in self.formula:
            for j in c:
                if not (1 <= j <= 2 * self.q):
                    raise InputError("clause index %d out of range" % j)
        if self.r < 1:
            raise InputError("need r >= 1")
        if self.r > R_LIMIT:
            raise InputError("r too large to solve (limit 2^62)")

    @property
    def num_clauses(self):
        return len(self.formula)

    @property
    def max_clause_width(self):
        return max((len(c) for c in self.formula), default=0)


@dataclass(frozen=True)
class ChainAssignment:
    """r rows; row t is a k-tuple picking one variable index from each part."""

    choices: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "choices", tuple(tuple(row) for row in self.choices)
        )


def check_assignment(inst, a):
    if len(a.choices) != inst.r:
        raise InputError("expected %d rows, got %d" % (inst.r, len(a.choices)))
    for row in a.choices:
        if len(row) != inst.k:
            raise InputError("row %r is not a %d-tuple" % (row, inst.k))
        for i, j in enumerate(row):
            if j not in inst.partition[i]:
                raise InputError("row %r picks %d outside part %d" % (row, j, i + 1))


def pair_satisfies(inst, now, nxt):
    """Does F hold with per-part choices `now` at step t and `nxt` at t+1?"""
    now_true = set(now)
    nxt_true = set(nxt)
    for clause in inst.formula:
        if not any(
            (j <= inst.q and j in now_true) or (j > inst.q and j - inst.q in nxt_true)
            for j in clause
        ):
            return False
    return True


def evaluate(inst, a):
    """True iff every consecutive pair of rows of `a` satisfies F."""
    check_assignment(inst, a)
    rows = a.choices
    return all(pair_satisfies(inst, rows[t], rows[t + 1]) for t in range(inst.r - 1))


@dataclass
class ChainSolveResult:
    satisfiable: bool
    witness: ChainAssignment | None  # populated when r is small enough to store


_WITNESS_LIMIT = 4096


def states(inst):
    """All per-step choice tuples (one variable per part), sorted."""
    return sorted(product(*inst.partition))


def solve(inst):
    """Exact satisfiability of the chained formula.

    For small r this is a forward DP with witness recovery.  For huge r the
    step relation is treated as a boolean matrix and raised to the (r-1)-th
    power by squaring; rows are Python-int bitsets, so the state count stays
    the only real cost while r can approach 2^62.
    """
    st = states(inst)
    if inst.r == 1:
        return ChainSolveResult(True, ChainAssignment((st[0],)))
    index = {s: i for i, s in enumerate(st)}
    step = [0] * len(st)  # bitset of allowed successor states
    for s in st:
        bits = 0
        for t in st:
            if pair_satisfies(inst, s, t):
                bits |= 1 << index[t]
        step[index[s]] = bits

    if inst.r <= _WITNESS_LIMIT:
        alive = [set(range(len(st)))]
        for _ in range(inst.r - 1):
            cur = set()
            for i in alive[-1]:
                b = step[i]
                j = 0
                while b:
                    if b & 1:
                        cur.add(j)
                    b >>= 1
                    j += 1
            alive.append(cur)
            if not cur:
                return ChainSolveResult(False, None)
        # walk backwards picking the smallest state at each step
        pick = min(alive[-1])
        chosen = [pick]
        for t in range(inst.r - 2, -1, -1):
            pick = min(i for i in alive[t] if step[i] >> chosen[-1] & 1)
            chosen.append(pick)
        chosen.reverse()
        return ChainSolveResult(True, ChainAssignment(tuple(st[i] for i in chosen)))

    # boolean matrix power: a pair (s, t) with t reachable from s in exactly
    # r-1 steps witnesses an r-step chain
    mat = step
    power = inst.r - 1
    reach = None  # identity so far
    while power:
        if power & 1:
            reach = mat if reach is None else _bool_mul(reach, mat)
        power >>= 1
        if power:
            mat = _bool_mul(mat, mat)
    return ChainSolveResult(any(row for row in reach), None)


def _bool_mul(a, b):
    out = [0] * len(a)
    for i, row in enumerate(a):
        acc = 0
        j = 0
        r = row
        while r:
            if r & 1:
                acc |= b[j]
            r >>= 1
            j += 1
        out[i] = acc
    return out


def parse_chain(text):
    """Parse the chain text format."""
    header = None
    part_lines = {}
    formula = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kw, rest = fields[0], fields[1:]
        if header is None:
            if kw != "chain" or len(rest) != 3:
                raise FormatError("expected 'chain <k> <q> <r>' header", lineno)
            try:
                header = tuple(int(x) for x in rest)
            except ValueError:
                raise FormatError("bad integer in header", lineno) from None
            continue
        if kw == "part":
            try:
                vals = [int(x) for x in rest]
            except ValueError:
                raise FormatError("bad integer in part line", lineno) from None
            if not vals:
                raise FormatError("part line without index", lineno)
            if vals[0] in part_lines:
                raise FormatError("duplicate part %d" % vals[0], lineno)
            part_lines[vals[0]] = vals[1:]
        elif kw == "clause":
            try:
                formula.append([int(x) for x in rest])
            except ValueError:
                raise FormatError("bad integer in clause", lineno) from None
        else:
            raise FormatError("unknown directive %r" % kw, lineno)
    if header is None:
        raise FormatError("missing chain header")
    k, q, r = header
    if sorted(part_lines) != list(range(1, k + 1)):
        raise FormatError("part indices must be exactly 1..%d" % k)
    try:
        return ChainSatInstance(
            k, q, r, [part_lines[i] for i in range(1, k + 1)], formula
        )
    except InputError as exc:
        raise FormatError(str(exc)) from exc


def emit_chain(inst):
    """Serialize a chain instance; parse_chain(emit_chain(x)) == x."""
    out = ["chain %d %d %d" % (inst.k, inst.q, inst.r)]
    for i, p in enumerate(inst.partition, start=1):
        out.append("part %d %s" % (i, " ".join(str(j) for j in p)))
    for c in inst.formula:
        out.append(("clause %s" % " ".join(str(j) for j in c)).rstrip())
    return "\n".join(out) + "\n"
