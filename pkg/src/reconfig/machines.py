"""Turing machines with a k-cell work tape, symmetric or plain nondeterministic.

A directional transition (p,(ab,+1,cd),q) fires when the head sits at cell
i < k with tape[i] = a and tape[i+1] = b; it writes c and d and moves the head
to i+1.  Left moves mirror this (read a at i-1, b at i; head moves to i-1).
A stationary transition (p,(a,0,b),q) rewrites the current cell.  The inverse
of (ab,delta,cd) is (cd,-delta,ab); of (a,0,b) it is (b,0,a).  A machine of
kind "stm" must be closed under inverses.

Blank is symbol 1; the initial configuration is (start, head 1, all-blank).

Machine text format ('#' comments allowed):

    stm|ntm <|S|> <n> <k>
    start <p>
    accept <p1> <p2> ...
    state <p1> <p2> ...                   optional, declares states that no
                                          other line mentions
    t <p> <a> <b> <+1|-1> <c> <d> <q>     directional transition
    t0 <p> <a> <b> <q>                    stationary transition
    in <tidx> <e> <idir>                  optional input-tape annotation for
                                          the tidx-th transition line (1-based)

Annotated machines model a read-only input tape: a transition carrying (e,d)
only fires when the input head scans symbol e, and moves the input head by d.
Such machines must be grounded with remove_input_tape() before any
configuration-level operation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import count

from .errors import FormatError, InputError, PreconditionError, ResourceLimitError

KINDS = ("stm", "ntm")


@dataclass(frozen=True)
class Transition:
    src: str
    pre: tuple   # (a, b) when directional, (a,) when stationary
    move: int    # -1, 0, +1
    post: tuple
    dst: str
    ann: tuple | None = None  # (input_symbol, input_move) or None

    def inverse(self):
        ann = None if self.ann is None else (self.ann[0], -self.ann[1])
        return Transition(self.dst, self.post, -self.move, self.pre, self.src, ann)

    def key(self):
        return (self.src, self.move, self.pre, self.post, self.dst, self.ann or ())


def close_under_inverse(transitions):
    """The inverse closure of a transition collection, in deterministic order."""
    out = set(transitions)
    out.update(t.inverse() for t in transitions)
    return tuple(sorted(out, key=Transition.key))


class TuringMachine:
    def __init__(self, kind, alphabet_size, tape_cells, transitions, start, accepting,
                 states=None):
        if kind not in KINDS:
            raise InputError("kind must be stm or ntm, not %r" % (kind,))
        if alphabet_size < 1:
            raise InputError("alphabet must contain at least the blank symbol")
        if tape_cells < 1:
            raise InputError("need at least one tape cell")
        self.kind = kind
        self.n = alphabet_size
        self.k = tape_cells
        self.start = start
        self.accepting = frozenset(accepting)
        self.transitions = tuple(sorted(set(transitions), key=Transition.key))

        names = {start} | self.accepting
        annotated = unannotated = 0
        for t in self.transitions:
            names.add(t.src)
            names.add(t.dst)
            self._check_transition(t)
            if t.ann is None:
                unannotated += 1
            else:
                annotated += 1
        if annotated and unannotated:
            raise InputError("either all transitions carry input annotations or none")
        self.annotated = bool(annotated)
        if states is not None:
            extra = set(states)
            if not extra >= names:
                raise InputError("state list misses %s" % sorted(names - extra))
            names = extra
        self.states = tuple(sorted(names))

        if kind == "stm":
            have = set(self.transitions)
            for t in self.transitions:
                if t.inverse() not in have:
                    raise InputError("not closed under inverses: missing %r" % (t.inverse(),))

    def _check_transition(self, t):
        if t.move not in (-1, 0, 1):
            raise InputError("bad move %r" % (t.move,))
        width = 1 if t.move == 0 else 2
        if len(t.pre) != width or len(t.post) != width:
            raise InputError("transition %r has wrong read/write width" % (t,))
        for sym in t.pre + t.post:
            if not (1 <= sym <= self.n):
                raise InputError("symbol %r out of range" % (sym,))
        if t.ann is not None:
            e, d = t.ann
            if e < 1:
                raise InputError("input symbol %r out of range" % (e,))
            if d not in (-1, 0, 1):
                raise InputError("bad input move %r" % (d,))

    @property
    def stationary_count(self):
        return sum(1 for t in self.transitions if t.move == 0)

    def __eq__(self, other):
        return isinstance(other, TuringMachine) and (
            (self.kind, self.n, self.k, self.start, self.accepting, set(self.transitions))
            == (other.kind, other.n, other.k, other.start, other.accepting, set(other.transitions))
        )

    def __hash__(self):
        return hash((self.kind, self.n, self.k, self.start, self.accepting, self.transitions))

    def __repr__(self):
        return "TuringMachine(%s, |S|=%d, n=%d, k=%d, |T|=%d)" % (
            self.kind, len(self.states), self.n, self.k, len(self.transitions),
        )


def initial_config(m):
    return (m.start, 1, (1,) * m.k)


def _require_grounded(m):
    if m.annotated:
        raise PreconditionError(
            "machine carries input-tape annotations; apply remove_input_tape first"
        )


def check_config(m, c):
    state, head, tape = c
    if state not in m.states:
        raise InputError("unknown state %r" % (state,))
    if not (1 <= head <= m.k):
        raise InputError("head position %r out of range" % (head,))
    if len(tape) != m.k or any(not (1 <= s <= m.n) for s in tape):
        raise InputError("bad tape %r" % (tape,))


def config_successors(m, c):
    """All configurations one applicable transition away, sorted."""
    _require_grounded(m)
    check_config(m, c)
    state, head, tape = c
    out = set()
    for t in m.transitions:
        if t.src != state:
            continue
        if t.move == 0:
            if tape[head - 1] == t.pre[0]:
                nt = list(tape)
                nt[head - 1] = t.post[0]
                out.add((t.dst, head, tuple(nt)))
        elif t.move == 1:
            if head < m.k and tape[head - 1] == t.pre[0] and tape[head] == t.pre[1]:
                nt = list(tape)
                nt[head - 1], nt[head] = t.post
                out.add((t.dst, head + 1, tuple(nt)))
        else:
            if head > 1 and tape[head - 2] == t.pre[0] and tape[head - 1] == t.pre[1]:
                nt = list(tape)
                nt[head - 2], nt[head - 1] = t.post
                out.add((t.dst, head - 1, tuple(nt)))
    return sorted(out)


def reachable_configs(m, limit=None):
    """BFS closure of the initial configuration."""
    _require_grounded(m)
    start = initial_config(m)
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for c2 in config_successors(m, c):
            if c2 not in seen:
                if limit is not None and len(seen) >= limit:
                    raise ResourceLimitError("configuration limit %d exceeded" % limit)
                seen.add(c2)
                queue.append(c2)
    return seen


def accepts(m, limit=None):
    """True iff some reachable configuration is in an accepting state."""
    return any(c[0] in m.accepting for c in reachable_configs(m, limit))


def canonical_accepting_config(m):
    if len(m.accepting) != 1:
        raise PreconditionError("canonical configuration needs a single accepting state")
    (acc,) = m.accepting
    return (acc, 1, (1,) * m.k)


def is_normal(m):
    """Single accepting state, no stationary transitions, and acceptance
    equivalent to reaching the canonical all-blank head-1 configuration."""
    _require_grounded(m)
    if len(m.accepting) != 1 or m.stationary_count:
        return False
    reach = reachable_configs(m)
    return (canonical_accepting_config(m) in reach) == any(c[0] in m.accepting for c in reach)


def _fresh(taken, base):
    if base not in taken:
        taken.add(base)
        return base
    for i in count(2):
        name = "%s%d" % (base, i)
        if name not in taken:
            taken.add(name)
            return name


def normalize(m):
    """Rebuild m so that it has a single accepting state, no stationary
    transitions, and accepts iff the canonical configuration is reachable.

    Already-normal machines are returned unchanged.  The language ("does the
    machine accept") is preserved exactly; symmetry is preserved by adding the
    inverse of every added transition.
    """
    _require_grounded(m)
    if is_normal(m):
        return m
    if m.k < 2:
        raise PreconditionError(
            "normalization needs k >= 2: a single-cell machine admits no "
            "directional transitions to dance or sweep with"
        )

    sym = m.kind == "stm"
    taken = set(m.states)
    trans = list(m.transitions)
    syms = range(1, m.n + 1)

    def add(t):
        trans.append(t)
        if sym:
            trans.append(t.inverse())

    # Stage 1: funnel all accepting states into one via tape-preserving
    # stationary bridges (danced away in stage 2).
    if len(m.accepting) == 1:
        (funnel,) = m.accepting
    else:
        funnel = _fresh(taken, "uacc")
        for f0 in sorted(m.accepting):
            for s in syms:
                add(Transition(f0, (s,), 0, (s,), funnel))

    # Stage 2: replace every stationary transition (p,(a,0,b),q) by two-cell
    # dances through fresh states.  The right dance covers head < k, the left
    # dance covers head > 1.  For symmetric machines each inverse-closed pair
    # is danced once, sharing fresh states, so closure is kept.
    stationary = [t for t in trans if t.move == 0]
    trans = [t for t in trans if t.move != 0]
    done = set()
    for idx, t in enumerate(sorted(stationary, key=Transition.key)):
        if t in done:
            continue
        done.add(t)
        if sym:
            done.add(t.inverse())
        a, b = t.pre[0], t.post[0]
        for s in syms:
            right = _fresh(taken, "dn%dr%d" % (idx, s))
            add(Transition(t.src, (a, s), 1, (b, s), right))
            add(Transition(right, (b, s), -1, (b, s), t.dst))
            left = _fresh(taken, "dn%dl%d" % (idx, s))
            add(Transition(t.src, (s, a), -1, (s, b), left))
            add(Transition(left, (s, b), 1, (s, b), t.dst))

    # Stage 3: from the funnel state, sweep the tape to all-blank and park the
    # head on cell 1, accepting only there.  Junk interleavings of the sweep
    # are harmless: every path into these states starts at the funnel.
    mr = _fresh(taken, "swr")   # rightward pass, blanks the current cell
    wl = _fresh(taken, "swl")   # leftward pass, blanks the current cell
    fr = _fresh(taken, "swf")   # blanks cell 1, steps onto cell 2
    acc = _fresh(taken, "acc")
    for x in syms:
        for s in syms:
            add(Transition(funnel, (x, s), 1, (1, s), mr))
            add(Transition(funnel, (s, x), -1, (s, 1), wl))
            add(Transition(mr, (x, s), 1, (1, s), mr))
            add(Transition(mr, (s, x), -1, (s, 1), wl))
            add(Transition(wl, (s, x), -1, (s, 1), wl))
        add(Transition(wl, (x, 1), 1, (1, 1), fr))
    add(Transition(fr, (1, 1), -1, (1, 1), acc))

    return TuringMachine(m.kind, m.n, m.k, trans, m.start, {acc})


def remove_input_tape(m, word):
    """Ground an input-annotated machine over a concrete input word.

    Every state p becomes |word| states p@j; a transition annotated (e,d)
    connects position j to j+d wherever word[j] = e.  Moves that would leave
    the word are dropped.  The result carries no annotations.
    """
    if not m.annotated:
        raise PreconditionError("machine has no input-tape annotations")
    word = tuple(word)
    if not word:
        raise PreconditionError("input word must be nonempty")
    if any(e < 1 for e in word):
        raise InputError("input symbols must be positive")
    L = len(word)

    def name(p, j):
        return "%s@%d" % (p, j)

    trans = []
    for t in m.transitions:
        e, d = t.ann
        for j in range(1, L + 1):
            if word[j - 1] == e and 1 <= j + d <= L:
                trans.append(Transition(name(t.src, j), t.pre, t.move, t.post, name(t.dst, j + d)))
    accepting = {name(p, j) for p in sorted(m.accepting) for j in range(1, L + 1)}
    # All |S| * |word| product states exist even when no transition touches them.
    full = {name(p, j) for p in m.states for j in range(1, L + 1)}
    return TuringMachine(m.kind, m.n, m.k, trans, name(m.start, 1), accepting, states=full)


def parse_machine(text):
    """Parse the machine text format."""
    kind = None
    decl = {}
    start = None
    accepting = None
    extra_states = set()
    rows = []  # (lineno, Transition) in file order, for `in` back-references
    anns = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kw, rest = fields[0], fields[1:]
        if kind is None:
            if kw not in KINDS:
                raise FormatError("expected 'stm' or 'ntm' header", lineno)
            if len(rest) != 3:
                raise FormatError("header expects <|S|> <n> <k>", lineno)
            kind = kw
            try:
                decl["S"], decl["n"], decl["k"] = (int(x) for x in rest)
            except ValueError:
                raise FormatError("bad integer in header", lineno) from None
            continue
        if kw == "start":
            if len(rest) != 1 or start is not None:
                raise FormatError("start expects one state", lineno)
            start = rest[0]
        elif kw == "accept":
            if accepting is not None:
                raise FormatError("duplicate accept line", lineno)
            accepting = rest
        elif kw == "state":
            # extra otherwise-unmentioned states (products keep isolated ones)
            extra_states.update(rest)
        elif kw == "t":
            if len(rest) != 7:
                raise FormatError("t expects <p> <a> <b> <dir> <c> <d> <q>", lineno)
            p, a, b, move, c, d, q = rest
            if move not in ("+1", "-1", "1"):
                raise FormatError("direction must be +1 or -1", lineno)
            try:
                tr = Transition(p, (int(a), int(b)), int(move), (int(c), int(d)), q)
            except ValueError:
                raise FormatError("bad symbol", lineno) from None
            rows.append((lineno, tr))
        elif kw == "t0":
            if len(rest) != 4:
                raise FormatError("t0 expects <p> <a> <b> <q>", lineno)
            p, a, b, q = rest
            try:
                tr = Transition(p, (int(a),), 0, (int(b),), q)
            except ValueError:
                raise FormatError("bad symbol", lineno) from None
            rows.append((lineno, tr))
        elif kw == "in":
            vals = _ints(rest, lineno, 3)
            tidx, e, d = vals
            if not (1 <= tidx <= len(rows)):
                raise FormatError("annotation references transition %d, have %d" % (tidx, len(rows)), lineno)
            if tidx in anns:
                raise FormatError("transition %d annotated twice" % tidx, lineno)
            if d not in (-1, 0, 1):
                raise FormatError("input direction must be -1, 0, or 1", lineno)
            anns[tidx] = (e, d)
        else:
            raise FormatError("unknown directive %r" % kw, lineno)

    if kind is None:
        raise FormatError("missing machine header")
    if start is None:
        raise FormatError("missing start line")
    if accepting is None:
        raise FormatError("missing accept line")
    trans = []
    for i, (lineno, tr) in enumerate(rows, start=1):
        if i in anns:
            tr = Transition(tr.src, tr.pre, tr.move, tr.post, tr.dst, anns[i])
        trans.append(tr)
    try:
        states = None
        if extra_states:
            states = extra_states | {start} | set(accepting)
            states.update(t.src for t in trans)
            states.update(t.dst for t in trans)
        m = TuringMachine(kind, decl["n"], decl["k"], trans, start, accepting, states=states)
    except InputError as exc:
        raise FormatError(str(exc)) from exc
    if len(m.states) != decl["S"]:
        raise FormatError("header declares %d states, found %d" % (decl["S"], len(m.states)))
    if len(m.transitions) != len(rows):
        raise FormatError("duplicate transition line")
    return m


def _ints(fields, lineno, count_):
    try:
        vals = [int(x) for x in fields]
    except ValueError:
        raise FormatError("bad integer", lineno) from None
    if len(vals) != count_:
        raise FormatError("expected %d fields, got %d" % (count_, len(vals)), lineno)
    return vals


def emit_machine(m):
    """Serialize a machine; parse_machine(emit_machine(x)) == x."""
    out = ["%s %d %d %d" % (m.kind, len(m.states), m.n, m.k)]
    out.append("start %s" % m.start)
    out.append("accept %s" % " ".join(sorted(m.accepting)))
    mentioned = {m.start} | set(m.accepting)
    for t in m.transitions:
        mentioned.add(t.src)
        mentioned.add(t.dst)
    isolated = sorted(set(m.states) - mentioned)
    if isolated:
        out.append("state %s" % " ".join(isolated))
    anns = []
    for i, t in enumerate(m.transitions, start=1):
        if t.move == 0:
            out.append("t0 %s %d %d %s" % (t.src, t.pre[0], t.post[0], t.dst))
        else:
            out.append("t %s %d %d %+d %d %d %s" % (
                t.src, t.pre[0], t.pre[1], t.move, t.post[0], t.post[1], t.dst))
        if t.ann is not None:
            anns.append("in %d %d %d" % (i, t.ann[0], t.ann[1]))
    out.extend(anns)
    return "\n".join(out) + "\n"
