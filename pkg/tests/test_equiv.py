import pytest

from reconfig.equiv import (
    REDUCTIONS,
    pts_to_ptj_ds,
    pts_to_ptj_is,
    ptj_to_tj_ds,
    ptj_to_tj_is,
    tj_to_ts_ds,
    tj_to_ts_is,
    ts_to_pts_ds,
    ts_to_pts_is,
)
from reconfig.errors import PreconditionError
from reconfig.generators import random_instance, seeded_rng
from reconfig.graphs import Graph, Partition, ReconfigInstance
from reconfig.solver import solve


def check_map(reduction, src):
    """Solve both sides and insist the minimal lengths line up exactly."""
    rep = reduction(src)
    a = solve(src)
    b = solve(rep.produced)
    assert a.reachable == b.reachable, rep.reduction_name
    if a.reachable:
        assert b.shortest_length == rep.length_of(a.shortest_length), (
            rep.reduction_name, a.shortest_length, b.shortest_length)
    return rep


def sample(rng, rule, pred, partitioned, n_max=4, k_max=2):
    while True:
        inst = random_instance(
            rng, n_max=n_max, k_max=k_max, rules=(rule,), preds=(pred,),
            allow_partition=partitioned, force_partition=partitioned,
        )
        if inst is not None:
            return inst


def test_tj_ts_is_examples():
    g = Graph(2, [(1, 2)])
    jump = ReconfigInstance(g, "TJ", "IS", (1,), (2,))
    assert solve(jump).shortest_length == 1
    rep = check_map(tj_to_ts_is, jump)
    assert solve(rep.produced).shortest_length == 3
    rest = ReconfigInstance(g, "TJ", "IS", (1,), (1,))
    rep = check_map(tj_to_ts_is, rest)
    assert solve(rep.produced).shortest_length == 2  # latch flip + one park


def test_ts_pts_is_examples():
    path = Graph(4, [(1, 2), (2, 3), (3, 4)])
    inst = ReconfigInstance(path, "TS", "IS", (1, 3), (2, 4))
    assert solve(inst).shortest_length == 2
    rep = check_map(ts_to_pts_is, inst)
    assert solve(rep.produced).shortest_length == 5
    lone = ReconfigInstance(Graph(1), "TS", "IS", (1,), (1,))
    rep = check_map(ts_to_pts_is, lone)
    assert solve(rep.produced).shortest_length == 2


def test_pts_ptj_is_examples():
    path = Graph(3, [(1, 2), (2, 3)])
    part = Partition([(1, 2, 3)], 3)
    inst = ReconfigInstance(path, "TS", "IS", (1,), (2,), partition=part)
    assert solve(inst).shortest_length == 1
    rep = check_map(pts_to_ptj_is, inst)
    assert solve(rep.produced).shortest_length == 3
    rest = ReconfigInstance(path, "TS", "IS", (1,), (1,), partition=part)
    rep = check_map(pts_to_ptj_is, rest)
    assert solve(rep.produced).shortest_length == 0


def test_pts_ptj_is_respects_missing_edges():
    # a part whose induced path stops at 2: the slide 2-3 does not exist, and
    # the produced instance must not smuggle the token over as a jump
    g = Graph(3, [(1, 2)])
    part = Partition([(1, 2, 3)], 3)
    inst = ReconfigInstance(g, "TS", "IS", (1,), (3,), partition=part)
    assert not solve(inst).reachable
    rep = pts_to_ptj_is(inst)
    assert not solve(rep.produced).reachable


def test_ptj_tj_is_examples():
    g = Graph(4, [(1, 3)])
    part = Partition([(1, 2), (3, 4)], 4)
    inst = ReconfigInstance(g, "TJ", "IS", (1, 4), (2, 3), partition=part)
    assert solve(inst).shortest_length == 2
    rep = check_map(ptj_to_tj_is, inst)
    assert solve(rep.produced).shortest_length == 6
    rest = ReconfigInstance(g, "TJ", "IS", (1, 4), (1, 4), partition=part)
    rep = check_map(ptj_to_tj_is, rest)
    assert solve(rep.produced).shortest_length == 0


def test_tj_ts_ds_examples():
    g = Graph(2, [(1, 2)])
    inst = ReconfigInstance(g, "TJ", "DS", (1,), (2,))
    assert solve(inst).shortest_length == 1
    rep = check_map(tj_to_ts_ds, inst)
    assert solve(rep.produced).shortest_length == 3
    path = Graph(3, [(1, 2), (2, 3)])
    rest = ReconfigInstance(path, "TJ", "DS", (1, 3), (1, 3))
    rep = check_map(tj_to_ts_ds, rest)
    assert solve(rep.produced).shortest_length == 3  # k + 1 with k = 2


def test_ts_pts_ds_examples():
    g = Graph(2, [(1, 2)])
    inst = ReconfigInstance(g, "TS", "DS", (1,), (2,))
    rep = check_map(ts_to_pts_ds, inst)
    assert solve(rep.produced).shortest_length == 3
    rest = ReconfigInstance(g, "TS", "DS", (1,), (1,))
    rep = check_map(ts_to_pts_ds, rest)
    assert solve(rep.produced).shortest_length == 2


def test_pts_ptj_ds_examples():
    g = Graph(2, [(1, 2)])
    part = Partition([(1, 2)], 2)
    inst = ReconfigInstance(g, "TS", "DS", (1,), (2,), partition=part)
    rep = check_map(pts_to_ptj_ds, inst)
    assert solve(rep.produced).shortest_length == 4
    rest = ReconfigInstance(g, "TS", "DS", (1,), (1,), partition=part)
    rep = check_map(pts_to_ptj_ds, rest)
    assert solve(rep.produced).shortest_length == 0


def test_ptj_tj_ds_examples():
    # identity map; hunt down a source needing exactly three jumps
    found = None
    for seed in range(400):
        rng = seeded_rng(seed)
        inst = random_instance(rng, n_max=6, k_max=2, rules=("TJ",), preds=("DS",),
                               force_partition=True)
        if inst is None:
            continue
        res = solve(inst)
        if res.reachable and res.shortest_length == 3:
            found = inst
            break
    assert found is not None, "no length-3 source found in the seed range"
    rep = check_map(ptj_to_tj_ds, found)
    assert solve(rep.produced).shortest_length == 3


def test_unreachable_preserved_is():
    c4 = Graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    tj = ReconfigInstance(c4, "TJ", "IS", (1, 3), (2, 4))
    assert not solve(tj).reachable
    assert not solve(tj_to_ts_is(tj).produced).reachable
    ts = ReconfigInstance(c4, "TS", "IS", (1, 3), (2, 4))
    assert not solve(ts_to_pts_is(ts).produced).reachable
    part = Partition([(1, 2), (3, 4)], 4)
    pts = ReconfigInstance(c4, "TS", "IS", (1, 3), (2, 4), partition=part)
    assert not solve(pts_to_ptj_is(pts).produced).reachable
    ptj = ReconfigInstance(c4, "TJ", "IS", (1, 3), (2, 4), partition=part)
    assert not solve(ptj_to_tj_is(ptj).produced).reachable


def test_unreachable_preserved_ds():
    c6 = Graph(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)])
    tj = ReconfigInstance(c6, "TJ", "DS", (1, 4), (2, 5))
    assert not solve(tj).reachable
    assert not solve(tj_to_ts_ds(tj).produced).reachable
    ts = ReconfigInstance(c6, "TS", "DS", (1, 4), (2, 5))
    assert not solve(ts_to_pts_ds(ts).produced).reachable
    part = Partition([(1, 2, 3), (4, 5, 6)], 6)
    pts = ReconfigInstance(c6, "TS", "DS", (1, 4), (2, 5), partition=part)
    assert not solve(pts_to_ptj_ds(pts).produced).reachable
    ptj = ReconfigInstance(c6, "TJ", "DS", (1, 4), (2, 5), partition=part)
    assert not solve(ptj_to_tj_ds(ptj).produced).reachable


CASES = [
    ("tj-ts-is", "TJ", "IS", False, 5, lambda k: k + 1),
    ("ts-pts-is", "TS", "IS", False, 5, lambda k: k + 1),
    ("pts-ptj-is", "TS", "IS", True, 5, lambda k: 2 * k),
    ("ptj-tj-is", "TJ", "IS", True, 5, lambda k: 2 * k),
    ("tj-ts-ds", "TJ", "DS", False, 4, lambda k: k + 1),
    ("ts-pts-ds", "TS", "DS", False, 4, lambda k: k + 2),
    ("pts-ptj-ds", "TS", "DS", True, 4, lambda k: 2 * k + 2),
    ("ptj-tj-ds", "TJ", "DS", True, 5, lambda k: k),
]


@pytest.mark.parametrize("name,rule,pred,partitioned,n_max,tokens", CASES,
                         ids=[c[0] for c in CASES])
def test_random_agreement(name, rule, pred, partitioned, n_max, tokens):
    rng = seeded_rng(hash(name) % 100000)
    reduction = REDUCTIONS[name]
    for trial in range(25):
        src = sample(rng, rule, pred, partitioned, n_max=n_max)
        rep = check_map(reduction, src)
        assert rep.target_tokens == tokens(src.k)
        assert len(rep.produced.start) == tokens(src.k)
        assert rep.source_tokens == src.k


def test_bound_inheritance():
    g = Graph(2, [(1, 2)])
    src = ReconfigInstance(g, "TJ", "IS", (1,), (2,)).with_bound(2, "binary")
    rep = tj_to_ts_is(src)
    assert rep.produced.bound == rep.length_of(2) == 4
    assert rep.produced.bound_encoding == "binary"
    part = Partition([(1, 2)], 2)
    src = ReconfigInstance(
        g, "TS", "DS", (1,), (1,), partition=part).with_bound(0, "unary")
    rep = pts_to_ptj_ds(src)
    assert rep.produced.bound == 0
    assert rep.length_of(2) == 7
    unbounded = ReconfigInstance(g, "TJ", "IS", (1,), (2,))
    assert tj_to_ts_is(unbounded).produced.bound is None


def test_preconditions():
    g = Graph(2, [(1, 2)])
    part = Partition([(1, 2)], 2)
    plain_ts = ReconfigInstance(g, "TS", "IS", (1,), (2,))
    plain_ds = ReconfigInstance(g, "TJ", "DS", (1,), (2,))
    parted = ReconfigInstance(g, "TS", "IS", (1,), (2,), partition=part)
    with pytest.raises(PreconditionError):
        tj_to_ts_is(plain_ts)  # wrong rule
    with pytest.raises(PreconditionError):
        tj_to_ts_is(plain_ds)  # wrong predicate
    with pytest.raises(PreconditionError):
        pts_to_ptj_is(plain_ts)  # missing partition
    with pytest.raises(PreconditionError):
        ts_to_pts_is(parted)  # unexpected partition
    with pytest.raises(PreconditionError):
        ptj_to_tj_ds(plain_ds)  # missing partition


def test_composition_round_trip():
    # ts -> pts -> ptj -> tj -> ts, answers preserved at every hop
    a0 = ReconfigInstance(Graph(1), "TS", "IS", (1,), (1,))
    r1 = ts_to_pts_is(a0)
    r2 = pts_to_ptj_is(r1.produced)
    r3 = ptj_to_tj_is(r2.produced)
    r4 = tj_to_ts_is(r3.produced)
    answers = [solve(x).reachable for x in
               (a0, r1.produced, r2.produced, r3.produced, r4.produced)]
    assert answers == [True] * 5
    lengths = [solve(x).shortest_length for x in
               (a0, r1.produced, r2.produced, r3.produced, r4.produced)]
    assert lengths[1] == r1.length_of(lengths[0])
    assert lengths[2] == r2.length_of(lengths[1])
    assert lengths[3] == r3.length_of(lengths[2])
    assert lengths[4] == r4.length_of(lengths[3])
    assert r4.produced.rule == "TS" and r4.produced.partition is None


def test_length_map_strings():
    g = Graph(2, [(1, 2)])
    rep = tj_to_ts_is(ReconfigInstance(g, "TJ", "IS", (1,), (2,)))
    assert rep.length_map == "l -> l + 2"
    part = Partition([(1, 2)], 2)
    rep = pts_to_ptj_ds(ReconfigInstance(g, "TS", "DS", (1,), (2,), partition=part))
    assert rep.length_map == "l -> 3*l + 1, except 0 -> 0"
    rep = ptj_to_tj_ds(ReconfigInstance(g, "TJ", "DS", (1,), (2,), partition=part))
    assert rep.length_map == "l -> l"
