import pytest

from reconfig import (
    Graph,
    Partition,
    PreconditionError,
    ReconfigInstance,
    solve,
    state_space_size,
    successors,
    verify_sequence,
)
from reconfig.generators import random_instance, seeded_rng

from .oracles import naive_distances, naive_solve, naive_successors


PATH3 = Graph(3, [(1, 2), (2, 3)])


def inst3(rule, start, target, **kw):
    return ReconfigInstance(PATH3, rule, "IS", start, target, **kw)


def test_successors_examples():
    assert successors(inst3("TS", (1,), (1,)), (1,)) == [(2,)]
    assert successors(inst3("TJ", (1,), (1,)), (1,)) == [(2,), (3,)]
    # partitioned slide on a path of four vertices: {2,3} would clash
    g = Graph(4, [(1, 2), (2, 3), (3, 4)])
    part = Partition([(1, 2), (3, 4)], 4)
    inst = ReconfigInstance(g, "TS", "IS", (1, 3), (1, 3), partition=part)
    assert successors(inst, (1, 3)) == [(1, 4)]


def test_successors_precondition():
    with pytest.raises(PreconditionError):
        successors(inst3("TS", (1,), (3,)), (1, 2))


def test_solve_path_slide():
    res = solve(inst3("TS", (1,), (3,)))
    assert res.reachable and res.shortest_length == 2
    assert res.witness == [(1,), (2,), (3,)]


def test_solve_trivial_and_unreachable():
    res = solve(inst3("TS", (1,), (1,)))
    assert res.reachable and res.shortest_length == 0 and res.witness == [(1,)]
    lonely = ReconfigInstance(Graph(2, []), "TS", "IS", (1,), (2,))
    res = solve(lonely)
    assert not res.reachable and res.shortest_length is None and res.witness is None


def test_solve_empty_token_set():
    g = Graph(3, [(1, 2)])
    res = solve(ReconfigInstance(g, "TJ", "IS", (), ()))
    assert res.reachable and res.shortest_length == 0


def test_successors_match_oracle():
    rng = seeded_rng(11)
    checked = 0
    while checked < 120:
        inst = random_instance(rng)
        if inst is None:
            continue
        seen = naive_distances(inst)
        for state in sorted(seen)[:20]:
            assert successors(inst, state) == naive_successors(inst, state)
        checked += 1


def test_solve_matches_oracle():
    rng = seeded_rng(13)
    checked = 0
    while checked < 150:
        inst = random_instance(rng)
        if inst is None:
            continue
        res = solve(inst)
        reachable, dist = naive_solve(inst)
        assert res.reachable == reachable
        assert res.shortest_length == dist
        if res.reachable:
            assert verify_sequence(inst, res.witness)
            assert len(res.witness) - 1 == res.shortest_length
        checked += 1


def test_distance_symmetry():
    rng = seeded_rng(17)
    checked = 0
    while checked < 100:
        inst = random_instance(rng)
        if inst is None:
            continue
        back = ReconfigInstance(
            inst.graph, inst.rule, inst.pred, inst.target, inst.start,
            partition=inst.partition,
        )
        assert solve(inst).shortest_length == solve(back).shortest_length
        checked += 1


def test_rule_inclusions():
    rng = seeded_rng(19)
    checked = 0
    while checked < 60:
        inst = random_instance(rng)
        if inst is None:
            continue
        state = inst.start
        succ = set(successors(inst, state))
        if inst.rule == "TS":
            tj = ReconfigInstance(inst.graph, "TJ", inst.pred, inst.start, inst.target,
                                  partition=inst.partition)
            assert succ <= set(successors(tj, state))
        if inst.partition is not None:
            free = ReconfigInstance(inst.graph, inst.rule, inst.pred, inst.start, inst.target)
            assert succ <= set(successors(free, state))
        checked += 1


def test_bounded_solve_consistency():
    rng = seeded_rng(23)
    checked = 0
    while checked < 60:
        inst = random_instance(rng, n_max=6, k_max=2)
        if inst is None:
            continue
        free = solve(inst)
        for ell in (0, 1, 2, 3, 7):
            bounded = solve(inst.with_bound(ell))
            expect = free.reachable and free.shortest_length <= ell
            assert bounded.reachable == expect
            if bounded.reachable:
                assert bounded.shortest_length == free.shortest_length
        checked += 1


def test_bound_clamping():
    inst = inst3("TS", (1,), (3,)).with_bound(10**30, "binary")
    res = solve(inst)
    assert res.bound_clamped
    assert res.bound_applied == state_space_size(inst) - 1 == 2
    assert res.reachable and res.shortest_length == 2


def test_state_space_size():
    assert state_space_size(inst3("TS", (1,), (3,))) == 3
    g = Graph(4, [(1, 2), (2, 3), (3, 4)])
    part = Partition([(1, 2), (3, 4)], 4)
    inst = ReconfigInstance(g, "TS", "IS", (1, 3), (1, 3), partition=part)
    assert state_space_size(inst) == 4


def test_verify_sequence_reason_codes():
    inst = inst3("TS", (1,), (3,))
    assert verify_sequence(inst, [(1,), (2,), (3,)]).ok
    assert verify_sequence(inst, []).reason == "empty"
    assert verify_sequence(inst, [(2,), (3,)]).reason == "start-mismatch"
    assert verify_sequence(inst, [(1,), (2,)]).reason == "target-mismatch"
    assert verify_sequence(inst, [(1,), (3,)]).reason == "illegal-move"
    assert verify_sequence(inst, [(1,), (9,)]).reason == "not-a-set"
    bad = ReconfigInstance(PATH3, "TS", "IS", (1,), (3,), bound=1, bound_encoding="unary")
    assert verify_sequence(bad, [(1,), (2,), (3,)]).reason == "bound"
    two = ReconfigInstance(Graph(4, [(2, 3)]), "TJ", "IS", (1, 4), (1, 4))
    assert verify_sequence(two, [(1, 4), (2, 4), (1, 4)]).ok
    assert verify_sequence(two, [(1, 4), (1, 4)]).reason == "illegal-move"  # no token moved


def test_verify_predicate_code():
    gds = Graph(4, [(1, 2), (2, 3), (3, 4)])
    ds = ReconfigInstance(gds, "TJ", "DS", (2, 3), (2, 3))
    chk = verify_sequence(ds, [(2, 3), (1, 2), (2, 3)])  # vertex 4 left uncovered
    assert chk.reason == "predicate" and chk.index == 1
