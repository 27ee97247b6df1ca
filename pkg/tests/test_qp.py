from fractions import Fraction

import pytest

from clusterkit.qp import (
    Potential,
    QP,
    ReductionIncomplete,
    canonical_cycle,
    cyclic_derivative,
    from_json,
    jacobian_presentation,
    make_quiver,
    mutate_qp,
    premutate,
    reduce_qp,
    relation_extension,
    to_json,
    to_signed_quiver,
)
from clusterkit.quiver import Quiver, is_acyclic, mutate


def three_cycle():
    # a: 1->2, b: 2->3, c: 3->1; potential cba
    q = make_quiver([("a", 1, 2), ("b", 2, 3), ("c", 3, 1)])
    return QP(q, Potential({("c", "b", "a"): 1}))


def a3_path_quiver():
    return make_quiver([("a", 1, 2), ("b", 2, 3)])


# -- cycles and derivatives --------------------------------------------------------

def test_canonical_rotation():
    assert canonical_cycle(("c", "b", "a")) == ("a", "c", "b")
    assert Potential({("c", "b", "a"): 1}) == Potential({("b", "a", "c"): 1})


def test_cycle_composability_checked():
    q = a3_path_quiver()
    with pytest.raises(ValueError):
        QP(q, Potential({("b", "a"): 1}))  # open path, not a cycle


def test_cyclic_derivative_of_triangle():
    qp = three_cycle()
    assert cyclic_derivative(qp, "a") == {("c", "b"): Fraction(1)}
    assert cyclic_derivative(qp, "b") == {("a", "c"): Fraction(1)}
    assert cyclic_derivative(qp, "c") == {("b", "a"): Fraction(1)}


def test_cyclic_derivative_zero_potential():
    qp = QP(three_cycle().quiver, Potential())
    assert cyclic_derivative(qp, "a") == {}


def test_cyclic_derivative_double_cycle():
    q = three_cycle().quiver
    w = Potential({("c", "b", "a", "c", "b", "a"): 1})
    d = cyclic_derivative(QP(q, w), "a")
    assert d == {("c", "b", "a", "c", "b"): Fraction(2)}


def test_derivative_is_rotation_invariant():
    q = three_cycle().quiver
    w1 = QP(q, Potential({("c", "b", "a"): 1}))
    w2 = QP(q, Potential({("a", "c", "b"): 1}))
    for name in "abc":
        assert cyclic_derivative(w1, name) == cyclic_derivative(w2, name)


def test_jacobian_presentation():
    _, relations = jacobian_presentation(three_cycle())
    assert relations == [
        {("c", "b"): Fraction(1)},
        {("a", "c"): Fraction(1)},
        {("b", "a"): Fraction(1)},
    ]
    _, none = jacobian_presentation(QP(three_cycle().quiver, Potential()))
    assert none == []


def test_jacobian_degree_five_relations():
    q = three_cycle().quiver
    qp = QP(q, Potential({("c", "b", "a", "c", "b", "a"): 1}))
    _, relations = jacobian_presentation(qp)
    assert all(len(next(iter(r))) == 5 for r in relations)


# -- premutation ---------------------------------------------------------------------

def test_premutate_the_worked_example():
    qp = three_cycle()
    pre = premutate(qp, 2)
    names = set(pre.quiver.arrow_map)
    assert names == {"a*", "b*", "c", "[ba]"}
    amap = pre.quiver.arrow_map
    assert amap["a*"] == (2, 1)
    assert amap["b*"] == (3, 2)
    assert amap["[ba]"] == (1, 3)
    assert pre.w == Potential({("c", "[ba]"): 1, ("a*", "b*", "[ba]"): 1})


def test_premutate_zero_potential():
    q = a3_path_quiver()
    pre = premutate(QP(q, Potential()), 2)
    assert set(pre.quiver.arrow_map) == {"a*", "b*", "[ba]"}
    assert pre.w == Potential({("a*", "b*", "[ba]"): 1})


def test_premutate_no_incoming():
    q = a3_path_quiver()
    pre = premutate(QP(q, Potential()), 1)
    assert set(pre.quiver.arrow_map) == {"a*", "b"}
    assert pre.w.is_zero()


def test_premutate_rejects_two_cycles_through_vertex():
    q = make_quiver([("a", 1, 2), ("b", 2, 1)])
    with pytest.raises(ValueError):
        premutate(QP(q, Potential({("b", "a"): 1})), 2)


# -- reduction ------------------------------------------------------------------------

def test_reduce_worked_example_to_zero_potential():
    reduced = reduce_qp(premutate(three_cycle(), 2))
    assert isinstance(reduced, QP)
    assert set(reduced.quiver.arrow_map) == {"a*", "b*"}
    assert reduced.quiver.arrow_map["a*"] == (2, 1)
    assert reduced.quiver.arrow_map["b*"] == (3, 2)
    assert reduced.w.is_zero()


def test_reduce_already_reduced():
    qp = three_cycle()
    assert reduce_qp(qp) == qp


def test_reduce_isolated_two_cycle():
    q = make_quiver([("u", 1, 2), ("v", 2, 1)])
    reduced = reduce_qp(QP(q, Potential({("u", "v"): 1})))
    assert isinstance(reduced, QP)
    assert reduced.quiver.arrows == ()
    assert reduced.w.is_zero()


def test_mutate_qp_end_to_end():
    result = mutate_qp(three_cycle(), 2)
    assert isinstance(result, QP)
    assert to_signed_quiver(result.quiver) == Quiver.from_arrows(3, [(1, 0), (2, 1)])
    assert result.w.is_zero()


def test_mutate_qp_twice_is_quiver_involution():
    once = mutate_qp(three_cycle(), 2)
    assert isinstance(once, QP)
    twice = mutate_qp(once, 2)
    assert isinstance(twice, QP)
    assert to_signed_quiver(twice.quiver) == to_signed_quiver(three_cycle().quiver)


def test_mutate_qp_matches_matrix_mutation_on_random_acyclic():
    import itertools
    import random

    rng = random.Random(11)
    for _ in range(12):
        n = rng.randint(2, 4)
        arrows = []
        name = iter("abcdefghijklmnop")
        for i, j in itertools.combinations(range(1, n + 1), 2):
            w = rng.randint(0, 2)
            for _ in range(w):
                arrows.append((next(name), i, j))
        if not arrows:
            continue
        q = make_quiver(arrows, vertices=range(1, n + 1))
        qp = QP(q, Potential())
        for k in range(1, n + 1):
            result = mutate_qp(qp, k, max_degree=12)
            if isinstance(result, QP):
                signed = to_signed_quiver(result.quiver)
                assert signed == mutate(to_signed_quiver(q), k - 1)


def test_mutate_qp_with_triangle_potentials_after_one_step():
    # acyclic quiver, mutate once to create a 3-cycle, attach the cycle
    # term, then check a further mutation still matches matrix mutation
    q0 = make_quiver([("a", 1, 2), ("b", 2, 3)])
    step1 = mutate_qp(QP(q0, Potential()), 2, max_degree=12)
    assert isinstance(step1, QP)
    signed = to_signed_quiver(step1.quiver)
    assert not is_acyclic(signed)
    # its arrows form a 3-cycle; use it as the potential
    amap = step1.quiver.arrow_map
    cycle = []
    cur = 1
    for _ in range(3):
        nxt = next(n for n, (s, d) in amap.items() if s == cur)
        cycle.append(nxt)
        cur = amap[nxt][1]
    word = tuple(reversed(cycle))
    qp1 = QP(step1.quiver, Potential({word: 1}))
    for k in (1, 2, 3):
        result = mutate_qp(qp1, k, max_degree=12)
        if isinstance(result, QP):
            assert to_signed_quiver(result.quiver) == mutate(signed, k - 1)


# -- relation extension ------------------------------------------------------------------

def test_relation_extension_makes_the_cycle():
    q = a3_path_quiver()
    out = relation_extension(q, [{("b", "a"): Fraction(1)}])
    amap = out.arrow_map
    assert len(amap) == 3
    assert amap["r1"] == (3, 1)
    assert to_signed_quiver(out) == Quiver.from_arrows(3, [(0, 1), (1, 2), (2, 0)])


def test_relation_extension_no_relations():
    q = a3_path_quiver()
    assert relation_extension(q, []) == q


def test_relation_extension_parallel_relations():
    q = make_quiver([("a", 1, 2), ("b", 2, 3), ("a2", 1, 2), ("b2", 2, 3)])
    out = relation_extension(q, [{("b", "a"): Fraction(1)}, {("b2", "a2"): Fraction(1)}])
    assert out.arrow_map["r1"] == (3, 1)
    assert out.arrow_map["r2"] == (3, 1)


def test_relation_extension_rejects_mixed_endpoints():
    q = make_quiver([("a", 1, 2), ("b", 2, 3), ("c", 1, 3)])
    with pytest.raises(ValueError):
        relation_extension(q, [{("b", "a"): Fraction(1), ("c",): Fraction(1), ("a",): Fraction(1)}])


# -- serialization ---------------------------------------------------------------------------

def test_qp_json_round_trip():
    qp = three_cycle()
    obj = to_json(qp)
    assert obj["potential"] == [{"coef": "1", "cycle": ["a", "c", "b"]}]
    assert from_json(obj) == qp


def test_premutate_creates_no_loops():
    pre = premutate(three_cycle(), 2)
    for name, (src, dst) in pre.quiver.arrow_map.items():
        assert src != dst
