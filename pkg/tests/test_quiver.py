import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterkit.quiver import (
    DiagramKind,
    Finiteness,
    Quiver,
    canonical_form,
    canonical_perms,
    classify_diagram,
    from_json,
    is_acyclic,
    is_isomorphic,
    is_mutation_finite,
    mutate,
    mutation_class,
    permute,
    sinks,
    to_json,
)

A2 = Quiver.from_arrows(2, [(0, 1)])
A3 = Quiver.from_arrows(3, [(0, 1), (1, 2)])
KRONECKER = Quiver.from_arrows(2, [(0, 1, 2)])
WILD3 = Quiver.from_arrows(3, [(0, 1, 2), (1, 2)])
CYCLE3 = Quiver.from_arrows(3, [(0, 1), (1, 2), (2, 0)])


@st.composite
def quivers(draw, max_n=4, max_weight=2):
    n = draw(st.integers(1, max_n))
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w = draw(st.integers(-max_weight, max_weight))
            b[i][j] = w
            b[j][i] = -w
    return Quiver(n, 0, tuple(tuple(row) for row in b))


# -- mutation ------------------------------------------------------------------

def test_mutate_path_at_middle():
    # 1->2->3 mutated at 2 reverses both arrows and adds 1->3
    q = mutate(A3, 1)
    assert q == Quiver.from_arrows(3, [(1, 0), (2, 1), (0, 2)])


def test_mutate_at_sink_reverses_only():
    q = mutate(A3, 2)
    assert q == Quiver.from_arrows(3, [(0, 1), (2, 1)])


def test_mutate_out_of_range():
    with pytest.raises(IndexError):
        mutate(A3, 3)
    with pytest.raises(IndexError):
        mutate(Quiver.from_arrows(1, [], frozen=1), 1)


@settings(max_examples=80)
@given(quivers(), st.data())
def test_mutation_involution(q, data):
    k = data.draw(st.integers(0, q.n - 1))
    assert mutate(mutate(q, k), k) == q


@settings(max_examples=80)
@given(quivers(), st.data())
def test_mutation_preserves_skew_symmetry(q, data):
    k = data.draw(st.integers(0, q.n - 1))
    p = mutate(q, k)
    for i in range(p.size):
        assert p.b[i][i] == 0
        for j in range(p.size):
            assert p.b[i][j] == -p.b[j][i]


@settings(max_examples=60)
@given(quivers(), st.data())
def test_sink_mutation_touches_only_the_sink(q, data):
    ss = sinks(q)
    if not ss:
        return
    k = data.draw(st.sampled_from(ss))
    p = mutate(q, k)
    for i in range(q.n):
        for j in range(q.n):
            if i == k or j == k:
                assert p.b[i][j] == -q.b[i][j]
            else:
                assert p.b[i][j] == q.b[i][j]


def _arrow_rule_mutation(q: Quiver, k: int) -> Quiver:
    """Independent oracle: the three arrow-level steps done literally."""
    n = q.n
    a = [[max(0, q.b[i][j]) for j in range(n)] for i in range(n)]
    new = [row[:] for row in a]
    # (i) composite arrows s->t for each pair s->k->t
    for s in range(n):
        for t in range(n):
            if s != k and t != k:
                new[s][t] += a[s][k] * a[k][t]
    # (ii) reverse all arrows at k
    for j in range(n):
        if j != k:
            new[k][j], new[j][k] = a[j][k], a[k][j]
    # (iii) cancel 2-cycles
    for i in range(n):
        for j in range(i + 1, n):
            c = min(new[i][j], new[j][i])
            new[i][j] -= c
            new[j][i] -= c
    b = tuple(tuple(new[i][j] - new[j][i] for j in range(n)) for i in range(n))
    return Quiver(n, 0, b)


def test_matrix_rule_equals_arrow_rule_exhaustively():
    # all quivers with <= 4 vertices and multiplicity <= 2, every vertex
    for n in range(1, 5):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for values in itertools.product(range(-2, 3), repeat=len(pairs)):
            b = [[0] * n for _ in range(n)]
            for (i, j), w in zip(pairs, values):
                b[i][j] = w
                b[j][i] = -w
            q = Quiver(n, 0, tuple(tuple(row) for row in b))
            for k in range(n):
                assert mutate(q, k) == _arrow_rule_mutation(q, k)


def test_frozen_rows_mutate_too():
    # one mutable, one frozen: mutation flips the frozen-mutable entry
    q = Quiver.from_arrows(1, [(0, 1)], frozen=1)
    p = mutate(q, 0)
    assert p.b[0][1] == -1
    # frozen-frozen entries are never altered
    q2 = Quiver(1, 2, ((0, 1, 0), (-1, 0, 5), (0, -5, 0)))
    p2 = mutate(q2, 0)
    assert p2.b[1][2] == 5


# -- acyclicity ------------------------------------------------------------------

def test_is_acyclic():
    assert is_acyclic(A3)
    assert not is_acyclic(CYCLE3)
    assert is_acyclic(Quiver.from_arrows(1, []))


# -- classification ----------------------------------------------------------------

def test_classify_examples():
    assert str(classify_diagram(A3)) == "Dynkin(A3)"
    assert str(classify_diagram(KRONECKER)) == "ExtendedDynkin(A~1)"
    assert classify_diagram(WILD3).kind == DiagramKind.OTHER
    assert str(classify_diagram(Quiver.from_arrows(1, []))) == "Dynkin(A1)"
    # oriented 3-cycle has underlying graph A~2
    assert str(classify_diagram(CYCLE3)) == "ExtendedDynkin(A~2)"


def test_classify_d_and_e_types():
    d4 = Quiver.from_arrows(4, [(0, 3), (1, 3), (2, 3)])
    assert str(classify_diagram(d4)) == "Dynkin(D4)"
    d5 = Quiver.from_arrows(5, [(0, 2), (1, 2), (2, 3), (3, 4)])
    assert str(classify_diagram(d5)) == "Dynkin(D5)"
    e6 = Quiver.from_arrows(6, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 2)])
    assert str(classify_diagram(e6)) == "Dynkin(E6)"
    # star with four leaves is D~4
    d4t = Quiver.from_arrows(5, [(0, 4), (1, 4), (2, 4), (3, 4)])
    assert str(classify_diagram(d4t)) == "ExtendedDynkin(D~4)"
    # double fork: D~5 on 6 vertices
    d5t = Quiver.from_arrows(6, [(0, 2), (1, 2), (2, 3), (4, 3), (5, 3)])
    assert str(classify_diagram(d5t)) == "ExtendedDynkin(D~5)"
    # 4-cycle is A~3
    c4 = Quiver.from_arrows(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert str(classify_diagram(c4)) == "ExtendedDynkin(A~3)"
    triple = Quiver.from_arrows(2, [(0, 1, 3)])
    assert classify_diagram(triple).kind == DiagramKind.TWO_VERTEX


# -- canonical form ----------------------------------------------------------------

def test_canonical_form_identifies_reversed_path():
    left = Quiver.from_arrows(3, [(1, 0), (2, 1)])
    assert canonical_form(left)[0] == canonical_form(A3)[0]
    assert is_isomorphic(left, A3)


def test_canonical_form_idempotent():
    c, _ = canonical_form(A3)
    assert canonical_form(c)[0] == c


def test_sink_and_source_orientations_differ():
    sink_mid = Quiver.from_arrows(3, [(0, 1), (2, 1)])
    source_mid = Quiver.from_arrows(3, [(1, 0), (1, 2)])
    assert canonical_form(sink_mid)[0] != canonical_form(source_mid)[0]


def test_canonical_witness_permutation():
    left = Quiver.from_arrows(3, [(1, 0), (2, 1)])
    c, perm = canonical_form(left)
    assert permute(left, perm) == c


@settings(max_examples=60)
@given(quivers(max_n=4), st.data())
def test_canonical_form_permutation_invariant(q, data):
    perm = tuple(data.draw(st.permutations(range(q.n))))
    assert canonical_form(q)[0] == canonical_form(permute(q, perm))[0]


def test_canonical_perms_are_exactly_the_minimizers():
    # symmetric quiver 1->2<-3 has an automorphism swapping 1 and 3
    q = Quiver.from_arrows(3, [(0, 1), (2, 1)])
    perms = canonical_perms(q)
    assert len(perms) == 2


# -- mutation class ----------------------------------------------------------------

def test_mutation_class_a3():
    result = mutation_class(A3, 100)
    assert result.complete
    assert len(result) == 4


def test_mutation_class_single_arrow():
    result = mutation_class(A2, 100)
    assert result.complete
    assert len(result) == 1


def test_mutation_class_wild_exceeds():
    result = mutation_class(WILD3, 1000)
    assert not result.complete


def test_is_mutation_finite_verdicts():
    assert is_mutation_finite(A3) == Finiteness.FINITE_BY_THEOREM
    assert is_mutation_finite(WILD3, 200) == Finiteness.INFINITE_BY_THEOREM
    assert is_mutation_finite(CYCLE3, 100) == Finiteness.FINITE_BY_BFS
    assert is_mutation_finite(KRONECKER) == Finiteness.FINITE_BY_THEOREM


# -- JSON ---------------------------------------------------------------------------

def test_json_round_trip():
    obj = to_json(A3)
    assert obj == {"n": 3, "frozen": 0, "arrows": [[1, 2, 1], [2, 3, 1]]}
    assert from_json(obj) == A3


def test_json_rejects_bad_input():
    with pytest.raises(ValueError):
        from_json({"n": 2, "arrows": [[1, 1, 1]]})  # loop
    with pytest.raises(ValueError):
        from_json({"n": 2, "arrows": [[1, 2, 1], [2, 1, 1]]})  # 2-cycle
    with pytest.raises(ValueError):
        from_json({"n": 2, "arrows": [[1, 2, 1], [1, 2, 1]]})  # duplicate
    with pytest.raises(ValueError):
        from_json({"n": 2, "arrows": [[1, 3, 1]]})  # out of range
    with pytest.raises(ValueError):
        from_json({"n": 0, "arrows": []})
