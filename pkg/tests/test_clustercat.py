import itertools

import pytest

from clusterkit import seed as sd
from clusterkit.clustercat import (
    CCObject,
    ExtractionError,
    alpha_map,
    cc_expand,
    cc_extract,
    cc_from_json,
    cc_to_json,
    chi_oracle,
    chi_table,
    cluster_tilting_objects,
    ct_graph,
    ext1_cc,
    grassmannian_points,
    ind_objects,
    mutate_ct,
    root_tilting,
)
from clusterkit.laurent import LaurentPoly
from clusterkit.quiver import Quiver, canonical_form
from clusterkit.repn import build_indecomposable, direct_sum, simple_rep

A1 = Quiver.from_arrows(1, [])
A2 = Quiver.from_arrows(2, [(0, 1)])
A3 = Quiver.from_arrows(3, [(0, 1), (1, 2)])
D4 = Quiver.from_arrows(4, [(0, 3), (1, 3), (2, 3)])


def lp(nvars, terms):
    return LaurentPoly(nvars, terms)


# -- objects and Ext ------------------------------------------------------------

def test_ind_object_counts():
    assert len(ind_objects(A2)) == 5
    assert len(ind_objects(A3)) == 9
    assert len(ind_objects(A1)) == 2


def test_ext1_examples():
    s1 = CCObject.module((1, 0, 0))
    s2 = CCObject.module((0, 1, 0))
    assert ext1_cc(A3, s1, s2) == 1
    assert ext1_cc(A3, CCObject.shift(0), CCObject.shift(1)) == 0
    assert ext1_cc(A3, CCObject.shift(1), s2) == 1


def test_ext1_symmetry():
    objs = ind_objects(A3)
    for x in objs:
        for y in objs:
            assert ext1_cc(A3, x, y) == ext1_cc(A3, y, x)


# -- cluster tilting --------------------------------------------------------------

def test_cluster_tilting_counts():
    assert len(cluster_tilting_objects(A2)) == 5
    assert len(cluster_tilting_objects(A3)) == 14
    assert len(cluster_tilting_objects(A1)) == 2


def test_shifted_projectives_always_tilt():
    for q in (A1, A2, A3):
        shifts = frozenset(CCObject.shift(i) for i in range(q.n))
        assert shifts in cluster_tilting_objects(q)


def test_every_almost_complete_has_two_completions():
    for q in (A2, A3):
        objs = ind_objects(q)
        for ct in cluster_tilting_objects(q):
            for drop in ct:
                rest = [s for s in ct if s != drop]
                completions = [
                    x for x in objs
                    if x not in rest
                    and all(ext1_cc(q, x, r) == 0 for r in rest)
                    and ext1_cc(q, x, x) == 0
                ]
                assert len(completions) == 2
                assert drop in completions


def test_mutate_ct_at_root():
    t = root_tilting(A3)
    t2 = mutate_ct(A3, t, 1)
    assert t2.summands[1] == CCObject.module((0, 1, 0))
    assert t2.summands[0] == CCObject.shift(0)
    back = mutate_ct(A3, t2, 1)
    assert back.summands == t.summands
    assert back.seed_quiver == t.seed_quiver


def test_modules_tilting_seed_is_the_cycle():
    # P1 + S1 + S3 carries the oriented 3-cycle as its tilting seed
    g = ct_graph(A3)
    idx = g.node_by_summands(
        [CCObject.module((1, 1, 1)), CCObject.module((1, 0, 0)), CCObject.module((0, 0, 1))]
    )
    node = g.nodes[idx]
    cycle = Quiver.from_arrows(3, [(0, 2), (2, 1), (1, 0)])
    assert canonical_form(node.seed_quiver)[0] == canonical_form(cycle)[0]


def test_ct_graph_shapes():
    g2 = ct_graph(A2)
    assert len(g2) == 5
    undirected = {frozenset((u, v)) for (u, _, v) in g2.edges}
    assert len(undirected) == 5  # pentagon

    g3 = ct_graph(A3)
    assert len(g3) == 14
    for node in range(len(g3)):
        assert sum(1 for (u, _, _) in g3.edges if u == node) == 3

    g1 = ct_graph(A1)
    assert len(g1) == 2


def test_ct_graph_d4_count():
    assert len(cluster_tilting_objects(D4)) == 50


# -- denominator map ----------------------------------------------------------------

def test_alpha_initial_variables():
    assert alpha_map(LaurentPoly.variable(3, 0), A3) == CCObject.shift(0)


def test_alpha_on_a2_deep_variable():
    v = lp(2, {(-1, -1): 1, (-1, 0): 1, (0, -1): 1})  # (1+x1+x2)/(x1x2)
    assert alpha_map(v, A2) == CCObject.module((1, 1))


def test_alpha_rejects_non_roots():
    v = lp(2, {(-2, 0): 1, (0, 0): 1})
    with pytest.raises(ValueError):
        alpha_map(v, A2)


def test_alpha_bijection_and_clusters_to_tilting():
    for q in (A2, A3):
        complete, variables = sd.cluster_variables(sd.initial_seed(q), 100)
        assert complete
        images = {alpha_map(v, q) for v in variables}
        assert images == set(ind_objects(q))
        assert len(images) == len(variables)
        tilting_sets = set(cluster_tilting_objects(q))
        g = sd.exchange_graph(sd.initial_seed(q), 100).graph
        for node in g.seeds:
            image = frozenset(alpha_map(v, q) for v in node.cluster)
            assert image in tilting_sets


def test_exchange_relation_is_cluster_character_multiplication():
    # for each exchange pair the variable product equals m1 + m2, and the
    # aligned objects have one-dimensional Ext
    g = sd.exchange_graph(sd.initial_seed(A3), 100).graph
    for node in g.seeds:
        for k in range(3):
            other = sd.mutate_seed(node, k)
            m1, m2 = sd.exchange_monomials(node, k)
            assert node.cluster[k] * other.cluster[k] == m1 + m2
            x = alpha_map(node.cluster[k], A3)
            y = alpha_map(other.cluster[k], A3)
            assert ext1_cc(A3, x, y) == 1


# -- cluster character --------------------------------------------------------------

def test_cc_expand_reproduces_the_formula_example():
    v = cc_expand(A3, (0, 1, 0), {(0, 0, 0): 1, (0, 1, 0): 1})
    assert v == lp(3, {(1, -1, 0): 1, (0, -1, 1): 1})  # (u1+u3)/u2


def test_cc_expand_zero_module():
    assert cc_expand(A3, (0, 0, 0), {(0, 0, 0): 1}) == LaurentPoly.one(3)


def test_cc_expand_a2_simple():
    v = cc_expand(A2, (1, 0), {(0, 0): 1, (1, 0): 1})
    assert v == lp(2, {(-1, 0): 1, (-1, 1): 1})  # (1+x2)/x1


def test_cc_extract_example():
    v = lp(3, {(1, -1, 0): 1, (0, -1, 1): 1})
    assert cc_extract(v, A3, (0, 1, 0)) == {(0, 0, 0): 1, (0, 1, 0): 1}


def test_cc_extract_rejects_initial_variable():
    with pytest.raises(ExtractionError):
        cc_extract(LaurentPoly.variable(3, 0), A3, (0, 0, 0))


def test_cc_extract_a2_deep_variable():
    v = lp(2, {(-1, -1): 1, (-1, 0): 1, (0, -1): 1})
    assert cc_extract(v, A2, (1, 1)) == {(0, 0): 1, (0, 1): 1, (1, 1): 1, (1, 0): 0}


def test_cc_extract_resolves_p1_collisions():
    # X_{P_1} on A3 has colliding exponents; the trivial chi values must
    # propagate to chi = 0 on the spurious subdimensions
    p1 = build_indecomposable(A3, (1, 1, 1))
    table = chi_table(p1)
    v = cc_expand(A3, (1, 1, 1), table)
    extracted = cc_extract(v, A3, (1, 1, 1))
    assert extracted == table
    assert extracted[(1, 0, 1)] == 0
    assert extracted[(0, 1, 0)] == 0


# -- Grassmannian counting ------------------------------------------------------------

def test_grassmannian_single_subrep():
    s2 = simple_rep(A3, 1)
    for p in (2, 3, 5, 7):
        assert grassmannian_points(s2, (0, 1, 0), p) == 1


def test_grassmannian_non_subrep():
    p1 = build_indecomposable(A2, (1, 1))
    for p in (2, 3, 5):
        assert grassmannian_points(p1, (1, 0), p) == 0


def test_grassmannian_projective_line():
    m = direct_sum(simple_rep(A2, 0), simple_rep(A2, 0))
    for p in (2, 3, 5, 7):
        assert grassmannian_points(m, (1, 0), p) == p + 1


def test_chi_oracle_values():
    s2 = simple_rep(A3, 1)
    assert chi_oracle(s2, (0, 1, 0)) == 1
    assert chi_oracle(s2, (0, 0, 0)) == 1
    p1 = build_indecomposable(A2, (1, 1))
    assert chi_oracle(p1, (0, 1)) == 1
    m = direct_sum(simple_rep(A2, 0), simple_rep(A2, 0))
    assert chi_oracle(m, (1, 0)) == 2  # chi of a projective line


def test_chi_oracle_requires_rigid():
    kron = Quiver.from_arrows(2, [(0, 1, 2)])
    # the regular module of dims (1,1) on the Kronecker quiver is not rigid
    from clusterkit.repn import Representation

    reg = Representation(kron, (1, 1), {(0, 1, 0): ((1,),), (0, 1, 1): ((0,),)})
    with pytest.raises(ValueError):
        chi_oracle(reg, (0, 1))


def test_cc_round_trip_on_a2_variables():
    complete, variables = sd.cluster_variables(sd.initial_seed(A2), 100)
    initial = {LaurentPoly.variable(2, i) for i in range(2)}
    for v in variables - initial:
        m = alpha_map(v, A2)
        rep = build_indecomposable(A2, m.dims)
        table = chi_table(rep)
        assert cc_expand(A2, m.dims, table) == v
        assert cc_extract(v, A2, m.dims) == table


# -- serialization ---------------------------------------------------------------------

def test_cc_json_round_trip():
    for x in ind_objects(A3):
        assert cc_from_json(cc_to_json(x)) == x
    assert cc_to_json(CCObject.shift(1)) == {"kind": "shift", "vertex": 2}
    assert cc_to_json(CCObject.module((1, 1, 0))) == {"kind": "module", "dim": [1, 1, 0]}
