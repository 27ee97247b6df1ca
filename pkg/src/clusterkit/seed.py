"""Seeds, seed mutation, and exchange-graph enumeration.

A seed pairs a quiver with a cluster of n Laurent polynomials in the
n + m initial variables; the m frozen variables act as coefficients and
never change.  Two seeds are identified when a simultaneous relabelling
of mutable vertices and cluster positions carries one to the other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import laurent, quiver as qv
from .laurent import LaurentPoly
from .quiver import Quiver


class ExactDivisionError(RuntimeError):
    """The exchange relation failed to divide exactly.

    The Laurent phenomenon guarantees exactness, so this can only mean an
    arithmetic bug; the offending seed and vertex are carried along.
    """

    def __init__(self, seed: "Seed", k: int):
        self.seed = seed
        self.k = k
        super().__init__(
            f"inexact exchange division at vertex {k}; seed quiver {qv.to_json(seed.quiver)}, "
            f"cluster {[laurent.to_str(p) for p in seed.cluster]}"
        )


@dataclass(frozen=True)
class Seed:
    quiver: Quiver
    cluster: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if len(self.cluster) != self.quiver.n:
            raise ValueError("cluster length must equal the number of mutable vertices")
        nvars = self.quiver.size
        for p in self.cluster:
            if p.nvars != nvars:
                raise ValueError("cluster entries must live in the full ambient variable set")
            if p.is_zero():
                raise ValueError("cluster entries must be nonzero")
        if len(set(self.cluster)) != len(self.cluster):
            raise ValueError("cluster entries must be pairwise distinct")

    def entry(self, j: int) -> LaurentPoly:
        """Cluster entry at a mutable position, or the coefficient variable."""
        if j < self.quiver.n:
            return self.cluster[j]
        return LaurentPoly.variable(self.quiver.size, j)

    def variable_names(self) -> list[str]:
        n = self.quiver.n
        return [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(self.quiver.m)]


def initial_seed(q: Quiver) -> Seed:
    nvars = q.size
    return Seed(q, tuple(LaurentPoly.variable(nvars, i) for i in range(q.n)))


def exchange_monomials(s: Seed, k: int) -> tuple[LaurentPoly, LaurentPoly]:
    """The two sides m1, m2 of the exchange relation x_k x_k* = m1 + m2.

    m1 multiplies entries over arrows into k, m2 over arrows out of k;
    an empty product is 1, so sources and sinks get a bare 1 term.
    """
    nvars = s.quiver.size
    m1 = LaurentPoly.one(nvars)
    m2 = LaurentPoly.one(nvars)
    for j in range(nvars):
        w = s.quiver.b[j][k]
        if w > 0:
            m1 = m1 * s.entry(j) ** w
        elif w < 0:
            m2 = m2 * s.entry(j) ** (-w)
    return m1, m2


def mutate_seed(s: Seed, k: int) -> Seed:
    if not s.quiver.is_mutable(k):
        raise IndexError(f"vertex {k} is not mutable")
    m1, m2 = exchange_monomials(s, k)
    new_entry = laurent.try_div(m1 + m2, s.cluster[k])
    if new_entry is None:
        raise ExactDivisionError(s, k)
    cluster = list(s.cluster)
    cluster[k] = new_entry
    return Seed(qv.mutate(s.quiver, k), tuple(cluster))


def mutate_seed_sequence(s: Seed, ks: Sequence[int]) -> Seed:
    for k in ks:
        s = mutate_seed(s, k)
    return s


# -- identification up to relabelling ---------------------------------------

def canonical_key(s: Seed):
    """Hashable key invariant under simultaneous relabelling.

    Among the permutations that minimize the quiver matrix, take the one
    whose permuted cluster tuple is smallest; frozen vertices stay put.
    """
    cq, _ = qv.canonical_form(s.quiver)
    best = None
    for perm in qv.canonical_perms(s.quiver):
        arranged = [None] * s.quiver.n
        for old, new in enumerate(perm):
            arranged[new] = s.cluster[old]
        key = tuple(p.sort_key() for p in arranged)
        if best is None or key < best:
            best = key
    return (cq.b, best)


def canonicalize(s: Seed) -> Seed:
    cq, _ = qv.canonical_form(s.quiver)
    best_key, best_cluster = None, None
    for perm in qv.canonical_perms(s.quiver):
        arranged = [None] * s.quiver.n
        for old, new in enumerate(perm):
            arranged[new] = s.cluster[old]
        key = tuple(p.sort_key() for p in arranged)
        if best_key is None or key < best_key:
            best_key, best_cluster = key, tuple(arranged)
    return Seed(cq, best_cluster)


# -- exchange graph -----------------------------------------------------------

@dataclass(frozen=True)
class ExchangeGraph:
    """Seeds up to relabelling, with one labelled edge per mutable vertex."""

    seeds: tuple[Seed, ...]
    edges: tuple[tuple[int, int, int], ...]  # (node, vertex, node)
    root: int = 0

    def __len__(self) -> int:
        return len(self.seeds)

    def neighbors(self, node: int) -> list[tuple[int, int]]:
        return [(k, v) for (u, k, v) in self.edges if u == node]

    def degree(self, node: int) -> int:
        return len(self.neighbors(node))


@dataclass(frozen=True)
class GraphSearch:
    complete: bool
    graph: ExchangeGraph | None
    explored: int


def exchange_graph(s: Seed, max_nodes: int) -> GraphSearch:
    """BFS closure of a seed under all mutations, deduplicated canonically.

    Node ids follow canonical BFS order: each frontier is processed in
    sorted key order, so the numbering is independent of scheduling.
    """
    if max_nodes < 1:
        raise ValueError("max_nodes must be at least 1")
    start = canonicalize(s)
    start_key = canonical_key(start)
    ids: dict = {start_key: 0}
    seeds: list[Seed] = [start]
    edges: list[tuple[int, int, int]] = []
    frontier = [(start_key, 0)]
    while frontier:
        frontier.sort(key=lambda t: t[0])
        nxt = []
        for _, uid in frontier:
            u = seeds[uid]
            for k in range(u.quiver.n):
                child = mutate_seed(u, k)
                key = canonical_key(child)
                if key not in ids:
                    if len(seeds) >= max_nodes:
                        return GraphSearch(False, None, len(seeds))
                    ids[key] = len(seeds)
                    seeds.append(canonicalize(child))
                    nxt.append((key, ids[key]))
                edges.append((uid, k, ids[key]))
        frontier = nxt
    return GraphSearch(True, ExchangeGraph(tuple(seeds), tuple(edges)), len(seeds))


def cluster_variables(s: Seed, max_nodes: int) -> tuple[bool, frozenset[LaurentPoly]]:
    """Union of all clusters over the exchange graph; (False, partial) at the cap."""
    search = exchange_graph(s, max_nodes)
    if not search.complete:
        return False, frozenset()
    out = set()
    for node in search.graph.seeds:
        out.update(node.cluster)
    return True, frozenset(out)


# -- verification -------------------------------------------------------------

def _random_point(nvars: int, rng: random.Random) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(2, 97), rng.randint(1, 7)) for _ in range(nvars))


def replay_path_values(q: Quiver, path: Sequence[int],
                       point: Sequence[Fraction]) -> list[Fraction]:
    """Field-of-fractions replay of a mutation path at a numeric point.

    Works entirely with rational numbers, never touching the Laurent
    ring, so it is an independent oracle for the symbolic engine.  The
    value produced at each step is returned in order.
    """
    vals = [Fraction(x) for x in point]
    produced = []
    cur = q
    for k in path:
        m1 = Fraction(1)
        m2 = Fraction(1)
        for j in range(cur.size):
            w = cur.b[j][k]
            if w > 0:
                m1 *= vals[j] ** w
            elif w < 0:
                m2 *= vals[j] ** (-w)
        if vals[k] == 0:
            raise ZeroDivisionError("replay hit a zero cluster value")
        new_val = (m1 + m2) / vals[k]
        vals[k] = new_val
        produced.append(new_val)
        cur = qv.mutate(cur, k)
    return produced


def check_laurent(v: LaurentPoly, *, seed: Seed | None = None,
                  path: Sequence[int] | None = None,
                  rng: random.Random | None = None) -> bool:
    """Laurent-phenomenon check for a produced cluster variable.

    Structurally every LaurentPoly is a Laurent polynomial, so the bare
    call only confirms the reduced form has a monomial denominator.
    Passing the originating seed and mutation path replays the whole
    computation through the field of fractions at a random point and
    compares against evaluating v, catching any inexact division in the
    symbolic route end to end.
    """
    if v.is_zero():
        return False
    if seed is None or path is None:
        return True
    rng = rng or random.Random(0)
    for _ in range(5):
        point = _random_point(seed.quiver.size, rng)
        try:
            values = replay_path_values(seed.quiver, list(path), point)
            expected = laurent.evaluate(v, point)
        except ZeroDivisionError:
            continue
        return values[-1] == expected
    raise RuntimeError("could not find a pole-free evaluation point")


def check_positivity(v: LaurentPoly) -> bool:
    """Positivity of the reduced-form numerator coefficients."""
    if v.is_zero():
        return False
    return laurent.has_positive_coefficients(laurent.reduced_form(v).numerator)


def certify_reduced(f: LaurentPoly, d: Sequence[int]) -> bool:
    """Certificate that f / x^d is in reduced form.

    Checks f(e_i) > 0 for each i with d_i > 0, where e_i is the all-ones
    point with a 0 in slot i.  Requires f with nonnegative exponents and
    a nonzero d >= 0.
    """
    d = tuple(d)
    if any(x < 0 for x in d) or all(x == 0 for x in d):
        raise ValueError("d must be nonnegative and nonzero")
    if not f.is_zero() and any(x < 0 for x in f.min_exponents()):
        raise ValueError("f must have nonnegative exponents")
    for i, di in enumerate(d):
        if di > 0:
            point = [Fraction(1)] * f.nvars
            point[i] = Fraction(0)
            if laurent.evaluate(f, point) <= 0:
                return False
    return True


def seed_determined_by_cluster(g: ExchangeGraph) -> bool:
    """No two distinct nodes share the same unordered cluster."""
    seen = {}
    for idx, node in enumerate(g.seeds):
        key = frozenset(node.cluster)
        if key in seen and seen[key] != idx:
            return False
        seen[key] = idx
    return True


# -- presentation -------------------------------------------------------------

def cluster_strings(s: Seed) -> list[str]:
    names = s.variable_names()
    return [laurent.format_fraction(p, names) for p in s.cluster]


def seed_str(s: Seed) -> str:
    names = s.variable_names()
    parts = ", ".join(cluster_strings(s))
    if s.quiver.m:
        parts += "; " + ", ".join(names[s.quiver.n:])
    arrows = ", ".join(f"{i + 1}->{j + 1}" + (f"x{w}" if w > 1 else "")
                       for (i, j, w) in s.quiver.arrows())
    return f"(({parts}), [{arrows}])"


def to_json(s: Seed) -> dict:
    return {
        "quiver": qv.to_json(s.quiver),
        "cluster": [laurent.to_json(p) for p in s.cluster],
    }


def from_json(obj: Mapping) -> Seed:
    q = qv.from_json(obj["quiver"])
    cluster = tuple(laurent.from_json(p) for p in obj["cluster"])
    return Seed(q, cluster)


def graph_to_json(g: ExchangeGraph) -> dict:
    return {
        "nodes": [to_json(s) for s in g.seeds],
        "edges": [[u, k + 1, v] for (u, k, v) in g.edges],
        "root": g.root,
    }


def graph_to_dot(g: ExchangeGraph) -> str:
    lines = ["graph exchange {"]
    for idx, node in enumerate(g.seeds):
        label = ", ".join(cluster_strings(node))
        lines.append(f'  s{idx} [label="{label}"];')
    seen = set()
    for (u, k, v) in g.edges:
        if (v, u) in seen or (u, v) in seen:
            continue
        seen.add((u, v))
        lines.append(f'  s{u} -- s{v} [label="{k + 1}"];')
    lines.append("}")
    return "\n".join(lines)
