"""Combinatorial model of the cluster category of a Dynkin quiver.

Indecomposable objects are the module indecomposables together with the
shifted projectives; Ext^1 in the orbit category is symmetrized module
Ext plus the Hom-into-shift rule.  Cluster tilting objects, their
mutation graph, the denominator map, and the cluster-character expansion
with its finite-field Euler-characteristic oracle all live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Iterable, Mapping, Sequence

from . import laurent, linalg, quiver as qv, repn
from .laurent import LaurentPoly
from .quiver import Quiver
from .repn import DimVector, Representation


@dataclass(frozen=True)
class CCObject:
    """Indecomposable of the fundamental domain: a module by dimension
    vector, or a shifted projective P_i[1]."""

    kind: str  # "module" | "shift"
    dims: DimVector | None = None
    vertex: int | None = None

    @classmethod
    def module(cls, dims: Sequence[int]) -> "CCObject":
        return cls("module", dims=tuple(dims))

    @classmethod
    def shift(cls, vertex: int) -> "CCObject":
        return cls("shift", vertex=vertex)

    def key(self):
        if self.kind == "shift":
            return (1, (self.vertex,))
        return (0, self.dims)

    def __str__(self) -> str:
        if self.kind == "shift":
            return f"P{self.vertex + 1}[1]"
        return "M" + "".join(str(x) for x in self.dims)


def ind_objects(q: Quiver) -> list[CCObject]:
    """All indecomposables: one module per positive root plus n shifts."""
    mods = [CCObject.module(d) for d in repn.positive_roots(q)]
    shifts = [CCObject.shift(i) for i in range(q.n)]
    return sorted(mods + shifts, key=CCObject.key)


@cache
def _ext_pair_table(q: Quiver) -> dict[tuple[DimVector, DimVector], int]:
    roots = repn.positive_roots(q)
    reps = {d: repn.build_indecomposable(q, d) for d in roots}
    return {(a, b): repn.ext_dim(reps[a], reps[b]) for a in roots for b in roots}


def ext1_cc(q: Quiver, x: CCObject, y: CCObject) -> int:
    """Ext^1 in the orbit category; 2-CY symmetric by construction."""
    if x.kind == "module" and y.kind == "module":
        table = _ext_pair_table(q)
        return table[(x.dims, y.dims)] + table[(y.dims, x.dims)]
    if x.kind == "shift" and y.kind == "shift":
        return 0
    module = x if x.kind == "module" else y
    shift = x if x.kind == "shift" else y
    return module.dims[shift.vertex]  # = dim Hom(P_i, M)


def _compatible(q: Quiver, x: CCObject, y: CCObject) -> bool:
    return ext1_cc(q, x, y) == 0


def cluster_tilting_objects(q: Quiver) -> list[frozenset[CCObject]]:
    """All n-element rigid sets; checks along the way that nothing larger
    is rigid, so maximal rigid and size-n coincide here."""
    objs = ind_objects(q)
    n = q.n
    out: list[frozenset[CCObject]] = []

    def extend(chosen: list[CCObject], rest: list[CCObject]):
        if len(chosen) == n:
            assert not any(
                all(_compatible(q, c, cand) for c in chosen) for cand in rest
            ), "found a rigid set larger than n"
            out.append(frozenset(chosen))
            return
        for idx, cand in enumerate(rest):
            if all(_compatible(q, c, cand) for c in chosen):
                extend(chosen + [cand], rest[idx + 1:])

    extend([], objs)
    return out


@dataclass(frozen=True)
class ClusterTilting:
    """Ordered cluster tilting object with its propagated seed quiver;
    position i of the summand tuple matches vertex i of the quiver."""

    summands: tuple[CCObject, ...]
    seed_quiver: Quiver

    def __post_init__(self):
        if len(self.summands) != self.seed_quiver.n:
            raise ValueError("summand count must match quiver size")


def root_tilting(q: Quiver) -> ClusterTilting:
    """The shifted projectives with the original quiver as tilting seed."""
    repn._require_dynkin(q)
    return ClusterTilting(tuple(CCObject.shift(i) for i in range(q.n)), q)


def mutate_ct(q: Quiver, t: ClusterTilting, i: int) -> ClusterTilting:
    """Exchange the summand at position i for its unique partner."""
    others = [s for j, s in enumerate(t.summands) if j != i]
    candidates = [
        x for x in ind_objects(q)
        if x not in t.summands and all(_compatible(q, x, o) for o in others)
    ]
    assert len(candidates) == 1, f"exchange partner not unique: {candidates}"
    new_summands = list(t.summands)
    new_summands[i] = candidates[0]
    return ClusterTilting(tuple(new_summands), qv.mutate(t.seed_quiver, i))


@dataclass(frozen=True)
class CTGraph:
    nodes: tuple[ClusterTilting, ...]
    edges: tuple[tuple[int, int, int], ...]  # (node, position, node)
    root: int = 0

    def __len__(self) -> int:
        return len(self.nodes)

    def node_by_summands(self, summands: Iterable[CCObject]) -> int:
        want = frozenset(summands)
        for idx, node in enumerate(self.nodes):
            if frozenset(node.summands) == want:
                return idx
        raise KeyError("no such cluster tilting object")


def ct_graph(q: Quiver) -> CTGraph:
    """BFS of cluster tilting objects from the shifted-projective root.

    Seed quivers propagate along edges by quiver mutation.  Whenever two
    paths meet, the propagated quivers must agree up to the permutation
    aligning the summand tuples; that closure property is asserted, and
    the node count is checked against direct clique enumeration.
    """
    root = root_tilting(q)
    ids: dict[frozenset[CCObject], int] = {frozenset(root.summands): 0}
    nodes: list[ClusterTilting] = [root]
    edges: list[tuple[int, int, int]] = []
    frontier = [0]
    while frontier:
        nxt = []
        for uid in frontier:
            u = nodes[uid]
            for i in range(q.n):
                child = mutate_ct(q, u, i)
                key = frozenset(child.summands)
                if key not in ids:
                    ids[key] = len(nodes)
                    nodes.append(child)
                    nxt.append(ids[key])
                else:
                    known = nodes[ids[key]]
                    perm = tuple(known.summands.index(s) for s in child.summands)
                    assert qv.permute(child.seed_quiver, perm) == known.seed_quiver, \
                        "seed quiver propagation is path dependent"
                edges.append((uid, i, ids[key]))
        frontier = nxt
    assert len(nodes) == len(cluster_tilting_objects(q)), "BFS missed cluster tilting objects"
    return CTGraph(tuple(nodes), tuple(edges))


# -- denominator map -----------------------------------------------------------

def alpha_map(v: LaurentPoly, q: Quiver) -> CCObject:
    """Cluster variable to indecomposable: initial variables go to shifted
    projectives, everything else to the module cut out by its denominator."""
    repn._require_dynkin(q)
    for i in range(q.n):
        if v == LaurentPoly.variable(q.n, i):
            return CCObject.shift(i)
    d = laurent.denominator_vector(v)
    roots = set(repn.positive_roots(q))
    if d not in roots:
        raise ValueError(f"denominator {d} is not a positive root")
    rep = repn.build_indecomposable(q, d)
    assert repn.ext_dim(rep, rep) == 0
    return CCObject.module(d)


# -- cluster character ----------------------------------------------------------

def _exponent_of(q: Quiver, e: Sequence[int], m: Sequence[int]) -> tuple[int, ...]:
    """Exponent vector -<e, a_i> - <a_i, m - e> of the character formula."""
    n = q.n
    rest = [mm - ee for mm, ee in zip(m, e)]
    out = []
    for i in range(n):
        alpha = tuple(1 if v == i else 0 for v in range(n))
        out.append(-repn.euler_form(q, e, alpha) - repn.euler_form(q, alpha, rest))
    return tuple(out)


def cc_expand(q: Quiver, m: Sequence[int], chi: Mapping[DimVector, int]) -> LaurentPoly:
    """Laurent expansion sum_e chi(e) u^(exponent(e)) for a module with
    dimension vector m."""
    repn._require_acyclic(q)
    m = tuple(m)
    terms: dict[tuple[int, ...], int] = {}
    for e, value in chi.items():
        e = tuple(e)
        if any(x < 0 or x > mm for x, mm in zip(e, m)):
            raise ValueError(f"subdimension {e} out of range for {m}")
        if value == 0:
            continue
        exp = _exponent_of(q, e, m)
        terms[exp] = terms.get(exp, 0) + value
    return LaurentPoly(q.n, terms)


class ExtractionError(ValueError):
    """The polynomial cannot be resolved into a chi table for this module."""


def cc_extract(v: LaurentPoly, q: Quiver, m: Sequence[int]) -> dict[DimVector, int]:
    """Invert the character formula: recover chi(Gr_e) for all 0 <= e <= m.

    The exponent map is affine with linear part the exchange matrix, which
    can be singular, so several e may share one monomial.  The trivial
    values chi(0) = chi(m) = 1 seed a propagation that resolves every
    collision group with at most one unknown; anything still ambiguous is
    an error rather than a guess.
    """
    repn._require_acyclic(q)
    m = tuple(m)
    if laurent.denominator_vector(v) != m:
        raise ExtractionError(f"denominator of v is not {m}")
    box = [tuple(e) for e in itertools.product(*(range(x + 1) for x in m))]
    groups: dict[tuple[int, ...], list[DimVector]] = {}
    for e in box:
        groups.setdefault(_exponent_of(q, e, m), []).append(e)
    coeffs = {exp: c for exp, c in v.items()}
    for exp in coeffs:
        if exp not in groups:
            raise ExtractionError(f"monomial {exp} is not a character exponent for {m}")
        if Fraction(coeffs[exp]).denominator != 1:
            raise ExtractionError("character coefficients must be integers")

    chi: dict[DimVector, int] = {}
    zero = tuple(0 for _ in m)
    chi[zero] = 1
    chi[m] = 1
    changed = True
    while changed:
        changed = False
        for exp, members in groups.items():
            total = int(coeffs.get(exp, 0))
            unknown = [e for e in members if e not in chi]
            known_sum = sum(chi[e] for e in members if e in chi)
            if not unknown:
                if known_sum != total:
                    raise ExtractionError(f"inconsistent chi values at exponent {exp}")
                continue
            if len(unknown) == 1:
                chi[unknown[0]] = total - known_sum
                changed = True
    missing = [e for e in box if e not in chi]
    if missing:
        raise ExtractionError(f"ambiguous extraction; unresolved {missing}")
    return chi


# -- quiver Grassmannians over prime fields ---------------------------------------

_PRIMES = (2, 3, 5, 7)


def _rep_modp(rep: Representation, p: int) -> dict[repn.ArrowKey, list[list[int]]]:
    out = {}
    for key, mat in rep.maps.items():
        rows = []
        for row in mat:
            scaled = []
            for x in row:
                fx = Fraction(x)
                if fx.denominator % p == 0:
                    raise ValueError(f"entry {x} has no reduction mod {p}")
                scaled.append((fx.numerator * pow(fx.denominator, p - 2, p)) % p)
            rows.append(scaled)
        out[key] = rows
    return out


def grassmannian_points(rep: Representation, e: Sequence[int], p: int) -> int:
    """Count subrepresentations of dimension vector e over F_p by brute force."""
    e = tuple(e)
    if any(d > 3 for d in rep.dims):
        raise ValueError("desk-scale limit: vertex dimensions must be <= 3")
    if p not in _PRIMES:
        raise ValueError("desk-scale limit: p must be one of 2, 3, 5, 7")
    if any(x < 0 or x > d for x, d in zip(e, rep.dims)):
        return 0
    q = rep.quiver
    maps = _rep_modp(rep, p)
    choices = [linalg.subspaces_modp(rep.dims[vtx], e[vtx], p) for vtx in range(q.n)]
    arrows = repn.arrows_of(q)

    count = 0
    chosen: list = [None] * q.n

    def ok_so_far(vtx: int) -> bool:
        for key in arrows:
            i, j, _ = key
            if i > vtx or j > vtx:
                continue
            basis_i, basis_j = chosen[i], chosen[j]
            f = maps[key]
            for u in basis_i:
                img = [sum(f[r][c] * u[c] for c in range(len(u))) % p for r in range(len(f))]
                if not linalg.in_rowspace_modp(img, basis_j, p):
                    return False
        return True

    def walk(vtx: int):
        nonlocal count
        if vtx == q.n:
            count += 1
            return
        for basis in choices[vtx]:
            chosen[vtx] = basis
            if ok_so_far(vtx):
                walk(vtx + 1)
        chosen[vtx] = None

    walk(0)
    return count


def chi_oracle(rep: Representation, e: Sequence[int]) -> int:
    """Euler characteristic of the quiver Grassmannian of a rigid module,
    via counting over enough primes, interpolating the point-count
    polynomial, and evaluating at 1."""
    if repn.ext_dim(rep, rep) != 0:
        raise ValueError("chi oracle needs a rigid module")
    e = tuple(e)
    degree = sum(x * (d - x) for x, d in zip(e, rep.dims))
    needed = degree + 1
    if needed > len(_PRIMES):
        raise ValueError(f"degree bound {degree} exceeds the available prime budget")
    use = _PRIMES[:needed]
    counts = [grassmannian_points(rep, e, p) for p in use]
    # Lagrange interpolation, evaluated at 1
    value = Fraction(0)
    for i, p_i in enumerate(use):
        term = Fraction(counts[i])
        for j, p_j in enumerate(use):
            if i != j:
                term *= Fraction(1 - p_j, p_i - p_j)
        value += term
    if needed < len(_PRIMES):
        check_p = _PRIMES[needed]
        predicted = Fraction(0)
        for i, p_i in enumerate(use):
            term = Fraction(counts[i])
            for j, p_j in enumerate(use):
                if i != j:
                    term *= Fraction(check_p - p_j, p_i - p_j)
            predicted += term
        if predicted != grassmannian_points(rep, e, check_p):
            raise ArithmeticError("point counts are not polynomial at this scale")
    if value.denominator != 1:
        raise ArithmeticError("interpolated characteristic is not an integer")
    return int(value)


def chi_table(rep: Representation) -> dict[DimVector, int]:
    """chi over the whole subdimension box, oracle-backed."""
    box = itertools.product(*(range(d + 1) for d in rep.dims))
    return {tuple(e): chi_oracle(rep, tuple(e)) for e in box}


# -- JSON and DOT ------------------------------------------------------------------

def cc_to_json(x: CCObject) -> dict:
    if x.kind == "shift":
        return {"kind": "shift", "vertex": x.vertex + 1}
    return {"kind": "module", "dim": list(x.dims)}


def cc_from_json(obj: Mapping) -> CCObject:
    if obj["kind"] == "shift":
        return CCObject.shift(int(obj["vertex"]) - 1)
    return CCObject.module(tuple(int(x) for x in obj["dim"]))


def ct_graph_to_dot(g: CTGraph) -> str:
    lines = ["graph ct {"]
    for idx, node in enumerate(g.nodes):
        label = " + ".join(str(s) for s in node.summands)
        lines.append(f'  t{idx} [label="{label}"];')
    seen = set()
    for (u, i, v) in g.edges:
        if (v, u) in seen or (u, v) in seen:
            continue
        seen.add((u, v))
        lines.append(f"  t{u} -- t{v};")
    lines.append("}")
    return "\n".join(lines)
