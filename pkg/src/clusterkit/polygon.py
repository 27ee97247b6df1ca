"""Triangulations of a convex polygon as the type-A model.

Polygon vertices are labelled 1..N counterclockwise.  A diagonal is a
sorted pair of non-adjacent vertices; a triangulation is a maximal set
of pairwise noncrossing diagonals (always N-3 of them).  Flips, the
triangulation quiver, and the alignment with the cluster-tilting graph
of a type-A quiver are provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import clustercat as cc, quiver as qv
from .clustercat import CCObject, CTGraph, ct_graph
from .quiver import Quiver

Diagonal = tuple[int, int]


def _is_boundary(ngon: int, a: int, b: int) -> bool:
    a, b = min(a, b), max(a, b)
    return b - a == 1 or (a == 1 and b == ngon)


def make_diagonal(ngon: int, a: int, b: int) -> Diagonal:
    a, b = min(a, b), max(a, b)
    if not (1 <= a < b <= ngon):
        raise ValueError(f"bad polygon vertices ({a},{b})")
    if _is_boundary(ngon, a, b):
        raise ValueError(f"({a},{b}) is a boundary edge, not a diagonal")
    return (a, b)


def diagonals(ngon: int) -> list[Diagonal]:
    if ngon < 4:
        raise ValueError("need at least a square")
    return [(a, b) for a in range(1, ngon + 1) for b in range(a + 2, ngon + 1)
            if not (a == 1 and b == ngon)]


def crossing(d1: Diagonal, d2: Diagonal) -> bool:
    """Strict interior crossing; shared endpoints do not cross."""
    (a, b), (c, d) = sorted(d1), sorted(d2)
    if len({a, b, c, d}) < 4:
        return False
    return a < c < b < d or c < a < d < b


@dataclass(frozen=True)
class Triangulation:
    ngon: int
    diags: frozenset[Diagonal]

    def __post_init__(self):
        if len(self.diags) != self.ngon - 3:
            raise ValueError("a triangulation needs exactly ngon-3 diagonals")
        ds = sorted(self.diags)
        for i, d1 in enumerate(ds):
            make_diagonal(self.ngon, *d1)
            for d2 in ds[i + 1:]:
                if crossing(d1, d2):
                    raise ValueError(f"diagonals {d1} and {d2} cross")

    def ordered(self) -> tuple[Diagonal, ...]:
        return tuple(sorted(self.diags))

    def edges(self) -> set[Diagonal]:
        sides = {(i, i + 1) for i in range(1, self.ngon)} | {(1, self.ngon)}
        return sides | set(self.diags)

    def triangles(self) -> list[tuple[int, int, int]]:
        """Faces; in convex position these are exactly the pairwise-adjacent
        vertex triples."""
        e = self.edges()
        out = []
        for a in range(1, self.ngon + 1):
            for b in range(a + 1, self.ngon + 1):
                if (a, b) not in e:
                    continue
                for c in range(b + 1, self.ngon + 1):
                    if (b, c) in e and (a, c) in e:
                        out.append((a, b, c))
        return out


def triangulations(ngon: int) -> list[Triangulation]:
    """All triangulations, by ear recursion over the fan vertex."""
    if ngon < 4:
        raise ValueError("need at least a square")

    def solve(vertices: tuple[int, ...]) -> list[frozenset[Diagonal]]:
        if len(vertices) < 3:
            return [frozenset()]
        first, last = vertices[0], vertices[-1]
        out = []
        for idx in range(1, len(vertices) - 1):
            mid = vertices[idx]
            for left in solve(vertices[: idx + 1]):
                for right in solve(vertices[idx:]):
                    extra = set()
                    if not _is_boundary(ngon, first, mid):
                        extra.add((min(first, mid), max(first, mid)))
                    if not _is_boundary(ngon, mid, last):
                        extra.add((min(mid, last), max(mid, last)))
                    out.append(left | right | frozenset(extra))
        return out

    found = {t for t in solve(tuple(range(1, ngon + 1)))}
    return sorted((Triangulation(ngon, t) for t in found), key=lambda t: t.ordered())


def flip(t: Triangulation, d: Diagonal) -> Triangulation:
    """Replace d by the other diagonal of its surrounding quadrilateral."""
    d = tuple(sorted(d))
    if d not in t.diags:
        raise ValueError(f"{d} is not in the triangulation")
    a, b = d
    opposite = [c for (u, v, w) in t.triangles()
                if d in ((u, v), (v, w), (u, w))
                for c in (u, v, w) if c not in d]
    assert len(opposite) == 2, "interior diagonal must bound two triangles"
    new_d = (min(opposite), max(opposite))
    return Triangulation(t.ngon, (t.diags - {d}) | {new_d})


def quiver_of_triangulation(t: Triangulation, with_boundary: bool = False) -> Quiver:
    """Quiver on the diagonals of t: one arrow per triangle between its two
    (or three) triangulation sides, oriented counterclockwise within the
    triangle.  With with_boundary, polygon edges join in as frozen
    vertices in the coefficient pattern.
    """
    diags = t.ordered()
    index = {d: i for i, d in enumerate(diags)}
    frozen: list[Diagonal] = []
    if with_boundary:
        sides = sorted({(i, i + 1) for i in range(1, t.ngon)} | {(1, t.ngon)})
        frozen = list(sides)
        for i, s in enumerate(frozen):
            index[s] = len(diags) + i
    arrows = []
    for (u, v, w) in t.triangles():
        cycle = [(u, v), (v, w), (min(u, w), max(u, w))]
        for pos in range(3):
            s1, s2 = cycle[pos], cycle[(pos + 1) % 3]
            if s1 in index and s2 in index:
                arrows.append((index[s1], index[s2]))
    return Quiver.from_arrows(len(diags), arrows, frozen=len(frozen))


# -- alignment with the cluster category ------------------------------------------

@dataclass(frozen=True)
class Alignment:
    """Graph isomorphism between the flip graph and the cluster-tilting
    graph, with the induced diagonal-to-object dictionary.

    tilting_of and position_of are keyed by the diagonal set of a
    triangulation; tilting_of carries the mutated tilting object whose
    summand positions line up with position_of, so the two sides can be
    compared slot by slot.
    """

    quiver: Quiver
    graph: CTGraph
    node_of: dict[frozenset[Diagonal], int]
    triangulation_of: dict[int, Triangulation]
    tilting_of: dict  # frozenset[Diagonal] -> ClusterTilting
    position_of: dict[frozenset[Diagonal], dict[Diagonal, int]]
    object_of: dict[Diagonal, CCObject]


class AlignmentError(AssertionError):
    pass


def _quiver_matches(t: Triangulation, posmap: dict[Diagonal, int], target: Quiver) -> bool:
    qt = quiver_of_triangulation(t)
    order = t.ordered()
    perm = tuple(posmap[d] for d in order)
    return qv.permute(qt, perm) == target


def align_models(q: Quiver) -> Alignment:
    """Match triangulations of the (n+3)-gon with cluster tilting objects.

    Roots the search at the fan triangulation, paired with a node whose
    tilting seed is isomorphic to the fan quiver, then walks flips and
    mutations in lockstep, carrying the mutated tilting object along so
    that summand positions always track diagonal positions.  Every step
    must agree locally (triangulation quiver equals tilting seed) and
    every diagonal must name a single object.
    """
    tag = qv.classify_diagram(q)
    if tag.family is None or not tag.family.startswith("A") or "~" in tag.family:
        raise ValueError(f"type A quiver required, got {tag}")
    n = q.n
    ngon = n + 3
    all_tris = triangulations(ngon)
    graph = ct_graph(q)

    fan = Triangulation(ngon, frozenset((1, k) for k in range(3, ngon)))
    fan_quiver = quiver_of_triangulation(fan)
    fan_order = fan.ordered()
    fan_canon, fan_perm = qv.canonical_form(fan_quiver)

    for root_id, node in enumerate(graph.nodes):
        node_canon, _ = qv.canonical_form(node.seed_quiver)
        if node_canon != fan_canon:
            continue
        for auto in qv.canonical_perms(node.seed_quiver):
            # fan vertex d -> canonical slot -> node vertex
            inv_auto = [0] * n
            for old, new in enumerate(auto):
                inv_auto[new] = old
            posmap0 = {d: inv_auto[fan_perm[i]] for i, d in enumerate(fan_order)}
            try:
                return _walk_alignment(q, graph, all_tris, fan, posmap0, node)
            except AlignmentError:
                continue
    raise AlignmentError("no consistent alignment found")


def _walk_alignment(q, graph, all_tris, fan, posmap0, root_node) -> Alignment:
    from .clustercat import ClusterTilting

    if not _quiver_matches(fan, posmap0, root_node.seed_quiver):
        raise AlignmentError("fan quiver mismatch at the root")
    node_of: dict[frozenset[Diagonal], int] = {}
    triangulation_of: dict[int, Triangulation] = {}
    position_of: dict[frozenset[Diagonal], dict[Diagonal, int]] = {}
    object_of: dict[Diagonal, CCObject] = {}
    tilting_of: dict[frozenset[Diagonal], ClusterTilting] = {}

    def record(t: Triangulation, tilt: ClusterTilting, posmap):
        nid = graph.node_by_summands(tilt.summands)
        node_of[t.diags] = nid
        triangulation_of[nid] = t
        tilting_of[t.diags] = tilt
        position_of[t.diags] = dict(posmap)
        for d in t.diags:
            obj = tilt.summands[posmap[d]]
            if object_of.setdefault(d, obj) != obj:
                raise AlignmentError(f"diagonal {d} names two objects")

    record(fan, root_node, posmap0)
    queue = [fan.diags]
    while queue:
        key = queue.pop()
        t = next(t2 for t2 in all_tris if t2.diags == key)  # small n; fine
        tilt = tilting_of[key]
        posmap = position_of[key]
        for d in t.ordered():
            p = posmap[d]
            t2 = flip(t, d)
            tilt2 = cc.mutate_ct(q, tilt, p)
            new = _new_diag(t2, t)
            posmap2 = {e: posmap[e] for e in t2.diags if e != new}
            posmap2[new] = p
            if t2.diags in tilting_of:
                known = tilting_of[t2.diags]
                if frozenset(known.summands) != frozenset(tilt2.summands):
                    raise AlignmentError("flip and mutation disagree")
                continue
            if not _quiver_matches(t2, posmap2, tilt2.seed_quiver):
                raise AlignmentError(f"quiver mismatch after flipping {d}")
            record(t2, tilt2, posmap2)
            queue.append(t2.diags)
    if len(node_of) != len(all_tris) or len(set(node_of.values())) != len(graph.nodes):
        raise AlignmentError("alignment did not cover both graphs")
    return Alignment(q, graph, node_of, triangulation_of, tilting_of, position_of, object_of)


def _new_diag(t2: Triangulation, t1: Triangulation) -> Diagonal:
    (d,) = t2.diags - t1.diags
    return d


# -- rendering -----------------------------------------------------------------------

def vertex_coordinates(ngon: int) -> list[tuple[float, float]]:
    """Unit-circle positions, vertex 1 at angle 90 degrees, counterclockwise."""
    out = []
    for i in range(ngon):
        angle = math.pi / 2 + 2 * math.pi * i / ngon
        out.append((math.cos(angle), math.sin(angle)))
    return out


def triangulation_svg(t: Triangulation, size: int = 240,
                      highlight: Iterable[Diagonal] = ()) -> str:
    """Fixed-format SVG: polygon outline, diagonals, vertex labels."""
    coords = vertex_coordinates(t.ngon)
    highlight = {tuple(sorted(d)) for d in highlight}

    def pt(i: int) -> tuple[str, str]:
        x, y = coords[i - 1]
        # y flipped into screen coordinates; margin of 10%
        sx = (x * 0.85 + 1) * size / 2
        sy = (-y * 0.85 + 1) * size / 2
        return (f"{sx:.2f}", f"{sy:.2f}")

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}">',
    ]
    ring = " ".join(",".join(pt(i)) for i in range(1, t.ngon + 1))
    lines.append(f'<polygon points="{ring}" fill="none" stroke="black"/>')
    for d in t.ordered():
        (x1, y1), (x2, y2) = pt(d[0]), pt(d[1])
        color = "crimson" if d in highlight else "steelblue"
        lines.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="{color}" stroke-width="2" data-diagonal="{d[0]}-{d[1]}"/>'
        )
    for i in range(1, t.ngon + 1):
        x, y = pt(i)
        lines.append(f'<text x="{x}" y="{y}" font-size="10" text-anchor="middle">{i}</text>')
    lines.append("</svg>")
    return "\n".join(lines)


def to_json(t: Triangulation) -> dict:
    return {"ngon": t.ngon, "diagonals": [list(d) for d in t.ordered()]}
