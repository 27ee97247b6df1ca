"""Skew-symmetric exchange quivers and their mutation combinatorics.

A quiver on n mutable plus m frozen vertices is stored as a signed
integer matrix b with b[i][j] = #(arrows i -> j) - #(arrows j -> i).
The signed entry makes loops and 2-cycles unrepresentable.  Vertices are
0-based in this API; JSON files are 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class Quiver:
    n: int
    m: int
    b: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        size = self.n + self.m
        if self.n < 0 or self.m < 0 or size == 0:
            raise ValueError("need at least one vertex")
        if len(self.b) != size or any(len(row) != size for row in self.b):
            raise ValueError("matrix size does not match vertex counts")
        for i in range(size):
            if self.b[i][i] != 0:
                raise ValueError("nonzero diagonal entry (loop)")
            for j in range(i + 1, size):
                if self.b[i][j] != -self.b[j][i]:
                    raise ValueError("matrix is not skew-symmetric")

    @property
    def size(self) -> int:
        return self.n + self.m

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable[tuple[int, int] | tuple[int, int, int]],
                    frozen: int = 0) -> "Quiver":
        """Build from 0-based (src, dst[, weight]) arrow triples."""
        size = n + frozen
        b = [[0] * size for _ in range(size)]
        for arrow in arrows:
            i, j = arrow[0], arrow[1]
            w = arrow[2] if len(arrow) > 2 else 1
            if i == j:
                raise ValueError("loops are not allowed")
            if w < 1:
                raise ValueError("arrow weight must be positive")
            b[i][j] += w
            b[j][i] -= w
        return cls(n, frozen, tuple(tuple(row) for row in b))

    def arrows(self, include_frozen: bool = True) -> list[tuple[int, int, int]]:
        """Signed-positive entries as (src, dst, weight)."""
        limit = self.size if include_frozen else self.n
        out = []
        for i in range(limit):
            for j in range(limit):
                if self.b[i][j] > 0:
                    out.append((i, j, self.b[i][j]))
        return out

    def is_mutable(self, k: int) -> bool:
        return 0 <= k < self.n


def mutate(q: Quiver, k: int) -> Quiver:
    """Fomin-Zelevinsky mutation at a mutable vertex k.

    Matrix form of the arrow rules: add a composite arrow for every path
    through k, reverse arrows at k, cancel 2-cycles.  Entries joining two
    frozen vertices are left untouched; they carry no meaning anyway.
    """
    if not q.is_mutable(k):
        raise IndexError(f"vertex {k} is not mutable (n={q.n})")
    size = q.size
    b = q.b
    new = [list(row) for row in b]
    for i in range(size):
        for j in range(size):
            if i >= q.n and j >= q.n:
                continue
            if i == k or j == k:
                new[i][j] = -b[i][j]
            else:
                bik, bkj = b[i][k], b[k][j]
                new[i][j] = b[i][j] + (abs(bik) * bkj + bik * abs(bkj)) // 2
    return Quiver(q.n, q.m, tuple(tuple(row) for row in new))


def mutate_sequence(q: Quiver, ks: Sequence[int]) -> Quiver:
    for k in ks:
        q = mutate(q, k)
    return q


def is_acyclic(q: Quiver) -> bool:
    """True when the mutable part has no directed cycle (Kahn peeling)."""
    indeg = [0] * q.n
    for i in range(q.n):
        for j in range(q.n):
            if q.b[i][j] > 0:
                indeg[j] += 1
    stack = [v for v in range(q.n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for j in range(q.n):
            if q.b[v][j] > 0:
                indeg[j] -= 1
                if indeg[j] == 0:
                    stack.append(j)
    return seen == q.n


def sinks(q: Quiver) -> list[int]:
    return [v for v in range(q.n)
            if all(q.b[v][j] <= 0 for j in range(q.n))]


def sources(q: Quiver) -> list[int]:
    return [v for v in range(q.n)
            if all(q.b[j][v] <= 0 for j in range(q.n))]


# -- diagram classification --------------------------------------------------

class DiagramKind(str, Enum):
    DYNKIN = "Dynkin"
    EXTENDED = "ExtendedDynkin"
    TWO_VERTEX = "TwoVertex"
    OTHER = "Other"


@dataclass(frozen=True)
class DiagramClass:
    kind: DiagramKind
    family: str | None = None  # e.g. "A3", "D4", "E6", "A~2", "E8~"

    def __str__(self) -> str:
        if self.family is None:
            return self.kind.value
        return f"{self.kind.value}({self.family})"


def _underlying_edges(q: Quiver) -> dict[tuple[int, int], int]:
    """Unoriented multigraph of the mutable part: {i<j: multiplicity}."""
    edges = {}
    for i in range(q.n):
        for j in range(i + 1, q.n):
            w = abs(q.b[i][j])
            if w:
                edges[(i, j)] = w
    return edges


def _components(nverts: int, edges: Mapping[tuple[int, int], int]) -> list[set[int]]:
    parent = list(range(nverts))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j) in edges:
        parent[find(i)] = find(j)
    comps: dict[int, set[int]] = {}
    for v in range(nverts):
        comps.setdefault(find(v), set()).add(v)
    return list(comps.values())


def _classify_simple_graph(verts: list[int], edges: dict[tuple[int, int], int]) -> DiagramClass:
    """Classify one connected unoriented multigraph against the Dynkin families."""
    nv = len(verts)
    nedges = sum(edges.values())
    if any(w > 1 for w in edges.values()):
        # the only family with a multi-edge is the Kronecker cycle A~1
        if nv == 2 and nedges == 2:
            return DiagramClass(DiagramKind.EXTENDED, "A~1")
        return DiagramClass(DiagramKind.TWO_VERTEX if nv <= 2 else DiagramKind.OTHER)
    deg = {v: 0 for v in verts}
    for (i, j) in edges:
        deg[i] += 1
        deg[j] += 1
    degs = sorted(deg.values())

    if nedges == nv - 1:  # tree
        if nv == 0:
            return DiagramClass(DiagramKind.OTHER)
        if all(d <= 2 for d in degs):
            return DiagramClass(DiagramKind.DYNKIN, f"A{nv}")
        if degs.count(3) == 1 and degs[-1] == 3:
            lengths = sorted(_branch_lengths(verts, edges))
            if lengths[0] == 1 and lengths[1] == 1:
                return DiagramClass(DiagramKind.DYNKIN, f"D{nv}")
            if lengths == [1, 2, 2] and nv == 6:
                return DiagramClass(DiagramKind.DYNKIN, "E6")
            if lengths == [1, 2, 3] and nv == 7:
                return DiagramClass(DiagramKind.DYNKIN, "E7")
            if lengths == [1, 2, 4] and nv == 8:
                return DiagramClass(DiagramKind.DYNKIN, "E8")
            if lengths == [2, 2, 2] and nv == 7:
                return DiagramClass(DiagramKind.EXTENDED, "E~6")
            if lengths == [1, 3, 3] and nv == 8:
                return DiagramClass(DiagramKind.EXTENDED, "E~7")
            if lengths == [1, 2, 5] and nv == 9:
                return DiagramClass(DiagramKind.EXTENDED, "E~8")
        if degs.count(3) == 2 and degs[-1] == 3 and nv >= 6:
            # two fork vertices, each carrying two leaves, joined by a path
            if _is_double_fork(verts, edges):
                return DiagramClass(DiagramKind.EXTENDED, f"D~{nv - 1}")
        if degs and degs[-1] == 4 and degs.count(4) == 1 and nv == 5 and degs.count(1) == 4:
            return DiagramClass(DiagramKind.EXTENDED, "D~4")
    elif nedges == nv and nv >= 3 and all(d == 2 for d in degs):
        return DiagramClass(DiagramKind.EXTENDED, f"A~{nv - 1}")

    return DiagramClass(DiagramKind.TWO_VERTEX if nv <= 2 else DiagramKind.OTHER)


def _branch_lengths(verts, edges) -> list[int]:
    adj = {v: [] for v in verts}
    for (i, j) in edges:
        adj[i].append(j)
        adj[j].append(i)
    center = next(v for v in verts if len(adj[v]) == 3)
    lengths = []
    for start in adj[center]:
        prev, cur, steps = center, start, 1
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            steps += 1
        lengths.append(steps)
    return lengths


def _is_double_fork(verts, edges) -> bool:
    adj = {v: [] for v in verts}
    for (i, j) in edges:
        adj[i].append(j)
        adj[j].append(i)
    forks = [v for v in verts if len(adj[v]) == 3]
    if len(forks) != 2:
        return False
    for f in forks:
        if sum(1 for w in adj[f] if len(adj[w]) == 1) != 2:
            return False
    return True


def classify_diagram(q: Quiver) -> DiagramClass:
    """Family of the underlying unoriented multigraph of the mutable part.

    Only connected graphs land in a named family; for anything else the
    tag is TwoVertex (when there are at most two mutable vertices) or
    Other.
    """
    edges = _underlying_edges(q)
    comps = _components(q.n, edges)
    if len(comps) != 1:
        return DiagramClass(DiagramKind.TWO_VERTEX if q.n <= 2 else DiagramKind.OTHER)
    sub_edges = {e: w for e, w in edges.items()}
    return _classify_simple_graph(sorted(comps[0]), sub_edges)


def _classify_component(q: Quiver, comp: set[int]) -> DiagramClass:
    edges = {e: w for e, w in _underlying_edges(q).items() if e[0] in comp}
    return _classify_simple_graph(sorted(comp), edges)


# -- canonical form ----------------------------------------------------------

def permute(q: Quiver, perm: Sequence[int]) -> Quiver:
    """Relabel mutable vertices by perm (old index -> new index); frozen fixed."""
    size = q.size
    full = list(perm) + list(range(q.n, size))
    if sorted(perm) != list(range(q.n)):
        raise ValueError("perm must be a permutation of the mutable vertices")
    new = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            new[full[i]][full[j]] = q.b[i][j]
    return Quiver(q.n, q.m, tuple(tuple(row) for row in new))


def _perm_key(q: Quiver, perm: Sequence[int]) -> tuple:
    size = q.size
    full = list(perm) + list(range(q.n, size))
    inv = [0] * size
    for old, new in enumerate(full):
        inv[new] = old
    return tuple(q.b[inv[i]][inv[j]] for i in range(size) for j in range(size))


def _canonical_data(q: Quiver) -> tuple[tuple, list[tuple[int, ...]]]:
    """Minimal row-major flattened matrix plus every permutation achieving it.

    Plain exhaustive search over permutations of the mutable part; the
    factorial wall makes this a tool for a handful of vertices, which is
    all the enumerative work here ever needs.
    """
    best_key: tuple | None = None
    best_perms: list[tuple[int, ...]] = []
    for perm in itertools.permutations(range(q.n)):
        key = _perm_key(q, perm)
        if best_key is None or key < best_key:
            best_key, best_perms = key, [perm]
        elif key == best_key:
            best_perms.append(perm)
    assert best_key is not None
    return best_key, best_perms


@lru_cache(maxsize=65536)
def _canonical_cached(n: int, m: int, b: tuple) -> tuple[tuple, tuple[tuple[int, ...], ...]]:
    key, perms = _canonical_data(Quiver(n, m, b))
    return key, tuple(perms)


def canonical_form(q: Quiver) -> tuple[Quiver, tuple[int, ...]]:
    """Lexicographically minimal relabelling of the mutable part.

    Returns the canonical quiver plus one witnessing permutation
    (old index -> new index) with permute(q, perm) == canonical.
    """
    key, perms = _canonical_cached(q.n, q.m, q.b)
    size = q.size
    rows = tuple(tuple(key[i * size + j] for j in range(size)) for i in range(size))
    return Quiver(q.n, q.m, rows), perms[0]


def canonical_perms(q: Quiver) -> tuple[tuple[int, ...], ...]:
    """All permutations achieving the canonical matrix (a coset of Aut)."""
    return _canonical_cached(q.n, q.m, q.b)[1]


def is_isomorphic(p: Quiver, q: Quiver) -> bool:
    if (p.n, p.m) != (q.n, q.m):
        return False
    return canonical_form(p)[0] == canonical_form(q)[0]


# -- mutation class ----------------------------------------------------------

@dataclass(frozen=True)
class ClassSearch:
    """BFS closure of the mutation class; complete=False means the cap was hit."""

    complete: bool
    quivers: tuple[Quiver, ...]

    def __len__(self) -> int:
        return len(self.quivers)


def mutation_class(q: Quiver, max_size: int) -> ClassSearch:
    """All quivers reachable by mutation, up to relabelling of mutable vertices.

    Deterministic BFS: children explored in vertex order, frontier kept
    sorted by canonical matrix.  Hitting max_size distinct classes stops
    the search with complete=False; that is a verdict about the cap, not
    about the class.
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    start, _ = canonical_form(q)
    seen = {start.b: start}
    frontier = [start]
    while frontier:
        frontier.sort(key=lambda x: x.b)
        nxt = []
        for cur in frontier:
            for k in range(q.n):
                child, _ = canonical_form(mutate(cur, k))
                if child.b not in seen:
                    if len(seen) >= max_size:
                        return ClassSearch(False, tuple(sorted(seen.values(), key=lambda x: x.b)))
                    seen[child.b] = child
                    nxt.append(child)
        frontier = nxt
    return ClassSearch(True, tuple(sorted(seen.values(), key=lambda x: x.b)))


class Finiteness(str, Enum):
    FINITE_BY_THEOREM = "FiniteByTheorem"
    FINITE_BY_BFS = "FiniteByBFS"
    INFINITE_BY_THEOREM = "InfiniteByTheorem"
    INCONCLUSIVE = "Inconclusive"


def is_mutation_finite(q: Quiver, max_size: int = 10000) -> Finiteness:
    """Finiteness of the mutation class.

    Acyclic quivers are settled by the classification theorem: the class
    is finite exactly when every connected component of the mutable part
    has at most two vertices or is a Dynkin or extended Dynkin diagram.
    Mutation preserves components, so the componentwise reading is the
    correct one for disconnected quivers.  Non-acyclic quivers fall back
    to the BFS closure, which can only ever certify finiteness.
    """
    if is_acyclic(q):
        comps = _components(q.n, _underlying_edges(q))
        for comp in comps:
            if len(comp) <= 2:
                continue
            tag = _classify_component(q, comp)
            if tag.kind not in (DiagramKind.DYNKIN, DiagramKind.EXTENDED):
                return Finiteness.INFINITE_BY_THEOREM
        return Finiteness.FINITE_BY_THEOREM
    search = mutation_class(q, max_size)
    if search.complete:
        return Finiteness.FINITE_BY_BFS
    return Finiteness.INCONCLUSIVE


# -- JSON and DOT ------------------------------------------------------------

def to_json(q: Quiver) -> dict:
    return {
        "n": q.n,
        "frozen": q.m,
        "arrows": [[i + 1, j + 1, w] for (i, j, w) in q.arrows()],
    }


def from_json(obj: Mapping) -> Quiver:
    """Load the 1-indexed arrow-list format, rejecting malformed input."""
    try:
        n = int(obj["n"])
        m = int(obj.get("frozen", 0))
        raw = obj.get("arrows", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"invalid quiver JSON: {exc}") from exc
    if n < 1 or m < 0:
        raise ValueError("invalid quiver JSON: need n >= 1 and frozen >= 0")
    size = n + m
    seen_pairs = set()
    arrows = []
    for entry in raw:
        if len(entry) == 2:
            i, j = entry
            w = 1
        elif len(entry) == 3:
            i, j, w = entry
        else:
            raise ValueError(f"invalid arrow entry: {entry}")
        i, j, w = int(i), int(j), int(w)
        if not (1 <= i <= size and 1 <= j <= size):
            raise ValueError(f"arrow endpoint out of range: {entry}")
        if i == j:
            raise ValueError(f"loop at vertex {i} rejected")
        if w < 1:
            raise ValueError(f"arrow weight must be >= 1: {entry}")
        key = frozenset((i, j))
        if key in seen_pairs:
            raise ValueError(f"duplicate or opposing arrow pair {i},{j} rejected")
        seen_pairs.add(key)
        arrows.append((i - 1, j - 1, w))
    return Quiver.from_arrows(n, arrows, frozen=m)


def to_dot(q: Quiver, names: Sequence[str] | None = None) -> str:
    names = list(names) if names else [str(i + 1) for i in range(q.size)]
    lines = ["digraph quiver {"]
    for v in range(q.size):
        shape = "box" if v >= q.n else "circle"
        lines.append(f'  v{v} [label="{names[v]}", shape={shape}];')
    for (i, j, w) in q.arrows():
        label = f' [label="{w}"]' if w > 1 else ""
        lines.append(f"  v{i} -> v{j}{label};")
    lines.append("}")
    return "\n".join(lines)
