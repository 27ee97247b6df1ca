"""Quivers with potential: cyclic words, derivatives, premutation, and
the restricted reduction that eliminates 2-cycle terms.

Cycles are tuples of arrow names in composition order (rightmost arrow
applied first), stored in their lexicographically smallest rotation.
Potentials are finite rational combinations of such cycles; reduction is
the substitution algorithm with a degree bound, not the completed
power-series version.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import quiver as qv
from .quiver import Quiver

Cycle = tuple[str, ...]
PathSum = dict[tuple[str, ...], Fraction]


@dataclass(frozen=True)
class ArrowQuiver:
    """Named-arrow quiver; no loops, but 2-cycles and parallel arrows are
    allowed because they appear mid-mutation."""

    vertices: tuple[int, ...]
    arrows: tuple[tuple[str, int, int], ...]  # (name, src, dst)

    def __post_init__(self):
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        vset = set(self.vertices)
        for name, src, dst in self.arrows:
            if src == dst:
                raise ValueError(f"loop {name} at vertex {src}")
            if src not in vset or dst not in vset:
                raise ValueError(f"arrow {name} touches a missing vertex")

    @property
    def arrow_map(self) -> dict[str, tuple[int, int]]:
        return {name: (src, dst) for name, src, dst in self.arrows}

    def names(self) -> list[str]:
        return [a[0] for a in self.arrows]


def make_quiver(arrows: Iterable[tuple[str, int, int]],
                vertices: Iterable[int] | None = None) -> ArrowQuiver:
    arrows = tuple(sorted(arrows))
    if vertices is None:
        vertices = sorted({v for _, s, d in arrows for v in (s, d)})
    return ArrowQuiver(tuple(sorted(vertices)), arrows)


def canonical_cycle(word: Sequence[str]) -> Cycle:
    w = tuple(word)
    return min(w[i:] + w[:i] for i in range(len(w)))


def _check_cycle(q: ArrowQuiver, word: Sequence[str]) -> None:
    amap = q.arrow_map
    L = len(word)
    if L == 0:
        raise ValueError("empty cycle")
    for name in word:
        if name not in amap:
            raise ValueError(f"unknown arrow {name}")
    for i in range(L):
        # word[i+1] is applied before word[i]; wrap closes the cycle
        nxt = word[(i + 1) % L]
        if amap[nxt][1] != amap[word[i]][0]:
            raise ValueError(f"cycle {word} is not composable at {word[i]}")


class Potential:
    """Formal rational combination of cyclic words in canonical rotation."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Sequence[str], Fraction | int] | None = None):
        clean: dict[Cycle, Fraction] = {}
        for word, coef in (terms or {}).items():
            c = Fraction(coef)
            if c == 0:
                continue
            key = canonical_cycle(word)
            clean[key] = clean.get(key, Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v != 0}

    def __eq__(self, other):
        return isinstance(other, Potential) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "Potential(0)"
        body = " + ".join(f"{c}*{''.join(w)}" for w, c in sorted(self.terms.items()))
        return f"Potential({body})"

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Potential") -> "Potential":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return Potential(out)

    def without(self, word: Cycle) -> "Potential":
        out = dict(self.terms)
        out.pop(canonical_cycle(word), None)
        return Potential(out)

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def mentions(self, name: str) -> bool:
        return any(name in w for w in self.terms)


@dataclass(frozen=True)
class QP:
    quiver: ArrowQuiver
    w: Potential

    def __post_init__(self):
        for word in self.w.terms:
            _check_cycle(self.quiver, word)


@dataclass(frozen=True)
class ReductionIncomplete:
    """Degree bound hit before the potential stabilized; not an error."""

    partial: QP
    reason: str


# -- derivatives ---------------------------------------------------------------

def cyclic_derivative(qp: QP, name: str) -> PathSum:
    """Rotate each occurrence of the arrow to the front, delete it, and sum."""
    if name not in qp.quiver.arrow_map:
        raise ValueError(f"unknown arrow {name}")
    out: PathSum = {}
    for word, coef in qp.w.terms.items():
        for pos, arrow in enumerate(word):
            if arrow == name:
                rotated = word[pos:] + word[:pos]
                path = rotated[1:]
                out[path] = out.get(path, Fraction(0)) + coef
    return {p: c for p, c in out.items() if c != 0}


def jacobian_presentation(qp: QP) -> tuple[ArrowQuiver, list[PathSum]]:
    """The quiver plus the nonzero cyclic derivatives, one per arrow."""
    relations = []
    for name in sorted(qp.quiver.arrow_map):
        d = cyclic_derivative(qp, name)
        if d:
            relations.append(d)
    return qp.quiver, relations


def _path_endpoints(q: ArrowQuiver, path: Sequence[str]) -> tuple[int, int]:
    """(source, target) of a composition-order path, validating composability."""
    amap = q.arrow_map
    for i in range(len(path) - 1):
        if amap[path[i + 1]][1] != amap[path[i]][0]:
            raise ValueError(f"path {path} is not composable")
    return amap[path[-1]][0], amap[path[0]][1]


# -- premutation ------------------------------------------------------------------

def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    return name


def premutate(qp: QP, k: int) -> QP:
    """Composite arrows [ba] for every path a then b through k, all arrows
    at k reversed to stars, passages through k rewritten, and the
    star-triangle term added."""
    q = qp.quiver
    if k not in q.vertices:
        raise ValueError(f"unknown vertex {k}")
    amap = q.arrow_map
    in_k = sorted(n for n, (s, d) in amap.items() if d == k)
    out_k = sorted(n for n, (s, d) in amap.items() if s == k)
    for a in in_k:
        for b in out_k:
            if amap[a][0] == amap[b][1]:
                raise ValueError(f"2-cycle through {k} via {a},{b}")

    taken = set(amap)
    composite: dict[tuple[str, str], str] = {}
    star_of: dict[str, str] = {}
    new_arrows: list[tuple[str, int, int]] = []
    for name, (src, dst) in sorted(amap.items()):
        if dst == k:
            star = _fresh(name + "*", taken)
            taken.add(star)
            star_of[name] = star
            new_arrows.append((star, k, src))
        elif src == k:
            star = _fresh(name + "*", taken)
            taken.add(star)
            star_of[name] = star
            new_arrows.append((star, dst, k))
        else:
            new_arrows.append((name, src, dst))
    for b in out_k:
        for a in in_k:
            cname = _fresh(f"[{b}{a}]", taken)
            taken.add(cname)
            composite[(b, a)] = cname
            new_arrows.append((cname, amap[a][0], amap[b][1]))

    new_q = make_quiver(new_arrows, vertices=q.vertices)

    rewritten: dict[Cycle, Fraction] = {}
    for word, coef in qp.w.terms.items():
        # rotate so no passage through k straddles the wrap
        rot = next(word[i:] + word[:i] for i in range(len(word))
                   if amap[word[i]][1] != k)
        out: list[str] = []
        i = 0
        while i < len(rot):
            if i + 1 < len(rot) and amap[rot[i + 1]][1] == k:
                out.append(composite[(rot[i], rot[i + 1])])
                i += 2
            else:
                out.append(rot[i])
                i += 1
        key = canonical_cycle(tuple(out))
        rewritten[key] = rewritten.get(key, Fraction(0)) + coef

    for b in out_k:
        for a in in_k:
            word = canonical_cycle((star_of[a], star_of[b], composite[(b, a)]))
            rewritten[word] = rewritten.get(word, Fraction(0)) + 1

    return QP(new_q, Potential(rewritten))


# -- reduction ----------------------------------------------------------------------

def _substitute(q: ArrowQuiver, w: Potential,
                table: Mapping[str, PathSum], max_degree: int) -> Potential | None:
    """Replace arrows by path sums, expanding multilinearly; None past the bound."""
    out: dict[Cycle, Fraction] = {}
    for word, coef in w.terms.items():
        partials: list[tuple[list[str], Fraction]] = [([], coef)]
        for arrow in word:
            repl = table.get(arrow, {(arrow,): Fraction(1)})
            partials = [
                (chunk + list(path), c * pc)
                for chunk, c in partials
                for path, pc in repl.items()
            ]
            if any(len(chunk) > max_degree for chunk, _ in partials):
                return None
        for chunk, c in partials:
            if c == 0:
                continue
            key = canonical_cycle(tuple(chunk))
            out[key] = out.get(key, Fraction(0)) + c
    return Potential(out)


def reduce_qp(qp: QP, max_degree: int = 12) -> QP | ReductionIncomplete:
    """Eliminate every 2-cycle term of the potential by iterated
    substitution, then delete the pair of arrows it used.  Stops with
    ReductionIncomplete if a substitution grows past max_degree."""
    current = qp
    for _ in range(64):
        two_cycles = sorted(w for w in current.w.terms if len(w) == 2)
        if not two_cycles:
            return current
        word = two_cycles[0]
        u, v = word  # composition v then u
        lam = current.w.terms[word]
        w = current.w
        for _ in range(64):
            rest = w.without(word)
            if not rest.mentions(u) and not rest.mentions(v):
                break
            du = cyclic_derivative(QP(current.quiver, rest), u)
            dv = cyclic_derivative(QP(current.quiver, rest), v)

            def correction(identity: str, deriv: PathSum) -> PathSum:
                out = {(identity,): Fraction(1)}
                for p, c in deriv.items():
                    out[p] = out.get(p, Fraction(0)) - c / lam
                return {p: c for p, c in out.items() if c != 0}

            table = {u: correction(u, dv), v: correction(v, du)}
            new_w = _substitute(current.quiver, w, table, max_degree)
            if new_w is None:
                return ReductionIncomplete(QP(current.quiver, w), "degree bound exceeded")
            if new_w == w:
                return ReductionIncomplete(QP(current.quiver, w), "substitution stalled")
            w = new_w
            if canonical_cycle(word) not in w.terms:
                return ReductionIncomplete(QP(current.quiver, w),
                                           "quadratic term vanished during substitution")
            lam = w.terms[canonical_cycle(word)]
        else:
            return ReductionIncomplete(QP(current.quiver, w), "substitution did not converge")
        final = w.without(word)
        remaining = [(n, s, d) for (n, s, d) in current.quiver.arrows if n not in (u, v)]
        new_quiver = make_quiver(remaining, vertices=current.quiver.vertices)
        current = QP(new_quiver, final)
    return ReductionIncomplete(current, "too many 2-cycle terms")


def to_signed_quiver(q: ArrowQuiver) -> Quiver:
    """Net arrow counts as an exchange matrix; opposite pairs cancel."""
    verts = sorted(q.vertices)
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    b = [[0] * n for _ in range(n)]
    for _, src, dst in q.arrows:
        b[index[src]][index[dst]] += 1
        b[index[dst]][index[src]] -= 1
    return Quiver(n, 0, tuple(tuple(row) for row in b))


def mutate_qp(qp: QP, k: int, max_degree: int = 12) -> QP | ReductionIncomplete:
    """Premutation followed by reduction; when reduction completes, the
    signed image must match plain quiver mutation, and that is asserted."""
    pre = premutate(qp, k)
    result = reduce_qp(pre, max_degree)
    if isinstance(result, QP):
        verts = sorted(qp.quiver.vertices)
        expected = qv.mutate(to_signed_quiver(qp.quiver), verts.index(k))
        assert to_signed_quiver(result.quiver) == expected, \
            "reduced quiver disagrees with matrix mutation"
    return result


# -- relation extension -----------------------------------------------------------

def relation_extension(q: ArrowQuiver, relations: Sequence[PathSum]) -> ArrowQuiver:
    """One new arrow target -> source per relation; the input relations must
    each have a well-defined common source and target."""
    taken = set(q.arrow_map)
    new_arrows = list(q.arrows)
    for idx, rel in enumerate(relations):
        if not rel:
            raise ValueError("empty relation")
        endpoints = {_path_endpoints(q, path) for path in rel}
        if len(endpoints) != 1:
            raise ValueError(f"relation {idx} mixes endpoints {endpoints}")
        (src, dst), = endpoints
        name = _fresh(f"r{idx + 1}", taken)
        taken.add(name)
        new_arrows.append((name, dst, src))
    return make_quiver(new_arrows, vertices=q.vertices)


# -- JSON ----------------------------------------------------------------------------

def to_json(qp: QP) -> dict:
    return {
        "vertices": list(qp.quiver.vertices),
        "arrows": [{"name": n, "src": s, "dst": d} for n, s, d in qp.quiver.arrows],
        "potential": [{"coef": str(c), "cycle": list(w)}
                      for w, c in sorted(qp.w.terms.items())],
    }


def from_json(obj: Mapping) -> QP:
    arrows = [(a["name"], int(a["src"]), int(a["dst"])) for a in obj["arrows"]]
    vertices = obj.get("vertices")
    quiver = make_quiver(arrows, vertices=[int(v) for v in vertices] if vertices else None)
    terms = {tuple(t["cycle"]): Fraction(t["coef"]) for t in obj.get("potential", [])}
    return QP(quiver, Potential(terms))
