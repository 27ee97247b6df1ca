"""Small exact linear algebra over the rationals and prime fields.

Matrices are tuples of row tuples with explicit shapes passed alongside,
since zero-dimensional edges (0 x n and n x 0) carry real information in
quiver representation work.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

Row = tuple[Fraction, ...]
Rows = tuple[Row, ...]


def mat(rows: Sequence[Sequence]) -> Rows:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def zeros(nr: int, nc: int) -> Rows:
    return tuple((Fraction(0),) * nc for _ in range(nr))


def identity(n: int) -> Rows:
    return tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def mat_mul(a: Rows, b: Rows, nc_b: int) -> Rows:
    if not a:
        return ()
    if not b:
        return tuple((Fraction(0),) * nc_b for _ in a)
    return tuple(
        tuple(sum((ra[k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(nc_b))
        for ra in a
    )


def transpose(a: Rows, nc: int) -> Rows:
    return tuple(tuple(row[j] for row in a) for j in range(nc))


def rref(a: Rows, nc: int) -> tuple[Rows, list[int]]:
    """Reduced row echelon form and pivot column list."""
    m = [list(row) for row in a]
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m), pivots


def rank(a: Rows, nc: int) -> int:
    return len(rref(a, nc)[1])


def kernel_basis(a: Rows, nc: int) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space {v : a v = 0}."""
    reduced, pivots = rref(a, nc)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(tuple(v))
    return basis


def inverse(a: Rows, n: int) -> Rows:
    aug = tuple(tuple(a[i]) + tuple(identity(n)[i]) for i in range(n))
    reduced, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in reduced)


def solve(a: Rows, nc: int, b: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """One solution of a x = b, or None when inconsistent."""
    aug = tuple(tuple(row) + (Fraction(b[i]),) for i, row in enumerate(a))
    reduced, pivots = rref(aug, nc + 1)
    if nc in pivots:
        return None
    x = [Fraction(0)] * nc
    for r, p in enumerate(pivots):
        x[p] = reduced[r][nc]
    return tuple(x)


def cokernel_projection(a: Rows, nr: int, nc: int) -> tuple[int, Rows]:
    """Quotient map target -> target/im(a) as an explicit matrix.

    Returns (q, P) with P of shape q x nr, P surjective, P a = 0.
    """
    if nr == 0:
        return 0, ()
    # column space of a = row space of a^T
    at = transpose(a, nc) if a else ()
    reduced, pivots = rref(at, nr) if at else ((), [])
    r = len(pivots)
    q = nr - r
    if q == 0:
        return 0, ()
    free = [c for c in range(nr) if c not in pivots]
    # basis of the target: pivot-coordinate column space vectors + free standard vectors
    cols: list[list[Fraction]] = []
    for i in range(r):
        cols.append(list(reduced[i][:nr]))
    for f in free:
        e = [Fraction(0)] * nr
        e[f] = Fraction(1)
        cols.append(e)
    basis_matrix = tuple(tuple(cols[j][i] for j in range(nr)) for i in range(nr))
    inv = inverse(basis_matrix, nr)
    return q, tuple(inv[r + i] for i in range(q))


# -- prime field -------------------------------------------------------------

def rref_modp(a: Sequence[Sequence[int]], nc: int, p: int) -> tuple[list[list[int]], list[int]]:
    m = [[x % p for x in row] for row in a]
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        pivot = next((i for i in range(r, len(m)) if m[i][c] % p != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p != 0:
                factor = m[i][c]
                m[i] = [(x - factor * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank_modp(a: Sequence[Sequence[int]], nc: int, p: int) -> int:
    return len(rref_modp(a, nc, p)[1])


def subspaces_modp(d: int, e: int, p: int) -> list[tuple[tuple[int, ...], ...]]:
    """All e-dimensional subspaces of F_p^d, each as an RREF basis tuple."""
    if e < 0 or e > d:
        return []
    if e == 0:
        return [()]
    out = []
    from itertools import combinations

    for pivots in combinations(range(d), e):
        free_positions = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, d):
                if c not in pivots:
                    free_positions.append((r, c))
        for values in product(range(p), repeat=len(free_positions)):
            rows = [[0] * d for _ in range(e)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free_positions, values):
                rows[r][c] = v
            out.append(tuple(tuple(row) for row in rows))
    return out


def in_rowspace_modp(vec: Sequence[int], basis: Sequence[Sequence[int]], p: int) -> bool:
    """Membership of vec in the span of RREF basis rows over F_p."""
    v = [x % p for x in vec]
    for row in basis:
        pivot = next((c for c, x in enumerate(row) if x % p != 0), None)
        if pivot is None:
            continue
        if v[pivot] % p != 0:
            factor = (v[pivot] * pow(row[pivot], p - 2, p)) % p
            v = [(a - factor * b) % p for a, b in zip(v, row)]
    return all(x % p == 0 for x in v)
