"""Exact row reduction over the rationals and over prime fields.

Matrices are lists of rows. Vectors over F_p are tuples of ints in [0, p).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Sequence

Matrix = list[list]


def rref_rational(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                factor = m[k][c]
                m[k] = [x - factor * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def solve_rational(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve A x = b for square invertible A over Q."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref_rational(aug)
    if pivots != list(range(n)):
        raise ArithmeticError("matrix is singular")
    return [red[k][n] for k in range(n)]


# ---------------------------------------------------------------- prime fields

def rref_mod(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    m = [[x % p for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pivot = next((k for k in range(r, len(m)) if m[k][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                factor = m[k][c]
                m[k] = [(x - factor * y) % p for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows or not len(rows[0]):
        return 0
    return len(rref_mod(rows, p)[1])


def kernel_mod(matrix: Sequence[Sequence[int]], ncols: int, p: int) -> list[tuple[int, ...]]:
    """Basis of {x : A x = 0} in F_p^ncols, as the canonical reduced basis."""
    if not matrix:
        return [tuple(int(k == c) for k in range(ncols)) for c in range(ncols)]
    red, pivots = rref_mod(matrix, p, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return canonical_basis(basis, ncols, p)


def canonical_basis(vectors: Sequence[Sequence[int]], dim: int, p: int) -> tuple[tuple[int, ...], ...]:
    """Reduced echelon basis of the span: the canonical name of a subspace."""
    red, _ = rref_mod(vectors, p, dim) if vectors else ([], [])
    return tuple(tuple(row) for row in red)


def matvec_mod(a: Sequence[Sequence[int]], v: Sequence[int], p: int) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def matmul_mod(a, b, p: int, cols: int) -> list[list[int]]:
    """Product of an (r x k) and a (k x cols) matrix."""
    k = len(b)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(cols)] for i in range(len(a))]


def in_span(basis: Sequence[Sequence[int]], v: Sequence[int], p: int) -> bool:
    if not any(x % p for x in v):
        return True
    if not basis:
        return False
    return rank_mod(list(basis) + [list(v)], p) == rank_mod(basis, p)


def annihilator(basis: Sequence[Sequence[int]], dim: int, p: int) -> list[tuple[int, ...]]:
    """Linear forms (as rows) vanishing on the span of ``basis``."""
    return kernel_mod([list(b) for b in basis], dim, p) if basis else [
        tuple(int(k == c) for k in range(dim)) for c in range(dim)
    ]


def iter_subspaces(dim: int, k: int, p: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every k-dimensional subspace of F_p^dim, once, as its reduced echelon basis."""
    if k < 0 or k > dim:
        return
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(dim), k):
        free_slots = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, dim):
                if c not in pivots:
                    free_slots.append((r, c))
        for values in product(range(p), repeat=len(free_slots)):
            rows = [[0] * dim for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(free_slots, values):
                rows[r][c] = x
            yield tuple(tuple(row) for row in rows)


def gl_order(n: int, p: int) -> int:
    out = 1
    for k in range(n):
        out *= p**n - p**k
    return out


def iter_gl(n: int, p: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All invertible n x n matrices over F_p."""
    for entries in product(range(p), repeat=n * n):
        rows = [entries[r * n:(r + 1) * n] for r in range(n)]
        if rank_mod(rows, p) == n:
            yield tuple(tuple(r) for r in rows)


def inverse_mod(a: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref_mod(aug, p, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is not invertible")
    return [row[n:] for row in red]
