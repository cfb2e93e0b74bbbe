"""Closed-form invariants of framed moduli M_{d,n}."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .errors import EmptyModuli
from .qpoly import IntPoly, qbinomial
from .quiver import DimVector, Quiver, euler_form, path_counts

Partition = tuple[int, ...]
PartitionTuple = tuple[Partition, ...]


@dataclass(frozen=True)
class ModuliSpec:
    quiver: Quiver
    d: DimVector
    n: DimVector

    def __init__(self, quiver: Quiver, d, n):
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "d", quiver.dimvec(d))
        object.__setattr__(self, "n", quiver.dimvec(n))

    def slack(self, i: int) -> int:
        """n_i - <i, d>: the width of the partition rectangle at vertex i."""
        return self.n[i] - euler_form(self.quiver, self.quiver.unit(i), self.d)


@dataclass(frozen=True)
class TowerStep:
    vertex: str
    sub_dim: int
    ambient_rank: int

    @property
    def feasible(self) -> bool:
        return 0 <= self.sub_dim <= self.ambient_rank


def is_nonempty(spec: ModuliSpec) -> bool:
    return all(spec.slack(i) >= 0 for i in range(spec.quiver.size))


def require_nonempty(spec: ModuliSpec) -> None:
    if not is_nonempty(spec):
        raise EmptyModuli(f"M_(d,n) is empty for d={spec.d}, n={spec.n}")


def dimension(spec: ModuliSpec) -> int:
    require_nonempty(spec)
    dn = sum(x * y for x, y in zip(spec.d, spec.n))
    return dn - euler_form(spec.quiver, spec.d, spec.d)


def ambient_rank(spec: ModuliSpec, i: int) -> int:
    """n_i plus d_j for every arrow i -> j."""
    return spec.n[i] + sum(spec.d[t] for _, t in spec.quiver.arrows_from(i))


def poincare_polynomial(spec: ModuliSpec) -> IntPoly:
    require_nonempty(spec)
    result = IntPoly([1])
    for i in range(spec.quiver.size):
        result = result * qbinomial(ambient_rank(spec, i), spec.d[i])
    return result


def betti_numbers(spec: ModuliSpec) -> list[int]:
    """Ranks of A^k for k = 0..dim (odd cohomology vanishes)."""
    poly = poincare_polynomial(spec)
    return list(poly.coeffs)


def tower(spec: ModuliSpec) -> list[TowerStep]:
    q = spec.quiver
    return [TowerStep(q.vertices[i], spec.d[i], ambient_rank(spec, i)) for i in q.order]


def ambient_embedding(spec: ModuliSpec) -> list[tuple[str, int, int]]:
    """(vertex, d_i, dim of the sum of V_j over paths i ~> j) in canonical order."""
    q = spec.quiver
    counts = path_counts(q)
    return [
        (q.vertices[i], spec.d[i], sum(counts[i][j] * spec.n[j] for j in range(q.size)))
        for i in q.order
    ]


def partitions_in_box(rows: int, cols: int) -> list[Partition]:
    """Partitions with at most ``rows`` parts, each at most ``cols``.

    Sorted by size, then reverse lexicographically within a size. Trailing
    zeros are stripped.
    """
    if rows <= 0 or cols <= 0:
        return [()]
    found = []

    def rec(prefix, bound, left):
        if left == 0:
            found.append(tuple(x for x in prefix if x))
            return
        for part in range(bound, -1, -1):
            rec(prefix + [part], part, left - 1)

    rec([], cols, rows)
    found = sorted(set(found), key=lambda p: (sum(p), [-x for x in p] + [0] * rows))
    return found


def chow_basis(spec: ModuliSpec, degree: Optional[int] = None) -> list[PartitionTuple]:
    """Tuples of partitions (one per vertex, in vertex declaration order) indexing the Schur basis.

    Vertex i contributes partitions inside a d_i x (n_i - <i,d>) rectangle.
    Vertices are varied in canonical order, the last one fastest.
    """
    require_nonempty(spec)
    q = spec.quiver
    boxes = {i: partitions_in_box(spec.d[i], spec.slack(i)) for i in range(q.size)}
    out = []
    for choice in product(*(boxes[i] for i in q.order)):
        if degree is not None and sum(sum(p) for p in choice) != degree:
            continue
        tup: list[Partition] = [()] * q.size
        for i, part in zip(q.order, choice):
            tup[i] = part
        out.append(tuple(tup))
    return out
