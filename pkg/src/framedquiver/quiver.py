"""Quivers without oriented cycles, the Euler form and path combinatorics."""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import CyclicQuiver, ValidationError

DimVector = tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    """A finite quiver given by vertex identifiers and arrows as (source, target) pairs.

    Dimension vectors are tuples indexed like ``vertices``. Parallel arrows are
    repeated pairs. Construction fails with :class:`CyclicQuiver` when an
    oriented cycle exists.
    """

    vertices: tuple[str, ...]
    arrows: tuple[tuple[int, int], ...]
    order: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, vertices: Sequence, arrows: Sequence[Sequence]):
        verts = tuple(str(v) for v in vertices)
        if len(set(verts)) != len(verts):
            raise ValidationError(f"duplicate vertex identifiers in {verts}")
        pos = {v: k for k, v in enumerate(verts)}
        idx_arrows = []
        for arrow in arrows:
            if len(arrow) != 2:
                raise ValidationError(f"arrow {arrow!r} is not a (source, target) pair")
            s, t = str(arrow[0]), str(arrow[1])
            if s not in pos or t not in pos:
                raise ValidationError(f"arrow {s}->{t} uses an undeclared vertex")
            idx_arrows.append((pos[s], pos[t]))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", tuple(idx_arrows))
        object.__setattr__(self, "order", _topological_order(verts, idx_arrows))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def index(self, vertex) -> int:
        """Dense index of a vertex; ints are taken as indices, anything else as an identifier."""
        if isinstance(vertex, int):
            if not 0 <= vertex < self.size:
                raise ValidationError(f"vertex index {vertex} out of range")
            return vertex
        try:
            return self.vertices.index(str(vertex))
        except ValueError:
            raise ValidationError(f"unknown vertex {vertex!r}") from None

    def arrows_from(self, i: int) -> list[tuple[int, int]]:
        """(arrow index, target) for every arrow leaving ``i``, in declaration order."""
        return [(a, t) for a, (s, t) in enumerate(self.arrows) if s == i]

    def arrows_into(self, i: int) -> list[tuple[int, int]]:
        """(arrow index, source) for every arrow entering ``i``, in declaration order."""
        return [(a, s) for a, (s, t) in enumerate(self.arrows) if t == i]

    def arrow_count(self, i: int, j: int) -> int:
        return sum(1 for a in self.arrows if a == (i, j))

    def unit(self, i: int) -> DimVector:
        return tuple(int(k == i) for k in range(self.size))

    def dimvec(self, values: Sequence[int], *, allow_negative: bool = False) -> DimVector:
        vec = tuple(int(x) for x in values)
        if len(vec) != self.size:
            raise ValidationError(f"dimension vector {vec} has length {len(vec)}, quiver has {self.size} vertices")
        if not allow_negative and any(x < 0 for x in vec):
            raise ValidationError(f"dimension vector {vec} has a negative entry")
        return vec

    def to_json(self) -> str:
        arrows = [[self.vertices[s], self.vertices[t]] for s, t in self.arrows]
        return json.dumps({"vertices": list(self.vertices), "arrows": arrows})

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        try:
            doc = json.loads(text)
            return cls(doc["vertices"], doc["arrows"])
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ValidationError(f"malformed quiver document: {exc}") from exc

    @classmethod
    def load(cls, path) -> "Quiver":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def _topological_order(vertices, arrows) -> tuple[int, ...]:
    indeg = [0] * len(vertices)
    out: list[list[int]] = [[] for _ in vertices]
    for s, t in arrows:
        indeg[t] += 1
        out[s].append(t)
    heap = [(vertices[k], k) for k in range(len(vertices)) if indeg[k] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, k = heapq.heappop(heap)
        order.append(k)
        for t in out[k]:
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(heap, (vertices[t], t))
    if len(order) != len(vertices):
        raise CyclicQuiver("quiver contains an oriented cycle")
    return tuple(order)


def validate(quiver: Quiver) -> list[str]:
    """Vertex identifiers in the canonical order: sources first, ties broken by identifier."""
    return [quiver.vertices[k] for k in quiver.order]


def linear_quiver(r: int) -> Quiver:
    """Equioriented type A_r: 1 -> 2 -> ... -> r."""
    names = [str(k) for k in range(1, r + 1)]
    return Quiver(names, list(zip(names, names[1:])))


def kronecker_quiver(m: int = 2) -> Quiver:
    return Quiver(["1", "2"], [("1", "2")] * m)


def _check(quiver: Quiver, *vectors) -> None:
    for v in vectors:
        if len(v) != quiver.size:
            raise ValidationError(f"vector {tuple(v)} does not match the {quiver.size} vertices of the quiver")


def euler_form(quiver: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    _check(quiver, d, e)
    value = sum(x * y for x, y in zip(d, e))
    for s, t in quiver.arrows:
        value -= d[s] * e[t]
    return value


def sym_form(quiver: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    return euler_form(quiver, d, e) + euler_form(quiver, e, d)


def euler_matrix(quiver: Quiver) -> list[list[int]]:
    n = quiver.size
    return [[euler_form(quiver, quiver.unit(i), quiver.unit(j)) for j in range(n)] for i in range(n)]


def arrow_matrix(quiver: Quiver) -> list[list[int]]:
    n = quiver.size
    a = [[0] * n for _ in range(n)]
    for s, t in quiver.arrows:
        a[s][t] += 1
    return a


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def path_counts(quiver: Quiver) -> tuple[tuple[int, ...], ...]:
    """N[i][j] = number of paths from i to j, including the trivial path at i."""
    n = quiver.size
    a = arrow_matrix(quiver)
    total = [[int(i == j) for j in range(n)] for i in range(n)]
    power = a
    # A is nilpotent of index <= n on an acyclic quiver
    for _ in range(n):
        if not any(any(row) for row in power):
            break
        total = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, power)]
        power = _matmul(power, a)
    return tuple(tuple(row) for row in total)


def injective_dimvec(quiver: Quiver, i) -> DimVector:
    k = quiver.index(i)
    n = path_counts(quiver)
    return tuple(n[j][k] for j in range(quiver.size))


def projective_dimvec(quiver: Quiver, i) -> DimVector:
    return path_counts(quiver)[quiver.index(i)]


def paths_from(quiver: Quiver, i: int) -> list[tuple[int, ...]]:
    """All paths starting at ``i`` as tuples of arrow indices, depth first.

    The trivial path comes first, then the paths through each outgoing arrow in
    declaration order. This fixes the block layout of (I (x) V)_i.
    """
    result: list[tuple[int, ...]] = [()]
    for a, t in quiver.arrows_from(i):
        result.extend((a,) + p for p in paths_from(quiver, t))
    return result


def path_end(quiver: Quiver, start: int, path: tuple[int, ...]) -> int:
    return quiver.arrows[path[-1]][1] if path else start
