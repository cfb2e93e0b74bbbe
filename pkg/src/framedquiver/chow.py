"""Chow rings of framed moduli: Schur determinants, relations and graded normal forms."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from sympy import QQ
from sympy.polys.rings import ring

from .errors import NonUnitConstantTerm
from .linalg import rref_rational, solve_rational
from .moduli import ModuliSpec, Partition, PartitionTuple, chow_basis, dimension, require_nonempty


@dataclass(frozen=True)
class FormalSeries:
    """Power series sum c_k t^k known up to t^order.

    ``order=None`` marks an exact polynomial: coefficients past the stored
    ones are zero. Coefficients may be ints, Fractions or polynomial ring
    elements.
    """

    coeffs: tuple
    order: Optional[int] = None

    def __init__(self, coeffs: Iterable, order: Optional[int] = None):
        c = tuple(coeffs)
        if order is not None:
            c = c[: order + 1]
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "order", order)

    def __getitem__(self, k: int):
        if k < 0:
            return 0
        if self.order is not None and k > self.order:
            raise ValueError(f"coefficient t^{k} lies beyond the truncation order {self.order}")
        return self.coeffs[k] if k < len(self.coeffs) else 0

    def __mul__(self, other: "FormalSeries") -> "FormalSeries":
        order = _min_order(self.order, other.order)
        top = len(self.coeffs) + len(other.coeffs) - 2
        if order is not None:
            top = min(top, order)
        out = []
        for k in range(top + 1):
            acc = 0
            for i in range(k + 1):
                if i < len(self.coeffs) and k - i < len(other.coeffs):
                    acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return FormalSeries(out, order)

    def negate_variable(self) -> "FormalSeries":
        """Substitute t -> -t."""
        return FormalSeries([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)], self.order)

    def truncate(self, order: int) -> "FormalSeries":
        return FormalSeries([self[k] for k in range(order + 1)], order)


def _min_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def series_invert(series: FormalSeries, order: int) -> FormalSeries:
    """Inverse of a series with constant term 1, up to t^order."""
    if series[0] != 1:
        raise NonUnitConstantTerm(f"constant term is {series[0]!r}, expected 1")
    if series.order is not None:
        order = min(order, series.order)
    inv = [1]
    for k in range(1, order + 1):
        acc = 0
        for j in range(1, min(k, len(series.coeffs) - 1) + 1):
            acc = acc + series.coeffs[j] * inv[k - j]
        inv.append(-acc)
    return FormalSeries(inv, order)


def determinant(matrix: Sequence[Sequence]):
    """Division-free determinant by cofactor expansion over column subsets."""
    n = len(matrix)
    if n == 0:
        return 1
    memo: dict = {}

    def minor(row: int, cols: tuple[int, ...]):
        if row == n:
            return 1
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = 0
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if entry == 0:
                continue
            term = entry * minor(row + 1, cols[:pos] + cols[pos + 1:])
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def delta_schur(lam: Sequence[int], series: FormalSeries):
    """Jacobi-Trudi determinant det(c_{lam_i + j - i}) in the coefficients of ``series``."""
    lam = tuple(x for x in lam if x)
    n = len(lam)
    if n == 0:
        return 1
    if series.order is not None and lam[0] + n - 1 > series.order:
        raise ValueError(f"series truncated at order {series.order}, partition {lam} needs {lam[0] + n - 1}")
    matrix = [[series[lam[i] + j - i] for j in range(n)] for i in range(n)]
    return determinant(matrix)


# ------------------------------------------------------------ Littlewood-Richardson

def _contains(outer: Sequence[int], inner: Sequence[int]) -> bool:
    if len(inner) > len(outer):
        return all(x == 0 for x in inner[len(outer):]) and _contains(outer, inner[: len(outer)])
    return all(a >= b for a, b in zip(outer, inner))


def lr_coefficient(mu: Sequence[int], nu: Sequence[int], lam: Sequence[int]) -> int:
    """Number of LR tableaux of shape lam/mu and content nu."""
    mu = tuple(x for x in mu if x)
    nu = tuple(x for x in nu if x)
    lam = tuple(x for x in lam if x)
    if sum(lam) != sum(mu) + sum(nu) or not _contains(lam, mu):
        return 0
    if not nu:
        return 1
    rows = len(lam)
    mu_p = mu + (0,) * (rows - len(mu))
    # cells in reading order: rows top to bottom, right to left within a row
    cells = [(r, c) for r in range(rows) for c in range(lam[r] - 1, mu_p[r] - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(nu) + 1)

    def rec(k: int) -> int:
        if k == len(cells):
            return 1
        r, c = cells[k]
        hi = filling.get((r, c + 1), len(nu))  # row weakly increasing left to right
        lo = filling[(r - 1, c)] + 1 if (r - 1, c) in filling else 1
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= nu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            filling[(r, c)] = v
            counts[v] += 1
            total += rec(k + 1)
            counts[v] -= 1
            del filling[(r, c)]
        return total

    return rec(0)


def partitions_of(n: int, max_part: Optional[int] = None) -> list[Partition]:
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return out


def subpartitions(lam: Sequence[int]) -> list[Partition]:
    lam = tuple(x for x in lam if x)
    out = []

    def rec(k, prefix, bound):
        if k == len(lam):
            out.append(tuple(x for x in prefix if x))
            return
        for part in range(min(lam[k], bound), -1, -1):
            rec(k + 1, prefix + [part], part)

    rec(0, [], lam[0] if lam else 0)
    return sorted(set(out))


def delta_quotient_expand(lam: Sequence[int], e: FormalSeries, f: FormalSeries):
    """sum over mu, nu of c^lam_{mu,nu} Delta_mu(E^{-1}) Delta_nu(F(-t)^{-1}).

    This is the Littlewood-Richardson expansion of the Schur determinant of
    the quotient series E(t)^{-1} F(-t)^{-1}, see :func:`quotient_series`.
    """
    lam = tuple(x for x in lam if x)
    if not lam:
        if e[0] != 1 or f[0] != 1:
            raise NonUnitConstantTerm("series must have constant term 1")
        return 1
    order = lam[0] + len(lam) - 1
    e_inv = series_invert(e, order)
    f_inv = series_invert(f.negate_variable(), order)
    size = sum(lam)
    total = 0
    for mu in subpartitions(lam):
        for nu in partitions_of(size - sum(mu)):
            c = lr_coefficient(mu, nu, lam)
            if c:
                total = total + c * delta_schur(mu, e_inv) * delta_schur(nu, f_inv)
    return total


def quotient_series(e: FormalSeries, f: FormalSeries, order: int) -> FormalSeries:
    """The series E(t)^{-1} F(-t)^{-1} whose Schur determinants the LR expansion reproduces."""
    return series_invert(e, order) * series_invert(f.negate_variable(), order)


# ------------------------------------------------------------------- Chow rings

@dataclass(frozen=True)
class ChowClass:
    """Rational combination of Schur basis elements, keyed by partition tuples."""

    terms: Mapping[PartitionTuple, Fraction] = field(default_factory=dict)

    def __init__(self, terms: Mapping[PartitionTuple, Fraction] | None = None):
        clean = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @property
    def degrees(self) -> set[int]:
        return {sum(sum(p) for p in key) for key in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other: "ChowClass") -> "ChowClass":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ChowClass(out)

    def scale(self, c) -> "ChowClass":
        return ChowClass({k: v * c for k, v in self.terms.items()})

    @classmethod
    def basis(cls, key: PartitionTuple) -> "ChowClass":
        return cls({tuple(tuple(x for x in p if x) for p in key): 1})


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class ChowRing:
    """Presentation of A*(M_{d,n}) by Chern classes of the universal bundles.

    Generator c_k(V_i), 1 <= k <= d_i, has degree k. Relations at vertex i are
    the coefficients of t^m, m > n_i - <i,d>, in prod_{i->j} c_t(V_j) / c_t(V_i).
    Graded pieces are computed by exact linear algebra, one degree at a time.
    """

    def __init__(self, spec: ModuliSpec):
        require_nonempty(spec)
        self.spec = spec
        self.dim = dimension(spec)
        q = spec.quiver
        self.generators = [(i, k) for i in q.order for k in range(1, spec.d[i] + 1)]
        names = [f"c{k}_{q.vertices[i]}" for i, k in self.generators]
        self.ring, *gens = ring(names, QQ) if names else ring([], QQ)
        self.gens = list(gens)
        self.weights = [k for _, k in self.generators]
        self._pieces: dict[int, dict] = {}
        self._structure: dict = {}

    def chern(self, i: int, k: int):
        if k == 0:
            return self.ring.one
        if k < 0 or k > self.spec.d[i]:
            return self.ring.zero
        return self.gens[self.generators.index((i, k))]

    def chern_series(self, i: int) -> FormalSeries:
        return FormalSeries([self.chern(i, k) for k in range(self.spec.d[i] + 1)])

    def weighted_degree(self, monom: tuple[int, ...]) -> int:
        return sum(e * w for e, w in zip(monom, self.weights))

    def degrees_of(self, element) -> set[int]:
        element = self.ring(element)
        return {self.weighted_degree(m) for m in element.keys()}

    def relation_ideal(self) -> list[tuple[str, int, object]]:
        """(vertex, t-exponent, relation) for all nonzero generating relations up to the truncation bound."""
        spec, q = self.spec, self.spec.quiver
        out = []
        for i in q.order:
            top = self.dim + spec.d[i]
            series = series_invert(self.chern_series(i), top)
            for _, j in q.arrows_from(i):
                series = series * self.chern_series(j)
            for m in range(spec.slack(i) + 1, top + 1):
                rel = self.ring(series[m])
                if rel:
                    out.append((q.vertices[i], m, rel))
        return out

    @cached_property
    def _relations(self) -> list:
        return [(m, rel) for _, m, rel in self.relation_ideal()]

    def monomials(self, degree: int) -> list[tuple[int, ...]]:
        """Exponent vectors of weighted degree ``degree``, descending lexicographically."""
        out: list[tuple[int, ...]] = []
        ng = len(self.generators)

        def rec(pos, left, prefix):
            if pos == ng:
                if left == 0:
                    out.append(tuple(prefix))
                return
            w = self.weights[pos]
            for e in range(left // w, -1, -1):
                rec(pos + 1, left - e * w, prefix + [e])

        if degree >= 0:
            rec(0, degree, [])
        return out

    def _piece(self, degree: int) -> dict:
        if degree in self._pieces:
            return self._pieces[degree]
        monos = self.monomials(degree)
        col = {m: c for c, m in enumerate(monos)}
        rows = []
        for m, rel in self._relations:
            if m > degree:
                continue
            for mono in self.monomials(degree - m):
                prod_ = rel * self.ring({mono: 1})
                vec = [0] * len(monos)
                for exp, coeff in prod_.items():
                    vec[col[exp]] = _to_fraction(coeff)
                rows.append(vec)
        red, pivots = rref_rational(rows) if rows else ([], [])
        standard = [c for c in range(len(monos)) if c not in pivots]
        piece = {"monomials": monos, "col": col, "rows": red, "pivots": pivots, "standard": standard}
        self._pieces[degree] = piece
        return piece

    def graded_rank(self, degree: int) -> int:
        if degree < 0 or degree > self.dim:
            return 0
        return len(self._piece(degree)["standard"])

    def normal_form(self, element, degree: int) -> tuple[Fraction, ...]:
        """Coordinates of a homogeneous element over the standard monomials of its degree."""
        element = self.ring(element)
        if degree > self.dim or degree < 0:
            return ()
        if element and self.degrees_of(element) != {degree}:
            raise ValueError(f"element is not homogeneous of degree {degree}")
        piece = self._piece(degree)
        vec = [Fraction(0)] * len(piece["monomials"])
        for exp, coeff in element.items():
            vec[piece["col"][exp]] = _to_fraction(coeff)
        for row, pc in zip(piece["rows"], piece["pivots"]):
            if vec[pc]:
                factor = vec[pc]
                vec = [x - factor * y for x, y in zip(vec, row)]
        return tuple(vec[c] for c in piece["standard"])

    def standard_monomials(self, degree: int) -> list[tuple[int, ...]]:
        if degree < 0 or degree > self.dim:
            return []
        piece = self._piece(degree)
        return [piece["monomials"][c] for c in piece["standard"]]

    def schur_element(self, key: PartitionTuple):
        """prod_i Delta_{lambda^i}(c_t(V_i)^{-1}) as a polynomial in the generators."""
        out = self.ring.one
        for i, lam in enumerate(key):
            lam = tuple(x for x in lam if x)
            if not lam:
                continue
            inv = series_invert(self.chern_series(i), lam[0] + len(lam) - 1)
            out = out * self.ring(delta_schur(lam, inv))
        return out

    def schur_basis(self, degree: int) -> list[PartitionTuple]:
        if degree < 0 or degree > self.dim:
            return []
        return chow_basis(self.spec, degree)

    def change_of_basis(self, degree: int) -> list[list[Fraction]]:
        """Columns: normal forms of the Schur basis elements of this degree."""
        keys = self.schur_basis(degree)
        cols = [self.normal_form(self.schur_element(k), degree) for k in keys]
        size = len(cols)
        return [[cols[j][i] for j in range(size)] for i in range(size)]

    def to_schur_basis(self, element) -> ChowClass:
        element = self.ring(element)
        out: dict = {}
        for degree in sorted(self.degrees_of(element)):
            part = self.ring({m: c for m, c in element.items() if self.weighted_degree(m) == degree})
            coords = self.normal_form(part, degree)
            if not any(coords):
                continue
            keys = self.schur_basis(degree)
            solution = solve_rational(self.change_of_basis(degree), coords)
            out.update({k: v for k, v in zip(keys, solution) if v})
        return ChowClass(out)

    def to_polynomial(self, cls: ChowClass):
        out = self.ring.zero
        for key, coeff in cls.terms.items():
            out = out + self.schur_element(key) * QQ(coeff.numerator, coeff.denominator)
        return out

    def basis_product(self, a: PartitionTuple, b: PartitionTuple) -> ChowClass:
        """Product of two Schur basis elements; structure constants are asserted integral."""
        key = (a, b) if a <= b else (b, a)
        if key not in self._structure:
            poly = self.schur_element(a) * self.schur_element(b)
            result = self.to_schur_basis(poly) if poly else ChowClass()
            for v in result.terms.values():
                if v.denominator != 1:
                    raise ArithmeticError(f"non-integral structure constant {v} in {a} * {b}")
            self._structure[key] = result
        return self._structure[key]

    def multiply(self, x: ChowClass, y: ChowClass) -> ChowClass:
        out = ChowClass()
        for ka, ca in x.terms.items():
            for kb, cb in y.terms.items():
                out = out + self.basis_product(ka, kb).scale(ca * cb)
        return out

    def unit(self) -> ChowClass:
        return ChowClass.basis(tuple(() for _ in range(self.spec.quiver.size)))


def normalize_key(key: Sequence[Sequence[int]]) -> PartitionTuple:
    return tuple(tuple(x for x in p if x) for p in key)
