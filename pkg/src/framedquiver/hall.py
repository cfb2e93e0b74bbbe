"""Ringel's twisted Hall algebra over F_q, its modified form, and the convolution algebra on X_n."""
from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ValidationError
from .ffrep import (
    GradedSubspace,
    Rep,
    build_injective_sum,
    canonical_basis,
    check_prime,
    hom_into_simple,
    is_projective,
    iso_classes,
    iter_subreps,
    quotient_rep,
    subrep_as_rep,
)
from .quiver import DimVector, Quiver, euler_form


class SqrtQScalar:
    """Exact element (a + b v) v^shift of Z[v, 1/v] / (v^2 - q).

    Normal form keeps shift <= 0 and as close to 0 as exact division allows.
    """

    __slots__ = ("a", "b", "shift", "q")

    def __init__(self, a: int = 0, b: int = 0, shift: int = 0, q: int = 2):
        a, b, shift = int(a), int(b), int(shift)
        while shift > 0:
            a, b, shift = b * q, a, shift - 1
        while shift < 0 and a % q == 0:
            # (a + b v) / v = b + (a / q) v
            a, b, shift = b, a // q, shift + 1
        if a == 0 and b == 0:
            shift = 0
        self.a, self.b, self.shift, self.q = a, b, shift, q

    @classmethod
    def v_power(cls, k: int, q: int) -> "SqrtQScalar":
        return cls(1, 0, k, q)

    @classmethod
    def v(cls, q: int) -> "SqrtQScalar":
        return cls(0, 1, 0, q)

    def _coerce(self, other) -> "SqrtQScalar":
        if isinstance(other, SqrtQScalar):
            if other.q != self.q:
                raise ValueError("scalars over different fields")
            return other
        if isinstance(other, int):
            return SqrtQScalar(other, 0, 0, self.q)
        return NotImplemented

    def _lift(self, shift: int) -> tuple[int, int]:
        """(a, b) with self = (a + b v) v^shift for a shift <= self.shift."""
        a, b = self.a, self.b
        for _ in range(self.shift - shift):
            a, b = b * self.q, a
        return a, b

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        s = min(self.shift, other.shift)
        a1, b1 = self._lift(s)
        a2, b2 = other._lift(s)
        return SqrtQScalar(a1 + a2, b1 + b2, s, self.q)

    __radd__ = __add__

    def __neg__(self):
        return SqrtQScalar(-self.a, -self.b, self.shift, self.q)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q = self.q
        a = self.a * other.a + self.b * other.b * q
        b = self.a * other.b + self.b * other.a
        return SqrtQScalar(a, b, self.shift + other.shift, q)

    __rmul__ = __mul__

    def divide_by_v(self) -> "SqrtQScalar":
        return self * SqrtQScalar.v_power(-1, self.q)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = SqrtQScalar(other, 0, 0, self.q)
        if not isinstance(other, SqrtQScalar):
            return NotImplemented
        return (self.a, self.b, self.shift, self.q) == (other.a, other.b, other.shift, other.q)

    def __hash__(self):
        return hash((self.a, self.b, self.shift, self.q))

    def as_pair(self) -> tuple[Fraction, Fraction]:
        """(A, B) with value A + B v, A and B rational."""
        s = -self.shift
        if s % 2 == 0:
            den = self.q ** (s // 2)
            return Fraction(self.a, den), Fraction(self.b, den)
        den = self.q ** ((s + 1) // 2)
        return Fraction(self.b * self.q, den), Fraction(self.a, den)

    def __repr__(self):
        return f"SqrtQScalar({self})"

    def __str__(self):
        a, b = self.as_pair()
        return f"{a} + {b}*v"


# -------------------------------------------------------------------- Hall algebra

Label = tuple[DimVector, int]


class HallAlgebra:
    """H = sum_d C^{G_d}(R_d) over F_q, elements keyed by (dimension vector, iso-class id)."""

    def __init__(self, quiver: Quiver, q: int):
        self.quiver = quiver
        self.q = check_prime(q)
        self._hall_numbers: dict = {}

    def scalar(self, a: int = 0, b: int = 0, shift: int = 0) -> SqrtQScalar:
        return SqrtQScalar(a, b, shift, self.q)

    def table(self, d: Sequence[int]):
        return iso_classes(self.quiver, tuple(d), self.q)

    def element(self, terms: Optional[Mapping[Label, object]] = None) -> "HallElement":
        return HallElement(self, terms or {})

    def char(self, d: Sequence[int], cid: int) -> "HallElement":
        d = self.quiver.dimvec(d)
        if not 0 <= cid < len(self.table(d)):
            raise ValidationError(f"class id {cid} out of range for dimension {d}")
        return self.element({(d, cid): 1})

    def char_of(self, rep: Rep) -> "HallElement":
        return self.char(rep.dims, self.table(rep.dims).class_of(rep))

    def unit(self) -> "HallElement":
        return self.char((0,) * self.quiver.size, 0)

    def chevalley_generator(self, i) -> "HallElement":
        i = self.quiver.index(i)
        return self.char(self.quiver.unit(i), 0)

    def hall_numbers(self, d: DimVector, e: DimVector) -> dict[int, Counter]:
        """For each class X of dimension d+e: counts of (class of U, class of X/U) over U in Gr_d(X)."""
        key = (d, e)
        if key not in self._hall_numbers:
            total = tuple(x + y for x, y in zip(d, e))
            tx, td, te = self.table(total), self.table(d), self.table(e)
            out = {}
            for cid, x in enumerate(tx.reps):
                counts: Counter = Counter()
                for sub in iter_subreps(x, d):
                    cu = td.class_of(subrep_as_rep(x, sub))
                    cq = te.class_of(quotient_rep(x, sub))
                    counts[(cu, cq)] += 1
                out[cid] = counts
            self._hall_numbers[key] = out
        return self._hall_numbers[key]

    def convolve(self, f: "HallElement", g: "HallElement") -> "HallElement":
        """(f g)(X) = v^<e,d> sum_{U subset X} f(U) g(X/U), f of degree d, g of degree e."""
        out: dict = defaultdict(lambda: self.scalar())
        for d, fpart in f.by_degree().items():
            for e, gpart in g.by_degree().items():
                twist = SqrtQScalar.v_power(euler_form(self.quiver, e, d), self.q)
                total = tuple(x + y for x, y in zip(d, e))
                for cid, counts in self.hall_numbers(d, e).items():
                    acc = self.scalar()
                    for (cu, cq), mult in counts.items():
                        if cu in fpart and cq in gpart:
                            acc = acc + fpart[cu] * gpart[cq] * mult
                    if acc:
                        out[(total, cid)] = out[(total, cid)] + acc * twist
        return self.element(dict(out))

    def ringel_product(self, f: "HallElement", g: "HallElement") -> "HallElement":
        """f on quotients, g on subrepresentations: the product eta respects. Equals convolve(g, f)."""
        return self.convolve(g, f)

    def serre_check(self, i, j) -> bool:
        """Quantum Serre relation for one arrow between i and j; commutation when none."""
        i, j = self.quiver.index(i), self.quiver.index(j)
        if i == j:
            raise ValidationError("serre_check needs two distinct vertices")
        arrows = self.quiver.arrow_count(i, j) + self.quiver.arrow_count(j, i)
        ei, ej = self.chevalley_generator(i), self.chevalley_generator(j)
        if arrows == 0:
            return (ei * ej) == (ej * ei)
        if arrows != 1:
            raise ValidationError("serre_check supports vertices joined by at most one arrow")
        v = SqrtQScalar.v(self.q)
        bracket = v + v.divide_by_v().divide_by_v()
        lhs = ei * ei * ej - (ei * ej * ei).scale(bracket) + ej * ei * ei
        return lhs.is_zero()


class HallElement:
    """Finitely supported function on iso classes; values are :class:`SqrtQScalar`."""

    def __init__(self, algebra: HallAlgebra, terms: Mapping[Label, object]):
        self.algebra = algebra
        clean = {}
        for (d, cid), c in terms.items():
            c = c if isinstance(c, SqrtQScalar) else algebra.scalar(c)
            if c:
                clean[(tuple(d), cid)] = c
        self.terms = dict(sorted(clean.items()))

    def by_degree(self) -> dict[DimVector, dict[int, SqrtQScalar]]:
        out: dict = defaultdict(dict)
        for (d, cid), c in self.terms.items():
            out[d][cid] = c
        return dict(out)

    @property
    def degrees(self) -> set[DimVector]:
        return {d for d, _ in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, HallElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "HallElement") -> "HallElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return HallElement(self.algebra, out)

    def __neg__(self):
        return HallElement(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HallElement":
        return HallElement(self.algebra, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "HallElement") -> "HallElement":
        return self.algebra.convolve(self, other)

    def __repr__(self):
        body = ", ".join(f"{d}#{cid}: {c}" for (d, cid), c in self.terms.items())
        return f"HallElement({{{body}}})"


# ---------------------------------------------------------- modified Hall algebra

ModLabel = tuple[DimVector, DimVector, int]  # (idempotent d, degree of f, class id)


class ModifiedHallElement:
    """sum_d 1_d f_d, stored as {(d, dim M, class id): coefficient}; d ranges over Z^I."""

    def __init__(self, algebra: HallAlgebra, terms: Mapping[ModLabel, object]):
        self.algebra = algebra
        clean = {}
        for (d, m, cid), c in terms.items():
            c = c if isinstance(c, SqrtQScalar) else algebra.scalar(c)
            if c:
                clean[(tuple(d), tuple(m), cid)] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def idempotent(cls, algebra: HallAlgebra, d: Sequence[int]) -> "ModifiedHallElement":
        zero = (0,) * algebra.quiver.size
        return cls(algebra, {(tuple(d), zero, 0): 1})

    @classmethod
    def basis(cls, algebra: HallAlgebra, d: Sequence[int], m: Sequence[int], cid: int) -> "ModifiedHallElement":
        """1_d chi_[M] for the class ``cid`` of dimension m."""
        return cls(algebra, {(tuple(d), tuple(m), cid): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, ModifiedHallElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return ModifiedHallElement(self.algebra, out)

    def __mul__(self, other: "ModifiedHallElement") -> "ModifiedHallElement":
        return modified_product(self, other)

    def __repr__(self):
        body = ", ".join(f"1_{d} {m}#{cid}: {c}" for (d, m, cid), c in self.terms.items())
        return f"ModifiedHallElement({{{body}}})"


def modified_product(x: ModifiedHallElement, y: ModifiedHallElement) -> ModifiedHallElement:
    """1_d f . 1_e g = delta_{d, e + |f|} 1_d (f g), with fg the Ringel product.

    X_n convolution evaluates the left factor on U/U' (a quotient of U/U''),
    so the inner product puts f on quotients; see HallAlgebra.ringel_product.
    """
    alg = x.algebra
    out: dict = {}
    for (d, m, cm), c1 in x.terms.items():
        for (e, n, cn), c2 in y.terms.items():
            if tuple(a - b for a, b in zip(d, m)) != e:
                continue
            prod_ = alg.ringel_product(alg.char(m, cm), alg.char(n, cn))
            for (deg, cid), c in prod_.terms.items():
                key = (d, deg, cid)
                val = c * c1 * c2
                out[key] = out[key] + val if key in out else val
    return ModifiedHallElement(alg, out)


# ------------------------------------------------------------------ X_n and eta

XnLabel = tuple[DimVector, DimVector, int]  # (dim U, dim U/U', class of U/U')


class XnSpace:
    """Points of M_n^proj(F_q) and the nested pairs X_n, with orbit labels.

    A point is a subrepresentation U of I (x) V that is projective as a
    representation. The label of a pair U' subset U is (dim U, [U/U']).
    """

    def __init__(self, quiver: Quiver, n: Sequence[int], q: int):
        self.quiver = quiver
        self.n = quiver.dimvec(n)
        self.q = check_prime(q)
        self.injective = build_injective_sum(quiver, self.n, q)

    @cached_property
    def points(self) -> list[GradedSubspace]:
        x = self.injective
        out = []
        for d in product(*(range(k + 1) for k in x.dims)):
            for sub in iter_subreps(x, d):
                if is_projective(subrep_as_rep(x, sub)):
                    out.append(sub)
        return out

    @cached_property
    def _sub_relation(self) -> dict[int, list[int]]:
        """For each point index, indices of the points contained in it."""
        pts = self.points
        out = {}
        for a, u in enumerate(pts):
            out[a] = [b for b, w in enumerate(pts) if _contained(w, u, self.q)]
        return out

    def quotient(self, big: GradedSubspace, small: GradedSubspace) -> Rep:
        x = self.injective
        ambient_rep = subrep_as_rep(x, big)
        bases = []
        for k in range(self.quiver.size):
            piv = [next(c for c, val in enumerate(row) if val) for row in big.bases[k]]
            coords = [[v[c] for c in piv] for v in small.bases[k]]
            bases.append(canonical_basis(coords, len(big.bases[k]), self.q))
        inner = GradedSubspace(tuple(bases), ambient_rep.dims)
        return quotient_rep(ambient_rep, inner)

    def label(self, big: GradedSubspace, small: GradedSubspace) -> XnLabel:
        m = self.quotient(big, small)
        cid = iso_classes(self.quiver, m.dims, self.q).class_of(m)
        return big.dims, m.dims, cid

    @cached_property
    def pairs(self) -> list[tuple[int, int, XnLabel]]:
        pts = self.points
        return [(a, b, self.label(pts[a], pts[b])) for a in range(len(pts)) for b in self._sub_relation[a]]

    @cached_property
    def labels(self) -> set[XnLabel]:
        return {lab for _, _, lab in self.pairs}

    def evaluate(self, f: Mapping[XnLabel, SqrtQScalar], a: int, b: int) -> SqrtQScalar:
        return f.get(self._pair_label[(a, b)], SqrtQScalar(0, 0, 0, self.q))

    @cached_property
    def _pair_label(self) -> dict[tuple[int, int], XnLabel]:
        return {(a, b): lab for a, b, lab in self.pairs}

    def delta(self, d: Sequence[int]) -> dict[XnLabel, SqrtQScalar]:
        """The diagonal idempotent: 1 on pairs (U, U) with dim U = d."""
        d = tuple(d)
        zero = (0,) * self.quiver.size
        lab = (d, zero, 0)
        return {lab: SqrtQScalar(1, 0, 0, self.q)} if lab in self.labels else {}

    def convolve(self, f: Mapping[XnLabel, SqrtQScalar], g: Mapping[XnLabel, SqrtQScalar]) -> dict[XnLabel, SqrtQScalar]:
        """(f g)(U, U'') = sum over U' of f(U, U') g(U', U''), re-expressed on orbit labels."""
        sub = self._sub_relation
        sub_sets = {a: set(bs) for a, bs in sub.items()}
        values: dict[XnLabel, SqrtQScalar] = {}
        for a, c, lab in self.pairs:
            acc = SqrtQScalar(0, 0, 0, self.q)
            for b in sub[a]:
                if c in sub_sets[b]:
                    fv = self.evaluate(f, a, b)
                    if fv:
                        acc = acc + fv * self.evaluate(g, b, c)
            if lab in values:
                if values[lab] != acc:
                    raise AssertionError(f"convolution is not constant on the orbit {lab}")
            else:
                values[lab] = acc
        return {lab: v for lab, v in sorted(values.items()) if v}


def _contained(small: GradedSubspace, big: GradedSubspace, q: int) -> bool:
    from .linalg import rank_mod

    for s, b in zip(small.bases, big.bases):
        if len(s) > len(b):
            return False
        if s and rank_mod(list(b) + list(s), q) != len(b):
            return False
    return True


def xn_convolve(f, g, xn: XnSpace) -> dict[XnLabel, SqrtQScalar]:
    return xn.convolve(f, g)


def eta(x: ModifiedHallElement, xn: XnSpace) -> dict[XnLabel, SqrtQScalar]:
    """1_d chi_[M] -> v^<dim M, d - dim M> times the indicator of the orbit O_{d,[M]}.

    Orbits are looked up among the enumerated pairs of X_n, so labels whose
    orbit is empty map to zero.
    """
    alg = x.algebra
    out: dict = {}
    for (d, m, cid), c in x.terms.items():
        lab = (d, m, cid)
        if lab not in xn.labels:
            continue
        rest = tuple(a - b for a, b in zip(d, m))
        val = c * SqrtQScalar.v_power(euler_form(alg.quiver, m, rest), alg.q)
        out[lab] = out[lab] + val if lab in out else val
    return {k: v for k, v in sorted(out.items()) if v}


def orbit_exists(quiver: Quiver, n: Sequence[int], d: Sequence[int], rep: Rep) -> bool:
    """<i,d> <= n_i and dim Hom(M, E_i) <= <d,i> for every vertex i."""
    for i in range(quiver.size):
        unit = quiver.unit(i)
        if euler_form(quiver, unit, d) > n[i]:
            return False
        if hom_into_simple(rep, i) > euler_form(quiver, d, unit):
            return False
    return True


def modified_labels(quiver: Quiver, q: int, max_total: int) -> list[ModLabel]:
    """All (d, dim M, class) with d in N^I, sum(d) <= max_total and sum(dim M) <= max_total."""
    vecs = [v for v in product(range(max_total + 1), repeat=quiver.size) if sum(v) <= max_total]
    out = []
    for d in vecs:
        for m in vecs:
            for cid in range(len(iso_classes(quiver, m, q))):
                out.append((d, m, cid))
    return out


def kernel_basis(quiver: Quiver, n: Sequence[int], q: int, labels: Iterable[ModLabel]) -> list[ModLabel]:
    """Labels 1_d chi_[M] failing the orbit-existence criterion: these span the kernel of eta."""
    n = quiver.dimvec(n)
    out = []
    for d, m, cid in labels:
        rep = iso_classes(quiver, m, q).reps[cid]
        if not orbit_exists(quiver, n, d, rep):
            out.append((tuple(d), tuple(m), cid))
    return out
