"""Brute-force finite-field oracle for representations and framed pairs.

Everything here enumerates points over a prime field F_p exhaustively. The
results are exact counts, so loops refuse to run past ``GUARD`` raw points
instead of sampling.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Sequence

from .errors import (
    NonDivisibleCount,
    NotASubrepresentation,
    SearchSpaceTooLarge,
    UnknownIsoClass,
    ValidationError,
)
from .linalg import (
    annihilator,
    canonical_basis,
    gl_order,
    in_span,
    inverse_mod,
    iter_gl,
    iter_subspaces,
    kernel_mod,
    matmul_mod,
    matvec_mod,
    rank_mod,
)
from .moduli import ModuliSpec
from .quiver import DimVector, Quiver, euler_form, path_counts, path_end, paths_from

GUARD = 2**24
PRIMES = (2, 3, 5)

Matrix = tuple[tuple[int, ...], ...]


def check_prime(q: int) -> int:
    if q not in PRIMES:
        raise ValidationError(f"q must be one of {PRIMES}, got {q}")
    return q


def guard(count: int, what: str) -> None:
    if count > GUARD:
        raise SearchSpaceTooLarge(f"{what}: {count} points exceeds the guard of {GUARD}")


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def column(m: Matrix, c: int) -> tuple[int, ...]:
    return tuple(row[c] for row in m)


@dataclass(frozen=True)
class Rep:
    """A representation over F_p: one (d_target x d_source) matrix per arrow."""

    quiver: Quiver
    dims: DimVector
    maps: tuple[Matrix, ...]
    p: int

    def __post_init__(self):
        if len(self.maps) != len(self.quiver.arrows):
            raise ValidationError("one matrix per arrow is required")
        for (s, t), m in zip(self.quiver.arrows, self.maps):
            if len(m) != self.dims[t] or any(len(row) != self.dims[s] for row in m):
                raise ValidationError(f"matrix for arrow {s}->{t} has the wrong shape")

    @classmethod
    def zero(cls, quiver: Quiver, dims, p: int) -> "Rep":
        dims = quiver.dimvec(dims)
        return cls(quiver, dims, tuple(zero_matrix(dims[t], dims[s]) for s, t in quiver.arrows), p)

    def apply(self, arrow: int, v: Sequence[int]) -> tuple[int, ...]:
        return matvec_mod(self.maps[arrow], v, self.p)

    def direct_sum(self, other: "Rep") -> "Rep":
        dims = tuple(a + b for a, b in zip(self.dims, other.dims))
        maps = []
        for (s, t), m1, m2 in zip(self.quiver.arrows, self.maps, other.maps):
            rows = [tuple(r) + (0,) * other.dims[s] for r in m1]
            rows += [(0,) * self.dims[s] + tuple(r) for r in m2]
            maps.append(tuple(rows))
        return Rep(self.quiver, dims, tuple(maps), self.p)


@dataclass(frozen=True)
class FramedPair:
    rep: Rep
    framing: tuple[Matrix, ...]

    @property
    def n(self) -> DimVector:
        return tuple(len(f) for f in self.framing)


@dataclass(frozen=True)
class GradedSubspace:
    """Per vertex, the reduced echelon basis (as rows) of a subspace of F_p^{ambient_i}."""

    bases: tuple[Matrix, ...]
    ambient: DimVector

    @property
    def dims(self) -> DimVector:
        return tuple(len(b) for b in self.bases)

    def is_zero(self) -> bool:
        return not any(self.bases)


# ----------------------------------------------------------------- enumeration

def _matrices(rows: int, cols: int, p: int) -> Iterator[Matrix]:
    for entries in product(range(p), repeat=rows * cols):
        yield tuple(tuple(entries[r * cols:(r + 1) * cols]) for r in range(rows))


def rep_space_dim(quiver: Quiver, d: DimVector) -> int:
    return sum(d[s] * d[t] for s, t in quiver.arrows)


def enumerate_reps(quiver: Quiver, d, q: int) -> Iterator[Rep]:
    """Every point of R_d(F_q) once, in lexicographic order of the flattened entries."""
    check_prime(q)
    d = quiver.dimvec(d)
    guard(q ** rep_space_dim(quiver, d), "R_d")
    shapes = [(d[t], d[s]) for s, t in quiver.arrows]
    for maps in product(*(list(_matrices(r, c, q)) for r, c in shapes)):
        yield Rep(quiver, d, tuple(maps), q)


def enumerate_points(spec: ModuliSpec, q: int) -> Iterator[FramedPair]:
    """Every point of R_{d,n}(F_q) once, in a fixed order."""
    check_prime(q)
    quiver, d, n = spec.quiver, spec.d, spec.n
    total = rep_space_dim(quiver, d) + sum(x * y for x, y in zip(d, n))
    guard(q**total, "R_{d,n}")
    framings = [list(_matrices(n[i], d[i], q)) for i in range(quiver.size)]
    for rep in enumerate_reps(quiver, d, q):
        for f in product(*framings):
            yield FramedPair(rep, tuple(f))


# ------------------------------------------------------------------- the Phi map

def phi_map(pair: FramedPair) -> dict[int, Matrix]:
    """phi_i : M_i -> (I (x) V)_i with block rows ordered like :func:`paths_from`.

    phi_i stacks f_i on top of phi_k M_alpha for each arrow alpha: i -> k.
    """
    rep = pair.rep
    quiver, p = rep.quiver, rep.p
    phi: dict[int, Matrix] = {}
    for i in reversed(quiver.order):
        rows = list(pair.framing[i])
        for a, k in quiver.arrows_from(i):
            rows.extend(matmul_mod(phi[k], rep.maps[a], p, rep.dims[i]))
        phi[i] = tuple(tuple(r) for r in rows)
    return phi


def phi_injective(pair: FramedPair) -> bool:
    phi = phi_map(pair)
    return all(rank_mod(phi[i], pair.rep.p) == pair.rep.dims[i] for i in phi if pair.rep.dims[i])


def _kernel_subspace(rows: Matrix, dim: int, p: int) -> Matrix:
    if dim == 0:
        return ()
    return tuple(kernel_mod([list(r) for r in rows], dim, p))


def max_subrep_in_ker(pair: FramedPair, cross_check: bool = True) -> GradedSubspace:
    """Largest subrepresentation of M inside Ker f.

    Computed as the kernel of Phi and, independently, as the fixpoint of
    U_i <- U_i cap M_alpha^{-1}(U_j) started from U_i = Ker f_i.
    """
    rep = pair.rep
    quiver, p, d = rep.quiver, rep.p, rep.dims
    phi = phi_map(pair)
    via_phi = tuple(_kernel_subspace(phi[i], d[i], p) for i in range(quiver.size))
    if cross_check:
        via_fix = _fixpoint_subrep(pair)
        if via_fix != via_phi:
            raise AssertionError(f"kernel of Phi {via_phi} differs from the fixpoint {via_fix}")
    return GradedSubspace(via_phi, d)


def _fixpoint_subrep(pair: FramedPair) -> tuple[Matrix, ...]:
    rep = pair.rep
    quiver, p, d = rep.quiver, rep.p, rep.dims
    spaces = [_kernel_subspace(pair.framing[i], d[i], p) for i in range(quiver.size)]
    changed = True
    while changed:
        changed = False
        for i in range(quiver.size):
            if not spaces[i]:
                continue
            constraints = [list(r) for r in pair.framing[i]]
            for a, j in quiver.arrows_from(i):
                ann = annihilator(spaces[j], d[j], p)
                if ann:
                    constraints.extend(matmul_mod(ann, rep.maps[a], p, d[i]))
            new = _kernel_subspace(tuple(tuple(r) for r in constraints), d[i], p) if constraints else spaces[i]
            if new != spaces[i]:
                spaces[i] = new
                changed = True
    return tuple(spaces)


def is_stable(pair: FramedPair) -> bool:
    """No nonzero subrepresentation of M lies in Ker f."""
    return max_subrep_in_ker(pair).is_zero()


INFINITY = "∞"


def deframe(pair: FramedPair) -> Rep:
    """The representation of the deframed quiver: n_i extra arrows i -> infinity, one per row of f_i."""
    rep = pair.rep
    quiver = rep.quiver
    if INFINITY in quiver.vertices:
        raise ValidationError("vertex name reserved for deframing is already in use")
    arrows = [(quiver.vertices[s], quiver.vertices[t]) for s, t in quiver.arrows]
    maps = list(rep.maps)
    for i in range(quiver.size):
        for row in pair.framing[i]:
            arrows.append((quiver.vertices[i], INFINITY))
            maps.append((tuple(row),))
    big = Quiver(list(quiver.vertices) + [INFINITY], arrows)
    return Rep(big, rep.dims + (1,), tuple(maps), rep.p)


def is_stable_slope(pair: FramedPair) -> bool:
    """Semistability of the deframed representation for Theta = -(dim at infinity).

    Every nonzero proper subrepresentation Y must satisfy mu(Y) <= mu(X) with
    mu = Theta / total dimension.
    """
    x = deframe(pair)
    total = sum(x.dims)
    mu_x = Fraction(-1, total)
    space = 1
    for dim in x.dims:
        space *= sum(_grassmann_size(dim, k, x.p) for k in range(dim + 1))
    guard(space, "subrepresentations of the deframed representation")
    for e in product(*(range(dim + 1) for dim in x.dims)):
        size = sum(e)
        if size == 0 or size == total:
            continue
        mu_y = Fraction(-e[-1], size)
        if mu_y <= mu_x:
            continue
        for _ in iter_subreps(x, e):
            return False
    return True


@lru_cache(maxsize=None)
def _grassmann_size(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for t in range(k):
        num *= p ** (n - t) - 1
        den *= p ** (t + 1) - 1
    return num // den


# ------------------------------------------------------------- subrepresentations

def _maps_into(rep: Rep, a: int, basis: Matrix, target_space: Matrix, target_dim: int) -> bool:
    ann = annihilator(target_space, target_dim, rep.p)
    if not ann:
        return True
    for v in basis:
        img = rep.apply(a, v)
        if any(sum(x * y for x, y in zip(row, img)) % rep.p for row in ann):
            return False
    return True


def iter_subreps(rep: Rep, e: Sequence[int]) -> Iterator[GradedSubspace]:
    """All subrepresentations of dimension vector e, chosen sinks first."""
    quiver = rep.quiver
    e = tuple(e)
    if any(x < 0 or x > y for x, y in zip(e, rep.dims)):
        return
    order = list(reversed(quiver.order))
    chosen: dict[int, Matrix] = {}

    def rec(pos):
        if pos == len(order):
            yield GradedSubspace(tuple(chosen[i] for i in range(quiver.size)), rep.dims)
            return
        i = order[pos]
        for sub in iter_subspaces(rep.dims[i], e[i], rep.p):
            if all(_maps_into(rep, a, sub, chosen[j], rep.dims[j]) for a, j in quiver.arrows_from(i)):
                chosen[i] = sub
                yield from rec(pos + 1)
        chosen.pop(i, None)

    yield from rec(0)


def gr_subrep_count(rep: Rep, e: Sequence[int], q: Optional[int] = None) -> int:
    """|Gr_e(X)(F_q)|: tuples of subspaces closed under every arrow map."""
    if q is not None and q != rep.p:
        raise ValidationError("q must match the field of the representation")
    e = rep.quiver.dimvec(e)
    size = 1
    for dim, k in zip(rep.dims, e):
        size *= _grassmann_size(dim, k, rep.p)
    guard(size, "product of Grassmannians")
    return sum(1 for _ in iter_subreps(rep, e))


def reduce_mod_subspace(v: Sequence[int], basis: Matrix, p: int) -> list[int]:
    """Reduce v against a reduced echelon basis so that it vanishes on the pivot columns."""
    v = [x % p for x in v]
    for row in basis:
        pc = next(c for c, x in enumerate(row) if x)
        if v[pc]:
            factor = v[pc]
            v = [(x - factor * y) % p for x, y in zip(v, row)]
    return v


def _pivots(basis: Matrix) -> list[int]:
    return [next(c for c, x in enumerate(row) if x) for row in basis]


def quotient_rep(rep: Rep, sub: GradedSubspace) -> Rep:
    """X/U with coordinates on the non-pivot columns of each U_i."""
    quiver, p = rep.quiver, rep.p
    free = []
    for i in range(quiver.size):
        piv = set(_pivots(sub.bases[i]))
        free.append([c for c in range(rep.dims[i]) if c not in piv])
    maps = []
    for a, (s, t) in enumerate(quiver.arrows):
        for u in sub.bases[s]:
            if any(reduce_mod_subspace(rep.apply(a, u), sub.bases[t], p)):
                raise NotASubrepresentation(f"arrow {a} does not preserve the subspace")
        cols = []
        for c in free[s]:
            img = reduce_mod_subspace(column(rep.maps[a], c), sub.bases[t], p)
            cols.append([img[r] for r in free[t]])
        maps.append(tuple(tuple(cols[k][r] for k in range(len(free[s]))) for r in range(len(free[t]))))
    dims = tuple(len(f) for f in free)
    return Rep(quiver, dims, tuple(maps), p)


def subrep_as_rep(rep: Rep, sub: GradedSubspace) -> Rep:
    """U with the restricted maps, in the coordinates of its echelon basis."""
    quiver, p = rep.quiver, rep.p
    maps = []
    for a, (s, t) in enumerate(quiver.arrows):
        piv = _pivots(sub.bases[t])
        cols = []
        for u in sub.bases[s]:
            img = rep.apply(a, u)
            coeffs = [img[c] for c in piv]
            rebuilt = [sum(k * row[c] for k, row in zip(coeffs, sub.bases[t])) % p for c in range(rep.dims[t])]
            if rebuilt != list(img):
                raise NotASubrepresentation(f"arrow {a} does not preserve the subspace")
            cols.append(coeffs)
        maps.append(tuple(tuple(cols[k][r] for k in range(len(sub.bases[s]))) for r in range(len(piv))))
    return Rep(quiver, sub.dims, tuple(maps), p)


# ------------------------------------------------------- the injective I (x) V

def injective_layout(quiver: Quiver, n: Sequence[int]) -> list[list[tuple[tuple[int, ...], int, int]]]:
    """Per vertex i, (path, offset, width) for each block V_{end(path)} of (I (x) V)_i."""
    layout = []
    for i in range(quiver.size):
        blocks, offset = [], 0
        for path in paths_from(quiver, i):
            width = n[path_end(quiver, i, path)]
            blocks.append((path, offset, width))
            offset += width
        layout.append(blocks)
    return layout


def build_injective_sum(quiver: Quiver, n, q: int) -> Rep:
    """I (x) V with the projections pr_alpha as arrow maps."""
    check_prime(q)
    n = quiver.dimvec(n)
    layout = injective_layout(quiver, n)
    dims = tuple(sum(w for _, _, w in blocks) for blocks in layout)
    maps = []
    for a, (s, t) in enumerate(quiver.arrows):
        target_offsets = {path: off for path, off, _ in layout[t]}
        m = [[0] * dims[s] for _ in range(dims[t])]
        for path, off, width in layout[s]:
            if path and path[0] == a:
                toff = target_offsets[path[1:]]
                for k in range(width):
                    m[toff + k][off + k] = 1
        maps.append(tuple(tuple(r) for r in m))
    return Rep(quiver, dims, tuple(maps), q)


def moduli_points(spec: ModuliSpec, q: int) -> Iterator[GradedSubspace]:
    """Points of M_{d,n}(F_q) as subrepresentations of I (x) V of dimension d."""
    x = build_injective_sum(spec.quiver, spec.n, q)
    return iter_subreps(x, spec.d)


def embedding_condition(point: GradedSubspace, spec: ModuliSpec, q: int) -> bool:
    """U_i lies in V_i + sum over arrows i -> j of U_j, placed in the alpha blocks."""
    quiver = spec.quiver
    layout = injective_layout(quiver, spec.n)
    if point.dims != spec.d:
        return False
    for i in range(quiver.size):
        width = sum(w for _, _, w in layout[i])
        allowed = []
        for path, off, w in layout[i]:
            if not path:
                allowed.extend(tuple(int(c == off + k) for c in range(width)) for k in range(w))
        for a, j in quiver.arrows_from(i):
            start = next(off for path, off, _ in layout[i] if path == (a,))
            for u in point.bases[j]:
                vec = [0] * width
                vec[start:start + len(u)] = u
                allowed.append(tuple(vec))
        for u in point.bases[i]:
            if not in_span(allowed, u, q):
                return False
    return True


def iter_embedded_points(spec: ModuliSpec, q: int) -> Iterator[GradedSubspace]:
    """Tuples in the product of Grassmannians passing :func:`embedding_condition`."""
    counts = path_counts(spec.quiver)
    ambient = [sum(counts[i][j] * spec.n[j] for j in range(spec.quiver.size)) for i in range(spec.quiver.size)]
    size = 1
    for dim, k in zip(ambient, spec.d):
        size *= _grassmann_size(dim, k, q)
    guard(size, "product of Grassmannians")
    for bases in product(*(list(iter_subspaces(dim, k, q)) for dim, k in zip(ambient, spec.d))):
        point = GradedSubspace(tuple(bases), tuple(ambient))
        if embedding_condition(point, spec, q):
            yield point


# ----------------------------------------------------------------- counting

def g_order(d: Sequence[int], q: int) -> int:
    out = 1
    for x in d:
        out *= gl_order(x, q)
    return out


def count_stable_points(spec: ModuliSpec, q: int) -> int:
    return sum(1 for pair in enumerate_points(spec, q) if is_stable(pair))


def count_moduli_points(spec: ModuliSpec, q: int) -> int:
    """|M_{d,n}(F_q)| = |stable points| / |G_d(F_q)| (the action is free)."""
    stable = count_stable_points(spec, q)
    order = g_order(spec.d, q)
    if stable % order:
        raise NonDivisibleCount(f"{stable} stable points not divisible by |G_d| = {order}")
    return stable // order


# ------------------------------------------------------ homological dimensions

def _stacked_out(rep: Rep, i: int) -> list[list[int]]:
    rows: list[list[int]] = []
    for a, _ in rep.quiver.arrows_from(i):
        rows.extend(list(r) for r in rep.maps[a])
    return rows


def hom_simple_into(rep: Rep, i) -> int:
    """dim Hom(E_i, M) = dim Ker of the stacked outgoing maps at i."""
    i = rep.quiver.index(i)
    rows = _stacked_out(rep, i)
    return rep.dims[i] - (rank_mod(rows, rep.p) if rows else 0)


def hom_into_simple(rep: Rep, i) -> int:
    """dim Hom(M, E_i) = d_i - rank of the incoming maps placed side by side."""
    i = rep.quiver.index(i)
    incoming = rep.quiver.arrows_into(i)
    if not incoming or rep.dims[i] == 0:
        return rep.dims[i]
    rows = [sum((list(rep.maps[a][r]) for a, _ in incoming), []) for r in range(rep.dims[i])]
    return rep.dims[i] - rank_mod(rows, rep.p)


def ext_simple_into(rep: Rep, i) -> int:
    i = rep.quiver.index(i)
    value = hom_simple_into(rep, i) - euler_form(rep.quiver, rep.quiver.unit(i), rep.dims)
    assert value >= 0, "negative Ext dimension"
    return value


def injective_coresolution_dims(rep: Rep) -> tuple[DimVector, DimVector]:
    """(dim Hom(E_i, M))_i and (dim Ext^1(E_i, M))_i of the minimal injective coresolution."""
    quiver = rep.quiver
    hom = tuple(hom_simple_into(rep, i) for i in range(quiver.size))
    ext = tuple(ext_simple_into(rep, i) for i in range(quiver.size))
    counts = path_counts(quiver)
    for j in range(quiver.size):
        # dim (I_i)_j = number of paths j ~> i
        total = sum((hom[i] - ext[i]) * counts[j][i] for i in range(quiver.size))
        assert total == rep.dims[j], "coresolution dimensions do not add up"
    return hom, ext


def is_projective(rep: Rep) -> bool:
    quiver = rep.quiver
    return all(
        hom_into_simple(rep, i) == euler_form(quiver, rep.dims, quiver.unit(i)) for i in range(quiver.size)
    )


# ------------------------------------------------------------------- orbits

def _act(rep: Rep, g, ginv) -> tuple[Matrix, ...]:
    p = rep.p
    out = []
    for (s, t), m in zip(rep.quiver.arrows, rep.maps):
        if not m or not m[0]:
            out.append(m)
            continue
        left = matmul_mod(g[t], m, p, rep.dims[s])
        out.append(tuple(tuple(r) for r in matmul_mod(left, ginv[s], p, rep.dims[s])))
    return tuple(out)


@dataclass(frozen=True)
class IsoTable:
    """G_d-orbits on R_d(F_q): canonical representatives, orbit sizes and a point lookup."""

    quiver: Quiver
    d: DimVector
    q: int
    reps: tuple[Rep, ...]
    sizes: tuple[int, ...]
    lookup: dict

    def class_of(self, rep: Rep) -> int:
        try:
            return self.lookup[rep.maps]
        except KeyError:
            raise UnknownIsoClass(f"no class for {rep.maps} in dimension {self.d}") from None

    def __len__(self):
        return len(self.reps)

    def __hash__(self):
        return hash((self.quiver, self.d, self.q))

    def __eq__(self, other):
        return isinstance(other, IsoTable) and (self.quiver, self.d, self.q) == (other.quiver, other.d, other.q)


def iso_classes(quiver: Quiver, d, q: int) -> IsoTable:
    """Partition R_d(F_q) into G_d-orbits by applying every group element.

    The representative of an orbit is its first point in enumeration order.
    Tables are cached per (quiver, d, q).
    """
    check_prime(q)
    return _iso_classes(quiver, quiver.dimvec(d), q)


@lru_cache(maxsize=None)
def _iso_classes(quiver: Quiver, d: DimVector, q: int) -> IsoTable:
    points = list(enumerate_reps(quiver, d, q))
    group_size = g_order(d, q)
    if len(points) > 1:
        guard(group_size * len(points), "G_d acting on R_d")
        group = [
            (g, tuple(inverse_mod(m, q) if m else () for m in g))
            for g in product(*(list(iter_gl(x, q)) if x else [()] for x in d))
        ]
    else:
        group = []
    lookup: dict = {}
    reps, sizes = [], []
    for rep in points:
        if rep.maps in lookup:
            continue
        cid = len(reps)
        orbit = {rep.maps}
        for g, ginv in group:
            orbit.add(_act(rep, g, ginv))
        for key in orbit:
            lookup[key] = cid
        reps.append(rep)
        sizes.append(len(orbit))
    assert sum(sizes) == len(points)
    return IsoTable(quiver, d, q, tuple(reps), tuple(sizes), lookup)


def restricted_classes(quiver: Quiver, d, n, q: int) -> list[int]:
    """Classes M in R_d with dim Hom(E_i, M) <= n_i for every i."""
    table = iso_classes(quiver, d, q)
    return [
        cid for cid, rep in enumerate(table.reps)
        if all(hom_simple_into(rep, i) <= n[i] for i in range(quiver.size))
    ]


def iter_an_group(quiver: Quiver, n, q: int) -> Iterator[list[Matrix]]:
    """Aut_Q(I (x) V) as block matrices psi_k on each (I (x) V)_k.

    An element is a family f_omega, one per path omega: i ~> j, with
    f_omega : V_j -> V_i and f invertible on trivial paths. Block (p, p') of
    psi_k is f_omega when p' = p omega.
    """
    n = quiver.dimvec(n)
    layout = injective_layout(quiver, n)
    keys = []
    for i in range(quiver.size):
        for path in paths_from(quiver, i):
            keys.append((i, path))
    choices = []
    size = 1
    for i, path in keys:
        j = path_end(quiver, i, path)
        if path:
            options = list(_matrices(n[i], n[j], q))
        else:
            options = list(iter_gl(n[i], q)) if n[i] else [()]
        size *= len(options)
        choices.append(options)
    guard(size, "A_n")
    dims = [sum(w for _, _, w in blocks) for blocks in layout]
    for values in product(*choices):
        f = dict(zip(keys, values))
        psi = []
        for k in range(quiver.size):
            m = [[0] * dims[k] for _ in range(dims[k])]
            for p_row, off_r, w_r in layout[k]:
                for p_col, off_c, w_c in layout[k]:
                    if p_col[: len(p_row)] != p_row:
                        continue
                    omega = p_col[len(p_row):]
                    block = f[(path_end(quiver, k, p_row), omega)]
                    for r in range(w_r):
                        for c in range(w_c):
                            m[off_r + r][off_c + c] = block[r][c]
            psi.append(tuple(tuple(r) for r in m))
        yield psi


def act_on_point(psi: list[Matrix], point: GradedSubspace, p: int) -> GradedSubspace:
    bases = []
    for k, basis in enumerate(point.bases):
        images = [matvec_mod(psi[k], v, p) for v in basis]
        bases.append(canonical_basis(images, point.ambient[k], p))
    return GradedSubspace(tuple(bases), point.ambient)


def an_orbits(spec: ModuliSpec, q: int) -> list[list[GradedSubspace]]:
    points = list(moduli_points(spec, q))
    group = list(iter_an_group(spec.quiver, spec.n, q))
    guard(len(group) * max(1, len(points)), "A_n acting on M_{d,n}")
    seen: set = set()
    orbits = []
    for pt in points:
        if pt in seen:
            continue
        orbit = {act_on_point(psi, pt, q) for psi in group} | {pt}
        seen |= orbit
        orbits.append(sorted(orbit, key=lambda x: x.bases))
    return orbits


def an_orbit_count(spec: ModuliSpec, q: int) -> int:
    return len(an_orbits(spec, q))
