"""Integer polynomials in one variable q, and Gaussian binomials."""
from __future__ import annotations

from functools import lru_cache
from itertools import zip_longest
from typing import Iterable


class IntPoly:
    """Immutable polynomial with integer coefficients; ``coeffs[k]`` multiplies q^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, coeff: int = 1) -> "IntPoly":
        return cls([0] * k + [coeff])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        return IntPoly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-a for a in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(a * other for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __call__(self, q):
        value = 0
        for a in reversed(self.coeffs):
            value = value * q + a
        return value

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        terms = []
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if k == 0:
                body = str(abs(a))
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if abs(a) == 1 else f"{abs(a)}*{mono}"
            if not terms:
                terms.append(body if a > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if a > 0 else f"- {body}")
        return " ".join(terms) if terms else "0"


def qbinomial(n: int, d: int) -> IntPoly:
    """Gaussian binomial [n choose d]_q; zero outside 0 <= d <= n."""
    if d < 0 or n < 0 or d > n:
        return IntPoly()
    return IntPoly(_qbinom(n, min(d, n - d)))


@lru_cache(maxsize=None)
def _qbinom(n: int, d: int) -> tuple[int, ...]:
    if d == 0 or d == n:
        return (1,)
    # [n, d] = [n-1, d-1] + q^d [n-1, d]
    left = IntPoly(_qbinom(n - 1, d - 1))
    right = IntPoly(_qbinom(n - 1, d)) if d <= n - 1 else IntPoly()
    return (left + IntPoly.monomial(d) * right).coeffs


def qinteger(n: int) -> IntPoly:
    return IntPoly([1] * n)


def qfactorial(n: int) -> IntPoly:
    out = IntPoly([1])
    for k in range(1, n + 1):
        out = out * qinteger(k)
    return out
