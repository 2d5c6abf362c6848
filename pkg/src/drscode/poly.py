"""Univariate polynomials over GF(2^m), coefficients stored low-to-high."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DegreeTooHigh, VanishesAtPivot, ZeroInverse, ZeroScale
from .gf import GF


def _strip(coeffs) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Polynomial:
    field: GF
    coeffs: tuple[int, ...]

    def __init__(self, field: GF, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", _strip(field.check(c) for c in coeffs))

    @classmethod
    def zero(cls, field: GF) -> "Polynomial":
        return cls(field, ())

    @classmethod
    def one(cls, field: GF) -> "Polynomial":
        return cls(field, (1,))

    @classmethod
    def monomial(cls, field: GF, degree: int, coeff: int = 1) -> "Polynomial":
        return cls(field, [0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with -1 standing in for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Polynomial(" + " + ".join(terms) + ")"

    def __call__(self, x: int) -> int:
        return self.eval(x)

    def eval(self, x: int) -> int:
        f = self.field
        y = 0
        for c in reversed(self.coeffs):
            y = f.mul(y, x) ^ c
        return y

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] ^= c
        return Polynomial(self.field, out)

    __sub__ = __add__

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return mul_poly(self, other)

    def scale(self, c: int) -> "Polynomial":
        f = self.field
        return Polynomial(f, [f.mul(a, c) for a in self.coeffs])

    def __divmod__(self, other: "Polynomial"):
        f = self.field
        if other.is_zero():
            raise ZeroInverse("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = f.inv(other.coeffs[-1])
        quot = [0] * max(0, len(rem) - d)
        for i in range(len(rem) - 1 - d, -1, -1):
            c = f.mul(rem[i + d], lead_inv)
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] ^= f.mul(b, c)
        return Polynomial(f, quot), Polynomial(f, rem[:d] if d > 0 else ())


def mul_poly(p: Polynomial, r: Polynomial) -> Polynomial:
    f = p.field
    if p.is_zero() or r.is_zero():
        return Polynomial.zero(f)
    out = [0] * (len(p.coeffs) + len(r.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(r.coeffs):
                out[i + j] ^= f.mul(a, b)
    return Polynomial(f, out)


def vanishing_poly(indices: Iterable[int], field: GF) -> Polynomial:
    """Monic product of (x - alpha^i) over the given indices.

    Indices beyond q - 1 wrap: alpha^i for i >= q - 1 is alpha^(i mod (q-1)).
    Repeated indices contribute repeated factors.
    """
    out = [1]
    for i in sorted(indices):
        root = field.exp(i)
        nxt = [0] * (len(out) + 1)
        for k, c in enumerate(out):
            nxt[k + 1] ^= c
            nxt[k] ^= field.mul(c, root)
        out = nxt
    return Polynomial(field, out)


def scale_arg(p: Polynomial, beta: int) -> Polynomial:
    """Return p(beta * x); a root gamma of p becomes gamma / beta."""
    f = p.field
    if beta == 0:
        raise ZeroScale("argument scale must be nonzero")
    return Polynomial(f, [f.mul(c, f.pow(beta, l)) for l, c in enumerate(p.coeffs)])


def normalize_at(p: Polynomial, index: int) -> Polynomial:
    """Scale p so that p(alpha^index) == 1."""
    f = p.field
    value = p.eval(f.exp(index))
    if value == 0:
        raise VanishesAtPivot(f"polynomial vanishes at alpha^{index}")
    return p.scale(f.inv(value))


def coeff_vector(p: Polynomial, k: int) -> list[int]:
    if p.degree >= k:
        raise DegreeTooHigh(f"degree {p.degree} does not fit in {k} coefficients")
    return list(p.coeffs) + [0] * (k - len(p.coeffs))


def count_nonzero_coeffs(p: Polynomial) -> int:
    return sum(1 for c in p.coeffs if c)


def roots_as_powers(p: Polynomial) -> list[int]:
    """Exponents e in [0, q-1) with p(alpha^e) = 0, found by exhaustive evaluation."""
    f = p.field
    if p.is_zero():
        return list(range(f.order))
    return [e for e in range(f.order) if p.eval(f.exp(e)) == 0]
