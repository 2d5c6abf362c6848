"""Arithmetic in binary extension fields GF(2^m).

Elements are plain ints in ``[0, q)``; bit ``i`` is the coefficient of
``x^i`` in the polynomial basis. The primitive element is the residue of
``x`` (integer value 2 for ``m >= 2``), and multiplication goes through
log/antilog tables built once per field.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .errors import FieldError, ZeroInverse, ZeroLog

# Default primitive polynomials, bit i = coefficient of x^i.
PRIMITIVE_POLYS = {
    1: 0x3,
    2: 0x7,
    3: 0xB,  # x^3 + x + 1
    4: 0x13,  # x^4 + x + 1
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

_POWER_RE = re.compile(r"^\s*(?:a|α|alpha)\s*(?:\^\s*(-?\d+))?\s*$")


class GF:
    """The field GF(2^m) with a fixed primitive polynomial.

    Instances are immutable; use :func:`field` to share them.
    """

    __slots__ = ("m", "primitive_poly", "q", "order", "_exp", "_log")

    def __init__(self, m: int, primitive_poly: int | None = None):
        if not isinstance(m, int) or not 1 <= m <= 16:
            raise FieldError(f"extension degree m must be in [1, 16], got {m!r}")
        if primitive_poly is None:
            primitive_poly = PRIMITIVE_POLYS[m]
        if primitive_poly.bit_length() != m + 1:
            raise FieldError(f"primitive polynomial {primitive_poly:#x} does not have degree {m}")
        self.m = m
        self.primitive_poly = primitive_poly
        self.q = 1 << m
        self.order = self.q - 1
        self._exp, self._log = self._build_tables()

    def _build_tables(self):
        q, n = self.q, self.order
        exp = [0] * (2 * n)
        log = [-1] * q
        x = 1
        for i in range(n):
            if log[x] != -1:
                raise FieldError(f"{self.primitive_poly:#x} is not primitive over GF(2)")
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & q:
                x ^= self.primitive_poly
        if x != 1:
            raise FieldError(f"{self.primitive_poly:#x} is not primitive over GF(2)")
        # Doubled so that exp[log a + log b] needs no reduction.
        exp[n:] = exp[:n]
        return tuple(exp), tuple(log)

    def __repr__(self):
        return f"GF(2^{self.m}, poly={self.primitive_poly:#x})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.m, self.primitive_poly) == (other.m, other.primitive_poly)

    def __hash__(self):
        return hash((self.m, self.primitive_poly))

    def __reduce__(self):
        return (field, (self.m, self.primitive_poly))

    # -- elements -----------------------------------------------------------

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not an element of {self!r}")
        return a

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    @property
    def alpha(self) -> int:
        """The primitive element, i.e. the residue of x."""
        return self._exp[1]

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroInverse("division by zero")
        if a == 0:
            return 0
        return self._exp[self._log[a] - self._log[b] + self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        return self._exp[self.order - self._log[a]]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroInverse("negative power of 0")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % self.order]

    def exp(self, e: int) -> int:
        """alpha**e, with e reduced modulo q - 1."""
        return self._exp[e % self.order]

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroLog("discrete log of 0 is undefined")
        return self._log[a]

    def dot(self, u, v) -> int:
        exp, log = self._exp, self._log
        acc = 0
        for a, b in zip(u, v):
            if a and b:
                acc ^= exp[log[a] + log[b]]
        return acc

    # -- text forms ---------------------------------------------------------

    def format(self, a: int, power: bool = False) -> str:
        if not power:
            return str(a)
        if a == 0:
            return "0"
        e = self._log[a]
        if e == 0:
            return "1"
        if e == 1:
            return "a"
        return f"a^{e}"

    def parse(self, text) -> int:
        """Accept a polynomial-basis integer or power notation (``a^e``, ``a``, ``0``)."""
        if isinstance(text, int) and not isinstance(text, bool):
            return self.check(text)
        s = str(text).strip()
        match = _POWER_RE.match(s)
        if match:
            return self.exp(int(match.group(1) or 1))
        try:
            value = int(s, 0)
        except ValueError:
            raise FieldError(f"cannot parse field element {text!r}") from None
        return self.check(value)


@lru_cache(maxsize=None)
def field(m: int, primitive_poly: int | None = None) -> GF:
    """Return the shared GF(2^m) instance."""
    if primitive_poly is None:
        primitive_poly = PRIMITIVE_POLYS.get(m)
    return GF(m, primitive_poly)


def smallest_field_for(n: int) -> GF:
    """Smallest GF(2^m) with q >= n + 1, i.e. with n distinct nonzero points."""
    m = max(1, (n).bit_length())
    while (1 << m) < n + 1:
        m += 1
    if m > 16:
        raise FieldError(f"no supported field has {n} distinct nonzero elements")
    return field(m)
