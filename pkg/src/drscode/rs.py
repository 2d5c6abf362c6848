"""The constituent [N, k, d] Reed-Solomon code.

Codewords are evaluations ``[m(a^1), ..., m(a^N)]`` of message polynomials
of degree below ``k = N - 2z``; ``a^0 = 1`` is not an evaluation point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import DecodeFailure, FieldError, LengthMismatch, OracleTooLarge
from .gf import GF
from .linalg import Matrix, invert, solve
from .poly import Polynomial

ORACLE_LIMIT = 1 << 20


@dataclass(frozen=True)
class RSCode:
    field: GF
    N: int
    z: int

    def __post_init__(self):
        if self.N < 1:
            raise FieldError("code length N must be positive")
        if self.z < 0:
            raise FieldError("error budget z must be non-negative")
        if self.k < 1:
            raise FieldError(f"N - 2z = {self.k} leaves no message symbols")
        if self.field.order < self.N:
            raise FieldError(
                f"{self.field!r} has only {self.field.order} nonzero elements; need q - 1 >= N = {self.N}"
            )

    @property
    def k(self) -> int:
        return self.N - 2 * self.z

    @property
    def d(self) -> int:
        return 2 * self.z + 1

    @cached_property
    def eval_points(self) -> tuple[int, ...]:
        return tuple(self.field.exp(j) for j in range(1, self.N + 1))

    @cached_property
    def point_powers(self) -> tuple[tuple[int, ...], ...]:
        """point_powers[j][l] = (alpha^(j+1))^l for l = 0..N."""
        f = self.field
        return tuple(tuple(f.pow(x, l) for l in range(self.N + 1)) for x in self.eval_points)

    @cached_property
    def G(self) -> Matrix:
        return generator_matrix(self)


def generator_matrix(code: RSCode) -> Matrix:
    """k x N matrix with entry (i, j-1) = alpha^(i*j), j = 1..N."""
    f = code.field
    return Matrix(f, [[f.exp(i * j) for j in range(1, code.N + 1)] for i in range(code.k)], code.N)


def rs_encode(code: RSCode, msg: Sequence[int]) -> list[int]:
    if len(msg) != code.k:
        raise LengthMismatch(f"message length {len(msg)} != k = {code.k}")
    poly = Polynomial(code.field, msg)
    return [poly.eval(x) for x in code.eval_points]


@lru_cache(maxsize=32)
def _interpolation_matrix(code: RSCode) -> Matrix:
    """Inverse Vandermonde on the evaluation points: word @ it = coefficients."""
    f = code.field
    vander = Matrix(f, [[f.pow(x, l) for x in code.eval_points] for l in range(code.N)], code.N)
    return invert(vander)


def interpolation_degree(code: RSCode, word: Sequence[int]) -> int:
    """Degree of the unique polynomial of degree < N through (alpha^j, word_j).

    A word is a codeword of the code iff this is below k.
    """
    if len(word) != code.N:
        raise LengthMismatch(f"word length {len(word)} != N = {code.N}")
    coeffs = _interpolation_matrix(code).vecmul(list(word))
    return Polynomial(code.field, coeffs).degree


def _bw_attempt(code: RSCode, y: Sequence[int], e: int):
    f = code.field
    nq = e + code.k
    rows, rhs = [], []
    for pw, yj in zip(code.point_powers, y):
        # Q(x) - y E_low(x) = y x^e  (char 2: minus is plus)
        rows.append(list(pw[:nq]) + [f.mul(yj, p) for p in pw[:e]])
        rhs.append(f.mul(yj, pw[e]))
    return solve(Matrix(f, rows, nq + e), rhs)


def rs_decode_bw(code: RSCode, y: Sequence[int]) -> list[int]:
    """Berlekamp-Welch unique decoding up to z errors.

    Solves Q(x_j) = y_j E(x_j) with E monic of degree e, deg Q <= e + k - 1,
    starting at e = z and lowering e only when the system is infeasible.
    """
    if len(y) != code.N:
        raise LengthMismatch(f"received word length {len(y)} != N = {code.N}")
    f = code.field
    for e in range(code.z, -1, -1):
        sol = _bw_attempt(code, y, e)
        if sol is None:
            continue
        nq = e + code.k
        Q = Polynomial(f, sol[:nq])
        E = Polynomial(f, list(sol[nq:]) + [1])
        m, r = divmod(Q, E)
        if not r.is_zero() or m.degree >= code.k:
            raise DecodeFailure("more than z errors: Q is not divisible by E")
        return list(m.coeffs) + [0] * (code.k - len(m.coeffs))
    raise DecodeFailure("more than z errors: key equation has no solution")


def span_words(field: GF, rows, ncols: int, limit: int = ORACLE_LIMIT) -> tuple[np.ndarray, np.ndarray]:
    """All (coefficient vector, combination) pairs of the row span, as arrays."""
    q, k = field.q, len(rows)
    if q**k > limit:
        raise OracleTooLarge(f"q^k = {q}^{k} exceeds the enumeration limit of {limit}")
    exp = np.array(field._exp, dtype=np.int64)
    log = np.array(field._log, dtype=np.int64)
    digits = np.arange(q**k, dtype=np.int64)
    coeffs = np.empty((q**k, k), dtype=np.int64)
    for i in range(k):
        coeffs[:, i] = (digits // q**i) % q
    words = np.zeros((q**k, ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        ci = coeffs[:, i]
        nz = ci != 0
        lc = log[ci[nz]]
        for j, g in enumerate(row):
            if g:
                words[nz, j] ^= exp[lc + field._log[g]]
    return coeffs, words


@lru_cache(maxsize=8)
def _codebook(code: RSCode) -> tuple[np.ndarray, np.ndarray]:
    return span_words(code.field, code.G.rows, code.N)


def rs_decode_bruteforce(code: RSCode, y: Sequence[int]) -> list[int]:
    """Nearest-codeword search over all q^k messages (test oracle)."""
    if len(y) != code.N:
        raise LengthMismatch(f"received word length {len(y)} != N = {code.N}")
    msgs, words = _codebook(code)
    dist = np.count_nonzero(words != np.asarray(y, dtype=np.int64), axis=1)
    close = np.flatnonzero(dist <= code.z)
    if len(close) != 1:
        raise DecodeFailure(f"{len(close)} codewords within distance {code.z}")
    return [int(v) for v in msgs[close[0]]]


def minimum_distance(code: RSCode) -> int:
    """Minimum nonzero codeword weight, by exhaustive enumeration."""
    _, words = _codebook(code)
    weights = np.count_nonzero(words[1:], axis=1)
    return int(weights.min())
