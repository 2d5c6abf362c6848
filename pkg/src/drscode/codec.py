"""End-to-end pipeline: relay encoding, adversarial corruption, decoding.

Words on the wire are in canonical column order: position p (0-based here)
is the relay ``cons.column_order[p]`` and is evaluated at alpha^(p+1).
Source messages are given per original source; symbol l of source i rides
on the l-th row of G owned by source i.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .construct import Construction
from .errors import DecodeFailure, DuplicatePosition, IndexOutOfRange, LengthMismatch, ZeroErrorValue
from .linalg import invert, row_echelon_pivots, select_columns
from .rs import rs_decode_bw


@dataclass(frozen=True)
class ReceivedWord:
    y: tuple[int, ...]
    error: Optional[tuple[int, ...]] = None


def concat_messages(cons: Construction, msgs: Sequence[Sequence[int]]) -> list[int]:
    """Map per-source messages onto the rows of G."""
    rates = cons.topology.rates
    if len(msgs) != len(rates):
        raise LengthMismatch(f"{len(msgs)} message blocks for {len(rates)} sources")
    for i, (m, r) in enumerate(zip(msgs, rates), start=1):
        if len(m) != r:
            raise LengthMismatch(f"source {i} message has length {len(m)}, rate is {r}")
    cursor = [0] * len(rates)
    out = []
    for owner in cons.row_owner:
        out.append(cons.code.field.check(msgs[owner - 1][cursor[owner - 1]]))
        cursor[owner - 1] += 1
    return out


def split_messages(cons: Construction, m: Sequence[int]) -> list[list[int]]:
    msgs: list[list[int]] = [[] for _ in cons.topology.rates]
    for owner, v in zip(cons.row_owner, m):
        msgs[owner - 1].append(v)
    return msgs


def relay_encode(cons: Construction, msgs: Sequence[Sequence[int]], relay: int) -> int:
    """Symbol sent by the relay at canonical position ``relay`` (1-based).

    Only message blocks of sources adjacent to that relay are read.
    """
    if not 1 <= relay <= cons.code.N:
        raise IndexOutOfRange(f"relay position {relay} outside 1..{cons.code.N}")
    f = cons.code.field
    adj = cons.topology.adjacency
    physical = cons.column_order[relay - 1]
    cursor = [0] * len(msgs)
    acc = 0
    for owner, row in zip(cons.row_owner, cons.G.rows):
        l = cursor[owner - 1]
        cursor[owner - 1] += 1
        if adj[owner - 1][physical - 1]:
            acc ^= f.mul(msgs[owner - 1][l], row[relay - 1])
    return acc


def encode_all(cons: Construction, msgs: Sequence[Sequence[int]]) -> list[int]:
    m = concat_messages(cons, msgs)
    if not m:
        return [0] * cons.code.N
    return cons.G.vecmul(m)


def corrupt(c: Sequence[int], errors: Sequence[tuple[int, int]]) -> ReceivedWord:
    """Add an error vector given as (1-based position, nonzero value) pairs."""
    e = [0] * len(c)
    seen = set()
    for pos, value in errors:
        if pos in seen:
            raise DuplicatePosition(f"position {pos} corrupted twice")
        if value == 0:
            raise ZeroErrorValue(f"error value at position {pos} is zero")
        if not 1 <= pos <= len(c):
            raise IndexOutOfRange(f"error position {pos} outside 1..{len(c)}")
        seen.add(pos)
        e[pos - 1] = value
    return ReceivedWord(tuple(a ^ b for a, b in zip(c, e)), tuple(e))


@lru_cache(maxsize=64)
def _recovery(cons: Construction):
    """Pivot columns of T and the inverse of the matching square submatrix."""
    _, pivots = row_echelon_pivots(cons.T)
    if len(pivots) != cons.T.nrows:
        raise AssertionError("T must have full row rank")
    return tuple(pivots), invert(select_columns(cons.T, pivots))


def decode(cons: Construction, y) -> list[list[int]]:
    """Recover per-source messages from a received word.

    Raises DecodeFailure when Berlekamp-Welch fails or when the decoded RS
    message lies outside the row space of T (more than z errors).
    """
    if isinstance(y, ReceivedWord):
        y = y.y
    m_rs = rs_decode_bw(cons.code, list(y))
    if cons.T.nrows == 0:
        if any(m_rs):
            raise DecodeFailure("decoded codeword is not the zero word of an empty code")
        return split_messages(cons, [])
    pivots, T_inv = _recovery(cons)
    m = T_inv.vecmul([m_rs[j] for j in pivots])
    if cons.T.vecmul(m) != m_rs:
        raise DecodeFailure("decoded RS codeword lies outside the distributed subcode")
    return split_messages(cons, m)


def random_messages(cons: Construction, rng: random.Random) -> list[list[int]]:
    q = cons.code.field.q
    return [[rng.randrange(q) for _ in range(r)] for r in cons.topology.rates]


def random_errors(n: int, weight: int, q: int, rng: random.Random) -> list[tuple[int, int]]:
    positions = sorted(rng.sample(range(1, n + 1), weight))
    return [(p, rng.randrange(1, q)) for p in positions]


def simulate(cons: Construction, trials: int, error_budget: int, rng_seed: int) -> dict:
    """Random messages through random exact-weight errors; deterministic per seed."""
    if error_budget < 0:
        raise ValueError("error budget must be non-negative")
    if error_budget > cons.code.N:
        raise ValueError(f"error budget {error_budget} exceeds code length {cons.code.N}")
    rng = random.Random(rng_seed)
    q = cons.code.field.q
    successes = failures = miscorrections = 0
    for _ in range(trials):
        msgs = random_messages(cons, rng)
        word = corrupt(encode_all(cons, msgs), random_errors(cons.code.N, error_budget, q, rng))
        try:
            out = decode(cons, word)
        except DecodeFailure:
            failures += 1
            continue
        if out == msgs:
            successes += 1
        else:
            miscorrections += 1
    return {
        "trials": trials,
        "successes": successes,
        "failures": failures,
        "miscorrections": miscorrections,
        "seed": rng_seed,
    }
