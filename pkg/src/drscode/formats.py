"""JSON wire formats: topology files, code bundles, message files."""

from __future__ import annotations

import json
import re
from pathlib import Path

from .construct import BLOCK_ORDER, Construction, RowPlan, make_plan
from .errors import DRSError, TopologyError
from .gf import GF, field, smallest_field_for
from .linalg import Matrix
from .poly import vanishing_poly
from .rs import RSCode
from .sman import SmanTopology, pad_sources


class FormatError(DRSError, ValueError):
    """Structurally invalid JSON input."""


def read_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


_FLAT_LIST = re.compile(r"\[[^\[\]{}]*\]")


def dump_json(obj) -> str:
    """Indented JSON with every list of scalars kept on one line."""
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    text = _FLAT_LIST.sub(lambda m: json.dumps(json.loads(m.group(0)), ensure_ascii=False), text)
    return text + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dump_json(obj), encoding="utf-8")


def _field_from(block, n_relays: int) -> GF:
    if block is None:
        return smallest_field_for(n_relays)
    try:
        return field(int(block["m"]), block.get("primitive_poly"))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad field block: {block!r}") from exc


def field_to_json(f: GF) -> dict:
    return {"m": f.m, "primitive_poly": f.primitive_poly}


def load_topology(data: dict) -> tuple[SmanTopology, GF]:
    try:
        rates = data["rates"]
        z = data["z"]
        adjacency = data["adjacency"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"topology needs 'rates', 'z' and 'adjacency': {exc}") from exc
    if not isinstance(adjacency, list) or not adjacency or not isinstance(adjacency[0], list):
        raise FormatError("'adjacency' must be a nonempty list of rows")
    top = SmanTopology(rates, z, adjacency)
    return top, _field_from(data.get("field"), top.N)


def topology_to_json(top: SmanTopology, f: GF | None = None) -> dict:
    out = {}
    if f is not None:
        out["field"] = field_to_json(f)
    out.update(z=top.z, rates=list(top.rates), adjacency=[list(r) for r in top.adjacency])
    return out


def _matrix_json(m: Matrix, power: bool):
    if not power:
        return m.tolist()
    return [[m.field.format(v, True) for v in row] for row in m.rows]


def bundle_to_json(cons: Construction, power: bool = False) -> dict:
    f = cons.code.field
    out = {
        "field": field_to_json(f),
        "N": cons.code.N,
        "k": cons.code.k,
        "z": cons.code.z,
        "case": cons.case,
        "source_perm": list(cons.plan.source_perm),
        "column_order": list(cons.column_order),
        "T": _matrix_json(cons.T, power),
        "G": _matrix_json(cons.G, power),
        "row_owner": list(cons.row_owner),
        "row_pivots": [rp.pivot for rp in cons.rows],
        "topology": topology_to_json(cons.topology),
    }
    if cons.x_sets:
        out["x_sets"] = {name: list(v) for name, v in cons.x_sets.items()}
    if cons.case4 is not None:
        c4 = cons.case4
        out["case4"] = {
            "nbar": c4.nbar,
            "rprime": list(c4.rprime),
            "t": c4.t,
            "c_roots": list(c4.c_roots),
            "p_roots": list(c4.p_roots),
            "c_coeffs": _coeffs(vanishing_poly(c4.c_roots, f), power),
            "p_coeffs": _coeffs(vanishing_poly(c4.p_roots, f), power),
            "J": [list(Ji) for Ji in c4.J],
        }
    return out


def _coeffs(poly, power: bool):
    return [poly.field.format(c, power) if power else c for c in poly.coeffs]


def load_bundle(data: dict) -> Construction:
    """Rebuild a Construction from bundle JSON without recomputing T or G.

    Tampered T/G values survive loading so that ``verify`` can flag them.
    """
    try:
        top, _ = load_topology(data["topology"])
        f = _field_from(data["field"], top.N)
        code = RSCode(f, int(data["N"]), int(data["z"]))
        case = data["case"]
        perm = tuple(data.get("source_perm", (1, 2, 3)))
        T = Matrix(f, [[f.parse(v) for v in row] for row in data["T"]], code.k)
        G = Matrix(f, [[f.parse(v) for v in row] for row in data["G"]], code.N)
        row_owner = tuple(int(o) for o in data["row_owner"])
        column_order = tuple(int(c) for c in data["column_order"])
        pivots = data.get("row_pivots") or [None] * len(row_owner)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed code bundle: {exc}") from exc
    if top.N != code.N or top.z != code.z:
        raise FormatError("bundle topology disagrees with N/z")
    if case not in BLOCK_ORDER:
        raise FormatError(f"unknown case label {case!r}")
    plan = make_plan(case, perm, pad_sources(top))
    if plan.column_order != column_order:
        raise FormatError("bundle column_order disagrees with its case and source permutation")
    if len(row_owner) != T.nrows or G.nrows != T.nrows:
        raise FormatError("row_owner, T and G have different row counts")
    if len(pivots) != len(row_owner):
        raise FormatError("row_pivots and row_owner have different lengths")
    rows = tuple(RowPlan(o, (), pivot=p) for o, p in zip(row_owner, pivots))
    return Construction(top, code, plan, T, G, row_owner, rows)


def load_messages(data: dict, f: GF) -> list[list[int]]:
    try:
        msgs = data["messages"]
        return [[f.parse(v) for v in block] for block in msgs]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"message file needs 'messages': list of lists: {exc}") from exc


def parse_word(text: str, f: GF) -> list[int]:
    return [f.parse(tok) for tok in text.split()]


def format_word(word, f: GF, power: bool = False) -> str:
    return " ".join(f.format(v, power) for v in word)


def parse_error_spec(spec: str | None, f: GF) -> list[tuple[int, int]]:
    """Parse ``"pos:value,pos:value"`` (1-based canonical positions)."""
    if not spec:
        return []
    out = []
    for item in spec.split(","):
        try:
            pos, value = item.split(":")
            out.append((int(pos), f.parse(value)))
        except ValueError as exc:
            raise FormatError(f"bad error spec item {item!r}; expected pos:value") from exc
    return out


__all__ = [
    "FormatError",
    "TopologyError",
    "bundle_to_json",
    "dump_json",
    "load_bundle",
    "load_messages",
    "load_topology",
    "parse_error_spec",
    "parse_word",
    "read_json",
    "topology_to_json",
    "write_json",
]
