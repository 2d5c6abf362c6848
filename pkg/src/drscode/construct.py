"""Distributed Reed-Solomon code construction for three-source SMANs.

Given a topology with a rate vector in the capacity region, find T with
G = T @ G_RS such that the rows owned by source i vanish at every relay that
source i does not feed. Sources are first permuted so the instance falls
under one of four cases; relays are then laid out in a case-specific
canonical block order, and each row of T is the coefficient vector of a
polynomial whose roots (as exponents of alpha) are canonical positions.

Cases 1-3 put G in row echelon form up to column permutation: row j of
source i is 1 at its pivot position and vanishes on Z_i, on the other
pivots of source i, and on the pivots of earlier sources that source i can
reach. Case 4 stacks identity rows S over rows c(x) p(alpha^j x) built from
one shifted root window.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import permutations
from typing import Optional

from . import errors
from .gf import GF, smallest_field_for
from .linalg import Matrix, mat_mul, rank
from .poly import coeff_vector, mul_poly, normalize_at, scale_arg, vanishing_poly
from .rs import RSCode, interpolation_degree
from .sman import (
    PartitionSets,
    SmanTopology,
    in_capacity_region,
    pad_sources,
    partition,
    permute_sources,
)

CASES = ("Case1", "Case2", "Case3", "Case4")

# Canonical block orders, keyed by canonical (permuted) source subsets.
BLOCK_ORDER = {
    "Case1": ((1,), (2,), (1, 2), (2, 3), (1, 2, 3), (3,), (1, 3)),
    "Case2": ((1,), (2,), (1, 2), (2, 3), (1, 2, 3), (3,), (1, 3)),
    "Case3": ((1,), (1, 3), (2,), (1, 2), (2, 3), (3,), (1, 2, 3)),
    "Case4": ((1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)),
}


@dataclass(frozen=True)
class CasePlan:
    """Case label plus the source and relay permutations that realise it.

    ``source_perm[k-1]`` is the original source playing canonical source k;
    ``column_order[p-1]`` is the original relay at canonical position p.
    """

    case: str
    source_perm: tuple[int, ...]
    column_order: tuple[int, ...]
    block_sizes: tuple[tuple[tuple[int, ...], int], ...]

    def n(self, *sources: int) -> int:
        return dict(self.block_sizes).get(tuple(sorted(sources)), 0)

    def positions(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        """Canonical positions of each canonical block."""
        out, start = {}, 1
        for subset, size in self.block_sizes:
            out[subset] = tuple(range(start, start + size))
            start += size
        return out


@dataclass(frozen=True)
class RowPlan:
    owner: int  # original source number
    root_set: tuple[int, ...]
    pivot: Optional[int] = None
    shift: Optional[int] = None


@dataclass(frozen=True)
class CaseFourPlan:
    nbar: int
    rprime: tuple[int, int, int]
    t: int
    c_roots: tuple[int, ...]
    p_roots: tuple[int, ...]
    J: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    @property
    def Rprime(self) -> int:
        return sum(self.rprime)


@dataclass(frozen=True, eq=False)
class Construction:
    topology: SmanTopology
    code: RSCode
    plan: CasePlan
    T: Matrix
    G: Matrix
    row_owner: tuple[int, ...]
    rows: tuple[RowPlan, ...] = ()
    x_sets: dict = dc_field(default_factory=dict)
    case4: Optional[CaseFourPlan] = None

    @property
    def case(self) -> str:
        return self.plan.case

    @property
    def column_order(self) -> tuple[int, ...]:
        return self.plan.column_order

    @property
    def R(self) -> int:
        return self.T.nrows


# -- classification -----------------------------------------------------------


def _case_of(rates, parts: PartitionSets) -> Optional[str]:
    r1, r2 = rates[0], rates[1]
    first = r1 <= parts.n(1)
    second = r2 <= parts.n(2) + parts.n(1, 2)
    if first:
        return "Case1" if second else "Case2"
    if not second:
        return "Case3"
    return None


def _case4_holds(rates, parts: PartitionSets) -> bool:
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i != j:
                ni = parts.n(i)
                if not (rates[i - 1] > ni and rates[i - 1] <= ni + parts.n(i, j)):
                    return False
    return True


def make_plan(case: str, perm: tuple[int, ...], top: SmanTopology) -> CasePlan:
    parts = partition(top)
    order, sizes = [], []
    for subset in BLOCK_ORDER[case]:
        original = tuple(sorted(perm[k - 1] for k in subset))
        block = parts.block(*original)
        order.extend(block)
        sizes.append((subset, len(block)))
    return CasePlan(case, perm, tuple(order), tuple(sizes))


def candidate_plans(top: SmanTopology) -> list[CasePlan]:
    """Every (case, permutation) whose case conditions hold, in priority order."""
    padded = pad_sources(top)
    found = {case: [] for case in CASES}
    for perm in permutations((1, 2, 3)):
        permuted = permute_sources(padded, perm)
        case = _case_of(permuted.rates, partition(permuted))
        if case is not None:
            found[case].append(perm)
    plans = [make_plan(case, perm, padded) for case in CASES[:3] for perm in found[case]]
    if not plans and _case4_holds(padded.rates, partition(padded)):
        plans.append(make_plan("Case4", (1, 2, 3), padded))
    return plans


def classify(top: SmanTopology) -> CasePlan:
    """Pick the case and permutations.

    Case priority is 1 > 2 > 3 > 4 and permutations are tried in
    lexicographic order. A Case-3 permutation whose pivot bookkeeping does
    not fit (source 1 may run out of columns outside N_12) is skipped in
    favour of the next one.
    """
    ok, violated = in_capacity_region(top)
    if not ok:
        raise errors.NotInCapacityRegion(violated)
    plans = candidate_plans(top)
    if not plans:
        raise errors.CaseClassificationFailure(
            f"rates {top.rates} fit none of the four cases under any source permutation"
        )
    k = top.N - 2 * top.z
    padded = pad_sources(top)
    reasons = []
    for plan in plans:
        if plan.case == "Case4":
            return plan
        try:
            _case123_layout(plan, permute_sources(padded, plan.source_perm).rates, k)
        except errors.ConstructionError as exc:
            reasons.append(f"{plan.case} {plan.source_perm}: {exc}")
            continue
        return plan
    raise errors.CaseClassificationFailure(
        f"rates {top.rates}: no case/permutation admits a valid pivot layout ({'; '.join(reasons)})"
    )


# -- construction -------------------------------------------------------------


def _canonical_zsets(plan: CasePlan) -> dict[int, set[int]]:
    pos = plan.positions()
    return {
        i: {p for subset, ps in pos.items() if i not in subset for p in ps}
        for i in (1, 2, 3)
    }


def _row_poly(field: GF, roots, pivot: int, k: int) -> list[int]:
    if len(roots) > k - 1:
        raise errors.DegreeBoundViolation(
            f"{len(roots)} roots exceed the degree bound k - 1 = {k - 1}"
        )
    return coeff_vector(normalize_at(vanishing_poly(roots, field), pivot), k)


def _assemble(top, code, plan, T_rows, row_plans, **extra) -> Construction:
    f = code.field
    T = Matrix(f, T_rows, code.k)
    G = mat_mul(T, code.G)
    return Construction(
        topology=top,
        code=code,
        plan=plan,
        T=T,
        G=G,
        row_owner=tuple(rp.owner for rp in row_plans),
        rows=tuple(row_plans),
        **extra,
    )


def _case123_layout(plan: CasePlan, rates, k: int):
    """Pivots and root sets for Cases 1-3, as (canonical source, pivot, roots) triples.

    Source i takes its pivots as the first r_i canonical positions it can
    reach, skipping the pivots of earlier sources (and, in Case 3, N_12 for
    source 1); its rows must also vanish on those earlier pivots.
    """
    pos = plan.positions()
    zsets = _canonical_zsets(plan)
    N = sum(size for _, size in plan.block_sizes)
    pivots: dict[int, list[int]] = {}
    layout = []
    for i in (1, 2, 3):
        extra = {p for prev in pivots.values() for p in prev if p not in zsets[i]}
        skip = set(extra)
        if plan.case == "Case3" and i == 1:
            skip |= set(pos[(1, 2)])
        candidates = [p for p in range(1, N + 1) if p not in zsets[i] and p not in skip]
        if rates[i - 1] > len(candidates):
            raise errors.ConstructionError(
                f"{plan.case}: canonical source {i} needs {rates[i - 1]} pivots, "
                f"only {len(candidates)} available"
            )
        chosen = candidates[: rates[i - 1]]
        pivots[i] = chosen
        base = zsets[i] | extra
        for pivot in chosen:
            roots = tuple(sorted(base | (set(chosen) - {pivot})))
            if len(roots) > k - 1:
                raise errors.DegreeBoundViolation(
                    f"{plan.case}: {len(roots)} roots exceed the degree bound k - 1 = {k - 1}"
                )
            layout.append((i, pivot, roots))
    return layout, pivots


def build_case123(top: SmanTopology, plan: CasePlan, field: GF) -> Construction:
    if plan.case not in ("Case1", "Case2", "Case3"):
        raise ValueError(f"build_case123 cannot handle {plan.case}")
    rates = permute_sources(pad_sources(top), plan.source_perm).rates
    code = RSCode(field, top.N, top.z)
    layout, pivots = _case123_layout(plan, rates, code.k)
    T_rows, row_plans = [], []
    for i, pivot, roots in layout:
        T_rows.append(_row_poly(field, roots, pivot, code.k))
        row_plans.append(RowPlan(plan.source_perm[i - 1], roots, pivot=pivot))
    x_sets = {}
    if plan.case in ("Case2", "Case3"):
        x_sets = _x_record(plan, pivots)
        _check_x_sizes(plan, rates, x_sets)
    return _assemble(top, code, plan, T_rows, row_plans, x_sets=x_sets)


def _x_record(plan: CasePlan, pivots) -> dict[str, tuple[int, ...]]:
    pos = plan.positions()

    def used(i, subset):
        return tuple(p for p in pivots[i] if p in pos[subset])

    return {
        "X1_13": used(1, (1, 3)),
        "X1_123": used(1, (1, 2, 3)),
        "X2_23": used(2, (2, 3)),
        "X2_123": used(2, (1, 2, 3)),
    }


def _check_x_sizes(plan: CasePlan, rates, x) -> None:
    n = plan.n
    r1, r2 = rates[0], rates[1]
    excess1 = max(0, r1 - n(1))
    excess2 = max(0, r2 - (n(2) + n(1, 2)))
    expected = {
        "X1_13": min(n(1, 3), excess1),
        "X2_23": min(n(2, 3), excess2),
    }
    expected["X1_123"] = excess1 - expected["X1_13"]
    expected["X2_123"] = excess2 - expected["X2_23"]
    if plan.case == "Case2":
        # Source 1 pivots stay inside N_1.
        expected["X1_13"] = expected["X1_123"] = 0
    for name, size in expected.items():
        if len(x[name]) != size:
            raise errors.ConstructionError(
                f"{plan.case}: |{name}| = {len(x[name])}, expected {size}"
            )
    if len(x["X1_123"]) + len(x["X2_123"]) > n(1, 2, 3):
        raise errors.ConstructionError(f"{plan.case}: X sets overflow N_123")


def case4_plan(plan: CasePlan, rates, k: int) -> CaseFourPlan:
    n = plan.n
    nbar = n(1) + n(2) + n(3)
    rprime = tuple(rates[i - 1] - n(i) for i in (1, 2, 3))
    t = k - nbar - 1
    n12, n13 = n(1, 2), n(1, 3)
    p_roots = tuple(range(n12 + n13 + nbar + 1, n12 + n13 + k))
    J = (
        tuple(range(0, rprime[0])),
        tuple(range(n13, n13 + rprime[1])),
        tuple(range(n13 + n12, n13 + n12 + rprime[2])),
    )
    return CaseFourPlan(nbar, rprime, t, tuple(range(1, nbar + 1)), p_roots, J)


def build_case4(top: SmanTopology, plan: CasePlan, field: GF) -> Construction:
    if plan.case != "Case4":
        raise ValueError(f"build_case4 cannot handle {plan.case}")
    rates = permute_sources(pad_sources(top), plan.source_perm).rates
    code = RSCode(field, top.N, top.z)
    k = code.k
    c4 = case4_plan(plan, rates, k)
    if len(c4.p_roots) != c4.t or c4.t < 0:
        raise errors.DegreeBoundViolation(f"Case4: |P| = {len(c4.p_roots)} but t = {c4.t}")
    flat = [j for Ji in c4.J for j in Ji]
    if len(set(flat)) != len(flat):
        raise errors.ConstructionError(f"Case4: shift sets overlap: {c4.J}")
    if c4.Rprime > c4.t + 1:
        raise errors.RankDeficient(f"Case4: R' = {c4.Rprime} exceeds t + 1 = {c4.t + 1}")

    pos = plan.positions()
    zsets = _canonical_zsets(plan)
    T_rows, row_plans = [], []
    for i in (1, 2, 3):
        own = pos[(i,)]
        for pivot in own:
            roots = tuple(sorted(zsets[i] | (set(own) - {pivot})))
            T_rows.append(_row_poly(field, roots, pivot, k))
            row_plans.append(RowPlan(plan.source_perm[i - 1], roots, pivot=pivot))

    c = vanishing_poly(c4.c_roots, field)
    p = vanishing_poly(c4.p_roots, field)
    for i in (1, 2, 3):
        for j in c4.J[i - 1]:
            v = mul_poly(c, scale_arg(p, field.exp(j)))
            if v.degree != k - 1:
                raise errors.DegreeBoundViolation(f"Case4: v-row degree {v.degree} != k - 1")
            roots = c4.c_roots + tuple(e - j for e in c4.p_roots)
            T_rows.append(coeff_vector(v, k))
            row_plans.append(RowPlan(plan.source_perm[i - 1], roots, shift=j))
    return _assemble(top, code, plan, T_rows, row_plans, case4=c4)


def shifted_p_matrix(cons: Construction) -> Matrix:
    """Coefficient rows of p(alpha^j x) for every shift j, in J_1, J_2, J_3 order."""
    c4 = cons.case4
    f = cons.code.field
    p = vanishing_poly(c4.p_roots, f)
    rows = [coeff_vector(scale_arg(p, f.exp(j)), c4.t + 1) for Ji in c4.J for j in Ji]
    return Matrix(f, rows, c4.t + 1)


# -- verification -------------------------------------------------------------


@dataclass
class VerifyReport:
    checks: list = dc_field(default_factory=list)  # (name, passed, detail)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append((name, bool(passed), detail))

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def failed(self) -> list[str]:
        return [name for name, passed, _ in self.checks if not passed]

    def as_dict(self) -> dict:
        return {name: {"pass": passed, "detail": detail} for name, passed, detail in self.checks}


def mask_violations(cons: Construction) -> list[tuple[int, int]]:
    """(row, canonical column) pairs, 0-based, that must be zero but are not."""
    top = cons.topology
    bad = []
    for r, (owner, row) in enumerate(zip(cons.row_owner, cons.G.rows)):
        adj = top.adjacency[owner - 1]
        for p, relay in enumerate(cons.column_order):
            if not adj[relay - 1] and row[p]:
                bad.append((r, p))
    return bad


def verify(cons: Construction) -> VerifyReport:
    code = cons.code
    report = VerifyReport()
    R = cons.topology.total_rate

    expected_G = mat_mul(cons.T, code.G) if cons.T.nrows else Matrix.zeros(code.field, 0, code.N)
    report.add("product", cons.G == expected_G, "G == T @ G_RS")

    bad = mask_violations(cons)
    report.add("mask", not bad, f"{len(bad)} required zeros violated" if bad else "all required zeros hold")

    rG, rT = rank(cons.G), rank(cons.T)
    report.add("rank", rG == R and rT == R and cons.G.nrows == R, f"rank(G) = {rG}, rank(T) = {rT}, R = {R}")

    degrees = [interpolation_degree(code, row) for row in cons.G.rows]
    report.add(
        "subcode",
        all(d < code.k for d in degrees),
        f"max row interpolation degree {max(degrees, default=-1)} (k = {code.k})",
    )

    weights = [sum(1 for v in row if v) for row in cons.G.rows]
    light = [w for w in weights if 0 < w < code.d]
    report.add("weight", not light, f"min row weight {min(weights, default=0)} (need >= {code.d})")
    return report


def is_row_echelon_up_to_columns(cons: Construction) -> bool:
    """Each row's pivot is 1 and every other row owned at or after it is zero there.

    Reordering columns to follow the pivots then yields a unit upper
    triangular leading block.
    """
    for r, rp in enumerate(cons.rows):
        col = rp.pivot - 1
        if cons.G.rows[r][col] != 1:
            return False
        if any(cons.G.rows[s][col] for s in range(r + 1, cons.G.nrows)):
            return False
    return True


def build(top: SmanTopology, field: GF | None = None) -> Construction:
    """Classify, construct, and verify; any failed check raises."""
    if field is None:
        field = smallest_field_for(top.N)
    plan = classify(top)
    if plan.case == "Case4":
        cons = build_case4(top, plan, field)
    else:
        cons = build_case123(top, plan, field)
    report = verify(cons)
    if not report.ok:
        failed = report.failed()
        detail = "; ".join(f"{n}: {d}" for n, p, d in report.checks if not p)
        if "mask" in failed:
            raise errors.MaskViolation(detail)
        if "rank" in failed:
            raise errors.RankDeficient(detail)
        raise errors.ConstructionError(detail)
    return cons
