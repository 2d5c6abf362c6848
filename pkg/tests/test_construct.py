from dataclasses import replace

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from drscode.construct import (
    _case123_layout,
    build,
    build_case123,
    candidate_plans,
    classify,
    is_row_echelon_up_to_columns,
    make_plan,
    mask_violations,
    shifted_p_matrix,
    verify,
)
from drscode.errors import ConstructionError, NotInCapacityRegion
from drscode.gf import field
from drscode.linalg import Matrix, mat_mul, rank
from drscode.poly import Polynomial, roots_as_powers, vanishing_poly
from drscode.sman import SmanTopology, in_capacity_region, permute_sources

from conftest import EXAMPLE_ADJACENCY

EXAMPLE_T = [
    ["a^5", "a", "a^6", "0", "0"],
    ["a", "a^4", "1", "a^2", "1"],
    ["a", "a^2", "a^4", "a^3", "a^3"],
    ["a", "0", "1", "a^3", "a^6"],
    ["a", "a^6", "a^5", "a", "a^5"],
]
# Columns follow the relay order 1, 6, 7, 4, 5, 2, 3.
EXAMPLE_G = [
    ["1", "a^5", "a^4", "1", "a^4", "0", "0"],
    ["0", "1", "a^5", "a^5", "a^3", "0", "0"],
    ["0", "a^2", "a^3", "a^6", "0", "0", "0"],
    ["0", "1", "a^4", "0", "0", "0", "a^6"],
    ["0", "0", "0", "0", "a^2", "a^3", "a^6"],
]


def power(m: Matrix):
    return [[m.field.format(v, True) for v in row] for row in m.rows]


def topology_from_blocks(blocks, rates, z):
    """Relays listed block by block; each block is the tuple of sources it hears."""
    return SmanTopology(rates, z, [[int(i in b) for b in blocks] for i in (1, 2, 3)])


# -- worked example ---------------------------------------------------------


def test_example_is_case4(example_code):
    assert example_code.case == "Case4"
    assert example_code.column_order == (1, 6, 7, 4, 5, 2, 3)
    assert example_code.row_owner == (1, 1, 1, 2, 3)


def test_example_case4_parameters(example_code, gf8):
    c4 = example_code.case4
    assert c4.c_roots == (1,)
    assert vanishing_poly(c4.c_roots, gf8).coeffs == (2, 1)  # x - a
    assert c4.p_roots == (6, 7, 8)
    assert c4.J == ((0, 1), (2,), (4,))


def test_example_t_and_g_match_reference_matrices(example_code):
    assert power(example_code.T) == EXAMPLE_T
    assert power(example_code.G) == EXAMPLE_G


def test_example_g_is_t_times_rs_generator(example_code, gf8):
    T = Matrix(gf8, [[gf8.parse(v) for v in r] for r in EXAMPLE_T])
    assert power(mat_mul(T, example_code.code.G)) == EXAMPLE_G


def test_example_verify_passes(example_code):
    report = verify(example_code)
    assert report.ok, report.checks
    assert rank(example_code.G) == 5


# -- classification -----------------------------------------------------------


def test_example_unit_rates_is_case1_identity():
    plan = classify(SmanTopology((1, 1, 1), 1, EXAMPLE_ADJACENCY))
    assert (plan.case, plan.source_perm) == ("Case1", (1, 2, 3))


def test_zero_rates_is_case1_with_empty_code():
    top = SmanTopology((0, 0, 0), 1, EXAMPLE_ADJACENCY)
    assert classify(top).case == "Case1"
    cons = build(top)
    assert cons.G.nrows == 0
    assert verify(cons).ok


def test_outside_region_rejected():
    with pytest.raises(NotInCapacityRegion, match="S1"):
        build(SmanTopology((4, 1, 1), 1, EXAMPLE_ADJACENCY))


def test_case1_unit_rates_echelon(gf8):
    cons = build(SmanTopology((1, 1, 1), 1, EXAMPLE_ADJACENCY), gf8)
    assert is_row_echelon_up_to_columns(cons)
    assert rank(cons.G) == 3
    for r, rp in enumerate(cons.rows):
        assert cons.G[r, rp.pivot - 1] == 1


CASE3_BLOCKS = [(1,), (1, 3), (2,), (1, 2), (2, 3), (3,), (1, 2, 3), (1, 2, 3)]


def test_case3_x_sets_with_forced_plan():
    top = topology_from_blocks(CASE3_BLOCKS, (2, 3, 1), 1)
    plan = make_plan("Case3", (1, 2, 3), top)
    cons = build_case123(top, plan, field(4))
    sizes = {name: len(v) for name, v in cons.x_sets.items()}
    assert sizes == {"X1_13": 1, "X1_123": 0, "X2_23": 1, "X2_123": 0}
    assert cons.x_sets["X1_13"] == (2,)  # lowest free position of N_13
    assert cons.x_sets["X2_23"] == (5,)
    assert verify(cons).ok
    assert rank(cons.G) == 6


def test_case3_block_layout_rates_221_builds_rank5():
    top = topology_from_blocks(CASE3_BLOCKS, (2, 2, 1), 1)
    cons = build(top)
    assert rank(cons.G) == 5
    assert verify(cons).ok


def test_case3_first_permutation_infeasible_falls_through():
    blocks = [(1, 2)] * 4 + [(1, 3)] + [(2, 3)] * 7 + [(1, 2, 3)]
    top = topology_from_blocks(blocks, (3, 5, 1), 1)
    first = candidate_plans(top)[0]
    assert (first.case, first.source_perm) == ("Case3", (1, 2, 3))
    with pytest.raises(ConstructionError, match="pivots"):
        _case123_layout(first, permute_sources(top, first.source_perm).rates, top.N - 2)
    cons = build(top)
    assert cons.plan.source_perm != (1, 2, 3)
    assert verify(cons).ok


# -- verification catches damage ------------------------------------------------


def _with(cons, **changes):
    return replace(cons, **changes)


def test_verify_flags_perturbed_t(example_code, gf8):
    rows = [list(r) for r in example_code.T.rows]
    rows[3][0] ^= 1
    T = Matrix(gf8, rows, 5)
    report = verify(_with(example_code, T=T))
    assert "product" in report.failed()
    report = verify(_with(example_code, T=T, G=mat_mul(T, example_code.code.G)))
    assert "mask" in report.failed()


def test_verify_flags_perturbed_g(example_code, gf8):
    rows = [list(r) for r in example_code.G.rows]
    rows[0][6] = 3  # required zero: relay 3 is not fed by source 1
    report = verify(_with(example_code, G=Matrix(gf8, rows, 7)))
    assert {"product", "mask", "subcode"} <= set(report.failed())
    assert mask_violations(_with(example_code, G=Matrix(gf8, rows, 7))) == [(0, 6)]


def test_shifted_p_matrix_rank_example(example_code):
    P = shifted_p_matrix(example_code)
    rp = example_code.case4.Rprime
    assert rp == 4
    assert rank(Matrix(P.field, [row[:rp] for row in P.rows], rp)) == rp
    shifts = [j for J in example_code.case4.J for j in J]
    for j, row in zip(shifts, P.rows):
        # p(a^j x) vanishes at a^(e - j) for every root a^e of p
        assert roots_as_powers(Polynomial(P.field, row)) == sorted((e - j) % 7 for e in (6, 7, 8))


# -- property: every in-region rate vector builds and verifies --------------------

blocks_strategy = st.lists(
    st.sampled_from([(1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]), min_size=4, max_size=10
)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(blocks_strategy, st.lists(st.integers(0, 8), min_size=3, max_size=3), st.integers(0, 2))
def test_build_verifies_inside_region(blocks, rates, z):
    top = topology_from_blocks(blocks, rates, z)
    if top.N - 2 * z < 1 or not in_capacity_region(top)[0]:
        return
    cons = build(top)
    report = verify(cons)
    assert report.ok, report.checks
    if cons.case != "Case4":
        assert is_row_echelon_up_to_columns(cons)
    if cons.x_sets:
        n123 = cons.plan.n(1, 2, 3)
        assert len(cons.x_sets["X1_123"]) + len(cons.x_sets["X2_123"]) <= n123
