"""Acceptance criteria; each test records one PASS/FAIL line for the summary."""

import itertools
import json
import os
import random
import time
from pathlib import Path

import pytest

from drscode.cli import main
from drscode.codec import corrupt, decode, encode_all, random_messages
from drscode.construct import build, shifted_p_matrix, verify
from drscode.errors import DRSError, DecodeFailure
from drscode.gf import field
from drscode.linalg import Matrix, rank
from drscode.poly import Polynomial, count_nonzero_coeffs, mul_poly, vanishing_poly
from drscode.rs import RSCode, rs_decode_bruteforce, rs_decode_bw, rs_encode
from drscode.sman import SmanTopology, cut_capacity, in_capacity_region, nonempty_subsets

from conftest import ACCEPTANCE_LINES, EXAMPLE_ADJACENCY

GOLDEN = Path(__file__).parent / "golden"
ARTIFACT_DIR = Path(os.environ.get("DRSCODE_ARTIFACT_DIR", Path(__file__).parent.parent / "acceptance_artifacts"))

SWEEP_TOPOLOGIES = 60
SWEEP_CAP = 2000
SWEEP_SEED = 20240601

EXAMPLE_V = [
    ["a", "a^4", "1", "a^2", "1"],
    ["a", "a^2", "a^4", "a^3", "a^3"],
    ["a", "0", "1", "a^3", "a^6"],
    ["a", "a^6", "a^5", "a", "a^5"],
]
EXAMPLE_T = [["a^5", "a", "a^6", "0", "0"]] + EXAMPLE_V
EXAMPLE_G = [
    ["1", "a^5", "a^4", "1", "a^4", "0", "0"],
    ["0", "1", "a^5", "a^5", "a^3", "0", "0"],
    ["0", "a^2", "a^3", "a^6", "0", "0", "0"],
    ["0", "1", "a^4", "0", "0", "0", "a^6"],
    ["0", "0", "0", "0", "a^2", "a^3", "a^6"],
]


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def power(m: Matrix):
    return [[m.field.format(v, True) for v in row] for row in m.rows]


def test_criterion_1_golden_example():
    start = time.perf_counter()
    f = field(3, 0b1011)
    cons = build(SmanTopology((3, 1, 1), 1, EXAMPLE_ADJACENCY), f)
    c4 = cons.case4
    mismatches = []
    if cons.case != "Case4":
        mismatches.append(f"case {cons.case}")
    if vanishing_poly(c4.c_roots, f) != Polynomial(f, [f.alpha, 1]):
        mismatches.append("c(x)")
    if vanishing_poly(c4.p_roots, f) != vanishing_poly([6, 7, 8], f) or c4.p_roots != (6, 7, 8):
        mismatches.append("p(x)")
    if c4.J != ((0, 1), (2,), (4,)):
        mismatches.append(f"J {c4.J}")
    n_s = cons.T.nrows - c4.Rprime
    if power(cons.T)[n_s:] != EXAMPLE_V:
        mismatches.append("V")
    if power(cons.T) != EXAMPLE_T:
        mismatches.append("T")
    if power(cons.G) != EXAMPLE_G:
        mismatches.append("G")
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 1.0
    detail = f"{elapsed:.3f}s; " + ("c, p, J, V, T, G exact" if not mismatches else "mismatch: " + ", ".join(mismatches))
    record(1, "golden example reproduction", ok, detail)


def test_criterion_2_example_single_errors(example_code):
    start = time.perf_counter()
    rng = random.Random(2)
    trials = bad = 0
    for _ in range(200):
        msgs = random_messages(example_code, rng)
        c = encode_all(example_code, msgs)
        for pos in range(1, 8):
            for val in range(1, 8):
                trials += 1
                try:
                    bad += decode(example_code, corrupt(c, [(pos, val)])) != msgs
                except DecodeFailure:
                    bad += 1
    elapsed = time.perf_counter() - start
    ok = trials == 200 * 49 and bad == 0 and elapsed < 10.0
    record(2, "example-code single-error correction", ok, f"{trials - bad}/{trials} recovered in {elapsed:.2f}s")


def _random_topology(rng: random.Random):
    """Random three-source topology and z with at least one usable rate vector."""
    while True:
        N = rng.randint(4, 12)
        z = rng.choice((1, 2))
        if N - 2 * z < 1:
            continue
        cols = [rng.randint(1, 7) for _ in range(N)]
        adjacency = [[(c >> i) & 1 for c in cols] for i in range(3)]
        if not all(any(row) for row in adjacency):
            continue
        base = SmanTopology((0, 0, 0), z, adjacency)
        bounds = [cut_capacity(base, (i,)) - 2 * z for i in (1, 2, 3)]
        if max(bounds) >= 1:
            return base, bounds


def _rate_vectors(base, bounds, rng):
    vectors = []
    for rates in itertools.product(*(range(b + 1) for b in (max(x, 0) for x in bounds))):
        if sum(rates) >= 1 and in_capacity_region(base.with_rates(rates))[0]:
            vectors.append(rates)
    if len(vectors) > SWEEP_CAP:
        vectors = sorted(rng.sample(vectors, SWEEP_CAP))
    return vectors


@pytest.fixture(scope="module")
def capacity_sweep():
    rng = random.Random(SWEEP_SEED)
    results = {"topologies": 0, "instances": 0, "failures": [], "case4": [], "cases": {}}
    while results["topologies"] < SWEEP_TOPOLOGIES:
        base, bounds = _random_topology(rng)
        vectors = _rate_vectors(base, bounds, rng)
        if not vectors:
            continue
        results["topologies"] += 1
        for rates in vectors:
            top = base.with_rates(rates)
            results["instances"] += 1
            try:
                cons = build(top)
                report = verify(cons)
                failed = report.failed()
            except DRSError as exc:
                cons, failed = None, [f"{type(exc).__name__}: {exc}"]
            if failed:
                results["failures"].append(
                    {"z": top.z, "rates": list(rates), "adjacency": [list(r) for r in top.adjacency], "failed": failed}
                )
                continue
            results["cases"][cons.case] = results["cases"].get(cons.case, 0) + 1
            if cons.case == "Case4":
                results["case4"].append(cons)
    if results["failures"]:
        ARTIFACT_DIR.mkdir(parents=True, exist_ok=True)
        (ARTIFACT_DIR / "capacity_sweep_counterexamples.json").write_text(
            json.dumps(results["failures"], indent=2)
        )
    return results


def test_criterion_3_capacity_region_sweep(capacity_sweep):
    s = capacity_sweep
    n_fail = len(s["failures"])
    ok = s["topologies"] >= 50 and n_fail == 0
    cases = ", ".join(f"{k} {v}" for k, v in sorted(s["cases"].items()))
    detail = f"{s['topologies']} topologies, {s['instances'] - n_fail}/{s['instances']} verified; {cases}"
    if n_fail:
        detail += f"; counterexamples in {ARTIFACT_DIR / 'capacity_sweep_counterexamples.json'}"
    record(3, "capacity-region sweep", ok, detail)


def _outcome(fn, code, y):
    try:
        return fn(code, y)
    except DecodeFailure:
        return None


def test_criterion_4_decoder_oracle_equivalence():
    f = field(3, 0b1011)
    rng = random.Random(4)
    parts = []
    ok = True
    for z in (1, 2):
        code = RSCode(f, 7, z)
        agree = decodable = 0
        for i in range(1000):
            if i % 2:
                y = [rng.randrange(8) for _ in range(7)]
            else:
                y = rs_encode(code, [rng.randrange(8) for _ in range(code.k)])
                for pos in rng.sample(range(7), rng.randint(0, z + 2)):
                    y[pos] ^= rng.randrange(1, 8)
            bw, bf = _outcome(rs_decode_bw, code, y), _outcome(rs_decode_bruteforce, code, y)
            agree += bw == bf
            decodable += bf is not None
        ok &= agree == 1000
        parts.append(f"[7,{code.k},{code.d}] {agree}/1000 agree, {decodable} decodable")
    record(4, "Berlekamp-Welch vs brute force", ok, "; ".join(parts))


def test_criterion_5_bch_bound():
    rng = random.Random(5)
    held = 0
    for _ in range(500):
        f = field(rng.randint(2, 8))
        t = rng.randint(1, f.order - 1)
        start = rng.randrange(f.order)
        extra = rng.randint(0, f.order - 1 - t)
        mult = [rng.randrange(f.q) for _ in range(extra)] + [rng.randrange(1, f.q)]
        p = mul_poly(vanishing_poly(range(start, start + t), f), Polynomial(f, mult))
        held += count_nonzero_coeffs(p) >= t + 1
    record(5, "BCH bound on cyclically consecutive roots", held == 500, f"{held}/500 instances")


def test_criterion_6_case4_structure(capacity_sweep, example_code):
    instances = capacity_sweep["case4"] + [example_code]
    good = 0
    for cons in instances:
        c4 = cons.case4
        flat = [j for J in c4.J for j in J]
        disjoint = len(flat) == len(set(flat))
        P = shifted_p_matrix(cons)
        rp = c4.Rprime
        full = rank(Matrix(P.field, [row[:rp] for row in P.rows], rp)) == rp
        good += disjoint and full
    sweep_count = len(capacity_sweep["case4"])
    ok = good == len(instances) and sweep_count >= 1
    record(6, "Case-4 J-sets and shifted-p rank", ok, f"{good}/{len(instances)} ({sweep_count} from the sweep plus the example)")


def test_criterion_7_determinism(tmp_path, capsys):
    topology = GOLDEN / "example_topology.json"
    outputs = {}
    for run in (1, 2):
        bundle = tmp_path / f"bundle{run}.json"
        checks = tmp_path / f"verify{run}.txt"
        sim = tmp_path / f"simulate{run}.json"
        codes = (
            main(["construct", str(topology), "-o", str(bundle)]),
            main(["verify", str(bundle), "--seed", "7", "-o", str(checks)]),
            main(["simulate", str(bundle), "--trials", "100", "--seed", "7", "-o", str(sim)]),
        )
        capsys.readouterr()
        outputs[run] = (codes, bundle.read_bytes(), checks.read_bytes(), sim.read_bytes())
    ok = outputs[1] == outputs[2] and outputs[1][0] == (0, 0, 0)
    record(7, "byte-identical reruns", ok, "construct, verify and simulate with fixed seeds")
