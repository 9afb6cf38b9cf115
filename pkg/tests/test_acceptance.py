"""Acceptance criteria, one test per criterion.

Each criterion is a function returning (ok, detail) so that the same code
runs under pytest and as a script (``python3 tests/test_acceptance.py``).
Every test prints one PASS/FAIL line.
"""
import json
import math
import os
import sys
import time

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

import _independent as ind  # noqa: E402
from bundlelift import _kernels  # noqa: E402
from bundlelift.diagrams import (  # noqa: E402
    Cp2So3LiftDiagram,
    FixedPointDiagram,
    RepDecomposition,
    Su2Irrep,
    cp2_so3_invariants,
    fixed_point_invariants,
    m_value,
)
from bundlelift.invariants import (  # noqa: E402
    INFINITE,
    BundleInvariants,
    ChernData,
    discriminant,
    pair_from_so4,
    so4_from_chern,
    so4_from_pair,
    stabilize,
    table_a,
    validate,
)
from bundlelift.lift import (  # noqa: E402
    CP2_SO3,
    CP2_SU2_FIX,
    S4_SUSPENSION,
    achievable_suspension_p1,
    check_witness,
    decide_lift,
)
from bundlelift.manifolds import CP2, CP2_MINUS_CP2, S2xS2, S4  # noqa: E402
from bundlelift.oracles import (  # noqa: E402
    brute_force_cokernel_order,
    cokernel_order,
    det,
    mv_h4_cp2_so3,
    residue_scan,
    uncovered_values,
)

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def _is_4r2(n):
    return n >= 0 and n % 4 == 0 and math.isqrt(n // 4) ** 2 * 4 == n


# 1 ---------------------------------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    bad, checked = [], 0
    for p1 in range(-1000, 1001):
        for w2 in (0, 1):
            B = BundleInvariants(3, (w2,), p1)
            if validate(CP2, B):
                continue
            checked += 1
            want = w2 == 1 or p1 % 8 == 0 or _is_4r2(p1)
            v = decide_lift(CP2_SO3, CP2, B)
            if bool(v) != want:
                bad.append((w2, p1, v.answer.value))
            elif v and check_witness(CP2_SO3, CP2, B, v.witness):
                bad.append((w2, p1, "witness"))
    dt = time.perf_counter() - t0
    ok = not bad and checked == 1001 and dt < 5.0
    return ok, f"{checked} bundles, {len(bad)} mismatches, {dt:.2f}s (limit 5s)"


# 2 ---------------------------------------------------------------------------

def _q_search(p1, q_max=200):
    return [q for q in range(q_max + 1) if p1 in (q * q, q * q - 4, 4 - q * q)]


def criterion_2():
    odd1 = RepDecomposition((Su2Irrep("odd", 1),))
    aw = fixed_point_invariants(FixedPointDiagram(3, odd1, (1,)))
    esch = fixed_point_invariants(FixedPointDiagram(3, odd1, (3,)))
    checks = {
        "m(Odd(1)) = 4": m_value(Su2Irrep("odd", 1)) == 4,
        "Aloff-Wallach p1 = -3": aw.p1_set == {-3} and aw.w2_nonzero == 1,
        "Eschenburg p1 = 5": esch.p1_set == {5} and esch.w2_nonzero == 1,
    }
    for p1 in (-3, 5):
        B = BundleInvariants(3, (1,), p1)
        v = decide_lift(CP2_SU2_FIX, CP2, B)
        checks[f"lift p1={p1}"] = bool(v) and not check_witness(CP2_SU2_FIX, CP2, B, v.witness)
    v8 = decide_lift(CP2_SU2_FIX, CP2, BundleInvariants(3, (0,), 8))
    checks["no lift p1=8"] = v8.answer.value == "No" and _q_search(8) == []
    failed = [k for k, ok in checks.items() if not ok]
    return not failed, "all named cases hold" if not failed else f"failed: {failed}"


# 3 ---------------------------------------------------------------------------

def criterion_3():
    t0 = time.perf_counter()
    bad, n = [], 0
    for pm in range(-200, 201, 2):
        for pp in range(-198, 199, 4):
            n += 1
            closed = abs(pp * pp - pm * pm) // 4 or INFINITE
            snf = mv_h4_cp2_so3(pm, pp, "snf")
            via_det = mv_h4_cp2_so3(pm, pp, "det")
            if snf != closed or via_det != closed:
                bad.append((pm, pp, snf, via_det, closed))
    dt = time.perf_counter() - t0
    ok = not bad and n >= 10**4 and dt < 10.0
    return ok, f"{n} diagrams, {len(bad)} mismatches, {dt:.2f}s (limit 10s)"


# 4 ---------------------------------------------------------------------------

RESIDUE_CLAIMS = [
    (S2xS2, (0, 0), 8, {0}),
    (CP2_MINUS_CP2, (0, 0), 16, {0, 4, 12}),
]
# (manifold, w2, modulus, residue): every value in that class is some e^2
COVERAGE_CLAIMS = [
    (S2xS2, (1, 0), 4, 0),
    (S2xS2, (0, 1), 4, 0),
    (S2xS2, (1, 1), 4, 2),
    (CP2_MINUS_CP2, (1, 0), 4, 1),
    (CP2_MINUS_CP2, (0, 1), 4, 3),
]


def criterion_4():
    problems = []
    for M, w2, mod, want in RESIDUE_CLAIMS:
        big, small = residue_scan(M, w2, mod, 200), residue_scan(M, w2, mod, 50)
        if big != want or small != big:
            problems.append(f"{M} {w2} mod {mod}: {sorted(big)} vs {sorted(small)}")
    for M, w2, mod, res in COVERAGE_CLAIMS:
        if residue_scan(M, w2, mod, 200) != {res}:
            problems.append(f"{M} {w2}: residues not {{{res}}} mod {mod}")
        if uncovered_values(M, w2, mod, res, 400, 200) or uncovered_values(M, w2, mod, res, 100, 50):
            problems.append(f"{M} {w2}: some value = {res} mod {mod} is missed")
    return not problems, "; ".join(problems) or (
        f"{len(RESIDUE_CLAIMS)} residue sets and {len(COVERAGE_CLAIMS)} coverage claims, "
        "stable from bound 50 to 200")


# 5 ---------------------------------------------------------------------------

def criterion_5():
    bad = []
    counts = {"odd": 0, "delta0": 0, "delta4_no": 0, "delta4_square": 0}
    for c1 in range(-21, 22):
        for c2 in range(-100, 101):
            C = ChernData((c1,), c2)
            B = so4_from_chern(CP2, C)
            delta = discriminant(CP2, C)
            v = decide_lift(CP2_SO3, CP2, B)
            if c1 % 2:
                want, key = True, "odd"
            elif delta % 8 == 0:
                want, key = True, "delta0"
            elif _is_4r2(delta):
                want, key = True, "delta4_square"
            else:
                want, key = False, "delta4_no"
            counts[key] += 1
            if bool(v) != want or (v and check_witness(CP2_SO3, CP2, B, v.witness)):
                bad.append((c1, c2, v.answer.value))
    return not bad, f"{sum(counts.values())} bundles {counts}, {len(bad)} mismatches"


# 6 ---------------------------------------------------------------------------

def criterion_6():
    problems = []
    if achievable_suspension_p1(3) != {0, 4, -4}:
        problems.append(f"k=3 gives {sorted(achievable_suspension_p1(3))}")
    for k in range(1, 13):
        with open(os.path.join(GOLDEN, f"suspension_k{k}.json")) as fh:
            golden = json.load(fh)
        if k == 4:
            want = sorted(tuple(p) for p in golden["pairs"])
            if want != ind.suspension_pairs_k4():
                problems.append("k=4 golden differs from the independent enumerator")
            got = []
            for p1 in range(-8, 9):
                for e in range(-4, 5):
                    B = BundleInvariants(4, (), p1, euler=e)
                    if not validate(S4, B) and decide_lift(S4_SUSPENSION, S4, B):
                        got.append((p1, e))
            if got != want:
                problems.append(f"k=4 pairs {got}")
            continue
        got = sorted(achievable_suspension_p1(k))
        if got != golden["p1"] or got != ind.suspension_p1(k):
            problems.append(f"k={k} set differs")
        # membership decider on a window around the set
        span = max(abs(x) for x in got) + 4
        for p1 in range(-span, span + 1):
            if k >= 5:
                w2b, w4 = table_a(p1)
                B = BundleInvariants(k, (), p1, w4=w4)
            else:
                B = BundleInvariants(k, (), p1, euler=() if k == 2 else None)
            if validate(S4, B):
                continue
            if k == 2:
                continue
            v = decide_lift(S4_SUSPENSION, S4, B)
            if bool(v) != (p1 in got):
                problems.append(f"k={k} p1={p1} decided {v.answer.value}")
                break
    sizes = [len(achievable_suspension_p1(k)) for k in range(1, 13) if k != 4]
    return not problems, "; ".join(problems) or f"set sizes for k in 1..12 (not 4): {sizes}"


# 7 ---------------------------------------------------------------------------

def criterion_7():
    rng = np.random.default_rng(20240607)
    n = 10**4
    problems = []

    # pair / so4 roundtrip
    manifolds = [CP2, S2xS2, CP2_MINUS_CP2, S4]
    done = 0
    while done < n:
        M = manifolds[int(rng.integers(len(manifolds)))]
        w2 = tuple(int(b) for b in rng.integers(0, 2, size=M.b2))
        B = BundleInvariants(4, w2, int(rng.integers(-500, 501)), euler=int(rng.integers(-250, 251)))
        if validate(M, B):
            continue
        done += 1
        if so4_from_pair(M, *pair_from_so4(M, B)) != B:
            problems.append(f"roundtrip {B}")
            break

    # validate vs the parameterized CP2 SO(3) family
    for _ in range(n):
        pm = 2 * int(rng.integers(-300, 301))
        pp = 4 * int(rng.integers(-150, 151)) + 2
        B = cp2_so3_invariants(Cp2So3LiftDiagram(pm, pp))
        if validate(CP2, B) or (B.spin != (pm % 4 == 2)):
            problems.append(f"family ({pm}, {pp})")
            break

    # m-value divisibility and agreement with weight sums
    for n_ in range(1, n + 1):
        for kind, dim in (("odd", 2 * n_ + 1), ("quat", 4 * n_)):
            m = m_value(Su2Irrep(kind, n_))
            if (m % 2) or (n_ <= 200 and m != ind.weight_sum(dim)):
                problems.append(f"m-value {kind}({n_})")
                break

    # Table A against stabilization of SO(4) bundles
    for _ in range(n):
        M = CP2 if rng.integers(2) else S4
        w2 = tuple(int(b) for b in rng.integers(0, 2, size=M.b2))
        B = BundleInvariants(4, w2, int(rng.integers(-500, 501)), euler=int(rng.integers(-250, 251)))
        if validate(M, B):
            continue
        S = stabilize(M, B)
        if table_a(S.p1) != (int(not S.spin), S.w4) or validate(M, S):
            problems.append(f"table A {B}")
            break
    return not problems, "; ".join(problems) or f"4 suites of {n} cases with seed 20240607"


# 8 ---------------------------------------------------------------------------

def criterion_8():
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    bad, n = [], 0
    while n < 500:
        size = int(rng.integers(1, 4))
        A = rng.integers(-7, 8, size=(size, size)).tolist()
        if det(A) == 0:
            continue
        n += 1
        if cokernel_order(A) != brute_force_cokernel_order(A) or cokernel_order(A) != abs(det(A)):
            bad.append(A)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30.0
    return ok, f"{n} matrices, {len(bad)} mismatches, {dt:.2f}s (limit 30s)"


CRITERIA = [
    (1, "Theorem C exhaustion over CP2", criterion_1),
    (2, "named spaces for the fixed-point action", criterion_2),
    (3, "Mayer-Vietoris order vs closed form", criterion_3),
    (4, "product-sum residues and coverage", criterion_4),
    (5, "Theorem B reproduction", criterion_5),
    (6, "suspension finiteness and golden files", criterion_6),
    (7, "roundtrip and congruence properties", criterion_7),
    (8, "brute-force lattice oracle", criterion_8),
]


def _line(num, title, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} :: {detail}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, capsys):
    _kernels.warmup()
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    _kernels.warmup()
    failures = 0
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        failures += not ok
        print(_line(num, title, ok, detail))
    sys.exit(1 if failures else 0)
