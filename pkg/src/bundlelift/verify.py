"""Self-check suites behind ``bundlelift verify``.

Each suite compares a closed form with an independent computation on a
seeded sample and reports failures as data.  The suites are small enough to
finish in a few seconds; the full-size versions live in the test suite.
"""
from __future__ import annotations

import itertools
import math
from typing import Callable

import numpy as np

from .diagrams import (
    Cp2So3LiftDiagram,
    FixedPointDiagram,
    cp2_so3_invariants,
    enumerate_decompositions,
    fixed_point_invariants,
)
from .invariants import BundleInvariants, h4_order, pair_from_so4, so4_from_pair, validate
from .lift import CP2_SO3, achievable_suspension_p1, check_witness, decide_lift
from .manifolds import CP2, CP2_MINUS_CP2, S2xS2
from .oracles import (
    brute_force_cokernel_order,
    cokernel_order,
    det,
    matmul,
    mv_h4_cp2_so3,
    mv_h4_fixpoint,
    residue_scan,
    scan_sign_anomalies,
    smith_normal_form,
)


def _suite_snf(rng):
    fails, n = [], 0
    for _ in range(150):
        r, c = (int(x) for x in rng.integers(1, 7, size=2))
        A = rng.integers(-10**6, 10**6, size=(r, c), endpoint=True)
        A[rng.random((r, c)) < 0.3] = 0
        A = A.tolist()
        s = smith_normal_form(A)
        n += 1
        ok = [list(row) for row in s.D] == matmul(matmul(s.U, A), s.V)
        ok &= abs(det(s.U)) == 1 and abs(det(s.V)) == 1
        d = s.diagonal
        ok &= all((d[i + 1] % d[i] == 0) if d[i] else d[i + 1] == 0 for i in range(len(d) - 1))
        if not ok:
            fails.append({"matrix": A})
    return n, fails


def _random_full_rank(rng, max_det=500):
    while True:
        size = int(rng.integers(2, 4))
        A = rng.integers(-6, 7, size=(size, size)).tolist()
        d = det(A)
        if d and abs(d) <= max_det:
            return A


def _suite_cokernel(rng):
    fails = []
    for _ in range(100):
        A = _random_full_rank(rng)
        if cokernel_order(A) != brute_force_cokernel_order(A):
            fails.append({"matrix": A})
    return 100, fails


def _suite_mv(rng):
    fails, n = [], 0
    for _ in range(500):
        pm = 2 * int(rng.integers(0, 101))
        pp = 4 * int(rng.integers(0, 50)) + 2
        if pm == pp:
            continue
        n += 1
        want = abs(cp2_so3_invariants(Cp2So3LiftDiagram(pm, pp)).p1)
        got = (mv_h4_cp2_so3(pm, pp, "snf"), mv_h4_cp2_so3(pm, pp, "det"))
        if got != (want, want):
            fails.append({"p_minus": pm, "p_plus": pp, "got": list(got), "want": want})
    return n, fails


def _suite_fixpoint(rng):
    fails, n = [], 0
    for k in (3, 5, 6, 7):
        r = k // 2
        for dec in enumerate_decompositions(k):
            for q in itertools.combinations_with_replacement(range(6), r):
                d = FixedPointDiagram(k, dec, q)
                if r >= 2 and np.gcd.reduce(q) != 1:
                    continue
                inv = fixed_point_invariants(d)
                if inv.magnitude == 0 or inv.anomaly:
                    continue
                n += 1
                p1 = next(iter(inv.p1_set))
                w4 = None if k == 3 else (1 if p1 % 4 in (2, 3) else 0)
                B = BundleInvariants(k, (inv.w2_nonzero,), p1, w4=w4)
                if mv_h4_fixpoint(k, dec, q, inv.w2_nonzero) != h4_order(CP2, B):
                    fails.append({"k": k, "reps": list(dec.dims), "q": list(q)})
    return n, fails


def _suite_residues(rng):
    claims = [
        (S2xS2, (0, 0), 8, {0}),
        (CP2_MINUS_CP2, (0, 0), 16, {0, 4, 12}),
        (CP2_MINUS_CP2, (1, 1), 8, {0}),
        (CP2, (1,), 8, {1}),
        (CP2, (0,), 4, {0}),
    ]
    fails = []
    for M, par, mod, want in claims:
        got = residue_scan(M, par, mod, 50)
        if got != want:
            fails.append({"manifold": M.name, "parity": list(par), "modulus": mod,
                          "got": sorted(got)})
    return len(claims), fails


def _suite_cp2_so3_rule(rng):
    fails, n = [], 0
    for p1 in range(-200, 201):
        w2 = 1 if p1 % 4 == 1 else 0 if p1 % 4 == 0 else None
        if w2 is None:
            continue
        n += 1
        B = BundleInvariants(3, (w2,), p1)
        expected = w2 == 1 or p1 % 8 == 0 or (p1 > 0 and _is_four_square(p1))
        v = decide_lift(CP2_SO3, CP2, B)
        if bool(v) != expected or (v and check_witness(CP2_SO3, CP2, B, v.witness)):
            fails.append({"w2": w2, "p1": p1, "answer": v.answer.value})
    return n, fails


def _is_four_square(p1):
    r = math.isqrt(p1 // 4)
    return 4 * r * r == p1


def _suite_pairs(rng):
    fails, n = [], 0
    for _ in range(500):
        p1 = int(rng.integers(-100, 101))
        e = int(rng.integers(-100, 101))
        for w2 in (0, 1):
            B = BundleInvariants(4, (w2,), p1, euler=e)
            if validate(CP2, B):
                continue
            n += 1
            if so4_from_pair(CP2, *pair_from_so4(CP2, B)) != B:
                fails.append(B.to_json())
    return n, fails


def _suite_suspension(rng):
    fails = []
    for k in (1, 2, 3, 5, 6, 7, 8):
        dims = [d for d in range(1, k + 1) if d % 2 or d % 4 == 0]
        sums = set()
        for counts in itertools.product(*(range(k // d + 1) for d in dims)):
            if sum(c * d for c, d in zip(counts, dims)) != k:
                continue
            m = 0
            for c, d in zip(counts, dims):
                n_ = d // 2 if d % 2 else d // 4
                m += c * (n_ * (2 * n_ + 1) * (2 * n_ + 2) // 3 if d % 2
                          else (2 * n_ - 1) * 2 * n_ * (2 * n_ + 1) // 3)
            sums.add(m)
        want = {a - b for a in sums for b in sums}
        if set(achievable_suspension_p1(k)) != want:
            fails.append({"k": k})
    return 7, fails


def _suite_anomalies(rng):
    rep = scan_sign_anomalies(5, 6)
    return rep["diagrams_checked"], rep["anomalies"]


SUITES: dict[str, Callable] = {
    "snf": _suite_snf,
    "cokernel": _suite_cokernel,
    "mv": _suite_mv,
    "fixpoint": _suite_fixpoint,
    "residues": _suite_residues,
    "cp2-so3-rule": _suite_cp2_so3_rule,
    "pairs": _suite_pairs,
    "suspension": _suite_suspension,
    "anomalies": _suite_anomalies,
}


def run_suites(which: str = "all", seed: int = 0) -> dict:
    names = list(SUITES) if which == "all" else [s.strip() for s in which.split(",")]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; choose from {', '.join(SUITES)} or all")
    # one child seed per suite so that each suite's sample is independent of
    # which other suites run
    children = np.random.SeedSequence(seed).spawn(len(SUITES))
    seeds = dict(zip(SUITES, children))
    results = []
    for name in names:
        n, fails = SUITES[name](np.random.default_rng(seeds[name]))
        results.append({"name": name, "cases": n, "passed": not fails, "failures": fails[:10]})
    return {"seed": seed, "suites": results, "passed": all(r["passed"] for r in results)}
