"""Independent checks: Smith normal form, cokernel orders, the Mayer-Vietoris
determinants for |H^4(P)|, and brute-force scans of square classes.

Nothing here calls the deciders; tests compare the two sides.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence, Union

from . import _kernels
from .diagrams import (
    Cp2So3LiftDiagram,
    FixedPointDiagram,
    RepDecomposition,
    check_consistency,
    enumerate_decompositions,
    fixed_point_invariants,
)
from .errors import DiagramError
from .invariants import INFINITE
from .manifolds import BaseManifold, as_w2, get_manifold

Matrix = list[list[int]]


@dataclass(frozen=True)
class SnfResult:
    """U A V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal."""
    diagonal: tuple[int, ...]
    D: tuple[tuple[int, ...], ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _freeze(m: Matrix) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in m)


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def smith_normal_form(A: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form over Z with exact integers.

    The pivot at each step is the smallest nonzero |entry| of the remaining
    block, ties broken row-major, so the output is deterministic.
    """
    a = [[int(x) for x in row] for row in A]
    m = len(a)
    n = len(a[0]) if m else 0
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be rectangular")
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M_ in (a, V):
            for row in M_:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c row_src
        for M_ in (a, U):
            M_[dst] = [x + c * y for x, y in zip(M_[dst], M_[src])]

    def add_col(dst, src, c):
        for M_ in (a, V):
            for row in M_:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if a[t][t] < 0:
            U[t] = [-x for x in U[t]]
            a[t] = [-x for x in a[t]]
    diag = tuple(a[i][i] for i in range(min(m, n)))
    return SnfResult(diag, _freeze(a), _freeze(U), _freeze(V))


def det(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [[int(x) for x in row] for row in A]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def cokernel_order(A: Sequence[Sequence[int]], n: int | None = None) -> Union[int, float]:
    """|Z^n / A Z^m| for A with n rows; ``INFINITE`` when A has rank < n."""
    rows = len(A)
    if n is None:
        n = rows
    if rows != n:
        raise ValueError(f"A has {rows} rows but maps into Z^{n}")
    if n == 0:
        return 1
    snf = smith_normal_form(A)
    if snf.rank < n:
        return INFINITE
    return math.prod(d for d in snf.diagonal if d)


def brute_force_cokernel_order(A: Sequence[Sequence[int]]) -> int:
    """|Z^n / A Z^n| by counting lattice points of the fundamental domain."""
    return _kernels.count_parallelepiped(A)


# ---------------------------------------------------------------------------
# Mayer-Vietoris determinants

def cp2_so3_mv_matrix(p_minus: int, p_plus: int) -> Matrix:
    problems = check_consistency(Cp2So3LiftDiagram(p_minus, p_plus))
    if problems:
        raise DiagramError("inconsistent diagram: " + "; ".join(problems))
    return [[-4, 2], [p_minus * p_minus, -(p_plus * p_plus) // 2]]


def mv_h4_cp2_so3(p_minus: int, p_plus: int, method: str = "snf") -> Union[int, float]:
    """|H^4(P)| for the CP2 SO(3) diagram: the difference of the projections
    on H^3 has the matrix [[-4, 2], [p-^2, -p+^2/2]] and P- u P+ is an
    8-fold cover, so the order is |coker| / 8 = |p+^2 - p-^2| / 4.

    ``method`` picks the cokernel route: ``"snf"`` or ``"det"``.
    """
    A = cp2_so3_mv_matrix(p_minus, p_plus)
    if method == "snf":
        c = cokernel_order(A)
    elif method == "det":
        d = abs(det(A))
        c = d if d else INFINITE
    else:
        raise ValueError(f"unknown method {method!r}")
    if c == INFINITE:
        return INFINITE
    assert c % 8 == 0
    return c // 8


def fixpoint_mv_matrix(decomposition: RepDecomposition, q: Sequence[int]) -> tuple[Matrix, bool]:
    """Cokernel matrix of the fixed-point diagram and whether sum q is odd."""
    sq = sum(x * x for x in q)
    m = decomposition.m_sum
    assert m % 2 == 0
    if sum(q) % 2:
        return [[-1, 2], [m // 2, -sq]], True
    return [[-1, 1], [m // 2, -(sq // 2)]], False


def mv_h4_fixpoint(k: int, decomposition: RepDecomposition, q: Sequence[int],
                   w2_nonzero: int, method: str = "snf") -> Union[int, float]:
    """|H^4(P)| of the fixed-point diagram from its cokernel.

    The principal orbit covers P- u P+ twice when sum q is odd and four
    times when it is even; for k = 3 the factor halves since H^4(P-) = 0.
    """
    d = FixedPointDiagram(k, decomposition, tuple(q))
    if k == 4 or k < 3:
        raise DiagramError(f"fixed point cokernels need k = 3 or k >= 5, got {k}")
    problems = check_consistency(d, primitive_weights=False)
    if problems:
        raise DiagramError("inconsistent diagram: " + "; ".join(problems))
    A, odd = fixpoint_mv_matrix(d.phi_minus, d.q)
    if int(odd) != int(w2_nonzero):
        raise DiagramError("w2 must be the parity of sum q")
    if method == "snf":
        c = cokernel_order(A)
    elif method == "det":
        c = abs(det(A)) or INFINITE
    else:
        raise ValueError(f"unknown method {method!r}")
    if c == INFINITE:
        return INFINITE
    factor = 2 if odd else 4
    if k == 3:
        factor //= 2
    return factor * c


# ---------------------------------------------------------------------------
# scans over square classes

def residue_scan(M, parity: Sequence[int], modulus: int, bound: int) -> set[int]:
    """{e^2 mod modulus : e = parity mod 2, |coords| <= bound}."""
    M = get_manifold(M)
    parity = as_w2(M, parity)
    if modulus < 1:
        raise ValueError("modulus must be positive")
    mask = _kernels.residue_mask(M.form, parity, modulus, bound)
    return {int(r) for r in mask.nonzero()[0]}


def uncovered_values(M, parity: Sequence[int], modulus: int, residue: int,
                     limit: int, bound: int) -> list[int]:
    """Integers in [-limit, limit] congruent to ``residue`` that are not e^2
    for any e = parity mod 2 in the box."""
    M = get_manifold(M)
    parity = as_w2(M, parity)
    vals = set(_kernels.square_values(M.form, parity, bound).tolist())
    start = -limit + ((residue + limit) % modulus)
    return [v for v in range(start, limit + 1, modulus) if v not in vals]


def scan_sign_anomalies(k_max: int, bound: int = 10) -> dict:
    """Fixed-point diagrams whose candidate p1 set breaks the congruences.

    For k = 3 the set must contain a value with p1 = 1 mod 4 when w2 != 0
    and only values = 0 mod 4 when w2 = 0; for k >= 5, p1 must be odd
    exactly when w2 != 0.  Weights run over 0 <= q_1 <= ... <= q_r <= bound.
    """
    anomalies = []
    checked = 0
    for k in range(3, k_max + 1):
        if k == 4:
            continue
        r = k // 2
        for dec in enumerate_decompositions(k):
            for q in itertools.combinations_with_replacement(range(bound + 1), r):
                if r >= 2 and math.gcd(*q) != 1:
                    continue
                checked += 1
                inv = fixed_point_invariants(FixedPointDiagram(k, dec, q))
                problem = inv.anomaly
                if problem is None:
                    if k == 3 and inv.w2_nonzero == 0 and any(v % 4 for v in inv.p1_set):
                        problem = "spin but p1 is not 0 mod 4"
                    elif k >= 5 and any(v % 2 != inv.w2_nonzero for v in inv.p1_set):
                        problem = "p1 parity differs from w2"
                if problem:
                    anomalies.append({"k": k, "reps": list(dec.dims), "q": list(q),
                                      "magnitude": inv.magnitude, "problem": problem})
    return {"k_max": k_max, "bound": bound, "diagrams_checked": checked, "anomalies": anomalies}
