"""Brute-force integer scans behind the searches and oracles.

Each kernel exists twice: a numba ``@njit`` loop and a vectorized numpy
version.  The backend is chosen once at import from ``BUNDLELIFT_BACKEND``
(``numba`` or ``numpy``); numba is the default when it imports.  Both paths
must return identical results, and ``tests/test_kernels.py`` checks that.

All kernels work in int64.  Callers pass bounds small enough that no square
or product can overflow; ``_check_range`` enforces it.
"""
from __future__ import annotations

import contextlib
import os

import numpy as np

try:
    import numba
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

_LIMIT = 1 << 62


def _default_backend() -> str:
    name = os.environ.get("BUNDLELIFT_BACKEND", "numba" if HAVE_NUMBA else "numpy").lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"BUNDLELIFT_BACKEND must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        name = "numpy"
    return name


_backend = _default_backend()


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


@contextlib.contextmanager
def use_backend(name: str):
    prev = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def _check_range(*magnitudes: int) -> None:
    total = 1
    for m in magnitudes:
        total *= max(int(m), 1)
    if total >= _LIMIT:
        raise OverflowError("search range too large for int64 kernels")


def _form_array(form) -> tuple[np.ndarray, int]:
    b2 = len(form)
    out = np.zeros((2, 2), dtype=np.int64)
    for i in range(b2):
        for j in range(b2):
            out[i, j] = form[i][j]
    return out, b2


# --------------------------------------------------------------------------
# class search: e in a box with e^T Q e = target and e = parity mod 2

@njit(cache=True)
def _class_search_numba(q, b2, parity, target, bound):
    found = False
    bn = 0
    b0 = 0
    b1 = 0
    r0 = bound if b2 >= 1 else 0
    r1 = bound if b2 >= 2 else 0
    for e0 in range(-r0, r0 + 1):
        if b2 >= 1 and (e0 - parity[0]) % 2 != 0:
            continue
        for e1 in range(-r1, r1 + 1):
            if b2 >= 2 and (e1 - parity[1]) % 2 != 0:
                continue
            # representative of {e, -e}: first nonzero coordinate positive
            if e0 < 0 or (e0 == 0 and e1 < 0):
                continue
            val = q[0, 0] * e0 * e0 + 2 * q[0, 1] * e0 * e1 + q[1, 1] * e1 * e1
            if val != target:
                continue
            nrm = max(abs(e0), abs(e1))
            if (not found or nrm < bn or (nrm == bn and (e0 < b0 or (e0 == b0 and e1 < b1)))):
                found = True
                bn = nrm
                b0 = e0
                b1 = e1
    out = np.zeros(3, dtype=np.int64)
    if found:
        out[0] = 1
        out[1] = b0
        out[2] = b1
    return out


def _class_search_numpy(q, b2, parity, target, bound):
    r0 = bound if b2 >= 1 else 0
    r1 = bound if b2 >= 2 else 0
    e0 = np.arange(-r0, r0 + 1, dtype=np.int64)
    e1 = np.arange(-r1, r1 + 1, dtype=np.int64)
    if b2 >= 1:
        e0 = e0[(e0 - parity[0]) % 2 == 0]
    if b2 >= 2:
        e1 = e1[(e1 - parity[1]) % 2 == 0]
    E0, E1 = np.meshgrid(e0, e1, indexing="ij")
    E0, E1 = E0.ravel(), E1.ravel()
    val = q[0, 0] * E0 * E0 + 2 * q[0, 1] * E0 * E1 + q[1, 1] * E1 * E1
    ok = (val == target) & ((E0 > 0) | ((E0 == 0) & (E1 >= 0)))
    out = np.zeros(3, dtype=np.int64)
    if not ok.any():
        return out
    c0, c1 = E0[ok], E1[ok]
    nrm = np.maximum(np.abs(c0), np.abs(c1))
    i = np.lexsort((c1, c0, nrm))[0]
    out[:] = (1, c0[i], c1[i])
    return out


def class_search(form, parity, target: int, bound: int):
    """Smallest class e (sup norm, then lexicographic; e ~ -e) with
    e^2 = target and e = parity mod 2, or None."""
    q, b2 = _form_array(form)
    _check_range(bound, bound, 4)
    _check_range(abs(target) + 1)
    par = np.zeros(2, dtype=np.int64)
    par[:len(parity)] = parity
    fn = _class_search_numba if _backend == "numba" else _class_search_numpy
    res = fn(q, b2, par, np.int64(target), np.int64(bound))
    if not res[0]:
        return None
    return tuple(int(x) for x in res[1:1 + b2])


# --------------------------------------------------------------------------
# squares of all classes with a given parity in a box

@njit(cache=True)
def _square_values_numba(q, b2, parity, bound):
    r0 = bound if b2 >= 1 else 0
    r1 = bound if b2 >= 2 else 0
    n0 = 0
    for e0 in range(-r0, r0 + 1):
        if b2 < 1 or (e0 - parity[0]) % 2 == 0:
            n0 += 1
    n1 = 0
    for e1 in range(-r1, r1 + 1):
        if b2 < 2 or (e1 - parity[1]) % 2 == 0:
            n1 += 1
    out = np.empty(n0 * n1, dtype=np.int64)
    k = 0
    for e0 in range(-r0, r0 + 1):
        if b2 >= 1 and (e0 - parity[0]) % 2 != 0:
            continue
        for e1 in range(-r1, r1 + 1):
            if b2 >= 2 and (e1 - parity[1]) % 2 != 0:
                continue
            out[k] = q[0, 0] * e0 * e0 + 2 * q[0, 1] * e0 * e1 + q[1, 1] * e1 * e1
            k += 1
    return out


def _square_values_numpy(q, b2, parity, bound):
    r0 = bound if b2 >= 1 else 0
    r1 = bound if b2 >= 2 else 0
    e0 = np.arange(-r0, r0 + 1, dtype=np.int64)
    e1 = np.arange(-r1, r1 + 1, dtype=np.int64)
    if b2 >= 1:
        e0 = e0[(e0 - parity[0]) % 2 == 0]
    if b2 >= 2:
        e1 = e1[(e1 - parity[1]) % 2 == 0]
    E0, E1 = np.meshgrid(e0, e1, indexing="ij")
    return (q[0, 0] * E0 * E0 + 2 * q[0, 1] * E0 * E1 + q[1, 1] * E1 * E1).ravel()


def square_values(form, parity, bound: int) -> np.ndarray:
    """Sorted distinct values of e^2 over e = parity mod 2, |coords| <= bound."""
    q, b2 = _form_array(form)
    _check_range(bound, bound, 4)
    par = np.zeros(2, dtype=np.int64)
    par[:len(parity)] = parity
    fn = _square_values_numba if _backend == "numba" else _square_values_numpy
    return np.unique(fn(q, b2, par, np.int64(bound)))


@njit(cache=True)
def _residue_mask_numba(q, b2, parity, modulus, bound):
    seen = np.zeros(modulus, dtype=np.bool_)
    r0 = bound if b2 >= 1 else 0
    r1 = bound if b2 >= 2 else 0
    for e0 in range(-r0, r0 + 1):
        if b2 >= 1 and (e0 - parity[0]) % 2 != 0:
            continue
        for e1 in range(-r1, r1 + 1):
            if b2 >= 2 and (e1 - parity[1]) % 2 != 0:
                continue
            val = q[0, 0] * e0 * e0 + 2 * q[0, 1] * e0 * e1 + q[1, 1] * e1 * e1
            seen[val % modulus] = True
    return seen


def residue_mask(form, parity, modulus: int, bound: int) -> np.ndarray:
    """Boolean mask of the residues mod ``modulus`` hit by e^2."""
    q, b2 = _form_array(form)
    _check_range(bound, bound, 4)
    par = np.zeros(2, dtype=np.int64)
    par[:len(parity)] = parity
    if _backend == "numba":
        return _residue_mask_numba(q, b2, par, np.int64(modulus), np.int64(bound))
    vals = _square_values_numpy(q, b2, par, np.int64(bound))
    seen = np.zeros(modulus, dtype=bool)
    seen[np.mod(vals, modulus)] = True
    return seen


# --------------------------------------------------------------------------
# CP2 / SO(3) diagrams: p1 = (p+^2 - p-^2) / 4

@njit(cache=True)
def _isqrt_exact(t):
    if t < 0:
        return -1
    s = np.int64(np.sqrt(np.float64(t)))
    while s * s > t:
        s -= 1
    while (s + 1) * (s + 1) <= t:
        s += 1
    if s * s == t:
        return s
    return -1


@njit(cache=True)
def _cp2_so3_witness_numba(p1, spin, bound):
    start = 2 if spin else 0
    out = np.full(2, -1, dtype=np.int64)
    for pm in range(start, bound + 1, 4):
        s = _isqrt_exact(4 * p1 + pm * pm)
        if s >= 0 and s <= bound and s % 4 == 2:
            out[0] = pm
            out[1] = s
            return out
    return out


def _cp2_so3_witness_numpy(p1, spin, bound):
    pm = np.arange(2 if spin else 0, bound + 1, 4, dtype=np.int64)
    t = 4 * p1 + pm * pm
    t = np.where(t < 0, -1, t)
    s = np.floor(np.sqrt(np.maximum(t, 0).astype(np.float64))).astype(np.int64)
    # float sqrt can be off by one near perfect squares
    s = np.where(s * s > t, s - 1, s)
    s = np.where((s + 1) * (s + 1) <= t, s + 1, s)
    ok = (t >= 0) & (s * s == t) & (s <= bound) & (s % 4 == 2)
    out = np.full(2, -1, dtype=np.int64)
    idx = np.flatnonzero(ok)
    if idx.size:
        out[:] = (pm[idx[0]], s[idx[0]])
    return out


def cp2_so3_witness(p1: int, spin: bool, bound: int):
    """Smallest nonnegative (p-, p+) with (p+^2 - p-^2)/4 = p1, or None.

    Spin diagrams have p- = p+ = 2 mod 4; non-spin ones p- = 0 mod 4,
    p+ = 2 mod 4.
    """
    _check_range(bound, bound, 8)
    _check_range(4 * abs(p1) + 1)
    fn = _cp2_so3_witness_numba if _backend == "numba" else _cp2_so3_witness_numpy
    res = fn(np.int64(p1), bool(spin), np.int64(bound))
    if res[0] < 0:
        return None
    return int(res[0]), int(res[1])


@njit(cache=True)
def _cp2_so3_image_numba(bound):
    nm = bound // 2 + 1
    npl = 0
    for pp in range(2, bound + 1, 4):
        npl += 1
    spin = np.empty(nm * npl, dtype=np.int64)
    nonspin = np.empty(nm * npl, dtype=np.int64)
    ns = 0
    nn = 0
    for pm in range(0, bound + 1, 2):
        for pp in range(2, bound + 1, 4):
            v = (pp * pp - pm * pm) // 4
            if pm % 4 == 2:
                spin[ns] = v
                ns += 1
            else:
                nonspin[nn] = v
                nn += 1
    return spin[:ns], nonspin[:nn]


def _cp2_so3_image_numpy(bound):
    pm = np.arange(0, bound + 1, 2, dtype=np.int64)
    pp = np.arange(2, bound + 1, 4, dtype=np.int64)
    v = (pp[None, :] ** 2 - pm[:, None] ** 2) // 4
    is_spin = (pm % 4 == 2)
    return v[is_spin].ravel(), v[~is_spin].ravel()


def cp2_so3_image(bound: int) -> tuple[np.ndarray, np.ndarray]:
    """Distinct p1 over all consistent diagrams with 0 <= p+- <= bound,
    split into (spin, non-spin)."""
    _check_range(bound, bound)
    fn = _cp2_so3_image_numba if _backend == "numba" else _cp2_so3_image_numpy
    spin, nonspin = fn(np.int64(bound))
    return np.unique(spin), np.unique(nonspin)


# --------------------------------------------------------------------------
# lattice points in the half-open parallelepiped A [0, 1)^n

@njit(cache=True)
def _count_parallelepiped_numba(adj, det, lo, hi):
    n = lo.shape[0]
    x = lo.copy()
    count = 0
    while True:
        inside = True
        for i in range(n):
            y = 0
            for j in range(n):
                y += adj[i, j] * x[j]
            if y < 0 or y >= det:
                inside = False
                break
        if inside:
            count += 1
        # odometer increment
        i = 0
        while i < n:
            if x[i] < hi[i]:
                x[i] += 1
                break
            x[i] = lo[i]
            i += 1
        if i == n:
            break
    return count


def _count_parallelepiped_numpy(adj, det, lo, hi):
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    grid = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")])
    y = adj @ grid
    return int(np.count_nonzero(np.all((y >= 0) & (y < det), axis=0)))


def count_parallelepiped(A) -> int:
    """Number of integer points in A [0,1)^n for square nonsingular integer A.

    This equals |Z^n / A Z^n|; it is computed by enumerating the bounding
    box and testing membership with the adjugate, so it is independent of
    any normal-form computation.
    """
    A = [[int(x) for x in row] for row in A]
    n = len(A)
    adj, det = _adjugate(A)
    if det == 0:
        raise ValueError("matrix is singular")
    sign = 1 if det > 0 else -1
    adj_a = np.array([[sign * v for v in row] for row in adj], dtype=np.int64).reshape(n, n)
    lo = np.array([sum(min(0, A[i][j]) for j in range(n)) for i in range(n)], dtype=np.int64)
    hi = np.array([sum(max(0, A[i][j]) for j in range(n)) for i in range(n)], dtype=np.int64)
    _check_range(*(int(h - l + 1) for l, h in zip(lo, hi)))
    fn = _count_parallelepiped_numba if _backend == "numba" else _count_parallelepiped_numpy
    return int(fn(adj_a, np.int64(abs(det)), lo, hi))


def _adjugate(A):
    n = len(A)
    if n == 1:
        return [[1]], A[0][0]

    def minor(m, i, j):
        return [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]

    def det(m):
        if len(m) == 1:
            return m[0][0]
        return sum((-1) ** j * m[0][j] * det(minor(m, 0, j)) for j in range(len(m)))

    adj = [[(-1) ** (i + j) * det(minor(A, j, i)) for j in range(n)] for i in range(n)]
    return adj, det(A)


def warmup() -> None:
    """Compile every numba kernel once (no-op on the numpy backend)."""
    if _backend != "numba":
        return
    class_search(((0, 1), (1, 0)), (0, 1), 4, 3)
    class_search(((1,),), (1,), 9, 3)
    square_values(((1,),), (0,), 2)
    residue_mask(((1,),), (0,), 4, 2)
    cp2_so3_witness(5, False, 16)
    cp2_so3_image(10)
    count_parallelepiped([[2, 1], [0, 3]])
