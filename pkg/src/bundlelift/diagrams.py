"""Group-diagram families for commuting lifts and their invariants.

Covers the SO(3)-lift diagrams over CP2 (parameters p-, p+), their spin
covers, the fixed-point SU(2) action on CP2 (a representation of SU(2) plus
circle weights q), and the suspension action on S4 (two representations of
SU(2)).  Everything reduces to integer arithmetic on the representation
data, so no group elements are ever built.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from threading import Lock
from typing import Iterator, Literal, Union

from .errors import DiagramError
from .invariants import BundleInvariants

ODD = "odd"
QUAT = "quat"


@dataclass(frozen=True, order=True)
class Su2Irrep:
    """Irreducible real SU(2) representation.

    ``odd`` with n >= 0 has dimension 2n + 1 (it factors through SO(3));
    ``quat`` with n >= 1 is quaternionic of real dimension 4n.
    """
    kind: Literal["odd", "quat"]
    n: int

    def __post_init__(self):
        if self.kind == ODD and self.n < 0:
            raise ValueError("odd irreps need n >= 0")
        if self.kind == QUAT and self.n < 1:
            raise ValueError("quaternionic irreps need n >= 1")
        if self.kind not in (ODD, QUAT):
            raise ValueError(f"unknown irrep kind {self.kind!r}")

    @property
    def dim(self) -> int:
        return 2 * self.n + 1 if self.kind == ODD else 4 * self.n

    @classmethod
    def from_dim(cls, d: int) -> "Su2Irrep":
        # odd dims and multiples of 4 never collide, so dim names the irrep
        if d >= 1 and d % 2 == 1:
            return cls(ODD, (d - 1) // 2)
        if d >= 4 and d % 4 == 0:
            return cls(QUAT, d // 4)
        raise ValueError(f"no irreducible real SU(2) representation of dimension {d}")

    def __str__(self):
        return f"{'Odd' if self.kind == ODD else 'Quat'}({self.n})"


def m_value(r: Su2Irrep) -> int:
    """Pontryagin weight of an irrep: the sum of squared circle weights.

    Odd(n): 2^2 + 4^2 + ... + (2n)^2 = n(2n+1)(2n+2)/3.
    Quat(n): 2(1^2 + 3^2 + ... + (2n-1)^2) = (2n-1)2n(2n+1)/3.
    """
    n = r.n
    num = n * (2 * n + 1) * (2 * n + 2) if r.kind == ODD else (2 * n - 1) * 2 * n * (2 * n + 1)
    assert num % 3 == 0
    return num // 3


@dataclass(frozen=True)
class RepDecomposition:
    """A multiset of irreps, stored sorted by decreasing dimension."""
    parts: tuple[Su2Irrep, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted(self.parts, key=lambda r: -r.dim)))

    @classmethod
    def from_dims(cls, dims) -> "RepDecomposition":
        return cls(tuple(Su2Irrep.from_dim(int(d)) for d in dims))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(r.dim for r in self.parts)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def m_sum(self) -> int:
        return sum(m_value(r) for r in self.parts)

    def __str__(self):
        return "{" + ", ".join(str(r) for r in self.parts) + "}"


@dataclass(frozen=True)
class Cp2So3LiftDiagram:
    p_minus: int
    p_plus: int


@dataclass(frozen=True)
class SpinLiftDiagram:
    p_minus_star: int
    p_plus_star: int


@dataclass(frozen=True)
class FixedPointDiagram:
    k: int
    phi_minus: RepDecomposition
    q: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(int(x) for x in self.q))


@dataclass(frozen=True)
class SuspensionDiagram:
    k: int
    reps_minus: RepDecomposition
    reps_plus: RepDecomposition


Diagram = Union[Cp2So3LiftDiagram, SpinLiftDiagram, FixedPointDiagram, SuspensionDiagram]


def check_consistency(d: Diagram, primitive_weights: bool = True) -> list[str]:
    """Violated consistency conditions of a diagram (empty when consistent).

    ``primitive_weights`` asks that the circle weights q of a fixed-point
    diagram be relatively prime when there are at least two of them.  The
    invariant maps and the lift search do not impose it: plane bundles such
    as L(2) + R^3 over CP2 carry lifts whose weights are (2, 0).
    """
    out = []
    if isinstance(d, Cp2So3LiftDiagram):
        if d.p_minus % 2:
            out.append(f"p_minus = {d.p_minus} must be even")
        if d.p_plus % 4 != 2:
            out.append(f"p_plus = {d.p_plus} must be 2 mod 4 (is {d.p_plus % 4})")
    elif isinstance(d, SpinLiftDiagram):
        if d.p_minus_star % 2 == 0:
            out.append(f"p_minus_star = {d.p_minus_star} must be odd")
        if d.p_plus_star % 2 == 0:
            out.append(f"p_plus_star = {d.p_plus_star} must be odd")
    elif isinstance(d, FixedPointDiagram):
        if d.phi_minus.total_dim != d.k:
            out.append(f"phi_minus has dimension {d.phi_minus.total_dim}, expected k = {d.k}")
        r = d.k // 2
        if len(d.q) != r:
            out.append(f"q needs floor(k/2) = {r} weights, got {len(d.q)}")
        elif primitive_weights and r >= 2 and math.gcd(*d.q) != 1:
            out.append(f"weights q = {list(d.q)} are not relatively prime")
    elif isinstance(d, SuspensionDiagram):
        for label, rep in (("reps_minus", d.reps_minus), ("reps_plus", d.reps_plus)):
            if rep.total_dim != d.k:
                out.append(f"{label} has dimension {rep.total_dim}, expected k = {d.k}")
    else:
        raise TypeError(f"not a diagram: {d!r}")
    return out


def _require(d: Diagram) -> None:
    problems = check_consistency(d, primitive_weights=False)
    if problems:
        raise DiagramError("inconsistent diagram: " + "; ".join(problems))


def cp2_so3_invariants(d: Cp2So3LiftDiagram) -> BundleInvariants:
    """SO(3) bundle over CP2 of the diagram: p1 = (p+^2 - p-^2)/4,
    spin exactly when p- = 2 mod 4."""
    _require(d)
    w2 = (1,) if d.p_minus % 4 == 0 else (0,)
    return BundleInvariants(3, w2, (d.p_plus ** 2 - d.p_minus ** 2) // 4)


def spin_cover(d: Cp2So3LiftDiagram) -> SpinLiftDiagram:
    _require(d)
    if d.p_minus % 4 != 2:
        raise DiagramError(f"p_minus = {d.p_minus} is not 2 mod 4: the bundle is not spin")
    return SpinLiftDiagram(d.p_minus // 2, d.p_plus // 2)


def s4_so3_p1(d: SpinLiftDiagram) -> int:
    """p1 of the SO(3) bundle over S4 of a spin diagram: ((p+*)^2 - (p-*)^2)/2."""
    _require(d)
    return (d.p_plus_star ** 2 - d.p_minus_star ** 2) // 2


@dataclass(frozen=True)
class FixedPointInvariants:
    p1_set: frozenset[int]
    w2_nonzero: int
    magnitude: int
    anomaly: str | None = None


def fixed_point_invariants(d: FixedPointDiagram) -> FixedPointInvariants:
    """p1 = +-(sum q_i^2 - sum m_i) and w2 = sum q_i mod 2.

    For k = 3 with w2 != 0 the sign is pinned by p1 = 1 mod 4.  For k = 3,
    w2 = 0 both signs occur (reverse the orientation of the spin cover).  For
    k >= 5 the sign is genuinely unknown and both candidates are returned.
    """
    if d.k == 4:
        raise DiagramError("k = 4 is handled through the SO(3) pair, not directly")
    if d.k < 3:
        raise DiagramError(f"fixed point diagrams need k = 3 or k >= 5, got {d.k}")
    _require(d)
    mag = abs(sum(x * x for x in d.q) - d.phi_minus.m_sum)
    w2 = sum(d.q) % 2
    both = frozenset({mag, -mag})
    if d.k == 3 and w2:
        keep = frozenset(v for v in both if v % 4 == 1)
        if not keep:
            return FixedPointInvariants(keep, w2, mag,
                                        anomaly=f"|p1| = {mag} has no sign that is 1 mod 4")
        return FixedPointInvariants(keep, w2, mag)
    return FixedPointInvariants(both, w2, mag)


def suspension_invariants(d: SuspensionDiagram) -> frozenset[int]:
    if d.k == 4:
        raise DiagramError("k = 4 is handled through the SO(3) pair, not directly")
    _require(d)
    diff = d.reps_minus.m_sum - d.reps_plus.m_sum
    return frozenset({diff, -diff})


_memo_lock = Lock()


@lru_cache(maxsize=None)
def _partitions(k: int, largest: int) -> tuple[tuple[int, ...], ...]:
    # partitions of k into allowed irrep dimensions <= largest, parts decreasing,
    # listed in reverse lexicographic order
    if k == 0:
        return ((),)
    out = []
    for d in range(min(k, largest), 0, -1):
        if d % 2 == 1 or d % 4 == 0:
            out.extend((d,) + rest for rest in _partitions(k - d, d))
    return tuple(out)


def enumerate_decompositions(k: int) -> list[RepDecomposition]:
    """All SU(2) representations of real dimension k, largest parts first."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    with _memo_lock:
        parts = _partitions(k, k)
    return [RepDecomposition.from_dims(p) for p in parts]


def m_sums(k: int) -> list[int]:
    """Distinct values of sum m_i over representations of dimension k."""
    return sorted({d.m_sum for d in enumerate_decompositions(k)})


def canonical_q(q) -> tuple[int, ...]:
    """Weyl-group normal form of circle weights: absolute values, ascending."""
    return tuple(sorted(abs(int(x)) for x in q))


def sums_of_squares(target: int, r: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing nonnegative r-tuples whose squares sum to ``target``."""
    if target < 0 or r < 0:
        return

    def rec(rem, r_left, lo):
        if r_left == 0:
            if rem == 0:
                yield ()
            return
        x = lo
        while r_left * x * x <= rem:
            for tail in rec(rem - x * x, r_left - 1, x):
                yield (x,) + tail
            x += 1

    yield from rec(target, r, 0)
