"""Commuting-lift and torus-reduction decisions.

``decide_lift`` answers whether a cohomogeneity one action on the base lifts
to a principal SO(k) bundle so that it commutes with SO(k).  Every positive
answer carries a witness (group-diagram parameters or a splitting into plane
bundles) that ``check_witness`` re-derives independently.

The rank-4 case is always reduced to the two SO(3) bundles P- and P+; a lift
to P exists iff lifts to both exist.  For k >= 5 a lift to any SO(4)
reduction of P extends to P by the trivial summand.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from . import _kernels
from .diagrams import (
    Cp2So3LiftDiagram,
    FixedPointDiagram,
    RepDecomposition,
    SpinLiftDiagram,
    SuspensionDiagram,
    check_consistency,
    cp2_so3_invariants,
    enumerate_decompositions,
    fixed_point_invariants,
    s4_so3_p1,
    sums_of_squares,
    suspension_invariants,
)
from .errors import ActionError, DiagramError, InvalidBundleError
from .invariants import BundleInvariants, pair_from_so4, require_valid, validate
from .manifolds import (
    CP2,
    CP2_MINUS_CP2,
    CP2_PLUS_CP2,
    S2xS2,
    S4,
    BaseManifold,
    get_manifold,
    mod2,
    pairing,
    square,
)


class Answer(str, Enum):
    YES = "Yes"
    NO = "No"
    AMBIGUOUS = "AmbiguousSign"


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    witness: Optional[dict] = None
    reason: str = ""

    def __post_init__(self):
        if self.answer is Answer.YES and self.witness is None:
            raise ValueError("a Yes verdict needs a witness")
        if self.answer is not Answer.YES and not self.reason:
            raise ValueError("a negative or ambiguous verdict needs a reason")

    def __bool__(self):
        return self.answer is Answer.YES

    def to_json(self) -> dict:
        out = {"answer": self.answer.value}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason:
            out["reason"] = self.reason
        return out


def _yes(witness: dict, reason: str = "") -> Verdict:
    return Verdict(Answer.YES, witness, reason)


def _no(reason: str) -> Verdict:
    return Verdict(Answer.NO, None, reason)


class ActionKind(str, Enum):
    CP2_SO3 = "cp2-so3"
    CP2_SU2_FIX = "cp2-fix"
    S4_SO3 = "s4-so3"
    S4_SUSPENSION = "s4-suspension"
    S4_SUM_SO2SO3 = "s4-sum"
    MN = "mn"
    S2XS2_PRODUCT = "s2xs2-product"


@dataclass(frozen=True)
class Action:
    """A cohomogeneity one action; ``n`` is the isotropy order Z_n for MN."""
    kind: ActionKind
    n: Optional[int] = None

    def __post_init__(self):
        if self.kind is ActionKind.MN:
            if self.n is None or self.n < 1:
                raise ActionError("the MN family needs n >= 1")
        elif self.n is not None:
            raise ActionError(f"{self.kind.value} takes no parameter n")

    @property
    def base(self) -> BaseManifold:
        if self.kind in (ActionKind.CP2_SO3, ActionKind.CP2_SU2_FIX):
            return CP2
        if self.kind in (ActionKind.S4_SO3, ActionKind.S4_SUSPENSION, ActionKind.S4_SUM_SO2SO3):
            return S4
        if self.kind is ActionKind.MN:
            return S2xS2 if self.n % 2 == 0 else CP2_MINUS_CP2
        return S2xS2

    @classmethod
    def parse(cls, name: str, n: Optional[int] = None) -> "Action":
        try:
            kind = ActionKind(name)
        except ValueError:
            raise ActionError(f"unknown action {name!r}; expected one of "
                              f"{', '.join(a.value for a in ActionKind)}") from None
        return cls(kind, n)

    def __str__(self):
        return f"mn({self.n})" if self.kind is ActionKind.MN else self.kind.value


CP2_SO3 = Action(ActionKind.CP2_SO3)
CP2_SU2_FIX = Action(ActionKind.CP2_SU2_FIX)
S4_SO3 = Action(ActionKind.S4_SO3)
S4_SUSPENSION = Action(ActionKind.S4_SUSPENSION)
S4_SUM_SO2SO3 = Action(ActionKind.S4_SUM_SO2SO3)
S2XS2_PRODUCT = Action(ActionKind.S2XS2_PRODUCT)


def mn(n: int) -> Action:
    return Action(ActionKind.MN, n)


# ---------------------------------------------------------------------------
# search bounds

def default_max_coord(p1: int) -> int:
    """Coordinate bound for plane-bundle searches.

    Over the indefinite bases the certificates have coordinates near |p1|/2
    (e.g. (p1/2, 1) on S2xS2), so a square-root bound is not enough.
    ``BUNDLELIFT_MAX_COORD`` overrides this with a fixed value.
    """
    env = os.environ.get("BUNDLELIFT_MAX_COORD")
    if env:
        return int(env)
    return abs(p1) // 2 + 3


def cp2_so3_bound(p1: int) -> int:
    # the non-spin family with s = 0 needs p+ = |p1 - 1| + ... <= |p1| + 1 and
    # the spin family 8m -> (4|m| - 2, 4|m| + 2) stays below |p1|/2 + 2
    env = os.environ.get("BUNDLELIFT_MAX_DIAGRAM")
    if env:
        return int(env)
    return 2 * abs(p1) + 6


# ---------------------------------------------------------------------------
# torus reduction

def _torus_witness(classes) -> dict:
    return {"type": "torus", "euler_classes": [list(c) for c in classes]}


def _torus_rank_cap(M: BaseManifold) -> int:
    # more plane summands never help beyond: everything vanishes on S4,
    # four squares represent every n >= 0 over CP2, and three plane
    # bundles already give every bundle over the indefinite bases
    if M.b2 == 0:
        return 1
    if M.b2 == 1:
        return 4
    if M.definite:
        # no closed form here; four classes already carry eight squares
        return 4
    return 3


@lru_cache(maxsize=256)
def _square_set(form, parity, bound) -> np.ndarray:
    return _kernels.square_values(form, parity, bound)


def _bits(M: BaseManifold) -> list[tuple[int, ...]]:
    return list(itertools.product((0, 1), repeat=M.b2))


def _add2(a, b):
    return tuple((x + y) % 2 for x, y in zip(a, b))


def _two_sum(M, pa, pb, target, bound):
    Sa = _square_set(M.form, pa, bound)
    Sb = _square_set(M.form, pb, bound)
    hit = Sa[np.isin(target - Sa, Sb, assume_unique=False)]
    if hit.size == 0:
        return None
    x = int(min(hit.tolist(), key=lambda v: (abs(v), v)))
    e1 = _kernels.class_search(M.form, pa, x, bound)
    e2 = _kernels.class_search(M.form, pb, target - x, bound)
    return [e1, e2]


def _small_classes(M, parity, radius):
    rng = range(-radius, radius + 1)
    out = [e for e in itertools.product(rng, repeat=M.b2)
           if tuple(x % 2 for x in e) == tuple(parity)]
    return sorted(out, key=lambda e: (max((abs(x) for x in e), default=0), e))


def _sum_search(M, parities, target, bound, outer_radius):
    """Classes e_i = parities[i] mod 2 in the box with sum e_i^2 = target."""
    j = len(parities)
    if j == 1:
        e = _kernels.class_search(M.form, parities[0], target, bound)
        return None if e is None else [e]
    if j == 2:
        return _two_sum(M, parities[0], parities[1], target, bound)
    for e in _small_classes(M, parities[-1], min(outer_radius, bound)):
        rest = _sum_search(M, parities[:-1], target - square(M, e), bound, outer_radius)
        if rest is not None:
            return rest + [e]
    return None


def _w4_of(M, parities) -> int:
    return sum(pairing(M, a, b) for a, b in itertools.combinations(parities, 2)) % 2


def _search_reduction(M: BaseManifold, B: BundleInvariants, bound: int) -> Optional[list]:
    if B.k == 2:
        return [B.euler]
    if B.k == 3:
        e = _kernels.class_search(M.form, B.w2, B.p1, bound)
        return None if e is None else [e]
    if B.k == 4:
        minus, plus = pair_from_so4(M, B)
        fm = _kernels.class_search(M.form, B.w2, minus.p1, bound)
        fp = _kernels.class_search(M.form, B.w2, plus.p1, bound)
        if fm is None or fp is None:
            return None
        return [tuple((a + b) // 2 for a, b in zip(fp, fm)),
                tuple((a - b) // 2 for a, b in zip(fp, fm))]
    # over a definite form every summand has square <= p1, so the full box
    # is exhaustive; on the indefinite bases small outer classes suffice
    outer = bound if M.definite else 2
    for j in range(1, min(B.k // 2, _torus_rank_cap(M)) + 1):
        for head in itertools.product(_bits(M), repeat=j - 1):
            last = tuple(B.w2)
            for a in head:
                last = _add2(last, a)
            parities = list(head) + [last]
            if _w4_of(M, parities) != B.w4:
                continue
            found = _sum_search(M, parities, B.p1, bound, outer)
            if found is not None:
                return found
    return None


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _sum_of_two_squares(n: int) -> bool:
    if n < 0:
        return False
    if n == 0:
        return True
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            c = 0
            while m % p == 0:
                m //= p
                c += 1
            if p % 4 == 3 and c % 2:
                return False
        p += 1
    return m % 4 != 3


def _sum_of_three_squares(n: int) -> bool:
    if n < 0:
        return False
    while n and n % 4 == 0:
        n //= 4
    return n % 8 != 7


def _rank3_rule(M: BaseManifold, w2, p1: int) -> tuple[bool, str]:
    spin = not any(w2)
    if M.b2 == 0:
        return p1 == 0, "every plane bundle over S4 is trivial, so p1 must vanish"
    if M.b2 == 1:
        return _is_square(p1), f"p1={p1} is not a perfect square"
    if M is S2xS2:
        if spin and p1 % 8 == 4:
            return False, "w2=0 and p1=4 mod 8"
        return True, ""
    if spin and p1 % 16 == 8:
        return False, "w2=0 and p1=8 mod 16"
    if tuple(w2) == (1, 1) and p1 % 8 == 4:
        return False, "w2=(1,1) and p1=4 mod 8"
    return True, ""


def _congruence_rule(M: BaseManifold, B: BundleInvariants) -> tuple[bool, str]:
    """Closed-form torus reducibility, independent of any search."""
    if B.k == 2:
        return True, ""
    if B.k == 3:
        return _rank3_rule(M, B.w2, B.p1)
    if B.k == 4:
        minus, plus = pair_from_so4(M, B)
        for P, label in ((minus, "P-"), (plus, "P+")):
            ok, why = _rank3_rule(M, P.w2, P.p1)
            if not ok:
                return False, f"{label} has no SO(2) reduction: {why}"
        return True, ""
    if M.b2 == 0:
        return B.p1 == 0, "every plane bundle over S4 is trivial, so p1 must vanish"
    if M.b2 == 1:
        j = B.k // 2
        if j == 2:
            return _sum_of_two_squares(B.p1), f"p1={B.p1} is not a sum of two squares"
        if j == 3:
            return _sum_of_three_squares(B.p1), f"p1={B.p1} is not a sum of three squares"
        return B.p1 >= 0, f"p1={B.p1} is negative"
    if B.k == 5 and B.p1 % 4 == 2:
        if M is S2xS2 and B.spin:
            return False, "k=5, w2=0 and p1=2 mod 4 need three plane summands"
        if M is CP2_MINUS_CP2 and tuple(B.w2) == (1, 1):
            return False, "k=5, w2=(1,1) and p1=2 mod 4 need three plane summands"
    return True, ""


def torus_reduction(M, B: BundleInvariants, max_coord: Optional[int] = None,
                    use_congruence: bool = True) -> Verdict:
    """Decide whether the structure group of B reduces to a maximal torus.

    A reduction splits the bundle into plane bundles with Euler classes
    e_1, ..., e_j (j <= k/2), so w2 = sum e_i mod 2, p1 = sum e_i^2,
    e = e_1 e_2 when k = 4, and w4 = sum_{i<l} e_i e_l mod 2 when k >= 5.

    With ``use_congruence`` the answer comes from the closed-form congruence
    conditions and the search only supplies the certificate.  Without it the
    answer is whatever the bounded search finds.
    """
    M = get_manifold(M)
    require_valid(M, B)
    # for k = 4 the search runs on P+- whose p1 is p1 +- 2e
    size = abs(B.p1) + 2 * abs(B.euler) if B.k == 4 else abs(B.p1)
    bound = default_max_coord(size) if max_coord is None else int(max_coord)
    if M is CP2_PLUS_CP2 and max_coord is None:
        # no congruence rule is known here, but the form is definite, so a
        # box of radius sqrt|p1| is exhaustive and the search decides
        bound = math.isqrt(size) + 1
        use_congruence = False
    if not use_congruence:
        found = _search_reduction(M, B, bound)
        if found is None:
            return _no(f"no torus reduction with coordinates <= {bound}")
        return _yes(_torus_witness(found))
    ok, why = _congruence_rule(M, B)
    if not ok:
        return _no(why)
    found = _search_reduction(M, B, bound)
    if found is None:
        found = _search_reduction(M, B, max(2 * size + 8, bound))
    if found is None:  # pragma: no cover - would contradict the congruence rule
        raise RuntimeError(f"congruence rule promised a torus reduction of {B} over {M}")
    return _yes(_torus_witness(found))


# ---------------------------------------------------------------------------
# per-action rank-3 rules

def _cp2_so3_rank3(B: BundleInvariants) -> Verdict:
    if not B.spin or B.p1 % 8 == 0:
        hit = _kernels.cp2_so3_witness(B.p1, B.spin, cp2_so3_bound(B.p1))
        if hit is None:  # pragma: no cover - the bound is provably large enough
            raise RuntimeError(f"no diagram found for p1={B.p1}")
        return _yes({"type": "cp2-so3-diagram", "p_minus": hit[0], "p_plus": hit[1]})
    r = math.isqrt(B.p1 // 4) if B.p1 > 0 else 0
    if B.p1 > 0 and 4 * r * r == B.p1:
        return _yes(_torus_witness([(2 * r,)]))
    return _no("p1=4 mod 8, not 4r^2")


def fix_rank3_values(q_max: int) -> set[int]:
    """The p1 values q^2 and +-(q^2 - 4) for 0 <= q <= q_max."""
    out = set()
    for q in range(q_max + 1):
        out.update({q * q, q * q - 4, 4 - q * q})
    return out


def _fix_rank3_witness(p1: int) -> Optional[dict]:
    q_max = math.isqrt(abs(p1) + 4)
    for q in range(q_max + 1):
        for dims, vals in (((1, 1, 1), (q * q,)), ((3,), (q * q - 4, 4 - q * q))):
            if p1 in vals:
                d = FixedPointDiagram(3, RepDecomposition.from_dims(dims), (q,))
                inv = fixed_point_invariants(d)
                if p1 in inv.p1_set:
                    return {"type": "fixed-point", "k": 3, "reps": list(dims), "q": [q]}
    return None


def _cp2_fix_rank3(B: BundleInvariants) -> Verdict:
    w = _fix_rank3_witness(B.p1)
    if w is None:
        return _no(f"p1={B.p1} is neither q^2 nor +-(q^2-4)")
    return _yes(w)


def _s4_spin_diagram(p1: int) -> tuple[int, int]:
    # p1 = ((p+*)^2 - (p-*)^2) / 2 with both odd; p1 = 4d
    d = p1 // 4
    return (2 * d - 1, 2 * d + 1) if d > 0 else (2 * abs(d) + 1, 2 * abs(d) - 1) if d < 0 else (1, 1)


def _s4_so3_rank3(B: BundleInvariants) -> Verdict:
    pm, pp = _s4_spin_diagram(B.p1)
    return _yes({"type": "s4-spin-diagram", "p_minus_star": pm, "p_plus_star": pp})


def _s4_sum_rank3(B: BundleInvariants) -> Verdict:
    return _yes({"type": "brieskorn", "d": abs(B.p1) // 4})


@lru_cache(maxsize=None)
def _suspension_table(k: int) -> dict[int, tuple[tuple[int, ...], tuple[int, ...]]]:
    table: dict[int, tuple] = {}
    decs = enumerate_decompositions(k)
    for a in decs:
        for b in decs:
            diff = a.m_sum - b.m_sum
            table.setdefault(diff, (a.dims, b.dims))
    return table


def achievable_suspension_p1(k: int) -> frozenset[int]:
    """Every p1 of an SO(k) bundle over S4 with a lift of the suspension action."""
    if k == 4:
        raise DiagramError("k = 4 is decided through the SO(3) pair, not a p1 set")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return frozenset(_suspension_table(k))


def _suspension_direct(B: BundleInvariants) -> Verdict:
    hit = _suspension_table(B.k).get(B.p1)
    if hit is None:
        return _no(f"p1={B.p1} is not a difference of m-sums in dimension {B.k}")
    return _yes({"type": "suspension", "reps_minus": list(hit[0]), "reps_plus": list(hit[1])})


_RANK3 = {
    ActionKind.CP2_SO3: _cp2_so3_rank3,
    ActionKind.CP2_SU2_FIX: _cp2_fix_rank3,
    ActionKind.S4_SO3: _s4_so3_rank3,
    ActionKind.S4_SUM_SO2SO3: _s4_sum_rank3,
    ActionKind.S4_SUSPENSION: _suspension_direct,
}


def _pair_verdict(action: Action, M: BaseManifold, B: BundleInvariants) -> Verdict:
    minus, plus = pair_from_so4(M, B)
    vm = decide_lift(action, M, minus)
    vp = decide_lift(action, M, plus)
    if vm and vp:
        return _yes({"type": "so4-pair", "minus": vm.witness, "plus": vp.witness})
    bad = [f"{label}: {v.reason}" for label, v in (("P-", vm), ("P+", vp)) if not v]
    return _no("; ".join(bad))


def _so4_reduction(action: Action, M: BaseManifold, B: BundleInvariants,
                   bound: Optional[int] = None) -> Optional[dict]:
    """An SO(4) reduction of a k >= 5 bundle to which the action lifts."""
    if bound is None:
        bound = abs(B.p1) // 2 + 2
    for e in sorted(range(-bound, bound + 1), key=lambda x: (abs(x), -x)):
        if e % 2 != B.w4:
            continue
        R = BundleInvariants(4, B.w2, B.p1, euler=e)
        if validate(M, R):
            continue
        v = _pair_verdict(action, M, R)
        if v:
            return {"type": "so4-reduction", "euler": e,
                    "minus": v.witness["minus"], "plus": v.witness["plus"]}
    return None


def _fix_pair_values_witness(B: BundleInvariants) -> Optional[dict]:
    # search P+- in the rank-3 image directly: p1(P+) + p1(P-) = 2 p1, so
    # q is bounded by |p1| + 4 (sum or difference of two squares)
    vals = sorted(fix_rank3_values(abs(B.p1) + 4), key=lambda v: (abs(v), v))
    have = set(vals)
    for vp in vals:
        vm = 2 * B.p1 - vp
        if vm not in have or (vp - vm) % 4:
            continue
        e = (vp - vm) // 4
        if e % 2 != B.w4:
            continue
        R = BundleInvariants(4, B.w2, B.p1, euler=e)
        if validate(CP2, R):
            continue
        return {"type": "so4-reduction", "euler": e,
                "minus": _fix_rank3_witness(vm), "plus": _fix_rank3_witness(vp)}
    return None


def fixed_point_search(k: int, p1: int, w2_nonzero: int) -> Optional[dict]:
    """A fixed-point diagram of rank k whose candidate p1 set contains p1."""
    r = k // 2
    for dec in enumerate_decompositions(k):
        for sign in (1, -1):
            target = dec.m_sum + sign * abs(p1)
            if target < 0 or target % 2 != w2_nonzero:
                continue
            for q in sums_of_squares(target, r):
                d = FixedPointDiagram(k, dec, q)
                inv = fixed_point_invariants(d)
                if p1 in inv.p1_set and inv.w2_nonzero == w2_nonzero:
                    return {"type": "fixed-point", "k": k, "reps": list(dec.dims), "q": list(q),
                            "p1_set": sorted(inv.p1_set)}
    return None


def _cp2_fix_high(B: BundleInvariants) -> Verdict:
    t = torus_reduction(CP2, B)
    if t:
        return t
    w = _fix_pair_values_witness(B)
    if w is not None:
        return _yes(w)
    w = fixed_point_search(B.k, B.p1, int(not B.spin))
    if w is None:
        return _no(f"no fixed point diagram of rank {B.k} gives |p1|={abs(B.p1)}")
    if B.p1 == 0:
        return _yes(w)
    return Verdict(Answer.AMBIGUOUS, w,
                   f"p1 is realized only up to sign by reps {w['reps']}, q={w['q']}")


def decide_lift(action, M, B: BundleInvariants) -> Verdict:
    """Does ``action`` lift to the principal SO(k) bundle B over M?"""
    if isinstance(action, str):
        action = Action.parse(action)
    M = get_manifold(M)
    if M is CP2_PLUS_CP2:
        raise ActionError("CP2+CP2: no cohomogeneity one action")
    if action.base is not M:
        raise ActionError(f"action {action} acts on {action.base}, not on {M}")
    require_valid(M, B)

    if B.k == 2:
        return _yes(_torus_witness([B.euler]), "torus bundle")
    kind = action.kind
    if kind in (ActionKind.MN, ActionKind.S2XS2_PRODUCT):
        return torus_reduction(M, B)
    if B.k == 4:
        return _pair_verdict(action, M, B)
    if B.k == 3:
        return _RANK3[kind](B)
    if kind is ActionKind.S4_SUSPENSION:
        return _suspension_direct(B)
    if kind is ActionKind.CP2_SU2_FIX:
        return _cp2_fix_high(B)
    w = _so4_reduction(action, M, B)
    if w is None:  # pragma: no cover - these actions lift to every bundle
        raise RuntimeError(f"no liftable SO(4) reduction found for {B}")
    return _yes(w)


# ---------------------------------------------------------------------------
# independent witness checking

def _check_torus(M, B, w) -> list[str]:
    classes = [tuple(c) for c in w.get("euler_classes", [])]
    if any(len(c) != M.b2 for c in classes):
        return ["class length does not match b2"]
    if B.k == 2:
        return [] if classes == [tuple(B.euler)] else ["Euler class differs"]
    if not classes or len(classes) > B.k // 2:
        return [f"{len(classes)} plane summands do not fit in SO({B.k})"]
    out = []
    w2 = tuple(sum(c[i] for c in classes) % 2 for i in range(M.b2))
    if w2 != tuple(B.w2):
        out.append(f"w2 of the sum is {list(w2)}")
    p1 = sum(square(M, c) for c in classes)
    if p1 != B.p1:
        out.append(f"p1 of the sum is {p1}")
    if B.k == 4:
        e = pairing(M, classes[0], classes[1]) if len(classes) == 2 else 0
        if e != B.euler:
            out.append(f"Euler number of the sum is {e}")
    if B.k >= 5:
        w4 = sum(pairing(M, a, b) for a, b in itertools.combinations(classes, 2)) % 2
        if w4 != B.w4:
            out.append(f"w4 of the sum is {w4}")
    return out


def check_witness(action, M, B: BundleInvariants, witness: dict) -> list[str]:
    """Re-derive B from a witness; an empty list means the witness holds."""
    if isinstance(action, str):
        action = Action.parse(action)
    M = get_manifold(M)
    kind = witness.get("type")
    try:
        if kind == "torus":
            return _check_torus(M, B, witness)
        if kind == "so4-pair":
            if B.k != 4:
                return ["so4-pair witnesses are for k = 4"]
            minus, plus = pair_from_so4(M, B)
            return ([f"P-: {p}" for p in check_witness(action, M, minus, witness["minus"])]
                    + [f"P+: {p}" for p in check_witness(action, M, plus, witness["plus"])])
        if kind == "so4-reduction":
            if B.k < 5:
                return ["so4-reduction witnesses are for k >= 5"]
            R = BundleInvariants(4, B.w2, B.p1, euler=int(witness["euler"]))
            if R.euler % 2 != B.w4:
                return ["Euler number parity differs from w4"]
            bad = validate(M, R)
            if bad:
                return bad
            return check_witness(action, M, R, {"type": "so4-pair", "minus": witness["minus"],
                                                "plus": witness["plus"]})
        if kind == "cp2-so3-diagram":
            if action.kind is not ActionKind.CP2_SO3 or B.k != 3:
                return ["cp2-so3 diagrams describe SO(3) bundles for the CP2 SO(3) action"]
            inv = cp2_so3_invariants(Cp2So3LiftDiagram(int(witness["p_minus"]), int(witness["p_plus"])))
            return [] if (inv.w2, inv.p1) == (tuple(B.w2), B.p1) else [f"diagram gives {inv}"]
        if kind == "s4-spin-diagram":
            if action.kind is not ActionKind.S4_SO3 or B.k != 3:
                return ["spin diagrams describe SO(3) bundles for the S4 SO(3) action"]
            p1 = s4_so3_p1(SpinLiftDiagram(int(witness["p_minus_star"]), int(witness["p_plus_star"])))
            return [] if p1 == B.p1 else [f"diagram gives p1={p1}"]
        if kind == "brieskorn":
            if action.kind is not ActionKind.S4_SUM_SO2SO3 or B.k != 3:
                return ["Brieskorn witnesses are for SO(3) bundles and the sum action"]
            d = int(witness["d"])
            return [] if d >= 0 and abs(B.p1) == 4 * d else [f"Euler class {d} gives |p1|={4 * d}"]
        if kind == "suspension":
            if action.kind is not ActionKind.S4_SUSPENSION:
                return ["suspension witnesses are for the suspension action"]
            d = SuspensionDiagram(B.k, RepDecomposition.from_dims(witness["reps_minus"]),
                                  RepDecomposition.from_dims(witness["reps_plus"]))
            vals = suspension_invariants(d)
            return [] if B.p1 in vals else [f"diagram gives p1 in {sorted(vals)}"]
        if kind == "fixed-point":
            if action.kind is not ActionKind.CP2_SU2_FIX:
                return ["fixed-point witnesses are for the fixed-point SU(2) action"]
            d = FixedPointDiagram(B.k, RepDecomposition.from_dims(witness["reps"]), tuple(witness["q"]))
            problems = check_consistency(d, primitive_weights=False)
            if problems:
                return problems
            inv = fixed_point_invariants(d)
            out = []
            if B.p1 not in inv.p1_set:
                out.append(f"diagram gives p1 in {sorted(inv.p1_set)}")
            if inv.w2_nonzero != int(not B.spin):
                out.append("w2 parity differs")
            return out
    except (DiagramError, InvalidBundleError, KeyError, ValueError, TypeError) as exc:
        return [f"malformed witness: {exc}"]
    return [f"unknown witness type {kind!r}"]
