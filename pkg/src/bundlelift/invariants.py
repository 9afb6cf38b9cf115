"""Characteristic-class data classifying principal SO(k) bundles.

Over a closed simply connected 4-manifold a principal SO(k) bundle is
determined by

* k = 2: the Euler class e in H^2(M; Z);
* k = 3: w2 and the integer p1;
* k = 4: w2, p1 and the integer Euler number e;
* k >= 5: w2, w4 and p1.

The invariants *are* the bundle here: two equal ``BundleInvariants`` values
describe isomorphic bundles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import InvalidBundleError
from .manifolds import (
    CP2,
    S4,
    BaseManifold,
    H2Class,
    W2Class,
    as_h2,
    is_zero,
    mod2,
    residue_mod4,
    square,
)

INFINITE = math.inf


@dataclass(frozen=True)
class BundleInvariants:
    k: int
    w2: W2Class
    p1: int
    euler: Union[int, H2Class, None] = None
    w4: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "w2", tuple(int(b) for b in self.w2))
        if isinstance(self.euler, (list, tuple)):
            object.__setattr__(self, "euler", tuple(int(x) for x in self.euler))

    @property
    def spin(self) -> bool:
        return is_zero(self.w2)

    def to_json(self) -> dict:
        out = {"k": self.k, "w2": list(self.w2), "p1": self.p1}
        if self.euler is not None:
            out["e"] = list(self.euler) if isinstance(self.euler, tuple) else self.euler
        if self.w4 is not None:
            out["w4"] = self.w4
        return out

    @classmethod
    def from_json(cls, data: dict) -> "BundleInvariants":
        e = data.get("e")
        return cls(k=int(data["k"]), w2=tuple(data.get("w2", ())), p1=int(data.get("p1", 0)),
                   euler=tuple(e) if isinstance(e, list) else e, w4=data.get("w4"))


@dataclass(frozen=True)
class ChernData:
    """Chern classes of a complex rank-2 bundle."""
    c1: H2Class
    c2: int


def so2_bundle(M: BaseManifold, e: Sequence[int]) -> BundleInvariants:
    """The circle bundle with Euler class ``e``, with its derived w2 and p1."""
    e = as_h2(M, e)
    return BundleInvariants(k=2, w2=mod2(M, e), p1=square(M, e), euler=e)


def table_a(p1: int) -> tuple[int, int]:
    """(w2 != 0, w4 != 0) forced by p1 mod 4 for k >= 5 over S4 or CP2."""
    r = p1 % 4
    return (r % 2, 1 if r in (2, 3) else 0)


def validate(M: BaseManifold, B: BundleInvariants) -> list[str]:
    """Every violated realizability condition; empty means B names a bundle."""
    out: list[str] = []
    if B.k < 2:
        return [f"structure group SO({B.k}) is not supported (k >= 2)"]
    if len(B.w2) != M.b2:
        return [f"w2 has length {len(B.w2)}, expected b2 = {M.b2}"]
    if any(b not in (0, 1) for b in B.w2):
        return ["w2 entries must be bits"]
    r = residue_mod4(M, B.w2)

    if B.k == 2:
        if not isinstance(B.euler, tuple) or len(B.euler) != M.b2:
            return [f"SO(2) bundles need an Euler class in H^2 of length {M.b2}"]
        if mod2(M, B.euler) != B.w2:
            out.append("w2 is not the mod 2 reduction of the Euler class")
        if square(M, B.euler) != B.p1:
            out.append(f"p1 = {B.p1} differs from e^2 = {square(M, B.euler)}")
        if B.w4 is not None:
            out.append("w4 is only part of the data for k >= 5")
        return out

    if B.k >= 5:
        if B.euler is not None:
            out.append("the Euler class is only part of the data for k = 2, 4")
        if B.w4 not in (0, 1):
            out.append("k >= 5 needs a w4 bit")
            return out
    elif B.w4 is not None:
        out.append("w4 is only part of the data for k >= 5")

    if B.k == 3:
        if B.euler is not None:
            out.append("the Euler class is only part of the data for k = 2, 4")
        if B.p1 % 4 != r:
            out.append(f"p1 = {B.p1} is {B.p1 % 4} mod 4, but w2 forces {r} mod 4")
    elif B.k == 4:
        if not isinstance(B.euler, int) or isinstance(B.euler, bool):
            out.append("SO(4) bundles need an integer Euler number")
            return out
        for sign, label in ((1, "P+"), (-1, "P-")):
            q = B.p1 + sign * 2 * B.euler
            if q % 4 != r:
                out.append(f"p1({label}) = {q} is {q % 4} mod 4, but w2 forces {r} mod 4")
    elif M in (S4, CP2):
        w2_bit, w4_bit = table_a(B.p1)
        if w2_bit != int(not B.spin) or w4_bit != B.w4:
            out.append(f"p1 = {B.p1} forces (w2 != 0, w4 != 0) = ({w2_bit}, {w4_bit})")
    elif _so4_reduction_euler(M, B) is None:
        out.append(f"no SO(4) bundle with w2 = {list(B.w2)}, p1 = {B.p1} has w4 = {B.w4}")
    return out


def _so4_reduction_euler(M: BaseManifold, B: BundleInvariants) -> Optional[int]:
    # every k-plane bundle over a 4-complex splits off a trivial summand down
    # to rank 4, and w4 = e mod 2 there
    bound = abs(B.p1) // 2 + 2
    for e in sorted(range(-bound, bound + 1), key=lambda x: (abs(x), x)):
        if e % 2 != B.w4:
            continue
        if not validate(M, BundleInvariants(4, B.w2, B.p1, euler=e)):
            return e
    return None


def require_valid(M: BaseManifold, B: BundleInvariants) -> None:
    problems = validate(M, B)
    if problems:
        raise InvalidBundleError(f"invalid SO({B.k}) bundle over {M}: " + "; ".join(problems))


def pair_from_so4(M: BaseManifold, B: BundleInvariants) -> tuple[BundleInvariants, BundleInvariants]:
    """(P-, P+): the SO(3) bundles of the anti-self-dual and self-dual 2-forms.

    p1(P+-) = p1(P) +- 2 e(P) and both share w2(P).
    """
    if B.k != 4:
        raise InvalidBundleError(f"expected an SO(4) bundle, got k = {B.k}")
    require_valid(M, B)
    minus = BundleInvariants(3, B.w2, B.p1 - 2 * B.euler)
    plus = BundleInvariants(3, B.w2, B.p1 + 2 * B.euler)
    return minus, plus


def so4_from_pair(M: BaseManifold, P_minus: BundleInvariants,
                  P_plus: BundleInvariants) -> BundleInvariants:
    """The unique SO(4) bundle with the given SO(3) quotients."""
    for P in (P_minus, P_plus):
        if P.k != 3:
            raise InvalidBundleError(f"expected SO(3) bundles, got k = {P.k}")
        require_valid(M, P)
    if P_minus.w2 != P_plus.w2:
        raise InvalidBundleError(
            f"no SO(4) bundle: w2(P-) = {list(P_minus.w2)} != w2(P+) = {list(P_plus.w2)}")
    diff = P_plus.p1 - P_minus.p1
    assert diff % 4 == 0, "equal w2 forces equal p1 mod 4"
    return BundleInvariants(4, P_plus.w2, (P_plus.p1 + P_minus.p1) // 2, euler=diff // 4)


def so4_from_chern(M: BaseManifold, C: ChernData) -> BundleInvariants:
    """Underlying SO(4) bundle of a complex rank-2 bundle: p1 = c1^2 - 2 c2, e = c2."""
    c1 = as_h2(M, C.c1)
    return BundleInvariants(4, mod2(M, c1), square(M, c1) - 2 * C.c2, euler=C.c2)


def discriminant(M: BaseManifold, C: ChernData) -> int:
    return square(M, as_h2(M, C.c1)) - 4 * C.c2


def stabilize(M: BaseManifold, B: BundleInvariants, k: int = 5) -> BundleInvariants:
    """Add a trivial summand to an SO(4) bundle: w4 becomes e mod 2."""
    if k < 5:
        raise ValueError(f"stabilization targets k >= 5, got {k}")
    if B.k != 4:
        raise InvalidBundleError(f"expected an SO(4) bundle, got k = {B.k}")
    require_valid(M, B)
    return BundleInvariants(k, B.w2, B.p1, w4=B.euler % 2)


def h4_order(M: BaseManifold, B: BundleInvariants) -> Union[int, float]:
    """|H^4(P; Z)| of the total space; ``INFINITE`` when p1 = 0."""
    if B.k == 4 or B.k < 3:
        raise ValueError(f"|H^4(P)| is only determined here for k = 3 or k >= 5, got {B.k}")
    s = abs(B.p1)
    if s == 0:
        return INFINITE
    if B.k == 3:
        # over S4 (b2 = 0) p1 is divisible by 4, so this stays integral
        num = s << M.b2
        assert num % 2 == 0
        return num // 2
    return s << M.b2
