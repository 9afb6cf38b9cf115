"""The closed simply connected 4-manifolds and their intersection forms.

Second cohomology classes are plain integer tuples written in a fixed basis
of H^2(M; Z); mod-2 classes are tuples of bits in the same basis.  The
orientation of every manifold is fixed so that the intersection form is
exactly the one stored here (for CP2 the fundamental class is the square of
a generator).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

from .errors import InvalidClassError

H2Class = tuple[int, ...]
W2Class = tuple[int, ...]


class ManifoldId(str, Enum):
    S4 = "S4"
    CP2 = "CP2"
    S2xS2 = "S2xS2"
    CP2_PLUS_CP2 = "CP2+CP2"
    CP2_MINUS_CP2 = "CP2-CP2"


@dataclass(frozen=True)
class BaseManifold:
    id: ManifoldId
    form: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.form)
        if any(len(row) != n for row in self.form):
            raise ValueError("intersection form must be square")
        for i in range(n):
            for j in range(n):
                if self.form[i][j] != self.form[j][i]:
                    raise ValueError("intersection form must be symmetric")
        if n and abs(_det(self.form)) != 1:
            raise ValueError("intersection form must be unimodular")

    @property
    def b2(self) -> int:
        return len(self.form)

    @property
    def name(self) -> str:
        return self.id.value

    @property
    def definite(self) -> bool:
        """True when every nonzero class has positive square."""
        return self.id in (ManifoldId.CP2, ManifoldId.CP2_PLUS_CP2)

    def __str__(self) -> str:
        return self.id.value


def _det(m) -> int:
    if len(m) == 1:
        return m[0][0]
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


S4 = BaseManifold(ManifoldId.S4, ())
CP2 = BaseManifold(ManifoldId.CP2, ((1,),))
S2xS2 = BaseManifold(ManifoldId.S2xS2, ((0, 1), (1, 0)))
CP2_PLUS_CP2 = BaseManifold(ManifoldId.CP2_PLUS_CP2, ((1, 0), (0, 1)))
CP2_MINUS_CP2 = BaseManifold(ManifoldId.CP2_MINUS_CP2, ((1, 0), (0, -1)))

MANIFOLDS: dict[ManifoldId, BaseManifold] = {
    m.id: m for m in (S4, CP2, S2xS2, CP2_PLUS_CP2, CP2_MINUS_CP2)
}


def get_manifold(key: Union[str, ManifoldId, BaseManifold]) -> BaseManifold:
    """Look up a manifold by id or by its serialized name ("CP2-CP2", ...)."""
    if isinstance(key, BaseManifold):
        return key
    try:
        return MANIFOLDS[ManifoldId(key)]
    except ValueError:
        raise KeyError(f"unknown manifold {key!r}; expected one of "
                       f"{', '.join(m.value for m in ManifoldId)}") from None


def _check(M: BaseManifold, v: Sequence[int], what: str = "class") -> tuple[int, ...]:
    v = tuple(int(x) for x in v)
    if len(v) != M.b2:
        raise InvalidClassError(
            f"{what} {list(v)} has length {len(v)}, but b2({M}) = {M.b2}")
    return v


def as_h2(M: BaseManifold, e: Sequence[int]) -> H2Class:
    return _check(M, e)


def as_w2(M: BaseManifold, w: Sequence[int]) -> W2Class:
    w = _check(M, w, "w2")
    if any(b not in (0, 1) for b in w):
        raise InvalidClassError(f"w2 entries must be bits, got {list(w)}")
    return w


def pairing(M: BaseManifold, e: Sequence[int], f: Sequence[int]) -> int:
    """Cup product e.f evaluated on the fundamental class."""
    e, f = _check(M, e), _check(M, f)
    return sum(e[i] * M.form[i][j] * f[j]
               for i in range(M.b2) for j in range(M.b2))


def square(M: BaseManifold, e: Sequence[int]) -> int:
    """e^2[M] = e^T Q e for the intersection form Q."""
    return pairing(M, e, e)


def mod2(M: BaseManifold, e: Sequence[int]) -> W2Class:
    return tuple(x % 2 for x in _check(M, e))


def residue_mod4(M: BaseManifold, w2: Sequence[int]) -> int:
    """e^2 mod 4 for any integral lift e of ``w2``.

    Well defined since (e + 2f)^2 = e^2 + 4(e.f + f^2).
    """
    return square(M, as_w2(M, w2)) % 4


def is_zero(w: Sequence[int]) -> bool:
    return not any(w)
