import itertools

import pytest
from hypothesis import given, strategies as st

from bundlelift.errors import InvalidClassError
from bundlelift.manifolds import (
    CP2,
    CP2_MINUS_CP2,
    CP2_PLUS_CP2,
    MANIFOLDS,
    S2xS2,
    S4,
    BaseManifold,
    ManifoldId,
    get_manifold,
    mod2,
    pairing,
    residue_mod4,
    square,
)

ALL = list(MANIFOLDS.values())


def test_forms_and_betti_numbers():
    assert [M.b2 for M in (S4, CP2, S2xS2, CP2_PLUS_CP2, CP2_MINUS_CP2)] == [0, 1, 2, 2, 2]
    assert CP2.form == ((1,),)
    assert S2xS2.form == ((0, 1), (1, 0))
    assert CP2_PLUS_CP2.form == ((1, 0), (0, 1))
    assert CP2_MINUS_CP2.form == ((1, 0), (0, -1))


@pytest.mark.parametrize("M, e, want", [
    (S2xS2, (3, 2), 12),
    (CP2_MINUS_CP2, (1, 1), 0),
    (CP2_PLUS_CP2, (2, 1), 5),
    (CP2, (3,), 9),
] + [(M, (0,) * M.b2, 0) for M in ALL])
def test_square_examples(M, e, want):
    assert square(M, e) == want


@pytest.mark.parametrize("M, e, want", [
    (CP2, (3,), (1,)),
    (S2xS2, (2, 1), (0, 1)),
    (S4, (), ()),
    (CP2_MINUS_CP2, (-3, 4), (1, 0)),
])
def test_mod2_examples(M, e, want):
    assert mod2(M, e) == want


@pytest.mark.parametrize("M, w2, want", [
    (CP2, (1,), 1),
    (CP2, (0,), 0),
    (S2xS2, (1, 1), 2),
    (S2xS2, (1, 0), 0),
    (CP2_MINUS_CP2, (1, 0), 1),
    (CP2_MINUS_CP2, (0, 1), 3),
    (CP2_MINUS_CP2, (1, 1), 0),
    (S4, (), 0),
])
def test_residue_examples(M, w2, want):
    assert residue_mod4(M, w2) == want


@pytest.mark.parametrize("M", [M for M in ALL if M.b2])
def test_residue_by_brute_force_over_lifts(M):
    # every lift of w2 with coordinates in {-3..3} has the same square mod 4
    for w2 in itertools.product((0, 1), repeat=M.b2):
        lifts = [e for e in itertools.product(range(-3, 4), repeat=M.b2)
                 if tuple(x % 2 for x in e) == w2]
        assert {square(M, e) % 4 for e in lifts} == {residue_mod4(M, w2)}


@pytest.mark.parametrize("M", ALL, ids=str)
def test_square_shift_by_even_class_exhaustive(M):
    box = list(itertools.product(range(-10, 11), repeat=M.b2))
    small = list(itertools.product(range(-3, 4), repeat=M.b2))
    for e in box:
        s = square(M, e) % 4
        for f in small:
            assert square(M, [a + 2 * b for a, b in zip(e, f)]) % 4 == s


@pytest.mark.parametrize("M", ALL, ids=str)
def test_residue_of_reduction_matches_square(M):
    for e in itertools.product(range(-50, 51, 7), repeat=M.b2):
        assert residue_mod4(M, mod2(M, e)) == square(M, e) % 4


@given(st.sampled_from([M for M in ALL if M.b2 == 2]),
       st.tuples(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6)),
       st.tuples(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6)))
def test_pairing_symmetric_and_bilinear(M, e, f):
    assert pairing(M, e, f) == pairing(M, f, e)
    s = [a + b for a, b in zip(e, f)]
    assert square(M, s) == square(M, e) + 2 * pairing(M, e, f) + square(M, f)


@pytest.mark.parametrize("M, e", [(CP2, (1, 2)), (S2xS2, (1,)), (S4, (1,))])
def test_dimension_mismatch(M, e):
    with pytest.raises(InvalidClassError):
        square(M, e)
    with pytest.raises(InvalidClassError):
        mod2(M, e)


def test_residue_rejects_non_bits():
    with pytest.raises(InvalidClassError):
        residue_mod4(CP2, (2,))


def test_construction_checks():
    with pytest.raises(ValueError, match="symmetric"):
        BaseManifold(ManifoldId.S2xS2, ((0, 1), (2, 0)))
    with pytest.raises(ValueError, match="unimodular"):
        BaseManifold(ManifoldId.CP2, ((2,),))
    with pytest.raises(ValueError, match="square"):
        BaseManifold(ManifoldId.CP2, ((1, 0),))


def test_lookup_by_name():
    for name in ("S4", "CP2", "S2xS2", "CP2+CP2", "CP2-CP2"):
        assert get_manifold(name).name == name
    assert get_manifold(CP2) is CP2
    with pytest.raises(KeyError):
        get_manifold("RP4")


def test_definiteness():
    assert CP2.definite and CP2_PLUS_CP2.definite
    assert not S2xS2.definite and not CP2_MINUS_CP2.definite
