"""Alexander satellite formula and permutation quotients."""

import random

import pytest

from diskfloer.certificates import (
    FinitePresentation,
    LaurentPoly,
    PermutationHom,
    alexander_satellite,
    cycle,
    find_homs,
)


def sym(*pairs):
    """Symmetric polynomial c0 + sum ci (t^i + t^-i) from (i, ci) pairs
    and the constant as pairs[0] = (0, c0)."""
    coeffs = {}
    for e, c in pairs:
        coeffs[e] = coeffs.get(e, 0) + c
        if e:
            coeffs[-e] = coeffs.get(-e, 0) + c
    return LaurentPoly(coeffs)


TREFOIL = sym((0, -1), (1, 1))        # t - 1 + t^-1
FIG8 = sym((0, 3), (1, -1))           # -t + 3 - t^-1
ONE = LaurentPoly.constant(1)


def test_laurent_basics():
    assert (TREFOIL + TREFOIL.scale(-1)).coeffs == {}
    assert TREFOIL.evaluate(1) == 1
    assert FIG8.evaluate(1) == 1
    assert TREFOIL.is_symmetric()
    lo, coeffs = TREFOIL.to_list()
    assert lo == -1 and coeffs == [1, -1, 1]
    assert LaurentPoly.from_list(lo, coeffs) == TREFOIL
    assert str(TREFOIL) == "t-1+t^-1"


def test_substitute_power():
    assert TREFOIL.substitute_power(2) == sym((0, -1), (2, 1))
    assert TREFOIL.substitute_power(0) == ONE
    assert TREFOIL.substitute_power(-1) == TREFOIL


def test_alexander_satellite_winding_zero_is_trivial():
    dk = sym((0, -3), (1, 1))  # t - 3 + t^-1, value -1 at t=1
    assert alexander_satellite(ONE, dk, 0) == ONE


def test_alexander_satellite_winding_one_and_two():
    assert alexander_satellite(ONE, TREFOIL, 1) == TREFOIL
    assert alexander_satellite(ONE, TREFOIL, 2) == sym((0, -1), (2, 1))
    # companions with value -1 at t=1 pick up the normalizing sign
    dk = sym((0, -3), (1, 1))
    assert alexander_satellite(ONE, dk, 2) == sym((0, 3), (2, -1))


def test_alexander_satellite_pattern_factor():
    result = alexander_satellite(TREFOIL, FIG8, 1)
    assert result == TREFOIL * FIG8
    assert result.evaluate(1) == 1
    assert result.is_symmetric()


def test_alexander_satellite_rejects_bad_normalization():
    bad = sym((0, -2), (1, 1))  # value 0 at t=1
    with pytest.raises(ValueError):
        alexander_satellite(ONE, bad, 1)


def test_alexander_satellite_random_properties():
    rng = random.Random(30)
    for _ in range(50):
        def rand_sym():
            pairs = [(i, rng.randrange(-2, 3))
                     for i in range(1, rng.randrange(1, 4))]
            total = 2 * sum(c for _, c in pairs)
            sign = rng.choice((1, -1))
            return sym((0, sign - total), *pairs)

        dp, dk = rand_sym(), rand_sym()
        w = rng.randrange(-3, 4)
        out = alexander_satellite(dp, dk, w)
        assert out.is_symmetric()
        assert out.evaluate(1) == 1


# -- permutation quotients ---------------------------------------------------

POSITRON = FinitePresentation(["m", "a"], [["a", "m", "A", "A", "M"]])


def test_cycle_helper():
    assert cycle(3, 2, 3) == (0, 2, 1)
    assert cycle(3, 1, 2, 3) == (1, 2, 0)


def test_positron_has_s3_surjection():
    homs = find_homs(POSITRON, 3, surjective_only=True)
    assert homs
    wanted = {"m": cycle(3, 2, 3), "a": cycle(3, 1, 2, 3)}
    assert any(dict(h.images) == wanted for h in homs)
    for h in homs:
        assert h.kills(POSITRON)
        assert h.is_surjective()


def test_infinite_cyclic_quotient_killed_generator():
    pres = FinitePresentation(["a"], [["a"]])
    assert find_homs(pres, 3, surjective_only=True) == []
    # without surjectivity only the trivial assignment kills the relator
    homs = find_homs(pres, 3)
    assert len(homs) == 1


def test_commuting_pair_count():
    pres = FinitePresentation(["a", "b"], [["a", "b", "A", "B"]])
    assert len(find_homs(pres, 2)) == 4


def test_find_homs_generator_order_independent():
    p1 = FinitePresentation(["m", "a"], [["a", "m", "A", "A", "M"]])
    p2 = FinitePresentation(["a", "m"], [["a", "m", "A", "A", "M"]])
    h1 = {frozenset(dict(h.images).items()) for h in find_homs(p1, 3)}
    h2 = {frozenset(dict(h.images).items()) for h in find_homs(p2, 3)}
    assert h1 == h2


def test_find_homs_degree_limits():
    with pytest.raises(ValueError):
        find_homs(POSITRON, 0)
    with pytest.raises(ValueError):
        find_homs(POSITRON, 7)


def test_presentation_rejects_unknown_letters():
    with pytest.raises(ValueError):
        FinitePresentation(["a"], [["b"]])


def test_hom_evaluate_inverses():
    hom = PermutationHom(3, (("m", cycle(3, 2, 3)), ("a", cycle(3, 1, 2, 3))))
    ident = tuple(range(3))
    assert hom.evaluate(["m", "M"]) == ident
    assert hom.evaluate(["a", "a", "a"]) == ident
