import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zprimdec.gb import ideal_contains, normal_form
from zprimdec.ideals import (
    Ideal,
    contract_from_rationals,
    contract_z,
    dimension,
    equals,
    exact_div_poly,
    ideal_sum,
    intersect,
    max_independent_set,
    poly_gcd,
    poly_lcm,
    poly_lcm_many,
    power_generators,
    quotient,
    quotient_ideal,
    saturate,
    stabilization_exponent,
)
from zprimdec.numth import factorize
from zprimdec.poly import GF, QQ, Ring, ZZ, render

R = Ring(ZZ, ("x", "y"))
X, Y = R.gens()
C = R.const
Rx = Ring(ZZ, ("x",))
X1 = Rx.var(0)


def zz_poly(ring, rng, maxdeg=2, cb=6):
    terms = {}
    for _ in range(rng.randrange(1, 4)):
        m = tuple(rng.randrange(0, maxdeg + 1) for _ in range(ring.n))
        c = rng.randrange(-cb, cb + 1)
        if c:
            terms[m] = c
    return ring.poly(terms)


# -- intersection ----------------------------------------------------------------


def test_intersect_examples():
    assert intersect(Ideal(R, [C(2)]), Ideal(R, [C(3)])).canonical_key() == ("6",)
    got = intersect(Ideal(R, [C(2)]), Ideal(R, [C(4), X]))
    want = Ideal(R, [C(4), X.scale(2)])
    # oracle: membership of generators both ways
    for g in want.gens:
        assert got.contains(g)
    for g in got.gens:
        assert want.contains(g)
    I = Ideal(R, [C(9), X.scale(3), Y.scale(3)])
    assert equals(intersect(I, Ideal(R, [R.one])), I)


@given(st.integers(0, 10**6))
@settings(max_examples=20)
def test_intersect_membership(seed):
    rng = random.Random(seed)
    I = Ideal(R, [zz_poly(R, rng) for _ in range(2)])
    J = Ideal(R, [zz_poly(R, rng) for _ in range(2)])
    if not I.gens or not J.gens:
        return
    K = intersect(I, J)
    for g in K.gens:
        assert I.contains(g) and J.contains(g)
    # members of I that also happen to lie in J must be in K
    for _ in range(5):
        f = I.gens[0] * zz_poly(R, rng)
        if J.contains(f):
            assert K.contains(f)


# -- quotients -------------------------------------------------------------------


def test_quotient_examples():
    got = quotient(Ideal(R, [C(4), X.scale(2)]), X)
    assert equals(got, Ideal(R, [C(2)]))
    I = Ideal(R, [C(9), X.scale(3), Y.scale(3)])
    assert equals(quotient(I, R.one), I)
    got = quotient(I, C(3))
    # oracle: 3*3, 3*x, 3*y all in I, and the strong basis is {3, x, y}
    for g in (C(3), X, Y):
        assert I.contains(g * C(3))
    assert equals(got, Ideal(R, [C(3), X, Y]))
    with pytest.raises(ValueError):
        quotient(I, R.zero)


def test_quotient_ideal():
    I = Ideal(R, [C(4), X.scale(2)])
    J = Ideal(R, [C(2), X])
    got = quotient_ideal(I, J)
    assert equals(got, intersect(quotient(I, C(2)), quotient(I, X)))


# -- saturation ------------------------------------------------------------------


def test_saturate_examples():
    I = Ideal(R, [C(9), X.scale(3), Y.scale(3)])
    S, m = saturate(I, X * Y)
    assert S.canonical_key() == ("3",)
    assert m <= 2
    S, m = saturate(I, R.one)
    assert equals(S, I) and m == 0
    S, m = saturate(Ideal(Rx, [X1**2]), X1)
    assert S.is_unit() and m == 2


def test_stabilization_examples():
    I = Ideal(R, [C(9), X.scale(3), Y.scale(3)])
    S, _ = saturate(I, X * Y)
    # oracle: 3xy = y * 3x lies in I, so m = 1
    assert I.contains(Y * X.scale(3))
    assert stabilization_exponent(I, X * Y, S) == 1
    assert stabilization_exponent(I, R.one, I) == 0
    I2 = Ideal(Rx, [X1**2])
    S2, _ = saturate(I2, X1)
    assert stabilization_exponent(I2, X1, S2) == 2


@given(st.integers(0, 10**6))
@settings(max_examples=15)
def test_saturation_fixpoint_and_tower(seed):
    rng = random.Random(seed)
    I = Ideal(R, [zz_poly(R, rng) for _ in range(2)])
    h = zz_poly(R, rng)
    if not I.gens or h.is_zero():
        return
    S, m = saturate(I, h)
    # fixpoint: (I : h^inf) : h = I : h^inf
    assert equals(quotient(S, h), S)
    # tower: I <= I:h <= ... <= I:h^m = S
    prev = I
    for k in range(1, m + 1):
        step = quotient(prev, h)
        for g in prev.gens:
            assert step.contains(g)
        prev = step
    assert equals(prev, S)


# -- contraction -----------------------------------------------------------------


def test_contract_z_examples():
    assert contract_z(Ideal(R, [C(9), X.scale(3), Y.scale(3)])) == 9
    assert contract_z(Ideal(R, [X])) == 0
    I = Ideal(R, [X.scale(2), X.scale(3), C(5)])
    assert contract_z(I) == 5
    assert I.contains(X)  # x = 3x - 2x stays in the basis


def test_contract_from_rationals_examples():
    I = Ideal(R, [X.scale(2), Y.scale(3)])
    sat, h, m = contract_from_rationals(I)
    assert h == 6
    assert equals(sat, Ideal(R, [X, Y]))
    # recomposition oracle: (I : h^m) cap <I, h^m> = I
    assert equals(intersect(sat, ideal_sum(I, [C(h**m)])), I)
    sat, h, m = contract_from_rationals(Ideal(R, [X]))
    assert (h, m) == (1, 0) and equals(sat, Ideal(R, [X]))
    I = Ideal(Rx, [X1.scale(2) + Rx.one])
    sat, h, m = contract_from_rationals(I)
    assert h == 2 and equals(sat, I)
    with pytest.raises(ValueError):
        contract_from_rationals(Ideal(R, [C(6)]))


@given(st.integers(0, 10**6))
@settings(max_examples=15)
def test_rational_contraction_recomposition(seed):
    rng = random.Random(seed)
    gens = [g for g in (zz_poly(R, rng) for _ in range(2)) if not g.is_zero()]
    gens = [g for g in gens if not g.is_constant()]
    I = Ideal(R, gens)
    if not I.gens or contract_z(I) != 0:
        return
    sat, h, m = contract_from_rationals(I)
    assert equals(intersect(sat, ideal_sum(I, [C(h**m)])), I)


@given(st.integers(0, 10**6))
@settings(max_examples=15)
def test_constant_splitting(seed):
    # I = cap <I, p_i^nu_i> over the factorization of the integer contraction
    rng = random.Random(seed)
    q = rng.randrange(2, 300)
    I = Ideal(R, [C(q), zz_poly(R, rng).scale(rng.randrange(1, 4))])
    qq = contract_z(I)
    if qq in (0, 1):
        return
    parts = [ideal_sum(I, [C(p**nu)]) for p, nu in factorize(qq).factors]
    acc = parts[0]
    for part in parts[1:]:
        acc = intersect(acc, part)
    assert equals(acc, I)


# -- equality --------------------------------------------------------------------


def test_equals_examples():
    assert equals(Ideal(R, [C(6)]), intersect(Ideal(R, [C(2)]), Ideal(R, [C(3)])))
    assert not equals(Ideal(R, [C(2)]), Ideal(R, [C(4)]))
    got = intersect(Ideal(R, [C(2)]), Ideal(R, [C(4), X]))
    assert equals(Ideal(R, [C(4), X.scale(2)]), got)


# -- independent sets and dimension ------------------------------------------------


def test_max_independent_set_examples():
    R3 = Ring(GF(3), ("x", "y"))
    assert max_independent_set(Ideal(R3, [])) == (0, 1)
    x3, y3 = R3.gens()
    assert max_independent_set(Ideal(R3, [x3, y3])) == ()
    R5 = Ring(GF(5), ("x", "y"))
    x5, y5 = R5.gens()
    u = max_independent_set(Ideal(R5, [x5 * y5 - R5.one]))
    assert u in ((0,), (1,))


def test_max_independent_set_is_maximal():
    R5 = Ring(GF(5), ("x", "y", "z"))
    x5, y5, z5 = R5.gens()
    I = Ideal(R5, [x5 * y5, x5 * z5])
    u = max_independent_set(I)
    assert u == (1, 2)  # {y, z} beats the greedy pick {x}
    order = R5.dp()
    leads = [g.leading_mono(order) for g in I.gb().elements]
    for extra in range(R5.n):
        if extra in u:
            continue
        bigger = set(u) | {extra}
        assert any(set(i for i, e in enumerate(m) if e) <= bigger for m in leads)


def test_dimension_examples():
    Rp = Ring(GF(7), ("x", "y"))
    xp, yp = Rp.gens()
    assert dimension(Ideal(Rp, [xp, yp])) == 0
    RQ2 = Ring(QQ, ("x", "y"))
    xq, yq = RQ2.gens()
    assert dimension(Ideal(RQ2, [xq])) == 1
    assert dimension(Ideal(RQ2, [xq * yq])) == 1
    with pytest.raises(ValueError):
        dimension(Ideal(RQ2, [RQ2.one]))


# -- generator powers and polynomial lcm -----------------------------------------


def test_power_generators():
    got = power_generators([C(2), X], 2)
    assert got == [C(4), X**2]
    assert power_generators([X + R.one], 1) == [X + R.one]
    f = X + R.one
    assert power_generators([f], 3) == [f * f * f]
    with pytest.raises(ValueError):
        power_generators([X], 0)


def test_poly_lcm():
    assert poly_lcm_many([R.one, X, Y]) == X * Y
    assert poly_lcm(X.scale(2), Y.scale(3)) == (X * Y).scale(6)
    assert poly_lcm(C(3), X.scale(2)) == X.scale(6)
    assert render(poly_gcd(X.scale(4), X.scale(6))) == "2*x"
    f = (X + Y) * X
    g = (X + Y) * Y
    l = poly_lcm(f, g)
    assert exact_div_poly(l, f) is not None and exact_div_poly(l, g) is not None
    assert l == (X + Y) * X * Y
