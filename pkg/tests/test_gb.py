import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zprimdec.gb import (
    buchberger,
    certify_strong,
    divisibility_witness,
    gcdpoly_ring,
    ideal_contains,
    intersect_with_subring,
    normal_form,
    random_member,
    spoly,
    spoly_ring,
)
from zprimdec.numth import xgcd
from zprimdec.poly import GF, QQ, Ring, ZZ, elim, monic, reduce_mod_p, render

R = Ring(ZZ, ("x", "y"))
X, Y = R.gens()
O = R.dp()


def strong_gb(gens):
    return buchberger(gens, O)


def zz_poly(ring, rng, maxdeg=3, cb=9):
    terms = {}
    for _ in range(rng.randrange(1, 4)):
        m = tuple(rng.randrange(0, maxdeg + 1) for _ in range(ring.n))
        c = rng.randrange(-cb, cb + 1)
        if c:
            terms[m] = c
    return ring.poly(terms)


# -- normal forms --------------------------------------------------------------


def test_normal_form_examples():
    G = strong_gb([R.const(9), X.scale(3), Y.scale(3)])
    # oracle: 9x = x * 9 is an explicit cofactor representation
    assert (X.scale(9)) == X * R.const(9)
    assert normal_form(X.scale(9), G).is_zero()
    # leading coefficient 1 is not divisible by 3
    assert normal_form(X, G) == X
    assert normal_form(R.zero, G).is_zero()


def test_membership_examples():
    G = strong_gb([R.const(9), X.scale(3), Y.scale(3)])
    # oracle: 3x + 9 = 1*(3x) + 1*9
    assert ideal_contains(G, X.scale(3) + R.const(9))
    # I cap ZZ = <9>, so 3 is not a member
    assert not ideal_contains(G, R.const(3))
    assert ideal_contains(G, R.zero)


# -- S- and GCD-polynomials ------------------------------------------------------


def test_spoly_field_examples():
    RQ = Ring(QQ, ("x", "y"))
    xq, yq = RQ.gens()
    o = RQ.dp()
    assert spoly(xq**2, xq * yq, o).is_zero()
    s = spoly(xq + RQ.one, xq - RQ.one, o)
    assert monic(s, o) == RQ.one or s == RQ.const(2)
    f = xq * yq + xq
    assert spoly(f, f, o).is_zero()


def test_spoly_ring_examples():
    assert spoly_ring(R.const(9), X.scale(3), O).is_zero()
    s = spoly_ring(X.scale(2), Y.scale(3), O)
    assert s.is_zero()  # 3y*2x - 2x*3y


def test_gcdpoly_example():
    g, s, t = xgcd(4, 6)
    assert g == 2 and s * 4 + t * 6 == 2  # extended gcd oracle
    Rx = Ring(ZZ, ("x",))
    x1 = Rx.var(0)
    gp = gcdpoly_ring(x1.scale(4), x1.scale(6), Rx.dp())
    m, c = gp.leading_term(Rx.dp())
    assert m == (1,) and abs(c) == 2


# -- Buchberger ------------------------------------------------------------------


def test_buchberger_939(rng):
    G = strong_gb([R.const(9), X.scale(3), Y.scale(3)])
    assert sorted(render(g, O) for g in G.elements) == ["3*x", "3*y", "9"]
    # oracle: exhaustive pair reduction
    assert certify_strong(G) == []


def test_buchberger_bezout():
    # extended gcd of 2 and 3 puts x itself into the basis
    Rx = Ring(ZZ, ("x",))
    x1 = Rx.var(0)
    G = buchberger([x1.scale(2), x1.scale(3)], Rx.dp())
    assert [render(g, Rx.dp()) for g in G.elements] == ["x"]


def test_buchberger_field_single():
    RQ = Ring(QQ, ("x",))
    xq = RQ.var(0)
    G = buchberger([xq], RQ.dp())
    assert [render(g, RQ.dp()) for g in G.elements] == ["x"]


def test_buchberger_mixed_monomials():
    G = strong_gb([X.scale(2), Y.scale(3)])
    assert sorted(render(g, O) for g in G.elements) == ["2*x", "3*y", "x*y"]
    assert certify_strong(G) == []


def test_elimination_example():
    # <x - t, y - t^2> eliminating t leaves <y - x^2>; oracle: substitute t = x
    RQ = Ring(QQ, ("t", "x", "y"))
    t, x, y = RQ.gens()
    o = elim(3, (0,))
    G = buchberger([x - t, y - t * t], o)
    kept = intersect_with_subring(G, (1, 2))
    assert len(kept) == 1
    g = kept[0]
    assert monic(g, o) in (monic(y - x**2, o), monic(x**2 - y, o))


def test_elimination_rejects_bad_order():
    G = strong_gb([X])
    with pytest.raises(ValueError):
        intersect_with_subring(G, (0,))


def test_zero_ideal():
    G = buchberger([], O, ring=R)
    assert G.elements == ()
    assert intersect_with_subring(G, (0,)) == []


# -- invariants ------------------------------------------------------------------


@given(st.integers(0, 10**6))
@settings(max_examples=25)
def test_strong_certificate_and_members(seed):
    rng = random.Random(seed)
    gens = [zz_poly(R, rng) for _ in range(rng.randrange(1, 4))]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    G = buchberger(gens, O)
    assert certify_strong(G) == []
    # membership soundness and strong divisibility witnesses
    for _ in range(10):
        f = random_member(G, rng)
        if f.is_zero():
            continue
        assert normal_form(f, G).is_zero()
        assert divisibility_witness(G, f)


@given(st.integers(0, 10**6))
@settings(max_examples=15)
def test_idempotence(seed):
    rng = random.Random(seed)
    gens = [zz_poly(R, rng) for _ in range(rng.randrange(1, 4))]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    G = buchberger(gens, O)
    G2 = buchberger(list(G.elements), O)
    assert [g.terms for g in G2.elements] == [g.terms for g in G.elements]


@given(st.integers(0, 10**6))
@settings(max_examples=15)
def test_field_ring_consistency(seed):
    # the strong basis of <F, p> reduced mod p generates the same ideal as
    # the field basis of F mod p, checked by mutual membership
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5])
    gens = [zz_poly(R, rng) for _ in range(rng.randrange(1, 3))]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    Gz = buchberger(gens + [R.const(p)], O)
    reduced = [reduce_mod_p(g, p) for g in Gz.elements]
    reduced = [g for g in reduced if not g.is_zero()]
    Rp = R.with_domain(GF(p))
    Gp = buchberger([reduce_mod_p(g, p) for g in gens], Rp.dp(), ring=Rp)
    for g in reduced:
        assert ideal_contains(Gp, g) if Gp.elements else g.is_zero()
    for g in Gp.elements:
        basis_red = buchberger(reduced, Rp.dp(), ring=Rp)
        assert ideal_contains(basis_red, g)
