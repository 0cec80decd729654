import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zprimdec.poly import (
    GF,
    Ordering,
    Poly,
    QQ,
    Ring,
    ZZ,
    block_dp,
    canonical_lift,
    clear_denominators,
    compose,
    dp,
    lc_decompose_ring,
    lex,
    mono_mul,
    reduce_mod_p,
    render,
)

R2 = Ring(ZZ, ("x", "y"))
X, Y = R2.gens()
O2 = R2.dp()


def zz_poly(ring, rng, maxdeg=3, cb=9):
    terms = {}
    for _ in range(rng.randrange(1, 5)):
        m = tuple(rng.randrange(0, maxdeg + 1) for _ in range(ring.n))
        c = rng.randrange(-cb, cb + 1)
        if c:
            terms[m] = c
    return ring.poly(terms)


# -- orderings ---------------------------------------------------------------


def test_dp_tiebreak():
    # equal degree, the later variable decides reversed: x^2 y > x y^2
    assert O2.greater((2, 1), (1, 2))
    assert not O2.greater((1, 2), (2, 1))
    assert not O2.greater((1, 1), (1, 1))


def test_block_dominance():
    # u = {y}: any power of x dominates any power of y
    o = block_dp(2, (0,))
    assert o.greater((1, 0), (0, 5))


def test_block_dominance_exhaustive():
    o = block_dp(2, (0,))
    for ex in range(1, 4):
        for ey in range(0, 6):
            assert o.greater((ex, ey), (0, 5))


def test_lex_vs_dp():
    ol = lex(2)
    assert ol.greater((1, 0), (0, 5))
    assert O2.greater((0, 5), (1, 0))


@given(st.data())
def test_order_total_and_multiplicative(data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    for order in (O2, block_dp(2, (0,)), lex(2)):
        a = tuple(rng.randrange(0, 5) for _ in range(2))
        b = tuple(rng.randrange(0, 5) for _ in range(2))
        c = tuple(rng.randrange(0, 5) for _ in range(2))
        # antisymmetry / totality
        assert (order.key(a) > order.key(b)) + (order.key(b) > order.key(a)) + (a == b) == 1
        # multiplicativity
        if order.greater(a, b):
            assert order.greater(mono_mul(a, c), mono_mul(b, c))
        # 1 is minimal
        if any(a):
            assert order.greater(a, (0, 0))


# -- arithmetic ---------------------------------------------------------------


def test_arith_examples():
    assert X.scale(3) * Y.scale(3) == (X * Y).scale(9)
    f = (X**2 * Y).scale(5) + Y.scale(-2)
    assert (f + (-f)).is_zero()
    assert (X + R2.one) * (X - R2.one) == X**2 - R2.one


def test_leading_term_examples():
    f = X.scale(3) + R2.const(9)
    assert f.leading_term(O2) == ((1, 0), 3)
    g = (Y**3).scale(2) + (X**2 * Y).scale(5)
    # hand-evaluated dp tie-break: both degree 3, x^2 y wins
    assert g.leading_term(O2) == ((2, 1), 5)
    with pytest.raises(ValueError):
        R2.zero.leading_term(O2)


@given(st.integers(0, 10**6))
def test_ring_axioms_random(seed):
    rng = random.Random(seed)
    f, g, h = (zz_poly(R2, rng) for _ in range(3))
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f - f == R2.zero


# -- coefficient maps ----------------------------------------------------------


def test_reduce_mod_p_examples():
    assert reduce_mod_p(X.scale(3) + R2.const(9), 3).is_zero()
    assert render(reduce_mod_p(X.scale(4) + R2.const(7), 3)) == "x + 1"
    assert render(reduce_mod_p(-X + R2.const(5), 3)) == "2*x + 2"


def test_canonical_lift_examples():
    R3 = Ring(GF(3), ("x",))
    x3 = R3.var(0)
    assert render(canonical_lift(x3 + R3.const(2))) == "x + 2"
    assert canonical_lift(R3.zero).is_zero()
    f = (x3**2).scale(2) + R3.const(2)
    # coefficients stay in [0, p): 2x^2 + 2, never -x^2 - 1
    assert render(canonical_lift(f)) == "2*x^2 + 2"


@given(st.integers(0, 10**6))
def test_lift_reduce_roundtrip(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5, 7])
    Rp = Ring(GF(p), ("x", "y"))
    terms = {
        (rng.randrange(3), rng.randrange(3)): rng.randrange(p) for _ in range(rng.randrange(1, 5))
    }
    f = Rp.poly(terms)
    assert reduce_mod_p(canonical_lift(f), p) == f


@given(st.integers(0, 10**6))
def test_reduce_mod_p_is_homomorphism(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5])
    f, g = zz_poly(R2, rng), zz_poly(R2, rng)
    assert reduce_mod_p(f * g, p) == reduce_mod_p(f, p) * reduce_mod_p(g, p)
    assert reduce_mod_p(f + g, p) == reduce_mod_p(f, p) + reduce_mod_p(g, p)


def test_clear_denominators_examples():
    RQ = Ring(QQ, ("x",))
    xq = RQ.var(0)
    assert render(clear_denominators(xq.scale(Fraction(1, 2)) + RQ.const(Fraction(1, 3)))) == "3*x + 2"
    assert render(clear_denominators(xq.scale(5))) == "x"
    assert render(clear_denominators(xq.scale(Fraction(-2, 7)) + RQ.const(2))) == "x - 7"
    with pytest.raises(ValueError):
        clear_denominators(RQ.zero)


# -- leading coefficient decomposition ----------------------------------------


def test_lc_decompose_examples():
    nu, a, beta = lc_decompose_ring(R2.const(9), (), 3)
    assert (nu, a, beta) == (2, R2.one, (0, 0))
    nu, a, beta = lc_decompose_ring(X.scale(3), (), 3)
    assert (nu, a, beta) == (1, X, (0, 0))
    # leading coefficient in ZZ[x] of (6x^2 + 2) z is not divisible by 3
    Rxz = Ring(ZZ, ("x", "z"))
    x, z = Rxz.gens()
    f = (x**2 * z).scale(6) + z.scale(2)
    nu, a, beta = lc_decompose_ring(f, (1,), 3)
    assert nu == 0 and a == (x**2).scale(6) + Rxz.const(2) and beta == (0, 1)


@given(st.integers(0, 10**6))
def test_lc_decompose_property(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5])
    f = zz_poly(R2, rng)
    if f.is_zero():
        return
    main = (0,)
    nu, a, beta = lc_decompose_ring(f, main, p)
    # a has no p in its content
    assert any(c % p for c in a.terms.values())
    # p^nu * a * x^beta reproduces the whole leading slice in x
    lead = Poly(R2, {m: c for m, c in f.terms.items() if m[0] == f.degree_in(0)})
    assert a.mul_term(beta, p**nu) == lead


def test_render_format():
    f = (X**2 * Y).scale(3) - R2.const(7)
    assert render(f) == "3*x^2*y - 7"
    assert render(R2.zero) == "0"
    assert render(-X) == "-x"


def test_compose():
    f = X**2 + Y
    g = compose(f, [X + Y, Y])
    assert g == (X + Y) ** 2 + Y
