"""Ideal arithmetic over ZZ[x] and over field polynomial rings.

Ideals carry their generators plus a per-ordering cache of Groebner bases.
Intersections and quotients go through the usual tag-variable constructions;
saturation I : h^inf eliminates T from <I, T*h - 1>, and the stabilization
exponent is found by normal-form search.  All operations leave their inputs
untouched.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd, lcm

from . import gb as gblib
from .poly import (
    Ordering,
    Poly,
    Ring,
    ZZ,
    QQ,
    mono_div,
    mono_divides,
    monic,
    ordering_chain,
    render,
    rename_into,
    sign_normalize,
    to_rationals,
)

_STAB_CAP = 512


class Ideal:
    """Generators plus a write-once cache of Groebner bases keyed by ordering."""

    def __init__(self, ring: Ring, gens):
        self.ring = ring
        self.gens = tuple(g for g in gens if not g.is_zero())
        self._gb_cache: dict[Ordering, gblib.GBasis] = {}
        self._key = None

    def gb(self, order: Ordering | None = None) -> gblib.GBasis:
        if order is None:
            order = self.ring.dp()
        got = self._gb_cache.get(order)
        if got is None:
            got = gblib.buchberger(list(self.gens), order, ring=self.ring)
            self._gb_cache[order] = got
        return got

    def contains(self, f: Poly) -> bool:
        return gblib.ideal_contains(self.gb(), f)

    def is_zero(self) -> bool:
        return not self.gb().elements

    def is_unit(self) -> bool:
        els = self.gb().elements
        return (
            len(els) == 1
            and els[0].is_constant()
            and self.ring.domain.is_unit(els[0].constant_coeff())
        )

    def canonical_gens(self) -> tuple:
        return self.gb().elements

    def canonical_key(self) -> tuple[str, ...]:
        if self._key is None:
            order = self.ring.dp()
            self._key = tuple(render(g, order) for g in self.gb().elements)
        return self._key

    def __repr__(self):
        return f"Ideal({', '.join(self.canonical_key()) or '0'})"


def ideal(ring: Ring, gens) -> Ideal:
    return Ideal(ring, gens)


def ideal_sum(I: Ideal, extra) -> Ideal:
    return Ideal(I.ring, list(I.gens) + list(extra))


def equals(I: Ideal, J: Ideal) -> bool:
    """Mutual membership of canonical generators."""
    if I.ring != J.ring:
        raise ValueError("ideal comparison across different rings")
    if I.canonical_key() == J.canonical_key():
        return True
    gbi, gbj = I.gb(), J.gb()
    return all(gblib.ideal_contains(gbj, g) for g in gbi.elements) and all(
        gblib.ideal_contains(gbi, g) for g in gbj.elements
    )


def contains_ideal(I: Ideal, J: Ideal) -> bool:
    """True when J is a subset of I."""
    gbi = I.gb()
    return all(gblib.ideal_contains(gbi, g) for g in J.gb().elements)


# ---------------------------------------------------------------------------
# tag-variable plumbing
# ---------------------------------------------------------------------------


def _fresh_tag_name(ring: Ring) -> str:
    base = "@t"
    k = 0
    while True:
        name = base if k == 0 else f"{base}{k}"
        if name not in ring.vars:
            return name
        k += 1


def _extend(ring: Ring) -> tuple[Ring, int]:
    big = ring.append_var(_fresh_tag_name(ring))
    return big, big.n - 1


def _lift(f: Poly, big: Ring) -> Poly:
    pad = big.n - f.ring.n
    return Poly(big, {m + (0,) * pad: c for m, c in f.terms.items()})


def _project(f: Poly, small: Ring) -> Poly:
    k = small.n
    out = {}
    for m, c in f.terms.items():
        assert all(e == 0 for e in m[k:]), "projection would lose tag variables"
        out[m[:k]] = c
    return Poly(small, out)


def _eliminate_tags(gens, big: Ring, small: Ring, tag_indices: tuple[int, ...]):
    order = ordering_chain(tag_indices, tuple(i for i in range(big.n) if i not in tag_indices))
    basis = gblib.buchberger(gens, order, ring=big)
    kept = gblib.intersect_with_subring(basis, tuple(range(small.n)))
    return [_project(g, small) for g in kept]


# ---------------------------------------------------------------------------
# intersection, quotient, saturation
# ---------------------------------------------------------------------------


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I cap J via <t*I, (1-t)*J> cap R."""
    if I.ring != J.ring:
        raise ValueError("intersection across different rings")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    big, t_idx = _extend(ring)
    t = big.var(t_idx)
    one = big.one
    gens = [t * _lift(f, big) for f in I.gens]
    gens += [(one - t) * _lift(g, big) for g in J.gens]
    return Ideal(ring, _eliminate_tags(gens, big, ring, (t_idx,)))


def intersect_many(ideals_list) -> Ideal:
    if not ideals_list:
        raise ValueError("empty intersection")
    acc = ideals_list[0]
    for J in ideals_list[1:]:
        acc = intersect(acc, J)
    return acc


def exact_div_poly(g: Poly, f: Poly, order: Ordering | None = None) -> Poly:
    """Quotient g / f for an exact multiple g of f."""
    if order is None:
        order = g.ring.dp()
    dom = g.ring.domain
    mf, cf = f.leading_term(order)
    q = g.ring.zero
    work = g
    while not work.is_zero():
        m, c = work.leading_term(order)
        if not mono_divides(mf, m):
            raise ArithmeticError("inexact polynomial division (monomial)")
        qc = dom.exact_div(c, cf)
        qm = mono_div(m, mf)
        q = q + Poly(g.ring, {qm: qc})
        work = work.combine(dom.neg(qc), qm, f)
    return q


def quotient(I: Ideal, f: Poly) -> Ideal:
    """I : f computed as (I cap <f>) * f^-1."""
    if f.is_zero():
        raise ValueError("quotient by the zero polynomial")
    ring = I.ring
    if f.is_constant() and ring.domain.is_unit(f.constant_coeff()):
        return I
    inter = intersect(I, Ideal(ring, [f]))
    return Ideal(ring, [exact_div_poly(g, f) for g in inter.gens])


def quotient_ideal(I: Ideal, J: Ideal) -> Ideal:
    """I : J as the intersection of the I : f over the generators f of J."""
    gens = [g for g in J.gens if not g.is_zero()]
    if not gens:
        raise ValueError("quotient by the zero ideal")
    acc = quotient(I, gens[0])
    for f in gens[1:]:
        acc = intersect(acc, quotient(I, f))
    return acc


def saturate(I: Ideal, h: Poly) -> tuple[Ideal, int]:
    """(I : h^inf, m) with the saturation computed by tag elimination of
    <I, T*h - 1> and m the stabilization exponent."""
    if h.is_zero():
        raise ValueError("saturation by the zero polynomial")
    ring = I.ring
    if h.is_constant() and ring.domain.is_unit(h.constant_coeff()):
        return I, 0
    big, t_idx = _extend(ring)
    gens = [_lift(f, big) for f in I.gens]
    gens.append(big.var(t_idx) * _lift(h, big) - big.one)
    sat = Ideal(ring, _eliminate_tags(gens, big, ring, (t_idx,)))
    return sat, stabilization_exponent(I, h, sat)


def stabilization_exponent(I: Ideal, h: Poly, S: Ideal) -> int:
    """Least tried m with h^m * g in I for every generator g of S = I : h^inf."""
    basis = I.gb()
    hk = h.ring.one
    for m in range(_STAB_CAP + 1):
        if all(gblib.ideal_contains(basis, hk * g) for g in S.gens):
            return m
        hk = hk * h
    raise RuntimeError(f"stabilization exponent exceeded cap for {I!r} : {render(h)}")


# ---------------------------------------------------------------------------
# contraction from QQ[x]
# ---------------------------------------------------------------------------


def contract_z(I: Ideal) -> int:
    """Nonnegative generator of I cap ZZ, read off the strong dp-basis."""
    consts = [g for g in I.gb().elements if g.is_constant()]
    assert len(consts) <= 1, "reduced strong basis has at most one constant"
    return abs(int(consts[0].constant_coeff())) if consts else 0


def contract_from_rationals(I: Ideal) -> tuple[Ideal, int, int]:
    """For I with I cap ZZ = 0:  (I QQ[x] cap ZZ[x], h, m).

    The strong dp-basis of I is in particular a Groebner basis of I QQ[x],
    so h is the lcm of its leading coefficients, the contraction is the
    saturation I : h^inf, and m satisfies I = (I : h^m) cap <I, h^m>.
    """
    if contract_z(I) != 0:
        raise ValueError("contract_from_rationals requires I cap ZZ = 0")
    order = I.ring.dp()
    basis = I.gb(order)
    h = 1
    for g in basis.elements:
        h = lcm(h, int(g.leading_coeff(order)))
    if h == 1:
        return I, 1, 0
    sat, m = saturate(I, I.ring.const(h))
    return sat, h, m


def rationalize(I: Ideal) -> Ideal:
    """View a ZZ[x] ideal inside QQ[x]."""
    rq = I.ring.with_domain(QQ)
    return Ideal(rq, [to_rationals(g) for g in I.gens])


# ---------------------------------------------------------------------------
# independent sets and dimension
# ---------------------------------------------------------------------------


def max_independent_set(I: Ideal) -> tuple[int, ...]:
    """Maximum-cardinality u with L(I) cap K[u] = 0, first in canonical order.

    The subsets are enumerated largest first, so |u| equals the combinatorial
    dimension of the leading ideal.  Field coefficients only.
    """
    if not I.ring.domain.is_field:
        raise ValueError("independent sets are computed over field coefficients")
    if I.is_unit():
        raise ValueError("the unit ideal has no independent set")
    order = I.ring.dp()
    lead_supports = [
        frozenset(i for i, e in enumerate(g.leading_mono(order)) if e) for g in I.gb().elements
    ]
    n = I.ring.n
    for size in range(n, -1, -1):
        for u in combinations(range(n), size):
            uset = set(u)
            if all(not s <= uset for s in lead_supports):
                return u
    return ()


def dimension(I: Ideal) -> int:
    return len(max_independent_set(I))


def power_generators(F, m: int) -> list:
    """Element-wise m-th powers of a generator list (not the ideal power)."""
    if m < 1:
        raise ValueError("power_generators requires m >= 1")
    return [f**m for f in F]


# ---------------------------------------------------------------------------
# polynomial lcm / gcd via principal intersection
# ---------------------------------------------------------------------------


def _normalize_assoc(f: Poly, order: Ordering) -> Poly:
    if f.ring.domain.is_field:
        return monic(f, order)
    return sign_normalize(f, order)


def poly_lcm(a: Poly, b: Poly) -> Poly:
    """lcm in a polynomial ring over ZZ or a field, unique up to the usual
    normalization (positive leading coefficient resp. monic)."""
    ring = a.ring
    order = ring.dp()
    dom = ring.domain
    if a.is_zero() or b.is_zero():
        raise ValueError("lcm with zero polynomial")
    if a.is_constant() and b.is_constant():
        if dom.is_field:
            return ring.one
        return ring.const(lcm(int(a.constant_coeff()), int(b.constant_coeff())))
    if a.is_constant() and dom.is_field:
        return _normalize_assoc(b, order)
    if b.is_constant() and dom.is_field:
        return _normalize_assoc(a, order)
    if len(a.terms) == 1 and len(b.terms) == 1:
        (ma, ca), (mb, cb) = next(iter(a.terms.items())), next(iter(b.terms.items()))
        m = tuple(max(x, y) for x, y in zip(ma, mb))
        c = dom.one if dom.is_field else lcm(int(ca), int(cb))
        return ring.poly({m: c})
    inter = intersect(Ideal(ring, [a]), Ideal(ring, [b]))
    els = inter.gb().elements
    assert len(els) == 1, "intersection of principal ideals must be principal"
    return _normalize_assoc(els[0], order)


def poly_lcm_many(polys) -> Poly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("lcm of empty list")
    acc = polys[0]
    ring = acc.ring
    if ring.domain.is_field and acc.is_constant():
        acc = ring.one
    for p in polys[1:]:
        acc = poly_lcm(acc, p)
    return _normalize_assoc(acc, ring.dp())


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """gcd via a*b / lcm(a,b) with exact division."""
    ring = a.ring
    order = ring.dp()
    l = poly_lcm(a, b)
    prod_ab = a * b
    g = exact_div_poly(prod_ab, l, order)
    return _normalize_assoc(g, order)
