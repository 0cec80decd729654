"""Groebner machinery: normal forms, Buchberger over fields, strong bases over ZZ.

Over a field this is textbook Buchberger with monic normalization.  Over ZZ
we compute strong Groebner bases: besides S-polynomials, each pair also
contributes a GCD-polynomial whose leading coefficient is the Bezout gcd of
the two leading coefficients, and reduction demands coefficient divisibility
on top of monomial divisibility.  Tail terms are additionally reduced modulo
leading coefficients so normal forms are canonical.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd, lcm

from .numth import xgcd
from .poly import (
    Ordering,
    Poly,
    mono_div,
    mono_divides,
    mono_gcd,
    mono_lcm,
    monic,
    sign_normalize,
)

__all__ = [
    "GBasis",
    "normal_form",
    "spoly",
    "spoly_ring",
    "gcdpoly_ring",
    "buchberger",
    "ideal_contains",
    "intersect_with_subring",
    "certify_strong",
    "random_member",
    "divisibility_witness",
    "collect_bases",
]


@dataclass(frozen=True)
class GBasis:
    order: Ordering
    elements: tuple
    strength: str  # "field" or "strong-z"
    reduced: bool = True

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _prep(elements, order):
    out = []
    for g in elements:
        m = g.leading_mono(order)
        out.append((m, g.terms[m], g))
    return out


def _normal_form_field(f: Poly, prepped, order: Ordering) -> Poly:
    dom = f.ring.domain
    work = f
    rem: dict = {}
    while work.terms:
        m = work.leading_mono(order)
        c = work.terms[m]
        for lm, lc, g in prepped:
            if mono_divides(lm, m):
                work = work.combine(dom.neg(dom.exact_div(c, lc)), mono_div(m, lm), g)
                break
        else:
            rem[m] = c
            work = Poly(work.ring, {k: v for k, v in work.terms.items() if k != m})
    return Poly(f.ring, rem)


def _normal_form_zz(f: Poly, prepped, order: Ordering) -> Poly:
    work = f
    rem: dict = {}
    while work.terms:
        m = work.leading_mono(order)
        c = work.terms[m]
        step = None
        for lm, lc, g in prepped:
            if mono_divides(lm, m) and c % lc == 0:
                step = (-(c // lc), mono_div(m, lm), g)
                break
        if step is None:
            # No full reduction; canonicalize the coefficient modulo the
            # first leading coefficient whose monomial divides.
            for lm, lc, g in prepped:
                if mono_divides(lm, m):
                    q, r = divmod(c, lc)
                    if q != 0:
                        step = (-q, mono_div(m, lm), g)
                        break
        if step is not None:
            work = work.combine(*step)
        else:
            rem[m] = c
            work = Poly(work.ring, {k: v for k, v in work.terms.items() if k != m})
    return Poly(f.ring, rem)


def normal_form(f: Poly, basis, order: Ordering | None = None) -> Poly:
    """Remainder of f on division by the basis; zero iff f is a member
    (when the basis is Groebner resp. strong Groebner)."""
    if isinstance(basis, GBasis):
        order = basis.order
        elements = basis.elements
    else:
        elements = [g for g in basis if not g.is_zero()]
        if order is None:
            raise ValueError("ordering required when basis is a plain list")
    if f.is_zero() or not elements:
        return f
    prepped = _prep(elements, order)
    if f.ring.domain.is_field:
        return _normal_form_field(f, prepped, order)
    return _normal_form_zz(f, prepped, order)


def spoly(f: Poly, g: Poly, order: Ordering) -> Poly:
    """Field S-polynomial: cancel leading terms on the lcm monomial."""
    if f.is_zero() or g.is_zero():
        raise ValueError("spoly of zero polynomial")
    dom = f.ring.domain
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    m = mono_lcm(mf, mg)
    return f.mul_term(mono_div(m, mf), dom.inv(cf)) - g.mul_term(mono_div(m, mg), dom.inv(cg))


def spoly_ring(f: Poly, g: Poly, order: Ordering) -> Poly:
    """ZZ S-polynomial, via lcm of both the monomials and the coefficients."""
    if f.is_zero() or g.is_zero():
        raise ValueError("spoly of zero polynomial")
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    m = mono_lcm(mf, mg)
    c = lcm(cf, cg)
    return f.mul_term(mono_div(m, mf), c // cf) - g.mul_term(mono_div(m, mg), c // cg)


def gcdpoly_ring(f: Poly, g: Poly, order: Ordering) -> Poly:
    """ZZ GCD-polynomial: leading term gcd(LC f, LC g) on the lcm monomial,
    built from a Bezout identity."""
    if f.is_zero() or g.is_zero():
        raise ValueError("gcdpoly of zero polynomial")
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    m = mono_lcm(mf, mg)
    _, s, t = xgcd(cf, cg)
    return f.mul_term(mono_div(m, mf), s) + g.mul_term(mono_div(m, mg), t)


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------

_collector: list | None = None


class collect_bases:
    """Context manager that records every basis produced by `buchberger`."""

    def __init__(self):
        self.bases: list[GBasis] = []

    def __enter__(self):
        global _collector
        self._saved = _collector
        _collector = self.bases
        return self.bases

    def __exit__(self, *exc):
        global _collector
        _collector = self._saved
        return False


def buchberger(gens, order: Ordering, ring=None) -> GBasis:
    """(Strong) Groebner basis of the ideal generated by `gens`, reduced,
    sign-normalized and canonically sorted."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        strength = "field" if (ring is None or ring.domain.is_field) else "strong-z"
        return GBasis(order, (), strength, True)
    ring = gens[0].ring
    if ring.domain.is_field:
        gb = _buchberger_field(gens, order)
    else:
        gb = _buchberger_zz(gens, order)
    if _collector is not None:
        _collector.append(gb)
    return gb


def _push_pairs(heap, prepped, order, k):
    for i in range(k):
        key = order.key(mono_lcm(prepped[i][0], prepped[k][0]))
        heapq.heappush(heap, (key, i, k))


def _buchberger_zz(gens, order: Ordering) -> GBasis:
    basis = []
    seen = set()
    for g in gens:
        g = sign_normalize(g, order)
        key = frozenset(g.terms.items())
        if key not in seen:
            seen.add(key)
            basis.append(g)
    prepped = _prep(basis, order)
    heap: list = []
    for k in range(len(basis)):
        _push_pairs(heap, prepped, order, k)
    while heap:
        _, i, j = heapq.heappop(heap)
        (mi, ci, fi), (mj, cj, fj) = prepped[i], prepped[j]
        candidates = []
        # Product criterion, ring-safe form: skipping needs coprime
        # monomials AND coprime leading coefficients.
        if any(mono_gcd(mi, mj)) or gcd(ci, cj) != 1:
            candidates.append(spoly_ring(fi, fj, order))
        # The gcd-polynomial is redundant when one leading coefficient
        # divides the other (Bezout pair (1,0) makes it a multiple of one
        # basis element).
        if ci % cj != 0 and cj % ci != 0:
            candidates.append(gcdpoly_ring(fi, fj, order))
        for h in candidates:
            r = _normal_form_zz(h, prepped, order) if not h.is_zero() else h
            if not r.is_zero():
                r = sign_normalize(r, order)
                basis.append(r)
                m = r.leading_mono(order)
                prepped.append((m, r.terms[m], r))
                _push_pairs(heap, prepped, order, len(basis) - 1)
    return _finalize(basis, order, "strong-z")


def _buchberger_field(gens, order: Ordering) -> GBasis:
    basis = []
    seen = set()
    for g in gens:
        g = monic(g, order)
        key = frozenset(g.terms.items())
        if key not in seen:
            seen.add(key)
            basis.append(g)
    prepped = _prep(basis, order)
    heap: list = []
    for k in range(len(basis)):
        _push_pairs(heap, prepped, order, k)
    while heap:
        _, i, j = heapq.heappop(heap)
        (mi, _, fi), (mj, _, fj) = prepped[i], prepped[j]
        if not any(mono_gcd(mi, mj)):
            continue  # product criterion
        r = _normal_form_field(spoly(fi, fj, order), prepped, order)
        if not r.is_zero():
            r = monic(r, order)
            basis.append(r)
            m = r.leading_mono(order)
            prepped.append((m, r.terms[m], r))
            _push_pairs(heap, prepped, order, len(basis) - 1)
    return _finalize(basis, order, "field")


def _finalize(basis, order: Ordering, strength: str) -> GBasis:
    """Minimize, tail-reduce, normalize and sort a completed basis."""
    is_field = strength == "field"
    nf = _normal_form_field if is_field else _normal_form_zz
    # Drop elements that reduce to zero against the rest (canonical order).
    basis = sorted(basis, key=lambda g: g.sort_key(order))
    kept: list[Poly] = []
    for idx, g in enumerate(basis):
        others = kept + basis[idx + 1 :]
        if not others or not nf(g, _prep(others, order), order).is_zero():
            kept.append(g)
    # Tail reduction for canonical output.
    reduced = []
    for idx, g in enumerate(kept):
        others = kept[:idx] + kept[idx + 1 :]
        m = g.leading_mono(order)
        lead = Poly(g.ring, {m: g.terms[m]})
        tail = g - lead
        if others and not tail.is_zero():
            tail = nf(tail, _prep(others, order), order)
        g2 = lead + tail
        reduced.append(monic(g2, order) if is_field else sign_normalize(g2, order))
    reduced.sort(key=lambda g: g.sort_key(order))
    return GBasis(order, tuple(reduced), strength, True)


# ---------------------------------------------------------------------------
# derived operations
# ---------------------------------------------------------------------------


def ideal_contains(gb: GBasis, f: Poly) -> bool:
    if f.is_zero():
        return True
    if not gb.elements:
        return False
    return normal_form(f, gb).is_zero()


def intersect_with_subring(gb: GBasis, keep: tuple[int, ...]) -> list:
    """Elements of the basis supported on the kept variables only.

    Requires the basis ordering to make every dropped variable dominate all
    kept ones, so these elements generate the elimination ideal.
    """
    if not gb.elements:
        return []
    n = gb.elements[0].ring.n
    dropped = set(range(n)) - set(keep)
    block_of = {}
    for b_idx, blk in enumerate(gb.order.blocks):
        for i in blk:
            block_of[i] = b_idx
    if dropped and keep:
        if max(block_of[d] for d in dropped) >= min(block_of[k] for k in keep):
            raise ValueError("ordering does not eliminate the dropped variables")
        for blk in gb.order.blocks:
            s = set(blk)
            if s & dropped and s - dropped:
                raise ValueError("ordering mixes dropped and kept variables in one block")
    return [g for g in gb.elements if not (g.variables_used() & dropped)]


# -- certification helpers (used by the test and acceptance suites) ----------


def certify_strong(gb: GBasis) -> list[str]:
    """Reduce every S- and GCD-polynomial of the basis to zero; returns the
    list of violations (empty for a genuine strong basis)."""
    failures = []
    elems = gb.elements
    prepped = _prep(elems, gb.order)
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            s = spoly_ring(elems[i], elems[j], gb.order)
            if not (s.is_zero() or _normal_form_zz(s, prepped, gb.order).is_zero()):
                failures.append(f"spoly({i},{j}) does not reduce to 0")
            g = gcdpoly_ring(elems[i], elems[j], gb.order)
            if not (g.is_zero() or _normal_form_zz(g, prepped, gb.order).is_zero()):
                failures.append(f"gcdpoly({i},{j}) does not reduce to 0")
    return failures


def random_member(gb: GBasis, rng, max_deg: int = 2, coeff_bound: int = 4) -> Poly:
    """Random element sum a_i g_i with small random cofactors a_i."""
    ring = gb.elements[0].ring
    out = ring.zero
    for g in gb.elements:
        terms = {}
        for _ in range(rng.randrange(0, 3)):
            m = tuple(rng.randrange(0, max_deg + 1) for _ in range(ring.n))
            c = rng.randrange(-coeff_bound, coeff_bound + 1)
            if c:
                terms[m] = terms.get(m, 0) + c
        out = out + g * ring.poly(terms)
    return out


def divisibility_witness(gb: GBasis, f: Poly) -> bool:
    """True when some basis leading term divides LT(f), coefficient included."""
    m, c = f.leading_term(gb.order)
    for g in gb.elements:
        mg, cg = g.leading_term(gb.order)
        if mono_divides(mg, m) and c % cg == 0:
            return True
    return False
