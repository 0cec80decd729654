"""Primary decomposition over QQ and F_p, built on univariate factorization.

The factorization stack is self-contained: Cantor-Zassenhaus over prime
fields (squarefree split, distinct-degree, randomized equal-degree) and
Hensel-lifted recombination over the rationals.  Multivariate polynomials
are factored by packing the exponents into a single variable (substituting
x_i -> t^(D^i)), factoring the univariate image and unpacking minimal
dividing subsets; contents are split off recursively through the same path.

Positive-dimensional ideals are reduced to dimension zero over the rational
function field in a maximal independent set u: all arithmetic stays in K[x]
with block orderings (main variables >> u), denominators are never formed,
and components are contracted at the end by saturating away the K[u]-leading
coefficients.  Zero-dimensional ideals are split along the factorized
minimal polynomials of variables and of seeded random forms; a component is
accepted as primary only once its accumulated radical candidate is certified
maximal by a primitive element (an irreducible minimal polynomial of full
degree), so nothing is ever reported primary on heuristic grounds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt, lcm

from . import gb as gblib
from .ideals import (
    Ideal,
    equals,
    ideal_sum,
    intersect,
    max_independent_set,
    poly_lcm_many,
    saturate,
    exact_div_poly,
)
from .numth import factorize
from .poly import (
    GF,
    Ordering,
    Poly,
    QQ,
    Ring,
    ZZ,
    clear_denominators,
    compose,
    monic,
    mono_deg,
    ordering_chain,
    render,
    sign_normalize,
    to_rationals,
)


def _as_int(c) -> int:
    if isinstance(c, Fraction):
        if c.denominator != 1:
            raise ArithmeticError(f"expected integral coefficient, got {c}")
        return c.numerator
    return int(c)


class DecompositionError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# dense univariate arithmetic over F_p  (lists, a[i] = coefficient of x^i)
# ---------------------------------------------------------------------------


def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def gf_add(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def gf_sub(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def gf_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def gf_scale(f, c, p):
    c %= p
    return _trim([a * c % p for a in f])


def gf_monic(f, p):
    if not f:
        return []
    return gf_scale(f, pow(f[-1], -1, p), p)


def gf_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("univariate division by zero")
    f = list(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    q = [0] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % p
        k = len(f) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            f[i + k] = (f[i + k] - c * b) % p
        _trim(f)
    return _trim(q), f


def gf_gcd(f, g, p):
    while g:
        f, g = g, gf_divmod(f, g, p)[1]
    return gf_monic(f, p)


def gf_pow_mod(f, e, m, p):
    out = [1]
    base = gf_divmod(f, m, p)[1]
    while e:
        if e & 1:
            out = gf_divmod(gf_mul(out, base, p), m, p)[1]
        e >>= 1
        if e:
            base = gf_divmod(gf_mul(base, base, p), m, p)[1]
    return out


def gf_deriv(f, p):
    return _trim([i * f[i] % p for i in range(1, len(f))])


# ---------------------------------------------------------------------------
# factorization over F_p: squarefree / distinct-degree / equal-degree
# ---------------------------------------------------------------------------


def gf_sqf_list(f, p):
    """Squarefree decomposition of monic f: list of (monic factor, multiplicity)."""
    out = []
    e = 1
    f = gf_monic(f, p)
    while len(f) > 1:
        d = gf_deriv(f, p)
        if not d:
            # f = g(x^p); take the p-th root (Frobenius fixes F_p).
            f = [f[i] for i in range(0, len(f), p)]
            e *= p
            continue
        g = gf_gcd(f, d, p)
        w = gf_divmod(f, g, p)[0]
        i = 1
        while len(w) > 1:
            y = gf_gcd(w, g, p)
            z = gf_divmod(w, y, p)[0]
            if len(z) > 1:
                out.append((z, i * e))
            w = y
            g = gf_divmod(g, y, p)[0]
            i += 1
        f = g
    return out


def gf_ddf(f, p):
    """Distinct-degree split of monic squarefree f: list of (product, degree)."""
    out = []
    h = [0, 1]  # x
    x = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = gf_pow_mod(h, p, f, p)
        g = gf_gcd(gf_sub(h, x, p), f, p)
        if len(g) > 1:
            out.append((g, d))
            f = gf_divmod(f, g, p)[0]
            h = gf_divmod(h, f, p)[1] if len(f) > 1 else []
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def gf_edf(f, d, p, rng) -> list:
    """Equal-degree split: f monic squarefree, all factors of degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        if p == 2:
            # trace map a + a^2 + a^4 + ... over F_{2^d}
            b = a
            t = a
            for _ in range(d - 1):
                t = gf_pow_mod(t, 2, f, p)
                b = gf_add(b, t, p)
        else:
            b = gf_sub(gf_pow_mod(a, (p**d - 1) // 2, f, p), [1], p)
        g = gf_gcd(b, f, p)
        if 1 < len(g) < len(f):
            return sorted(
                gf_edf(g, d, p, rng) + gf_edf(gf_divmod(f, g, p)[0], d, p, rng)
            )


def gf_factor(f, p, seed: int = 0):
    """Full factorization of f over F_p: (unit, [(monic irreducible, mult)])."""
    if len(f) <= 1:
        raise ValueError("cannot factor a constant")
    unit = f[-1] % p
    rng = random.Random(seed ^ 0x5EED)
    out = []
    for sq, mult in gf_sqf_list(f, p):
        for prod_, d in gf_ddf(sq, p):
            for irr in gf_edf(prod_, d, p, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return unit, out


def gf_irreducible(f, p) -> bool:
    """Distinct-degree irreducibility certificate for monic f."""
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    h = x
    for k in range(1, n // 2 + 1):
        h = gf_pow_mod(h, p, f, p)
        if len(gf_gcd(gf_sub(h, x, p), f, p)) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# dense univariate arithmetic over ZZ (for Hensel lifting)
# ---------------------------------------------------------------------------


def zz_mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim(out)


def zz_add(f, g):
    n = max(len(f), len(g))
    return _trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def zz_sub(f, g):
    n = max(len(f), len(g))
    return _trim([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)])


def zz_deriv(f):
    return _trim([i * f[i] for i in range(1, len(f))])


def zz_content(f):
    c = 0
    for a in f:
        c = gcd(c, a)
    return c


def zz_primitive(f):
    if not f:
        return []
    c = zz_content(f)
    if f[-1] < 0:
        c = -c
    return [a // c for a in f]


def zz_trunc(f, m):
    """Coefficients reduced into the symmetric range (-m/2, m/2]."""
    out = []
    half = m // 2
    for a in f:
        a %= m
        if a > half:
            a -= m
        out.append(a)
    return _trim(out)


def zz_divmod_exact(f, g):
    """Division f = q*g + r over ZZ performed greedily; fails unless each
    step's leading coefficient divides (sufficient for exact-division tests)."""
    f = list(f)
    dg = len(g) - 1
    q = [0] * max(0, len(f) - dg)
    while f and len(f) - 1 >= dg:
        if f[-1] % g[-1] != 0:
            return None
        c = f[-1] // g[-1]
        k = len(f) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            f[i + k] -= c * b
        _trim(f)
    if f:
        return None
    return _trim(q)


def _mod_divmod_monic(f, g, m):
    """divmod with a monic divisor, coefficients mod m."""
    f = [a % m for a in f]
    _trim(f)
    dg = len(g) - 1
    q = [0] * max(0, len(f) - dg)
    while f and len(f) - 1 >= dg:
        c = f[-1] % m
        k = len(f) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            f[i + k] = (f[i + k] - c * b) % m
        _trim(f)
    return _trim(q), f


def _mod_mul(f, g, m):
    return _trim([a % m for a in zz_mul(f, g)])


def _hensel_step(m, f, g, h, s, t):
    """One quadratic Hensel step: from f = g*h mod m to mod m^2 (h monic)."""
    mm = m * m
    e = zz_trunc(zz_sub(f, zz_mul(g, h)), mm)
    q, r = _mod_divmod_monic(_mod_mul(s, e, mm), h, mm)
    g1 = zz_trunc(zz_add(g, zz_add(_mod_mul(t, e, mm), _mod_mul(q, g, mm))), mm)
    h1 = zz_trunc(zz_add(h, r), mm)
    b = zz_trunc(zz_sub(zz_add(_mod_mul(s, g1, mm), _mod_mul(t, h1, mm)), [1]), mm)
    c, d = _mod_divmod_monic(_mod_mul(s, b, mm), h1, mm)
    s1 = zz_trunc(zz_sub(s, d), mm)
    t1 = zz_trunc(zz_sub(zz_sub(t, _mod_mul(t, b, mm)), _mod_mul(c, g1, mm)), mm)
    return g1, h1, s1, t1


def _hensel_lift(p, f, factors, l):
    """Lift monic factors of f mod p to monic factors mod p^l.

    Requires f = lc(f) * prod(factors) mod p with pairwise coprime monic
    factors and p not dividing lc(f).  Classical binary-tree multifactor
    lifting with the leading coefficient attached to the left spine.
    """
    r = len(factors)
    lc = f[-1]
    if r == 1:
        inv = pow(lc % p**l, -1, p**l)
        return [zz_trunc(gf_scale([a % p**l for a in f], inv, p**l), p**l)]
    k = r // 2
    steps = 0
    while p ** (2**steps) < p**l:
        steps += 1
    g = [lc % p]
    for fac in factors[:k]:
        g = _mod_mul(g, fac, p)
    h = [1]
    for fac in factors[k:]:
        h = _mod_mul(h, fac, p)
    g = zz_trunc(g, p)
    h = zz_trunc(h, p)
    # Bezout s*g + t*h = 1 mod p via the Euclidean algorithm over F_p.
    s, t = _gf_bezout(g, h, p)
    m = p
    for _ in range(steps):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
        if m >= p**l:
            break
    g = zz_trunc(g, p**l)
    h = zz_trunc(h, p**l)
    return _hensel_lift(p, g, factors[:k], l) + _hensel_lift(p, h, factors[k:], l)


def _gf_bezout(g, h, p):
    """s, t with s*g + t*h = 1 over F_p (g, h coprime)."""
    r0, r1 = [a % p for a in g], [a % p for a in h]
    _trim(r0), _trim(r1)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gf_sub(s0, gf_mul(q, s1, p), p)
        t0, t1 = t1, gf_sub(t0, gf_mul(q, t1, p), p)
    assert len(r0) == 1, "Bezout inputs were not coprime"
    inv = pow(r0[0], -1, p)
    return gf_scale(s0, inv, p), gf_scale(t0, inv, p)


# ---------------------------------------------------------------------------
# factorization over ZZ / QQ (Zassenhaus)
# ---------------------------------------------------------------------------


def zz_gcd_univ(f, g):
    """gcd of integer univariate polynomials, primitive with positive lc."""
    if not f:
        return zz_primitive(g)
    if not g:
        return zz_primitive(f)
    a = [Fraction(c) for c in f]
    b = [Fraction(c) for c in g]
    while b:
        a, b = b, _q_rem(a, b)
    den = lcm(*[c.denominator for c in a])
    return zz_primitive([int(c * den) for c in a])


def _q_rem(f, g):
    f = list(f)
    dg = len(g) - 1
    inv = 1 / g[-1]
    while f and len(f) - 1 >= dg:
        c = f[-1] * inv
        k = len(f) - 1 - dg
        for i, b in enumerate(g):
            f[i + k] -= c * b
        while f and f[-1] == 0:
            f.pop()
    return f


def zz_yun_squarefree(f):
    """Yun's squarefree decomposition of primitive f with positive lc."""
    out = []
    d = zz_deriv(f)
    a = zz_gcd_univ(f, d)
    if len(a) == 1:
        return [(f, 1)]
    b = zz_divmod_exact(f, a)
    c = zz_divmod_exact(d, a)
    d = zz_sub(c, zz_deriv(b))
    i = 1
    while True:
        a = zz_gcd_univ(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = zz_divmod_exact(b, a)
        if len(b) == 1:
            break
        c = zz_divmod_exact(d, a)
        d = zz_sub(c, zz_deriv(b))
        i += 1
    return out


def _mignotte_exp(f, p):
    """Smallest l with p^l beyond twice the Mignotte factor bound of f."""
    n = len(f) - 1
    norm = isqrt(sum(a * a for a in f)) + 1
    bound = 2 * (1 << n) * norm * abs(f[-1]) + 1
    l = 1
    while p**l < 2 * bound:
        l += 1
    return l


def zz_factor_squarefree(f, seed: int = 0):
    """Irreducible factors of a primitive squarefree f with positive lc."""
    n = len(f) - 1
    if n == 0:
        return []
    if n == 1:
        return [f]
    lc = f[-1]
    p = 2
    while True:
        p = _next_prime(p)
        if lc % p != 0:
            fp = [a % p for a in f]
            _trim(fp)
            if len(fp) == len(f) and len(gf_gcd(fp, gf_deriv(fp, p), p)) == 1:
                break
    _, facs = gf_factor([a % p for a in f], p, seed)
    modular = [m for m, _ in facs]
    if len(modular) == 1:
        return [f]
    l = _mignotte_exp(f, p)
    lifted = _hensel_lift(p, f, modular, l)
    pl = p**l
    result = []
    remaining = list(range(len(lifted)))
    cur = f
    s = 1
    while 2 * s <= len(remaining):
        found = False
        for subset in combinations(remaining, s):
            cand = [cur[-1]]
            for i in subset:
                cand = _mod_mul(cand, lifted[i], pl)
            cand = zz_trunc(cand, pl)
            cand = zz_primitive(cand)
            q = zz_divmod_exact(cur, cand) if cand else None
            if q is not None:
                result.append(cand)
                cur = zz_primitive(q)
                remaining = [i for i in remaining if i not in subset]
                found = True
                break
        if not found:
            s += 1
    if len(cur) > 1:
        result.append(cur)
    result.sort(key=lambda g: (len(g), [abs(c) for c in reversed(g)], g))
    return result


_prime_iter_cache = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]


def _next_prime(p):
    from .numth import is_prime

    q = p + 1
    while not is_prime(q):
        q += 1
    return q


def zz_factor(f, seed: int = 0):
    """Full factorization over ZZ of nonconstant f:
    (integer content with sign, [(primitive irreducible, multiplicity)])."""
    cont = zz_content(f)
    if f[-1] < 0:
        cont = -cont
    prim = [a // cont for a in f]
    out = []
    for sqf, mult in zz_yun_squarefree(prim):
        for irr in zz_factor_squarefree(sqf, seed):
            out.append((irr, mult))
    out.sort(key=lambda t: (len(t[0]), [abs(c) for c in reversed(t[0])], t[0], t[1]))
    return cont, out


# ---------------------------------------------------------------------------
# sparse polynomial factorization surface
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorList:
    """unit * prod(factor^mult) recomposes the input; factors are monic over
    fields and primitive with positive leading coefficient over ZZ."""

    unit: object
    factors: tuple

    def recompose(self, ring: Ring) -> Poly:
        out = ring.const(self.unit)
        for g, m in self.factors:
            out = out * g**m
        return out


_PACK_DEGREE_GUARD = 4000


def _to_dense(f: Poly, var: int) -> list:
    out = [f.ring.domain.zero] * (f.degree_in(var) + 1)
    for m, c in f.terms.items():
        out[m[var]] = c
    return _trim(list(out))


def _from_dense(coeffs, ring: Ring, var: int) -> Poly:
    terms = {}
    for e, c in enumerate(coeffs):
        if c:
            m = [0] * ring.n
            m[var] = e
            terms[tuple(m)] = c
    return ring.poly(terms)


def squarefree_part(f: Poly) -> Poly:
    """Product of the distinct irreducible factors of a univariate f over a
    field; handles vanishing derivative in characteristic p by root descent."""
    if f.is_zero():
        raise ValueError("squarefree part of zero")
    used = f.variables_used()
    if len(used) > 1:
        raise ValueError("squarefree_part expects a univariate polynomial")
    ring = f.ring
    order = ring.dp()
    if f.is_constant():
        return ring.one
    var = used.pop()
    if ring.domain.char == 0:
        dense = _to_dense(clear_denominators(f, order), var)
        part = zz_divmod_exact(dense, zz_gcd_univ(dense, zz_deriv(dense)))
        qdense = [Fraction(c) for c in part]
        return monic(_from_dense(qdense, ring, var), order)
    p = ring.domain.p
    dense = [int(c) for c in _to_dense(f, var)]
    out = [1]
    for g, _ in gf_sqf_list(dense, p):
        out = gf_mul(out, g, p)
    return _from_dense(out, ring, var)


def _factor_dense_in_var(dense, ring: Ring, var: int, seed: int):
    """Factor a one-variable dense image inside a multivariate ring."""
    if ring.domain.char == 0:
        cont, facs = zz_factor([_as_int(c) for c in dense], seed)
        out = []
        unit = Fraction(cont)
        for g, m in facs:
            unit *= Fraction(g[-1]) ** m
            out.append((monic(_from_dense([Fraction(c) for c in g], ring, var), ring.dp()), m))
        return unit, out
    p = ring.domain.p
    unit, facs = gf_factor([int(c) % p for c in dense], p, seed)
    return unit, [(_from_dense(g, ring, var), m) for g, m in facs]


def _kronecker_pack(f: Poly, used: list) -> tuple[list, int, list]:
    """Pack the used variables into one: x_(pos k) -> t^(D^k).

    Higher-degree variables get the low positions, which minimizes the packed
    degree.  Returns (dense coefficients, D, position -> variable index).
    """
    degs = {v: f.degree_in(v) for v in used}
    pos_to_var = sorted(used, key=lambda v: (-degs[v], v))
    D = max(degs.values()) + 1
    weights = {v: D**k for k, v in enumerate(pos_to_var)}
    packed: dict[int, object] = {}
    for m, c in f.terms.items():
        e = sum(m[v] * weights[v] for v in used)
        packed[e] = c
    top = max(packed)
    if top > _PACK_DEGREE_GUARD:
        raise DecompositionError(
            f"packed factorization degree {top} beyond the supported scale"
        )
    dense = [0] * (top + 1)
    for e, c in packed.items():
        dense[e] = c
    return dense, D, pos_to_var


def _kronecker_unpack(dense, D: int, pos_to_var: list, ring: Ring) -> Poly:
    terms = {}
    for e, c in enumerate(dense):
        if c:
            m = [0] * ring.n
            rem = e
            for v in pos_to_var:
                m[v] = rem % D
                rem //= D
            assert rem == 0
            terms[tuple(m)] = c
    return ring.poly(terms)


def _try_exact_divide(f: Poly, g: Poly):
    try:
        return exact_div_poly(f, g)
    except ArithmeticError:
        return None


def factor_poly(f: Poly, seed: int = 0) -> FactorList:
    """Factor a QQ[x] or F_p[x] polynomial into monic irreducibles.

    Multivariate inputs go through Kronecker substitution: the univariate
    image is factored and minimal dividing sub-multisets are unpacked, which
    yields irreducible factors because any smaller split would have been
    found at a smaller subset size.
    """
    ring = f.ring
    dom = ring.domain
    order = ring.dp()
    if f.is_zero():
        raise ValueError("cannot factor zero")
    if f.is_constant():
        return FactorList(f.constant_coeff(), ())
    # Leading coefficients are multiplicative, so with monic factors the
    # unit is just the dp-leading coefficient of f.
    unit = f.leading_coeff(order)
    factors: list = []
    if dom.char == 0:
        # primitive integer coefficients, viewed back in QQ[x]
        work = to_rationals(clear_denominators(f, order))
    else:
        work = monic(f, order)
    while not work.is_constant():
        used = sorted(work.variables_used())
        if len(used) == 1:
            u2, sub = _factor_dense_in_var(_to_dense(work, used[0]), ring, used[0], seed)
            factors.extend(sub)
            break
        dense, D, pos_to_var = _kronecker_pack(work, used)
        if dom.char == 0:
            _, packed_facs = zz_factor([_as_int(c) for c in dense], seed)
        else:
            p = dom.p
            _, packed_facs = gf_factor([int(c) % p for c in dense], p, seed)
        expanded = []
        for g, m in packed_facs:
            expanded.extend([g] * m)
        if len(expanded) <= 1:
            factors.append((_canonical_factor(work, order), 1))
            break
        hit = None
        seen = set()
        max_size = len(expanded) // 2
        for size in range(1, max_size + 1):
            for combo in combinations(range(len(expanded)), size):
                key = tuple(sorted(tuple(expanded[i]) for i in combo))
                if key in seen:
                    continue
                seen.add(key)
                if dom.char == 0:
                    cand_dense = [1]
                    for i in combo:
                        cand_dense = zz_mul(cand_dense, expanded[i])
                    cand = _kronecker_unpack(zz_primitive(cand_dense), D, pos_to_var, ring)
                else:
                    cand_dense = [1]
                    for i in combo:
                        cand_dense = gf_mul(cand_dense, expanded[i], dom.p)
                    cand = _kronecker_unpack(cand_dense, D, pos_to_var, ring)
                if cand.is_constant():
                    continue
                q = _try_exact_divide(work, cand)
                if q is not None:
                    hit = (cand, q)
                    break
            if hit:
                break
        if hit is None:
            factors.append((_canonical_factor(work, order), 1))
            break
        cand, q = hit
        mult = 1
        while True:
            q2 = _try_exact_divide(q, cand)
            if q2 is None:
                break
            q = q2
            mult += 1
        factors.append((_canonical_factor(cand, order), mult))
        work = q
    if dom.char == 0:
        factors = [(monic(g, order), m) for g, m in factors]
    factors.sort(key=lambda t: (t[0].total_degree(), t[0].sort_key(order), t[1]))
    lst = FactorList(unit, tuple(factors))
    return lst


def _canonical_factor(g: Poly, order: Ordering) -> Poly:
    return monic(g, order)


def factor_univariate_fp(f: Poly) -> FactorList:
    """Irreducible factorization over F_p of a nonconstant univariate input."""
    if f.is_constant():
        raise ValueError("cannot factor a constant")
    if len(f.variables_used()) != 1:
        raise ValueError("factor_univariate_fp expects a univariate polynomial")
    if f.ring.domain.char == 0:
        raise ValueError("expected F_p coefficients")
    return factor_poly(f)


def factor_univariate_q(f: Poly) -> FactorList:
    """Irreducible factorization over QQ of a nonconstant univariate input."""
    if f.is_constant():
        raise ValueError("cannot factor a constant")
    if len(f.variables_used()) != 1:
        raise ValueError("factor_univariate_q expects a univariate polynomial")
    if f.ring.domain.char != 0:
        raise ValueError("expected rational coefficients")
    return factor_poly(f)


# ---------------------------------------------------------------------------
# zero-dimensional decomposition over K(u), all arithmetic in K[x]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldComponent:
    primary: Ideal
    prime: Ideal


_QUEUE_GUARD = 400
_SPLIT_DEPTH_GUARD = 64


def _block_order(ring: Ring, u: tuple) -> Ordering:
    main = tuple(i for i in range(ring.n) if i not in u)
    return ordering_chain(main, tuple(u))


def _u_coeff_of_leading(g: Poly, u: tuple, order: Ordering) -> Poly:
    """The K[u]-coefficient of the leading main-variable monomial of g."""
    ring = g.ring
    uset = set(u)
    main = tuple(i for i in range(ring.n) if i not in uset)

    def main_part(m):
        return tuple(m[i] if i in main else 0 for i in range(ring.n))

    main_order = Ordering((main,), "dp")
    beta = max({main_part(m) for m in g.terms}, key=main_order.key)
    return Poly(
        ring,
        {
            tuple(0 if i not in uset else m[i] for i in range(ring.n)): c
            for m, c in g.terms.items()
            if main_part(m) == beta
        },
    )


def _l_vdim(J: Ideal, u: tuple) -> int:
    """Vector space dimension over K(u) of the extension of J (zero-dim)."""
    ring = J.ring
    order = _block_order(ring, u)
    basis = J.gb(order)
    uset = set(u)
    main = [i for i in range(ring.n) if i not in uset]
    leads = []
    for g in basis.elements:
        lm = g.leading_mono(order)
        mp = tuple(lm[i] for i in main)
        if not any(mp):
            raise DecompositionError("ideal is the unit ideal over the function field")
        leads.append(mp)
    caps = []
    for k, i in enumerate(main):
        pures = [mp[k] for mp in leads if all(e == 0 for j, e in enumerate(mp) if j != k)]
        if not pures:
            raise DecompositionError("ideal is not zero-dimensional over the function field")
        caps.append(min(pures))
    count = 0
    total = 1
    for c in caps:
        total *= c
    if total > 200000:
        raise DecompositionError("vector space dimension beyond the supported scale")

    def divides(a, b):
        return all(x <= y for x, y in zip(a, b))

    from itertools import product as _product

    for mono in _product(*[range(c) for c in caps]):
        if not any(divides(mp, mono) for mp in leads):
            count += 1
    return count


def _candidate_forms(ring: Ring, u: tuple, rng, char: int):
    """Deterministic stream of forms whose minimal polynomials drive the
    splitting: main variables (last first), pairwise combinations, then
    seeded random linear and quadratic forms."""
    main = [i for i in range(ring.n) if i not in u]
    for i in reversed(main):
        yield ring.var(i)
    for a, b in combinations(reversed(main), 2):
        yield ring.var(a) + ring.var(b)
    if char != 2:
        for a, b in combinations(reversed(main), 2):
            yield ring.var(a) - ring.var(b)
    bound = 2
    for _ in range(10):
        terms = ring.zero
        for i in main:
            c = rng.randrange(-bound, bound + 1) if char == 0 else rng.randrange(char)
            terms = terms + ring.var(i).scale(c)
        if not terms.is_zero() and not terms.is_constant():
            yield terms
        bound += 1
    for _ in range(4):
        f = ring.zero
        for i in main:
            for j in main:
                if rng.randrange(2):
                    f = f + ring.var(i) * ring.var(j)
            if rng.randrange(2):
                f = f + ring.var(i)
        if not f.is_zero() and not f.is_constant():
            yield f


def _minpoly_factored(J: Ideal, u: tuple, ell: Poly, seed: int):
    """Factorized minimal polynomial of the form `ell` modulo J over K(u).

    Returns a list of (substituted factor in K[x], degree in the form,
    multiplicity); the list is empty only for the zero form.
    """
    ring = J.ring
    n = ring.n
    big = ring.append_var("@m")
    t_idx = n
    main = tuple(i for i in range(n) if i not in u)
    order = ordering_chain(main, (t_idx,), tuple(u))
    lift = lambda f: Poly(big, {m + (0,): c for m, c in f.terms.items()})
    gens = [lift(g) for g in J.gens]
    gens.append(big.var(t_idx) - lift(ell))
    basis = gblib.buchberger(gens, order, ring=big)
    cands = []
    for g in basis.elements:
        used = g.variables_used()
        if not (used & set(main)):
            dt = g.degree_in(t_idx)
            if dt >= 1:
                cands.append((dt, g.sort_key(order), g))
            else:
                raise DecompositionError("unit ideal met while computing a minimal polynomial")
    if not cands:
        raise DecompositionError("no minimal polynomial found (not zero-dimensional?)")
    cands.sort(key=lambda t: (t[0], t[1]))
    mu = cands[0][2]
    out = []
    images = [ring.var(i) for i in range(n)] + [ell]
    for fac, mult in factor_poly(mu, seed).factors:
        if t_idx in fac.variables_used():
            sub = compose(fac, images)
            out.append((monic(sub, ring.dp()), fac.degree_in(t_idx), mult))
    out.sort(key=lambda t: (t[1], t[0].sort_key(ring.dp()), t[2]))
    assert out, "minimal polynomial without any factor in the form"
    return out


def _zerodim_components(J: Ideal, u: tuple, seed: int, depth: int = 0):
    """Primary components of the extension of J over K(u), as pairs
    (primary, certified prime) of K[x] ideals still awaiting contraction."""
    if depth > _SPLIT_DEPTH_GUARD:
        raise DecompositionError(f"splitting depth exceeded for {J!r}")
    ring = J.ring
    rng = random.Random((seed * 1000003 + depth) & 0x7FFFFFFF)
    forms = list(_candidate_forms(ring, u, rng, ring.domain.char))

    def split(pieces):
        out = []
        for k, (sub, _, mult) in enumerate(pieces):
            piece = ideal_sum(J, [sub**mult])
            out.extend(_zerodim_components(piece, u, seed * 7 + k + 1, depth + 1))
        return out

    cached = []
    for ell in forms:
        facs = _minpoly_factored(J, u, ell, seed)
        cached.append(facs)
        if len(facs) >= 2:
            return split(facs)
    # No form splits J: grow a radical candidate until it is certified
    # maximal by a primitive element, or a late split shows up.
    R = J
    for facs in cached:
        sub, _, mult = facs[0]
        if mult > 1 and not R.contains(sub):
            R = ideal_sum(R, [sub])
    for _round in range(2 * ring.n + 8):
        vd = _l_vdim(R, u)
        grew = False
        for ell in forms:
            facs_r = _minpoly_factored(R, u, ell, seed + 17)
            if len(facs_r) >= 2:
                facs_j = _minpoly_factored(J, u, ell, seed)
                if len(facs_j) < 2:
                    raise DecompositionError("inconsistent split between ideal and radical")
                return split(facs_j)
            sub, dt, mult = facs_r[0]
            if mult > 1:
                R = ideal_sum(R, [sub])
                grew = True
                break
            if dt == vd:
                return [(J, R)]
        if not grew:
            break
    raise DecompositionError(
        f"could not certify a primary component for ideal {list(J.canonical_key())}"
    )


def _contract_from_function_field(A: Ideal, u: tuple) -> Ideal:
    """A K(u)[main] cap K[x]: saturate away the K[u]-leading coefficients."""
    if not u:
        return A
    order = _block_order(A.ring, u)
    basis = A.gb(order)
    coeffs = [_u_coeff_of_leading(g, u, order) for g in basis.elements]
    h = poly_lcm_many(coeffs)
    if h.is_constant():
        return A
    sat, _ = saturate(A, h)
    return sat


# ---------------------------------------------------------------------------
# primary decomposition over a field
# ---------------------------------------------------------------------------


def zerodim_primdec(I: Ideal, seed: int = 0) -> list:
    """Irredundant primary decomposition of a zero-dimensional ideal."""
    if I.is_unit():
        raise ValueError("cannot decompose the unit ideal")
    u = max_independent_set(I)
    if u:
        raise ValueError("zerodim_primdec requires a zero-dimensional ideal")
    comps = _zerodim_components(I, (), seed)
    pairs = [(q, p) for q, p in comps]
    return _assemble_components(I, pairs)


def primdec_field(I: Ideal, seed: int = 0) -> list:
    """Irredundant primary decomposition over QQ or F_p (GTZ-style reduction
    to dimension zero over K(u), with contraction by saturation)."""
    if not I.ring.domain.is_field:
        raise ValueError("primdec_field expects field coefficients")
    if I.is_unit():
        raise ValueError("cannot decompose the unit ideal")
    ring = I.ring
    if I.is_zero():
        z = Ideal(ring, [])
        return [FieldComponent(z, z)]
    queue = [I]
    raw: list = []
    steps = 0
    while queue:
        J = queue.pop()
        steps += 1
        if steps > _QUEUE_GUARD:
            raise DecompositionError(f"decomposition did not terminate for {I!r}")
        if J.is_unit():
            continue
        basis = J.gb()
        if len(basis.elements) == 1:
            # principal ideal: decomposition mirrors the factorization
            for g, m in factor_poly(basis.elements[0], seed).factors:
                raw.append((Ideal(ring, [g**m]), Ideal(ring, [g])))
            continue
        u = max_independent_set(J)
        for q, p in _zerodim_components(J, u, seed):
            raw.append(
                (_contract_from_function_field(q, u), _contract_from_function_field(p, u))
            )
        if u:
            order = _block_order(ring, u)
            h = poly_lcm_many(
                [_u_coeff_of_leading(g, u, order) for g in J.gb(order).elements]
            )
            if not h.is_constant():
                sat, m = saturate(J, h)
                if not equals(sat, J):
                    queue.append(ideal_sum(J, [h**m]))
    return _assemble_components(I, raw)


def _component_sort_key(pair):
    q, p = pair
    try:
        d = len(max_independent_set(p)) if not p.is_zero() else p.ring.n
    except ValueError:
        d = -1
    return (-d, p.canonical_key(), q.canonical_key())


def _assemble_components(I: Ideal, raw: list) -> list:
    """Merge same-prime pieces, drop redundant components, sort canonically."""
    by_prime: dict = {}
    for q, p in raw:
        key = p.canonical_key()
        if key in by_prime:
            by_prime[key] = (intersect(by_prime[key][0], q), by_prime[key][1])
        else:
            by_prime[key] = (q, p)
    comps = sorted(by_prime.values(), key=_component_sort_key)
    kept = list(comps)
    changed = True
    while changed:
        changed = False
        for i in range(len(kept)):
            others = [kept[j][0] for j in range(len(kept)) if j != i]
            if not others:
                continue
            inter = others[0]
            for o in others[1:]:
                inter = intersect(inter, o)
            if equals(inter, I):
                kept.pop(i)
                changed = True
                break
    return [FieldComponent(q, p) for q, p in kept]


def min_ass_field(I: Ideal, seed: int = 0) -> list:
    """Minimal associated primes: the inclusion-minimal primes of the
    primary decomposition, as an antichain."""
    comps = primdec_field(I, seed)
    primes = []
    seen = set()
    for c in comps:
        k = c.prime.canonical_key()
        if k not in seen:
            seen.add(k)
            primes.append(c.prime)
    from .ideals import contains_ideal

    minimal = []
    for p in primes:
        if not any(
            q is not p and q.canonical_key() != p.canonical_key() and contains_ideal(p, q)
            for q in primes
        ):
            minimal.append(p)
    minimal.sort(key=lambda p: p.canonical_key())
    return minimal
