"""Sparse multivariate polynomials over ZZ, QQ and F_p.

Polynomials are dicts from exponent tuples to nonzero coefficients, tagged
with a ring (coefficient domain + ordered variable names).  Monomial
orderings are block products of degrevlex; plain dp, lex and the elimination
orderings used for saturation all arise as special cases.  Values are
treated as immutable, so they can be shared freely between tasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod

from .numth import FpField

Mono = tuple  # exponent vectors


# ---------------------------------------------------------------------------
# coefficient domains
# ---------------------------------------------------------------------------


class IntegerRing:
    name = "ZZ"
    is_field = False
    char = 0
    zero = 0
    one = 1

    def normalize(self, c):
        return int(c)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a in (1, -1)

    def divides(self, d, a):
        return d != 0 and a % d == 0

    def exact_div(self, a, d):
        q, r = divmod(a, d)
        if r:
            raise ArithmeticError(f"{d} does not divide {a} in ZZ")
        return q

    def __repr__(self):
        return self.name


class RationalField:
    name = "QQ"
    is_field = True
    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def normalize(self, c):
        return Fraction(c)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a != 0

    def divides(self, d, a):
        return d != 0

    def exact_div(self, a, d):
        return Fraction(a) / d

    def inv(self, a):
        return 1 / Fraction(a)

    def __repr__(self):
        return self.name


class PrimeField:
    is_field = True

    def __init__(self, p: int):
        self.fp = FpField(p)
        self.p = p
        self.char = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def normalize(self, c):
        return int(c) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def is_unit(self, a):
        return a % self.p != 0

    def divides(self, d, a):
        return d % self.p != 0

    def exact_div(self, a, d):
        return a * pow(d, -1, self.p) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


ZZ = IntegerRing()
QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


# ---------------------------------------------------------------------------
# monomial orderings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ordering:
    """Block ordering: compare degrevlex block by block, first block dominant.

    Every ordering used here is of this form: `dp` is one block with all
    variables, `lex` is one singleton block per variable, a two-block split
    gives the ordering that makes the first block's variables dominate.
    """

    blocks: tuple[tuple[int, ...], ...]
    tag: str = "block"

    def key(self, m: Mono):
        out = []
        for blk in self.blocks:
            out.append(sum(m[i] for i in blk))
            out.extend(-m[i] for i in reversed(blk))
        return tuple(out)

    def greater(self, a: Mono, b: Mono) -> bool:
        return self.key(a) > self.key(b)

    def describe(self) -> str:
        if self.tag in ("dp", "lex"):
            return self.tag
        return self.tag + str(list(self.blocks))


def dp(n: int) -> Ordering:
    return Ordering((tuple(range(n)),), "dp")


def lex(n: int) -> Ordering:
    return Ordering(tuple((i,) for i in range(n)), "lex")


def block_dp(n: int, dominant: tuple[int, ...]) -> Ordering:
    """dp on each block with `dominant` >> the remaining variables."""
    rest = tuple(i for i in range(n) if i not in dominant)
    blocks = tuple(b for b in (tuple(dominant), rest) if b)
    return Ordering(blocks, "block")


def elim(n: int, first: tuple[int, ...]) -> Ordering:
    """Elimination ordering: the `first` variables dominate everything else."""
    rest = tuple(i for i in range(n) if i not in first)
    blocks = tuple(b for b in (tuple(first), rest) if b)
    return Ordering(blocks, "elim")


def ordering_chain(*groups: tuple[int, ...]) -> Ordering:
    """Several blocks, earlier groups dominant (used for tag eliminations)."""
    return Ordering(tuple(g for g in groups if g), "chain")


# monomial helpers -----------------------------------------------------------


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True when x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Mono, b: Mono) -> Mono:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_deg(a: Mono) -> int:
    return sum(a)


# ---------------------------------------------------------------------------
# rings and polynomials
# ---------------------------------------------------------------------------


class Ring:
    """Polynomial ring: a coefficient domain plus ordered variable names."""

    def __init__(self, domain, variables):
        self.domain = domain
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names: {self.vars}")
        self.n = len(self.vars)
        self._zero_mono = (0,) * self.n

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.vars == other.vars
            and type(self.domain) is type(other.domain)
            and getattr(self.domain, "p", None) == getattr(other.domain, "p", None)
        )

    def __hash__(self):
        return hash((self.vars, self.domain.name))

    def __repr__(self):
        return f"{self.domain.name}[{', '.join(self.vars)}]"

    def poly(self, terms: dict) -> "Poly":
        dom = self.domain
        clean = {}
        for m, c in terms.items():
            c = dom.normalize(c)
            if c != dom.zero:
                clean[tuple(m)] = c
        return Poly(self, clean)

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(self.domain.one)

    def const(self, c) -> "Poly":
        return self.poly({self._zero_mono: c})

    def var(self, i: int) -> "Poly":
        m = [0] * self.n
        m[i] = 1
        return self.poly({tuple(m): self.domain.one})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.n)]

    def dp(self) -> Ordering:
        return dp(self.n)

    def append_var(self, name: str) -> "Ring":
        return Ring(self.domain, self.vars + (name,))

    def with_domain(self, domain) -> "Ring":
        return Ring(domain, self.vars)


class Poly:
    """Immutable sparse polynomial; `terms` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(mono_deg(m) == 0 for m in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring._zero_mono, self.ring.domain.zero)

    def total_degree(self) -> int:
        return max((mono_deg(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def variables_used(self) -> set:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        dom = self.ring.domain
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = dom.add(out.get(m, dom.zero), c)
            if s == dom.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return Poly(self.ring, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        dom = self.ring.domain
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = dom.sub(out.get(m, dom.zero), c)
            if s == dom.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return Poly(self.ring, out)

    def __neg__(self) -> "Poly":
        dom = self.ring.domain
        return Poly(self.ring, {m: dom.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        dom = self.ring.domain
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        out: dict = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                m = mono_mul(ma, mb)
                s = dom.add(out.get(m, dom.zero), dom.mul(ca, cb))
                if s == dom.zero:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Poly(self.ring, out)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, c) -> "Poly":
        dom = self.ring.domain
        c = dom.normalize(c)
        if c == dom.zero:
            return self.ring.zero
        out = {}
        for m, cc in self.terms.items():
            s = dom.mul(cc, c)
            if s != dom.zero:
                out[m] = s
        return Poly(self.ring, out)

    def mul_term(self, m: Mono, c) -> "Poly":
        dom = self.ring.domain
        c = dom.normalize(c)
        if c == dom.zero:
            return self.ring.zero
        return Poly(
            self.ring,
            {mono_mul(mm, m): dom.mul(cc, c) for mm, cc in self.terms.items()},
        )

    def combine(self, c, m: Mono, g: "Poly") -> "Poly":
        """self + c * x^m * g in one pass; the workhorse of reduction loops."""
        dom = self.ring.domain
        out = dict(self.terms)
        for mg, cg in g.terms.items():
            mm = mono_mul(mg, m)
            s = dom.add(out.get(mm, dom.zero), dom.mul(c, cg))
            if s == dom.zero:
                out.pop(mm, None)
            else:
                out[mm] = s
        return Poly(self.ring, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- ordering-dependent views ----------------------------------------------

    def leading_mono(self, order: Ordering) -> Mono:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: Ordering):
        return self.terms[self.leading_mono(order)]

    def leading_term(self, order: Ordering) -> tuple[Mono, object]:
        m = self.leading_mono(order)
        return m, self.terms[m]

    def sorted_terms(self, order: Ordering) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def sort_key(self, order: Ordering):
        """Deterministic total key: term list, ordering-descending."""
        return tuple((order.key(m), _coeff_key(c)) for m, c in self.sorted_terms(order))

    def __repr__(self):
        return f"<{render(self, self.ring.dp())} over {self.ring!r}>"

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")


def _coeff_key(c):
    if isinstance(c, Fraction):
        return (c.numerator, c.denominator)
    return (c, 1)


# ---------------------------------------------------------------------------
# content, normalization, domain maps
# ---------------------------------------------------------------------------


def int_content(f: Poly) -> int:
    """gcd of the integer coefficients (f over ZZ); 0 for the zero polynomial."""
    g = 0
    for c in f.terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def sign_normalize(f: Poly, order: Ordering) -> Poly:
    """Flip sign so the leading coefficient w.r.t. `order` is positive (ZZ)."""
    if f.is_zero():
        return f
    return -f if f.leading_coeff(order) < 0 else f


def primitive_part(f: Poly, order: Ordering) -> Poly:
    """Divide out the integer content and normalize the leading sign (ZZ)."""
    if f.is_zero():
        return f
    c = int_content(f)
    if f.leading_coeff(order) < 0:
        c = -c
    return Poly(f.ring, {m: cc // c for m, cc in f.terms.items()})


def monic(f: Poly, order: Ordering) -> Poly:
    """Scale by the inverse of the leading coefficient (field domains)."""
    if f.is_zero():
        return f
    return f.scale(f.ring.domain.inv(f.leading_coeff(order)))


def reduce_mod_p(f: Poly, p: int) -> Poly:
    """Coefficient-wise reduction ZZ[x] -> F_p[x]."""
    target = f.ring.with_domain(GF(p))
    return target.poly(f.terms)


def canonical_lift(f: Poly) -> Poly:
    """Lift F_p[x] -> ZZ[x] with coefficients in [0, p)."""
    target = f.ring.with_domain(ZZ)
    return target.poly(f.terms)


def clear_denominators(f: Poly, order: Ordering | None = None) -> Poly:
    """Map a nonzero QQ[x] polynomial to its primitive ZZ[x] associate."""
    if f.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    if order is None:
        order = f.ring.dp()
    den = lcm(*[c.denominator for c in f.terms.values()]) if f.terms else 1
    num = gcd(*[c.numerator for c in f.terms.values()])
    target = f.ring.with_domain(ZZ)
    g = target.poly({m: c.numerator * den // c.denominator // num for m, c in f.terms.items()})
    return sign_normalize(g, order)


def to_rationals(f: Poly) -> Poly:
    """View a ZZ[x] polynomial in QQ[x]."""
    return f.ring.with_domain(QQ).poly(f.terms)


def lc_decompose_ring(f: Poly, main: tuple[int, ...], p: int) -> tuple[int, Poly, Mono]:
    """Split the ZZ[u]-leading coefficient of f as p^nu * a.

    `main` lists the indices of the dominant variables;  u is the rest.  The
    leading coefficient of f as a polynomial in the main variables over
    ZZ[u] localized at p is p^nu * a with a outside pZZ[u].  Returns
    (nu, a, beta) with a in the parent ring supported on u only and beta the
    leading main-variable monomial.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no leading coefficient")
    n = f.ring.n

    def main_part(m: Mono) -> Mono:
        return tuple(m[i] if i in main else 0 for i in range(n))

    main_order = Ordering((tuple(main),), "dp") if main else None
    if main_order is None:
        beta = (0,) * n
        coeff_terms = dict(f.terms)
    else:
        beta = max({main_part(m) for m in f.terms}, key=main_order.key)
        coeff_terms = {
            tuple(0 if i in main else m[i] for i in range(n)): c
            for m, c in f.terms.items()
            if main_part(m) == beta
        }
    content = 0
    for c in coeff_terms.values():
        content = gcd(content, c)
    nu = 0
    while content % p == 0:
        content //= p
        nu += 1
    pk = p**nu
    a = Poly(f.ring, {m: c // pk for m, c in coeff_terms.items()})
    return nu, a, beta


# ---------------------------------------------------------------------------
# substitution and rendering
# ---------------------------------------------------------------------------


def compose(f: Poly, images: list[Poly]) -> Poly:
    """Evaluate f at the given images (one per variable, all in one ring)."""
    if len(images) != f.ring.n:
        raise ValueError("need one image per variable")
    target = images[0].ring if images else f.ring
    powers: list[dict[int, Poly]] = [dict() for _ in range(f.ring.n)]
    out = target.zero
    for m, c in f.terms.items():
        term = target.const(c)
        for i, e in enumerate(m):
            if e:
                if e not in powers[i]:
                    powers[i][e] = images[i] ** e
                term = term * powers[i][e]
        out = out + term
    return out


def rename_into(f: Poly, target: Ring, var_map: dict[int, int]) -> Poly:
    """Re-index the variables of f into `target` (same domain)."""
    out = {}
    for m, c in f.terms.items():
        mm = [0] * target.n
        for i, e in enumerate(m):
            if e:
                mm[var_map[i]] = e
        out[tuple(mm)] = c
    return target.poly(out)


def render(f: Poly, order: Ordering | None = None) -> str:
    """Text form like `3*x^2*y - 7`, terms descending w.r.t. the ordering."""
    if f.is_zero():
        return "0"
    if order is None:
        order = f.ring.dp()
    names = f.ring.vars
    pieces = []
    for m, c in f.sorted_terms(order):
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        neg = _coeff_is_negative(c)
        mag = -c if neg else c
        if not factors:
            body = _coeff_str(mag)
        elif mag == f.ring.domain.one:
            body = "*".join(factors)
        else:
            body = "*".join([_coeff_str(mag)] + factors)
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)


def _coeff_is_negative(c) -> bool:
    if isinstance(c, Fraction):
        return c < 0
    return isinstance(c, int) and c < 0


def _coeff_str(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c)) if not isinstance(c, Fraction) else str(c.numerator)
