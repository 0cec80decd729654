"""Primary decomposition in ZZ[x1..xn].

The driver computes a strong Groebner basis of the input and reads off the
generator q of I cap ZZ.  When q = 0 the decomposition is pulled back from
QQ[x] by clearing denominators and saturating away the leading-coefficient
lcm h, with a recursion on <I, h^m> picking up what lives over the integer
constants.  When q factors as prod p_i^nu_i, each prime contributes either
the lifted primary decomposition of I mod p_i (nu_i = 1) or the extraction
of a primary component for every lifted minimal associated prime (nu_i > 1);
these per-prime tasks are independent and can run on separate workers.  The
minimal components found so far never recover embedded structure on their
own: the remainder ideal I + <F^(m)> with F generating I : J is decomposed
recursively, carrying the accumulated intersection as a test ideal so the
recursion can stop as soon as nothing new is visible inside it.

Everything is deterministic for a fixed seed: per-prime seeds are derived
from the prime, results are merged in prime order, and all output is sorted
by a canonical key, so the component list is identical for any worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from . import gb as gblib
from .fielddec import FieldComponent, min_ass_field, primdec_field
from .ideals import (
    Ideal,
    contains_ideal,
    contract_from_rationals,
    contract_z,
    equals,
    ideal_sum,
    intersect,
    max_independent_set,
    poly_lcm_many,
    power_generators,
    quotient_ideal,
    rationalize,
    saturate,
    dimension,
)
from .numth import factorize, is_prime
from .poly import (
    Poly,
    QQ,
    Ring,
    ZZ,
    GF,
    canonical_lift,
    clear_denominators,
    lc_decompose_ring,
    ordering_chain,
    reduce_mod_p,
    render,
)

_REMAINDER_M_CAP = 256


@dataclass(frozen=True)
class Provenance:
    branch: str  # "rational", "prime", or "zero"
    prime: int | None = None
    nu: int | None = None
    task: int = 0
    seed: int = 0
    separator: str | None = None
    multiplier: str | None = None
    sat_exponent: int | None = None


@dataclass(frozen=True)
class Component:
    primary: Ideal
    prime: Ideal
    provenance: Provenance

    def key(self):
        return (self.primary.canonical_key(), self.prime.canonical_key())


@dataclass
class Decomposition:
    input: Ideal
    components: list
    verified: bool
    stats: dict


@dataclass
class VerifyReport:
    ok: bool
    failures: list
    warnings: list
    notes: list


class DepthExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# separators and extraction
# ---------------------------------------------------------------------------


def separators_z(B: list, P: Ideal) -> Poly:
    """Product over Q in B (Q != P) of a basis element of Q outside P.

    B must consist of pairwise incomparable primes containing the ideal
    under decomposition; the result is outside P but inside every other
    member of B."""
    ring = P.ring
    p_basis = P.gb()
    s = ring.one
    pkey = P.canonical_key()
    for Q in B:
        if Q.canonical_key() == pkey:
            continue
        pick = None
        for g in Q.canonical_gens():
            if not gblib.ideal_contains(p_basis, g):
                pick = g
                break
        if pick is None:
            raise ValueError("separator: a member of B is contained in P")
        s = s * pick
    return s


def extract_z(I: Ideal, B: list, P: Ideal, u: tuple, seed: int = 0):
    """Primary component of I associated to the minimal prime P.

    Saturates away the separator, takes a strong basis w.r.t. a block
    ordering with the variables outside u dominant, strips the p-power from
    every ZZ[u]-leading coefficient, and saturates by the lcm h of the
    p-free parts.  Returns (component, trace) with the separator, h and the
    saturation exponents recorded in the trace."""
    ring = I.ring
    p = contract_z(P)
    if p == 0 or not is_prime(p):
        raise ValueError("extract_z requires a prime ideal with prime integer contraction")
    _check_independent(P, p, u)
    s = separators_z(B, P)
    trace = {"separator": render(s)}
    if s.is_constant() and abs(int(s.constant_coeff())) == 1:
        I1, ms = I, 0
    else:
        I1, ms = saturate(I, s)
    trace["separator_exponent"] = ms
    main = tuple(i for i in range(ring.n) if i not in u)
    order = ordering_chain(main, tuple(u))
    basis = I1.gb(order)
    parts = [lc_decompose_ring(g, main, p)[1] for g in basis.elements]
    h = poly_lcm_many(parts)
    trace["multiplier"] = render(h)
    Q, mh = saturate(I1, h)
    trace["sat_exponent"] = mh
    return Q, trace


def _check_independent(P: Ideal, p: int, u: tuple):
    ring_p = P.ring.with_domain(GF(p))
    Pbar = Ideal(ring_p, [reduce_mod_p(g, p) for g in P.gens])
    order = ring_p.dp()
    uset = set(u)
    for g in Pbar.gb().elements:
        lm = g.leading_mono(order)
        support = {i for i, e in enumerate(lm) if e}
        if support and support <= uset:
            raise ValueError("u is not an independent set for P modulo p")


def lift_component(Qbar: Ideal, Pbar: Ideal, p: int) -> tuple[Ideal, Ideal]:
    """Canonical lifting F_p[x] -> ZZ[x]: adjoin p and lift coefficients
    into [0, p)."""
    ring = Qbar.ring.with_domain(ZZ)
    lift = lambda J: Ideal(ring, [ring.const(p)] + [canonical_lift(g) for g in J.canonical_gens()])
    return lift(Qbar), lift(Pbar)


# ---------------------------------------------------------------------------
# remainder splitting and redundancy removal
# ---------------------------------------------------------------------------


def remainder_split(I: Ideal, J: Ideal, test_ideal: Ideal | None = None) -> tuple[int, Ideal]:
    """Smallest tried m with J cap (I + <F^(m)>) = I, where F generates I : J
    (intersected further with the test ideal when one is carried)."""
    F = list(quotient_ideal(I, J).canonical_gens())
    target = I if test_ideal is None else intersect(test_ideal, I)
    JT = J if test_ideal is None else intersect(test_ideal, J)
    for m in range(1, _REMAINDER_M_CAP + 1):
        Irem = ideal_sum(I, power_generators(F, m))
        if equals(intersect(JT, Irem), target):
            return m, Irem
    raise RuntimeError(f"no remainder exponent up to {_REMAINDER_M_CAP} for {I!r}")


def _zdim(P: Ideal) -> int:
    """Krull dimension of ZZ[x]/P for a prime P (used for canonical order)."""
    try:
        if P.is_zero():
            return P.ring.n + 1
        q = contract_z(P)
        if q == 0:
            return dimension(rationalize(P)) + 1
        return dimension(Ideal(P.ring.with_domain(GF(q)), [reduce_mod_p(g, q) for g in P.gens]))
    except Exception:
        return -1


def component_sort_key(c: Component):
    return (-_zdim(c.prime), c.prime.canonical_key(), c.primary.canonical_key())


def remove_redundant(components: list, keep_against: Ideal | None = None) -> list:
    """Drop components whose removal leaves the total intersection
    (including keep_against) unchanged; greedy in canonical order."""
    uniq: dict = {}
    for c in sorted(components, key=component_sort_key):
        uniq.setdefault(c.key(), c)
    kept = list(uniq.values())
    if not kept:
        return kept

    def total(comps):
        acc = keep_against
        for c in comps:
            acc = c.primary if acc is None else intersect(acc, c.primary)
        return acc

    goal = total(kept)
    changed = True
    while changed and len(kept) > 1:
        changed = False
        for i in range(len(kept)):
            rest = kept[:i] + kept[i + 1 :]
            t = total(rest)
            if t is not None and equals(t, goal):
                kept.pop(i)
                changed = True
                break
    return kept


# ---------------------------------------------------------------------------
# the driver
# ---------------------------------------------------------------------------


def _derived_seed(seed: int, salt: int) -> int:
    return (seed * 1000003 + salt * 7919 + 1) & 0x7FFFFFFF


def _mod_p_ideal(I: Ideal, p: int) -> Ideal:
    ring_p = I.ring.with_domain(GF(p))
    return Ideal(ring_p, [reduce_mod_p(g, p) for g in I.gens])


def _prime_task(args):
    """Work unit for one prime p dividing q; returns plain Components."""
    gens_terms, var_names, p, nu, task_index, seed = args
    ring = Ring(ZZ, var_names)
    I = Ideal(ring, [ring.poly(t) for t in gens_terms])
    Ibar = _mod_p_ideal(I, p)
    out = []
    if nu == 1:
        for fc in primdec_field(Ibar, seed=seed):
            Q, P = lift_component(fc.primary, fc.prime, p)
            out.append(
                Component(Q, P, Provenance("prime", p, nu, task_index, seed))
            )
    else:
        primes_bar = min_ass_field(Ibar, seed=seed)
        lifted = []
        for Pbar in primes_bar:
            _, P = lift_component(Pbar, Pbar, p)
            lifted.append((Pbar, P))
        A = [P for _, P in lifted]
        for Pbar, P in lifted:
            u = max_independent_set(Pbar)
            Q, trace = extract_z(I, A, P, u, seed)
            out.append(
                Component(
                    Q,
                    P,
                    Provenance(
                        "prime",
                        p,
                        nu,
                        task_index,
                        seed,
                        separator=trace["separator"],
                        multiplier=trace["multiplier"],
                        sat_exponent=trace["sat_exponent"],
                    ),
                )
            )
    return out


def _run_tasks(task_args, jobs: int):
    if jobs <= 1 or len(task_args) <= 1:
        return [_prime_task(a) for a in task_args]
    import multiprocessing as mp

    ctx = mp.get_context("fork")
    with ProcessPoolExecutor(max_workers=min(jobs, len(task_args)), mp_context=ctx) as pool:
        return list(pool.map(_prime_task, task_args))


def _intersect_with(T: Ideal | None, J: Ideal) -> Ideal:
    return J if T is None else intersect(T, J)


def primdec_z(
    I: Ideal,
    T: Ideal | None = None,
    jobs: int = 1,
    seed: int = 0,
    max_depth: int = 32,
) -> Decomposition:
    """Irredundant primary decomposition of an ideal in ZZ[x].

    T is the optional test ideal carried through recursive calls; jobs
    bounds the number of concurrent per-prime workers.  Output order and
    content are independent of jobs."""
    if I.ring.domain.name != "ZZ":
        raise ValueError("primdec_z expects integer coefficients")
    if I.is_unit():
        raise ValueError("cannot decompose the unit ideal")
    stats: dict = {"primes": [], "remainder_exponents": [], "branch_seconds": {}}
    comps = _primdec_rec(I, T, jobs, seed, 0, max_depth, stats)
    comps = sorted({c.key(): c for c in comps}.values(), key=component_sort_key)
    return Decomposition(I, comps, False, stats)


def _primdec_rec(I, T, jobs, seed, depth, max_depth, stats):
    if depth > max_depth:
        raise DepthExceeded(f"recursion depth {depth} exceeded on {I!r}")
    ring = I.ring
    if I.is_zero():
        z = Ideal(ring, [])
        return [Component(z, z, Provenance("zero", seed=seed))]
    q = contract_z(I)
    if q == 0:
        return _rational_branch(I, T, jobs, seed, depth, max_depth, stats)
    fac = factorize(q, seed)
    stats["primes"].append([[p, nu] for p, nu in fac.factors])
    gens_terms = [g.terms for g in I.gens]
    task_args = [
        (gens_terms, ring.vars, p, nu, idx, _derived_seed(seed, p))
        for idx, (p, nu) in enumerate(fac.factors)
    ]
    t0 = time.perf_counter()
    results = _run_tasks(task_args, jobs)
    stats["branch_seconds"][f"q={q}@d{depth}"] = round(time.perf_counter() - t0, 6)
    L: list = []
    for res in results:
        L.extend(res)
    Jp = L[0].primary
    for c in L[1:]:
        Jp = intersect(Jp, c.primary)
    if equals(_intersect_with(T, Jp), _intersect_with(T, I)):
        return L
    m, Irem = remainder_split(I, Jp, test_ideal=T)
    stats["remainder_exponents"].append(m)
    Trec = _intersect_with(T, Jp)
    M = _primdec_rec(Irem, Trec, jobs, _derived_seed(seed, depth + 101), depth + 1, max_depth, stats)
    M = remove_redundant(M, keep_against=Trec)
    return L + M


def _rational_branch(I, T, jobs, seed, depth, max_depth, stats):
    sat, h, m = contract_from_rationals(I)
    stats.setdefault("rational_h", []).append([h, m])
    fcomps = primdec_field(rationalize(I), seed=_derived_seed(seed, 2))
    L = []
    for fc in fcomps:
        Q = _contract_rational_component(fc.primary, I.ring)
        P = _contract_rational_component(fc.prime, I.ring)
        L.append(
            Component(
                Q,
                P,
                Provenance("rational", seed=seed, multiplier=str(h), sat_exponent=m),
            )
        )
    if h == 1 or m == 0:
        return L
    Jp = L[0].primary
    for c in L[1:]:
        Jp = intersect(Jp, c.primary)
    Trec = _intersect_with(T, Jp)
    Irem = ideal_sum(I, [I.ring.const(h**m)])
    M = _primdec_rec(Irem, Trec, jobs, _derived_seed(seed, depth + 103), depth + 1, max_depth, stats)
    M = remove_redundant(M, keep_against=Trec)
    return L + M


def _contract_rational_component(F: Ideal, ring_z: Ring) -> Ideal:
    if F.is_zero():
        return Ideal(ring_z, [])
    gens = [clear_denominators(g) for g in F.canonical_gens()]
    Iz = Ideal(ring_z, gens)
    sat, _, _ = contract_from_rationals(Iz)
    return sat


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify(D: Decomposition) -> VerifyReport:
    """Check the contract of a decomposition: exact recomposition,
    containments, radical witnesses, prime contractions, irredundancy.
    Claims resting on backend certificates are reported as notes."""
    failures, warnings, notes = [], [], []
    comps = D.components
    if not comps:
        failures.append("empty decomposition")
        return VerifyReport(False, failures, warnings, notes)
    inter = comps[0].primary
    for c in comps[1:]:
        inter = intersect(inter, c.primary)
    if not equals(inter, D.input):
        failures.append("recomposition: intersection of primaries differs from the input")
    for idx, c in enumerate(comps):
        for g in c.primary.gens:
            if not c.prime.contains(g):
                failures.append(f"component {idx}: primary not contained in its prime")
                break
        bound = max(2, sum(max(g.total_degree(), 1) for g in c.primary.canonical_gens()))
        for g in c.prime.canonical_gens():
            gk = g
            found = False
            for _ in range(bound):
                if c.primary.contains(gk):
                    found = True
                    break
                gk = gk * g
            if not found:
                warnings.append(
                    f"component {idx}: no power of a prime generator found in the primary "
                    f"within the degree bound {bound}"
                )
        qz = contract_z(c.prime)
        if qz != 0 and not is_prime(qz):
            failures.append(f"component {idx}: integer contraction {qz} of the prime is composite")
        if c.provenance.branch == "rational":
            notes.append(
                f"component {idx}: primality of the contracted prime rests on the "
                "field backend certificate"
            )
    keys = [c.prime.canonical_key() for c in comps]
    if len(set(keys)) != len(keys):
        failures.append("associated primes are not pairwise distinct")
    if len(comps) > 1:
        for i in range(len(comps)):
            rest = [c.primary for j, c in enumerate(comps) if j != i]
            acc = rest[0]
            for r in rest[1:]:
                acc = intersect(acc, r)
            if equals(acc, D.input):
                failures.append(f"component {i} is redundant")
    return VerifyReport(not failures, failures, warnings, notes)
