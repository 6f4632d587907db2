"""Buchberger Groebner-basis engine.

Everything downstream needs only grevlex bases, plus one block elimination
order (an auxiliary variable t ranked above the whole x-block) used to
saturate by a general linear form.  The pair queue uses the normal strategy
(lcm degree, then grevlex of the lcm) with Buchberger's coprime-lcm and chain
criteria.

Over the rationals the inner loop is fraction-free: working polynomials keep
coprime integer coefficients, reduction cross-multiplies instead of dividing,
and intermediate results are content-stripped, which is what keeps exact
arithmetic feasible at this scale.  Identical inputs give bit-identical
bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .borel import MonomialIdeal
from .errors import InternalCheckError, SaturationRetryError
from .ring import (Mono, Polynomial, PolyIdeal, PrimeField, RingCtx,
                   apply_linear_change, grevlex_key, mono_degree,
                   mono_disjoint, mono_div, mono_lcm, mono_mul,
                   seeded_invertible_matrix, seeded_linear_form)

GREVLEX = "grevlex"
ELIM_FIRST = "elim-first"


def _order_key(order: str):
    if order == GREVLEX:
        return grevlex_key
    if order == ELIM_FIRST:
        # block order: the first variable beats any monomial in the rest,
        # grevlex inside the x-block
        def key(m: Mono):
            rest = m[1:]
            return (m[0], sum(rest), tuple(-e for e in reversed(rest)))
        return key
    raise ValueError(f"unknown order {order!r}")


def _memo_key(order: str):
    key = _order_key(order)
    cache: dict = {}

    def memo(m):
        t = cache.get(m)
        if t is None:
            t = key(m)
            cache[m] = t
        return t
    return memo


@dataclass(frozen=True)
class GroebnerBasis:
    ring: RingCtx
    elements: tuple
    order: str = GREVLEX
    reduced: bool = True


# ---------------------------------------------------------------------------
# integer working form
# ---------------------------------------------------------------------------
# Over QQ a working polynomial is {mono: int} with coprime coefficients; over
# GF(p) it is {mono: int in [1, p-1]} and all arithmetic is mod p.

def _to_work(f: Polynomial, p: int | None) -> dict:
    if p is not None:
        return {m: c.v for m, c in f.terms if c.v}
    den = 1
    for _, c in f.terms:
        den = den * c.denominator // gcd(den, c.denominator)
    return {m: int(c * den) for m, c in f.terms}


def _strip_int(d: dict, key) -> dict:
    if not d:
        return d
    g = 0
    for c in d.values():
        g = gcd(g, c)
    if d[max(d, key=key)] < 0:
        g = -g
    if g == 1:
        return d
    return {m: c // g for m, c in d.items()}


def _work_to_poly(ring: RingCtx, d: dict) -> Polynomial:
    field = ring.field
    return Polynomial.from_dict(ring, {m: field.of(c) for m, c in d.items()})


def _as_divisor(d: dict, key):
    lm = max(d, key=key)
    return (lm, d[lm], tuple(d.items()))


def _reduce_work(p: dict, divisors, key, p_mod: int | None, exact: bool = False):
    """Core division loop on integer working polynomials.

    Divisors are tried in list order, the leading term first.  Over QQ the
    reduction is fraction-free: to cancel the lead it scales the whole
    remainder-in-progress by lc(g)/gcd instead of dividing, and returns the
    accumulated scale so exact callers can undo it.  In non-exact mode the
    working polynomial is content-stripped as it goes.
    """
    p = dict(p)
    remainder: dict = {}
    scale = 1
    steps = 0
    while p:
        m = max(p, key=key)
        c = p[m]
        hit = None
        for div in divisors:
            q = mono_div(m, div[0])
            if q is not None:
                hit = (q, div)
                break
        if hit is None:
            remainder[m] = c
            del p[m]
            continue
        q, (lm, lc, terms) = hit
        if p_mod is None:
            g = gcd(c, lc)
            a = lc // g
            b = c // g
            if a < 0:
                a, b = -a, -b
            if a != 1:
                scale *= a
                for mm in p:
                    p[mm] *= a
                for mm in remainder:
                    remainder[mm] *= a
            for gm, gc in terms:
                mm = mono_mul(gm, q)
                s = p.get(mm, 0) - b * gc
                if s:
                    p[mm] = s
                else:
                    p.pop(mm, None)
        else:
            f = c * pow(lc, -1, p_mod) % p_mod
            for gm, gc in terms:
                mm = mono_mul(gm, q)
                s = (p.get(mm, 0) - f * gc) % p_mod
                if s:
                    p[mm] = s
                else:
                    p.pop(mm, None)
        steps += 1
        if not exact and p_mod is None and steps % 8 == 0 and p:
            g = 0
            for cc in p.values():
                g = gcd(g, cc)
            for cc in remainder.values():
                g = gcd(g, cc)
            if g > 1:
                p = {m: c // g for m, c in p.items()}
                remainder = {m: c // g for m, c in remainder.items()}
    return remainder, scale


# ---------------------------------------------------------------------------
# public division / normal form
# ---------------------------------------------------------------------------

def reduce(f: Polynomial, G, order: str = GREVLEX) -> Polynomial:
    """Normal form of f modulo the polynomial list G: no term of the result is
    divisible by any leading monomial of G, and f minus the result lies in the
    ideal generated by G.  Divisors are tried in list order (deterministic);
    empty G returns f unchanged."""
    ring = f.ring
    for g in G:
        ring.check_same(g.ring)
    p_mod = ring.field.p if isinstance(ring.field, PrimeField) else None
    key = _memo_key(order)
    divisors = [_as_divisor(_to_work(g, p_mod), key) for g in G if not g.is_zero]
    if not divisors:
        return f
    if p_mod is not None:
        work = _to_work(f, p_mod)
        rem, _ = _reduce_work(work, divisors, key, p_mod, exact=True)
        return _work_to_poly(ring, rem)
    den = 1
    for _, c in f.terms:
        den = den * c.denominator // gcd(den, c.denominator)
    work = {m: int(c * den) for m, c in f.terms}
    rem, scale = _reduce_work(work, divisors, key, None, exact=True)
    undo = Fraction(1, scale * den)
    return Polynomial.from_dict(ring, {m: Fraction(c) * undo for m, c in rem.items()})


def spoly(f: Polynomial, g: Polynomial, order: str = GREVLEX) -> Polynomial:
    """S-polynomial, normalized so both leading terms cancel exactly."""
    key = _order_key(order)
    lmf = max((m for m, _ in f.terms), key=key)
    lmg = max((m for m, _ in g.terms), key=key)
    lcf = dict(f.terms)[lmf]
    lcg = dict(g.terms)[lmg]
    lcm = mono_lcm(lmf, lmg)
    a = mono_div(lcm, lmf)
    b = mono_div(lcm, lmg)
    d: dict = {}
    for m, c in f.terms:
        d[mono_mul(m, a)] = c / lcf
    for m, c in g.terms:
        mm = mono_mul(m, b)
        s = d.get(mm)
        s = -(c / lcg) if s is None else s - c / lcg
        if s:
            d[mm] = s
        else:
            d.pop(mm, None)
    return Polynomial.from_dict(f.ring, d)


def _spoly_work(di: dict, dj: dict, key, p_mod: int | None) -> dict:
    lmi = max(di, key=key)
    lmj = max(dj, key=key)
    lci, lcj = di[lmi], dj[lmj]
    lcm = mono_lcm(lmi, lmj)
    qi = mono_div(lcm, lmi)
    qj = mono_div(lcm, lmj)
    if p_mod is None:
        g = gcd(lci, lcj)
        a, b = lcj // g, lci // g
    else:
        a, b = 1, lci * pow(lcj, -1, p_mod) % p_mod
    out: dict = {}
    for m, c in di.items():
        out[mono_mul(m, qi)] = a * c
    for m, c in dj.items():
        mm = mono_mul(m, qj)
        s = out.get(mm, 0) - b * c
        if p_mod is not None:
            s %= p_mod
        if s:
            out[mm] = s
        else:
            out.pop(mm, None)
    return out


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------

def _buchberger_raw(ring: RingCtx, polys, order: str) -> GroebnerBasis:
    """Reduced basis of an arbitrary (possibly inhomogeneous) generator list."""
    key = _memo_key(order)
    p_mod = ring.field.p if isinstance(ring.field, PrimeField) else None
    G: list = []  # (lm, lc, terms) in insertion order
    for f in polys:
        if f.is_zero:
            continue
        w = _to_work(f, p_mod)
        if p_mod is None:
            w = _strip_int(w, key)
        if w:
            G.append(_as_divisor(w, key))
    pending = {(i, j) for j in range(len(G)) for i in range(j)}

    def pair_rank(pair):
        i, j = pair
        lcm = mono_lcm(G[i][0], G[j][0])
        return (mono_degree(lcm), key(lcm), i, j)

    while pending:
        i, j = min(pending, key=pair_rank)
        pending.discard((i, j))
        lm_i, lm_j = G[i][0], G[j][0]
        if mono_disjoint(lm_i, lm_j):
            continue
        lcm = mono_lcm(lm_i, lm_j)
        chained = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if (mono_div(lcm, G[k][0]) is not None
                    and (min(i, k), max(i, k)) not in pending
                    and (min(j, k), max(j, k)) not in pending):
                chained = True
                break
        if chained:
            continue
        s = _spoly_work(dict(G[i][2]), dict(G[j][2]), key, p_mod)
        r, _ = _reduce_work(s, G, key, p_mod)
        if r:
            if p_mod is None:
                r = _strip_int(r, key)
            G.append(_as_divisor(r, key))
            new = len(G) - 1
            pending.update((t, new) for t in range(new))

    # minimalize: keep only elements whose lm is not divisible by another lm
    order_idx = sorted(range(len(G)), key=lambda t: key(G[t][0]))
    kept: list = []
    for t in order_idx:
        if not any(mono_div(G[t][0], G[s][0]) is not None for s in kept):
            kept.append(t)
    minimal = [G[t] for t in kept]
    # interreduce tails, then normalize leading coefficients to 1
    reduced = []
    for idx in range(len(minimal)):
        others = minimal[:idx] + minimal[idx + 1:]
        r, _ = _reduce_work(dict(minimal[idx][2]), others, key, p_mod)
        if p_mod is None:
            r = _strip_int(r, key)
        reduced.append(_work_to_poly(ring, r).monic())
    reduced.sort(key=lambda f: key(max((m for m, _ in f.terms), key=key)))
    return GroebnerBasis(ring, tuple(reduced), order=order, reduced=True)


def buchberger(I: PolyIdeal, order: str = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of a homogeneous ideal.  Idempotent: feeding the
    result back in returns the same basis."""
    return _buchberger_raw(I.ring, I.gens, order)


def initial_ideal(G: GroebnerBasis) -> MonomialIdeal:
    """Monomial ideal of leading terms.  For a reduced basis the leading
    monomials are exactly the minimal generators."""
    if not G.reduced:
        raise ValueError("initial_ideal expects a reduced basis")
    key = _order_key(G.order)
    lms = [max((m for m, _ in g.terms), key=key) for g in G.elements]
    return MonomialIdeal.make(G.ring.num_vars, lms)


def is_member(f: Polynomial, G: GroebnerBasis) -> bool:
    return reduce(f, G.elements, G.order).is_zero


def ideals_equal(I: PolyIdeal, J: PolyIdeal) -> bool:
    """Membership-equality in both directions via reduced bases."""
    GI = buchberger(I)
    GJ = buchberger(J)
    return (all(is_member(g, GI) for g in J.gens)
            and all(is_member(g, GJ) for g in I.gens))


def spoly_certificate(G: GroebnerBasis) -> bool:
    """Re-check the full Buchberger criterion on a finished basis: every
    S-polynomial reduces to zero."""
    els = G.elements
    for j in range(len(els)):
        for i in range(j):
            if not reduce(spoly(els[i], els[j], G.order), list(els), G.order).is_zero:
                return False
    return True


# ---------------------------------------------------------------------------
# Hilbert functions by exact linear algebra (the dual route to monomial
# counting; used to cross-check initial ideals)
# ---------------------------------------------------------------------------

def _int_rank(rows) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        a = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            b = rows[r][col]
            if b:
                g = gcd(a, b)
                aa, bb = a // g, b // g
                rows[r] = [aa * x - bb * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _fp_rank(rows, p: int) -> int:
    rows = [[v % p for v in r] for r in rows]
    rows = [r for r in rows if any(r)]
    rank = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        for r in range(rank + 1, len(rows)):
            b = rows[r][col]
            if b:
                f = b * inv % p
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _monomials_of_degree(n: int, d: int):
    if d < 0:
        return []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)
    rec((), d, n)
    return out


def graded_dimension(I: PolyIdeal, d: int) -> int:
    """dim_k of the degree-d piece of I, as the rank of the span of all
    monomial multiples m*g with deg(m*g) = d."""
    ring = I.ring
    n = ring.num_vars
    monos_d = _monomials_of_degree(n, d)
    index = {m: i for i, m in enumerate(monos_d)}
    p_mod = ring.field.p if isinstance(ring.field, PrimeField) else None
    rows = []
    for g in I.gens:
        dg = g.degree()
        if dg > d:
            continue
        work = _to_work(g, p_mod)
        for mult in _monomials_of_degree(n, d - dg):
            row = [0] * len(monos_d)
            for m, c in work.items():
                row[index[mono_mul(m, mult)]] = c
            rows.append(row)
    if not rows:
        return 0
    return _fp_rank(rows, p_mod) if p_mod is not None else _int_rank(rows)


def hilbert_function_rank_oracle(I: PolyIdeal, d: int) -> int:
    """HF(R/I, d) computed without Groebner bases."""
    n = I.ring.num_vars
    return comb(n - 1 + d, n - 1) - graded_dimension(I, d)


# ---------------------------------------------------------------------------
# saturation by a general linear form
# ---------------------------------------------------------------------------

def _probable_initial_ideal(I: PolyIdeal, seed: int, bound: int = 1000) -> MonomialIdeal:
    """Initial ideal after one seeded random coordinate change."""
    M = seeded_invertible_matrix(I.ring.num_vars, seed, bound, I.ring.field)
    moved = [apply_linear_change(g, M) for g in I.gens]
    return initial_ideal(_buchberger_raw(I.ring, moved, GREVLEX))


def _mix_seed(master: int, idx: int) -> int:
    """Fixed splitmix64-style mixer deriving independent sub-seeds, so adding
    trials never perturbs earlier ones."""
    mask = (1 << 64) - 1
    z = (master + 0x9E3779B97F4A7C15 * (idx + 1)) & mask
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
    return z ^ (z >> 31)


def saturate_by_general_linear_form(I: PolyIdeal, seed: int = 0,
                                    bound: int = 1000) -> PolyIdeal:
    """I : L^infinity for a seeded random linear form L; for general L this is
    the saturation with respect to the irrelevant maximal ideal, because a
    general linear form misses every associated prime except possibly the
    irrelevant one.

    Computed by the auxiliary-variable trick: adjoin t ranked above all x_i,
    add the generator 1 - t*L, take a reduced basis for the block order, and
    keep the t-free elements.  The result is verified a posteriori: the
    initial ideal of the output after a random coordinate change must have no
    minimal generator involving the last variable (unsaturated ideals are
    detected exactly by such generators).  A failed check raises
    SaturationRetryError so the caller can retry with a fresh seed.
    """
    ring = I.ring
    n = ring.num_vars
    ext = RingCtx(n + 1, ring.field)
    L = seeded_linear_form(ring, _mix_seed(seed, 0), bound)

    def embed(f: Polynomial) -> Polynomial:
        return Polynomial.from_dict(ext, {(0,) + m: c for m, c in f.terms})

    cut = ext.constant(1) - ext.variable(0) * embed(L)
    basis = _buchberger_raw(ext, [embed(g) for g in I.gens] + [cut], ELIM_FIRST)
    kept = []
    elim_key = _order_key(ELIM_FIRST)
    for g in basis.elements:
        if all(m[0] == 0 for m, _ in g.terms):
            kept.append(Polynomial.from_dict(ring, {m[1:]: c for m, c in g.terms}))
        elif max((m for m, _ in g.terms), key=elim_key)[0] == 0:
            raise InternalCheckError("t-free leading term on a poly involving t")
    if not kept:
        raise InternalCheckError("saturation produced no generators")
    result = PolyIdeal.make(ring, kept)

    if any(g.degree() == 0 for g in kept):
        return result  # unit ideal: nothing left to verify
    for probe in (1, 2):
        ini = _probable_initial_ideal(result, _mix_seed(seed, probe), bound)
        if any(g[n - 1] > 0 for g in ini.min_gens):
            raise SaturationRetryError(
                f"saturation check failed for seed {seed}; retry with a new seed")
    return result
