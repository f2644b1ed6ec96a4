"""Buchberger's algorithm with Gebauer-Moeller pair pruning.

Internally polynomials are primitive integer-coefficient dicts so reduction
is fraction-free; results are converted back to monic rational polynomials.
Selection is the normal strategy (minimal lcm under the active order) with a
colexicographic pair-index tie-break, so output is deterministic for a fixed
order and input sequence.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ResourceLimitExceeded
from .orders import (
    DEGREVLEX,
    MonomialOrder,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)
from .poly import Polynomial, Ring


@dataclass
class GroebnerLimits:
    """Resource caps for basis computations (documented defaults)."""

    max_degree: int = 24
    max_basis: int = 20000
    time_budget: float = 600.0

    def deadline(self) -> float:
        return time.monotonic() + self.time_budget


DEFAULT_LIMITS = GroebnerLimits()


def _to_int_terms(p: Polynomial) -> dict:
    """Clear denominators and content; empty dict for zero."""
    if p.is_zero():
        return {}
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    terms = {m: int(c * den) for m, c in p.terms.items()}
    g = 0
    for v in terms.values():
        g = gcd(g, v)
    return {m: v // g for m, v in terms.items()}


def _normalize_sign(terms: dict, key) -> dict:
    if not terms:
        return terms
    lm = max(terms, key=key)
    if terms[lm] < 0:
        return {m: -c for m, c in terms.items()}
    return terms


def _content(terms: dict) -> int:
    g = 0
    for v in terms.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def _strip_content(terms: dict) -> dict:
    g = _content(terms)
    if g > 1:
        return {m: c // g for m, c in terms.items()}
    return terms


def reduce_int(f: dict, basis: list, key) -> dict:
    """Full normal form of integer-terms f modulo basis, up to positive scale.

    ``basis`` entries are (lm, lc, terms) with lc > 0.
    """
    rem: dict = {}
    work = dict(f)
    while work:
        lm = max(work, key=key)
        lc = work[lm]
        reducer = None
        for blm, blc, bterms in basis:
            if mono_divides(blm, lm):
                reducer = (blm, blc, bterms)
                break
        if reducer is None:
            rem[lm] = lc
            del work[lm]
            continue
        blm, blc, bterms = reducer
        shift = mono_div(lm, blm)
        # work = blc * work - lc * shift(b); rem scales by blc too
        new_work: dict = {}
        for m, c in work.items():
            new_work[m] = c * blc
        for m, c in bterms.items():
            mm = mono_mul(m, shift)
            s = new_work.get(mm, 0) - c * lc
            if s:
                new_work[mm] = s
            else:
                new_work.pop(mm, None)
        if blc != 1:
            for m in rem:
                rem[m] *= blc
        g = _content(new_work)
        if rem:
            g = gcd(g, _content(rem))
        if g > 1:
            new_work = {m: c // g for m, c in new_work.items()}
            rem = {m: c // g for m, c in rem.items()}
        work = new_work
    return _strip_content(rem)


def _spoly(a, b, key) -> dict:
    """S-polynomial of basis entries a=(lm,lc,terms), b likewise; primitive."""
    alm, alc, aterms = a
    blm, blc, bterms = b
    lcm = mono_lcm(alm, blm)
    sa = mono_div(lcm, alm)
    sb = mono_div(lcm, blm)
    out: dict = {}
    for m, c in aterms.items():
        out[mono_mul(m, sa)] = c * blc
    for m, c in bterms.items():
        mm = mono_mul(m, sb)
        s = out.get(mm, 0) - c * alc
        if s:
            out[mm] = s
        else:
            out.pop(mm, None)
    return _strip_content(out)


def _gm_update(G, P, new_index, lms, key):
    """Gebauer-Moeller pair update (both Buchberger criteria)."""
    t = new_index
    lmt = lms[t]
    # prune existing pairs by the chain criterion
    kept = set()
    for (i, j) in P:
        lcm_ij = mono_lcm(lms[i], lms[j])
        if (
            not mono_divides(lmt, lcm_ij)
            or lcm_ij == mono_lcm(lms[i], lmt)
            or lcm_ij == mono_lcm(lms[j], lmt)
        ):
            kept.add((i, j))
    # build new pairs, minimal lcms only
    lcms: dict = {}
    for i in range(t):
        lcms.setdefault(mono_lcm(lms[i], lmt), []).append(i)
    minimal = []
    for L in sorted(lcms, key=key):
        if not any(mono_divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        # product criterion: skip if some pair with this lcm is coprime
        if any(mono_lcm(lms[i], lmt) == mono_mul(lms[i], lmt) for i in lcms[L]):
            continue
        kept.add((min(lcms[L]), t))
    return kept


def groebner_basis_int(
    gens: list,
    order: MonomialOrder,
    limits: GroebnerLimits = DEFAULT_LIMITS,
) -> list:
    """Reduced Groebner basis as primitive integer-term dicts."""
    key = order.key
    deadline = limits.deadline()
    seed = []
    for g in gens:
        if g:
            seed.append(_normalize_sign(_strip_content(dict(g)), key))
    seed.sort(key=lambda t: (key(max(t, key=key)), sorted(t.items())))

    G: list = []  # (lm, lc, terms)
    lms: list = []
    P: set = set()
    for terms in seed:
        red = reduce_int(terms, G, key)
        if not red:
            continue
        red = _normalize_sign(red, key)
        lm = max(red, key=key)
        G.append((lm, red[lm], red))
        lms.append(lm)
        P = _gm_update(G, P, len(G) - 1, lms, key)

    while P:
        if time.monotonic() > deadline:
            raise ResourceLimitExceeded(
                f"time budget {limits.time_budget}s exhausted "
                f"(basis size {len(G)}, {len(P)} pairs left)",
                partial_basis=[g[2] for g in G],
            )
        pair = min(P, key=lambda p: (key(mono_lcm(lms[p[0]], lms[p[1]])), p[1], p[0]))
        P.discard(pair)
        i, j = pair
        s = _spoly(G[i], G[j], key)
        if not s:
            continue
        red = reduce_int(s, G, key)
        if not red:
            continue
        red = _normalize_sign(red, key)
        lm = max(red, key=key)
        if sum(lm) > limits.max_degree:
            raise ResourceLimitExceeded(
                f"degree limit {limits.max_degree} exceeded by element of degree {sum(lm)}",
                partial_basis=[g[2] for g in G],
            )
        G.append((lm, red[lm], red))
        lms.append(lm)
        if len(G) > limits.max_basis:
            raise ResourceLimitExceeded(
                f"basis size limit {limits.max_basis} exceeded",
                partial_basis=[g[2] for g in G],
            )
        P = _gm_update(G, P, len(G) - 1, lms, key)

    # minimalize: keep only elements whose lm is not divisible by another lm
    order_pos = sorted(range(len(G)), key=lambda i: key(lms[i]))
    minimal_idx = []
    for i in order_pos:
        if not any(mono_divides(lms[k], lms[i]) for k in minimal_idx):
            minimal_idx.append(i)
    minimal = [G[i] for i in minimal_idx]

    # interreduce tails
    reduced = []
    for pos, entry in enumerate(minimal):
        others = minimal[:pos] + minimal[pos + 1:]
        red = reduce_int(entry[2], others, key)
        red = _normalize_sign(red, key)
        lm = max(red, key=key)
        reduced.append((lm, red[lm], red))
    reduced.sort(key=lambda e: key(e[0]))
    return [e[2] for e in reduced]


def int_terms_to_poly(ring: Ring, terms: dict, monic_order=None) -> Polynomial:
    p = Polynomial(ring, {m: Fraction(c) for m, c in terms.items()})
    if monic_order is not None and not p.is_zero():
        p = p.monic(monic_order)
    return p


def groebner_basis(
    gens: list,
    order: MonomialOrder = DEGREVLEX,
    limits: GroebnerLimits = DEFAULT_LIMITS,
) -> list:
    """Reduced monic Groebner basis of rational polynomials."""
    if not gens:
        return []
    ring = gens[0].ring
    int_gens = [_to_int_terms(g) for g in gens]
    basis = groebner_basis_int(int_gens, order, limits)
    return [int_terms_to_poly(ring, t, monic_order=order) for t in basis]


def normal_form(p: Polynomial, basis: list, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    """Unique normal form of p modulo a Groebner basis (exact over Q)."""
    if p.is_zero() or not basis:
        return p
    ring = p.ring
    key = order.key
    entries = []
    for b in basis:
        if b.is_zero():
            continue
        lm, _ = b.leading_term(order)
        entries.append((lm, b))
    rem = ring.zero()
    work = p
    while not work.is_zero():
        lm, lc = work.leading_term(order)
        reducer = next((b for blm, b in entries if mono_divides(blm, lm)), None)
        if reducer is None:
            t = ring.monomial(lm, lc)
            rem = rem + t
            work = work - t
            continue
        blm, blc = reducer.leading_term(order)
        shift = mono_div(lm, blm)
        work = work - reducer * ring.monomial(shift, lc / blc)
    return rem
