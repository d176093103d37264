"""Sparse integer-coefficient polynomial kernels.

A polynomial is a dict mapping exponent tuples to nonzero ints.  Exponent
tuples have trailing zeros trimmed, so keys stay valid when more variables
are registered later; entries may be negative for Laurent callers, but the
gcd machinery only ever sees true polynomials (the caller shifts Laurent
content out first).  Rational scaling lives one level up, in
``coeff.LaurentPoly``, which keeps everything here on machine/big ints.

The gcd is the subresultant PRS with content extraction, fronted by two
cheap exits: a modular degree probe that *proves* coprimality when it can
(the probe only concludes gcd degree 0 after checking that a true leading
coefficient survived the evaluation, so the conclusion is exact, never
probabilistic), and a trial division when the probe reports that the smaller
polynomial may itself be the gcd.  ``pgcd`` is the single entry point, so a
different gcd implementation can be swapped in behind it.
"""

from __future__ import annotations

import math
import random
from functools import reduce

Exp = tuple[int, ...]
Poly = dict[Exp, int]

_PROBE_PRIME = (1 << 31) - 1
_probe_rng = random.Random(0x1D0)

_GCD_MEMO: dict[tuple, Poly] = {}


def trim(exp: tuple[int, ...]) -> Exp:
    """Drop trailing zero exponents."""
    n = len(exp)
    while n and exp[n - 1] == 0:
        n -= 1
    return exp[:n] if n != len(exp) else exp


def eadd(e1: Exp, e2: Exp) -> Exp:
    if len(e1) < len(e2):
        e1, e2 = e2, e1
    s = list(e1)
    for i, x in enumerate(e2):
        s[i] += x
    while s and s[-1] == 0:
        s.pop()
    return tuple(s)


def esub(e1: Exp, e2: Exp) -> Exp:
    return eadd(e1, tuple(-x for x in e2))


def _grlex_key(e: Exp, width: int) -> tuple:
    return (sum(e), e + (0,) * (width - len(e)))


def leading(p: Poly) -> tuple[Exp, int]:
    """Greatest term under graded-lex; deterministic regardless of dict order."""
    width = max(len(e) for e in p)
    e = max(p, key=lambda k: _grlex_key(k, width))
    return e, p[e]


def print_key(e: Exp, width: int) -> tuple:
    """Sort key for the canonical term order: total degree ascending, then
    reverse lexicographic on the exponent vector (earlier variables first)."""
    return (sum(e), tuple(-x for x in e) + (0,) * (width - len(e)))


def print_min_term(p: Poly) -> tuple[Exp, int]:
    """First term in the canonical print order."""
    width = max(len(e) for e in p)
    e = min(p, key=lambda k: print_key(k, width))
    return e, p[e]


def pmins(p: Poly) -> Exp:
    """Per-variable minimum exponent across all terms (the exact monomial
    content of a Laurent polynomial)."""
    width = max(len(e) for e in p)
    mins = [min((e[i] if i < len(e) else 0) for e in p) for i in range(width)]
    return trim(tuple(mins))


def pshift(p: Poly, s: Exp) -> Poly:
    """Multiply by the monomial with exponent tuple s."""
    if not s:
        return p
    return {eadd(e, s): c for e, c in p.items()}


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def pneg(a: Poly) -> Poly:
    return {e: -c for e, c in a.items()}


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pneg(b))


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    if len(a) == 1:
        (ea, ca), = a.items()
        return {eadd(ea, eb): ca * cb for eb, cb in b.items()}
    out: Poly = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = eadd(ea, eb)
            v = get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def pscale(a: Poly, k: int) -> Poly:
    if k == 0:
        return {}
    if k == 1:
        return dict(a)
    return {e: c * k for e, c in a.items()}


def ppow(a: Poly, n: int) -> Poly:
    out: Poly = {(): 1}
    for _ in range(n):
        out = pmul(out, a)
    return out


def pcontent(a: Poly) -> int:
    """gcd of the integer coefficients; 0 for the zero polynomial."""
    return reduce(math.gcd, a.values(), 0)


def pdivscale(a: Poly, k: int) -> Poly:
    return {e: c // k for e, c in a.items()}


def vars_of(a: Poly) -> set[int]:
    out: set[int] = set()
    for e in a:
        for i, x in enumerate(e):
            if x:
                out.add(i)
    return out


def vdeg(a: Poly, v: int) -> int:
    return max((e[v] if v < len(e) else 0) for e in a)


def pdivexact(a: Poly, b: Poly) -> Poly | None:
    """Quotient a/b when b divides a exactly over the integers, else None."""
    if not a:
        return {}
    if not b:
        return None
    if len(b) == 1:
        (eb, cb), = b.items()
        out: Poly = {}
        for ea, ca in a.items():
            q, r = divmod(ca, cb)
            if r:
                return None
            e = esub(ea, eb)
            if any(x < 0 for x in e):
                return None
            out[e] = q
        return out
    eb, cb = leading(b)
    rest = {e: c for e, c in b.items() if e != eb}
    quot: Poly = {}
    r = dict(a)
    while r:
        ea, ca = leading(r)
        e = esub(ea, eb)
        if any(x < 0 for x in e):
            return None
        q, rem = divmod(ca, cb)
        if rem:
            return None
        quot[e] = q
        del r[ea]
        for eo, co in rest.items():
            ke = eadd(eo, e)
            v = r.get(ke, 0) - co * q
            if v:
                r[ke] = v
            else:
                r.pop(ke, None)
    return quot


def _norm_sign(a: Poly) -> Poly:
    """Make the first term in canonical print order positive."""
    if not a:
        return a
    _, c = print_min_term(a)
    return pneg(a) if c < 0 else a


def _pkey(a: Poly) -> tuple:
    return tuple(sorted(a.items()))


# ---------------------------------------------------------------------------
# recursive view: polynomial in one chosen variable with Poly coefficients

Rec = dict  # dict[int, Poly]


def _to_rec(a: Poly, v: int) -> Rec:
    out: Rec = {}
    for e, c in a.items():
        d = e[v] if v < len(e) else 0
        base = trim(e[:v] + (0,) + e[v + 1 :]) if v < len(e) else e
        coef = out.setdefault(d, {})
        coef[base] = coef.get(base, 0) + c
    return {d: p for d, p in out.items() if p}


def _from_rec(r: Rec, v: int) -> Poly:
    out: Poly = {}
    for d, coef in r.items():
        for e, c in coef.items():
            if d:
                ee = list(e) + [0] * (v + 1 - len(e))
                ee[v] += d
                key = trim(tuple(ee))
            else:
                key = e
            out[key] = out.get(key, 0) + c
    return {e: c for e, c in out.items() if c}


def _rsub(a: Rec, b: Rec) -> Rec:
    out = {d: dict(p) for d, p in a.items()}
    for d, p in b.items():
        q = psub(out.get(d, {}), p)
        if q:
            out[d] = q
        else:
            out.pop(d, None)
    return out


def _rscale(a: Rec, c: Poly) -> Rec:
    return {d: pmul(p, c) for d, p in a.items()}


def _prem(a: Rec, b: Rec) -> Rec:
    """Pseudo-remainder of a by b in the main variable: lc(b)^(da-db+1) * a mod b."""
    db = max(b)
    lb = b[db]
    da = max(a)
    need = da - db + 1
    r = {d: dict(p) for d, p in a.items()}
    steps = 0
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        r = _rscale(r, lb)
        shift = dr - db
        for d, p in b.items():
            dd = d + shift
            q = psub(r.get(dd, {}), pmul(p, lr))
            if q:
                r[dd] = q
            else:
                r.pop(dd, None)
        steps += 1
    for _ in range(need - steps):
        r = _rscale(r, lb)
    return r


def _rdivexact(r: Rec, c: Poly) -> Rec:
    out: Rec = {}
    for d, p in r.items():
        q = pdivexact(p, c)
        if q is None:
            raise ArithmeticError("inexact division in subresultant sequence")
        out[d] = q
    return out


def _prs_ppgcd(a: Rec, b: Rec) -> Rec | None:
    """Subresultant PRS; returns the last nonzero remainder, or None when the
    gcd is free of the main variable (so the primitive gcd is trivial)."""
    if max(a) < max(b):
        a, b = b, a
    g: Poly = {(): 1}
    h: Poly = {(): 1}
    while True:
        delta = max(a) - max(b)
        r = _prem(a, b)
        if not r:
            return b
        if max(r) == 0:
            return None
        a = b
        b = _rdivexact(r, pmul(g, ppow(h, delta)))
        g = a[max(a)]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            num = ppow(g, delta)
            den = ppow(h, delta - 1)
            hq = pdivexact(num, den)
            if hq is None:
                raise ArithmeticError("inexact division in subresultant sequence")
            h = hq


# ---------------------------------------------------------------------------
# modular degree probe

def _eval_uni(a: Poly, v: int, point: dict[int, int], p: int) -> list[int] | None:
    deg = vdeg(a, v)
    acc = [0] * (deg + 1)
    for e, c in a.items():
        m = c % p
        for i, x in enumerate(e):
            if i == v or x == 0:
                continue
            m = (m * pow(point[i], x, p)) % p
        d = e[v] if v < len(e) else 0
        acc[d] = (acc[d] + m) % p
    if not any(acc):
        return None
    return acc


def _euclid_deg(f: list[int], g: list[int], p: int) -> int:
    def strip(x: list[int]) -> list[int]:
        while x and x[-1] == 0:
            x.pop()
        return x

    f = strip(list(f))
    g = strip(list(g))
    while g:
        inv = pow(g[-1], p - 2, p)
        while len(f) >= len(g):
            c = (f[-1] * inv) % p
            off = len(f) - len(g)
            for i, gc in enumerate(g):
                f[i + off] = (f[i + off] - c * gc) % p
            strip(f)
            if not f:
                break
        f, g = g, f
    return len(f) - 1 if f else -1


def _probe(pa: Poly, pb: Poly, v: int) -> int | None:
    """Return 0 when the primitive parts are proven coprime in variable v,
    a positive hint for the gcd's v-degree, or None when inconclusive."""
    p = _PROBE_PRIME
    others = (vars_of(pa) | vars_of(pb)) - {v}
    da, db = vdeg(pa, v), vdeg(pb, v)
    hint: int | None = None
    for _ in range(4):
        point = {w: _probe_rng.randrange(2, p - 1) for w in others}
        fa = _eval_uni(pa, v, point, p)
        fb = _eval_uni(pb, v, point, p)
        if fa is None or fb is None:
            continue
        lc_ok = (len(fa) == da + 1 and fa[da] != 0) or (len(fb) == db + 1 and fb[db] != 0)
        d = _euclid_deg(fa, fb, p)
        if d < 0:
            continue
        if d == 0 and lc_ok:
            return 0
        hint = d if hint is None else min(hint, d)
    return hint


# ---------------------------------------------------------------------------
# gcd

def _content_pp(a: Poly, v: int) -> tuple[Poly, Poly]:
    """Content (gcd of the v-coefficients) and primitive part with respect to v."""
    rec = _to_rec(a, v)
    coefs = sorted(rec.values(), key=len)
    cont: Poly = coefs[0]
    for c in coefs[1:]:
        if len(cont) == 1 and () in cont and abs(cont[()]) == 1:
            break
        cont = _gcd_core(cont, c)
    cont = _norm_sign(cont)
    if len(cont) == 1 and () in cont and cont[()] == 1:
        return cont, a
    pp = pdivexact(a, cont)
    if pp is None:
        raise ArithmeticError("content does not divide its polynomial")
    return cont, pp


def _gcd_core(a: Poly, b: Poly) -> Poly:
    if not a:
        return _norm_sign(dict(b))
    if not b:
        return _norm_sign(dict(a))
    ka, kb = _pkey(a), _pkey(b)
    if ka > kb:
        ka, kb, a, b = kb, ka, b, a
    memo_key = (ka, kb)
    hit = _GCD_MEMO.get(memo_key)
    if hit is not None:
        return dict(hit)

    ca, cb = pcontent(a), pcontent(b)
    pa = pdivscale(a, ca) if ca != 1 else a
    pb = pdivscale(b, cb) if cb != 1 else b
    c0 = math.gcd(ca, cb)

    if pa == pb or pa == pneg(pb):
        g = pscale(_norm_sign(dict(pa)), c0)
        _GCD_MEMO[memo_key] = g
        return dict(g)

    common = vars_of(pa) & vars_of(pb)
    if not common:
        g = {(): c0}
        _GCD_MEMO[memo_key] = g
        return dict(g)

    v = min(common, key=lambda w: (min(vdeg(pa, w), vdeg(pb, w)), w))
    cont_a, pp_a = _content_pp(pa, v)
    cont_b, pp_b = _content_pp(pb, v)
    cg = _gcd_core(cont_a, cont_b)

    bound = _probe(pp_a, pp_b, v)
    pg: Poly | None = None
    if bound == 0:
        pg = {(): 1}
    else:
        small, big = (pp_a, pp_b) if vdeg(pp_a, v) <= vdeg(pp_b, v) else (pp_b, pp_a)
        if bound is not None and bound == vdeg(small, v) and pdivexact(big, small) is not None:
            pg = _norm_sign(dict(small))
    if pg is None:
        res = _prs_ppgcd(_to_rec(pp_a, v), _to_rec(pp_b, v))
        if res is None:
            pg = {(): 1}
        else:
            raw = _from_rec(res, v)
            cr = pcontent(raw)
            if cr != 1:
                raw = pdivscale(raw, cr)
            _, pg = _content_pp(raw, v)
            pg = _norm_sign(pg)

    g = pscale(_norm_sign(pmul(cg, pg)), c0)
    _GCD_MEMO[memo_key] = g
    return dict(g)


def pgcd(a: Poly, b: Poly) -> Poly:
    """gcd over the integers: primitive-times-integer-content, leading coeff > 0."""
    return _gcd_core(a, b)


def gcd_cache_clear() -> None:
    _GCD_MEMO.clear()
