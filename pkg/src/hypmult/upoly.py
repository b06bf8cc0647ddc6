"""Dense univariate polynomials over a GF (little-endian lists of encoded
elements) with gcd, modular powering, distinct-degree data and root finding."""

from __future__ import annotations

import random

from .gf import GF


def trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: list[int]) -> int:
    return len(a) - 1


def add(F: GF, a, b):
    n = max(len(a), len(b))
    return trim([F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])


def sub(F: GF, a, b):
    n = max(len(a), len(b))
    return trim([F.sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])


def mul(F: GF, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def divmod_(F: GF, a, b):
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = trim(a)
    inv = F.inv(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = F.mul(a[-1], inv)
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, y))
        a = trim(a)
    return trim(q), a


def mod(F: GF, a, b):
    return divmod_(F, a, b)[1]


def monic(F: GF, a):
    a = trim(a)
    if not a:
        return a
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def gcd(F: GF, a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def powmod(F: GF, base, e: int, m):
    result = [1]
    base = mod(F, base, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return result


def evaluate(F: GF, a, x: int) -> int:
    v = 0
    for c in reversed(a):
        v = F.add(F.mul(v, x), c)
    return v


def factor_degrees(F: GF, f) -> set[int]:
    """Degrees of the irreducible factors of f over F."""
    f = monic(F, f)
    if deg(f) < 1:
        return set()
    x = [0, 1]
    h = x
    found = set()
    lcm_by_deg = {}
    for i in range(1, deg(f) + 1):
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, x))
        # factors of degree dividing i, minus those of proper divisors
        lower = [1]
        for j in range(1, i):
            if i % j == 0 and j in lcm_by_deg:
                gj = lcm_by_deg[j]
                lower = mul(F, lower, divmod_(F, gj, gcd(F, lower, gj))[0])
        lcm_by_deg[i] = g
        if deg(g) > deg(lower):
            found.add(i)
    return found


def roots(F: GF, f, rng: random.Random | None = None) -> list[int]:
    """All roots of f lying in F (sorted)."""
    f = monic(F, f)
    if not f:
        raise ValueError("zero polynomial has every element as a root")
    if deg(f) < 1:
        return []
    g = gcd(F, f, sub(F, powmod(F, [0, 1], F.q, f), [0, 1]))
    rng = rng or random.Random(0)
    out: list[int] = []
    _split(F, g, rng, out)
    return sorted(out)


def _split(F: GF, g, rng, out):
    d = deg(g)
    if d < 1:
        return
    if d == 1:
        out.append(F.neg(g[0]))
        return
    if F.q <= 64:
        out.extend(a for a in range(F.q) if evaluate(F, g, a) == 0)
        return
    while True:
        # a random polynomial of degree < d; x + c alone fails when the roots
        # lie in a proper subfield (constant trace in characteristic 2)
        r = trim([rng.randrange(F.q) for _ in range(d)])
        if deg(r) < 1:
            continue
        if F.p == 2:
            # absolute trace polynomial r + r^2 + ... + r^(2^(k-1))
            t, acc = r, r
            for _ in range(F.k - 1):
                t = mod(F, mul(F, t, t), g)
                acc = add(F, acc, t)
            h = gcd(F, g, acc)
        else:
            h = gcd(F, g, sub(F, powmod(F, r, (F.q - 1) // 2, g), [1]))
        if 0 < deg(h) < d:
            _split(F, h, rng, out)
            _split(F, divmod_(F, g, h)[0], rng, out)
            return
