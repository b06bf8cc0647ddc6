"""Finite fields F_p and F_{p^k} in polynomial basis.

Elements are encoded as plain ints in ``range(q)``: the base-p digits of the
int are the coefficient vector (little-endian) of the element written in the
basis 1, x, ..., x^(k-1), where x is the class of the variable modulo the
field's defining polynomial.  Keeping elements as ints lets the polynomial and
linear-algebra kernels run without per-element objects; :class:`FieldElement`
wraps an int for the user-facing API and the property tests.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

MAX_CHAR = 2**16
MAX_ORDER = 2**20


class FieldError(ValueError):
    pass


# --- dense univariate helpers over F_p (coefficient lists, little-endian) ---

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = [c % p for c in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm])


def _pmulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _pmod(prod, m, p)


def _ppowmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _pmulmod(base, base, m, p)
    return result


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        inv = pow(b[-1], p - 2, p)
        bm = [c * inv % p for c in b]
        a, b = b, _pmod(a, bm, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return _prime_factors(n) == [n]


def _has_root(m: Sequence[int], p: int) -> bool:
    for x in range(p):
        v = 0
        for c in reversed(m):
            v = (v * x + c) % p
        if v == 0:
            return True
    return False


def _irreducible_exhaustive(m: Sequence[int], p: int) -> bool:
    """Root search plus trial division by monic quadratics; valid for degree <= 4."""
    k = len(m) - 1
    if k <= 1:
        return k == 1
    if _has_root(m, p):
        return False
    if k <= 3:
        return True
    for c0, c1 in itertools.product(range(p), repeat=2):
        if not _pmod(m, [c0, c1, 1], p):
            return False
    return True


def _irreducible_rabin(m: Sequence[int], p: int) -> bool:
    k = len(m) - 1
    x = [0, 1]
    if _pmod(_trim(_sub(_ppowmod(x, p**k, m, p), x, p)), m, p):
        return False
    for r in _prime_factors(k):
        h = _sub(_ppowmod(x, p ** (k // r), m, p), x, p)
        if len(_pgcd(m, h, p)) != 1:
            return False
    return True


def _sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    if len(modulus) - 1 <= 4:
        return _irreducible_exhaustive(modulus, p)
    return _irreducible_rabin(modulus, p)


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k whose coefficient list (c_0, ..., c_{k-1})
    is lexicographically smallest."""
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        m = list(low) + [1]
        if low[0] != 0 and is_irreducible(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


def _mul_small(a: list[int], g: list[int], m: Sequence[int], p: int) -> list[int]:
    """a * g mod m for a dense length-k vector a and a low-degree g."""
    k = len(a)
    prod = [0] * (k + len(g) - 1)
    for j, y in enumerate(g):
        if y:
            for i, x in enumerate(a):
                prod[i + j] += x * y
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i] % p
        if c:
            for j in range(k):
                prod[i - k + j] -= c * m[j]
    return [c % p for c in prod[:k]]


# --- the field ---

class GF:
    """Descriptor of the finite field F_{p^k}.

    Arithmetic methods take and return encoded ints.  For k > 1 the
    multiplicative structure goes through exp/log tables and addition through
    Zech logarithms (XOR in characteristic 2); the tables are built on first
    use.
    """

    __slots__ = ("p", "k", "q", "modulus", "__dict__")

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p) or p > MAX_CHAR:
            raise FieldError(f"characteristic must be a prime <= 2^16, got {p}")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if p**k > MAX_ORDER:
            raise FieldError(f"field order {p}^{k} exceeds the cap 2^20")
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus

    # identity
    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p, self.k, self.modulus))

    @property
    def spec(self) -> str:
        return f"{self.p}^{self.k}" if self.k > 1 else str(self.p)

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    # encoding
    def coeffs(self, a: int) -> tuple[int, ...]:
        p, out = self.p, []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, cs: Sequence[int]) -> int:
        if len(cs) > self.k:
            cs = _pmod(cs, self.modulus, self.p)
        v = 0
        for c in reversed(list(cs)):
            v = v * self.p + (int(c) % self.p)
        return v

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    # tables for extension fields
    @functools.cached_property
    def _tables(self):
        p, q, m = self.p, self.q, self.modulus
        order = q - 1
        factors = _prime_factors(order)
        gen = None
        # x, x+1, ... first: low-degree generators keep the table build cheap
        for cand in itertools.chain(range(p, q), range(2, p)):
            poly = list(self.coeffs(cand))
            if all(_ppowmod(poly, order // r, m, p) != [1] for r in factors):
                gen = poly
                break
        if gen is None:  # q == 2 is handled by the prime-field path
            raise FieldError("no primitive element found")
        gen = _trim(gen)
        exp = [0] * (2 * order)
        log = [0] * q
        k = self.k
        weights = [p**i for i in range(k)]
        cur = [1] + [0] * (k - 1)
        for i in range(order):
            v = sum(c * w for c, w in zip(cur, weights))
            exp[i] = v
            log[v] = i
            cur = _mul_small(cur, gen, m, p)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        if p == 2:  # addition is XOR and negation is the identity
            return exp, log, None, None
        neg = [self.from_coeffs([(-c) % p for c in self.coeffs(a)]) for a in range(q)]
        zech = [-1] * order
        for i in range(order):
            v = exp[i]
            d0 = v % p
            w = v - d0 + (d0 + 1) % p
            zech[i] = log[w] if w else -1
        return exp, log, neg, zech

    # arithmetic
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        exp, log, _, zech = self._tables
        la = log[a]
        d = log[b] - la
        if d < 0:
            d += self.q - 1
        z = zech[d]
        if z < 0:
            return 0
        return exp[la + z]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._tables[2][a]

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log, _, _ = self._tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        exp, log, _, _ = self._tables
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.k == 1:
            return pow(a, e, self.p)
        exp, log, _, _ = self._tables
        return exp[(log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p ** (times % self.k) if self.k > 1 else 1)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coeffs(value))
        return FieldElement(self, self.from_int(int(value)))

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return "[" + ",".join(str(c) for c in self.coeffs(a)) + "]"


@functools.lru_cache(maxsize=None)
def field_create(p: int, k: int = 1) -> GF:
    """F_{p^k} with the deterministic modulus (cached, so equal specs give one object)."""
    return GF(p, k)


def parse_field_spec(text: str) -> GF:
    """Parse ``"p"`` or ``"p^k"``."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+)\s*)?", text)
    if not m:
        raise FieldError(f"bad field spec {text!r}; expected 'p' or 'p^k'")
    p = int(m.group(1))
    k = int(m.group(2)) if m.group(2) else 1
    if not is_prime(p):
        # allow "q" given as a prime power, e.g. "9"
        for r in _prime_factors(p)[:1]:
            e, n = 0, p
            while n % r == 0:
                n //= r
                e += 1
            if n == 1 and k == 1:
                return field_create(r, e)
        raise FieldError(f"{p} is not a prime or prime power")
    return field_create(p, k)


def enumerate_field(field: GF) -> list["FieldElement"]:
    """All q elements in coefficient-vector lexicographic order."""
    return [FieldElement(field, a) for a in _lex_order(field)]


def _lex_order(field: GF) -> list[int]:
    # lexicographic on (c_0, ..., c_{k-1}) with c_0 most significant
    return [field.from_coeffs(cs) for cs in itertools.product(range(field.p), repeat=field.k)]


def frobenius(x: "FieldElement", times: int = 1) -> "FieldElement":
    """x^(p^times)."""
    return FieldElement(x.field, x.field.pow(x.value, x.field.p**times))


@dataclass(frozen=True)
class FieldElement:
    field: GF
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.value, b))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return self.field.format(self.value)


class FieldEmbedding:
    """Ring map F_{p^a} -> F_{p^b} (a | b) sending x to ``image_of_generator``."""

    def __init__(self, source: GF, target: GF, image_of_generator: int):
        if source.p != target.p or target.k % source.k:
            raise FieldError(f"cannot embed {source} into {target}")
        self.source = source
        self.target = target
        self.image_of_generator = image_of_generator
        powers = [1]
        for _ in range(source.k - 1):
            powers.append(target.mul(powers[-1], image_of_generator))
        self._powers = powers

    @functools.cached_property
    def _table(self) -> list[int]:
        return [self._map_slow(a) for a in range(self.source.q)]

    def _map_slow(self, a: int) -> int:
        t = self.target
        v = 0
        for c, w in zip(self.source.coeffs(a), self._powers):
            if c:
                v = t.add(v, t.mul(c, w))
        return v

    def __call__(self, a):
        if isinstance(a, FieldElement):
            return FieldElement(self.target, self._table[a.value])
        return self._table[a]

    def __repr__(self):
        return f"FieldEmbedding({self.source} -> {self.target}, x -> {self.target.format(self.image_of_generator)})"


@functools.lru_cache(maxsize=None)
def embed_build(source: GF, target: GF) -> FieldEmbedding:
    """Embedding sending x to the first root (in lex enumeration of the target)
    of the source modulus."""
    if source.p != target.p or target.k % source.k:
        raise FieldError(f"cannot embed {source} into {target}")
    t = target
    mod = source.modulus
    for g in _lex_order(target):
        v = 0
        for c in reversed(mod):
            v = t.add(t.mul(v, g), c)
        if v == 0:
            return FieldEmbedding(source, target, g)
    raise FieldError(f"source modulus has no root in {target}; modulus is broken")


def extension(field: GF, m: int) -> tuple[GF, FieldEmbedding]:
    """The degree-m extension of ``field`` and the canonical embedding into it."""
    big = field_create(field.p, field.k * m)
    return big, embed_build(field, big)


def minimal_subfield_degree(field: GF, a: int, base: GF | None = None) -> int:
    """Size of the orbit of a under x -> x^{#base}; the degree of a over base."""
    step = base.q if base is not None else field.p
    x, d = field.pow(a, step), 1
    while x != a:
        x, d = field.pow(x, step), d + 1
    return d


def iter_nonzero(field: GF) -> Iterator[int]:
    return iter(range(1, field.q))
