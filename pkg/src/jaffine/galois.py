"""Finite fields GF(p^e) with table-driven arithmetic.

Elements are plain integers ``0 <= x < p^e`` whose base-``p`` digits are the
coefficients of the polynomial representative (lowest degree first).  Array
operations accept and return ``numpy.int64`` arrays, so codes and matrices
are just integer arrays tagged with their field.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "FiniteField",
    "FieldElement",
    "Subfield",
    "make_field",
    "field_from_modulus",
    "unity_root",
    "trace_map",
    "power_frobenius",
    "is_prime",
    "MAX_FIELD_ORDER",
]

MAX_FIELD_ORDER = 2**32
TABLE_LIMIT = 2**20
_ADD_TABLE_LIMIT = 2896  # q*q int16 entries stay below 16 MiB

# Conway polynomials, coefficients lowest degree first (monic).
CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 2, 1, 0, 2, 0, 1),
    (3, 7): (1, 0, 2, 0, 0, 0, 0, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
    (11, 1): (9, 1),
    (11, 2): (2, 7, 1),
    (13, 1): (11, 1),
    (13, 2): (2, 12, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- scalar polynomial arithmetic on digit integers (used for setup and large fields)


def _digits(x: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(d, p: int) -> int:
    x = 0
    for c in reversed(d):
        x = x * p + int(c)
    return x


def _polymulmod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    e = len(mod) - 1
    res = [0] * (2 * e)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    res[i + j] = (res[i + j] + x * y) % p
    for d in range(2 * e - 1, e - 1, -1):
        c = res[d]
        if c:
            for t in range(e + 1):
                res[d - e + t] = (res[d - e + t] - c * mod[t]) % p
    return res[:e]


def _x_element(mod: tuple[int, ...], p: int) -> int:
    """Integer encoding of the class of x modulo ``mod``."""
    if len(mod) == 2:
        return (-mod[0]) % p
    return p


def _lex_primitive(p: int, e: int) -> tuple[int, ...]:
    """Smallest (by integer encoding) primitive monic polynomial of degree e."""
    q = p**e
    facs = _prime_factors(q - 1)
    for low in range(1, q):
        mod = tuple(_digits(low, p, e)) + (1,)
        one = [1] + [0] * (e - 1)
        x = _digits(_x_element(mod, p), p, e)

        def pw(n: int) -> list[int]:
            r, b = one, x
            while n:
                if n & 1:
                    r = _polymulmod(r, b, mod, p)
                b = _polymulmod(b, b, mod, p)
                n >>= 1
            return r

        if pw(q - 1) == one and all(pw((q - 1) // f) != one for f in facs):
            return mod
    raise ValueError(f"no primitive polynomial of degree {e} over GF({p})")


class FieldElement:
    """A single element of a :class:`FiniteField` (convenience wrapper)."""

    __slots__ = ("owner", "value")

    def __init__(self, owner: "FiniteField", value: int):
        self.owner = owner
        self.value = int(value)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_digits(self.value, self.owner.p, self.owner.e))

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.owner is not self.owner:
                raise ValueError("elements of different fields")
            return other.value
        return self.owner.from_int(other)

    def __add__(self, other):
        return FieldElement(self.owner, self.owner.add_s(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.owner, self.owner.sub_s(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.owner, self.owner.sub_s(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.owner, self.owner.mul_s(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(
            self.owner, self.owner.mul_s(self.value, self.owner.inv_s(self._coerce(other)))
        )

    def __neg__(self):
        return FieldElement(self.owner, self.owner.neg_s(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.owner, self.owner.pow_s(self.value, n))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return other.owner is self.owner and other.value == self.value
        if isinstance(other, int):
            return self.value == self.owner.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.owner), self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.owner.q})({self.value})"


@dataclass(frozen=True)
class Subfield:
    """GF(p^f) inside a bigger field, with embedding and restriction maps.

    ``embed[y]`` is the big-field integer of sub-field element ``y``;
    ``restrict(x)`` maps big-field integers back, giving -1 outside the subfield.
    """

    big: "FiniteField"
    sub: "FiniteField"
    f: int
    embed: np.ndarray

    def restrict(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return self.big._restrict_table(self.f)[x]

    def basis(self) -> np.ndarray:
        """A GF(p^f)-basis of the big field: 1, g, ..., g^(e/f - 1)."""
        return np.array([self.big.pow_s(self.big.g, i) for i in range(self.big.e // self.f)], dtype=np.int64)


class FiniteField:
    """GF(p^e) with a fixed modulus and verified primitive element ``g``."""

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        if not is_prime(p):
            raise ValueError(f"p not prime: {p}")
        if e < 1:
            raise ValueError(f"extension degree must be >= 1, got {e}")
        if p**e > MAX_FIELD_ORDER:
            raise ValueError(f"field order {p}^{e} exceeds bound {MAX_FIELD_ORDER}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        self.p = p
        self.e = e
        self.q = p**e
        self.order = self.q - 1
        self.modulus = modulus
        self.g = _x_element(modulus, p)
        self._lock = threading.Lock()
        self._sub_cache: dict[int, Subfield] = {}
        self._restrict_cache: dict[int, np.ndarray] = {}
        self.tabled = self.q <= TABLE_LIMIT
        if self.tabled:
            self._build_tables()
        else:
            self._verify_order_scalar()

    # -- construction helpers

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        exp = np.zeros(2 * (q - 1) + 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        if p == 2:
            modint = _undigits(self.modulus, 2)
            v = 1
            for i in range(q - 1):
                if i > 0 and v == 1:
                    raise ValueError("modulus is not primitive")
                exp[i] = v
                log[v] = i
                if e == 1:
                    v = 1
                else:
                    v <<= 1
                    if v & q:
                        v ^= modint
        else:
            d = [1] + [0] * (e - 1)
            g = _digits(self.g, p, e)
            pw = [p**i for i in range(e)]
            for i in range(q - 1):
                v = sum(c * w for c, w in zip(d, pw))
                if i > 0 and v == 1:
                    raise ValueError("modulus is not primitive")
                exp[i] = v
                log[v] = i
                d = _polymulmod(d, g, self.modulus, p)
        if (log[1:] < 0).any():
            raise ValueError("modulus is not primitive")
        exp[q - 1 : 2 * (q - 1)] = exp[: q - 1]
        exp[2 * (q - 1)] = 1
        self._exp = exp
        self._log = log
        digits = np.zeros((q, e), dtype=np.int64)
        x = np.arange(q, dtype=np.int64)
        for i in range(e):
            digits[:, i] = x % p
            x //= p
        self._digits = digits
        self._pw = np.array([p**i for i in range(e)], dtype=np.int64)
        self._neg = (((-digits) % p) * self._pw).sum(axis=1) if p != 2 else np.arange(q, dtype=np.int64)
        self._add_table = None
        if p != 2 and q <= _ADD_TABLE_LIMIT:
            s = (digits[:, None, :] + digits[None, :, :]) % p
            self._add_table = (s * self._pw).sum(axis=2).astype(np.int16 if q < 32768 else np.int32)

    def _verify_order_scalar(self) -> None:
        for f in _prime_factors(self.order):
            if self.pow_s(self.g, self.order // f) == 1:
                raise ValueError("modulus is not primitive")
        if self.pow_s(self.g, self.order) != 1:
            raise ValueError("modulus is not primitive")

    # -- identity

    def __repr__(self):
        return f"FiniteField(GF({self.p}^{self.e}), modulus={self.modulus})"

    def __reduce__(self):
        return (field_from_modulus, (self.p, self.modulus))

    @property
    def key(self) -> tuple:
        return (self.p, self.e, self.modulus)

    def __call__(self, v) -> FieldElement:
        return FieldElement(self, self.from_int(v))

    def from_int(self, v) -> int:
        """Interpret a Python int as an element: values in range are encodings."""
        v = int(v)
        if 0 <= v < self.q:
            return v
        if self.e == 1:
            return v % self.p
        raise ValueError(f"{v} is not an element of GF({self.q})")

    def element(self, v) -> FieldElement:
        return FieldElement(self, self.from_int(v))

    def gen(self) -> FieldElement:
        return FieldElement(self, self.g)

    # -- scalar operations

    def add_s(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._tabled_add():
            return int(self._add_table[a, b])
        p = self.p
        da, db = _digits(a, p, self.e), _digits(b, p, self.e)
        return _undigits([(x + y) % p for x, y in zip(da, db)], p)

    def _tabled_add(self) -> bool:
        return self.tabled and self._add_table is not None

    def neg_s(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.tabled:
            return int(self._neg[a])
        return _undigits([(-x) % self.p for x in _digits(a, self.p, self.e)], self.p)

    def sub_s(self, a: int, b: int) -> int:
        return self.add_s(a, self.neg_s(b))

    def mul_s(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.tabled:
            return int(self._exp[self._log[a] + self._log[b]])
        r = _polymulmod(_digits(a, self.p, self.e), _digits(b, self.p, self.e), self.modulus, self.p)
        return _undigits(r, self.p)

    def pow_s(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if n == 0 else 0
        if self.tabled:
            return int(self._exp[(self._log[a] * n) % self.order])
        n %= self.order
        r, b = 1, a
        while n:
            if n & 1:
                r = self.mul_s(r, b)
            b = self.mul_s(b, b)
            n >>= 1
        return r

    def inv_s(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow_s(a, -1)

    def log_s(self, a: int) -> int:
        """Discrete logarithm base g, in [0, q-2]."""
        if a == 0:
            raise ValueError("log of 0")
        if self.tabled:
            return int(self._log[a])
        x, i = 1, 0
        while x != a:
            x = self.mul_s(x, self.g)
            i += 1
        return i

    # -- array operations (int64 arrays of encodings)

    def _require_tables(self):
        if not self.tabled:
            raise NotImplementedError(f"array arithmetic needs q <= {TABLE_LIMIT}")

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        self._require_tables()
        if self._add_table is not None:
            return self._add_table[a, b].astype(np.int64)
        s = (self._digits[a] + self._digits[b]) % self.p
        return (s * self._pw).sum(axis=-1)

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        self._require_tables()
        return self._neg[a]

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a) -> np.ndarray:
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(-self._log[a]) % self.order]

    def power(self, a, n) -> np.ndarray:
        """Elementwise ``a**n`` (``n`` integer or integer array, 0**0 = 1)."""
        self._require_tables()
        a = np.asarray(a, dtype=np.int64)
        n = np.asarray(n, dtype=np.int64)
        r = self._exp[(self._log[a] * n) % self.order]
        return np.where(a == 0, np.where(n == 0, 1, 0), r)

    def log(self, a) -> np.ndarray:
        self._require_tables()
        return self._log[np.asarray(a, dtype=np.int64)]

    def exp(self, i) -> np.ndarray:
        self._require_tables()
        return self._exp[np.asarray(i, dtype=np.int64) % self.order]

    def frobenius(self, a, f: int) -> np.ndarray:
        """Elementwise ``a**(p**f)``."""
        return self.power(a, self.p ** (f % self.e))

    def trace(self, a, f: int) -> np.ndarray:
        """Relative trace from GF(p^e) down to GF(p^f), elementwise."""
        if f <= 0 or self.e % f:
            raise ValueError(f"{f} does not divide {self.e}")
        a = np.asarray(a, dtype=np.int64)
        acc = a.copy()
        cur = a
        for _ in range(self.e // f - 1):
            cur = self.frobenius(cur, f)
            acc = self.add(acc, cur)
        return acc

    def in_subfield(self, a, f: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return self.frobenius(a, f) == a

    def scale(self, c: int, a) -> np.ndarray:
        return self.mul(np.int64(c), a)

    def dot(self, a, b) -> int:
        """Euclidean inner product of two vectors."""
        prod = self.mul(a, b)
        return self.sum(prod)

    def sum(self, a, axis=None):
        """Field sum along an axis (all elements when axis is None)."""
        a = np.asarray(a, dtype=np.int64)
        if axis is None:
            a = a.reshape(-1)
            axis = 0
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        self._require_tables()
        s = self._digits[a].sum(axis=axis) % self.p
        return (s * self._pw).sum(axis=-1)

    # -- subfields

    def _restrict_table(self, f: int) -> np.ndarray:
        self.subfield(f)
        return self._restrict_cache[f]

    def subfield(self, f: int) -> Subfield:
        """The subfield GF(p^f), built on the minimal polynomial of g^((q-1)/(p^f-1))."""
        if f <= 0 or self.e % f:
            raise ValueError(f"{f} does not divide {self.e}")
        with self._lock:
            if f in self._sub_cache:
                return self._sub_cache[f]
        if f == self.e:
            sub = self
            embed = np.arange(self.q, dtype=np.int64)
        else:
            self._require_tables()
            qs = self.p**f
            gamma = self.pow_s(self.g, self.order // (qs - 1))
            # minimal polynomial prod_i (x - gamma^(p^i)) over GF(p)
            poly = [1]
            for i in range(f):
                root = self.pow_s(gamma, self.p**i)
                new = [0] * (len(poly) + 1)
                for j, c in enumerate(poly):
                    new[j + 1] = self.add_s(new[j + 1], c)
                    new[j] = self.add_s(new[j], self.neg_s(self.mul_s(c, root)))
                poly = new
            if any(c >= self.p for c in poly):
                raise ArithmeticError("minimal polynomial not over the prime field")
            sub = field_from_modulus(self.p, tuple(poly))
            embed = np.zeros(qs, dtype=np.int64)
            for y in range(1, qs):
                embed[y] = self.pow_s(gamma, sub.log_s(y))
        restrict = np.full(self.q, -1, dtype=np.int64)
        restrict[embed] = np.arange(len(embed), dtype=np.int64)
        res = Subfield(self, sub, f, embed)
        with self._lock:
            self._sub_cache[f] = res
            self._restrict_cache[f] = restrict
        return res


_registry: dict[tuple, FiniteField] = {}
_registry_lock = threading.Lock()


def field_from_modulus(p: int, modulus: tuple[int, ...]) -> FiniteField:
    """Field with an explicit primitive modulus (shared instance per modulus)."""
    key = (p, tuple(int(c) for c in modulus))
    with _registry_lock:
        F = _registry.get(key)
    if F is None:
        F = FiniteField(p, len(modulus) - 1, key[1])
        with _registry_lock:
            F = _registry.setdefault(key, F)
    return F


@lru_cache(maxsize=None)
def make_field(p: int, e: int) -> FiniteField:
    """GF(p^e) with the pinned modulus for (p, e)."""
    if not is_prime(p):
        raise ValueError(f"p not prime: {p}")
    if e < 1:
        raise ValueError(f"extension degree must be >= 1, got {e}")
    if p**e > MAX_FIELD_ORDER:
        raise ValueError(f"field order {p}^{e} exceeds bound {MAX_FIELD_ORDER}")
    mod = CONWAY.get((p, e))
    if mod is None:
        mod = _lex_primitive(p, e)
    return field_from_modulus(p, mod)


def unity_root(F: FiniteField, n: int) -> FieldElement:
    """Element of multiplicative order exactly ``n``: g^((q-1)/n)."""
    if n < 1 or F.order % n:
        raise ValueError(f"{n} does not divide {F.order}")
    return FieldElement(F, F.pow_s(F.g, F.order // n))


def trace_map(x: FieldElement, e: int, f: int) -> FieldElement:
    """x + x^(p^f) + ... + x^(p^(f(e/f-1))) for x in GF(p^e)."""
    F = x.owner
    if e != F.e:
        raise ValueError(f"element lives in GF({F.p}^{F.e}), not degree {e}")
    if f <= 0 or e % f:
        raise ValueError(f"{f} does not divide {e}")
    acc, cur = x.value, x.value
    for _ in range(e // f - 1):
        cur = F.pow_s(cur, F.p**f)
        acc = F.add_s(acc, cur)
    return FieldElement(F, acc)


def power_frobenius(x: FieldElement, p: int, f: int) -> FieldElement:
    """x^(p^f) by repeated p-th powering."""
    F = x.owner
    if p != F.p:
        raise ValueError(f"characteristic mismatch: {p} vs {F.p}")
    if f < 0:
        raise ValueError("f must be >= 0")
    v = x.value
    for _ in range(f % F.e if F.e else f):
        v = F.pow_s(v, p)
    return FieldElement(F, v)
