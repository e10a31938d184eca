"""Linear codes over GF(q) stored as row spaces in reduced row-echelon form."""

from __future__ import annotations

import hashlib
from itertools import product

import numpy as np

from . import linalg
from .galois import FiniteField

__all__ = [
    "LinearCode",
    "euclidean_dual",
    "hermitian_dual",
    "subfield_subcode",
    "trace_image_code",
    "subfield_coordinates",
]


class LinearCode:
    """An [n, k] linear code over ``field`` given by any spanning matrix.

    The stored generator ``gen`` is the RREF of the input (full row rank).
    Distance bounds are cached per instance once a weight engine certifies them.
    """

    def __init__(self, field: FiniteField, gen, n: int | None = None, name: str | None = None):
        M = np.asarray(gen, dtype=np.int64)
        if M.ndim == 1:
            if n is None:
                M = M.reshape(1, -1)
            else:
                M = M.reshape(-1, n)
        if n is None:
            n = M.shape[1]
        if M.shape[1] != n:
            raise ValueError(f"generator has {M.shape[1]} columns, expected {n}")
        R, piv = linalg.rref(field, M)
        if len(piv) != R.shape[0]:
            raise AssertionError("rref produced rank-deficient generator")
        R.setflags(write=False)
        self.field = field
        self.n = n
        self.k = len(piv)
        self.gen = R
        self.pivots = tuple(piv)
        self.name = name
        self._lower = 1 if self.k else None
        self._upper = n if self.k else None
        self._dual = None

    # -- construction helpers

    @classmethod
    def zero(cls, field: FiniteField, n: int) -> "LinearCode":
        return cls(field, np.zeros((0, n), dtype=np.int64), n=n)

    @classmethod
    def full(cls, field: FiniteField, n: int) -> "LinearCode":
        return cls(field, np.eye(n, dtype=np.int64), n=n)

    def with_name(self, name: str) -> "LinearCode":
        c = LinearCode.__new__(LinearCode)
        c.__dict__.update(self.__dict__)
        c.name = name
        return c

    # -- distance cache

    @property
    def d_bounds(self) -> tuple[int, int] | None:
        if self.k == 0:
            return None
        return (self._lower, self._upper)

    @property
    def d_exact(self) -> int | None:
        if self.k and self._lower == self._upper:
            return self._lower
        return None

    def record_distance(self, lower: int, upper: int) -> None:
        lo = max(self._lower, int(lower))
        hi = min(self._upper, int(upper))
        if lo > hi:
            raise AssertionError(f"inconsistent distance bounds {lo} > {hi}")
        self._lower, self._upper = lo, hi

    # -- identity

    @property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(repr(self.field.key).encode())
        h.update(np.asarray([self.n, self.k], dtype=np.int64).tobytes())
        h.update(np.ascontiguousarray(self.gen, dtype=np.int64).tobytes())
        return h.hexdigest()

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            self.field is other.field
            and self.n == other.n
            and self.k == other.k
            and np.array_equal(self.gen, other.gen)
        )

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<{label}[{self.n},{self.k}]_{self.field.q} code>"

    # -- membership and containment

    def _same_space(self, other: "LinearCode") -> None:
        if other.field is not self.field or other.n != self.n:
            raise ValueError("codes must share field and length")

    def contains_vectors(self, V) -> np.ndarray:
        V = np.asarray(V, dtype=np.int64)
        if V.ndim == 1:
            V = V.reshape(1, -1)
        if self.k == 0:
            return ~V.any(axis=1)
        return linalg.in_rowspace(self.field, self.gen, list(self.pivots), V)

    def contains(self, other: "LinearCode") -> bool:
        """True when ``other`` is a subcode of ``self``."""
        self._same_space(other)
        if other.k == 0:
            return True
        if other.k > self.k:
            return False
        return bool(self.contains_vectors(other.gen).all())

    def __le__(self, other: "LinearCode") -> bool:
        return other.contains(self)

    def __add__(self, other: "LinearCode") -> "LinearCode":
        self._same_space(other)
        return LinearCode(self.field, np.vstack([self.gen, other.gen]), n=self.n)

    def intersect(self, other: "LinearCode") -> "LinearCode":
        self._same_space(other)
        return (self.dual() + other.dual()).dual()

    def complement_in(self, other: "LinearCode") -> "LinearCode":
        """A complement of ``self`` inside ``other`` (requires self <= other)."""
        if not other.contains(self):
            raise ValueError("not a subcode")
        rows = []
        R, piv = self.gen, list(self.pivots)
        for v in other.gen:
            red = linalg.row_reduce_against(self.field, R, piv, v)[0]
            if red.any():
                rows.append(red)
                R, piv = linalg.rref(self.field, np.vstack([R, red]))
        return LinearCode(self.field, np.array(rows, dtype=np.int64).reshape(-1, self.n), n=self.n)

    # -- duals

    def dual(self) -> "LinearCode":
        if self._dual is None:
            if self.k == 0:
                d = LinearCode.full(self.field, self.n)
            else:
                d = LinearCode(self.field, linalg.nullspace(self.field, self.gen), n=self.n)
            d._dual = self
            self._dual = d
        return self._dual

    def parity_check(self) -> np.ndarray:
        return self.dual().gen

    def conjugate(self, f: int) -> "LinearCode":
        """Entrywise image under y -> y^(p^f)."""
        return LinearCode(self.field, self.field.frobenius(self.gen, f), n=self.n)

    def hermitian_dual(self, f: int) -> "LinearCode":
        if self.field.e != 2 * f:
            raise ValueError(f"Hermitian dual needs field degree 2f = {2 * f}, got {self.field.e}")
        return self.conjugate(f).dual()

    # -- subfields

    def restrict_to(self, sub: FiniteField) -> "LinearCode":
        """The same code viewed over a subfield containing all generator entries."""
        if sub is self.field:
            return self
        emb = self.field.subfield(sub.e)
        if emb.sub is not sub:
            raise ValueError("not a subfield of the code field")
        R = emb.restrict(self.gen)
        if (R < 0).any():
            raise ValueError("generator entries outside the subfield")
        return LinearCode(sub, R, n=self.n)

    def extend_to(self, big: FiniteField) -> "LinearCode":
        """Scalar extension to a bigger field."""
        if big is self.field:
            return self
        emb = big.subfield(self.field.e)
        if emb.sub is not self.field:
            raise ValueError("code field is not the pinned subfield of the target")
        return LinearCode(big, emb.embed[self.gen], n=self.n)

    def subfield_subcode(self, f: int) -> "LinearCode":
        return subfield_subcode(self, f)

    def trace_image(self, f: int) -> "LinearCode":
        return trace_image_code(self, f)

    # -- utilities

    def permuted(self, perm) -> "LinearCode":
        """Code with coordinates reordered: new[:, i] = old[:, perm[i]]."""
        return LinearCode(self.field, self.gen[:, np.asarray(perm)], n=self.n)

    def is_automorphism(self, perm) -> bool:
        return self.contains_vectors(self.gen[:, np.asarray(perm)]).all()

    def codewords(self):
        """Iterate all q^k codewords (small codes only)."""
        F = self.field
        for coeffs in product(range(F.q), repeat=self.k):
            c = np.asarray(coeffs, dtype=np.int64)
            yield linalg.matmul(F, c.reshape(1, -1), self.gen)[0] if self.k else np.zeros(self.n, dtype=np.int64)

    def encode(self, msg) -> np.ndarray:
        msg = np.asarray(msg, dtype=np.int64).reshape(1, -1)
        return linalg.matmul(self.field, msg, self.gen)[0]


_coord_cache: dict[tuple, np.ndarray] = {}


def subfield_coordinates(F: FiniteField, f: int) -> np.ndarray:
    """Table T[x, t]: coordinates of x over the GF(p^f)-basis 1, g, ..., g^(e/f-1).

    Coordinates are sub-field encodings (elements of ``F.subfield(f).sub``).
    """
    key = (F.key, f)
    T = _coord_cache.get(key)
    if T is not None:
        return T
    emb = F.subfield(f)
    m = F.e // f
    basis = emb.basis()
    qs = emb.sub.q
    T = np.zeros((F.q, m), dtype=np.int64)
    # enumerate all combinations sum_t c_t basis_t
    combos = np.zeros((1, m), dtype=np.int64)
    vals = np.zeros(1, dtype=np.int64)
    for t in range(m):
        c = np.arange(qs, dtype=np.int64)
        contrib = F.mul(emb.embed[c], basis[t])
        vals = F.add(vals[:, None], contrib[None, :]).reshape(-1)
        new = np.repeat(combos, qs, axis=0)
        new[:, t] = np.tile(c, len(combos))
        combos = new
    T[vals] = combos
    if len(np.unique(vals)) != F.q:
        raise ArithmeticError("subfield basis is not a basis")
    _coord_cache[key] = T
    return T


def euclidean_dual(C: LinearCode) -> LinearCode:
    return C.dual()


def hermitian_dual(C: LinearCode, f: int) -> LinearCode:
    return C.hermitian_dual(f)


def subfield_subcode(C: LinearCode, f: int) -> LinearCode:
    """Codewords of C with all entries in GF(p^f), as a code over that subfield.

    Each parity check over the big field is expanded into e/f checks over the
    subfield through basis coordinates, and the kernel is solved there.
    """
    F = C.field
    if f <= 0 or F.e % f:
        raise ValueError(f"{f} does not divide field degree {F.e}")
    sub = F.subfield(f).sub
    if f == F.e:
        return C
    H = C.parity_check()
    if H.shape[0] == 0:
        return LinearCode.full(sub, C.n)
    T = subfield_coordinates(F, f)
    coords = T[H]  # (r, n, m)
    stacked = np.transpose(coords, (2, 0, 1)).reshape(-1, C.n)
    return LinearCode(sub, linalg.nullspace(sub, stacked, C.n), n=C.n)


def trace_image_code(C: LinearCode, f: int) -> LinearCode:
    """GF(p^f)-span of the componentwise traces of codewords of C."""
    F = C.field
    if f <= 0 or F.e % f:
        raise ValueError(f"{f} does not divide field degree {F.e}")
    emb = F.subfield(f)
    if f == F.e:
        return C
    if C.k == 0:
        return LinearCode.zero(emb.sub, C.n)
    basis = emb.basis()
    rows = [F.trace(F.mul(b, C.gen), f) for b in basis]
    T = np.vstack(rows)
    return LinearCode(emb.sub, emb.restrict(T), n=C.n)
