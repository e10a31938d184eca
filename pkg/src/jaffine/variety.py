"""J-affine variety codes: exponent grids, point sets and evaluation codes.

For parameters ``(p, e, N_1..N_m, J)`` the points are the m-tuples whose
j-th coordinate is an (N_j - 1)-th root of unity, or additionally 0 when
``j`` is not in ``J``.  Monomials ``X^a`` with ``0 <= a_j <= T_j`` (``T_j =
N_j - 2`` for ``j`` in ``J``, ``N_j - 1`` otherwise) are evaluated there.

Indices in ``J`` are 1-based throughout, matching the usual notation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable

import numpy as np

from .codes import LinearCode
from .galois import FiniteField, make_field

__all__ = [
    "VarietyParams",
    "DefiningSet",
    "PointGrid",
    "build_grid",
    "evaluate_code",
    "pair_nonzero",
    "pair_nonzero_euclid",
    "pair_nonzero_herm",
    "partners",
    "delta_perp",
    "delta_perp_h",
    "rm_hermitian_selforth",
    "reed_muller_set",
    "direct_product",
]

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class VarietyParams:
    p: int
    e_field: int
    N: tuple[int, ...]
    J: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "N", tuple(int(x) for x in self.N))
        object.__setattr__(self, "J", frozenset(int(j) for j in self.J))
        F = make_field(self.p, self.e_field)
        if not self.N:
            raise ValueError("at least one variable is required")
        for j, Nj in enumerate(self.N, start=1):
            if Nj < 2:
                raise ValueError(f"N_{j} = {Nj} must be > 1")
            if F.order % (Nj - 1):
                raise ValueError(f"N_{j} - 1 = {Nj - 1} does not divide {F.q} - 1 = {F.order}")
        bad = [j for j in self.J if not 1 <= j <= len(self.N)]
        if bad:
            raise ValueError(f"J contains indices outside 1..{len(self.N)}: {sorted(bad)}")

    @property
    def m(self) -> int:
        return len(self.N)

    @property
    def field(self) -> FiniteField:
        return make_field(self.p, self.e_field)

    @property
    def T(self) -> tuple[int, ...]:
        return tuple(Nj - 2 if j in self.J else Nj - 1 for j, Nj in enumerate(self.N, start=1))

    @property
    def n(self) -> int:
        out = 1
        for j, Nj in enumerate(self.N, start=1):
            out *= Nj - 1 if j in self.J else Nj
        return out

    def in_J(self, j0: int) -> bool:
        """0-based coordinate test."""
        return (j0 + 1) in self.J

    def grid(self) -> list[Exponent]:
        """All exponent vectors of H_J in lexicographic order."""
        return [tuple(a) for a in product(*(range(t + 1) for t in self.T))]

    def valid(self, a: Exponent) -> bool:
        return len(a) == self.m and all(0 <= x <= t for x, t in zip(a, self.T))

    def in_h_prime(self, a: Exponent) -> bool:
        return all(x <= Nj - 2 for x, Nj in zip(a, self.N))

    def as_dict(self) -> dict:
        return {"p": self.p, "field_degree": self.e_field, "N": list(self.N), "J": sorted(self.J)}


class DefiningSet:
    """A set of exponent vectors valid for ``params``."""

    __slots__ = ("params", "elems")

    def __init__(self, params: VarietyParams, elems: Iterable):
        items = set()
        for a in elems:
            a = (int(a),) if np.ndim(a) == 0 else tuple(int(x) for x in a)
            if not params.valid(a):
                raise ValueError(f"exponent {a} outside H_J (bounds {params.T})")
            items.add(a)
        self.params = params
        self.elems = frozenset(items)

    def __iter__(self):
        return iter(sorted(self.elems))

    def __len__(self):
        return len(self.elems)

    def __contains__(self, a):
        return tuple(a) in self.elems

    def __eq__(self, other):
        if isinstance(other, DefiningSet):
            return self.params == other.params and self.elems == other.elems
        return NotImplemented

    def __hash__(self):
        return hash((self.params, self.elems))

    def __le__(self, other: "DefiningSet") -> bool:
        return self.elems <= other.elems

    def __or__(self, other: "DefiningSet") -> "DefiningSet":
        return DefiningSet(self.params, self.elems | other.elems)

    def __and__(self, other: "DefiningSet") -> "DefiningSet":
        return DefiningSet(self.params, self.elems & other.elems)

    def __sub__(self, other: "DefiningSet") -> "DefiningSet":
        return DefiningSet(self.params, self.elems - other.elems)

    def __repr__(self):
        return f"DefiningSet({sorted(self.elems)})"

    def sorted(self) -> list[Exponent]:
        return sorted(self.elems)

    def to_list(self) -> list:
        if self.params.m == 1:
            return [a[0] for a in self.sorted()]
        return [list(a) for a in self.sorted()]

    def in_h_prime(self) -> bool:
        return all(self.params.in_h_prime(a) for a in self.elems)


@dataclass(frozen=True)
class PointGrid:
    """Points of the variety in canonical order.

    ``index[i, j]`` is the discrete index of coordinate j of point i: ``t``
    for xi_j**t, and ``N_j - 1`` for the coordinate 0.
    """

    params: VarietyParams
    index: np.ndarray
    xi: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.index.shape[0]

    @cached_property
    def points(self) -> np.ndarray:
        F = self.params.field
        out = np.zeros(self.index.shape, dtype=np.int64)
        for j, Nj in enumerate(self.params.N):
            idx = self.index[:, j]
            vals = F.power(np.full(len(idx), self.xi[j]), np.where(idx == Nj - 1, 0, idx))
            out[:, j] = np.where(idx == Nj - 1, 0, vals)
        return out

    def monomial_logs(self, A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Discrete logs of X^a at every point, and a mask of zero values."""
        F = self.params.field
        A = np.asarray(A, dtype=np.int64).reshape(-1, self.params.m)
        logs = np.zeros((A.shape[0], self.n), dtype=np.int64)
        zero = np.zeros((A.shape[0], self.n), dtype=bool)
        for j, Nj in enumerate(self.params.N):
            step = F.order // (Nj - 1)
            idx = self.index[:, j]
            is0 = idx == Nj - 1
            logs += (A[:, j, None] * np.where(is0, 0, idx)[None, :] * step) % F.order
            zero |= is0[None, :] & (A[:, j, None] > 0)
        return logs % F.order, zero

    def evaluate(self, A) -> np.ndarray:
        """Matrix whose rows are ev(X^a) for the exponent rows of A."""
        F = self.params.field
        logs, zero = self.monomial_logs(A)
        return np.where(zero, 0, F.exp(logs))

    def torus_permutations(self) -> list[np.ndarray]:
        """Coordinate permutations induced by x_j -> xi_j * x_j (code automorphisms)."""
        perms = []
        pos = {tuple(r): i for i, r in enumerate(self.index.tolist())}
        for j, Nj in enumerate(self.params.N):
            if Nj - 1 == 1:
                continue
            shifted = self.index.copy()
            nz = shifted[:, j] != Nj - 1
            shifted[nz, j] = (shifted[nz, j] + 1) % (Nj - 1)
            perms.append(np.array([pos[tuple(r)] for r in shifted.tolist()], dtype=np.int64))
        return perms


def build_grid(params: VarietyParams) -> PointGrid:
    F = params.field
    ranges = []
    for j, Nj in enumerate(params.N, start=1):
        r = list(range(Nj - 1))
        if j not in params.J:
            r.append(Nj - 1)  # the zero coordinate comes last
        ranges.append(r)
    index = np.array(list(product(*ranges)), dtype=np.int64).reshape(-1, params.m)
    xi = tuple(F.pow_s(F.g, F.order // (Nj - 1)) for Nj in params.N)
    grid = PointGrid(params, index, xi)
    if grid.n != params.n:
        raise AssertionError("point count mismatch")
    return grid


_grid_cache: dict[VarietyParams, PointGrid] = {}


def _grid(params: VarietyParams) -> PointGrid:
    g = _grid_cache.get(params)
    if g is None:
        g = _grid_cache.setdefault(params, build_grid(params))
    return g


def evaluate_code(delta: DefiningSet) -> LinearCode:
    """E_Delta: the span of ev(X^a) for a in Delta over GF(p^e)."""
    if len(delta) == 0:
        raise ValueError("empty defining set")
    grid = _grid(delta.params)
    M = grid.evaluate(np.array(delta.sorted(), dtype=np.int64))
    C = LinearCode(delta.params.field, M, n=grid.n)
    if C.k != len(delta):
        raise AssertionError("monomials are not independent on the variety")
    return C


# -- pairing predicates


def _coord_partners(a: int, Nj: int, in_J: bool, Q: int, p: int) -> tuple[int, ...]:
    """All b_j in range with Q*a + b nonzero-paired for one coordinate."""
    r = Nj - 1
    b0 = (-Q * a) % r
    if in_J:
        return (b0,)
    if a == 0:
        return (r, 0) if Nj % p else (r,)
    return (b0, r) if b0 == 0 else (b0,)


def partners(a: Exponent, params: VarietyParams, Q: int = 1) -> list[Exponent]:
    """Every b in H_J with sum_P P^(Q a) P^b != 0."""
    per = [
        _coord_partners(x, Nj, params.in_J(j), Q, params.p)
        for j, (x, Nj) in enumerate(zip(a, params.N))
    ]
    return [tuple(b) for b in product(*per)]


def pair_nonzero(a: Exponent, b: Exponent, params: VarietyParams, Q: int = 1) -> bool:
    """Combinatorial test for sum over points of ev(X^a)^Q * ev(X^b) != 0."""
    for j, (x, y, Nj) in enumerate(zip(a, b, params.N)):
        s = Q * x + y
        if params.in_J(j):
            if s % (Nj - 1):
                return False
        elif s > 0:
            if s % (Nj - 1):
                return False
        elif Nj % params.p == 0:
            return False
    return True


def pair_nonzero_euclid(a: Exponent, b: Exponent, params: VarietyParams) -> bool:
    return pair_nonzero(a, b, params, 1)


def pair_nonzero_herm(a: Exponent, b: Exponent, params: VarietyParams, f: int) -> bool:
    """Hermitian version with conjugation base Q = p^f applied to ev(X^a)."""
    return pair_nonzero(a, b, params, params.p**f)


def direct_product(a: Exponent, b: Exponent, params: VarietyParams, Q: int = 1) -> int:
    """sum_P ev(X^a)(P)^Q * ev(X^b)(P), computed from the evaluation vectors."""
    F = params.field
    grid = _grid(params)
    x, y = grid.evaluate(np.array([a, b], dtype=np.int64))
    return int(F.sum(F.mul(F.power(x, Q), y)))


def _perp(delta: DefiningSet, Q: int) -> DefiningSet:
    params = delta.params
    removed = set()
    for a in delta.elems:
        removed.update(partners(a, params, Q))
    return DefiningSet(params, (b for b in params.grid() if b not in removed))


def delta_perp(delta: DefiningSet) -> DefiningSet:
    """H_J minus every exponent that pairs nonzero with some element of Delta."""
    return _perp(delta, 1)


def delta_perp_h(delta: DefiningSet, f: int) -> DefiningSet:
    """Hermitian analogue with multiplier Q = p^f on the elements of Delta."""
    return _perp(delta, delta.params.p**f)


def perp_is_exact(delta: DefiningSet, Q: int = 1) -> bool:
    """True when every element of Delta removes exactly one exponent and no two collide.

    Then |Delta^perp| = n_J - |Delta| and E_{Delta^perp} is the full dual.
    """
    seen = set()
    for a in delta.elems:
        ps = partners(a, delta.params, Q)
        if len(ps) != 1 or ps[0] in seen:
            return False
        seen.add(ps[0])
    return True


def rm_hermitian_selforth(r: int, m: int, q0: int) -> bool:
    """Whether RM_{q0^2}(r, m) is contained in its Hermitian dual."""
    if r < 0 or m < 1 or q0 < 2:
        raise ValueError("need r >= 0, m >= 1, q0 >= 2")
    return r <= m * (q0 - 1) - 1


def reed_muller_set(params: VarietyParams, r: int) -> DefiningSet:
    """Exponents of total degree at most r (J empty, N_j = q gives RM_q(r, m))."""
    return DefiningSet(params, (a for a in params.grid() if sum(a) <= r))
