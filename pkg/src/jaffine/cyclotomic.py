"""Minimal cyclotomic sets of exponent grids and trace generators of subfield-subcodes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import LinearCode
from .variety import (
    DefiningSet,
    Exponent,
    VarietyParams,
    _grid,
    delta_perp,
    delta_perp_h,
)

__all__ = [
    "CyclotomicSet",
    "CyclotomicPartition",
    "DimReport",
    "minimal_cyclotomic_sets",
    "act",
    "closure",
    "is_closed",
    "trace_generators",
    "trace_code",
    "subfield_dims",
    "neg_multiple",
]


def act(a: Exponent, params: VarietyParams, M: int) -> Exponent:
    """Componentwise a_j -> M*a_j mod (N_j - 1), with 0 and N_j - 1 fixed."""
    out = []
    for x, Nj in zip(a, params.N):
        r = Nj - 1
        if x == 0 or x == r:
            out.append(x)
        else:
            out.append((M * x) % r)
    return tuple(out)


def neg_multiple(a: Exponent, params: VarietyParams, Q: int) -> Exponent:
    """Componentwise a_j -> -Q*a_j mod (N_j - 1) on {1..N_j-2}, 0 and N_j - 1 fixed."""
    out = []
    for x, Nj in zip(a, params.N):
        r = Nj - 1
        out.append(x if x in (0, r) else (-Q * x) % r)
    return tuple(out)


@dataclass(frozen=True)
class CyclotomicSet:
    rep: Exponent
    members: tuple[Exponent, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CyclotomicPartition:
    params: VarietyParams
    multiplier: int
    sets: tuple[CyclotomicSet, ...]
    rep_index: dict

    def set_of(self, a: Exponent) -> CyclotomicSet:
        return self.sets[self.rep_index[tuple(a)]]

    def __len__(self):
        return len(self.sets)


def minimal_cyclotomic_sets(params: VarietyParams, M: int) -> CyclotomicPartition:
    """Partition of H_J into orbits under multiplication by M (a power of p)."""
    x, t = M, 0
    while x > 1 and x % params.p == 0:
        x //= params.p
        t += 1
    if x != 1 or t < 1:
        raise ValueError(f"multiplier {M} is not a positive power of {params.p}")
    index: dict[Exponent, int] = {}
    sets = []
    for a in params.grid():
        if a in index:
            continue
        orbit = [a]
        b = act(a, params, M)
        while b != a:
            orbit.append(b)
            b = act(b, params, M)
        for b in orbit:
            index[b] = len(sets)
        sets.append(CyclotomicSet(a, tuple(orbit)))
    return CyclotomicPartition(params, M, tuple(sets), index)


def closure(delta: DefiningSet, partition: CyclotomicPartition) -> DefiningSet:
    """Union of the cyclotomic sets meeting Delta."""
    out = set()
    for a in delta.elems:
        out.update(partition.set_of(a).members)
    return DefiningSet(delta.params, out)


def is_closed(delta: DefiningSet, partition: CyclotomicPartition) -> bool:
    return closure(delta, partition).elems == delta.elems


def _sets_in(delta: DefiningSet, partition: CyclotomicPartition) -> list[CyclotomicSet]:
    ids = sorted({partition.rep_index[a] for a in delta.elems})
    return [partition.sets[i] for i in ids]


def _f_of(partition: CyclotomicPartition) -> int:
    M, p, f = partition.multiplier, partition.params.p, 0
    while M > 1:
        M //= p
        f += 1
    return f


def trace_generators(delta: DefiningSet, partition: CyclotomicPartition, f: int | None = None) -> np.ndarray:
    """Vectors ev(T_a(beta_a^l X^a)), 0 <= l < i_a, over every cyclotomic set in Delta.

    Returned as subfield encodings (rows over ``F.subfield(f).sub``).
    """
    params = delta.params
    if f is None:
        f = _f_of(partition)
    if params.p**f != partition.multiplier:
        raise ValueError("trace degree must match the partition multiplier")
    if not is_closed(delta, partition):
        raise ValueError("defining set is not a union of cyclotomic sets")
    F = params.field
    if F.e % f:
        raise ValueError(f"{f} does not divide field degree {F.e}")
    emb = F.subfield(f)
    grid = _grid(params)
    rows = []
    for cs in _sets_in(delta, partition):
        i_a = cs.size
        if F.e % (f * i_a):
            raise AssertionError("orbit size does not divide the relative degree")
        beta = F.pow_s(F.g, F.order // (params.p ** (f * i_a) - 1))
        ev = grid.evaluate(np.array([cs.rep], dtype=np.int64))[0]
        for l in range(i_a):
            v = F.mul(F.pow_s(beta, l), ev)
            acc = v.copy()
            cur = v
            for _ in range(i_a - 1):
                cur = F.frobenius(cur, f)
                acc = F.add(acc, cur)
            sub = emb.restrict(acc)
            if (sub < 0).any():
                raise AssertionError("trace generator left the subfield")
            rows.append(sub)
    return np.array(rows, dtype=np.int64).reshape(-1, grid.n)


def trace_code(delta: DefiningSet, partition: CyclotomicPartition, f: int | None = None) -> LinearCode:
    if f is None:
        f = _f_of(partition)
    sub = delta.params.field.subfield(f).sub
    return LinearCode(sub, trace_generators(delta, partition, f), n=delta.params.n)


@dataclass(frozen=True)
class DimReport:
    subcode_dim: int  # dim of the subfield-subcode of E_Delta
    dual_dim_bound: int  # lower bound for the dimension of its dual code
    condition: bool  # every cyclotomic set inside Delta meets the (Hermitian) dual set
    in_h_prime: bool
    exact_dual: bool  # the combinatorial dual set describes the full dual
    failing_sets: tuple[Exponent, ...] = ()

    def as_dict(self) -> dict:
        return {
            "subcode_dim": self.subcode_dim,
            "dual_dim_bound": self.dual_dim_bound,
            "condition": self.condition,
            "in_h_prime": self.in_h_prime,
            "exact_dual": self.exact_dual,
            "failing_sets": [list(a) for a in self.failing_sets],
        }


def subfield_dims(
    delta: DefiningSet,
    partition: CyclotomicPartition,
    mode: str = "euclid",
    conj_exponent: int | None = None,
) -> DimReport:
    """Dimension count, dual-dimension bound and self-orthogonality condition."""
    from .variety import perp_is_exact

    if mode == "euclid":
        perp = delta_perp(delta)
        Q = 1
    elif mode == "herm":
        if conj_exponent is None:
            raise ValueError("Hermitian mode needs the conjugation exponent")
        perp = delta_perp_h(delta, conj_exponent)
        Q = delta.params.p**conj_exponent
    else:
        raise ValueError(f"unknown mode {mode!r}")
    inside = [cs for cs in partition.sets if set(cs.members) <= delta.elems]
    dim = sum(cs.size for cs in inside)
    bound = sum(cs.size for cs in partition.sets if perp.elems.intersection(cs.members))
    failing = tuple(cs.rep for cs in inside if not perp.elems.intersection(cs.members))
    return DimReport(
        subcode_dim=dim,
        dual_dim_bound=bound,
        condition=not failing,
        in_h_prime=delta.in_h_prime(),
        exact_dual=perp_is_exact(delta, Q),
        failing_sets=failing,
    )
