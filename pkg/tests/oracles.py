"""Independent oracles shared by the variety and acceptance tests."""

from __future__ import annotations

import numpy as np

from jaffine import linalg
from jaffine.galois import make_field
from jaffine.variety import VarietyParams, _grid

# (p, e) pairs small enough for full-grid Gram matrices
FIELD_POOL = [(2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (2, 6), (3, 3), (5, 2), (13, 1)]


def divisors(x: int) -> list[int]:
    return [d for d in range(1, x + 1) if x % d == 0]


def random_params(rng, max_n: int = 30, even: bool = False) -> VarietyParams:
    """Random VarietyParams with n_J <= max_n (even field degree when ``even``)."""
    pool = [pe for pe in FIELD_POOL if not even or pe[1] % 2 == 0]
    while True:
        p, e = pool[rng.integers(len(pool))]
        q = p**e
        m = int(rng.integers(1, 4))
        ds = [d for d in divisors(q - 1) if d >= 1]
        N = tuple(int(rng.choice(ds)) + 1 for _ in range(m))
        J = frozenset(j + 1 for j in range(m) if rng.random() < 0.5)
        params = VarietyParams(p, e, N, J)
        if 2 <= params.n <= max_n:
            return params


def gram(params: VarietyParams, Q: int) -> tuple[list, np.ndarray]:
    """All exponents of H_J and the matrix sum_P ev(X^a)(P)^Q * ev(X^b)(P) over them."""
    F = make_field(params.p, params.e_field)
    exps = params.grid()
    M = _grid(params).evaluate(np.array(exps, dtype=np.int64))
    return exps, linalg.matmul(F, F.power(M, Q), M.T)
