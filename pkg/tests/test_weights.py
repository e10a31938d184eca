from __future__ import annotations

from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jaffine._kernels import compiled_available
from jaffine.codes import LinearCode
from jaffine.galois import make_field
from jaffine.weights import min_weight, orbits, relative_min_weight

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (7, 1)]
BACKENDS = ["python"] + (["compiled"] if compiled_available() else [])


def all_words(C: LinearCode) -> np.ndarray:
    F = C.field
    coeffs = np.array(list(product(range(F.q), repeat=C.k)), dtype=np.int64)
    out = np.zeros((len(coeffs), C.n), dtype=np.int64)
    for i, row in enumerate(C.gen):
        out = F.add(out, F.mul(coeffs[:, i : i + 1], row[None, :]))
    return out


def oracle_min_weight(C: LinearCode, exclude: LinearCode | None = None) -> int:
    words = all_words(C)
    wts = (words != 0).sum(axis=1)
    keep = wts > 0
    if exclude is not None:
        keep &= ~exclude.contains_vectors(words)
    return int(wts[keep].min())


@st.composite
def small_codes(draw, max_words=3000):
    p, e = draw(st.sampled_from(FIELDS))
    F = make_field(p, e)
    n = draw(st.integers(2, 14))
    kmax = 1
    while kmax < n and F.q ** (kmax + 1) <= max_words:
        kmax += 1
    k = draw(st.integers(1, kmax))
    vals = draw(st.lists(st.integers(0, F.q - 1), min_size=k * n, max_size=k * n))
    C = LinearCode(F, np.array(vals, dtype=np.int64).reshape(k, n), n=n)
    if C.k == 0:
        C = LinearCode(F, np.eye(1, n, dtype=np.int64), n=n)
    return C


@pytest.mark.parametrize("backend", BACKENDS)
@given(C=small_codes())
def test_information_set_matches_oracle(C, backend):
    d = oracle_min_weight(C)
    rep = min_weight(C, "information-set", backend=backend, threads=1)
    assert rep.exact and rep.value == d == rep.lower
    w = np.array(rep.witness)
    assert C.contains_vectors(w).all() and int((w != 0).sum()) == d


@given(C=small_codes())
def test_exhaustive_matches_oracle(C):
    rep = min_weight(C, "exhaustive")
    assert rep.exact and rep.value == oracle_min_weight(C)


@given(C=small_codes(max_words=800), data=st.data())
def test_relative_weight_matches_oracle(C, data):
    if C.k < 2:
        return
    r = data.draw(st.integers(1, C.k - 1))
    sub = LinearCode(C.field, C.gen[:r], n=C.n)
    rep = relative_min_weight(C, sub)
    assert rep.exact and rep.value == oracle_min_weight(C, sub)
    assert not sub.contains_vectors(np.array(rep.witness)).any()


@given(C=small_codes(max_words=800))
def test_bounds_are_consistent_under_stops(C):
    d = oracle_min_weight(C)
    up = min_weight(C, "information-set", stop_upper=C.n)
    assert up.value >= d and up.lower <= d
    lo = min_weight(C, "information-set", stop_lower=1)
    assert lo.lower <= d <= lo.value


@given(C=small_codes(max_words=800))
def test_monte_carlo_is_an_upper_bound(C):
    rep = min_weight(C, "monte-carlo", iterations=5, seed=3)
    assert rep.value >= oracle_min_weight(C)
    assert not rep.exact or rep.value == oracle_min_weight(C)


def cyclic_code(F, n: int, gpoly: list[int]) -> LinearCode:
    k = n - (len(gpoly) - 1)
    rows = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        rows[i, i : i + len(gpoly)] = gpoly
    return LinearCode(F, rows, n=n)


def shift(n: int) -> np.ndarray:
    return np.roll(np.arange(n), 1)


def test_golay_codes():
    F = make_field(2, 1)
    # g(x) = 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11
    g = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]
    G23 = cyclic_code(F, 23, g)
    assert G23.k == 12
    for perms in (None, [shift(23)]):
        rep = min_weight(G23, "information-set", automorphisms=perms)
        assert rep.exact and rep.value == 7
    ext = np.hstack([G23.gen, (G23.gen.sum(axis=1) % 2)[:, None]])
    assert min_weight(LinearCode(F, ext), "information-set").value == 8


def test_cyclic_automorphism_bound_certifies_bch_distance():
    # binary BCH [31, 21, 5]: g = m1 * m3 with m1 = 1 + x^2 + x^5, m3 = 1 + x^2 + x^3 + x^4 + x^5
    F = make_field(2, 1)
    m1, m3 = [1, 0, 1, 0, 0, 1], [1, 0, 1, 1, 1, 1]
    g = [0] * 11
    for i, a in enumerate(m1):
        for j, b in enumerate(m3):
            g[i + j] ^= a & b
    C = cyclic_code(F, 31, g)
    assert C.k == 21
    rep = min_weight(C, "information-set", automorphisms=[shift(31)])
    plain = min_weight(C, "information-set")
    assert rep.exact and plain.exact and rep.value == plain.value == 5
    assert rep.words <= plain.words


def test_non_automorphisms_are_rejected():
    F = make_field(2, 1)
    C = cyclic_code(F, 15, [1, 1, 0, 0, 1])  # Hamming [15, 11, 3]
    bogus = np.array([1, 0] + list(range(2, 15)))
    with pytest.raises(ValueError, match="not an automorphism"):
        min_weight(C, "information-set", automorphisms=[bogus])
    with pytest.raises(ValueError, match="not a permutation"):
        min_weight(C, "information-set", automorphisms=[np.zeros(15, dtype=int)])
    assert min_weight(C, "information-set", automorphisms=[shift(15)]).value == 3


def test_orbits_of_permutation_group():
    assert sorted(map(sorted, orbits(6, [np.array([1, 2, 0, 3, 4, 5])]))) == [[0, 1, 2], [3], [4], [5]]


def test_budget_and_method_errors():
    F = make_field(2, 1)
    C = cyclic_code(F, 23, [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1])
    rep = min_weight(C, "information-set", budget=0)
    assert rep.lower <= 7 <= rep.value
    with pytest.raises(ValueError):
        min_weight(C, "nonsense")
    with pytest.raises(ValueError):
        min_weight(LinearCode.zero(F, 5))
    with pytest.raises(ValueError):
        min_weight(C, "exhaustive", cap=100)
    with pytest.raises(ValueError):
        relative_min_weight(C, C)


@pytest.mark.skipif(not compiled_available(), reason="compiled kernel not built")
@pytest.mark.parametrize("p,e", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])
def test_backends_agree_on_random_codes(p, e):
    F = make_field(p, e)
    rng = np.random.default_rng(7)
    for _ in range(6):
        n = int(rng.integers(10, 26))
        k = int(rng.integers(2, min(n - 1, 8)))
        C = LinearCode(F, rng.integers(0, F.q, (k, n)), n=n)
        sub = LinearCode(F, C.gen[:1], n=n)
        for excl in (None, sub if C.k > 1 else None):
            a = min_weight(C, "information-set", exclude=excl, backend="python", threads=1)
            b = min_weight(C, "information-set", exclude=excl, backend="compiled", threads=1)
            assert (a.value, a.lower, a.exact) == (b.value, b.lower, b.exact)
            assert a.witness == b.witness


@pytest.mark.skipif(not compiled_available(), reason="compiled kernel not built")
def test_thread_count_does_not_change_results():
    F = make_field(2, 1)
    C = cyclic_code(F, 23, [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1])
    a = min_weight(C, "information-set", threads=1)
    b = min_weight(C, "information-set", threads=4)
    assert a.as_dict(timing=False) == b.as_dict(timing=False)
