from __future__ import annotations

import numpy as np
import pytest

from jaffine.codes import LinearCode
from jaffine.galois import make_field
from jaffine.stabilizer import (
    DistanceOptions,
    EnlargementInput,
    PreconditionError,
    build_symplectic_code,
    css_construct,
    enlargement_from_codes,
    expurgate,
    fixed_point_free,
    generalized_enlarge,
    gv_check,
    hermitian_construct,
    replay,
    steane_enlarge,
    symplectic_min_weight,
    symplectic_product,
    symplectic_weight,
)
from jaffine.stabilizer import _span

from conftest import random_code, self_orthogonal_code
from stab_inputs import rand_enlargement_input, rand_steane_pair

GF2 = make_field(2, 1)
GF3 = make_field(3, 1)
GF4 = make_field(2, 2)

HAMMING = np.array([[1, 0, 0, 0, 1, 1, 0], [0, 1, 0, 0, 1, 0, 1], [0, 0, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]])


def test_css_from_hamming_is_steane_code():
    sp = css_construct(LinearCode(GF2, HAMMING))
    assert (sp.n, sp.k, sp.d_low, sp.d_exact, sp.q_alphabet) == (7, 1, 3, 3, 2)
    assert sp.pure


def test_css_rejects_code_without_its_dual():
    with pytest.raises(PreconditionError, match="self-orthogonality"):
        css_construct(LinearCode(GF2, HAMMING).dual())


def test_hermitian_hexacode():
    # the [6,3,4]_4 hexacode is Hermitian self-dual: [[6,0,4]]_2 needs k >= 0 only
    w = 2  # generator of GF(4)
    G = np.array([[1, 0, 0, 1, w, w], [0, 1, 0, w, 1, w], [0, 0, 1, w, w, 1]])
    hexa = LinearCode(GF4, G)
    assert hexa.hermitian_dual(1) == hexa
    sp = hermitian_construct(hexa, 1)
    assert (sp.n, sp.k, sp.q_alphabet) == (6, 0, 2)
    with pytest.raises(ValueError):
        hermitian_construct(LinearCode(GF2, HAMMING), 1)


def test_fixed_point_free_matrices():
    for F in (GF2, GF3, GF4, make_field(5, 1)):
        for t in (2, 3, 4):
            A = fixed_point_free(F, t)
            # no eigenvalue in F: A - lambda I invertible for every lambda
            for lam in range(F.q):
                M = A.copy()
                for i in range(t):
                    M[i, i] = F.sub(M[i, i], lam)
                assert LinearCode(F, M, n=t).k == t
    with pytest.raises(ValueError):
        fixed_point_free(GF2, 1)


def test_symplectic_weight_helper():
    assert symplectic_weight([1, 0, 1, 0, 1, 1]) == 3
    assert symplectic_weight([1, 0, 0, 1, 0, 0]) == 1
    assert symplectic_weight(np.array([0, 0, 2, 1]), 2) == 2


def _a9_case(seed: int, F, n_range, max_log):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(*n_range))
    inp = rand_enlargement_input(rng, F, n, max_log)
    S = build_symplectic_code(inp)
    sp = generalized_enlarge(inp, DistanceOptions(method="exhaustive"))
    assert S.contains_dual()
    assert S.dim == inp.C2.k + inp.C1hat.k
    assert sp.k == S.dim - n
    w = symplectic_min_weight(S)
    assert w.value >= sp.d_low, (seed, w.value, sp.d_low)
    if F.q == 2:
        words = _span(F, S.gen, 2**22)
        u, v = words[:, :n], words[:, n:]
        lhs = 2 * S.weights(words)
        assert np.array_equal(lhs, (u != 0).sum(1) + (v != 0).sum(1) + ((u ^ v) != 0).sum(1))
    return sp, w.value


@pytest.mark.parametrize("seed", range(36))
def test_symplectic_machinery_binary(seed):
    _a9_case(1000 + seed, GF2, (6, 15), 18)


@pytest.mark.parametrize("seed", range(24))
def test_symplectic_machinery_ternary(seed):
    _a9_case(2000 + seed, GF3, (5, 10), 11)


@pytest.mark.parametrize("seed", range(20))
def test_generalized_with_equal_codes_is_steane(seed):
    rng = np.random.default_rng(3000 + seed)
    F = GF2 if seed % 2 == 0 else GF3
    n = int(rng.integers(6, 13))
    C, Cp = rand_steane_pair(rng, F, n)
    opts = DistanceOptions(method="exhaustive")
    st = steane_enlarge(C, Cp, opts)
    D = C.complement_in(Cp)
    gen = generalized_enlarge(EnlargementInput(C, C, D), opts, relative=True)
    assert (gen.n, gen.k, gen.d_low, gen.q_alphabet) == (st.n, st.k, st.d_low, st.q_alphabet)
    assert gen.details["enlarged_term"] == st.details["enlarged_term"]


def test_steane_preconditions():
    C = LinearCode(GF2, HAMMING)
    with pytest.raises(PreconditionError, match="at least"):
        steane_enlarge(C, C)
    with pytest.raises(PreconditionError, match="subcode"):
        even = LinearCode(GF2, np.hstack([np.eye(6, dtype=int), np.ones((6, 1), dtype=int)]))
        steane_enlarge(C, even)
    with pytest.raises(PreconditionError, match="self-orthogonality"):
        steane_enlarge(C.dual(), LinearCode.full(GF2, 7))


def test_enlargement_input_preconditions():
    rng = np.random.default_rng(5)
    inp = rand_enlargement_input(rng, GF2, 10, 18)
    with pytest.raises(PreconditionError, match="dim D"):
        EnlargementInput(inp.C1, inp.C1hat, LinearCode(GF2, inp.D.gen[:1], n=10))
    with pytest.raises(PreconditionError, match="intersect"):
        EnlargementInput(inp.C1, inp.C1hat, inp.C1 + inp.D if inp.C1.k else inp.D)
    with pytest.raises(PreconditionError, match="C1\\^perp"):
        EnlargementInput(inp.C1, LinearCode.zero(GF2, 10), inp.D)


def test_enlargement_from_codes_recovers_block():
    rng = np.random.default_rng(11)
    inp = rand_enlargement_input(rng, GF3, 8, 11)
    got = enlargement_from_codes(inp.C1, inp.C1hat, inp.C2, inp.C2hat, inp.C3)
    assert got.C2 == inp.C2 and got.C2hat == inp.C2hat and got.C3 == inp.C3
    with pytest.raises(PreconditionError):
        enlargement_from_codes(inp.C1, inp.C1hat, inp.C2, inp.C1hat)


@pytest.mark.parametrize("seed", range(6))
def test_expurgation_keeps_bound(seed):
    rng = np.random.default_rng(4000 + seed)
    F = GF2 if seed < 3 else GF3
    inp = rand_enlargement_input(rng, F, 9 if F.q == 2 else 7, 16 if F.q == 2 else 10)
    sp = generalized_enlarge(inp, DistanceOptions(method="exhaustive"))
    S = build_symplectic_code(inp)
    for target in range(sp.k - 1, 0, -1):
        sp2, S2 = expurgate(sp, S, target)
        assert sp2.k == target and sp2.d_low == sp.d_low
        assert S2.contains_dual()
        assert S2.dim - S2.n == target
        assert symplectic_min_weight(S2).value >= sp.d_low
        assert not symplectic_product(F, S2.parity, S2.parity, S2.n).any()
    with pytest.raises(ValueError):
        expurgate(sp, S, sp.k + 1)


def test_replay_reproduces_parameters():
    rng = np.random.default_rng(8)
    inp = rand_enlargement_input(rng, GF2, 10, 18)
    sp = generalized_enlarge(inp, DistanceOptions(method="exhaustive"))
    again = replay(sp.provenance)
    assert again.key == sp.key
    C = LinearCode(GF2, HAMMING)
    assert replay(css_construct(C).provenance).key == css_construct(C).key
    with pytest.raises(ValueError):
        replay({"construction": "nope"})


def test_gv_check():
    # [[5,1,3]]_2 beats Feng-Ma: sum_{i<3} 3^(i-1) C(5,i) = 5 + 30 = 35 vs (2^6 - 1)/3 = 21
    assert gv_check(5, 1, 3, 2)
    assert not gv_check(20, 2, 2, 2)
    assert gv_check(127, 63, 12, 2) == (not _feng_ma_by_hand(127, 63, 12, 2))
    with pytest.raises(ValueError):
        gv_check(5, 5, 3, 2)
    with pytest.raises(ValueError):
        gv_check(5, 1, 3, 2, "nope")


def _feng_ma_by_hand(n, k, d, q):
    from fractions import Fraction
    from math import comb

    if (n - k) % 2:
        k += 1
    return sum((q * q - 1) ** (i - 1) * comb(n, i) for i in range(1, d)) < Fraction(q ** (n - k + 2) - 1, q * q - 1)


def test_hermitian_self_orthogonal_random():
    rng = np.random.default_rng(3)
    for _ in range(5):
        S = self_orthogonal_code(rng, GF4, 8, 3, conj=1)
        if S is None:
            continue
        C = S.hermitian_dual(1)
        sp = hermitian_construct(C, 1, DistanceOptions(method="exhaustive"))
        assert sp.k == 2 * C.k - 8 == 2
        assert sp.d_low >= 1
