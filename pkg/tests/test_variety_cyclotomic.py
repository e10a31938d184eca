from __future__ import annotations

import numpy as np
import pytest

from jaffine.codes import LinearCode
from jaffine.cyclotomic import (
    act,
    closure,
    is_closed,
    minimal_cyclotomic_sets,
    subfield_dims,
    trace_code,
)
from jaffine.variety import (
    DefiningSet,
    VarietyParams,
    delta_perp,
    delta_perp_h,
    direct_product,
    evaluate_code,
    pair_nonzero,
    partners,
    perp_is_exact,
    reed_muller_set,
    rm_hermitian_selforth,
)

from oracles import gram, random_params

EX1 = VarietyParams(2, 4, (4, 6), frozenset({2}))


def test_grid_size_and_evaluation_rank():
    assert EX1.n == 4 * 5
    assert len(EX1.grid()) == EX1.n
    full = evaluate_code(DefiningSet(EX1, EX1.grid()))
    assert full.k == EX1.n  # monomials of H_J give a basis of functions on the variety


@pytest.mark.parametrize("seed", range(20))
def test_predicate_matches_gram_matrix(seed):
    rng = np.random.default_rng(100 + seed)
    params = random_params(rng, max_n=24)
    for Q in {1, params.p, params.p ** (params.e_field // 2 or 1)}:
        exps, G = gram(params, Q)
        for i, a in enumerate(exps):
            for j, b in enumerate(exps):
                assert pair_nonzero(a, b, params, Q) == bool(G[i, j]), (params, Q, a, b)
        a, b = exps[0], exps[-1]
        assert direct_product(a, b, params, Q) == G[0, len(exps) - 1]


@pytest.mark.parametrize("seed", range(6))
def test_partners_are_exactly_the_nonzero_pairs(seed):
    rng = np.random.default_rng(200 + seed)
    params = random_params(rng)
    exps, G = gram(params, 1)
    for i, a in enumerate(exps):
        assert set(partners(a, params)) == {exps[j] for j in np.nonzero(G[i])[0]}


@pytest.mark.parametrize("seed", range(8))
def test_perp_containment_and_equality(seed):
    rng = np.random.default_rng(300 + seed)
    params = random_params(rng)
    grid = params.grid()
    size = int(rng.integers(1, max(2, len(grid) // 2)))
    delta = DefiningSet(params, [grid[i] for i in rng.choice(len(grid), size, replace=False)])
    perp = delta_perp(delta)
    E = evaluate_code(delta)
    if len(perp):
        assert E.dual().contains(evaluate_code(perp))
    if delta.in_h_prime() and perp_is_exact(delta):
        assert len(perp) == params.n - len(delta)
        assert E.dual() == evaluate_code(perp)
    assert len(perp) <= params.n - len(delta)


def test_perp_h_contained_in_hermitian_dual():
    rng = np.random.default_rng(7)
    for _ in range(8):
        params = random_params(rng, even=True)
        f = params.e_field // 2
        grid = params.grid()
        delta = DefiningSet(params, [grid[i] for i in rng.choice(len(grid), max(1, len(grid) // 3), replace=False)])
        perp = delta_perp_h(delta, f)
        H = evaluate_code(delta).hermitian_dual(f)
        if len(perp):
            assert H.contains(evaluate_code(perp))
        if delta.in_h_prime() and perp_is_exact(delta, params.p**f):
            assert H == evaluate_code(perp)


def test_reed_muller_self_orthogonality_rule():
    # J empty and N_j = q gives RM_q(r, m); Hermitian self-orthogonality threshold m(q0 - 1) - 1
    q0 = 2
    params = VarietyParams(2, 2, (4, 4), frozenset())
    for r in range(0, 6):
        delta = reed_muller_set(params, r)
        H = evaluate_code(delta).hermitian_dual(1)
        inside = H.contains(evaluate_code(delta))
        assert inside == rm_hermitian_selforth(r, 2, q0), r
    assert rm_hermitian_selforth(1, 2, 2) and not rm_hermitian_selforth(2, 2, 2)


@pytest.mark.parametrize(
    "p,e,N,J,f",
    [(2, 4, (4, 6), {2}, 1), (2, 4, (4, 6), {2}, 2), (3, 2, (9, 9, 3), {2, 3}, 1), (2, 6, (64,), {1}, 2),
     (2, 7, (128,), {1}, 1), (3, 4, (41,), {1}, 2)],
)
def test_cyclotomic_partition(p, e, N, J, f):
    params = VarietyParams(p, e, N, frozenset(J))
    part = minimal_cyclotomic_sets(params, p**f)
    members = [a for cs in part.sets for a in cs.members]
    assert sorted(members) == sorted(params.grid())
    for cs in part.sets:
        assert (e // f) % cs.size == 0
        assert act(cs.members[-1], params, p**f) == cs.rep


def test_multiplier_must_be_power_of_p():
    with pytest.raises(ValueError):
        minimal_cyclotomic_sets(EX1, 3)


@pytest.mark.parametrize("seed", range(8))
def test_trace_generators_span_subfield_subcode(seed):
    rng = np.random.default_rng(400 + seed)
    params = random_params(rng, max_n=30)
    e = params.e_field
    fs = [f for f in range(1, e) if e % f == 0] or [e]
    f = fs[rng.integers(len(fs))]
    part = minimal_cyclotomic_sets(params, params.p**f)
    chosen = rng.choice(len(part.sets), int(rng.integers(1, len(part.sets) + 1)), replace=False)
    delta = DefiningSet(params, [a for i in chosen for a in part.sets[i].members])
    assert is_closed(delta, part)
    T = trace_code(delta, part, f)
    S = evaluate_code(delta).subfield_subcode(f)
    assert T == S
    assert S.k == sum(part.sets[i].size for i in chosen)


def test_closure_of_unclosed_set():
    part = minimal_cyclotomic_sets(VarietyParams(3, 4, (81,), frozenset()), 9)
    delta = DefiningSet(part.params, [(0,), (70,), (71,), (9,)])
    assert not is_closed(delta, part)
    assert closure(delta, part).elems == {(0,), (70,), (71,), (79,), (9,), (1,)}
    # the subfield-subcode only sees complete sets: {0} and {70}
    assert subfield_dims(delta, part).subcode_dim == 2
    assert evaluate_code(delta).subfield_subcode(2).k == 2


def test_euclidean_dims_for_binary_length_127():
    from jaffine.tables import get_table

    params = VarietyParams(2, 7, (128,), frozenset({1}))
    part = minimal_cyclotomic_sets(params, 2)
    for row in get_table(1).rows:
        delta = DefiningSet(params, [(a,) for a in row.delta])
        assert is_closed(delta, part)
        rep = subfield_dims(delta, part)
        assert params.n - rep.subcode_dim == row.claimed["k"]


def test_grid20_hermitian_condition():
    # orbits under x4, conjugation by 2: three two-element orbits satisfying the Hermitian condition
    D2 = DefiningSet(EX1, [(0, 1), (0, 4), (0, 2), (0, 3), (2, 1), (2, 4)])
    part = minimal_cyclotomic_sets(EX1, 4)
    rep = subfield_dims(D2, part, "herm", conj_exponent=1)
    assert rep.condition and rep.subcode_dim == 6
    # the direct Hermitian check on the subfield-subcode agrees with the orbit condition
    S = evaluate_code(D2).subfield_subcode(2)
    assert S.hermitian_dual(1).contains(S.dual().hermitian_dual(1)) or S.k == 0
