"""Acceptance criteria A1-A10; each test records one line in the session summary."""

from __future__ import annotations

import json
import math
import time
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

from jaffine.codes import LinearCode
from jaffine.cyclotomic import minimal_cyclotomic_sets, trace_code
from jaffine.harness import _classical, _torus, run_construct, run_reproduce_table
from jaffine.stabilizer import (
    DistanceOptions,
    EnlargementInput,
    generalized_enlarge,
    gv_check,
    steane_enlarge,
    weigh,
)
from jaffine.tables import TABLES, get_table
from jaffine.variety import (
    DefiningSet,
    VarietyParams,
    delta_perp,
    delta_perp_h,
    evaluate_code,
    pair_nonzero,
    perp_is_exact,
)

from conftest import record
from oracles import gram, random_params
from stab_inputs import rand_steane_pair
from test_stabilizer import GF2, GF3, _a9_case

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def _only(rep):
    (sp,) = rep["stabilizer"]
    return sp


def test_a1_grid20_full_field(tmp_path):
    rep, dt = _timed(run_construct, CONFIGS / "grid20_euclid_full.json", cache_dir=tmp_path)
    sp = _only(rep)
    got = (sp["n"], sp["k"], sp["d_low"], sp["d_exact"], sp["q"])
    ok = got == (20, 2, 4, 4, 16) and dt < 60
    record("A1", ok, f"{sp['label']} in {dt:.2f}s")
    assert ok, (got, dt)


def test_a2_grid20_binary_subfield(tmp_path):
    rep, dt = _timed(run_construct, CONFIGS / "grid20_euclid_binary.json", use_cache=False)
    sp = _only(rep)
    dC = sp["details"]["d_C"]
    got = (sp["n"], sp["k"], sp["d_low"], sp["d_exact"], sp["q"])
    ok = got == (20, 4, 4, 4, 2) and dC["method"] == "exhaustive" and rep["classical"][0]["k"] == 12 and dt < 1
    record("A2", ok, f"{sp['label']} via exhaustive [20,12]_2 in {dt:.2f}s")
    assert ok, (got, dC, dt)


def test_a3_grid20_hermitian_subfield(tmp_path):
    cfg = json.loads((CONFIGS / "grid20_herm_binary.json").read_text())
    cfg["distance"] = {"method": "information-set"}
    rep, dt = _timed(run_construct, cfg, use_cache=False)
    sp = _only(rep)
    got = (sp["n"], sp["k"], sp["d_low"], sp["d_exact"], sp["q"])
    ok = got == (20, 8, 3, 3, 2) and sp["details"]["d_C"]["method"] == "information-set" and dt < 120
    record("A3", ok, f"{sp['label']} in {dt:.2f}s")
    assert ok, (got, dt)


TABLE1 = {row.name: row for row in get_table(1).rows}


def _table1_code(name):
    row = TABLE1[name]
    params = VarietyParams(row.p, row.r, row.N, frozenset(row.J))
    return params, _classical(params, DefiningSet(params, [(a,) for a in row.delta]), row.s)


def test_a4_dimensions():
    dims = [_table1_code(name)[1].k for name in TABLE1]
    ok = dims == [85, 91, 99, 105, 106]
    record("A4", ok, f"dims {dims}")
    assert ok


@pytest.mark.parametrize("name", list(TABLE1))
def test_a4_witness_within_60s(name):
    params, C = _table1_code(name)
    target = TABLE1[name].claimed["d"]
    opts = _torus(params, DistanceOptions(budget=60.0))
    rep, dt = _timed(weigh, C, opts, stop_upper=target)
    ok = rep.value <= target and dt < 60 + 5
    record("A4", ok, f"{name} witness {rep.value} (printed {target}) {dt:.1f}s")
    assert rep.value <= target, f"lightest word found has weight {rep.value} > {target} (lower bound {rep.lower})"


@pytest.mark.slow
def test_a4_exact_certification():
    t0 = time.perf_counter()
    out = {}
    for name in TABLE1:
        params, C = _table1_code(name)
        rep = weigh(C, _torus(params, DistanceOptions()))
        out[name] = (rep.value, rep.exact)
    dt = time.perf_counter() - t0
    ok = all(ex for _, ex in out.values()) and dt < 3600
    record("A4", ok, "exact " + ", ".join(f"{k}={v}" for k, (v, _) in out.items()) + f" in {dt:.0f}s")
    assert ok
    for name, (v, _) in out.items():
        assert v >= TABLE1[name].claimed["d"]


def _enlargement_arithmetic(details, q):
    d = {k: details[k]["lower"] for k in ("d1", "d1hat", "d2", "d2hat", "d3")}
    if q == 2:
        B = math.ceil((d["d2"] + d["d2hat"] + d["d3"]) / 2)
    else:
        B = max(d["d3"] + math.ceil(d["d2"] / q), d["d3"] + math.ceil(d["d2hat"] / q))
    return B, min(d["d1"], d["d1hat"], B)


def test_a5_generalized_enlargement(tmp_path):
    rep = run_reproduce_table(2, None, 600.0, cache_dir=tmp_path)
    rows = {r["row"]: r["computed"] for r in rep["rows"]}
    q1 = rows["Q1"]
    B, dmin = _enlargement_arithmetic(q1["details"], 2)
    labels = [(rows[f"Q{i}"]["n"], rows[f"Q{i}"]["k"], rows[f"Q{i}"]["d_low"]) for i in range(1, 6)]
    ok2 = labels == [(127, k, 12) for k in (63, 62, 61, 60, 59)] and q1["details"]["enlarged_term"] == B
    ok2 = ok2 and q1["d_low"] == dmin
    rep6 = run_reproduce_table(6, None, 600.0, cache_dir=tmp_path)
    q = next(r["computed"] for r in rep6["rows"] if r["row"] == "Q")
    B6, dmin6 = _enlargement_arithmetic(q["details"], 4)
    ok6 = (q["n"], q["k"], q["d_low"], q["q"]) == (63, 45, 6, 4) and q["details"]["enlarged_term"] == B6 == 6
    ok6 = ok6 and q["d_low"] == dmin6
    record("A5", ok2 and ok6, f"Table 2 {labels}; Table 6 {q['label']} with M = {q['details']['enlarged_term']}")
    assert ok2, labels
    assert ok6, q


def test_a6_ternary_tables(tmp_path):
    rep, dt = _timed(run_reproduce_table, 5, None, 600.0, cache_dir=tmp_path)
    bad = []
    for row in rep["rows"]:
        comp, claimed = row["computed"], row["claimed"]
        # C3 as printed (k = 60) is impossible; the Steane row SE(C4, C3) = [[72,66,3]] implies k = 70
        k_expect = 70 if row["row"] == "C3" else claimed["k"]
        if (comp["n"], comp["k"]) != (claimed["n"], k_expect) or comp["d_low"] < claimed["d"]:
            bad.append((row["row"], comp["label"]))
    ok = not bad and len(rep["rows"]) == 10 and dt < 600
    record("A6", ok, f"10 rows in {dt:.1f}s" + (f", off: {bad}" if bad else ""))
    assert ok, bad


def test_a7_gv_flags_soft(tmp_path):
    false_rows = []
    count = 0
    for t in TABLES.values():
        if t.runs_rows_of is not None:
            continue
        for row in t.rows:
            if not row.claimed.get("gv"):
                continue
            count += 1
            if row.construction.startswith("herm"):
                q = row.p ** (row.s // 2)
            else:
                base = row if row.construction not in ("steane", "generalized") else t.rows[0]
                q = base.p**base.s
            c = row.claimed
            if not gv_check(c["n"], c["k"], c["d"], q):
                false_rows.append((t.id, row.name))
    # rows evaluating false must surface as predicate-version discrepancies, not failures
    reported = set()
    for tid, _ in false_rows:
        rep = run_reproduce_table(tid, None, 600.0, cache_dir=tmp_path)
        reported |= {(tid, d["row"]) for d in rep["discrepancies"] if d["category"] == "gv-predicate"}
    ok = set(false_rows) <= reported
    record("A7", ok, f"{count - len(false_rows)}/{count} GV rows true; predicate-version discrepancies {false_rows}")
    assert ok


def test_a8_oracle_equivalence():
    rng = np.random.default_rng(2024)
    stats = {"params": 0, "pairs": 0, "trace": 0, "delsarte": 0, "perp": 0}
    for i in range(24):
        params = random_params(rng, even=i % 2 == 1)
        e = params.e_field
        stats["params"] += 1
        conj = [1] + ([params.p ** (e // 2)] if e % 2 == 0 else [])
        for Q in conj:
            exps, G = gram(params, Q)
            for a_i, a in enumerate(exps):
                for b_i, b in enumerate(exps):
                    assert pair_nonzero(a, b, params, Q) == bool(G[a_i, b_i])
            stats["pairs"] += len(exps) ** 2
        fs = [f for f in range(1, e) if e % f == 0]
        for f in fs:
            part = minimal_cyclotomic_sets(params, params.p**f)
            pick = rng.choice(len(part.sets), int(rng.integers(1, len(part.sets) + 1)), replace=False)
            delta = DefiningSet(params, [x for j in pick for x in part.sets[j].members])
            E = evaluate_code(delta)
            sub = E.subfield_subcode(f)
            assert trace_code(delta, part, f) == sub
            # Euclidean Delsarte: (C|sub)^perp = Tr(C^perp)
            assert sub.dual() == E.dual().trace_image(f)
            if f % 2 == 0:
                # Hermitian analogue over GF(p^f): (C|sub)^perp_h = Tr(C^perp) conjugated by p^(f/2)
                assert sub.hermitian_dual(f // 2) == E.dual().trace_image(f).conjugate(f // 2)
            stats["trace"] += 1
            stats["delsarte"] += 1
        grid = params.grid()
        h_prime = [a for a in grid if DefiningSet(params, [a]).in_h_prime()]
        for pool in (grid, h_prime):
            if not pool:
                continue
            size = int(rng.integers(1, max(2, len(pool) // 2)))
            delta = DefiningSet(params, [pool[j] for j in rng.choice(len(pool), size, replace=False)])
            E = evaluate_code(delta)
            perp = delta_perp(delta)
            if len(perp):
                assert E.dual().contains(evaluate_code(perp))
            if delta.in_h_prime() and perp_is_exact(delta):
                assert E.dual() == evaluate_code(perp)
            if e % 2 == 0:
                f = e // 2
                ph = delta_perp_h(delta, f)
                H = E.hermitian_dual(f)
                if len(ph):
                    assert H.contains(evaluate_code(ph))
                if delta.in_h_prime() and perp_is_exact(delta, params.p**f):
                    assert H == evaluate_code(ph)
            stats["perp"] += 1
    ok = stats["params"] >= 20
    record("A8", ok, ", ".join(f"{k} {v}" for k, v in stats.items()))
    assert ok


def test_a9_symplectic_machinery():
    n_ok = 0
    for seed in range(36):
        _a9_case(1000 + seed, GF2, (6, 15), 18)
        n_ok += 1
    for seed in range(24):
        _a9_case(2000 + seed, GF3, (5, 10), 11)
        n_ok += 1
    record("A9", n_ok >= 50, f"{n_ok} random inputs over GF(2)/GF(3), S^perp_s <= S, dims and bound verified")
    assert n_ok >= 50


def test_a10_generalized_matches_steane():
    agree = 0
    mismatches = []
    for seed in range(20):
        rng = np.random.default_rng(3000 + seed)
        F = GF2 if seed % 2 == 0 else GF3
        C, Cp = rand_steane_pair(rng, F, int(rng.integers(6, 13)))
        opts = DistanceOptions(method="exhaustive")
        st = steane_enlarge(C, Cp, opts)
        gen = generalized_enlarge(EnlargementInput(C, C, C.complement_in(Cp)), opts, relative=True)
        a = (gen.n, gen.k, gen.d_low, gen.q_alphabet)
        b = (st.n, st.k, st.d_low, st.q_alphabet)
        if a == b:
            agree += 1
        else:
            mismatches.append((seed, a, b))
    record("A10", agree == 20, f"{agree}/20 identical parameters")
    assert not mismatches, mismatches
