"""Config-driven runs: single constructions, table reproduction and defining-set search.

Every entry point returns a JSON-able report dict.  Timing and cache traffic
live under ``timing`` so that reports of repeated runs compare equal once that
key is dropped.
"""

from __future__ import annotations

import json
import time
from dataclasses import replace
from importlib import resources
from pathlib import Path

import jsonschema

from .cache import WeightCache
from .codes import LinearCode
from .cyclotomic import minimal_cyclotomic_sets, subfield_dims
from .stabilizer import (
    DistanceOptions,
    PreconditionError,
    StabilizerParams,
    build_symplectic_code,
    enlargement_from_codes,
    expurgate,
    generalized_enlarge,
    gv_check,
    params_from_delta_euclid,
    params_from_delta_herm,
    steane_enlarge,
    weigh,
)
from .tables import Row, get_table
from .variety import DefiningSet, VarietyParams, _grid, evaluate_code

__all__ = [
    "ConfigError",
    "load_schema",
    "load_config",
    "validate_report",
    "run_construct",
    "run_reproduce_table",
    "run_search",
    "strip_timing",
]

DEFAULT_TABLE_BUDGET = 600.0


class ConfigError(ValueError):
    """Malformed or inconsistent configuration."""


# -- schemas and config parsing


def load_schema(name: str) -> dict:
    text = resources.files("jaffine").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _validate(obj: dict, name: str) -> None:
    try:
        jsonschema.validate(obj, load_schema(name))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"{name} validation failed at {where}: {exc.message}") from None


def validate_report(report: dict) -> None:
    _validate(report, "report")


def load_config(source) -> dict:
    """Parse (path or dict) and validate a construction config."""
    if isinstance(source, dict):
        cfg = source
    else:
        try:
            cfg = json.loads(Path(source).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON in {source}: {exc}") from None
    _validate(cfg, "config")
    return cfg


def _params(cfg: dict) -> VarietyParams:
    N = tuple(cfg["N"])
    if "m" in cfg and cfg["m"] != len(N):
        raise ConfigError(f"m = {cfg['m']} but N has {len(N)} entries")
    try:
        return VarietyParams(int(cfg["p"]), int(cfg["field_degree"]), N, frozenset(cfg.get("J", ())))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _delta(params: VarietyParams, raw) -> DefiningSet:
    elems = [(int(a),) if isinstance(a, int) else tuple(int(x) for x in a) for a in raw]
    bad = [a for a in elems if not params.valid(a)]
    if bad:
        raise ConfigError(f"exponents outside H_J for N = {list(params.N)}: {[list(a) for a in bad[:5]]}")
    return DefiningSet(params, elems)


def _subfield_degree(cfg: dict) -> int:
    r = int(cfg["field_degree"])
    s = int(cfg.get("subfield_degree", r))
    kind = cfg["construction"]
    if r % s:
        raise ConfigError(f"subfield degree {s} does not divide field degree {r}")
    if kind.startswith("herm") and (r % 2 or s % 2):
        raise ConfigError(f"Hermitian constructions need even degrees, got field {r}, subfield {s}")
    if kind.endswith("-full") and s != r:
        raise ConfigError(f"{kind} uses the full field; subfield degree {s} must equal {r} or be omitted")
    if kind.endswith("-subfield") and s == r:
        raise ConfigError(f"{kind} needs a proper subfield degree, got {s} = field degree")
    return s


def _options(distance: dict | None, base: DistanceOptions) -> DistanceOptions:
    d = distance or {}
    out = base
    if "method" in d:
        out = replace(out, method=d["method"])
    if "budget_seconds" in d:
        out = replace(out, budget=d["budget_seconds"])
    if "cap" in d:
        out = replace(out, cap=int(d["cap"]))
    return out


def _classical(params: VarietyParams, delta: DefiningSet, s: int) -> LinearCode:
    """C^sigma_Delta: the dual of the subfield-subcode of E_Delta over GF(p^s)."""
    E = evaluate_code(delta)
    if s != params.e_field:
        E = E.subfield_subcode(s)
    return E.dual()


def _torus(params: VarietyParams, opts: DistanceOptions) -> DistanceOptions:
    if opts.automorphisms:
        return opts
    return replace(opts, automorphisms=tuple(_grid(params).torus_permutations()))


# -- report pieces


def _dist(rep) -> dict | None:
    if rep is None:
        return None
    return {"value": rep.value, "lower": rep.lower, "exact": rep.exact, "method": rep.method}


def _stab(sp: StabilizerParams, name: str | None = None, provenance: bool = True) -> dict:
    d = sp.as_dict()
    if not provenance:
        d.pop("provenance")
    if name is not None:
        d["name"] = name
    d["gv"] = gv_check(sp.n, sp.k, sp.d_low, sp.q_alphabet) if sp.n > sp.k else None
    return d


def _new_report(kind: str, echo: dict) -> dict:
    return {
        "kind": kind,
        "input": echo,
        "classical": [],
        "stabilizer": [],
        "checks": {},
        "discrepancies": [],
        "cache": {"keys": []},
        "timing": {},
    }


def _finish(report: dict, opts: DistanceOptions, t0: float) -> dict:
    cache = opts.cache
    if cache is not None:
        report["cache"]["keys"] = sorted(set(cache.keys))
        report["timing"]["cache_hits"] = cache.hits
        report["timing"]["cache_misses"] = cache.misses
    report["timing"]["total_seconds"] = round(time.perf_counter() - t0, 3)
    return report


def strip_timing(report: dict) -> dict:
    """Copy of ``report`` without timing data (elapsed fields included)."""

    def walk(x):
        if isinstance(x, dict):
            return {k: walk(v) for k, v in x.items() if k not in ("timing", "elapsed")}
        if isinstance(x, list):
            return [walk(v) for v in x]
        return x

    return walk(report)


def _with_cache(opts: DistanceOptions | None, cache_dir=None, use_cache: bool = True) -> DistanceOptions:
    opts = opts or DistanceOptions()
    if use_cache and opts.cache is None:
        opts = replace(opts, cache=WeightCache(cache_dir))
    if not use_cache:
        opts = replace(opts, cache=None)
    return opts


# -- construct


def run_construct(
    source, opts: DistanceOptions | None = None, *, cache_dir=None, use_cache: bool = True
) -> dict:
    """Execute the construction named in a config (path or dict)."""
    t0 = time.perf_counter()
    cfg = load_config(source)
    opts = _options(cfg.get("distance"), _with_cache(opts, cache_dir, use_cache))
    report = _new_report("construct", cfg)
    kind = cfg["construction"]
    params = _params(cfg)
    deltas = [_delta(params, raw) for raw in cfg["deltas"]]
    s = _subfield_degree(cfg) if kind not in ("steane", "generalized") else int(cfg.get("subfield_degree", params.e_field))
    if params.e_field % s:
        raise ConfigError(f"subfield degree {s} does not divide field degree {params.e_field}")
    opts = _torus(params, opts)

    if kind in ("euclid-full", "euclid-subfield", "herm-full", "herm-subfield"):
        if len(deltas) != 1:
            raise ConfigError(f"{kind} takes exactly one defining set, got {len(deltas)}")
        delta = deltas[0]
        if kind.startswith("euclid"):
            sp = params_from_delta_euclid(delta, None if kind == "euclid-full" else s, opts)
        else:
            sp = params_from_delta_herm(delta, None if kind == "herm-full" else s // 2, opts)
        cl = sp.details.get("classical", {})
        report["classical"].append({"name": "C", "n": cl.get("n", sp.n), "k": cl.get("k"), "d": sp.details.get("d_C")})
        report["stabilizer"].append(_stab(sp))
        dims = sp.details.get("dims")
        report["checks"] = {
            "self_orthogonal": True,
            "cyclotomic_condition": dims["condition"] if dims else None,
            "k_formula_kind": sp.details.get("k_formula_kind"),
            "gv": report["stabilizer"][0]["gv"],
        }
    elif kind == "steane":
        if len(deltas) != 2:
            raise ConfigError("steane takes two defining sets: Delta for C, then Delta' (subset) for C'")
        C = _classical(params, deltas[0], s)
        Cp = _classical(params, deltas[1], s)
        sp = steane_enlarge(C, Cp, opts)
        report["classical"] += [
            {"name": "C", "n": C.n, "k": C.k, "d": None},
            {"name": "Cprime", "n": Cp.n, "k": Cp.k, "d": sp.details["d_second"]},
        ]
        report["stabilizer"].append(_stab(sp))
        report["checks"] = {"self_orthogonal": True, "gv": report["stabilizer"][0]["gv"]}
    elif kind == "generalized":
        if len(deltas) not in (4, 5):
            raise ConfigError("generalized takes defining sets for C1, C1hat, C2, C2hat and optionally C3")
        codes = [_classical(params, d, s) for d in deltas]
        names = ["C1", "C1hat", "C2", "C2hat", "C3"][: len(codes)]
        inp = enlargement_from_codes(*codes)
        sp = generalized_enlarge(inp, opts, relative=bool(cfg.get("relative", False)))
        key = {"C1": "d1", "C1hat": "d1hat", "C2": "d2", "C2hat": "d2hat", "C3": "d3"}
        for nm, c in zip(names, codes):
            report["classical"].append({"name": nm, "n": c.n, "k": c.k, "d": sp.details.get(key[nm])})
        report["stabilizer"].append(_stab(sp))
        targets = cfg.get("expurgate", [])
        if targets:
            S = build_symplectic_code(inp)
            for tk in targets:
                sub, _ = expurgate(sp, S, int(tk))
                report["stabilizer"].append(_stab(sub, name=f"expurgated-{tk}"))
        report["checks"] = {"self_orthogonal": True, "gv": report["stabilizer"][0]["gv"]}
    else:  # pragma: no cover - schema rejects other values
        raise ConfigError(f"unknown construction {kind!r}")
    return _finish(report, opts, t0)


# -- table reproduction


def _row_params(row: Row) -> VarietyParams:
    return VarietyParams(row.p, row.r, row.N, frozenset(row.J))


def _row_delta(row: Row) -> DefiningSet:
    params = _row_params(row)
    return DefiningSet(params, [(a,) if isinstance(a, int) else tuple(a) for a in row.delta])


def _disc(table_id, row: Row, fld: str, claimed, computed, category: str, message: str = "") -> dict:
    out = {"table": table_id, "row": row.name, "field": fld, "claimed": claimed, "computed": computed,
           "category": category}
    if message:
        out["message"] = message
    return out


def _compare(table_id: int, row: Row, n: int, k: int, d_low: int, d_upper: int | None, d_exact: bool, q: int) -> list:
    c = row.claimed
    out = []
    note_cat = "unverifiable-as-printed" if row.status == "unverifiable-as-printed" else "mismatch"
    if n != c["n"]:
        out.append(_disc(table_id, row, "n", c["n"], n, note_cat, row.note))
    if k != c["k"]:
        out.append(_disc(table_id, row, "k", c["k"], k, note_cat, row.note))
    d = c["d"]
    if c.get("d_kind") == "exact":
        if d_exact and d_upper != d:
            out.append(_disc(table_id, row, "d", d, d_upper, "mismatch", "certified exact distance differs"))
        elif not d_exact:
            if d_low > d or (d_upper is not None and d_upper < d):
                out.append(_disc(table_id, row, "d", d, [d_low, d_upper], "mismatch", "bounds exclude the claim"))
            else:
                out.append(_disc(table_id, row, "d", d, [d_low, d_upper], "uncertified",
                                 "claim lies within the bounds reached in budget"))
    elif d_low < d:
        if d_upper is not None and d_upper < d:
            out.append(_disc(table_id, row, "d", d, d_upper, note_cat, "a word below the claimed distance exists"))
        else:
            out.append(_disc(table_id, row, "d", d, d_low, "uncertified", "certified lower bound below the claim"))
    if c.get("gv"):
        if not gv_check(c["n"], c["k"], d, q):
            out.append(_disc(table_id, row, "gv", True, False, "gv-predicate",
                             "printed parameters do not beat the Feng-Ma bound"))
    return out


def _run_row(table_id: int, row: Row, env: dict, opts: DistanceOptions) -> dict:
    """Execute one row; ``env`` collects codes and results for rows that depend on it."""
    out = {"row": row.name, "construction": row.construction, "status": row.status, "claimed": dict(row.claimed)}
    if row.note:
        out["note"] = row.note
    kind = row.construction
    if kind == "classical":
        params = _row_params(row)
        C = _classical(params, _row_delta(row), row.s)
        env[row.name] = C
        rep = weigh(C, _torus(params, opts))
        out["computed"] = {"n": C.n, "k": C.k, "d": _dist(rep), "q": C.field.q}
        out["discrepancies"] = _compare(table_id, row, C.n, C.k, rep.lower, rep.value, rep.exact, C.field.q)
        return out
    if kind in ("euclid-subfield", "herm-subfield", "herm-full"):
        params = _row_params(row)
        delta = _row_delta(row)
        ropts = _torus(params, opts)
        if kind == "euclid-subfield":
            env[row.name] = _classical(params, delta, row.s)
            env[row.name + ":params"] = params
            sp = params_from_delta_euclid(delta, row.s, ropts)
        else:
            sp = params_from_delta_herm(delta, None if kind == "herm-full" else row.s // 2, ropts)
    elif kind == "steane":
        a, b = row.refs
        params = env[a + ":params"]
        sp = steane_enlarge(env[a], env[b], _torus(params, opts))
    elif kind == "generalized":
        codes = [env[r] for r in row.refs]
        params = _row_params(get_table(table_id).rows[0])
        inp = enlargement_from_codes(*codes)
        sp = generalized_enlarge(inp, _torus(params, opts))
        env[row.name] = (sp, inp)
    elif kind == "expurgate":
        base, inp = env[row.refs[0]]
        S = env.get(row.refs[0] + ":S")
        if S is None:
            S = env[row.refs[0] + ":S"] = build_symplectic_code(inp)
        sp, _ = expurgate(base, S, row.claimed["k"])
    else:  # pragma: no cover - tables only use the kinds above
        raise ValueError(f"unknown row construction {kind!r}")
    out["computed"] = _stab(sp, provenance=False)
    upper = sp.d_exact
    out["discrepancies"] = _compare(table_id, row, sp.n, sp.k, sp.d_low, upper, sp.d_exact is not None, sp.q_alphabet)
    return out


def run_reproduce_table(
    table_id,
    row_filter=None,
    budget: float | None = DEFAULT_TABLE_BUDGET,
    opts: DistanceOptions | None = None,
    *,
    cache_dir=None,
    use_cache: bool = True,
) -> dict:
    """Run every (or the selected) row of a built-in table and compare with its claimed values.

    ``budget`` is in seconds per distance computation.  Expurgation targets
    are the claimed dimensions (they name the rows); all distances and
    dimensions are computed.
    """
    t0 = time.perf_counter()
    table = get_table(table_id)
    opts = _with_cache(opts, cache_dir, use_cache)
    opts = replace(opts, budget=budget)
    wanted = set(row_filter) if row_filter else None
    if wanted:
        unknown = wanted - {r.name for r in table.rows}
        if unknown:
            raise ValueError(f"table {table.id} has no rows {sorted(unknown)}")
    report = _new_report("reproduce", {"table": table.id, "label": table.label, "title": table.title,
                                       "rows": sorted(wanted) if wanted else None, "budget_seconds": budget})
    report["rows"] = []
    needed = _closure(table, wanted)
    env: dict = {}
    for row in table.rows:
        if row.name not in needed:
            continue
        try:
            res = _run_row(table.id, row, env, opts)
        except PreconditionError as exc:
            res = {"row": row.name, "construction": row.construction, "status": row.status,
                   "claimed": dict(row.claimed), "computed": None,
                   "discrepancies": [_disc(table.id, row, "construction", None, None, "precondition", str(exc))]}
        if wanted is None or row.name in wanted:
            report["rows"].append(res)
            report["discrepancies"] += res["discrepancies"]
            comp = res["computed"]
            if comp is None:
                continue
            if row.construction == "classical":
                report["classical"].append({"name": row.name, "n": comp["n"], "k": comp["k"], "d": comp["d"]})
            else:
                report["stabilizer"].append(dict(comp, name=row.name))
    report["checks"] = {"rows_run": len(report["rows"]), "discrepancy_count": len(report["discrepancies"])}
    return _finish(report, opts, t0)


def _closure(table, wanted) -> set:
    names = {r.name: r for r in table.rows}
    if wanted is None:
        return set(names)
    todo, out = list(wanted), set()
    while todo:
        nm = todo.pop()
        if nm in out:
            continue
        out.add(nm)
        todo.extend(names[nm].refs)
    return out


# -- search


def _search_candidates(params: VarietyParams, mode: str, s: int, deadline: float | None):
    """Unions of minimal cyclotomic sets meeting the self-orthogonality condition, depth first.

    The condition only gets harder as sets are added, so a failing union
    prunes all of its supersets.
    """
    e = params.e_field
    part = minimal_cyclotomic_sets(params, params.p**s)
    herm_conj = (s // 2) if s != e else e // 2
    sets = [cs for cs in part.sets if all(params.in_h_prime(a) for a in cs.members)]

    def ok(elems) -> bool:
        delta = DefiningSet(params, elems)
        if mode == "euclid":
            rep = subfield_dims(delta, part, "euclid")
        else:
            rep = subfield_dims(delta, part, "herm", conj_exponent=herm_conj)
        return rep.condition

    n = params.n
    stack = [((), 0, 0)]
    while stack:
        if deadline is not None and time.monotonic() >= deadline:
            return
        chosen, start, size = stack.pop()
        if chosen:
            yield chosen
        for i in range(len(sets) - 1, start - 1, -1):
            new_size = size + sets[i].size
            if n - 2 * new_size <= 0:
                continue
            elems = [a for cs in chosen for a in cs.members] + list(sets[i].members)
            if ok(elems):
                stack.append((chosen + (sets[i],), i + 1, new_size))


_FROM_CONFIG = object()


def run_search(
    source,
    mode: str = "euclid",
    max_results: int | None = None,
    budget=_FROM_CONFIG,
    opts: DistanceOptions | None = None,
    *,
    cache_dir=None,
    use_cache: bool = True,
    max_candidates: int = 2000,
) -> dict:
    """Search unions of cyclotomic sets and rank the resulting codes by (d_low, k).

    ``budget`` is the total wall-clock allowance in seconds (None: unlimited);
    0 gives an empty result.  Arguments left unset fall back to the params
    file, then to 10 results and 60 seconds.  Candidates are visited in a
    fixed depth-first order.
    """
    t0 = time.perf_counter()
    if mode not in ("euclid", "herm"):
        raise ConfigError(f"mode must be 'euclid' or 'herm', got {mode!r}")
    if isinstance(source, dict):
        cfg = source
    else:
        try:
            cfg = json.loads(Path(source).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON in {source}: {exc}") from None
    _validate(cfg, "search")
    params = _params(dict(cfg, construction="search"))
    r = params.e_field
    s = int(cfg.get("subfield_degree", r))
    if r % s:
        raise ConfigError(f"subfield degree {s} does not divide field degree {r}")
    if mode == "herm" and (r % 2 or s % 2):
        raise ConfigError(f"Hermitian search needs even degrees, got field {r}, subfield {s}")
    if max_results is None:
        max_results = int(cfg.get("max_results", 10))
    if budget is _FROM_CONFIG:
        budget = cfg.get("budget_seconds", 60.0)
    opts = _torus(params, _options(cfg.get("distance"), _with_cache(opts, cache_dir, use_cache)))
    report = _new_report("search", dict(cfg, mode=mode, max_results=max_results, budget_seconds=budget))
    results = []
    if budget is None or budget > 0:
        deadline = None if budget is None else time.monotonic() + float(budget)
        for count, chosen in enumerate(_search_candidates(params, mode, s, deadline)):
            if count >= max_candidates:
                break
            left = None if deadline is None else deadline - time.monotonic()
            if left is not None and left <= 0:
                break
            elems = [a for cs in chosen for a in cs.members]
            delta = DefiningSet(params, elems)
            per = opts.budget if left is None else (left if opts.budget is None else min(opts.budget, left))
            copts = replace(opts, budget=per)
            try:
                if mode == "euclid":
                    sp = params_from_delta_euclid(delta, None if s == r else s, copts)
                else:
                    sp = params_from_delta_herm(delta, None if s == r else s // 2, copts)
            except PreconditionError:
                continue
            d = _stab(sp, provenance=False)
            d["delta"] = delta.to_list()
            d["sets"] = [list(cs.rep) for cs in chosen]
            results.append(d)
    results.sort(key=lambda x: (-x["d_low"], -x["k"], x["sets"]))
    report["stabilizer"] = results[:max_results]
    report["checks"] = {"candidates_evaluated": len(results)}
    return _finish(report, opts, t0)
