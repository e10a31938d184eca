from __future__ import annotations

import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from jaffine.codes import LinearCode

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance lines, one per criterion, printed at the end of the session
ACCEPTANCE: dict[str, list[tuple[bool, str]]] = {}


def record(criterion: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path_factory, monkeypatch):
    monkeypatch.setenv("JAFFINE_CACHE_DIR", str(tmp_path_factory.getbasetemp() / "cache"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE, key=lambda c: int(c[1:])):
        results = ACCEPTANCE[crit]
        ok = all(r for r, _ in results)
        details = "; ".join(d for _, d in results if d)
        terminalreporter.write_line(f"{crit} {'PASS' if ok else 'FAIL'}  {details}")


# -- shared helpers


def random_code(rng, F, k: int, n: int) -> LinearCode:
    return LinearCode(F, rng.integers(0, F.q, (k, n)), n=n)


def self_orthogonal_code(rng, F, n: int, k: int, conj: int | None = None) -> LinearCode | None:
    """Random code S with S <= S^perp (Hermitian when ``conj`` = f is given), built row by row.

    Each new row is drawn from the dual of the rows so far and kept when it
    is isotropic; returns None when no such row turns up.
    """
    rows: list[np.ndarray] = []
    for _ in range(k):
        for _attempt in range(200):
            if rows:
                cur = LinearCode(F, np.array(rows), n=n)
                dual = cur.hermitian_dual(conj) if conj is not None else cur.dual()
                if dual.k == 0:
                    return None
                v = F.sum(F.mul(rng.integers(0, F.q, (dual.k, 1)), dual.gen), axis=0)
            else:
                v = rng.integers(0, F.q, n)
            v = np.asarray(v, dtype=np.int64)
            if not v.any():
                continue
            w = F.frobenius(v, conj) if conj is not None else v
            if F.dot(v, w) != 0:
                continue
            cand = LinearCode(F, np.array(rows + [v]), n=n)
            if cand.k == len(rows) + 1:
                rows.append(v)
                break
        else:
            return None
    return LinearCode(F, np.array(rows), n=n)
