"""Compare the compiled enumeration kernel with the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat R]

The fallback needs a couple of minutes in total on one core.

Each case runs ``min_weight`` with both backends on the same code and
reports words enumerated per second; results must agree.
"""

from __future__ import annotations

import argparse
import time

from jaffine import DefiningSet, VarietyParams, evaluate_code
from jaffine._kernels import compiled_available
from jaffine.variety import _grid
from jaffine.weights import min_weight


def _case(p, r, s, N, J, delta, torus=True):
    """Dual of the subfield-subcode of E_Delta plus its torus automorphisms."""
    params = VarietyParams(p, r, N, frozenset(J))
    E = evaluate_code(DefiningSet(params, [(a,) if isinstance(a, int) else a for a in delta]))
    C = (E.subfield_subcode(s) if s != r else E).dual()
    return C, (_grid(params).torus_permutations() if torus else None)


_D4 = [(0, 4), (0, 7), (0, 5), (7, 4), (5, 4)]
_D6 = _D4 + [(0, 0), (4, 7), (4, 5), (3, 7), (1, 5), (0, 6), (0, 2), (6, 5), (2, 7)]

CASES = [
    ("GF(2) [127,99] d=8, one word/row", lambda: _case(2, 7, 1, (128,), (1,), [
        42, 84, 41, 82, 37, 74, 21, 2, 4, 8, 16, 32, 64, 1, 6, 12, 24, 48, 96, 65, 3, 10, 20, 40, 80, 33, 66, 5])),
    ("GF(4) [63,55] d=5, bit planes", lambda: _case(2, 6, 2, (64,), (1,), [0, 21, 8, 32, 2, 40, 34, 10], torus=False)),
    ("GF(3) [72,58] d=6, bytes", lambda: _case(3, 4, 1, (9, 9), (2,), _D6)),
]


def run(repeat: int) -> list[dict]:
    rows = []
    for name, make in CASES:
        C, perms = make()
        res = {}
        for backend in ("compiled", "python"):
            if backend == "compiled" and not compiled_available():
                continue
            best = None
            for _ in range(repeat):
                t0 = time.perf_counter()
                rep = min_weight(C, "information-set", threads=1, backend=backend, automorphisms=perms)
                dt = time.perf_counter() - t0
                best = dt if best is None or dt < best else best
            res[backend] = (rep, best)
        values = {b: r.value for b, (r, _) in res.items()}
        if len(set(values.values())) != 1:
            raise AssertionError(f"{name}: backends disagree {values}")
        row = {"case": name, "d": next(iter(values.values()))}
        for b, (r, dt) in res.items():
            row[b] = (dt, r.words / dt if dt > 0 else float("inf"))
        rows.append(row)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()
    print(f"{'case':34s} {'d':>3s} {'compiled s':>11s} {'python s':>10s} {'speedup':>8s} {'compiled w/s':>13s}")
    for row in run(args.repeat):
        c = row.get("compiled")
        p = row["python"]
        speed = f"{p[0] / c[0]:8.1f}" if c else "     n/a"
        cs = f"{c[0]:11.3f}" if c else "        n/a"
        cw = f"{c[1]:13.3g}" if c else "          n/a"
        print(f"{row['case']:34s} {row['d']:3d} {cs} {p[0]:10.3f} {speed} {cw}")


if __name__ == "__main__":
    main()
