"""Minimum and relative minimum weight of linear codes.

Three engines share one enumeration kernel:

* ``exhaustive``: every level of one systematic generator, i.e. every nonzero
  codeword up to scalars.  Allowed only when ``q**k <= cap``.
* ``information-set``: Brouwer-Zimmermann enumeration over disjoint
  information sets.  After finishing level ``w`` on every set, each codeword
  not yet seen has more than ``w`` nonzeros on each set, so the lower bound is
  ``sum_j max(0, w + 1 - deficiency_j)``.  When verified coordinate
  automorphisms are supplied and one of their orbits ``O`` contains an
  information set, a single set inside ``O`` is enough and the bound becomes
  ``ceil((w + 1) * |O| / k)`` (every codeword has an image under the group with
  at most ``wt * k / |O|`` nonzeros on that set).
* ``monte-carlo``: low levels on random information sets; upper bound only.

Relative weights (codewords of ``C`` outside a subcode ``Excl``) append a
syndrome of each systematic row with respect to ``Excl`` and skip words whose
syndrome vanishes.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels, linalg
from .codes import LinearCode
from .galois import FiniteField

__all__ = [
    "WeightReport",
    "min_weight",
    "relative_min_weight",
    "hamming_weight",
    "DEFAULT_CAP",
    "orbits",
]

DEFAULT_CAP = 2**26
METHODS = ("auto", "exhaustive", "information-set", "monte-carlo")


@dataclass(frozen=True)
class WeightReport:
    """Outcome of a weight computation.

    ``value`` is the smallest weight found (an upper bound) and ``lower`` a
    certified lower bound; ``exact`` means they agree.
    """

    value: int
    exact: bool
    method: str
    witness: tuple[int, ...] | None
    lower: int
    levels: int = 0
    words: int = 0
    elapsed: float = field(default=0.0, compare=False)

    def as_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        d["witness"] = list(self.witness) if self.witness is not None else None
        if not timing:
            d.pop("elapsed")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "WeightReport":
        w = d.get("witness")
        return cls(
            value=int(d["value"]),
            exact=bool(d["exact"]),
            method=str(d["method"]),
            witness=tuple(int(x) for x in w) if w is not None else None,
            lower=int(d["lower"]),
            levels=int(d.get("levels", 0)),
            words=int(d.get("words", 0)),
            elapsed=float(d.get("elapsed", 0.0)),
        )


def hamming_weight(v) -> int:
    return int(np.count_nonzero(np.asarray(v)))


def _default_threads() -> int:
    env = os.environ.get("JAFFINE_THREADS")
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


def orbits(n: int, perms) -> list[list[int]]:
    """Orbits of the group generated by coordinate permutations."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in perms:
        for i, j in enumerate(np.asarray(perm).tolist()):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda o: (-len(o), o[0]))


# -- packing of systematic generators for the kernels


def _pack_bits(bits: np.ndarray, W: int) -> np.ndarray:
    """Pack rows of 0/1 symbols into W little-endian uint64 words per row."""
    rows = bits.shape[0]
    buf = np.zeros((rows, W * 64), dtype=np.uint8)
    buf[:, : bits.shape[1]] = bits
    by = np.packbits(buf, axis=1, bitorder="little")
    return np.ascontiguousarray(by).view("<u8").astype(np.uint64).reshape(rows, W)


class _Packed:
    """Scaled redundancy (+ syndrome) rows of one systematic generator."""

    def __init__(self, F: FiniteField, red: np.ndarray, syn: np.ndarray, backend: str | None):
        k = red.shape[0]
        self.F = F
        self.k = k
        self.qm1 = F.q - 1
        self.nred = red.shape[1]
        self.nsyn = syn.shape[1]
        self.scalars = F.exp(np.arange(self.qm1)) if F.q > 2 else np.ones(1, dtype=np.int64)
        V = np.hstack([red, syn]).astype(np.int64)
        L = V.shape[1]
        scaled = F.mul(self.scalars[None, :, None], V[:, None, :])  # (k, qm1, L)
        kern = _kernels.get_backend(backend)
        if F.p == 2:
            self.mode = "bits"
            e = F.e
            W = max(1, -(-L // 64))
            flat = scaled.reshape(k * self.qm1, L)
            packed = np.zeros((k * self.qm1, e, W), dtype=np.uint64)
            for b in range(e):
                packed[:, b, :] = _pack_bits(((flat >> b) & 1).astype(np.uint8), W)
            self.rows = np.ascontiguousarray(packed)
            self.e, self.W = e, W
            pos = np.arange(W * 64)
            self.wmask = _pack_bits((pos < self.nred).astype(np.uint8)[None, :], W)[0]
            self.smask = _pack_bits(((pos >= self.nred) & (pos < L)).astype(np.uint8)[None, :], W)[0]
            self.kernel = kern
        else:
            self.mode = "bytes"
            dtype = np.uint8 if F.q <= 256 else np.uint16
            Lp = max(1, L)
            buf = np.zeros((k * self.qm1, Lp), dtype=dtype)
            buf[:, :L] = scaled.reshape(k * self.qm1, L)
            self.rows = np.ascontiguousarray(buf)
            a = np.arange(F.q)
            self.addt = np.ascontiguousarray(F.add(a[:, None], a[None, :]).astype(dtype))
            # the compiled kernel handles byte symbols only
            self.kernel = kern if dtype == np.uint8 else _kernels.get_backend("python")

    def search(self, w, lo, hi, target, best, check_syn, threads):
        if self.mode == "bits":
            return self.kernel.search_bits(
                self.rows, self.k, self.qm1, self.e, self.W, self.wmask, self.smask,
                check_syn, w, lo, hi, target, best, threads,
            )
        return self.kernel.search_bytes(
            self.rows, self.k, self.qm1, self.nred, self.addt, self.F.q,
            check_syn, w, lo, hi, target, best, threads,
        )


@dataclass
class _InfoSet:
    cols: list[int]  # the k information columns
    deficiency: int
    gsys: np.ndarray  # systematic generator in original coordinates
    packed: _Packed


class _Problem:
    def __init__(self, C: LinearCode, exclude: LinearCode | None, backend: str | None):
        self.C = C
        self.F = C.field
        self.n, self.k = C.n, C.k
        self.backend = backend
        F = self.F
        if exclude is not None:
            if exclude.field is not F or exclude.n != C.n:
                raise ValueError("excluded code must share field and length")
            H = exclude.parity_check()
            sigma = linalg.matmul(F, C.gen, H.T) if H.shape[0] else np.zeros((C.k, 0), dtype=np.int64)
            _, piv = linalg.rref(F, sigma)
            if not piv:
                raise ValueError("code is contained in the excluded code: nothing to enumerate")
            self.syn = sigma[:, piv]
        else:
            self.syn = np.zeros((C.k, 0), dtype=np.int64)
        self.check_syn = exclude is not None
        self.exclude = exclude

    def info_set(self, cols: list[int], deficiency: int = 0) -> _InfoSet:
        F, G = self.F, self.C.gen
        T = linalg.inverse(F, G[:, cols])
        gsys = linalg.matmul(F, T, G)
        ssys = linalg.matmul(F, T, self.syn) if self.syn.shape[1] else self.syn
        colset = set(cols)
        red = [c for c in range(self.n) if c not in colset]
        return _InfoSet(list(cols), deficiency, gsys, _Packed(F, gsys[:, red], ssys, self.backend))

    def complete_info_set(self, first: list[int]) -> list[int]:
        """Pivot columns of G when columns of ``first`` are scanned first."""
        order = list(first) + [c for c in range(self.n) if c not in set(first)]
        _, piv = linalg.rref(self.F, self.C.gen[:, order])
        return [order[i] for i in piv]

    def witness(self, iset: _InfoSet, idx, coef) -> np.ndarray:
        F = self.F
        scal = iset.packed.scalars[np.asarray(coef)]
        rows = iset.gsys[np.asarray(idx)]
        return F.sum(F.mul(scal[:, None], rows), axis=0)


def _level_count(k: int, w: int, qm1: int, first: int) -> int:
    rest = k - 1 - first
    if rest < w - 1:
        return 0
    return math.comb(rest, w - 1) * qm1 ** (w - 1)


class _Runner:
    """Chunked level enumeration with a wall-clock deadline."""

    def __init__(self, prob: _Problem, deadline: float | None, threads: int):
        self.prob = prob
        self.deadline = deadline
        self.threads = threads
        self.rate = 2e7  # words per second, refined as chunks complete
        self.words = 0
        self.best = prob.n + 1
        self.wit = None

    def out_of_time(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def level_cost(self, iset: _InfoSet, w: int) -> int:
        k = self.prob.k
        return sum(_level_count(k, w, iset.packed.qm1, i) for i in range(k))

    def run_level(self, iset: _InfoSet, w: int, target: int) -> bool:
        """Enumerate one level; False when the deadline interrupted it."""
        pk = iset.packed
        k = pk.k
        i = 0
        while i <= k - w:
            if self.out_of_time():
                return False
            want = max(1.0, self.rate * 0.25)
            if self.deadline is not None:
                want = min(want, max(1.0, self.rate * (self.deadline - time.monotonic())))
            j, acc = i, 0
            while j <= k - w and (acc == 0 or acc + _level_count(k, w, pk.qm1, j) <= want):
                acc += _level_count(k, w, pk.qm1, j)
                j += 1
            t0 = time.perf_counter()
            best, idx, coef, cnt = pk.search(w, i, j, target, self.best, self.prob.check_syn, self.threads)
            dt = time.perf_counter() - t0
            self.words += int(cnt)
            if cnt and dt > 1e-3:
                self.rate = 0.5 * self.rate + 0.5 * cnt / dt
            if idx is not None and best < self.best:
                self.best = int(best)
                self.wit = (iset, list(idx), list(coef))
            if self.best <= target:
                return True
            i = j
        return True


def _verify_witness(prob: _Problem, vec: np.ndarray, value: int) -> None:
    if hamming_weight(vec) != value:
        raise AssertionError(f"witness weight {hamming_weight(vec)} != reported {value}")
    if not prob.C.contains_vectors(vec)[0]:
        raise AssertionError("witness is not a codeword")
    if prob.exclude is not None and prob.exclude.contains_vectors(vec)[0]:
        raise AssertionError("witness lies in the excluded code")


def _fallback_witness(prob: _Problem) -> tuple[int, np.ndarray]:
    """Lightest generator row outside the excluded code (some row always is)."""
    G = prob.C.gen
    ok = ~prob.exclude.contains_vectors(G) if prob.exclude is not None else np.ones(G.shape[0], dtype=bool)
    wts = np.where(ok, (G != 0).sum(axis=1), prob.n + 1)
    i = int(np.argmin(wts))
    return int(wts[i]), G[i]


def _finish(prob, runner, method, exact, lower, levels, t0) -> WeightReport:
    if runner.wit is None:
        # budget ran out before the first chunk: a generator row is still an upper bound
        runner.best, vec = _fallback_witness(prob)
    else:
        iset, idx, coef = runner.wit
        vec = prob.witness(iset, idx, coef)
    _verify_witness(prob, vec, runner.best)
    lower = min(lower, runner.best)
    exact = exact or lower >= runner.best
    if exact:
        lower = runner.best
    return WeightReport(
        value=runner.best,
        exact=bool(exact),
        method=method,
        witness=tuple(int(x) for x in vec),
        lower=int(max(1, lower)),
        levels=levels,
        words=runner.words,
        elapsed=time.perf_counter() - t0,
    )


def _valid_automorphisms(C: LinearCode, exclude, perms) -> list[np.ndarray]:
    out = []
    for perm in perms or ():
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(C.n)):
            raise ValueError("automorphism is not a permutation of the coordinates")
        if not C.is_automorphism(perm):
            raise ValueError("supplied permutation is not an automorphism of the code")
        if exclude is not None and not exclude.is_automorphism(perm):
            raise ValueError("supplied permutation does not preserve the excluded code")
        out.append(perm)
    return out


def _plan_sets(prob: _Problem, perms) -> tuple[list[_InfoSet], int | None]:
    """Information sets to enumerate, and the orbit size for the group bound."""
    n, k, F, G = prob.n, prob.k, prob.F, prob.C.gen
    n_full = max(1, n // k)
    if perms:
        for orb in orbits(n, perms):
            if len(orb) < k * n_full or len(orb) < k:
                break
            _, piv = linalg.rref(F, G[:, orb])
            if len(piv) == k:
                cols = [orb[i] for i in piv]
                return [prob.info_set(cols)], len(orb)
    sets: list[_InfoSet] = []
    remaining = list(range(n))
    while remaining:
        _, piv = linalg.rref(F, G[:, remaining])
        r = len(piv)
        if r == 0:
            break
        own = [remaining[i] for i in piv]
        deficiency = k - r
        if deficiency and (deficiency * 3 > k or not sets):
            break
        cols = own if not deficiency else prob.complete_info_set(own)
        sets.append(prob.info_set(cols, deficiency))
        used = set(own)
        remaining = [c for c in remaining if c not in used]
    return sets, None


def _bound(sets: list[_InfoSet], orbit: int | None, w: int, k: int) -> int:
    """Certified lower bound once levels 1..w are complete on every set."""
    if orbit is not None:
        return max(w + 1, -(-(w + 1) * orbit // k))
    return sum(max(0, w + 1 - s.deficiency) for s in sets)


def _check_method(C: LinearCode, method: str):
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if C.k == 0:
        raise ValueError("the zero code has no nonzero codewords")


def min_weight(
    C: LinearCode,
    method: str = "auto",
    budget: float | None = None,
    *,
    exclude: LinearCode | None = None,
    automorphisms=None,
    cap: int = DEFAULT_CAP,
    seed: int = 0,
    threads: int | None = None,
    stop_upper: int | None = None,
    stop_lower: int | None = None,
    iterations: int = 200,
    lee_brickell: int = 2,
    backend: str | None = None,
) -> WeightReport:
    """Minimum weight of ``C`` (of ``C`` minus ``exclude`` when given).

    ``budget`` is a wall-clock limit in seconds (None: unlimited).  The search
    stops early once a word of weight at most ``stop_upper`` is found or the
    lower bound reaches ``stop_lower``; such results are exact only if the
    bounds happen to meet.
    """
    _check_method(C, method)
    t0 = time.perf_counter()
    deadline = None if budget is None else time.monotonic() + float(budget)
    threads = threads or _default_threads()
    prob = _Problem(C, exclude, backend)
    q, k = C.field.q, C.k
    if method == "auto":
        method = "exhaustive" if (exclude is None and q**k <= 2**12) else "information-set"
    runner = _Runner(prob, deadline, threads)

    if method == "exhaustive":
        if q**k > cap:
            raise ValueError(f"exhaustive enumeration of {q}^{k} words exceeds cap {cap}")
        iset = prob.info_set(prob.complete_info_set([]))
        for w in range(1, k + 1):
            runner.run_level(iset, w, target=0)
        return _finish(prob, runner, "exhaustive", True, runner.best, k, t0)

    if method == "monte-carlo":
        rng = np.random.default_rng(seed)
        it = 0
        while it < iterations and not runner.out_of_time():
            perm = rng.permutation(prob.n).tolist()
            _, piv = linalg.rref(prob.F, C.gen[:, perm])
            iset = prob.info_set([perm[i] for i in piv])
            for w in range(1, min(lee_brickell, k) + 1):
                if not runner.run_level(iset, w, target=stop_upper or 0):
                    break
            it += 1
            if stop_upper is not None and runner.best <= stop_upper:
                break
        return _finish(prob, runner, "monte-carlo", False, 1, 0, t0)

    perms = _valid_automorphisms(C, exclude, automorphisms)
    sets, orbit = _plan_sets(prob, perms)
    lower = 1
    done = 0
    for w in range(1, k + 1):
        target = max(lower, stop_upper or 0)
        complete = True
        for s in sets:
            if not runner.run_level(s, w, target):
                complete = False
                break
            if runner.best <= target:
                break
        if runner.best <= lower:
            break
        if stop_upper is not None and runner.best <= stop_upper:
            break
        if not complete:
            break
        done = w
        lower = max(lower, _bound(sets, orbit, w, k))
        if w == k:
            lower = max(lower, runner.best)
        if lower >= runner.best:
            break
        if stop_lower is not None and lower >= stop_lower:
            break
        if runner.out_of_time():
            break
    return _finish(prob, runner, "information-set", lower >= runner.best, lower, done, t0)


def relative_min_weight(C: LinearCode, Excl: LinearCode, method: str = "auto", budget=None, **kw) -> WeightReport:
    """Minimum weight over codewords of C that are not in Excl."""
    if Excl.field is not C.field or Excl.n != C.n:
        raise ValueError("codes must share field and length")
    if Excl.contains(C):
        raise ValueError("C is contained in Excl: the difference set is empty")
    if method == "exhaustive":
        _check_method(C, method)
    return min_weight(C, method if method != "auto" else "information-set", budget, exclude=Excl, **kw)
