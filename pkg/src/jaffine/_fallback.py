"""Pure numpy implementation of the enumeration kernels.

Same contract as the compiled module: scan first indices ``lo..hi-1`` in
order, keep the first word that strictly improves ``best``, and stop at the
first word whose weight is at most ``target``.  The last level is vectorised
over all remaining (row, scalar) pairs.
"""

from __future__ import annotations

import numpy as np

__all__ = ["search_bits", "search_bytes"]


def _pick(wt: np.ndarray, ok: np.ndarray, best: int, target: int):
    """Index of the word the sequential scan would keep, and whether it hit target."""
    good = ok & (wt < best)
    if not good.any():
        return None, False
    hit = np.nonzero(good & (wt <= target))[0]
    if hit.size:
        return int(hit[0]), True
    cand = np.where(good, wt, np.iinfo(np.int64).max)
    return int(np.argmin(cand)), False


def _scan(level_eval, combine, row_of, k, qm1, w, lo, hi, target, best):
    state = {"best": best, "idx": None, "coef": None, "count": 0, "done": False}

    def leaf(base, prefix_idx, prefix_coef, start):
        wt, ok, n = level_eval(base, start)
        state["count"] += n
        pos, hit = _pick(wt, ok, state["best"], target)
        if pos is None:
            return
        j, c = divmod(pos, qm1)
        state["best"] = int(wt[pos])
        state["idx"] = prefix_idx + [start + j]
        state["coef"] = prefix_coef + [c]
        if hit:
            state["done"] = True

    def dfs(base, depth, start, prefix_idx, prefix_coef):
        if depth == w - 1:
            leaf(base, prefix_idx, prefix_coef, start)
            return
        for j in range(start, k - (w - 1 - depth)):
            for c in range(qm1):
                dfs(combine(base, row_of(j, c)), depth + 1, j + 1, prefix_idx + [j], prefix_coef + [c])
                if state["done"]:
                    return

    for i0 in range(lo, hi):
        if w == 1:
            wt, ok, n = level_eval(None, i0)
            state["count"] += 1
            wt, ok = wt[:1], ok[:1]
            pos, hit = _pick(wt, ok, state["best"], target)
            if pos is not None:
                state["best"] = int(wt[0])
                state["idx"], state["coef"] = [i0], [0]
                if hit:
                    state["done"] = True
        else:
            dfs(row_of(i0, 0), 1, i0 + 1, [i0], [0])
        if state["done"]:
            break
    return state["best"], state["idx"], state["coef"], state["count"]


def search_bits(rows, k, qm1, e, W, wmask, smask, check_syn, w, lo, hi, target, best, threads=1):
    rows = np.asarray(rows, dtype=np.uint64).reshape(k * qm1, e, W)
    wmask = np.asarray(wmask, dtype=np.uint64)
    smask = np.asarray(smask, dtype=np.uint64)

    def level_eval(base, start):
        cand = rows[start * qm1 :]
        if base is None:
            cand = cand[:1]
            acc = np.bitwise_or.reduce(cand, axis=1)
        else:
            acc = np.bitwise_or.reduce(cand ^ base[None], axis=1)
        wt = np.bitwise_count(acc & wmask).sum(axis=1, dtype=np.int64) + w
        ok = (acc & smask).any(axis=1) if check_syn else np.ones(len(acc), dtype=bool)
        return wt, ok, len(acc)

    return _scan(level_eval, lambda a, b: a ^ b, lambda j, c: rows[j * qm1 + c], k, qm1, w, lo, hi, target, best)


def search_bytes(rows, k, qm1, nred, addt, q, check_syn, w, lo, hi, target, best, threads=1):
    L = rows.size // max(1, k * qm1)
    rows = np.asarray(rows).reshape(k * qm1, L)
    addt = np.asarray(addt).reshape(q, q)

    def level_eval(base, start):
        cand = rows[start * qm1 :]
        if base is None:
            acc = cand[:1]
        else:
            acc = addt[base[None, :], cand]
        wt = (acc[:, :nred] != 0).sum(axis=1, dtype=np.int64) + w
        ok = acc[:, nred:].any(axis=1) if check_syn else np.ones(len(acc), dtype=bool)
        return wt, ok, len(acc)

    return _scan(
        level_eval, lambda a, b: addt[a, b], lambda j, c: rows[j * qm1 + c], k, qm1, w, lo, hi, target, best
    )
