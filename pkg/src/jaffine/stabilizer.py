"""Stabilizer codes from self-orthogonal classical codes.

Covers the CSS construction (Euclidean), the Hermitian construction, the
Steane/Hamada enlargement, the generalized enlargement with two base codes
``C1``, ``C1hat`` and an extension block ``D``, the explicit symplectic code
behind the latter, expurgation and a Gilbert-Varshamov flag.

Distances are always computed by the weight engine; the certified lower bound
of every classical distance feeds the quantum bound, and each result records
which distances were exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Callable

import numpy as np

from . import linalg
from .codes import LinearCode
from .cyclotomic import minimal_cyclotomic_sets, subfield_dims
from .galois import FiniteField, field_from_modulus
from .variety import DefiningSet, VarietyParams, _grid, delta_perp, delta_perp_h, evaluate_code
from .weights import DEFAULT_CAP, WeightReport, min_weight

__all__ = [
    "PreconditionError",
    "DistanceOptions",
    "StabilizerParams",
    "SymplecticCode",
    "EnlargementInput",
    "css_construct",
    "hermitian_construct",
    "params_from_delta_euclid",
    "params_from_delta_herm",
    "steane_enlarge",
    "generalized_enlarge",
    "enlargement_from_codes",
    "fixed_point_free",
    "build_symplectic_code",
    "symplectic_weight",
    "symplectic_min_weight",
    "expurgate",
    "gv_check",
    "GV_PREDICATES",
    "replay",
    "encode_code",
    "decode_code",
]


class PreconditionError(ValueError):
    """A mathematical hypothesis of a construction does not hold."""


# -- distance plumbing


@dataclass(frozen=True)
class DistanceOptions:
    """How classical distances are computed inside the constructions.

    ``budget`` is per weight computation (seconds, None for unlimited).
    ``automorphisms`` are candidate coordinate permutations; each is used only
    for codes it actually preserves.  ``cache`` is any object with the
    ``key/get/put`` interface of :class:`jaffine.cache.WeightCache`.
    """

    method: str = "auto"
    budget: float | None = None
    cap: int = DEFAULT_CAP
    seed: int = 0
    threads: int | None = None
    automorphisms: tuple = ()
    cache: object | None = None

    def as_dict(self) -> dict:
        return {"method": self.method, "budget": self.budget, "cap": self.cap, "seed": self.seed}


def _usable_perms(C: LinearCode, exclude: LinearCode | None, perms) -> list[np.ndarray]:
    out = []
    for p in perms:
        if C.is_automorphism(p) and (exclude is None or exclude.is_automorphism(p)):
            out.append(np.asarray(p))
    return out


def weigh(
    C: LinearCode,
    opts: DistanceOptions,
    exclude: LinearCode | None = None,
    stop_upper: int | None = None,
    stop_lower: int | None = None,
) -> WeightReport:
    """Minimum weight of C (minus ``exclude``) under ``opts``, through the cache."""
    options = dict(opts.as_dict(), stop_upper=stop_upper, stop_lower=stop_lower, relative=exclude is not None)
    key = None
    if opts.cache is not None:
        key = opts.cache.key(C, exclude, options)
        hit = opts.cache.get(key, C, exclude)
        if hit is not None:
            return hit
    method = opts.method
    if exclude is not None and method == "auto":
        method = "information-set"
    perms = _usable_perms(C, exclude, opts.automorphisms) if method != "exhaustive" else []
    rep = min_weight(
        C,
        method,
        opts.budget,
        exclude=exclude,
        automorphisms=perms or None,
        cap=opts.cap,
        seed=opts.seed,
        threads=opts.threads,
        stop_upper=stop_upper,
        stop_lower=stop_lower,
    )
    if key is not None:
        opts.cache.put(key, C, exclude, rep)
    return rep


def _summary(rep: WeightReport | None) -> dict | None:
    if rep is None:
        return None
    return {"value": rep.value, "lower": rep.lower, "exact": rep.exact, "method": rep.method}


# -- parameters


@dataclass(frozen=True)
class StabilizerParams:
    """[[n, k, d]]_q with a certified lower bound ``d_low`` on d.

    ``d_exact`` is set only when the quantum distance itself is certified.
    ``provenance`` is a JSON-able record that :func:`replay` re-executes.
    """

    n: int
    k: int
    d_low: int
    q_alphabet: int
    d_exact: int | None = None
    pure: bool = False
    provenance: dict = field(default_factory=dict, compare=False)
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError(f"k = {self.k} outside 0..{self.n}")
        if self.d_low < 1:
            raise ValueError("distance lower bound must be >= 1")

    @property
    def key(self) -> tuple:
        return (self.n, self.k, self.d_low, self.d_exact, self.q_alphabet, self.pure)

    def label(self) -> str:
        d = str(self.d_exact) if self.d_exact is not None else f">={self.d_low}"
        return f"[[{self.n},{self.k},{d}]]_{self.q_alphabet}"

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d_low": self.d_low,
            "d_exact": self.d_exact,
            "q": self.q_alphabet,
            "pure": self.pure,
            "label": self.label(),
            "details": self.details,
            "provenance": self.provenance,
        }


def encode_code(C: LinearCode) -> dict:
    F = C.field
    return {"p": F.p, "modulus": list(F.modulus), "n": C.n, "gen": C.gen.tolist()}


def decode_code(d: dict) -> LinearCode:
    F = field_from_modulus(int(d["p"]), tuple(d["modulus"]))
    return LinearCode(F, np.asarray(d["gen"], dtype=np.int64).reshape(-1, int(d["n"])), n=int(d["n"]))


def _quantum_distance(C: LinearCode, Cperp: LinearCode, opts: DistanceOptions) -> tuple[int, int | None, bool, dict]:
    """Distance data for a code C containing its (Euclidean or Hermitian) dual Cperp.

    The stabilizer code has distance wt(C minus Cperp) >= d(C); it is pure when
    d(Cperp) > d(C), and then its distance is d(C).
    """
    dC = weigh(C, opts)
    details = {"d_C": _summary(dC)}
    if Cperp.k == 0 or C == Cperp:
        pure = True
        dperp = None
    else:
        dperp = weigh(Cperp, opts, stop_upper=dC.lower, stop_lower=dC.value + 1)
        pure = dperp.lower > dC.value
    details["d_dual"] = _summary(dperp)
    if pure:
        return dC.lower, (dC.value if dC.exact else None), True, details
    rel = weigh(C, opts, exclude=Cperp)
    details["d_relative"] = _summary(rel)
    d_low = max(dC.lower, rel.lower)
    return d_low, (rel.value if rel.exact else None), False, details


def css_construct(C: LinearCode, opts: DistanceOptions | None = None) -> StabilizerParams:
    """[[n, 2k - n, >= d(C)]]_q from C containing its Euclidean dual."""
    opts = opts or DistanceOptions()
    Cd = C.dual()
    if not C.contains(Cd):
        raise PreconditionError("self-orthogonality condition failed: C does not contain its Euclidean dual")
    d_low, d_exact, pure, details = _quantum_distance(C, Cd, opts)
    return StabilizerParams(
        n=C.n,
        k=2 * C.k - C.n,
        d_low=d_low,
        q_alphabet=C.field.q,
        d_exact=d_exact,
        pure=pure,
        provenance={"construction": "css", "code": encode_code(C), "distance": opts.as_dict()},
        details=dict(details, classical={"n": C.n, "k": C.k}),
    )


def hermitian_construct(C: LinearCode, f: int, opts: DistanceOptions | None = None) -> StabilizerParams:
    """[[n, 2k - n, >= d(C)]]_{p^f} from C over GF(p^2f) containing its Hermitian dual."""
    opts = opts or DistanceOptions()
    if C.field.e != 2 * f:
        raise ValueError(f"Hermitian construction needs a code over GF(p^{2 * f}), got GF({C.field.q})")
    Ch = C.hermitian_dual(f)
    if not C.contains(Ch):
        raise PreconditionError("self-orthogonality condition failed: C does not contain its Hermitian dual")
    d_low, d_exact, pure, details = _quantum_distance(C, Ch, opts)
    return StabilizerParams(
        n=C.n,
        k=2 * C.k - C.n,
        d_low=d_low,
        q_alphabet=C.field.p**f,
        d_exact=d_exact,
        pure=pure,
        provenance={"construction": "hermitian", "code": encode_code(C), "f": f, "distance": opts.as_dict()},
        details=dict(details, classical={"n": C.n, "k": C.k}),
    )


# -- constructions from defining sets


def _torus_opts(params: VarietyParams, opts: DistanceOptions) -> DistanceOptions:
    if opts.automorphisms:
        return opts
    return replace(opts, automorphisms=tuple(_grid(params).torus_permutations()))


def _delta_provenance(kind: str, delta: DefiningSet, sub, opts: DistanceOptions) -> dict:
    return {
        "construction": kind,
        "params": delta.params.as_dict(),
        "delta": delta.to_list(),
        "sub": sub,
        "distance": opts.as_dict(),
    }


def params_from_delta_euclid(
    delta: DefiningSet, s_sub: int | None = None, opts: DistanceOptions | None = None
) -> StabilizerParams:
    """Euclidean stabilizer code from E_Delta (``s_sub`` None) or its subfield-subcode over GF(p^s_sub)."""
    opts = _torus_opts(delta.params, opts or DistanceOptions())
    params = delta.params
    n = params.n
    if s_sub is None or s_sub == params.e_field:
        perp = delta_perp(delta)
        if not delta <= perp:
            raise PreconditionError("self-orthogonality condition failed: Delta is not contained in Delta^perp")
        E = evaluate_code(delta)
        sp = css_construct(E.dual(), opts)
        k_formula = n - 2 * len(delta)
        if sp.k != k_formula:
            raise AssertionError(f"k = {sp.k} differs from n - 2|Delta| = {k_formula}")
        extra = {"k_formula": k_formula, "k_formula_kind": "exact", "subcode_dim": len(delta)}
    else:
        if params.e_field % s_sub:
            raise ValueError(f"subfield degree {s_sub} does not divide {params.e_field}")
        part = minimal_cyclotomic_sets(params, params.p**s_sub)
        rep = subfield_dims(delta, part, "euclid")
        if not rep.condition:
            raise PreconditionError(
                "self-orthogonality condition failed: cyclotomic sets inside Delta miss Delta^perp: "
                f"{[list(a) for a in rep.failing_sets]}"
            )
        Es = evaluate_code(delta).subfield_subcode(s_sub)
        if Es.k != rep.subcode_dim:
            raise AssertionError(f"subfield-subcode dimension {Es.k} differs from the orbit count {rep.subcode_dim}")
        C = Es.dual()
        if C.k < rep.dual_dim_bound:
            raise AssertionError("dual dimension below the cyclotomic lower bound")
        sp = css_construct(C, opts)
        extra = {
            "k_formula": 2 * rep.dual_dim_bound - n,
            "k_formula_kind": "exact" if C.k == rep.dual_dim_bound else "lower",
            "subcode_dim": Es.k,
            "dims": rep.as_dict(),
        }
    return replace(
        sp,
        provenance=_delta_provenance("euclid-delta", delta, s_sub, opts),
        details=dict(sp.details, **extra),
    )


def params_from_delta_herm(
    delta: DefiningSet, f_sub: int | None = None, opts: DistanceOptions | None = None
) -> StabilizerParams:
    """Hermitian stabilizer code from E_Delta over GF(p^e), e even.

    ``f_sub`` None uses the full field with conjugation p^(e/2); otherwise the
    subfield-subcode over GF(p^(2 f_sub)) with conjugation p^f_sub, giving a
    code over GF(p^f_sub).
    """
    opts = _torus_opts(delta.params, opts or DistanceOptions())
    params = delta.params
    e, n = params.e_field, params.n
    if e % 2:
        raise ValueError(f"Hermitian codes need an even field degree, got {e}")
    if f_sub is None or 2 * f_sub == e:
        f = e // 2
        perp = delta_perp_h(delta, f)
        if not delta <= perp:
            raise PreconditionError("self-orthogonality condition failed: Delta is not contained in Delta^perp_h")
        E = evaluate_code(delta)
        sp = hermitian_construct(E.hermitian_dual(f), f, opts)
        k_formula = n - 2 * len(delta)
        if sp.k != k_formula:
            raise AssertionError(f"k = {sp.k} differs from n - 2|Delta| = {k_formula}")
        extra = {"k_formula": k_formula, "k_formula_kind": "exact", "subcode_dim": len(delta)}
    else:
        if e % (2 * f_sub):
            raise ValueError(f"subfield degree {2 * f_sub} does not divide {e}")
        part = minimal_cyclotomic_sets(params, params.p ** (2 * f_sub))
        rep = subfield_dims(delta, part, "herm", conj_exponent=f_sub)
        if not rep.condition:
            raise PreconditionError(
                "self-orthogonality condition failed: cyclotomic sets inside Delta miss Delta^perp_h: "
                f"{[list(a) for a in rep.failing_sets]}"
            )
        Es = evaluate_code(delta).subfield_subcode(2 * f_sub)
        if Es.k != rep.subcode_dim:
            raise AssertionError(f"subfield-subcode dimension {Es.k} differs from the orbit count {rep.subcode_dim}")
        C = Es.hermitian_dual(f_sub)
        sp = hermitian_construct(C, f_sub, opts)
        extra = {
            "k_formula": 2 * rep.dual_dim_bound - n,
            "k_formula_kind": "exact" if C.k == rep.dual_dim_bound else "lower",
            "subcode_dim": Es.k,
            "dims": rep.as_dict(),
        }
    return replace(
        sp,
        provenance=_delta_provenance("herm-delta", delta, f_sub, opts),
        details=dict(sp.details, **extra),
    )


# -- enlargements


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def steane_enlarge(C: LinearCode, Cp: LinearCode, opts: DistanceOptions | None = None) -> StabilizerParams:
    """[[n, k + k' - n, >= min{d', ceil((q+1) d''/q)}]]_q for C^perp <= C < C'."""
    opts = opts or DistanceOptions()
    C._same_space(Cp)
    if not C.contains(C.dual()):
        raise PreconditionError("self-orthogonality condition failed: C does not contain its Euclidean dual")
    if not Cp.contains(C):
        raise PreconditionError("C is not a subcode of C'")
    if Cp.k < C.k + 2:
        raise PreconditionError(f"dim C' = {Cp.k} must be at least dim C + 2 = {C.k + 2}")
    q, n = C.field.q, C.n
    Cpd = Cp.dual()
    d2 = weigh(Cp, opts, exclude=Cpd)
    second = _ceil_div((q + 1) * d2.lower, q)
    d1 = weigh(C, opts, exclude=Cpd, stop_lower=second)
    d_low = min(d1.lower, second)
    return StabilizerParams(
        n=n,
        k=C.k + Cp.k - n,
        d_low=d_low,
        q_alphabet=q,
        provenance={
            "construction": "steane",
            "C": encode_code(C),
            "Cprime": encode_code(Cp),
            "distance": opts.as_dict(),
        },
        details={"d_prime": _summary(d1), "d_second": _summary(d2), "enlarged_term": second},
    )


@dataclass(frozen=True)
class EnlargementInput:
    """Codes C1, C1hat and an extension block D for the generalized enlargement."""

    C1: LinearCode
    C1hat: LinearCode
    D: LinearCode

    def __post_init__(self):
        self.C1._same_space(self.C1hat)
        self.C1._same_space(self.D)
        if not self.C1hat.contains(self.C1.dual()):
            raise PreconditionError("C1^perp is not contained in C1hat")
        if self.D.k < 2:
            raise PreconditionError(f"dim D = {self.D.k} must be at least 2")
        S = self.C1 + self.C1hat
        if (S + self.D).k != S.k + self.D.k:
            raise PreconditionError("(C1 + C1hat) and D intersect nontrivially")

    @property
    def C2(self) -> LinearCode:
        return self.C1 + self.D

    @property
    def C2hat(self) -> LinearCode:
        return self.C1hat + self.D

    @property
    def C3(self) -> LinearCode:
        return self.C1 + self.C1hat + self.D


def enlargement_from_codes(
    C1: LinearCode, C1hat: LinearCode, C2: LinearCode, C2hat: LinearCode, C3: LinearCode | None = None
) -> EnlargementInput:
    """Find D with C1 + D = C2, C1hat + D = C2hat (and C1 + C1hat + D = C3 when given)."""
    if not (C2.contains(C1) and C2hat.contains(C1hat)):
        raise PreconditionError("C2 (C2hat) must contain C1 (C1hat)")
    t = C2.k - C1.k
    if C2hat.k - C1hat.k != t:
        raise PreconditionError(f"k2 - k1 = {t} differs from k2hat - k1hat = {C2hat.k - C1hat.k}")
    W = C2.intersect(C2hat)
    if C3 is not None:
        W = W.intersect(C3)
    base = (C1 + C1hat).intersect(W)
    comp = base.complement_in(W)
    if comp.k < t:
        raise PreconditionError(f"no extension block of dimension {t} avoids C1 + C1hat (only {comp.k} available)")
    D = LinearCode(C1.field, comp.gen[:t], n=C1.n)
    inp = EnlargementInput(C1, C1hat, D)
    if inp.C2 != C2 or inp.C2hat != C2hat:
        raise AssertionError("extension block does not reproduce C2 and C2hat")
    if C3 is not None and inp.C3 != C3:
        raise PreconditionError("C1 + C1hat + D does not reproduce the given C3")
    return inp


def generalized_enlarge(
    inp: EnlargementInput, opts: DistanceOptions | None = None, relative: bool = False
) -> StabilizerParams:
    """[[n, k2 + k1hat - n, >= min{d1, d1hat, B}]]_q with B the enlargement term.

    B = ceil((d2 + d2hat + d3)/2) for q = 2 and max{d3 + ceil(d2/q), d3 + ceil(d2hat/q)}
    otherwise.  With ``relative`` every distance is taken outside the
    relevant dual (d1 on C1 minus C2hat^perp, d1hat on C1hat minus C2^perp,
    d2 on C2 minus C2hat^perp, d2hat on C2hat minus C2^perp, d3 on C3 minus
    C3^perp), which is still a valid bound on S minus its symplectic dual.
    """
    opts = opts or DistanceOptions()
    C1, C1h, D = inp.C1, inp.C1hat, inp.D
    C2, C2h, C3 = inp.C2, inp.C2hat, inp.C3
    n, q, t = C1.n, C1.field.q, D.k
    if not (C2.k - C1.k == C2h.k - C1h.k == t):
        raise AssertionError("dimension bookkeeping k2 - k1 = k2hat - k1hat = dim D failed")

    def dist(code, excl, stop_lower=None):
        if excl is None:
            return weigh(code, opts, stop_lower=stop_lower)
        if excl.contains(code):
            return None
        return weigh(code, opts, exclude=excl, stop_lower=stop_lower)

    ex = (lambda c: c) if relative else (lambda c: None)
    r2 = dist(C2, ex(C2h.dual()))
    r2h = dist(C2h, ex(C2.dual()))
    r3 = dist(C3, ex(C3.dual()))
    if r2 is None or r2h is None or r3 is None:
        raise PreconditionError("an enlarged code lies inside the dual it is measured against")
    d2, d2h, d3 = r2.lower, r2h.lower, r3.lower
    if q == 2:
        B = _ceil_div(d2 + d2h + d3, 2)
        B_min = B
    else:
        B = max(d3 + _ceil_div(d2, q), d3 + _ceil_div(d2h, q))
        B_min = min(d3 + _ceil_div(d2, q), d3 + _ceil_div(d2h, q))
    r1 = dist(C1, ex(C2h.dual()), stop_lower=B)
    r1h = dist(C1h, ex(C2.dual()), stop_lower=B)
    terms = [B] + [r.lower for r in (r1, r1h) if r is not None]
    d_low = min(terms)
    details = {
        "dims": {"k1": C1.k, "k1hat": C1h.k, "k2": C2.k, "k2hat": C2h.k, "k3": C3.k, "dimD": t},
        "d1": _summary(r1),
        "d1hat": _summary(r1h),
        "d2": _summary(r2),
        "d2hat": _summary(r2h),
        "d3": _summary(r3),
        "enlarged_term": B,
        "relative": relative,
    }
    if q != 2:
        details["enlarged_term_min_variant"] = B_min
        details["min_variant_differs"] = min([B_min] + terms[1:]) != d_low
    return StabilizerParams(
        n=n,
        k=C2.k + C1h.k - n,
        d_low=d_low,
        q_alphabet=q,
        provenance={
            "construction": "generalized",
            "C1": encode_code(C1),
            "C1hat": encode_code(C1h),
            "D": encode_code(D),
            "relative": relative,
            "distance": opts.as_dict(),
        },
        details=details,
    )


# -- the explicit symplectic code


def _companion(F: FiniteField, coeffs: list[int]) -> np.ndarray:
    """Companion matrix of x^t + c_{t-1} x^{t-1} + ... + c_0 (coeffs low to high)."""
    t = len(coeffs)
    A = np.zeros((t, t), dtype=np.int64)
    for i in range(t - 1):
        A[i, i + 1] = 1
    A[t - 1] = F.neg(np.asarray(coeffs, dtype=np.int64))
    return A


def fixed_point_free(F: FiniteField, t: int) -> np.ndarray:
    """A t x t matrix with no eigenvalue in F_q (so A and A - I are invertible).

    q = 2 uses the companion matrix of x^t + x + 1; otherwise the companion of
    the first monic degree-t polynomial (lexicographic in its coefficients)
    without roots in F_q.
    """
    if t < 2:
        raise ValueError("need t >= 2")
    if F.q == 2:
        c = [1, 1] + [0] * (t - 2)
        return _companion(F, c)
    xs = np.arange(F.q, dtype=np.int64)
    for tail in product(range(F.q), repeat=t):
        coeffs = list(tail)[::-1]
        if coeffs[0] == 0:
            continue
        val = F.power(xs, t)
        for i, c in enumerate(coeffs):
            val = F.add(val, F.mul(np.full_like(xs, c), F.power(xs, i)))
        if (val != 0).all():
            return _companion(F, coeffs)
    raise AssertionError("no root-free polynomial found")


def symplectic_product(F: FiniteField, X: np.ndarray, Y: np.ndarray, n: int) -> np.ndarray:
    """Matrix of (u|v) . (u'|v') = u.v' - v.u' between rows of X and Y."""
    a = linalg.matmul(F, X[:, :n], Y[:, n:].T)
    b = linalg.matmul(F, X[:, n:], Y[:, :n].T)
    return F.sub(a, b)


@dataclass
class SymplecticCode:
    """A subspace S of F_q^(2n) given by generator rows (u|v).

    ``parity`` spans the symplectic dual S^perp_s; ``d_rows`` is the number of
    leading rows forming the (L | A L) block.
    """

    field: FiniteField
    n: int
    gen: np.ndarray
    parity: np.ndarray | None = None
    d_rows: int = 0
    extras: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return linalg.rank(self.field, self.gen) if self.gen.size else 0

    def symplectic_dual(self) -> np.ndarray:
        """Generator of S^perp_s computed by linear algebra."""
        F, n = self.field, self.n
        M = np.hstack([self.gen[:, n:], F.neg(self.gen[:, :n])])
        return linalg.nullspace(F, M, 2 * n)

    def contains_dual(self) -> bool:
        """S^perp_s <= S."""
        Sd = self.symplectic_dual()
        if Sd.size == 0:
            return True
        R, piv = linalg.rref(self.field, self.gen)
        return bool(linalg.in_rowspace(self.field, R, piv, Sd).all())

    def weights(self, words: np.ndarray) -> np.ndarray:
        n = self.n
        return ((words[:, :n] != 0) | (words[:, n:] != 0)).sum(axis=1)


def symplectic_weight(word, n: int | None = None) -> int:
    """Number of i with u_i != 0 or v_i != 0 for the word (u|v)."""
    w = np.asarray(word)
    n = n if n is not None else w.size // 2
    return int(((w[:n] != 0) | (w[n:] != 0)).sum())


def build_symplectic_code(inp: EnlargementInput) -> SymplecticCode:
    """S generated by (L | A L; G1 | 0; 0 | G1hat), with S^perp_s <= S verified.

    B is taken inside (C1 + C1hat)^perp with B L^T = I, so (H2; B) and
    (H2hat; B) are parity checks of C1 and C1hat; the rows
    (K B | B; H2hat | 0; 0 | H2) with K = (B L^T)(A^T)^-1(B L^T)^-1 then span S^perp_s.
    """
    F, n = inp.C1.field, inp.C1.n
    G1, G1h, L = inp.C1.gen, inp.C1hat.gen, inp.D.gen
    t = L.shape[0]
    A = fixed_point_free(F, t)
    AL = linalg.matmul(F, A, L)
    Z = lambda r: np.zeros((r, n), dtype=np.int64)  # noqa: E731
    gen = np.vstack([np.hstack([L, AL]), np.hstack([G1, Z(G1.shape[0])]), np.hstack([Z(G1h.shape[0]), G1h])])
    dimS = inp.C2.k + inp.C1hat.k
    if linalg.rank(F, gen) != dimS or gen.shape[0] != dimS:
        raise AssertionError("generator rows of S are not independent")

    W = (inp.C1 + inp.C1hat).dual().gen
    M = linalg.matmul(F, W, L.T)
    _, piv = linalg.rref(F, M.T)
    if len(piv) != t:
        raise PreconditionError("B L^T cannot be made invertible: D meets (C1 + C1hat)")
    B = linalg.matmul(F, linalg.inverse(F, M[piv]), W[piv])
    BLt = linalg.matmul(F, B, L.T)
    H2, H2h = inp.C2.parity_check(), inp.C2hat.parity_check()
    if linalg.rank(F, np.vstack([H2, B])) != n - inp.C1.k or linalg.rank(F, np.vstack([H2h, B])) != n - inp.C1hat.k:
        raise AssertionError("(H2; B) or (H2hat; B) is not a parity check of C1 or C1hat")
    K = linalg.matmul(F, linalg.matmul(F, BLt, linalg.inverse(F, A.T)), linalg.inverse(F, BLt))
    P = np.vstack(
        [
            np.hstack([linalg.matmul(F, K, B), B]),
            np.hstack([H2h, Z(H2h.shape[0])]),
            np.hstack([Z(H2.shape[0]), H2]),
        ]
    )
    if symplectic_product(F, gen, P, n).any():
        raise AssertionError("parity block is not symplectic-orthogonal to S")
    if linalg.rank(F, P) != 2 * n - dimS:
        raise AssertionError("parity block does not span S^perp_s")
    if symplectic_product(F, P, P, n).any():
        raise AssertionError("S^perp_s is not contained in S")
    return SymplecticCode(F, n, gen, parity=P, d_rows=t, extras={"A": A, "B": B, "K": K})


def _span(F: FiniteField, G: np.ndarray, cap: int) -> np.ndarray:
    k = G.shape[0]
    if F.q**k > cap:
        raise ValueError(f"enumerating {F.q}^{k} words exceeds cap {cap}")
    words = np.zeros((1, G.shape[1]), dtype=np.int64)
    scalars = np.arange(F.q, dtype=np.int64)
    for row in G:
        multiples = F.mul(scalars[:, None], row[None, :])
        words = F.add(words[None, :, :], multiples[:, None, :]).reshape(-1, G.shape[1])
    return words


def symplectic_min_weight(
    S: SymplecticCode, method: str = "exhaustive", budget=None, *, impure: bool = True, cap: int = 2**22
) -> WeightReport:
    """Minimum symplectic weight over S minus S^perp_s (``impure``) or over S minus 0.

    Only exhaustive enumeration of the span is supported.
    """
    if method not in ("exhaustive", "auto"):
        raise ValueError("symplectic weights support exhaustive enumeration only")
    F = S.field
    R, _ = linalg.rref(F, S.gen)
    if R.shape[0] == 0:
        raise ValueError("zero-dimensional S")
    words = _span(F, R, cap)
    wts = S.weights(words)
    keep = wts > 0
    if impure:
        Sd = S.symplectic_dual()
        if Sd.size:
            Rd, pd = linalg.rref(F, Sd)
            keep &= ~linalg.in_rowspace(F, Rd, pd, words)
    if not keep.any():
        raise ValueError("S equals its symplectic dual: no logical words")
    idx = np.nonzero(keep)[0]
    best = idx[np.argmin(wts[idx])]
    v = int(wts[best])
    return WeightReport(
        value=v, exact=True, method="exhaustive", witness=tuple(int(x) for x in words[best]), lower=v,
        levels=R.shape[0], words=len(words),
    )


def _sdual(F: FiniteField, gen: np.ndarray, n: int) -> np.ndarray:
    return linalg.nullspace(F, np.hstack([gen[:, n:], F.neg(gen[:, :n])]), 2 * n)


def _hyperplane_step(F: FiniteField, gen: np.ndarray, dual: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """S intersected with x^perp_s for the first generator x outside S^perp_s."""
    Rd, pd = linalg.rref(F, dual)
    outside = ~linalg.in_rowspace(F, Rd, pd, gen)
    if not outside.any():
        raise AssertionError("every generator already lies in the symplectic dual")
    x = gen[int(np.argmax(outside))]
    c = symplectic_product(F, gen, x[None, :], n)[:, 0]
    piv = int(np.nonzero(c)[0][0])
    ratio = F.mul(c, F.inv(np.full_like(c, c[piv])))
    rows = F.sub(gen, F.mul(ratio[:, None], gen[piv][None, :]))
    return np.delete(rows, piv, axis=0), np.vstack([dual, x[None, :]])


def expurgate(sp: StabilizerParams, S: SymplecticCode, target_k: int) -> tuple[StabilizerParams, SymplecticCode]:
    """[[n, target_k, >= d_low]]_q by enlarging the stabilizer S^perp_s.

    Each step drops one generator row of the (L | A L) block when the smaller
    span still contains its symplectic dual; otherwise it replaces S by S
    intersected with x^perp_s for a generator x outside S^perp_s.  Either way
    the new S' satisfies S'^perp_s <= S' and S' minus S'^perp_s lies inside S
    minus S^perp_s, so the distance bound carries over.
    """
    if target_k == sp.k:
        return sp, S
    if not 0 < target_k < sp.k:
        raise ValueError(f"target k = {target_k} must satisfy 0 < target < {sp.k}")
    F, n = S.field, S.n
    gen, d_rows = S.gen, S.d_rows
    steps = []
    for _ in range(sp.k - target_k):
        dropped = False
        for i in range(d_rows):
            cand = np.delete(gen, i, axis=0)
            dual = _sdual(F, cand, n)
            if not symplectic_product(F, dual, dual, n).any():
                gen, d_rows, dropped = cand, d_rows - 1, True
                steps.append("drop-row")
                break
        if not dropped:
            gen, _ = _hyperplane_step(F, gen, _sdual(F, gen, n), n)
            d_rows = 0
            steps.append("hyperplane")
    dual = _sdual(F, gen, n)
    if symplectic_product(F, dual, dual, n).any():
        raise AssertionError("expurgated code lost S^perp_s <= S")
    if linalg.rank(F, gen) != gen.shape[0] or gen.shape[0] - n != target_k:
        raise AssertionError("expurgated dimension bookkeeping failed")
    out = SymplecticCode(F, n, gen, parity=dual, d_rows=d_rows, extras=dict(S.extras))
    new = replace(
        sp,
        k=target_k,
        d_exact=None,
        pure=False,
        provenance={"construction": "expurgate", "base": sp.provenance, "target_k": target_k},
        details=dict(sp.details, expurgated_from=sp.k, expurgation_steps=steps),
    )
    return new, out


# -- Gilbert-Varshamov flag


def _feng_ma_exists(n: int, k: int, d: int, q: int) -> bool:
    """Feng-Ma finite GV bound: a pure [[n,k,d]]_q exists when n = k (mod 2) and
    sum_{i=1}^{d-1} (q^2-1)^(i-1) C(n,i) < (q^(n-k+2) - 1)/(q^2 - 1)."""
    if (n - k) % 2:
        k += 1
    if k > n:
        return False
    lhs = sum((q * q - 1) ** (i - 1) * math.comb(n, i) for i in range(1, d))
    # compare lhs < (q^(n-k+2) - 1)/(q^2 - 1) without fractions
    return lhs * (q * q - 1) < q ** (n - k + 2) - 1


GV_PREDICATES: dict[str, Callable[[int, int, int, int], bool]] = {"feng-ma": _feng_ma_exists}


def gv_check(n: int, k: int, d: int, q: int, predicate: str = "feng-ma") -> bool:
    """True when the chosen GV existence bound does not guarantee [[n,k,d]]_q (the code beats GV)."""
    if not (n > k >= 0 and d >= 1 and q >= 2):
        raise ValueError(f"invalid parameters n={n}, k={k}, d={d}, q={q}")
    try:
        exists = GV_PREDICATES[predicate]
    except KeyError:
        raise ValueError(f"unknown GV predicate {predicate!r}") from None
    return not exists(n, k, d, q)


# -- replay


def _opts_from(prov: dict, opts: DistanceOptions | None) -> DistanceOptions:
    base = opts or DistanceOptions()
    d = prov.get("distance") or {}
    return replace(base, method=d.get("method", base.method), budget=d.get("budget"), cap=d.get("cap", base.cap),
                   seed=d.get("seed", base.seed))


def replay(prov: dict, opts: DistanceOptions | None = None) -> StabilizerParams:
    """Re-run the construction recorded in a provenance record."""
    kind = prov.get("construction")
    if kind == "css":
        return css_construct(decode_code(prov["code"]), _opts_from(prov, opts))
    if kind == "hermitian":
        return hermitian_construct(decode_code(prov["code"]), int(prov["f"]), _opts_from(prov, opts))
    if kind in ("euclid-delta", "herm-delta"):
        pd = prov["params"]
        params = VarietyParams(pd["p"], pd["field_degree"], tuple(pd["N"]), frozenset(pd["J"]))
        delta = DefiningSet(params, prov["delta"])
        fn = params_from_delta_euclid if kind == "euclid-delta" else params_from_delta_herm
        return fn(delta, prov["sub"], _opts_from(prov, opts))
    if kind == "steane":
        return steane_enlarge(decode_code(prov["C"]), decode_code(prov["Cprime"]), _opts_from(prov, opts))
    if kind == "generalized":
        inp = EnlargementInput(decode_code(prov["C1"]), decode_code(prov["C1hat"]), decode_code(prov["D"]))
        return generalized_enlarge(inp, _opts_from(prov, opts), relative=bool(prov.get("relative")))
    if kind == "expurgate":
        base_prov = prov["base"]
        base = replay(base_prov, opts)
        if base_prov.get("construction") != "generalized":
            raise ValueError("expurgation replay needs a generalized-enlargement base")
        inp = EnlargementInput(
            decode_code(base_prov["C1"]), decode_code(base_prov["C1hat"]), decode_code(base_prov["D"])
        )
        return expurgate(base, build_symplectic_code(inp), int(prov["target_k"]))[0]
    raise ValueError(f"unknown construction {kind!r}")
