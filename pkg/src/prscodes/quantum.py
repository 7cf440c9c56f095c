"""Entanglement-assisted quantum code parameters from pairs of classical codes.

Generic constructions (CSS, Hermitian, asymmetric) compute ``c`` and ``κ``
exactly by linear algebra.  Minimum distances are relative weights
``wt(A \\ (A ∩ B))``; they are computed exactly when an exact enumeration fits
the budget and otherwise reported as a certified lower bound, optionally
bracketed by a seeded random search.

The recipe functions build the classical codes from projective Reed-Solomon
data, check the construction's hypothesis computationally and record which
route established it in ``certificate``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Optional

from .cyclo import (
    CycloStructure,
    DeltaSet,
    _red,
    cyclotomic_sets,
    delta_consecutive,
    delta_range,
    longest_run,
)
from .distance import (
    DistanceReport,
    exhaustive_min_weight,
    projective_count,
    random_upper_bound,
    support_min_weight,
)
from .errors import HypothesisFailed, Mismatch, RuleViolated
from .galois import FieldSpec, extension, prime_power
from .lincode import (
    LinearCode,
    dual,
    hermitian_dual,
    intersect,
    subfield_subcode,
)
from .prs import dcode, prs_code, rs_code
from .traceroots import dtr_dual_subcode, trace_hermitian_bound, trace_points

EXACT_BUDGET = 2_000_000

_PROVENANCE = {
    "exact": "exact",
    "lower_bound": "bound",
    "interval": "bound",
    "upper_bound": "search",
}


@dataclass
class EAQECCParams:
    """``[[n, κ, δ; c]]_q`` (or ``δ_z/δ_x``) with the dimensions it was derived from."""

    n: int
    kappa: int
    c: int
    q: str
    k1: int
    k2: int
    construction: str  # css | hermitian | asymmetric
    delta: Optional[DistanceReport] = None
    delta_z: Optional[DistanceReport] = None
    delta_x: Optional[DistanceReport] = None
    recipe: str = "generic"
    certificate: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.c < 0 or self.c > self.k1:
            raise ValueError(f"c = {self.c} outside 0..{self.k1}")
        if self.kappa != self.n - self.k1 - self.k2 + self.c:
            raise ValueError("κ does not match n - k1 - k2 + c")

    @property
    def asymmetric(self) -> bool:
        return self.construction == "asymmetric"

    @property
    def provenance(self) -> dict:
        out = {"n": "exact", "kappa": "exact", "c": "exact"}
        if self.asymmetric:
            out["delta_z"] = _prov(self.delta_z)
            out["delta_x"] = _prov(self.delta_x)
        else:
            out["delta"] = _prov(self.delta)
        return out

    def delta_value(self, which: str = "delta") -> Optional[int]:
        rep = getattr(self, which)
        return None if rep is None else rep.value

    def label(self) -> str:
        base = self.q.split("^")
        qq = int(base[0]) ** int(base[1]) if len(base) == 2 else int(base[0])
        if self.asymmetric:
            d = f"{_show(self.delta_z)}/{_show(self.delta_x)}"
        else:
            d = _show(self.delta)
        return f"[[{self.n},{self.kappa},{d};{self.c}]]_{qq}"

    def to_dict(self) -> dict:
        if self.asymmetric:
            delta = {"z": _delta_dict(self.delta_z), "x": _delta_dict(self.delta_x)}
        else:
            delta = _delta_dict(self.delta)
        return {
            "n": self.n,
            "kappa": self.kappa,
            "delta": delta,
            "c": self.c,
            "q": self.q,
            "recipe": self.recipe,
            "certificate": self.certificate,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), default=_jsonable, **kw)


def _prov(rep: Optional[DistanceReport]) -> str:
    return "bound" if rep is None else _PROVENANCE[rep.kind]


def _show(rep: Optional[DistanceReport]) -> str:
    return "?" if rep is None or rep.value is None else str(rep.value)


def _delta_dict(rep: Optional[DistanceReport]) -> dict:
    if rep is None:
        return {"value": None, "kind": "lower_bound"}
    d = {"value": rep.value, "kind": rep.kind, "method": rep.method}
    if rep.upper is not None:
        d["upper"] = rep.upper
    for key in ("certified_lower", "search_upper"):
        if key in rep.detail:
            d[key] = rep.detail[key]
    return d


def _jsonable(x):
    try:
        return int(x)
    except (TypeError, ValueError):
        return str(x)


def params_from_dict(d: dict) -> EAQECCParams:
    """Rebuild parameters from :meth:`EAQECCParams.to_dict` output (dimensions are implied)."""

    def rep(x):
        if x is None or x.get("value") is None:
            return None
        return DistanceReport(x["value"], x["kind"], x.get("method", "theorem"), upper=x.get("upper"))

    n, kappa, c = d["n"], d["kappa"], d["c"]
    # κ = n - k1 - k2 + c; split symmetrically, which is exact for Hermitian/CSS(C,C).
    ksum = n + c - kappa
    k1 = max(c, (ksum + 1) // 2)
    asym = isinstance(d["delta"], dict) and "z" in d["delta"]
    common = dict(n=n, kappa=kappa, c=c, q=d["q"], k1=k1, k2=ksum - k1,
                  recipe=d.get("recipe", "generic"), certificate=d.get("certificate", {}))
    if asym:
        return EAQECCParams(construction="asymmetric", delta_z=rep(d["delta"]["z"]),
                            delta_x=rep(d["delta"]["x"]), **common)
    return EAQECCParams(construction=d.get("construction", "css"), delta=rep(d["delta"]), **common)


# -- relative weights --------------------------------------------------------------
def relative_weight(
    A: LinearCode,
    B: Optional[LinearCode],
    lower: Optional[int] = None,
    mode: str = "exact",
    budget: int = EXACT_BUDGET,
    seed: int = 0,
    iters: int = 30,
    threads: Optional[int] = None,
) -> DistanceReport:
    """``wt(A \\ (A ∩ B))``.

    ``mode``: ``exact`` tries an exact enumeration when the cheaper method fits
    ``budget`` (falling back to the bound/search bracket otherwise), ``search``
    brackets the certified ``lower`` with a seeded random search, ``bounds``
    only reports ``lower``.
    """
    excl = None if B is None else intersect(A, B)
    if excl is not None and excl.k == 0:
        excl = None
    certified = lower
    if mode == "bounds":
        rep = DistanceReport(lower, "lower_bound", "theorem")
        rep.detail["certified_lower"] = certified
        return rep
    up = random_upper_bound(A, seed=seed, iters=iters, exclude=excl)
    if mode == "exact" and up.value is not None:
        q = A.field.order
        msg = projective_count(q, A.k)
        start = lower or 1
        sup = sum(math.comb(A.n, w) for w in range(start, up.value))
        if min(msg, sup) <= budget:
            if sup <= msg:
                rep = support_min_weight(A, budget=budget, exclude=excl, start=start, upto=up.value - 1)
                if rep.value is None:
                    # nothing lighter than the search witness: it is a minimum
                    rep = DistanceReport(up.value, "exact", "support", witness=up.witness,
                                         work=rep.work + up.work)
            else:
                rep = exhaustive_min_weight(A, budget=budget, threads=threads, exclude=excl)
            if lower is not None and rep.value is not None and rep.value < lower:
                raise AssertionError(f"exact weight {rep.value} below certified bound {lower}")
            rep.detail["search_upper"] = up.value
            if certified is not None:
                rep.detail["certified_lower"] = certified
            return rep
    if mode not in ("exact", "search"):
        raise ValueError(f"unknown distance mode {mode!r}")
    lo = lower if lower is not None else 1
    if up.value is not None and up.value == lo:
        rep = DistanceReport(lo, "exact", "theorem", witness=up.witness, work=up.work)
    else:
        rep = DistanceReport(lo, "interval" if up.value is not None else "lower_bound",
                             "bch+random_search", witness=up.witness, work=up.work, upper=up.value)
    rep.detail["search_upper"] = up.value
    if certified is not None:
        rep.detail["certified_lower"] = certified
    return rep


# -- generic constructions -------------------------------------------------------------
def _field_label(F: FieldSpec) -> str:
    return F.descriptor


def css(
    C1: LinearCode,
    C2: LinearCode,
    lower: Optional[int] = None,
    distance: str = "exact",
    **kw,
) -> EAQECCParams:
    """CSS construction: ``c = k1 - dim(C1 ∩ C2^perp)``, ``κ = n - k1 - k2 + c``."""
    if C1.field != C2.field or C1.n != C2.n:
        raise Mismatch("CSS needs codes over the same field and length")
    D1, D2 = dual(C1), dual(C2)
    c = C1.k - intersect(C1, D2).k
    if distance == "none":
        delta = None
    else:
        rz = relative_weight(D1, C2, lower, distance, **kw)
        rx = rz if C1 == C2 else relative_weight(D2, C1, lower, distance, **kw)
        delta = _min_report(rz, rx)
    return EAQECCParams(
        n=C1.n, kappa=C1.n - C1.k - C2.k + c, c=c, q=_field_label(C1.field),
        k1=C1.k, k2=C2.k, construction="css", delta=delta,
        certificate={"k1": C1.k, "k2": C2.k, "hull": C1.k - c},
    )


def _min_report(a: DistanceReport, b: DistanceReport) -> DistanceReport:
    if a.value is None:
        return b
    if b.value is None:
        return a
    if a.kind == b.kind == "exact":
        return a if a.value <= b.value else b
    lo = min(a.value, b.value)
    ups = [r.value if r.kind == "exact" else r.upper for r in (a, b)]
    ups = [u for u in ups if u is not None]
    up = min(ups) if ups else None
    if up is not None and up == lo:
        rep = DistanceReport(lo, "exact", "theorem")
    elif up is None:
        rep = DistanceReport(lo, "lower_bound", a.method)
    else:
        rep = DistanceReport(lo, "interval", f"{a.method}|{b.method}", upper=up)
    certs = [r.detail["certified_lower"] for r in (a, b) if r.detail.get("certified_lower") is not None]
    if certs:
        rep.detail["certified_lower"] = min(certs)
    return rep


def hermitian(
    C: LinearCode,
    lower: Optional[int] = None,
    distance: str = "exact",
    **kw,
) -> EAQECCParams:
    """Hermitian construction over ``F_{q^2}``: ``c = k - dim(C ∩ C^{perp h})``, ``κ = n - 2k + c``."""
    F = C.field
    H = hermitian_dual(C)  # raises NotSquareOrder
    hull = intersect(C, H)
    c = C.k - hull.k
    delta = None if distance == "none" else relative_weight(H, C, lower, distance, **kw)
    q = F.p ** (F.m // 2)
    p, e = prime_power(q)
    return EAQECCParams(
        n=C.n, kappa=C.n - 2 * C.k + c, c=c, q=f"{p}^{e}",
        k1=C.k, k2=C.k, construction="hermitian", delta=delta,
        certificate={"k": C.k, "hull": hull.k},
    )


def asymmetric(
    C1: LinearCode,
    C2: LinearCode,
    lower_z: Optional[int] = None,
    lower_x: Optional[int] = None,
    distance: str = "exact",
    **kw,
) -> EAQECCParams:
    """Asymmetric CSS: ``δ_z = wt(C1^perp \\ C2)``, ``δ_x = wt(C2^perp \\ C1)``."""
    if C1.field != C2.field or C1.n != C2.n:
        raise Mismatch("asymmetric construction needs codes over the same field and length")
    D1, D2 = dual(C1), dual(C2)
    c = C1.k - intersect(C1, D2).k
    if distance == "none":
        dz = dx = None
    else:
        dz = relative_weight(D1, C2, lower_z, distance, **kw)
        dx = relative_weight(D2, C1, lower_x, distance, **kw)
    return EAQECCParams(
        n=C1.n, kappa=C1.n - C1.k - C2.k + c, c=c, q=_field_label(C1.field),
        k1=C1.k, k2=C2.k, construction="asymmetric", delta_z=dz, delta_x=dx,
        certificate={"k1": C1.k, "k2": C2.k, "dual_dims": [D1.k, D2.k]},
    )


# -- propagation -------------------------------------------------------------------------
def propagate(params: EAQECCParams, s: int, rule: str = "sym") -> EAQECCParams:
    """Apply ``[[n, κ, δ; c]] -> [[n-1, κ, δ; c+1]]`` ``s`` times."""
    if rule not in ("sym", "asym"):
        raise RuleViolated(f"unknown rule {rule!r}")
    if (rule == "asym") != params.asymmetric:
        raise RuleViolated(f"rule {rule!r} does not fit a {params.construction} code")
    if s < 0:
        raise RuleViolated("number of steps must be non-negative")
    n, c = params.n, params.c
    for _ in range(s):
        if c > n - params.kappa - 2:
            raise RuleViolated(f"c = {c} exceeds n - κ - 2 = {n - params.kappa - 2}")
        n, c = n - 1, c + 1
    cert = dict(params.certificate)
    if s:
        cert["propagated"] = cert.get("propagated", 0) + s
    return replace(params, n=n, c=c, certificate=cert)


def max_propagation(params: EAQECCParams) -> int:
    """Largest ``s`` allowed by the rule, ``(n - κ - c) / 2``; then ``c + s = k``."""
    s = (params.n - params.kappa - params.c) // 2
    if params.construction == "hermitian" and params.c + s != params.k1:
        raise AssertionError("propagation depth does not reach c + s = k")
    return s


def propagation_chain(params: EAQECCParams, rule: str = "sym") -> list[EAQECCParams]:
    return [propagate(params, s, rule) for s in range(max_propagation(params) + 1)]


# -- recipe helpers ----------------------------------------------------------------------
def _require_p_divides(N: int, F: FieldSpec) -> None:
    if N % F.p:
        raise HypothesisFailed("p | N", f"p = {F.p}, N = {N}")


def _sum_sizes(ctx: CycloStructure, t: int) -> int:
    return sum(ctx.n(a) for a in ctx.A[: t + 1])


def _check_c_claim(c: int, allowed: set, recipe: str) -> None:
    if c not in allowed:
        raise AssertionError(f"{recipe}: computed c = {c}, theorem guarantees {sorted(allowed)}")


def index_of_min(ctx: CycloStructure, a: int) -> int:
    """Index ``t`` with ``a_t = a``."""
    try:
        return ctx.A.index(a)
    except ValueError:
        raise HypothesisFailed("a_t is a minimal representative", f"{a} is not in A") from None


def _conj_sets(ctx: CycloStructure, upto: int, q: int) -> set[int]:
    """Union of ``I_{-q a_i}`` over ``i <= upto`` (``a = 0`` maps to ``N - 1``)."""
    out: set[int] = set()
    for a in ctx.A[: upto + 1]:
        out |= ctx.I(_red(-q * a, ctx.N))
    return out


# -- recipes -----------------------------------------------------------------------------
def euclidean_hypothesis(delta: DeltaSet, field: FieldSpec) -> dict:
    """Check ``RS(N, Δ'') ⊂ RS(N, Δ'')^perp``; sufficient condition first, then directly."""
    ctx = delta.ctx
    dd = delta.double_prime
    clash = [a for a in ctx.A if ctx.I(a) <= dd and ctx.I(ctx.neg(a)) <= dd]
    if not clash:
        return {"route": "sufficient_condition", "condition": "I_{N-1-a} not in Δ'' for every I_a in Δ''"}
    R = rs_code(ctx.N, dd, field)
    if R.is_subcode_of(dual(R)):
        return {"route": "direct_containment", "clashing_sets": clash}
    raise HypothesisFailed("RS(N,Δ'') ⊂ RS(N,Δ'')^perp", f"sets {clash} pair with their negatives")


def recipe_euclidean(q: int, s: int, N: int, t: int, distance: str = "bounds", **kw) -> EAQECCParams:
    """CSS code from ``C = ((D(N,Δ)^perp)_q)^perp``: ``[[N+1, N+1-2Σn + c, ≥ a_t+2; c]]_q``."""
    pair = extension(q, s)
    F = pair.ext
    _require_p_divides(N, F)
    ctx = cyclotomic_sets(N, q, s)
    delta = delta_consecutive(ctx, t)
    cert = euclidean_hypothesis(delta, F)
    sub = subfield_subcode(dual(dcode(delta, F)), pair)
    C = dual(sub)
    at = ctx.A[t]
    sigma = _sum_sizes(ctx, t)
    res = css(C, C, lower=at + 2, distance=distance, **kw)
    _check_c_claim(res.c, {0, 1}, "euclidean")
    if res.kappa != N + 1 - 2 * sigma + res.c:
        raise AssertionError("κ differs from N + 1 - 2Σn + c")
    cert.update({"sum_sizes": sigma, "a_t": at, "t": t, "dim_C": C.k, "hull": C.k - res.c})
    res.recipe = "euclidean"
    res.certificate = cert
    return res


def affine_euclidean(q: int, s: int, N: int, t: int, distance: str = "bounds", **kw) -> EAQECCParams:
    """Affine comparison: CSS code from ``RS(N, Δ'')_q`` with bound ``a_{t+1} + 1``."""
    pair = extension(q, s)
    ctx = cyclotomic_sets(N, q, s)
    delta = delta_consecutive(ctx, t)
    C = subfield_subcode(rs_code(N, delta.double_prime, pair.ext), pair)
    nxt = ctx.A[t + 1] if t + 1 < len(ctx.A) else N
    res = css(C, C, lower=nxt + 1, distance=distance, **kw)
    res.recipe = "euclidean_affine"
    res.certificate = {"dim_C": C.k}
    return res


def recipe_galois_qecc(q: int, N: int, delta: DeltaSet, s: Optional[int] = None,
                       distance: str = "exact", **kw) -> EAQECCParams:
    """QECC from a Galois-closed ``Δ`` with ``d(Δ) = (N-1)/2``: ``[[N+1, N+1-2|Δ|, ≥ t+1; 0]]_q``."""
    ctx = delta.ctx
    s = ctx.s if s is None else s
    pair = extension(q, s)
    F = pair.ext
    if F.p == 2:
        raise HypothesisFailed("p > 2", f"p = {F.p}")
    if N % 2 == 0:
        raise HypothesisFailed("N odd", f"N = {N}")
    _require_p_divides(N, F)
    if delta.closed != delta.members_set:
        raise HypothesisFailed("Δ is a union of cyclotomic sets", f"Δ = {list(delta.members)}")
    if delta.d != (N - 1) // 2:
        raise HypothesisFailed("d(Δ) = (N-1)/2", f"d(Δ) = {delta.d}")
    C = subfield_subcode(prs_code(N, delta, F), pair)
    self_orth = C.is_subcode_of(dual(C))
    if not self_orth:
        raise AssertionError("PRS(N,Δ)_q is not self-orthogonal")
    run = longest_run(delta.members_set)
    res = css(C, C, lower=run + 1, distance=distance, **kw)
    _check_c_claim(res.c, {0}, "galois_qecc")
    if res.kappa != N + 1 - 2 * len(delta):
        raise AssertionError("κ differs from N + 1 - 2|Δ|")
    res.recipe = "galois_qecc"
    res.certificate = {"route": "self_orthogonal", "size": len(delta), "run": run, "dim_C": C.k}
    return res


def affine_galois(q: int, N: int, members, s: Optional[int] = None,
                  distance: str = "exact", **kw) -> EAQECCParams:
    """CSS code from ``RS(N, Δ)_q`` (affine comparison for the Galois recipe)."""
    ctx = cyclotomic_sets(N, q, s)
    pair = extension(q, ctx.s)
    C = subfield_subcode(rs_code(N, members, pair.ext), pair)
    res = css(C, C, lower=longest_run(members) + 1, distance=distance, **kw)
    res.recipe = "galois_affine"
    res.certificate = {"dim_C": C.k}
    return res


def _perp_of(ctx: CycloStructure, X) -> frozenset[int]:
    return frozenset(a for a in range(ctx.N) if ctx.neg(a) not in X)


def asymmetric_hypothesis(ctx: CycloStructure, d1: int, d2: int) -> bool:
    D1 = delta_range(ctx, d1)
    D2 = delta_range(ctx, d2)
    return _perp_of(ctx, D1.prime_closed) <= D2.prime_closed


def recipe_asymmetric_prs(q: int, s: int, N: int, d1: int, d2: int,
                          distance: str = "exact", **kw) -> EAQECCParams:
    """Asymmetric code from ``C_i = (PRS(N, Δ_{d_i})_q)^perp``."""
    pair = extension(q, s)
    F = pair.ext
    _require_p_divides(N, F)
    ctx = cyclotomic_sets(N, q, s)
    for d in (d1, d2):
        if not 1 <= d <= N - 1 or d not in ctx.B:
            raise HypothesisFailed("d_i in B", f"d = {d} is not a maximal representative")
    P1 = subfield_subcode(prs_code(N, delta_range(ctx, d1), F), pair)
    P2 = subfield_subcode(prs_code(N, delta_range(ctx, d2), F), pair)
    C1, C2 = dual(P1), dual(P2)
    holds = asymmetric_hypothesis(ctx, d1, d2)
    res = asymmetric(C1, C2, lower_z=N - d1 + 1, lower_x=N - d2 + 1, distance=distance, **kw)
    predicted = sum(ctx.n(b) for b in ctx.B if b < d1) + sum(ctx.n(b) for b in ctx.B if b < d2) + 2 - N
    if holds:
        _check_c_claim(res.c, {1}, "asymmetric_prs")
        if res.kappa != predicted:
            raise AssertionError(f"κ = {res.kappa} differs from the closed form {predicted}")
    res.recipe = "asymmetric_prs"
    res.certificate = {
        "route": "hypothesis" if holds else "generic",
        "hypothesis_holds": holds,
        "dims_C1perp_C2perp": [P1.k, P2.k],
        "kappa_closed_form": predicted if holds else None,
    }
    return res


def hermitian_hypothesis(delta: DeltaSet, pair_ext: FieldSpec, pair) -> dict:
    """Check ``RS(N, Δ'')_{q^2} ⊂ (RS(N, Δ'')_{q^2})^{perp h}``."""
    ctx = delta.ctx
    qq = pair.q
    q = math.isqrt(qq)
    if delta.d >= ctx.N - 1:
        raise HypothesisFailed("d(Δ) < N-1", f"d(Δ) = {delta.d}")
    dd = delta.double_prime
    conj = _conj_sets(ctx, delta.t, q)
    if not dd & conj:
        return {"route": "sufficient_condition", "condition": "Δ'' disjoint from the sets I_{-q a_i}"}
    R = subfield_subcode(rs_code(ctx.N, dd, pair_ext), pair)
    if R.is_subcode_of(hermitian_dual(R)):
        return {"route": "direct_containment", "overlap": sorted(dd & conj)}
    raise HypothesisFailed("RS(N,Δ'')_{q^2} ⊂ its Hermitian dual", f"overlap {sorted(dd & conj)}")


def recipe_hermitian(q: int, ell: int, N: int, t: int, distance: str = "bounds", **kw) -> EAQECCParams:
    """Hermitian code from ``C = ((D(N,Δ)^perp)_{q^2})^{perp h}`` with Δ built w.r.t. ``q^2``.

    The code lives over ``F_{q^2}`` and ``D(N, Δ)`` over ``F_{q^{2l}}``.
    """
    pair = extension(q * q, ell)
    F = pair.ext
    _require_p_divides(N, F)
    ctx = cyclotomic_sets(N, q * q, ell)
    delta = delta_consecutive(ctx, t)
    cert = hermitian_hypothesis(delta, F, pair)
    sub = subfield_subcode(dual(dcode(delta, F)), pair)
    C = hermitian_dual(sub)
    at = ctx.A[t]
    sigma = _sum_sizes(ctx, t)
    res = hermitian(C, lower=at + 2, distance=distance, **kw)
    _check_c_claim(res.c, {0, 1}, "hermitian")
    if res.kappa != N + 1 - 2 * sigma + res.c:
        raise AssertionError("κ differs from N + 1 - 2Σn + c")
    cert.update({"sum_sizes": sigma, "a_t": at, "t": t, "dim_C": C.k})
    res.recipe = "hermitian"
    res.certificate = cert
    return res


def recipe_trace_hermitian(q: int, ell: int, t: int, complementary: bool = False,
                           distance: str = "bounds", **kw) -> EAQECCParams:
    """Hermitian code from the trace-root code: ``C = ((D(Tr,Δ)^perp)_{q^2})^{perp h}``."""
    pts = trace_points(q, ell, complementary)
    ctx = pts.cyclo()
    delta = delta_consecutive(ctx, t)
    at = ctx.A[t]
    bound = trace_hermitian_bound(q, ell)
    if at > bound:
        raise HypothesisFailed("a_t within the self-orthogonality bound", f"a_t = {at} > {bound}")
    sub, rep = dtr_dual_subcode(pts, delta, strict=True)
    C = hermitian_dual(sub)
    sigma = _sum_sizes(ctx, t)
    res = hermitian(C, lower=at + 2, distance=distance, **kw)
    _check_c_claim(res.c, {0, 1}, "trace_hermitian")
    if res.kappa < len(pts) - 2 * sigma + res.c:
        raise AssertionError("κ below n - 2Σn + c")
    res.recipe = "trace_hermitian"
    res.certificate = {
        "route": "a_t bound",
        "a_t": at,
        "t": t,
        "bound": bound,
        "sum_sizes": sigma,
        "dim_C": C.k,
        "subcode": rep.to_dict(),
        "complementary": complementary,
    }
    return res

