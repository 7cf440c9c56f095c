"""Codes evaluated at the zeros of the trace polynomial of GF(q^(2l)) over GF(q), plus infinity."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cyclo import CycloStructure, DeltaSet, cyclotomic_sets
from .errors import DegenerateCode, IndexOutOfRange
from .galois import ExtensionPair, FieldSpec, extension
from .lincode import LinearCode, dual, from_rows, puncture, subfield_subcode


@dataclass(frozen=True, eq=False)
class TracePointSet:
    """Projective points ``[1:α]`` (α a trace root, or a non-root if complementary) then ``[0:1]``."""

    q: int
    ell: int
    complementary: bool
    pair: ExtensionPair
    pair_q2: ExtensionPair
    affine: np.ndarray
    x0: np.ndarray
    x1: np.ndarray

    @property
    def field(self) -> FieldSpec:
        return self.pair.ext

    @property
    def N(self) -> int:
        return len(self.affine)

    def __len__(self) -> int:
        return len(self.affine) + 1

    def cyclo(self) -> CycloStructure:
        """Cyclotomic sets w.r.t. ``q^2`` on ``{0, ..., q^(2l) - 1}``."""
        return cyclotomic_sets(self.q ** (2 * self.ell), self.q**2)


def trace_points(q: int, ell: int, complementary: bool = False) -> TracePointSet:
    if ell < 1:
        raise IndexOutOfRange("l must be positive")
    pair = extension(q, 2 * ell)
    pair_q2 = extension(q * q, ell)
    ext = pair.ext
    elems = ext.elements()
    tr = pair.trace_ext(elems)
    mask = tr != 0 if complementary else tr == 0
    roots = elems[mask]
    x0 = np.ones(len(roots) + 1, dtype=np.int64)
    x0[-1] = 0
    x1 = np.append(roots, 1).astype(np.int64)
    for a in (roots, x0, x1):
        a.flags.writeable = False
    return TracePointSet(q, ell, complementary, pair, pair_q2, roots, x0, x1)


def _monomial(pts: TracePointSet, a0: int, a1: int) -> np.ndarray:
    F = pts.field
    return F.mul(F.power(pts.x0, a0), F.power(pts.x1, a1))


def dtr_code(pts: TracePointSet, delta: DeltaSet) -> LinearCode:
    """``D(Tr, Δ)``: span of ``ev(x0 x1^α)``, ``α in Δ \\ {a_t}``, and ``ev(x1^(a_t))``."""
    at = delta.ctx.A[delta.t]
    rows = [_monomial(pts, 1, a) for a in delta.members if a != at]
    rows.append(_monomial(pts, 0, at))
    return from_rows(pts.field, np.array(rows), len(pts))


def rs_trace_code(pts: TracePointSet, members) -> LinearCode:
    """Affine ``RS(Tr, Δ)``: evaluation of ``x^α`` at the affine points only."""
    F = pts.field
    rows = [F.power(pts.affine, a) for a in sorted(members)]
    return from_rows(F, np.array(rows), pts.N)


@dataclass
class TraceReport:
    n: int
    k: int
    degenerate: bool
    sum_sizes: int
    dim_lower_bound: int
    rs_double_prime_dim: int
    identity_holds: bool
    bch_bound: int
    puncture_matches: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "degenerate": self.degenerate,
            "sum_sizes": self.sum_sizes,
            "dim_lower_bound": self.dim_lower_bound,
            "rs_double_prime_dim_plus_one": self.rs_double_prime_dim + 1,
            "identity_holds": self.identity_holds,
            "bch_bound": self.bch_bound,
            "puncture_matches": self.puncture_matches,
        }


def dtr_dual_subcode(
    pts: TracePointSet, delta: DeltaSet, strict: bool = True
) -> tuple[LinearCode, TraceReport]:
    """``(D(Tr, Δ)^perp)_{q^2}`` together with the checks that accompany it."""
    ctx = delta.ctx
    t = delta.t
    at = ctx.A[t]
    if at >= ctx.N - 1:
        raise IndexOutOfRange(f"a_t = {at} must be below {ctx.N - 1}")
    D = dtr_code(pts, delta)
    sub = subfield_subcode(dual(D), pts.pair_q2)
    degenerate = bool(sub.k == 0 or np.any(np.all(sub.gen == 0, axis=0)))
    if degenerate and strict:
        raise DegenerateCode(f"(D(Tr,Δ)^perp)_q2 has a zero coordinate for a_t = {at}")
    sizes = sum(ctx.n(a) for a in ctx.A[: t + 1])
    rs_dd = subfield_subcode(dual(rs_trace_code(pts, delta.double_prime)), pts.pair_q2)
    punct = puncture(D, [len(pts) - 1]) == rs_trace_code(pts, delta.members_set)
    rep = TraceReport(
        n=len(pts),
        k=sub.k,
        degenerate=degenerate,
        sum_sizes=sizes,
        dim_lower_bound=len(pts) - sizes,
        rs_double_prime_dim=rs_dd.k,
        identity_holds=sub.k == rs_dd.k + 1,
        bch_bound=at + 2,
        puncture_matches=punct,
    )
    return sub, rep


def trace_hermitian_bound(q: int, ell: int) -> int:
    """Largest ``a_t`` allowed by the self-orthogonality hypothesis of the trace recipe."""
    h = (q - 1) // 2
    return q**ell - sum(h * q**j for j in range(1, ell)) - 1
