"""Evaluation codes on the projective line restricted to a multiplicative subgroup.

Points.  For ``N - 1 | Q - 1`` (``Q`` the size of the evaluation field) the
affine set is ``Y_N = [0, ξ^0, ..., ξ^(N-2)]`` with ``ξ = g^((Q-1)/(N-1))``,
and the projective set ``X_N`` lists ``[1:y]`` for ``y in Y_N`` followed by
the point at infinity ``[0:1]``.  Evaluation uses ``0^0 = 1``.

Codes.  ``PRS(N, Δ)`` is spanned by ``ev(x0^(d-i) x1^i)`` for ``i in Δ`` with
``d = max Δ``.  The closed-form subfield-subcode and dual bases below are
lists of :class:`EvalPoly`; every exponent of ``x1`` they contain is taken
modulo ``N - 1`` into ``{1, ..., N-1}``, which is harmless because
``x1^N = x1`` on ``X_N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .cyclo import CycloStructure, DeltaSet, _red, cyclotomic_sets
from .errors import InvalidDelta, InvalidN, Mismatch, PNotDividesN
from .galois import ExtensionPair, FieldSpec, pick_xi, subfield_generator
from .lincode import LinearCode, dual, from_rows, power_code


# -- point sets ---------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class PointSetAffine:
    field: FieldSpec
    N: int
    points: np.ndarray

    def __len__(self) -> int:
        return self.N


@dataclass(frozen=True, eq=False)
class PointSetProjective:
    affine: PointSetAffine
    x0: np.ndarray
    x1: np.ndarray

    @property
    def field(self) -> FieldSpec:
        return self.affine.field

    @property
    def N(self) -> int:
        return self.affine.N

    def __len__(self) -> int:
        return self.N + 1

    def as_pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.x0.tolist(), self.x1.tolist()))


@lru_cache(maxsize=None)
def points(N: int, field: FieldSpec) -> tuple[PointSetAffine, PointSetProjective]:
    """``(Y_N, X_N)`` inside ``field``."""
    Q = field.order
    if N < 2 or (Q - 1) % (N - 1):
        raise InvalidN(f"N-1 = {N - 1} does not divide {Q - 1}")
    step = (Q - 1) // (N - 1)
    ys = np.empty(N, dtype=np.int64)
    ys[0] = 0
    ys[1:] = field.exp[(np.arange(N - 1) * step) % (Q - 1)]
    ys.flags.writeable = False
    aff = PointSetAffine(field, N, ys)
    x0 = np.ones(N + 1, dtype=np.int64)
    x0[-1] = 0
    x1 = np.append(ys, 1).astype(np.int64)
    x0.flags.writeable = False
    x1.flags.writeable = False
    return aff, PointSetProjective(aff, x0, x1)


def eval_monomial(P: PointSetProjective, a0: int, a1: int) -> np.ndarray:
    F = P.field
    return F.mul(F.power(P.x0, a0), F.power(P.x1, a1))


def eval_monomial_affine(Y: PointSetAffine, a: int) -> np.ndarray:
    return Y.field.power(Y.points, a)


# -- polynomials ----------------------------------------------------------------
@dataclass(frozen=True)
class EvalPoly:
    """Bivariate polynomial as ``(coef, a0, a1)`` terms over ``field``."""

    field: FieldSpec
    terms: tuple[tuple[int, int, int], ...]

    @classmethod
    def monomial(cls, field: FieldSpec, a0: int, a1: int, coef: int = 1) -> "EvalPoly":
        return cls(field, ((coef, a0, a1),))

    @property
    def degree(self) -> int:
        return max((a0 + a1 for c, a0, a1 in self.terms if c), default=0)

    @property
    def homogeneous(self) -> bool:
        return len({a0 + a1 for c, a0, a1 in self.terms if c}) <= 1

    def collect(self) -> "EvalPoly":
        acc: dict[tuple[int, int], int] = {}
        for c, a0, a1 in self.terms:
            acc[(a0, a1)] = int(self.field.add(acc.get((a0, a1), 0), c))
        terms = tuple(sorted(((c, a0, a1) for (a0, a1), c in acc.items() if c), key=lambda t: (-t[1], t[2])))
        return EvalPoly(self.field, terms)

    def reduced(self, N: int) -> "EvalPoly":
        """Normal form in the basis ``{1, x0, x1, ..., x1^(N-1)}``."""
        out: list[tuple[int, int, int]] = []
        F = self.field
        for c, a0, a1 in self.terms:
            for c2, b0, b1 in normal_form(a0, a1, N, F).terms:
                out.append((int(F.mul(c, c2)), b0, b1))
        return EvalPoly(F, tuple(out)).collect()

    def evaluate(self, P: PointSetProjective) -> np.ndarray:
        F = self.field
        acc = np.zeros(len(P), dtype=np.int64)
        for c, a0, a1 in self.terms:
            acc = F.add(acc, F.mul(c, eval_monomial(P, a0, a1)))
        return acc

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, a0, a1 in self.terms:
            mono = []
            if a0:
                mono.append("x0" if a0 == 1 else f"x0^{a0}")
            if a1:
                mono.append("x1" if a1 == 1 else f"x1^{a1}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(mono))
            else:
                parts.append(f"{c}*" + "*".join(mono))
        return " + ".join(parts)


def normal_form(a0: int, a1: int, N: int, field: FieldSpec) -> EvalPoly:
    """Class of ``x0^a0 x1^a1`` modulo the vanishing ideal of ``X_N``."""
    if a0 < 0 or a1 < 0:
        raise ValueError("exponents must be non-negative")
    if a0 == 0:
        return EvalPoly(field, ((1, 0, 0 if a1 == 0 else _red(a1, N)),))
    if a1 == 0:
        return EvalPoly(field, ((1, 1, 0),))
    return EvalPoly(field, ((1, 1, 0), (1, 0, _red(a1, N)), (int(field.neg(1)), 0, 0)))


def monomial_inner(alpha: Sequence[int], beta: Sequence[int], N: int, field: FieldSpec) -> tuple[str, int]:
    """Inner product of ``ev(x0^α0 x1^α1)`` and ``ev(x0^β0 x1^β1)`` on ``X_N``.

    Returns ``(case, value)`` where ``case`` is one of ``"N+1"``, ``"N"``,
    ``"N-1"``, ``"1"``, ``"0"`` and ``value`` the field encoding of that integer.
    """
    s0 = alpha[0] + beta[0]
    s1 = alpha[1] + beta[1]
    if s1 == 0:
        case = "N+1" if s0 == 0 else "N"
    elif s1 % (N - 1) == 0:
        case = "N" if s0 == 0 else "N-1"
    else:
        case = "1" if s0 == 0 else "0"
    value = {"N+1": N + 1, "N": N, "N-1": N - 1, "1": 1, "0": 0}[case]
    return case, field.scalar(value)


# -- codes ----------------------------------------------------------------------
def _check_ctx(delta: DeltaSet, pair: ExtensionPair) -> None:
    ctx = delta.ctx
    if ctx.q != pair.q or (pair.ext.order - 1) % (ctx.N - 1):
        raise Mismatch(f"cyclotomic structure (N={ctx.N}, q={ctx.q}) does not fit {pair!r}")


def eval_code(P: PointSetProjective, monomials: Iterable[tuple[int, int]]) -> LinearCode:
    rows = [eval_monomial(P, a0, a1) for a0, a1 in monomials]
    return from_rows(P.field, np.array(rows, dtype=np.int64).reshape(-1, len(P)), len(P))


def eval_code_affine(Y: PointSetAffine, exponents: Iterable[int]) -> LinearCode:
    rows = [eval_monomial_affine(Y, a) for a in exponents]
    return from_rows(Y.field, np.array(rows, dtype=np.int64).reshape(-1, len(Y)), len(Y))


def _members(delta) -> list[int]:
    return sorted(delta.members_set if isinstance(delta, DeltaSet) else set(delta))


def prs_code(N: int, delta, field: FieldSpec) -> LinearCode:
    """``PRS(N, Δ)`` over ``field``."""
    mem = _members(delta)
    if not mem or mem[0] != 0:
        raise InvalidDelta("Δ must contain 0")
    d = mem[-1]
    _, P = points(N, field)
    return eval_code(P, [(d - i, i) for i in mem])


def rs_code(N: int, delta, field: FieldSpec) -> LinearCode:
    """Affine ``RS(N, Δ)`` over ``field`` evaluated on ``Y_N``."""
    Y, _ = points(N, field)
    return eval_code_affine(Y, _members(delta))


def dcode(delta: DeltaSet, field: FieldSpec, check: bool = True) -> LinearCode:
    """``D(N, Δ)`` for ``Δ = I_a0 u ... u I_a(t-1) u {a_t}``.

    With ``check`` and ``p | N`` the result is asserted equal to
    ``PRS(N, Δ*)^perp``.
    """
    N = delta.ctx.N
    at = delta.ctx.A[delta.t]
    _, P = points(N, field)
    mons = [(1, a) for a in delta.members if a != at] + [(0, at)]
    C = eval_code(P, mons)
    if check and N % field.p == 0:
        other = dual(prs_code(N, delta.star, field))
        if other != C:
            raise AssertionError("D(N,Δ) differs from PRS(N,Δ*)^perp")
    return C


# -- closed-form bases --------------------------------------------------------------
def smallest_primitive(pair: ExtensionPair, n: int) -> int:
    """Smallest-encoded primitive element of ``GF(q^n)`` inside the extension."""
    g = subfield_generator(pair, n)
    order = pair.q**n - 1
    F = pair.ext
    return min(int(F.power(g, k)) for k in range(1, order + 1) if math.gcd(k, order) == 1)


def _trace_terms(pair: ExtensionPair, ctx: CycloStructure, coef: int, b: int) -> list[tuple[int, int]]:
    """``(coef^(q^i), b*q^i reduced)`` for ``i < n_b``."""
    F = pair.ext
    out = []
    for i in range(ctx.n(b)):
        c = int(F.power(coef, pair.q**i))
        e = 0 if b == 0 else _red(b * pair.q**i, ctx.N)
        out.append((c, e))
    return out


def homogenized_trace(pair: ExtensionPair, ctx: CycloStructure, coef: int, b: int, d: int) -> EvalPoly:
    terms = []
    for c, e in _trace_terms(pair, ctx, coef, b):
        if e > d:
            raise ValueError(f"trace exponent {e} exceeds homogenization degree {d}")
        terms.append((c, d - e, e))
    return EvalPoly(pair.ext, tuple(terms)).collect()


def primary_basis(delta: DeltaSet, pair: ExtensionPair) -> list[EvalPoly]:
    """Polynomials whose evaluations form a basis of ``PRS(N, Δ)_q``."""
    _check_ctx(delta, pair)
    ctx, d = delta.ctx, delta.d
    full_d = delta.contains_set(d)
    out: list[EvalPoly] = []
    for c in sorted(ctx.sets, key=lambda c: c.b):
        b = c.b
        if not delta.contains_set(b) or (full_d and b >= d):
            continue
        xi = smallest_primitive(pair, c.size)
        for r in range(c.size):
            coef = int(pair.ext.power(xi, r))
            out.append(homogenized_trace(pair, ctx, coef, b, d))
    if full_d:
        out.append(homogenized_trace(pair, ctx, 1, d, d))
    return out


def dim_primary(delta: DeltaSet) -> int:
    ctx, d = delta.ctx, delta.d
    contained = [c for c in ctx.sets if delta.contains_set(c.b)]
    if delta.contains_set(d):
        return sum(c.size for c in contained if c.b < d) + 1
    return sum(c.size for c in contained)


def dual_basis(delta: DeltaSet, pair: ExtensionPair) -> list[EvalPoly]:
    """Polynomials whose evaluations form a basis of ``(PRS(N, Δ)_q)^perp``; needs ``p | N``."""
    _check_ctx(delta, pair)
    ctx, d, N = delta.ctx, delta.d, delta.ctx.N
    if N % pair.ext.p:
        raise PNotDividesN(f"p = {pair.ext.p} does not divide N = {N}")
    F = pair.ext
    perp = delta.perp
    out: list[EvalPoly] = []
    for c in ctx.sets:
        if not set(c.members) & perp:
            continue
        xi = pick_xi(pair, c.size).value
        for r in range(c.size):
            coef = int(F.power(xi, r))
            terms = tuple((cc, 1, e) for cc, e in _trace_terms(pair, ctx, coef, c.a))
            out.append(EvalPoly(F, terms).collect())
    e_ = N - 1 - d
    n_e = ctx.n(e_)
    xi = pick_xi(pair, n_e).value
    rs = range(n_e) if delta.contains_set(d) else [1]
    for r in rs:
        coef = int(F.power(xi, r))
        terms = tuple((cc, 0, e) for cc, e in _trace_terms(pair, ctx, coef, e_))
        out.append(EvalPoly(F, terms).collect())
    return out


def dim_dual(delta: DeltaSet) -> int:
    ctx, d = delta.ctx, delta.d
    s = sum(c.size for c in ctx.sets if set(c.members) & delta.perp)
    return s + (ctx.n(d) if delta.contains_set(d) else 1)


def basis_code(polys: Sequence[EvalPoly], pair: ExtensionPair, N: int) -> LinearCode:
    """Row space of the evaluations of ``polys`` viewed over the base field."""
    _, P = points(N, pair.ext)
    if not polys:
        return from_rows(pair.base, np.zeros((0, N + 1), dtype=np.int64))
    ev = np.array([f.evaluate(P) for f in polys], dtype=np.int64)
    base = pair.restrict[ev]
    if np.any(base < 0):
        raise AssertionError("basis polynomial does not evaluate into the base field")
    return from_rows(pair.base, base, N + 1)


def primary_code(delta: DeltaSet, pair: ExtensionPair) -> LinearCode:
    return basis_code(primary_basis(delta, pair), pair, delta.ctx.N)


def dual_code(delta: DeltaSet, pair: ExtensionPair) -> LinearCode:
    return basis_code(dual_basis(delta, pair), pair, delta.ctx.N)


def galois_invariant(delta: DeltaSet, field: FieldSpec) -> bool:
    """Whether ``PRS(N, Δ_I)`` equals its componentwise ``q``-th power."""
    C = prs_code(delta.ctx.N, delta.closed, field)
    return power_code(C, delta.ctx.q) == C


def structure_for(N: int, pair: ExtensionPair) -> CycloStructure:
    return cyclotomic_sets(N, pair.q, None)
