"""Cyclotomic sets of Z_N = {0} u Z/(N-1) and exponent-set algebra.

Exponents live in ``{0, ..., N-1}``.  Nonzero classes of Z/(N-1) are
represented by ``{1, ..., N-1}`` (so ``N-1`` stands for the zero class of
Z/(N-1)), while ``0`` is kept apart as its own singleton set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import IndexOutOfRange, InvalidDelta, InvalidN, ShapeError


def _red(z: int, N: int) -> int:
    """Representative of ``z`` (nonzero exponent) in ``{1, ..., N-1}``."""
    r = z % (N - 1)
    return N - 1 if r == 0 else r


def ambient_degree(N: int, q: int, limit: int = 64) -> int:
    """Smallest ``s`` with ``N-1 | q^s - 1``."""
    if N < 2:
        raise InvalidN(f"N must exceed 1, got {N}")
    if N == 2:
        return 1
    x = q % (N - 1)
    for s in range(1, limit + 1):
        if x == 1 % (N - 1):
            return s
        x = x * q % (N - 1)
    raise InvalidN(f"N-1 = {N - 1} divides no q^s - 1 (q={q})")


@dataclass(frozen=True)
class CycloSet:
    a: int
    b: int
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


class CycloStructure:
    """Partition of ``{0, ..., N-1}`` into minimal cyclotomic sets w.r.t. ``q``."""

    def __init__(self, N: int, q: int, s: int | None = None):
        if N < 2:
            raise InvalidN(f"N must exceed 1, got {N}")
        if s is None:
            s = ambient_degree(N, q)
        elif (q**s - 1) % (N - 1):
            raise InvalidN(f"N-1 = {N - 1} does not divide {q}^{s} - 1")
        self.N, self.q, self.s = N, q, s
        owner = [-1] * N
        sets: list[CycloSet] = []
        for z in range(N):
            if owner[z] >= 0:
                continue
            if z == 0:
                mem = [0]
            else:
                mem, y = [], z
                while y not in mem:
                    mem.append(y)
                    y = _red(y * q, N)
            mem.sort()
            for y in mem:
                owner[y] = len(sets)
            sets.append(CycloSet(mem[0], mem[-1], tuple(mem)))
        self.sets: tuple[CycloSet, ...] = tuple(sets)
        self._owner = tuple(owner)

    def __repr__(self) -> str:
        return f"CycloStructure(N={self.N}, q={self.q}, sets={len(self.sets)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CycloStructure) and (self.N, self.q) == (other.N, other.q)

    def __hash__(self) -> int:
        return hash((self.N, self.q))

    @property
    def A(self) -> tuple[int, ...]:
        return tuple(c.a for c in self.sets)

    @property
    def B(self) -> tuple[int, ...]:
        return tuple(sorted(c.b for c in self.sets))

    def set_of(self, z: int) -> CycloSet:
        if not 0 <= z < self.N:
            raise IndexOutOfRange(f"{z} outside 0..{self.N - 1}")
        return self.sets[self._owner[z]]

    def I(self, z: int) -> frozenset[int]:
        return frozenset(self.set_of(z).members)

    def n(self, z: int) -> int:
        return self.set_of(z).size

    def neg(self, z: int) -> int:
        """The exponent ``-z``, i.e. ``N-1-z`` (with ``0 <-> N-1``)."""
        return self.N - 1 - z

    def delta(self, members: Iterable[int]) -> "DeltaSet":
        return DeltaSet(self, frozenset(members))


@dataclass(frozen=True, eq=False)
class DeltaSet:
    ctx: CycloStructure
    members_set: frozenset[int]
    shape_t: int | None = field(default=None, compare=False)

    def __post_init__(self):
        N = self.ctx.N
        if not self.members_set:
            raise InvalidDelta("empty exponent set")
        bad = [z for z in self.members_set if not 0 <= z < N]
        if bad:
            raise InvalidDelta(f"exponents {sorted(bad)} outside 0..{N - 1}")
        if 0 not in self.members_set:
            raise InvalidDelta("0 must belong to the exponent set")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DeltaSet)
            and self.ctx == other.ctx
            and self.members_set == other.members_set
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.members_set))

    def __repr__(self) -> str:
        return f"DeltaSet({list(self.members)})"

    def __contains__(self, z: int) -> bool:
        return z in self.members_set

    def __len__(self) -> int:
        return len(self.members_set)

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members_set))

    @property
    def d(self) -> int:
        return self.members[-1]

    def contains_set(self, z: int) -> bool:
        return self.ctx.I(z) <= self.members_set

    @cached_property
    def prime(self) -> frozenset[int]:
        """Δ' = Δ minus its largest exponent."""
        return self.members_set - {self.d}

    @cached_property
    def closed(self) -> frozenset[int]:
        """Union of the minimal cyclotomic sets wholly contained in Δ."""
        return _closed(self.ctx, self.members_set)

    @cached_property
    def prime_closed(self) -> frozenset[int]:
        return _closed(self.ctx, self.prime)

    @cached_property
    def perp(self) -> frozenset[int]:
        N = self.ctx.N
        return frozenset(a for a in range(N) if N - 1 - a not in self.members_set)

    @cached_property
    def star(self) -> frozenset[int]:
        """Δ* for a consecutive-union Δ built by :func:`delta_consecutive`."""
        if self.shape_t is None:
            t = _detect_shape(self)
            if t is None:
                raise ShapeError("Δ* needs Δ = I_a0 u ... u I_a(t-1) u {a_t}")
        else:
            t = self.shape_t
        ctx = self.ctx
        removed: set[int] = set()
        for a in ctx.A[:t]:
            removed |= ctx.I(ctx.neg(a))
        return frozenset(range(ctx.N)) - removed

    @property
    def t(self) -> int:
        t = self.shape_t if self.shape_t is not None else _detect_shape(self)
        if t is None:
            raise ShapeError("Δ is not a consecutive union of cyclotomic sets plus one exponent")
        return t

    @property
    def double_prime(self) -> frozenset[int]:
        """Δ'' = Δ u I_{a_t}."""
        return self.members_set | self.ctx.I(self.ctx.A[self.t])

    def derives(self) -> dict:
        out = {
            "d": self.d,
            "prime": sorted(self.prime),
            "closed": sorted(self.closed),
            "perp": sorted(self.perp),
        }
        try:
            out["star"] = sorted(self.star)
        except ShapeError:
            out["star"] = None
        return out


def _closed(ctx: CycloStructure, members: frozenset[int]) -> frozenset[int]:
    out: set[int] = set()
    for c in ctx.sets:
        if set(c.members) <= members:
            out.update(c.members)
    return frozenset(out)


def _detect_shape(delta: DeltaSet) -> int | None:
    ctx = delta.ctx
    acc: set[int] = set()
    for t, a in enumerate(ctx.A):
        if frozenset(acc | {a}) == delta.members_set:
            return t
        acc |= ctx.I(a)
        if not acc <= delta.members_set:
            return None
    return None


def cyclotomic_sets(N: int, q: int, s: int | None = None) -> CycloStructure:
    return CycloStructure(N, q, s)


def delta_consecutive(ctx: CycloStructure, t: int) -> DeltaSet:
    """Δ = I_{a_0} u ... u I_{a_{t-1}} u {a_t} ordered by minimal representative."""
    A = ctx.A
    if not 0 <= t < len(A):
        raise IndexOutOfRange(f"t={t} outside 0..{len(A) - 1}")
    mem: set[int] = {A[t]}
    for a in A[:t]:
        mem |= ctx.I(a)
    return DeltaSet(ctx, frozenset(mem), shape_t=t)


def delta_range(ctx: CycloStructure, d: int) -> DeltaSet:
    """Δ_d = {0, ..., d}."""
    if not 0 <= d < ctx.N:
        raise IndexOutOfRange(f"d={d} outside 0..{ctx.N - 1}")
    return DeltaSet(ctx, frozenset(range(d + 1)))


def delta_derives(delta: DeltaSet):
    """Return ``(d, Δ', Δ_I, Δ^perp, Δ*)``; Δ* raises :class:`ShapeError` if undefined."""
    return delta.d, delta.prime, delta.closed, delta.perp, delta.star


def longest_run(values: Iterable[int]) -> int:
    vals = sorted(set(values))
    best = cur = 0
    prev = None
    for v in vals:
        cur = cur + 1 if prev is not None and v == prev + 1 else 1
        best = max(best, cur)
        prev = v
    return best


def consecutive_run(delta: DeltaSet, which: str = "full") -> int:
    """Longest run of consecutive integers in Δ_I (``full``) or (Δ')_I (``primed_closure``)."""
    if which == "full":
        return longest_run(delta.closed)
    if which == "primed_closure":
        return longest_run(delta.prime_closed)
    raise ValueError(f"unknown run kind {which!r}")


def check_biject(delta: DeltaSet, a: int) -> bool:
    """Whether ``I_a ⊂ Δ`` agrees with ``I_{N-1-a} ∩ Δ^perp = ∅``."""
    ctx = delta.ctx
    lhs = delta.contains_set(a)
    rhs = not (ctx.I(ctx.neg(a)) & delta.perp)
    return lhs == rhs


def size_one_degrees(ctx: CycloStructure) -> list[int]:
    out = [c.a for c in ctx.sets if c.size == 1]
    q, N = ctx.q, ctx.N
    if q > 2:
        for lam in range(0, q):
            if (lam * (N - 1)) % (q - 1) == 0:
                d = lam * (N - 1) // (q - 1)
                if d < N and d not in out:
                    raise AssertionError(f"degree {d} should have a singleton set")
    return sorted(out)


_CONSEC = re.compile(r"^consec:t=(\d+)$")
_RANGE = re.compile(r"^range:d=(\d+)$")
_SETS = re.compile(r"^sets:([\d,]+)$")


def parse_delta(ctx: CycloStructure, text: str) -> DeltaSet:
    """Parse ``"0,1,3"``, ``"consec:t=5"``, ``"range:d=14"`` or ``"sets:0,1,4"``.

    ``sets:`` takes the union of the cyclotomic sets containing the listed exponents.
    """
    text = text.strip().replace(" ", "")
    if m := _CONSEC.match(text):
        return delta_consecutive(ctx, int(m.group(1)))
    if m := _RANGE.match(text):
        return delta_range(ctx, int(m.group(1)))
    if m := _SETS.match(text):
        mem: set[int] = set()
        for v in m.group(1).split(","):
            if v:
                mem |= ctx.I(int(v))
        return DeltaSet(ctx, frozenset(mem))
    try:
        vals = [int(v) for v in text.split(",") if v]
    except ValueError:
        raise InvalidDelta(f"cannot parse exponent set {text!r}") from None
    return DeltaSet(ctx, frozenset(vals))


def format_delta(delta: DeltaSet) -> str:
    return ",".join(str(v) for v in delta.members)
