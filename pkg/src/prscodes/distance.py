"""Minimum-weight computations: exact enumeration, randomized upper bounds, BCH-type lower bounds.

Two exact methods are available.

* Message enumeration walks one message per projective class (leading
  nonzero entry equal to 1).  The generator is split into an ``A`` block
  whose ``q^kA`` codewords are tabulated once and a ``B`` block walked in
  q-ary Gray-code order, so each step adds a single scaled row and then
  scores a whole table of candidates with numpy.
* Support enumeration walks column subsets of a parity-check matrix in
  increasing size and stops at the first size whose columns are dependent.
  It is the cheap choice for codes with small distance and small
  redundancy.

Both accept an ``exclude`` code ``B`` so that the relative weight
``wt(A \\ B)`` needed by quantum constructions is computed exactly.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .cyclo import DeltaSet, consecutive_run
from .errors import BudgetExceeded, Mismatch, ShapeError
from .galois import FieldSpec
from .lincode import LinearCode, dual, null_space, rref

DEFAULT_BUDGET = 2**32
# measured cost of one support-cost unit relative to one message-cost unit
SUPPORT_WEIGHT = 8
_TABLE_TARGET = 1 << 15


@dataclass
class DistanceReport:
    value: Optional[int]
    kind: str  # exact | lower_bound | upper_bound | interval
    method: str  # exhaustive | support | bch | random_search | theorem
    witness: Optional[np.ndarray] = None
    work: int = 0
    upper: Optional[int] = None
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind == "interval" and self.upper is not None and self.value is not None:
            if self.value > self.upper:
                raise ValueError("interval lower end exceeds upper end")

    def to_dict(self) -> dict:
        d = {"value": self.value, "kind": self.kind, "method": self.method, "work": self.work}
        if self.upper is not None:
            d["upper"] = self.upper
        if self.witness is not None:
            d["witness"] = [int(x) for x in self.witness]
        d.update(self.detail)
        return d


def default_threads() -> int:
    env = os.environ.get("PRS_THREADS")
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


# -- helpers -------------------------------------------------------------------------
def _exclusion_check(exclude: Optional[LinearCode], C: LinearCode):
    """Return ``H_B`` (transposed) used to test membership in ``B``, or ``None``."""
    if exclude is None or exclude.k == 0:
        return None
    if exclude.field != C.field or exclude.n != C.n:
        raise Mismatch("excluded code must share field and length")
    H = dual(exclude).gen
    return np.ascontiguousarray(H.T)


def _outside(F: FieldSpec, words: np.ndarray, HT: Optional[np.ndarray]) -> np.ndarray:
    """Boolean mask of rows of ``words`` that are nonzero and not in the excluded code."""
    nz = np.any(words != 0, axis=1)
    if HT is None:
        return nz
    if HT.shape[1] == 0:
        return np.zeros(len(words), dtype=bool)
    syn = F.matmul(words, HT)
    return nz & np.any(syn != 0, axis=1)


def projective_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1) if k else 0


# -- message enumeration ---------------------------------------------------------------
def _all_combinations(F: FieldSpec, G: np.ndarray) -> np.ndarray:
    """Every codeword of the span of ``G`` (one per message, in lexicographic order)."""
    k, n = G.shape
    q = F.order
    words = np.zeros((1, n), dtype=np.int64)
    for i in range(k):
        scaled = F.mul(np.arange(q)[:, None], G[i][None, :])  # (q, n)
        words = F.add(words[None, :, :], scaled[:, None, :]).reshape(-1, n)
    return words


def _gray_changes(q: int, L: int):
    """Yield ``(position, old_index, new_index)`` for a modular q-ary Gray walk of length L."""
    digits = [0] * L
    for c in range(1, q**L):
        j, x = 0, c
        while x % q == 0:
            x //= q
            j += 1
        old = digits[j]
        digits[j] = (old + 1) % q
        yield j, old, digits[j]


class _Best:
    def __init__(self, start: int):
        self.value = start
        self.witness = None

    def offer(self, w: int, word: np.ndarray) -> None:
        if w < self.value:
            self.value = w
            self.witness = word.copy()


def _scan_block(F, words, HT, best: _Best) -> None:
    wts = np.count_nonzero(words, axis=1)
    cand = np.flatnonzero(wts < best.value)
    if cand.size == 0:
        return
    sub = words[cand]
    ok = _outside(F, sub, HT)
    if not ok.any():
        return
    idx = np.flatnonzero(ok)
    i = idx[np.argmin(wts[cand][idx])]
    best.offer(int(wts[cand][i]), sub[i])


def _walk_task(F, GB, table, HT, lead: int, tail_fixed: tuple, floor: int) -> tuple[int, Optional[np.ndarray], int]:
    """Scan messages whose B-part has leading 1 at ``lead`` and prescribed first tail digits."""
    n = GB.shape[1]
    kB = GB.shape[0]
    best = _Best(n + 1)
    base = GB[lead].copy()
    pos = lead + 1
    for v in tail_fixed:
        base = F.add(base, F.mul(v, GB[pos]))
        pos += 1
    free = list(range(pos, kB))
    work = 0
    cur = base
    _scan_block(F, F.add(table, cur[None, :]), HT, best)
    work += len(table)
    if best.value <= floor:
        return best.value, best.witness, work
    for j, old, new in _gray_changes(F.order, len(free)):
        delta = F.sub(new, old)
        cur = F.add(cur, F.mul(delta, GB[free[j]]))
        _scan_block(F, F.add(table, cur[None, :]), HT, best)
        work += len(table)
        if best.value <= floor:
            break
    return best.value, best.witness, work


def exhaustive_min_weight(
    C: LinearCode,
    budget: int = DEFAULT_BUDGET,
    threads: Optional[int] = None,
    exclude: Optional[LinearCode] = None,
    floor: int = 1,
) -> DistanceReport:
    """Exact minimum weight of ``C`` (or of ``C \\ exclude``) by message enumeration.

    ``floor`` is a proven lower bound; the walk stops as soon as it is met.
    """
    F, k, n = C.field, C.k, C.n
    q = F.order
    total = projective_count(q, k)
    if total > budget:
        raise BudgetExceeded(f"{total} message classes exceed budget {budget}")
    HT = _exclusion_check(exclude, C)
    if k == 0:
        return DistanceReport(None, "exact", "exhaustive", work=0, detail={"empty": True})
    G = np.asarray(C.gen)
    kA = 0
    while kA < k and q ** (kA + 1) * n <= _TABLE_TARGET * 32:
        kA += 1
    kA = min(kA, k)
    GA, GB = G[k - kA :], G[: k - kA]
    table = _all_combinations(F, GA)
    best = _Best(n + 1)
    work = 0
    # messages whose B-part is zero: A-part with leading 1 (one per class)
    if kA:
        per_lead = []
        for lead in range(kA):
            rest = _all_combinations(F, GA[lead + 1 :]) if lead + 1 < kA else np.zeros((1, n), dtype=np.int64)
            per_lead.append(F.add(rest, GA[lead][None, :]))
        block = np.vstack(per_lead)
        _scan_block(F, block, HT, best)
        work += len(block)
    kB = k - kA
    tasks = []
    for lead in range(kB):
        rem = kB - lead - 1
        split = min(rem, 2 if rem > 6 else 0)
        for fixed in itertools.product(range(q), repeat=split):
            tasks.append((lead, fixed))
    nthreads = threads or default_threads()
    if tasks and best.value > floor:
        def run(task):
            return _walk_task(F, GB, table, HT, task[0], task[1], floor)

        if nthreads > 1 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=nthreads) as ex:
                results = list(ex.map(run, tasks))
        else:
            results = []
            for task in tasks:
                results.append(run(task))
                if results[-1][0] <= floor:
                    break
        for value, wit, w in results:
            work += w
            if wit is not None:
                best.offer(value, wit)
    if best.witness is None:
        return DistanceReport(None, "exact", "exhaustive", work=work, detail={"empty": True})
    return DistanceReport(best.value, "exact", "exhaustive", witness=best.witness, work=work)


# -- support enumeration -----------------------------------------------------------------
def _batched_deficient(F: FieldSpec, M: np.ndarray) -> np.ndarray:
    """For a batch ``(b, r, w)`` of matrices return a mask of those with rank < w."""
    M = M.copy()
    b, r, w = M.shape
    deficient = np.zeros(b, dtype=bool)
    ar = np.arange(b)
    for j in range(w):
        if j >= r:
            deficient[:] = True
            break
        sub = M[:, j:, j]
        nz = sub != 0
        has = nz.any(axis=1)
        deficient |= ~has
        piv = j + np.argmax(nz, axis=1)
        rows_j = M[ar, j].copy()
        M[ar, j] = M[ar, piv]
        M[ar, piv] = rows_j
        lead = M[:, j, j]
        inv = np.where(lead == 0, 0, F.inv(np.where(lead == 0, 1, lead)))
        M[:, j, :] = F.mul(inv[:, None], M[:, j, :])
        for i in range(r):
            if i == j:
                continue
            f = M[:, i, j]
            if np.any(f):
                M[:, i, :] = F.sub(M[:, i, :], F.mul(f[:, None], M[:, j, :]))
    return deficient


def _combinations_array(n: int, w: int, chunk: int):
    it = itertools.combinations(range(n), w)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), w)


def support_min_weight(
    C: LinearCode,
    budget: int = DEFAULT_BUDGET,
    exclude: Optional[LinearCode] = None,
    start: int = 1,
    chunk: int = 20000,
    upto: Optional[int] = None,
) -> DistanceReport:
    """Exact minimum weight by enumerating supports of increasing size.

    A codeword of weight ``w`` exists iff some ``w`` columns of the parity-check
    matrix ``H`` are dependent.  With ``exclude`` the smallest ``w`` is sought
    whose kernel on some support leaves the excluded code.  ``start`` must be a
    proven lower bound; with ``upto`` the search stops after that size and
    reports ``value=None`` if nothing was found.
    """
    F, n = C.field, C.n
    if C.k == 0:
        return DistanceReport(None, "exact", "support", detail={"empty": True})
    H = dual(C).gen
    r = H.shape[0]
    HT = _exclusion_check(exclude, C)
    if r == 0:
        # full space: a unit vector outside the excluded code, if any
        for i in range(n):
            e = np.zeros(n, dtype=np.int64)
            e[i] = 1
            if _outside(F, e[None, :], HT)[0]:
                return DistanceReport(1, "exact", "support", witness=e, work=i + 1)
        return DistanceReport(None, "exact", "support", work=n, detail={"empty": True})
    work = 0
    last = n if upto is None else min(n, upto)
    for w in range(max(1, start), last + 1):
        count = math.comb(n, w)
        if work + count > budget:
            raise BudgetExceeded(f"support enumeration needs more than {budget} subsets")
        for S in _combinations_array(n, w, chunk):
            work += len(S)
            if w > r:
                mask = np.ones(len(S), dtype=bool)
            else:
                mats = H[:, S].transpose(1, 0, 2)  # (b, r, w)
                mask = _batched_deficient(F, mats)
            for idx in np.flatnonzero(mask):
                cols = S[idx]
                K = null_space(F, H[:, cols], w)
                if K.shape[0] == 0:
                    continue
                words = np.zeros((K.shape[0], n), dtype=np.int64)
                words[:, cols] = K
                ok = _outside(F, words, HT)
                if ok.any():
                    if HT is None:
                        wit = words[np.flatnonzero(ok)[0]]
                    else:
                        wit = _escape_vector(F, words, HT)
                    return DistanceReport(w, "exact", "support", witness=wit, work=work)
    return DistanceReport(None, "exact", "support", work=work, detail={"empty": True})


def _escape_vector(F: FieldSpec, basis: np.ndarray, HT: np.ndarray) -> np.ndarray:
    """A combination of ``basis`` rows that lies outside the excluded code."""
    for row in basis:
        if _outside(F, row[None, :], HT)[0]:
            return row
    raise AssertionError("no basis vector escapes the excluded code")


# -- randomized upper bound --------------------------------------------------------------
def random_upper_bound(
    C: LinearCode,
    seed: int = 0,
    iters: int = 200,
    exclude: Optional[LinearCode] = None,
    pairs: bool = True,
) -> DistanceReport:
    """Best weight among information-set re-encodings (and pairs of their rows)."""
    F, n, k = C.field, C.n, C.k
    if k == 0:
        return DistanceReport(None, "upper_bound", "random_search", detail={"empty": True})
    rng = np.random.default_rng(seed)
    HT = _exclusion_check(exclude, C)
    best = _Best(n + 1)
    work = 0
    G = np.asarray(C.gen)
    _scan_block(F, G, HT, best)
    scalars = np.arange(1, F.order)
    for _ in range(iters):
        perm = rng.permutation(n)
        R, _ = rref(F, G[:, perm])
        inv = np.argsort(perm)
        R = R[:, inv]
        _scan_block(F, R, HT, best)
        work += len(R)
        if pairs and k > 1:
            i, j = np.triu_indices(len(R), 1)
            for a in scalars:
                words = F.add(R[i], F.mul(a, R[j]))
                _scan_block(F, words, HT, best)
                work += len(words)
    value = best.value if best.witness is not None else None
    return DistanceReport(value, "upper_bound", "random_search", witness=best.witness, work=work,
                          detail={"seed": seed, "iters": iters})


# -- BCH-type lower bounds -----------------------------------------------------------------
def bch_lower_bound(delta: DeltaSet, mode: str = "projective_primed") -> DistanceReport:
    """Certified lower bound for the dual of a subfield subcode.

    ``affine``: run in Δ_I plus one.  ``projective_primed``: run in (Δ')_I plus
    one.  ``dcode``/``trace``: ``a_t + 2`` for consecutive-shape Δ.
    """
    if mode == "affine":
        return DistanceReport(consecutive_run(delta, "full") + 1, "lower_bound", "bch")
    if mode == "projective_primed":
        ctx, d = delta.ctx, delta.d
        if d not in ctx.B or not delta.contains_set(d):
            raise ShapeError(f"d(Δ) = {d} must be a maximal representative with I_d inside Δ")
        return DistanceReport(consecutive_run(delta, "primed_closure") + 1, "lower_bound", "bch")
    if mode in ("dcode", "trace"):
        at = delta.ctx.A[delta.t]
        return DistanceReport(at + 2, "lower_bound", "bch")
    raise ShapeError(f"unknown bound mode {mode!r}")


# -- dispatch --------------------------------------------------------------------------------
def message_cost(C: LinearCode) -> int:
    return projective_count(C.field.order, C.k) * C.n


def support_cost(C: LinearCode, up_to: int) -> int:
    r = C.n - C.k
    return sum(math.comb(C.n, w) * max(1, min(w, r)) * max(r, 1) for w in range(1, up_to + 1))


def min_weight(
    C: LinearCode,
    method: str = "auto",
    budget: int = DEFAULT_BUDGET,
    threads: Optional[int] = None,
    exclude: Optional[LinearCode] = None,
    seed: int = 0,
    iters: int = 50,
) -> DistanceReport:
    """Exact minimum (relative) weight, choosing the cheaper exact method when ``auto``."""
    if method == "exhaustive":
        return exhaustive_min_weight(C, budget, threads, exclude)
    if method == "support":
        return support_min_weight(C, budget, exclude)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    up = random_upper_bound(C, seed=seed, iters=iters, exclude=exclude)
    if up.value is None:
        return support_min_weight(C, budget, exclude)
    mc = message_cost(C)
    sc = support_cost(C, up.value)
    if SUPPORT_WEIGHT * sc <= mc:
        rep = support_min_weight(C, budget, exclude)
    else:
        rep = exhaustive_min_weight(C, budget, threads, exclude)
    rep.detail["search_upper"] = up.value
    return rep


def bracket(lower: DistanceReport, upper: DistanceReport) -> DistanceReport:
    if lower.value == upper.value:
        return DistanceReport(lower.value, "exact", "theorem", witness=upper.witness,
                              detail={"lower_method": lower.method, "upper_method": upper.method})
    return DistanceReport(lower.value, "interval", f"{lower.method}+{upper.method}",
                          witness=upper.witness, upper=upper.value)
