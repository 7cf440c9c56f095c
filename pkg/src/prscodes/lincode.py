"""Dense linear codes over finite fields, kept in reduced row-echelon form."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyInput, Mismatch, NotSquareOrder, OutOfRange
from .galois import ExtensionPair, FieldSpec, parse_field


def rref(F: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``M`` over ``F``; zero rows are dropped."""
    M = np.array(M, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise EmptyInput("expected a 2-d matrix")
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        lead = int(M[r, c])
        if lead != 1:
            M[r, c:] = F.mul(M[r, c:], F.inv(lead))
        col = M[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            M[np.ix_(others, np.arange(c, cols))] = F.sub(
                M[others, c:], F.mul(col[others, None], M[r, c:][None, :])
            )
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(F: FieldSpec, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def null_space(F: FieldSpec, M, n: int | None = None) -> np.ndarray:
    """Basis (as rows) of ``{x : M x^T = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    if n is None:
        n = M.shape[1]
    if M.size == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, M)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        out[i, piv] = F.neg(R[:, f])
    return out


class LinearCode:
    """A linear ``[n, k]`` code over ``field`` with canonical RREF generator."""

    __slots__ = ("field", "n", "gen", "pivots")

    def __init__(self, field: FieldSpec, gen: np.ndarray, pivots: Sequence[int], n: int):
        self.field = field
        self.n = n
        self.gen = gen
        self.gen.flags.writeable = False
        self.pivots = tuple(pivots)

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k}]_{self.field.order}"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.n == other.n
            and np.array_equal(self.gen, other.gen)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.n, self.gen.tobytes()))

    def contains(self, v) -> bool:
        v = np.atleast_2d(np.asarray(v, dtype=np.int64))
        return rank(self.field, np.vstack([self.gen, v])) == self.k

    def is_subcode_of(self, other: "LinearCode") -> bool:
        _check_same(self, other)
        return self.k == 0 or other.contains(self.gen)

    def encode(self, msg) -> np.ndarray:
        msg = np.atleast_2d(np.asarray(msg, dtype=np.int64))
        return self.field.matmul(msg, self.gen)

    def parity_check(self) -> np.ndarray:
        return dual(self).gen

    def to_dict(self) -> dict:
        return {
            "field": self.field.descriptor,
            "n": self.n,
            "k": self.k,
            "gen": self.gen.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        return "\n".join(" ".join(str(int(x)) for x in row) for row in self.gen)


def from_rows(field: FieldSpec, rows, n: int | None = None) -> LinearCode:
    """Code spanned by ``rows`` (dependent rows dropped)."""
    M = np.asarray(rows, dtype=np.int64)
    if M.ndim == 1 and M.size == 0:
        if n is None:
            raise EmptyInput("cannot infer length of an empty row list")
        M = M.reshape(0, n)
    if M.ndim != 2:
        raise EmptyInput("rows must form a matrix")
    if n is not None and M.shape[1] != n:
        raise Mismatch(f"rows have length {M.shape[1]}, expected {n}")
    n = M.shape[1]
    if M.shape[0] == 0:
        return LinearCode(field, np.zeros((0, n), dtype=np.int64), (), n)
    if np.any((M < 0) | (M >= field.order)):
        raise OutOfRange(f"entries must be encodings in 0..{field.order - 1}")
    R, piv = rref(field, M)
    return LinearCode(field, np.ascontiguousarray(R), piv, n)


def zero_code(field: FieldSpec, n: int) -> LinearCode:
    return from_rows(field, np.zeros((0, n), dtype=np.int64))


def full_code(field: FieldSpec, n: int) -> LinearCode:
    return from_rows(field, np.eye(n, dtype=np.int64))


def _check_same(C1: LinearCode, C2: LinearCode) -> None:
    if C1.field != C2.field or C1.n != C2.n:
        raise Mismatch(f"{C1!r} and {C2!r} differ in field or length")


def dual(C: LinearCode) -> LinearCode:
    return from_rows(C.field, null_space(C.field, C.gen, C.n), C.n)


def code_sum(C1: LinearCode, C2: LinearCode) -> LinearCode:
    _check_same(C1, C2)
    return from_rows(C1.field, np.vstack([C1.gen, C2.gen]), C1.n)


def intersect(C1: LinearCode, C2: LinearCode) -> LinearCode:
    """``C1 ∩ C2`` computed as ``(C1^perp + C2^perp)^perp``."""
    _check_same(C1, C2)
    return dual(code_sum(dual(C1), dual(C2)))


def embed_code(C: LinearCode, pair: ExtensionPair) -> LinearCode:
    """View a code over the base field as a code over the extension (same rows)."""
    if C.field != pair.base:
        raise Mismatch(f"{C!r} is not over {pair.base!r}")
    return from_rows(pair.ext, pair.embed[C.gen], C.n)


def subfield_subcode(C: LinearCode, pair: ExtensionPair) -> LinearCode:
    """``C ∩ F_q^n`` by expanding each parity check into ``s`` base-field checks."""
    if C.field != pair.ext:
        raise Mismatch(f"{C!r} is not over {pair.ext!r}")
    H = dual(C).gen
    if H.shape[0] == 0:
        return full_code(pair.base, C.n)
    coords = pair.coordinates[H]  # (r, n, s)
    expanded = np.transpose(coords, (0, 2, 1)).reshape(-1, C.n)
    return from_rows(pair.base, null_space(pair.base, expanded, C.n), C.n)


def trace_code(C: LinearCode, pair: ExtensionPair) -> LinearCode:
    """Span of the componentwise traces of ``γ·g`` over a base-field basis ``γ``."""
    if C.field != pair.ext:
        raise Mismatch(f"{C!r} is not over {pair.ext!r}")
    if C.k == 0:
        return zero_code(pair.base, C.n)
    ext = pair.ext
    rows = [pair.trace(ext.mul(gamma, C.gen)) for gamma in pair.basis]
    return from_rows(pair.base, np.vstack(rows), C.n)


def power_code(C: LinearCode, e: int) -> LinearCode:
    """Componentwise ``e``-th power of the code (a Frobenius twist when ``e`` is a power of p)."""
    return from_rows(C.field, C.field.power(C.gen, e), C.n)


def hermitian_dual(C: LinearCode) -> LinearCode:
    """``{v : sum u_i v_i^q = 0 for all u in C}`` over a field of order ``q^2``."""
    F = C.field
    if F.m % 2:
        raise NotSquareOrder(f"{F!r} does not have square order")
    q = F.p ** (F.m // 2)
    return dual(power_code(C, q))


def _check_positions(C: LinearCode, positions: Iterable[int]) -> list[int]:
    pos = sorted(set(int(i) for i in positions))
    if any(not 0 <= i < C.n for i in pos):
        raise OutOfRange(f"positions must lie in 0..{C.n - 1}")
    return pos


def puncture(C: LinearCode, positions: Iterable[int]) -> LinearCode:
    pos = _check_positions(C, positions)
    keep = [i for i in range(C.n) if i not in set(pos)]
    return from_rows(C.field, C.gen[:, keep], len(keep))


def shorten(C: LinearCode, positions: Iterable[int]) -> LinearCode:
    """Codewords vanishing on ``positions``, with those coordinates deleted."""
    pos = _check_positions(C, positions)
    keep = [i for i in range(C.n) if i not in set(pos)]
    if not pos:
        return C
    msgs = null_space(C.field, C.gen[:, pos].T, C.k)
    if msgs.shape[0] == 0:
        return zero_code(C.field, len(keep))
    words = C.field.matmul(msgs, C.gen)
    return from_rows(C.field, words[:, keep], len(keep))


def weights(F: FieldSpec, words) -> np.ndarray:
    return np.count_nonzero(np.asarray(words), axis=-1)


def code_from_dict(d: dict) -> LinearCode:
    F = parse_field(d["field"])
    gen = np.asarray(d["gen"], dtype=np.int64).reshape(-1, int(d["n"]))
    return from_rows(F, gen, int(d["n"]))


def code_from_json(text: str) -> LinearCode:
    return code_from_dict(json.loads(text))


def code_from_text(field: FieldSpec, text: str) -> LinearCode:
    rows = [[int(x) for x in line.split()] for line in text.splitlines() if line.strip()]
    if not rows:
        raise EmptyInput("no rows in matrix text")
    return from_rows(field, rows)


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int | None
    q: int

    def __str__(self) -> str:
        d = "?" if self.d is None else str(self.d)
        return f"[{self.n},{self.k},{d}]_{self.q}"
