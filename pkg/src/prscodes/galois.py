"""Finite fields GF(p^m) backed by discrete-log tables.

Elements are stored as their canonical integer encoding
``e = c_0 + c_1 p + ... + c_{m-1} p^{m-1}`` where ``c_i`` are the
coefficients of the element in the polynomial basis ``1, x, ..., x^{m-1}``
modulo the Conway polynomial of degree ``m``.  All arithmetic methods of
:class:`FieldSpec` accept Python ints or integer numpy arrays and broadcast.

Because every field is built from its Conway polynomial, the map sending
the canonical primitive element of GF(p^k) to
``g^((p^m - 1)/(p^k - 1))`` in GF(p^m) is a field embedding whenever
``k | m``; :class:`ExtensionPair` relies on this.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources
from typing import Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NoSuchElement,
    NotPrime,
    UnsupportedField,
)

FIELD_CAP = 1 << 16
_ADD_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise :class:`NotPrime` otherwise."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1 or not is_prime(p):
        raise NotPrime(f"{q} is not a prime power")
    return p, e


@lru_cache(maxsize=1)
def _conway_table() -> dict[int, dict[int, tuple[int, ...]]]:
    raw = json.loads(resources.files("prscodes").joinpath("data/conway.json").read_text())
    return {int(p): {int(m): tuple(c) for m, c in row.items()} for p, row in raw.items()}


def conway_polynomial(p: int, m: int) -> tuple[int, ...]:
    """Little-endian coefficients of the Conway polynomial C_{p,m}."""
    try:
        return _conway_table()[p][m]
    except KeyError:
        raise UnsupportedField(f"no Conway polynomial shipped for {p}^{m}") from None


# -- polynomials over GF(p), little-endian coefficient lists ----------------
def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, f, p)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: ``gcd(f, x^(p^k) - x) == 1`` for every ``k <= deg(f)/2``."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    h = [0, 1]
    for _ in range(1, m // 2 + 1):
        # h <- h^p mod f
        r = [1]
        base, e = h, p
        while e:
            if e & 1:
                r = _poly_mulmod(r, base, f, p)
            base = _poly_mulmod(base, base, f, p)
            e >>= 1
        h = r
        g = list(h) + [0] * max(0, 2 - len(h))
        g[1] = (g[1] - 1) % p
        if len(_poly_gcd(list(f), _trim(g), p)) > 1:
            return False
    return True


class FieldSpec:
    """The finite field GF(p^m) with Conway modulus.  Use :func:`field_create`."""

    def __init__(self, p: int, m: int, modulus: Sequence[int]):
        self.p = p
        self.m = m
        self.order = p**m
        self.modulus = tuple(int(c) for c in modulus)
        if not is_irreducible(self.modulus, p):
            raise UnsupportedField(f"modulus of {p}^{m} is reducible")
        q1 = self.order - 1
        if m == 1:
            self.generator = (-self.modulus[0]) % p
        else:
            self.generator = p
        exp = np.zeros(2 * max(q1, 1), dtype=np.int64)
        log = np.full(self.order, -1, dtype=np.int64)
        x = 1
        for i in range(q1):
            if log[x] != -1:
                raise UnsupportedField(f"class of x is not primitive in {p}^{m}")
            exp[i] = x
            log[x] = i
            x = self._times_generator(x)
        if x != 1:
            raise UnsupportedField(f"class of x is not primitive in {p}^{m}")
        exp[q1:] = exp[:q1]
        self.exp = exp
        self.log = log
        self.exp.flags.writeable = False
        self.log.flags.writeable = False
        pw = p ** np.arange(m, dtype=np.int64)
        self._powers = pw
        self.digits = (np.arange(self.order, dtype=np.int64)[:, None] // pw) % p
        self.digits.flags.writeable = False
        self._neg = (-self.digits % p) @ pw
        self._add_table = None
        if m > 1 and p != 2 and self.order <= _ADD_TABLE_LIMIT:
            s = (self.digits[:, None, :] + self.digits[None, :, :]) % p
            self._add_table = s @ pw

    def _times_generator(self, x: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return x * self.generator % p
        c = [(x // p**i) % p for i in range(m)]
        top = c[-1]
        c = [0] + c[:-1]
        if top:
            for i in range(m):
                c[i] = (c[i] - top * self.modulus[i]) % p
        return sum(ci * p**i for i, ci in enumerate(c))

    # -- identity ------------------------------------------------------------
    @property
    def descriptor(self) -> str:
        return f"{self.p}^{self.m}"

    def __repr__(self) -> str:
        return f"GF({self.descriptor})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self) -> int:
        return hash((self.p, self.m))

    def __reduce__(self):
        return field_create, (self.p, self.m)

    # -- encoding ------------------------------------------------------------
    def encode(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.m:
            raise ValueError(f"expected {self.m} coefficients")
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs)))

    def decode(self, value: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits[value])

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, int(value))

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    @property
    def primitive(self) -> "FieldElement":
        return FieldElement(self, self.generator)

    def scalar(self, k: int) -> int:
        """Encoding of the integer ``k`` viewed in the prime subfield."""
        return k % self.p

    # -- vectorised arithmetic -------------------------------------------------
    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, b]
        s = (self.digits[a] + self.digits[b]) % self.p
        return s @ self._powers

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        r = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("zero has no inverse")
        return self.exp[(-self.log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, k: int):
        """``a**k`` elementwise; ``0**0 == 1`` and negative ``k`` needs ``a != 0``."""
        a = np.asarray(a, dtype=np.int64)
        k = int(k)
        if k == 0:
            return np.ones_like(a)
        if k < 0 and np.any(a == 0):
            raise DivisionByZero("zero has no inverse")
        e = (self.log[a] * (k % (self.order - 1))) % (self.order - 1)
        return np.where(a == 0, 0, self.exp[e])

    def matmul(self, A, B):
        """Matrix product over the field."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.m == 1:
            return (A @ B) % self.p
        if self.p == 2 and self.order <= 256:
            out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
            for j in range(A.shape[1]):
                out ^= self.mul(A[:, j : j + 1], B[j : j + 1, :])
            return out
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for j in range(A.shape[1]):
            out = self.add(out, self.mul(A[:, j : j + 1], B[j : j + 1, :]))
        return out


@lru_cache(maxsize=None)
def field_create(p: int, m: int = 1) -> FieldSpec:
    """Return GF(p^m) built from its Conway polynomial (cached, deterministic)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise UnsupportedField("extension degree must be positive")
    modulus = conway_polynomial(p, m)
    if p**m > FIELD_CAP:
        raise UnsupportedField(f"{p}^{m} exceeds the {FIELD_CAP}-element cap")
    return FieldSpec(p, m, modulus)


def field_of_order(q: int) -> FieldSpec:
    p, e = prime_power(q)
    return field_create(p, e)


def parse_field(text: str) -> FieldSpec:
    """Parse ``"p^m"`` (or a bare prime power such as ``"9"``)."""
    text = text.strip()
    if "^" in text:
        p, m = text.split("^", 1)
        return field_create(int(p), int(m))
    return field_of_order(int(text))


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise ValueError(f"{self.value} is not an element of {self.field}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.decode(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.scalar(int(other))
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, k: int):
        return self._wrap(self.field.power(self.value, k))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"


class ExtensionPair:
    """GF(q^s) over GF(q), with the Conway-compatible embedding of the base."""

    def __init__(self, base: FieldSpec, ext: FieldSpec):
        if base.p != ext.p or ext.m % base.m:
            raise FieldMismatch(f"{base} is not a subfield of {ext}")
        self.base = base
        self.ext = ext
        self.q = base.order
        self.s = ext.m // base.m
        if base.order == 2 or ext.order == base.order:
            ratio = 1
        else:
            ratio = (ext.order - 1) // (base.order - 1)
        emb = np.zeros(base.order, dtype=np.int64)
        nz = np.arange(1, base.order)
        emb[nz] = ext.exp[(base.log[nz] * ratio) % (ext.order - 1)]
        if base.order == 2:
            emb[1] = 1
        self.embed = emb
        restrict = np.full(ext.order, -1, dtype=np.int64)
        restrict[emb] = np.arange(base.order)
        self.restrict = restrict
        self._check_embedding()

    def _check_embedding(self) -> None:
        base, ext, emb = self.base, self.ext, self.embed
        if base.order <= 256:
            a = np.arange(base.order)[:, None]
            b = np.arange(base.order)[None, :]
            if not np.array_equal(emb[base.mul(a, b)], ext.mul(emb[a], emb[b])):
                raise FieldMismatch("embedding does not respect multiplication")
            if not np.array_equal(emb[base.add(a, b)], ext.add(emb[a], emb[b])):
                raise FieldMismatch("embedding does not respect addition")
        fixed = np.flatnonzero(ext.power(ext.elements(), self.q) == ext.elements())
        if not np.array_equal(np.sort(fixed), np.sort(emb)):
            raise FieldMismatch("embedding image is not the Frobenius-fixed subfield")

    def __repr__(self) -> str:
        return f"ExtensionPair({self.ext!r} / {self.base!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExtensionPair) and (self.base, self.ext) == (other.base, other.ext)

    def __hash__(self) -> int:
        return hash((self.base, self.ext))

    def frobenius(self, x, times: int = 1):
        """``x -> x^(q^times)`` on the extension field."""
        return self.ext.power(x, self.q**times)

    def trace_ext(self, x, degree: int | None = None):
        """Relative trace to GF(q) as an extension-field value.

        ``degree`` restricts the sum to ``x + x^q + ... + x^(q^(degree-1))``,
        which is the trace of GF(q^degree) over GF(q) for elements of that
        subfield.
        """
        degree = self.s if degree is None else degree
        x = np.asarray(x, dtype=np.int64)
        acc = np.zeros_like(x)
        for i in range(degree):
            acc = self.ext.add(acc, self.ext.power(x, self.q**i))
        return acc

    def trace(self, x):
        """Relative trace of extension elements, returned as base-field encodings."""
        t = self.restrict[self.trace_ext(x)]
        if np.any(t < 0):
            raise RuntimeError("trace left the base field")
        return t

    @cached_property
    def basis(self) -> np.ndarray:
        """The GF(q)-basis ``1, g, ..., g^(s-1)`` of the extension (g canonical primitive)."""
        return np.array(
            [int(self.ext.power(self.ext.generator, j)) for j in range(self.s)], dtype=np.int64
        )

    @cached_property
    def coordinates(self) -> np.ndarray:
        """Table ``(ext.order, s)``: coordinates of each element in :attr:`basis`."""
        base, ext, p = self.base, self.ext, self.base.p
        cols = []
        for j in range(self.s):
            for k in range(base.m):
                gamma = self.embed[p**k]
                cols.append(ext.digits[int(ext.mul(gamma, self.basis[j]))])
        M = np.array(cols, dtype=np.int64).T  # m x m over GF(p)
        Minv = _inverse_mod_p(M, p)
        sol = (ext.digits @ Minv.T) % p  # (order, m): index j*base.m + k
        sol = sol.reshape(ext.order, self.s, base.m)
        return sol @ (p ** np.arange(base.m, dtype=np.int64))

    def from_coordinates(self, coords) -> np.ndarray:
        """Inverse of :attr:`coordinates` (last axis holds the ``s`` base coordinates)."""
        coords = np.asarray(coords, dtype=np.int64)
        acc = np.zeros(coords.shape[:-1], dtype=np.int64)
        for j in range(self.s):
            acc = self.ext.add(acc, self.ext.mul(self.embed[coords[..., j]], self.basis[j]))
        return acc


def _inverse_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    n = M.shape[0]
    A = np.concatenate([M % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r, c] % p)
        A[[c, piv]] = A[[piv, c]]
        A[c] = A[c] * pow(int(A[c, c]), -1, p) % p
        for r in range(n):
            if r != c and A[r, c]:
                A[r] = (A[r] - A[r, c] * A[c]) % p
    return A[:, n:]


@lru_cache(maxsize=None)
def extension_pair(base: FieldSpec, ext: FieldSpec) -> ExtensionPair:
    return ExtensionPair(base, ext)


def extension(q: int, s: int) -> ExtensionPair:
    """GF(q^s) over GF(q) for a prime power ``q``."""
    p, e = prime_power(q)
    return extension_pair(field_create(p, e), field_create(p, e * s))


def rel_trace(x: FieldElement, pair: ExtensionPair) -> FieldElement:
    if x.field != pair.ext:
        raise FieldMismatch(f"{x.field} is not {pair.ext}")
    return FieldElement(pair.base, int(pair.trace(x.value)))


def subfield_generator(pair: ExtensionPair, degree: int) -> int:
    """Canonical primitive element of GF(q^degree) inside the extension."""
    if pair.s % degree:
        raise FieldMismatch(f"GF(q^{degree}) is not inside {pair.ext}")
    sub_order = pair.q**degree
    ratio = (pair.ext.order - 1) // (sub_order - 1)
    return int(pair.ext.power(pair.ext.generator, ratio))


@lru_cache(maxsize=None)
def _pick_xi(pair: ExtensionPair, n_a: int) -> int:
    ext = pair.ext
    sub_order = pair.q**n_a
    g_sub = subfield_generator(pair, n_a)
    ks = [k for k in range(1, sub_order) if math.gcd(k, sub_order - 1) == 1]
    cands = np.array([int(ext.power(g_sub, k)) for k in ks], dtype=np.int64)
    tr = pair.trace_ext(cands, degree=n_a)
    ok = cands[tr != 0]
    if ok.size == 0:
        raise NoSuchElement(f"no primitive element of GF(q^{n_a}) with nonzero trace")
    return int(ok.min())


def pick_xi(pair: ExtensionPair, n_a: int) -> FieldElement:
    """Smallest-encoded primitive element of GF(q^n_a) whose trace to GF(q) is nonzero."""
    return FieldElement(pair.ext, _pick_xi(pair, n_a))
