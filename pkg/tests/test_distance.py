from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prscodes.cyclo import cyclotomic_sets, delta_range
from prscodes.distance import (
    DistanceReport,
    bch_lower_bound,
    bracket,
    exhaustive_min_weight,
    min_weight,
    projective_count,
    random_upper_bound,
    support_min_weight,
)
from prscodes.errors import BudgetExceeded, ShapeError
from prscodes.galois import extension, field_create
from prscodes.lincode import dual, from_rows, intersect, subfield_subcode, zero_code
from prscodes.prs import prs_code


def brute(C, exclude=None):
    F = C.field
    best = None
    for msg in itertools.product(range(F.order), repeat=C.k):
        if not any(msg):
            continue
        w = C.encode(list(msg))[0]
        if exclude is not None and exclude.contains(w):
            continue
        wt = int(np.count_nonzero(w))
        best = wt if best is None else min(best, wt)
    return best


@st.composite
def small_codes(draw):
    p, m = draw(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1)]))
    F = field_create(p, m)
    n = draw(st.integers(2, 9))
    k = draw(st.integers(1, min(n, 4)))
    rng = np.random.default_rng(draw(st.integers(0, 2**31)))
    C = from_rows(F, rng.integers(0, F.order, size=(k, n)), n)
    if C.k == 0:
        C = from_rows(F, np.ones((1, n), dtype=np.int64))
    return C


def dual_subcode(q, s, N, d):
    pair = extension(q, s)
    D = delta_range(cyclotomic_sets(N, q, s), d)
    return D, dual(subfield_subcode(prs_code(N, D, pair.ext), pair))


def primary_subcode(q, s, N, d):
    pair = extension(q, s)
    D = delta_range(cyclotomic_sets(N, q, s), d)
    return subfield_subcode(prs_code(N, D, pair.ext), pair)


class TestAgainstBruteForce:
    @settings(max_examples=40)
    @given(small_codes())
    def test_all_methods_agree(self, C):
        d = brute(C)
        assert exhaustive_min_weight(C, threads=1).value == d
        assert support_min_weight(C).value == d
        assert min_weight(C).value == d
        assert random_upper_bound(C, iters=5).value >= d

    @settings(max_examples=30)
    @given(small_codes(), st.data())
    def test_relative_weight(self, C, data):
        rows = data.draw(st.integers(0, C.k - 1))
        sub = from_rows(C.field, C.gen[:rows], C.n) if rows else zero_code(C.field, C.n)
        excl = None if sub.k == 0 else sub
        d = brute(C, excl)
        assert exhaustive_min_weight(C, threads=1, exclude=excl).value == d
        assert support_min_weight(C, exclude=excl).value == d
        up = random_upper_bound(C, iters=5, exclude=excl)
        assert d is None or up.value is None or up.value >= d
        if up.witness is not None and excl is not None:
            assert not excl.contains(up.witness)


class TestKnownCodes:
    @pytest.mark.parametrize(
        "q,s,N,d,nk,dist",
        [
            (3, 2, 9, 3, (10, 2), 7),
            (3, 2, 9, 4, (10, 4), 6),
        ],
    )
    def test_primary(self, q, s, N, d, nk, dist):
        C = primary_subcode(q, s, N, d)
        assert (C.n, C.k) == nk
        assert exhaustive_min_weight(C).value == dist

    def test_dual_17_13(self):
        pair = extension(4, 2)
        ctx = cyclotomic_sets(16, 4)
        D = ctx.delta({0, 1, 4, 10})
        C = dual(subfield_subcode(prs_code(16, D, pair.ext), pair))
        assert (C.n, C.k) == (17, 13)
        rep = support_min_weight(C)
        assert rep.value == 3
        assert C.contains(rep.witness) and np.count_nonzero(rep.witness) == 3
        assert bch_lower_bound(D).value == 3

    def test_class_count_is_projective(self):
        C = primary_subcode(3, 2, 9, 4)
        rep = exhaustive_min_weight(C, floor=0)
        assert rep.work == projective_count(3, 4) == 40

    def test_budget(self):
        _, C = dual_subcode(4, 2, 16, 4)
        with pytest.raises(BudgetExceeded):
            exhaustive_min_weight(C, budget=1000)
        with pytest.raises(BudgetExceeded):
            support_min_weight(C, budget=5)

    def test_empty_code(self):
        Z = zero_code(field_create(2, 1), 4)
        assert exhaustive_min_weight(Z).value is None
        assert support_min_weight(Z).value is None
        assert random_upper_bound(Z).value is None


class TestRandomSearch:
    def test_deterministic(self):
        _, C = dual_subcode(4, 2, 16, 4)
        a = random_upper_bound(C, seed=7, iters=10)
        b = random_upper_bound(C, seed=7, iters=10)
        assert a.value == b.value and np.array_equal(a.witness, b.witness)
        assert C.contains(a.witness)

    def test_upper_bounds_exact(self):
        _, C = dual_subcode(4, 2, 16, 4)
        exact = support_min_weight(C).value
        for seed in range(3):
            assert random_upper_bound(C, seed=seed, iters=5).value >= exact


class TestBounds:
    def test_modes(self):
        ctx = cyclotomic_sets(16, 4)
        D = ctx.delta({0, 1, 2, 4, 8, 10})
        assert bch_lower_bound(D, "projective_primed").value == 4
        assert bch_lower_bound(D, "affine").value == 4
        with pytest.raises(ShapeError):
            bch_lower_bound(D, "nope")

    @pytest.mark.parametrize("q,s,N", [(4, 2, 16), (3, 2, 9), (2, 4, 16)])
    def test_bound_is_sound(self, q, s, N):
        ctx = cyclotomic_sets(N, q, s)
        for d in ctx.B[1:-1]:
            D, C = dual_subcode(q, s, N, d)
            assert min_weight(C).value >= bch_lower_bound(D).value

    def test_hypothesis_enforced(self):
        ctx = cyclotomic_sets(16, 4)
        with pytest.raises(ShapeError):
            bch_lower_bound(delta_range(ctx, 1))  # 1 is not a maximal representative

    def test_bracket(self):
        lo = DistanceReport(5, "lower_bound", "bch")
        assert bracket(lo, DistanceReport(5, "upper_bound", "random_search")).kind == "exact"
        rep = bracket(lo, DistanceReport(7, "upper_bound", "random_search"))
        assert (rep.kind, rep.value, rep.upper) == ("interval", 5, 7)
        with pytest.raises(ValueError):
            DistanceReport(8, "interval", "x", upper=7)

    def test_report_dict(self):
        rep = DistanceReport(3, "exact", "support", witness=np.array([1, 0, 2]), detail={"a": 1})
        assert rep.to_dict() == {"value": 3, "kind": "exact", "method": "support", "work": 0,
                                 "witness": [1, 0, 2], "a": 1}


def test_projective_count():
    assert projective_count(4, 13) == (4**13 - 1) // 3
    assert projective_count(2, 3) == 7


def test_threads_agree():
    _, C = dual_subcode(3, 2, 9, 5)
    one = exhaustive_min_weight(C, threads=1)
    two = exhaustive_min_weight(C, threads=2)
    assert one.value == two.value


def test_exclusion_with_intersection():
    _, C1 = dual_subcode(4, 2, 16, 4)
    _, C2 = dual_subcode(4, 2, 16, 5)
    excl = intersect(C1, C2)
    rep = support_min_weight(C1, exclude=excl)
    assert rep.value is None or not excl.contains(rep.witness)
