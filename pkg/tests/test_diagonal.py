import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ffcount import kernels
from ffcount.diagonal import (
    LimitExceededError,
    WeightedDiagonalSystem,
    bruteforce_distribution,
    count_points_bruteforce,
    count_points_dp,
    count_slice_equal_coords,
    decode_vector,
    distributions_by_length,
    encode_vector,
    homogeneous_equivalence_check,
    normalize_exponents,
    parse_targets,
    solution_distribution,
)
from ffcount.field import field_from_order, make_field

from oracles import (
    DIAG_GF2_LINEAR3_EQ1,
    DIAG_GF3_X2_Y2_EQ0,
    DIAG_GF5_X2_EQ4,
    SLICE_GF3_2X2_EQ2,
    NaiveField,
    naive_diagonal,
)


def test_spec_examples():
    f5, f3, f2 = make_field(5), make_field(3), make_field(2)
    assert count_points_dp(WeightedDiagonalSystem(f5, (2,), (1,), (4,))).count == DIAG_GF5_X2_EQ4
    assert count_points_dp(WeightedDiagonalSystem(f3, (2,), (1, 1), (0,))).count == DIAG_GF3_X2_Y2_EQ0
    assert count_points_bruteforce(WeightedDiagonalSystem(f2, (1,), (1, 1, 1), (1,))).count == DIAG_GF2_LINEAR3_EQ1
    for q in (2, 7, 9):
        f = field_from_order(q)
        for c in range(q):
            assert count_points_dp(WeightedDiagonalSystem(f, (1,), (1,), (c,))).count == 1


def test_vector_encoding_round_trip():
    for q, m in ((3, 2), (7, 3), (4, 1)):
        for idx in range(q**m):
            assert encode_vector(q, decode_vector(q, m, idx)) == idx


@pytest.mark.parametrize("q", [4, 8, 9])
def test_extension_fields_against_naive_model(q):
    f = field_from_order(q)
    nf = NaiveField(f.p, f.s, f.modulus)
    rng = random.Random(q)
    for _ in range(6):
        m = rng.choice((1, 2))
        exps = tuple(sorted(rng.sample(range(1, 6), m)))
        weights = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 3)))
        targets = tuple(rng.randrange(q) for _ in range(m))
        sys_ = WeightedDiagonalSystem(f, exps, weights, targets)
        assert count_points_dp(sys_).count == naive_diagonal(nf, exps, weights, targets)


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.data())
def test_dp_matches_bruteforce(q, data):
    f = field_from_order(q)
    m = data.draw(st.integers(1, 2))
    exps = tuple(sorted(data.draw(st.sets(st.integers(1, 8), min_size=m, max_size=m))))
    weights = tuple(data.draw(st.lists(st.integers(1, 9), min_size=1, max_size=4)))
    targets = tuple(data.draw(st.integers(0, q - 1)) for _ in range(m))
    sys_ = WeightedDiagonalSystem(f, exps, weights, targets)
    assert count_points_dp(sys_).count == count_points_bruteforce(sys_).count


def test_normalize_gf9_exponent_six():
    f = make_field(3, 2)
    for b in range(9):
        sys_ = WeightedDiagonalSystem(f, (6,), (1, 1), (b,))
        norm = normalize_exponents(sys_)
        assert norm.exponents == (2,)
        assert norm.targets == (f.pow(b, 3),)
        assert count_points_bruteforce(sys_).count == count_points_bruteforce(norm).count
        assert count_points_dp(norm).count == count_points_bruteforce(sys_).count


def test_normalize_merges_or_marks_infeasible():
    f = make_field(2, 2)
    for b1, b2 in itertools.product(range(4), repeat=2):
        sys_ = WeightedDiagonalSystem(f, (2, 4), (1, 1), (b1, b2))
        norm = normalize_exponents(sys_)
        brute = count_points_bruteforce(sys_).count
        assert count_points_dp(norm).count == brute
        if norm.infeasible:
            assert brute == 0
        else:
            assert norm.exponents == (1,)


def test_normalize_identity_when_p_does_not_divide():
    f = make_field(7)
    sys_ = WeightedDiagonalSystem(f, (2, 3), (1, 1, 1), (1, 2))
    assert normalize_exponents(sys_) == sys_


def test_slice_count():
    f3 = make_field(3)
    sys_ = WeightedDiagonalSystem(f3, (2,), (1, 1), (2,))
    assert count_slice_equal_coords(sys_).count == SLICE_GF3_2X2_EQ2
    rng = random.Random(5)
    for _ in range(20):
        q = rng.choice((3, 4, 5, 7))
        f = field_from_order(q)
        l = rng.randint(2, 4)
        exps = (rng.randint(1, 4),)
        b = (rng.randrange(q),)
        sys_ = WeightedDiagonalSystem(f, exps, (1,) * l, b)
        restricted = sum(
            1
            for t in itertools.product(range(q), repeat=l)
            if t[0] == t[1] and _sum_pow(f, t, exps[0]) == b[0]
        )
        assert count_slice_equal_coords(sys_).count == restricted
    with pytest.raises(ValueError):
        count_slice_equal_coords(WeightedDiagonalSystem(f3, (2,), (2, 1), (0,)))


def _sum_pow(f, t, d):
    acc = 0
    for x in t:
        acc = f.add(acc, f.pow(x, d))
    return acc


def test_homogeneous_equivalence_examples():
    assert homogeneous_equivalence_check(make_field(7), 3, 2).equal
    assert homogeneous_equivalence_check(make_field(5), 2, 1).equal
    with pytest.raises(ValueError):
        homogeneous_equivalence_check(make_field(3), 3, 2)


def test_domain_restriction():
    f = make_field(7)
    sys_ = WeightedDiagonalSystem(f, (2,), (1, 2, 3), (3,), domain=(1, 2, 5, 5))
    assert sys_.domain == (1, 2, 5)
    assert count_points_dp(sys_).count == count_points_bruteforce(sys_).count
    assert solution_distribution(sys_).sum() == 27


def test_large_counts_switch_to_object_dtype():
    f = make_field(3, 2)
    sys_ = WeightedDiagonalSystem(f, (2,), (1,) * 21, (0,))
    dist = solution_distribution(sys_)
    assert dist.dtype == object
    assert sum(int(x) for x in dist) == 9**21
    last = None
    for l, d in distributions_by_length(f, (2,), 21):
        last = d
    assert [int(x) for x in last] == [int(x) for x in dist]


def test_backends_agree():
    f = make_field(2, 3)
    sys_ = WeightedDiagonalSystem(f, (1, 3), (1, 2, 3, 1), (0, 0))
    a = solution_distribution(sys_, backend="numpy")
    b = solution_distribution(sys_)
    assert np.array_equal(a, b)


def test_limits_and_validation():
    f = make_field(13)
    with pytest.raises(LimitExceededError):
        count_points_dp(WeightedDiagonalSystem(f, (1, 2, 3), (1, 1), (0, 0, 0)), limit=1000)
    with pytest.raises(LimitExceededError):
        count_points_bruteforce(WeightedDiagonalSystem(f, (1,), (1,) * 6, (0,)), limit=10**5)
    with pytest.raises(LimitExceededError):
        solution_distribution(WeightedDiagonalSystem(field_from_order(2 ** 12), (1,), (1,), (0,)))
    with pytest.raises(ValueError):
        WeightedDiagonalSystem(f, (2, 2), (1,), (0, 0))
    with pytest.raises(ValueError):
        WeightedDiagonalSystem(f, (), (1,), ())
    with pytest.raises(ValueError):
        WeightedDiagonalSystem(f, (1,), (), (0,))
    with pytest.raises(ValueError):
        WeightedDiagonalSystem(f, (1,), (0,), (0,))
    with pytest.raises(ValueError):
        WeightedDiagonalSystem(f, (1,), (1,), (13,))
    with pytest.raises(ValueError):
        WeightedDiagonalSystem(f, (1,), (1,), (0, 1))
    assert parse_targets(f, ["3", 4]) == (3, 4)


def test_kernel_backend_reported():
    assert kernels.BACKEND in ("cython", "numpy")
