import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterext.clusters import (
    ContractViolationError,
    DomainError,
    InvalidSetError,
    core,
    half_line,
    make_extremogram_functional,
    make_max_functional,
    make_sum_functional,
    norm_ball_complement,
)

A1 = half_line(1.0)

# Blocks with many exact zeros, so cores and padding are exercised.
sparse_blocks = st.lists(
    st.one_of(st.just(0.0), st.floats(min_value=0.0, max_value=10.0, allow_nan=False)),
    min_size=1,
    max_size=40,
).map(np.array)


def built_in_functionals():
    return [
        make_sum_functional(lambda x: float(x > 1.0), name="count_gt1"),
        make_sum_functional(lambda x: x * x, name="sum_sq"),
        make_max_functional(),
        make_extremogram_functional(A1, A1, 0),
        make_extremogram_functional(A1, A1, 1),
        make_extremogram_functional(A1, half_line(2.0), 2),
    ]


class TestCore:
    def test_interior_zeros_kept(self):
        x = np.array([0, 1, 2, 0, 0, 3, 0, 1, 0, 0], dtype=float)
        assert np.array_equal(core(x), np.array([1, 2, 0, 0, 3, 0, 1], dtype=float))

    def test_all_zero_block(self):
        assert np.array_equal(core(np.zeros(3)), np.zeros(1))

    def test_nonzero_singleton(self):
        assert np.array_equal(core(np.array([5.0])), np.array([5.0]))

    def test_vector_entries(self):
        x = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]])
        assert np.array_equal(core(x), x[1:2])

    @given(sparse_blocks)
    def test_idempotent(self, x):
        assert np.array_equal(core(core(x)), core(x))


class TestSumFunctional:
    def test_indicator_count(self):
        f = make_sum_functional(lambda x: float(x > 1.0))
        assert f(np.array([0.0, 2.0, 0.0, 3.0])) == 2.0

    def test_zero_block(self):
        f = make_sum_functional(lambda x: x * x)
        assert f(np.zeros(7)) == 0.0

    def test_squares(self):
        f = make_sum_functional(lambda x: x * x)
        assert f(np.array([1.0, 2.0, 3.0])) == 14.0

    def test_phi_contract_checked(self):
        with pytest.raises(ContractViolationError):
            make_sum_functional(lambda x: x + 1.0)


class TestMaxFunctional:
    def test_max(self):
        f = make_max_functional()
        assert f(np.array([0.0, 1.0, 3.0, 2.0])) == 3.0

    def test_zero_block(self):
        assert make_max_functional()(np.zeros(5)) == 0.0

    def test_core_invariance_instance(self):
        f = make_max_functional()
        x = np.array([0.0, 1.0, 3.0, 2.0, 0.0])
        assert f(x) == f(core(x))

    def test_negative_entry_rejected(self):
        with pytest.raises(DomainError):
            make_max_functional()(np.array([-1.0, 2.0]))


class TestExtremogramFunctional:
    def test_adjacent_pair(self):
        f = make_extremogram_functional(A1, A1, 1)
        assert f(np.array([0.0, 1.5, 2.0, 0.0])) == 1.0

    def test_lag_at_block_length_is_empty_sum(self):
        f = make_extremogram_functional(A1, A1, 4)
        assert f(np.array([2.0, 2.0, 2.0, 2.0])) == 0.0

    def test_lag_zero_counts_joint_exceedances(self):
        f = make_extremogram_functional(A1, A1, 0)
        assert f(np.array([1.5, 0.0, 2.0])) == 2.0

    def test_set_must_avoid_zero(self):
        with pytest.raises(InvalidSetError):
            half_line(0.0)
        with pytest.raises(InvalidSetError):
            norm_ball_complement(-1.0)

    @given(sparse_blocks, st.integers(0, 5))
    def test_pair_count_bounded_by_marginal_count(self, x, h):
        f_h = make_extremogram_functional(A1, half_line(2.0), h)
        f_0 = make_extremogram_functional(A1, A1, 0)
        r = len(x)
        count_head = float(np.count_nonzero(x[: max(r - h, 0)] > 1.0))
        assert f_h(x) <= count_head <= f_0(x)


class TestClusterFunctionalContract:
    @pytest.mark.parametrize("f", built_in_functionals(), ids=lambda f: f.name)
    def test_null_blocks(self, f):
        for r in range(1, 201):
            assert f(np.zeros(r)) == 0.0

    @pytest.mark.parametrize("f", built_in_functionals(), ids=lambda f: f.name)
    @settings(max_examples=200)
    @given(x=sparse_blocks, pad_left=st.integers(0, 10), pad_right=st.integers(0, 10))
    def test_core_and_padding_invariance(self, f, x, pad_left, pad_right):
        padded = np.concatenate([np.zeros(pad_left), x, np.zeros(pad_right)])
        assert f(x) == f(core(x))
        assert f(padded) == f(x)
