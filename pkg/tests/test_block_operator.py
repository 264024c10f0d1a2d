import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reclab import block_operator as bo
from reclab import seqspace
from reclab.errors import LayoutError, WeightOverflowError

from test_seqspace import seq_vectors


def test_block1_is_identity():
    out = bo.apply_block(1, np.array([3.5 - 1j]))
    assert out[0] == 3.5 - 1j


def test_block2_shift_doubles():
    out = bo.apply_block(2, np.array([1.0, 0.0], dtype=complex))
    assert np.allclose(out, [0.0, 2.0])


def test_block2_wrap_weight():
    # wrap weight is 2^{1-2} = 1/2 back onto the first coordinate
    out = bo.apply_block(2, np.array([0.0, 1.0], dtype=complex))
    assert np.allclose(out, [0.5, 0.0])


def test_apply_fixes_delta1():
    layout = seqspace.make_layout(3)
    op = bo.BlockOperator(layout)
    d1 = seqspace.basis_vector(layout, 1, 1)
    assert seqspace.distance(bo.apply(op, d1), d1) == 0.0


def test_apply_linearity_on_block2():
    layout = seqspace.make_layout(2)
    op = bo.BlockOperator(layout)
    x = seqspace.scale(0.25, seqspace.basis_vector(layout, 2, 1))
    expected = seqspace.scale(0.5, seqspace.basis_vector(layout, 2, 2))
    assert seqspace.distance(bo.apply(op, x), expected) == 0.0


def test_apply_on_block3_of_y():
    # block-3 mass 1/8 at position 4 shifts to position 5 with weight 2
    from reclab import counterexample
    layout = seqspace.make_layout(3)
    y = counterexample.build_y(layout)
    out = bo.apply(bo.BlockOperator(layout), y)
    expected = 0.25 * np.eye(6, dtype=complex)[4]  # e_{3,5}/4, 0-based index 4
    assert np.array_equal(out.block(3), expected)


def test_pow_zero_is_identity():
    layout = seqspace.make_layout(4)
    op = bo.BlockOperator(layout)
    rng = np.random.default_rng(0)
    x = seqspace.SeqVector(layout, tuple(
        rng.normal(size=layout.block_dim(k)) + 1j * rng.normal(size=layout.block_dim(k))
        for k in range(1, 5)))
    assert seqspace.distance(bo.apply_pow(op, 0, x), x) == 0.0


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_full_cycle_is_identity(k):
    # weights around the cycle multiply to 2^{k!-1} * 2^{1-k!} = 1
    n = math.factorial(k)
    rng = np.random.default_rng(k)
    b = rng.normal(size=n) + 1j * rng.normal(size=n)
    out = bo.apply_pow_block(k, n, b)
    assert np.linalg.norm(out - b) <= 1e-12 * np.linalg.norm(b)


def test_pow_three_steps_block3():
    # e_{3,4} -> e_{3,5} -> e_{3,6} -> e_{3,1}, weights 2 * 2 * 2^{-5} = 1/8
    b = np.zeros(6, dtype=complex)
    b[3] = 1.0
    out = bo.apply_pow_block(3, 3, b)
    expected = np.zeros(6, dtype=complex)
    expected[0] = 0.125
    assert np.array_equal(out, expected)


def test_pow_matches_repeated_apply():
    layout = seqspace.make_layout(4)
    op = bo.BlockOperator(layout)
    rng = np.random.default_rng(42)
    x = seqspace.SeqVector(layout, tuple(
        rng.normal(size=layout.block_dim(k)) + 1j * rng.normal(size=layout.block_dim(k))
        for k in range(1, 5)))
    stepped = x
    for ell in range(1, 25):
        stepped = bo.apply(op, stepped)
        direct = bo.apply_pow(op, ell, x)
        err = seqspace.distance(direct, stepped)
        assert err <= 1e-10 * max(1.0, seqspace.norm(stepped))


def test_block_preservation_exact():
    layout = seqspace.make_layout(4)
    op = bo.BlockOperator(layout)
    rng = np.random.default_rng(9)
    x = seqspace.SeqVector(layout, tuple(
        rng.normal(size=layout.block_dim(k)) + 1j * rng.normal(size=layout.block_dim(k))
        for k in range(1, 5)))
    out = bo.apply(op, x)
    for k in range(1, 5):
        assert np.array_equal(out.block(k), bo.apply_block(k, x.block(k)))


def test_overflow_guard_names_k_and_ell():
    # nonzero mass on a coordinate that would carry weight 2^1001
    b = np.zeros(math.factorial(7), dtype=complex)
    b[0] = 1.0
    with pytest.raises(WeightOverflowError) as err:
        bo.apply_pow_block(7, 1001, b)
    assert "k=7" in str(err.value)
    assert "ell=1001" in str(err.value)


def test_overflow_guard_ignores_zero_coordinates():
    # the wrapped weight 2^{l-5040} only touches empty coordinates here
    k = 7
    n = math.factorial(k)
    b = np.zeros(n, dtype=complex)
    b[0] = 1.0
    out = bo.apply_pow_block(k, 6, b)
    assert out[6] == 64.0


def test_wrong_length_refused():
    with pytest.raises(LayoutError):
        bo.apply_block(3, np.zeros(5, dtype=complex))


def test_negative_power_refused():
    layout = seqspace.make_layout(2)
    with pytest.raises(ValueError):
        bo.apply_pow(bo.BlockOperator(layout), -1, seqspace.zeros(layout))


def _adjoint_block(k, b):
    n = math.factorial(k)
    if k == 1:
        return b.copy()
    out = np.empty_like(b)
    out[:-1] = 2.0 * b[1:]
    out[-1] = b[0] * 2.0 ** (1 - n)
    return out


def _power_iteration_norm(k, iters=80, seed=3):
    n = math.factorial(k)
    rng = np.random.default_rng(seed)
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(iters):
        y = _adjoint_block(k, bo.apply_block(k, x))
        lam = np.linalg.norm(y)
        x = y / lam
    return math.sqrt(lam)


@pytest.mark.parametrize("k,expected", [(1, 1.0), (2, 2.0), (3, 2.0), (4, 2.0), (5, 2.0)])
def test_block_norm_against_power_iteration(k, expected):
    assert bo.block_norm(k) == expected
    assert _power_iteration_norm(k) == pytest.approx(expected, abs=1e-10)


@settings(derandomize=True, max_examples=40)
@given(seq_vectors())
def test_operator_norm_bound(x):
    op = bo.BlockOperator(x.layout)
    assert seqspace.norm(bo.apply(op, x)) <= 2.0 * seqspace.norm(x) * (1 + 1e-12) + 1e-12
