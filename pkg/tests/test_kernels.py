import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from swih import KernelKind, KernelSpec, kernel_weight_sum, manhattan_distance, parse_kernel, weight_at
from swih.errors import InvalidKernelError, OutOfRangeError
from swih.kernels import weight_grid

from . import oracle

odd = st.integers(0, 15).map(lambda h: 2 * h + 1)
KINDS = [KernelKind.UNIFORM, KernelKind.MANHATTAN, KernelKind.CHEBYSHEV, KernelKind.GAUSSIAN]


def test_manhattan_distance_examples():
    assert manhattan_distance((3, 4), (1, 1)) == 5
    assert manhattan_distance((6, 6), (6, 6)) == 0
    assert manhattan_distance((0, 0), (2, 5)) == 7


@pytest.mark.parametrize("kind, dx, dy, expected", [
    ("manhattan", 0, 0, 3), ("manhattan", 1, 1, 1), ("manhattan", -1, 0, 2),
    ("chebyshev", 1, 0, 1), ("chebyshev", 0, 0, 2), ("uniform", 1, -1, 1),
])
def test_weight_at_3x3(kind, dx, dy, expected):
    assert weight_at(KernelSpec(kind, 3, 3), dx, dy) == expected


def test_gaussian_weight():
    k = KernelSpec("gaussian", 5, 5, sigma=0.5)
    assert weight_at(k, 0, 0) == 1.0
    assert weight_at(k, 2, 1) == pytest.approx(oracle.gaussian_chebyshev_weight(2, 1, 2, 2, 0.5))
    assert weight_at(k, 1, 0) == pytest.approx(math.exp(-0.25 / 0.5))


def test_chebyshev_non_square_scales_to_larger_extent():
    k = KernelSpec("chebyshev", 9, 3)  # hx=4, hy=1
    assert weight_at(k, 0, 1) == 1      # 1 * 4/1 = 4 -> 5 - 4
    assert weight_at(k, 2, 0) == 3
    assert weight_at(k, 0, 0) == 5


@pytest.mark.parametrize("kw, kh", [(2, 3), (3, 4), (0, 1)])
def test_even_or_empty_kernel_rejected(kw, kh):
    with pytest.raises(InvalidKernelError, match="odd"):
        KernelSpec("manhattan", kw, kh)


def test_offset_out_of_range():
    with pytest.raises(OutOfRangeError):
        weight_at(KernelSpec("manhattan", 3, 3), 2, 0)


@pytest.mark.parametrize("kind, kw, kh, expected", [
    ("manhattan", 3, 3, 15), ("manhattan", 5, 5, 65), ("uniform", 7, 5, 35), ("manhattan", 1, 1, 1),
])
def test_kernel_weight_sum(kind, kw, kh, expected):
    assert kernel_weight_sum(KernelSpec(kind, kw, kh)) == expected


def test_manhattan_5x5_sum_by_enumeration():
    total = sum(oracle.manhattan_weight(dx, dy, 2, 2) for dx in range(-2, 3) for dy in range(-2, 3))
    assert total == 65


def test_parse_kernel():
    assert parse_kernel("gaussian:0.75", 5, 3) == KernelSpec(KernelKind.GAUSSIAN, 5, 3, 0.75)
    assert parse_kernel("Manhattan", 3, 3).kind is KernelKind.MANHATTAN
    with pytest.raises(InvalidKernelError):
        parse_kernel("euclid", 3, 3)
    with pytest.raises(InvalidKernelError):
        parse_kernel("gaussian:-1", 3, 3)


@given(st.sampled_from(KINDS), odd, odd, st.floats(0.1, 5))
def test_symmetry_positivity_decay(kind, kw, kh, sigma):
    k = KernelSpec(kind, kw, kh, sigma)
    g = weight_grid(k)
    assert np.all(g > 0)
    assert np.array_equal(g, g[:, ::-1]) and np.array_equal(g, g[::-1, :])
    # weights never increase moving away from the center along either axis
    assert np.all(np.diff(g[:, k.hx:], axis=1) <= 0)
    assert np.all(np.diff(g[k.hy:, :], axis=0) <= 0)


@given(odd, odd)
def test_manhattan_affine_per_quadrant(kw, kh):
    k = KernelSpec("manhattan", kw, kh)
    apex = k.hx + k.hy + 1
    for dx, dy in itertools.product(range(-k.hx, k.hx + 1), range(-k.hy, k.hy + 1)):
        sx = 1 if dx <= 0 else -1
        sy = 1 if dy <= 0 else -1
        assert weight_at(k, dx, dy) == apex + sx * dx + sy * dy
        assert weight_at(k, dx, dy) == oracle.manhattan_weight(dx, dy, k.hx, k.hy)


@given(st.sampled_from(KINDS), odd, odd)
def test_weight_sum_matches_enumeration(kind, kw, kh):
    k = KernelSpec(kind, kw, kh)
    total = sum(weight_at(k, dx, dy) for dx in range(-k.hx, k.hx + 1) for dy in range(-k.hy, k.hy + 1))
    assert kernel_weight_sum(k) == pytest.approx(total, rel=1e-12)
