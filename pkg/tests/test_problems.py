import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paramlab.problems import (Kind, ProblemInstance, as_bits, evaluate, evaluate_many, instance_from_descriptor,
                               is_optimum, mask_from_descriptor)


def inst(kind, mask):
    mask = as_bits(mask)
    return ProblemInstance(kind, len(mask), mask)


def all_strings(n):
    return np.array(list(itertools.product((0, 1), repeat=n)), dtype=np.uint8)


@pytest.mark.parametrize("kind, mask, x, expected", [
    ("ridge", "0000", "0000", 4),
    ("ridge", "0000", "1010", 2),
    ("ridge", "0101", "0101", 4),
    ("ridge", "0000", "1100", 6),
    ("ridge", "0000", "1111", 8),
    ("leadingones", "00000", "11010", 2),
    ("leadingones", "00000", "11111", 5),
    ("leadingones", "00000", "01111", 0),
])
def test_evaluate_examples(kind, mask, x, expected):
    assert evaluate(inst(kind, mask), x) == expected


@pytest.mark.parametrize("kind, mask, x, expected", [
    ("ridge", "0000", "1111", True),
    ("leadingones", "0000", "1110", False),
    ("leadingones", "1111", "0000", True),
    ("ridge", "0110", "1001", True),
])
def test_is_optimum_examples(kind, mask, x, expected):
    assert is_optimum(inst(kind, mask), x) is expected


def test_length_mismatch_is_rejected():
    with pytest.raises(ValueError):
        evaluate(ProblemInstance.canonical("ridge", 4), "010")
    with pytest.raises(ValueError):
        evaluate(ProblemInstance.canonical("leadingones", 4), [0, 1, 2, 0])


@pytest.mark.parametrize("kind", list(Kind))
def test_batch_matches_scalar_evaluation(kind):
    rng = np.random.default_rng(3)
    for n in (1, 5, 17, 64):
        instance = ProblemInstance(kind, n, rng.integers(0, 2, n))
        xs = rng.integers(0, 2, size=(300, n), dtype=np.uint8)
        xs[0] = instance.mask ^ 1
        xs[1] = instance.mask
        assert evaluate_many(instance, xs).tolist() == [evaluate(instance, x) for x in xs]


@pytest.mark.parametrize("kind", list(Kind))
def test_xor_invariance_scalar_exhaustive_small(kind):
    for n in range(1, 7):
        xs = all_strings(n)
        canonical = ProblemInstance.canonical(kind, n)
        for a in xs:
            instance = ProblemInstance(kind, n, a)
            for x in xs:
                assert evaluate(instance, x) == evaluate(canonical, x ^ a)


@pytest.mark.parametrize("kind", list(Kind))
def test_xor_invariance_exhaustive_up_to_12(kind):
    for n in range(1, 13):
        xs = all_strings(n)
        reference = evaluate_many(ProblemInstance.canonical(kind, n), xs)
        # row index of x ^ a is index(x) ^ index(a) for the lexicographic enumeration
        idx = np.arange(len(xs))
        for ia, a in enumerate(xs):
            got = evaluate_many(ProblemInstance(kind, n, a), xs)
            assert np.array_equal(got, reference[idx ^ ia])


def test_ridge_structure_exhaustive():
    for n in range(1, 13):
        xs = all_strings(n)
        fit = evaluate_many(ProblemInstance.canonical("ridge", n), xs)
        on_ridge = xs[fit >= n]
        assert len(on_ridge) == n + 1
        expected = {tuple([1] * i + [0] * (n - i)) for i in range(n + 1)}
        assert {tuple(r) for r in on_ridge} == expected
        assert fit.max() == 2 * n and fit.min() == (1 if n > 1 else n)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=2, max_size=60), st.data())
def test_leading_ones_ignores_bits_beyond_first_zero(bits, data):
    x = np.array(bits, dtype=np.uint8)
    instance = ProblemInstance.canonical("leadingones", len(x))
    k = evaluate(instance, x)
    if k + 1 >= len(x):
        return
    pos = data.draw(st.integers(k + 1, len(x) - 1))
    y = x.copy()
    y[pos] ^= 1
    assert evaluate(instance, y) == k


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=40), st.lists(st.integers(0, 1), min_size=40, max_size=40))
def test_optimum_is_mask_complement(mask_bits, x_bits):
    n = len(mask_bits)
    mask = np.array(mask_bits, dtype=np.uint8)
    for kind in Kind:
        instance = ProblemInstance(kind, n, mask)
        assert is_optimum(instance, mask ^ 1)
        x = np.array(x_bits[:n], dtype=np.uint8)
        assert evaluate(instance, x) <= instance.optimum_fitness
        assert is_optimum(instance, x) == np.array_equal(x, mask ^ 1)


def test_mask_descriptors():
    assert not mask_from_descriptor("zeros", 8).any()
    assert mask_from_descriptor("0xA5", 8).tolist() == [1, 0, 1, 0, 0, 1, 0, 1]
    assert mask_from_descriptor("5", 4).tolist() == [0, 1, 0, 1]
    r1 = mask_from_descriptor("random(11)", 50)
    assert np.array_equal(r1, mask_from_descriptor("random(11)", 50))
    assert not np.array_equal(r1, mask_from_descriptor("random(12)", 50))
    with pytest.raises(ValueError):
        mask_from_descriptor("0x1FF", 8)
    instance = instance_from_descriptor({"kind": "LO", "n": 8, "mask": "0xff"})
    assert instance.kind is Kind.LEADING_ONES and is_optimum(instance, "00000000")


def test_instances_are_immutable_and_hashable():
    a = ProblemInstance("ridge", 4, [0, 1, 0, 1])
    b = ProblemInstance(Kind.RIDGE, 4, np.array([0, 1, 0, 1]))
    assert a == b and hash(a) == hash(b)
    assert a != ProblemInstance.canonical("ridge", 4)
    with pytest.raises(ValueError):
        a.mask[0] = 1
