import random

import numpy as np
import pytest

from btuples import parse_field
from btuples.bnum import _window_inputs
from btuples.kernels import BACKEND, available_backends


def test_backend_identifies_itself():
    assert BACKEND in ("cython", "python")
    assert "python" in available_backends()


def test_backends_agree_on_random_windows():
    backends = available_backends()
    if len(backends) < 2:
        pytest.skip("compiled kernel not built")
    rng = random.Random(2024)
    for spec in ("quadratic:-1", "quadratic:-163", "cyclotomic:5", "cyclotomic:12"):
        fld = parse_field(spec)
        for _ in range(5):
            lo = rng.randrange(1, 3 * 10**6)
            hi = lo + rng.randrange(0, 10**5)
            inputs = _window_inputs(fld, hi)
            results = {name: fn(lo, hi, *inputs) for name, fn in backends.items()}
            ref = results.pop("python")
            for name, bits in results.items():
                assert np.array_equal(ref, bits), (spec, lo, hi, name)


@pytest.mark.parametrize("name", sorted(available_backends()))
def test_kernel_rejects_bad_windows(name):
    fn = available_backends()[name]
    fld = parse_field("quadratic:-1")
    inputs = _window_inputs(fld, 10)
    with pytest.raises(ValueError):
        fn(0, 10, *inputs)
    with pytest.raises(ValueError):
        fn(9, 5, *inputs)


@pytest.mark.parametrize("name", sorted(available_backends()))
def test_kernel_handles_window_starting_at_one(name):
    # n = 1 has empty factorization and must survive as a member
    fn = available_backends()[name]
    fld = parse_field("cyclotomic:5")
    inputs = _window_inputs(fld, 40)
    bits = fn(1, 40, *inputs)
    assert bits[0] == 1
    assert bits[15] == 1  # 16 = 2**4, order of 2 mod 5 is 4
    assert bits[7] == 0   # 8 = 2**3
