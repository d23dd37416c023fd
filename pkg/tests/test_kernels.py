"""Backend equivalence: the compiled kernel and the pure-Python fallback
must be bit-identical on every input, since both are integer-exact.
"""

import numpy as np
import pytest

from fuzzchip import kernels
from fuzzchip.engine import ChipType, create_chip

from helpers import random_compiled

BACKENDS = kernels.available_backends()
needs_compiled = pytest.mark.skipif(
    "compiled" not in BACKENDS, reason="compiled kernel not built"
)


def random_arrays(rng, n_inputs=3, n_outputs=2):
    compiled = random_compiled(rng, n_inputs=n_inputs, n_outputs=n_outputs)
    chip = create_chip("K", ChipType.MINMAX, compiled)
    states = rng.integers(0, 16, size=(200, n_inputs)).astype(np.uint8)
    return chip.ant, chip.con, states


def test_backend_reported():
    assert kernels.BACKEND in ("pure", "compiled")
    assert "pure" in BACKENDS


@needs_compiled
@pytest.mark.parametrize("evaluator", [kernels.minmax_eval, kernels.product_eval])
def test_backends_bit_identical(evaluator):
    rng = np.random.default_rng(99)
    for _ in range(20):
        ant, con, states = random_arrays(rng)
        acts_pure, memb_pure = evaluator(ant, con, states, impl=BACKENDS["pure"])
        acts_fast, memb_fast = evaluator(ant, con, states, impl=BACKENDS["compiled"])
        assert np.array_equal(acts_pure, acts_fast)
        assert np.array_equal(memb_pure, memb_fast)


def test_product_scale_bound():
    rng = np.random.default_rng(17)
    ant, con, states = random_arrays(rng)
    _, memb = kernels.product_eval(ant, con, states)
    assert memb.max() <= kernels.PRODUCT_SCALE


def test_level_range_checked():
    rng = np.random.default_rng(1)
    ant, con, _ = random_arrays(rng)
    bad = np.full((1, ant.shape[1]), 16, dtype=np.uint8)
    with pytest.raises(ValueError):
        kernels.minmax_eval(ant, con, bad)


def test_level_shape_checked():
    rng = np.random.default_rng(2)
    ant, con, _ = random_arrays(rng)
    with pytest.raises(ValueError):
        kernels.minmax_eval(ant, con, np.zeros((4, ant.shape[1] + 1), dtype=np.uint8))
