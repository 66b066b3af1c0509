import numpy as np
import pytest
from scipy import stats

from rwattach import _pycore, core
from rwattach.rng import MASK64, Xoshiro256, derive_replica_seed, splitmix64_mix


def test_splitmix_reference_vector():
    # first output of the reference SplitMix64 generator seeded with 0
    assert splitmix64_mix(0x9E3779B97F4A7C15) == 0xE220A8397B1DCDAF


def test_state_words_are_splitmix_outputs():
    r = Xoshiro256(0)
    assert r.s0 == 0xE220A8397B1DCDAF
    assert r.s1 == 0x6E789E6AA1B965F4
    assert r.s2 == 0x06C45D188009454F
    assert r.s3 == 0xF88BB8A8724C81EC


def test_derive_replica_seed_definition():
    s, i = 0x0123456789ABCDEF, 17
    assert derive_replica_seed(s, i) == splitmix64_mix(splitmix64_mix(s ^ i))


@pytest.mark.parametrize("s", [0, 1, 2**63])
def test_derive_replica_seed_deterministic_and_distinct(s):
    assert derive_replica_seed(s, 0) == derive_replica_seed(s, 0)
    assert derive_replica_seed(s, 0) != derive_replica_seed(s, 1)


def test_distinct_masters_no_collisions():
    rng = np.random.default_rng(5)
    masters = {int(x) for x in rng.integers(0, 2**63, size=10_000, dtype=np.uint64)}
    seeds = {derive_replica_seed(m, 3) for m in masters}
    assert len(seeds) == len(masters)
    assert all(0 <= x <= MASK64 for x in seeds)


def test_backends_share_raw_stream():
    if core.BACKEND != "cython":
        pytest.skip("compiled core not built")
    for seed in (0, 1, 2**64 - 1, 12345):
        assert core.backend.raw_stream(seed, 50) == _pycore.raw_stream(seed, 50)
        assert core.backend.mix64(seed) == splitmix64_mix(seed)


def test_randbelow_uniform():
    r = Xoshiro256(99)
    counts = np.bincount([r.randbelow(7) for _ in range(70_000)], minlength=7)
    assert stats.chisquare(counts).pvalue > 0.001


def test_randbelow_bounds():
    r = Xoshiro256(3)
    assert all(r.randbelow(1) == 0 for _ in range(100))
    with pytest.raises(ValueError):
        r.randbelow(0)
    xs = [r.random() for _ in range(1000)]
    assert min(xs) >= 0.0 and max(xs) < 1.0
