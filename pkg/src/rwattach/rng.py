"""Seeded pseudo-random streams shared bit-for-bit by both simulation backends.

Replica seeds come from :func:`derive_replica_seed`; each replica then owns a
xoshiro256** generator whose four state words are the first four outputs of a
SplitMix64 sequence started at the replica seed.  Bounded integers use
Lemire's multiply-shift method on the upper 32 bits of each output, with
rejection, so they are exactly uniform.
"""

MASK64 = (1 << 64) - 1
MASK32 = (1 << 32) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64_mix(z):
    """SplitMix64 finalizer (a bijection on 64-bit words)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_replica_seed(master_seed, replica_index):
    """Seed of replica ``replica_index``: two finalizer rounds of ``master ^ index``."""
    return splitmix64_mix(splitmix64_mix((master_seed ^ replica_index) & MASK64))


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """Pure-Python xoshiro256** generator.

    Slow, but produces exactly the stream of the compiled core, which is what
    makes the fallback backend a drop-in replacement.
    """

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed):
        x = seed & MASK64
        words = []
        for _ in range(4):
            x = (x + GOLDEN_GAMMA) & MASK64
            words.append(splitmix64_mix(x))
        self.s0, self.s1, self.s2, self.s3 = words

    def next64(self):
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def randbelow(self, n):
        """Uniform integer in ``[0, n)`` for ``1 <= n <= 2**32``."""
        if not 1 <= n <= (1 << 32):
            raise ValueError(f"bound out of range: {n}")
        m = (self.next64() >> 32) * n
        low = m & MASK32
        if low < n:
            threshold = ((1 << 32) - n) % n
            while low < threshold:
                m = (self.next64() >> 32) * n
                low = m & MASK32
        return m >> 32

    def random(self):
        """Uniform double in ``[0, 1)`` with 53 random bits."""
        return (self.next64() >> 11) * (1.0 / (1 << 53))
