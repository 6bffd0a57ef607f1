"""Deterministic sample generation for the numeric checkers.

splitmix64 is implemented by hand (it is ten lines) so that reports are
bit-reproducible across platforms and languages; the stdlib generator
gives no such cross-implementation guarantee.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_INCREMENT = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

DEFAULT_SEED = _INCREMENT


class SplitMix64:
    """The splitmix64 generator; doubles use the top 53 bits."""

    __slots__ = ("_state",)

    def __init__(self, seed: int = DEFAULT_SEED):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _INCREMENT) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def next_double(self) -> float:
        """Uniform in [0, 1) with 53-bit resolution."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.next_double()


def sample_tx(rng: SplitMix64) -> tuple[float, float]:
    """One (t, x) sample: t uniform in [-3, 3], x uniform in [1/4, 2].

    t is drawn before x; the order is part of the reproducibility
    contract.
    """
    t = rng.uniform(-3.0, 3.0)
    x = rng.uniform(0.25, 2.0)
    return t, x
