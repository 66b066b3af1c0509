"""Two-color urn processes used as independent oracles for the colored growth runs."""

import enum
from dataclasses import dataclass

import numpy as np


class UrnRule(enum.Enum):
    POLYA = "polya"          # return the drawn ball plus one of the same color
    FRIEDMAN01 = "friedman"  # return the drawn ball plus one of the opposite color


@dataclass(frozen=True)
class UrnState:
    red: int
    blue: int

    @property
    def total(self):
        return self.red + self.blue

    @property
    def red_fraction(self):
        return self.red / self.total


def urn_step(state, rule, rng):
    """Draw once (red with probability red/total) and update by ``rule``."""
    if state.red < 0 or state.blue < 0 or state.total < 1:
        raise ValueError(f"empty or invalid urn: {state}")
    drew_red = rng.randbelow(state.total) < state.red
    if (rule is UrnRule.POLYA) == drew_red:
        return UrnState(state.red + 1, state.blue)
    return UrnState(state.red, state.blue + 1)


def urn_run(state, rule, steps, rng, checkpoints=None):
    """Red fraction after each step listed in ``checkpoints`` (default: every step)."""
    marks = set(range(1, steps + 1) if checkpoints is None else checkpoints)
    out = []
    if 0 in marks:
        out.append(state.red_fraction)
    for n in range(1, steps + 1):
        state = urn_step(state, rule, rng)
        if n in marks:
            out.append(state.red_fraction)
    return np.array(out)


MAX_EXACT_STEPS = 1000


def exact_polya_pmf(state, steps):
    """Exact law of the number of red balls added by ``steps`` Pólya draws.

    Dense dynamic program over (step, red added); returns an array of length
    ``steps + 1``.
    """
    if steps > MAX_EXACT_STEPS:
        raise ValueError(f"steps={steps} exceeds dense DP limit {MAX_EXACT_STEPS}")
    if state.red < 0 or state.blue < 0 or state.total < 1:
        raise ValueError(f"empty or invalid urn: {state}")
    pmf = np.zeros(steps + 1)
    pmf[0] = 1.0
    j = np.arange(steps + 1)
    for t in range(steps):
        p_red = (state.red + j[: t + 1]) / (state.total + t)
        nxt = np.zeros(steps + 1)
        nxt[: t + 1] += pmf[: t + 1] * (1.0 - p_red)
        nxt[1 : t + 2] += pmf[: t + 1] * p_red
        pmf = nxt
    return pmf
