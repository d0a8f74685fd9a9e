"""Canonical tree suites shared by the verification harness and the test suite."""

from __future__ import annotations

from ..games.synthetic import SyntheticTreeConfig

# The default verification suite: 1000 seeded trees cycling through every
# (branching, depth, value-model) combination at desk scale.
SUITE_BRANCHING = (2, 3, 4)
SUITE_DEPTHS = (2, 3, 4, 5, 6)
SUITE_SIZE = 1000
SUITE_INCREMENT_RANGE = 12


def suite_tree_configs(count: int = SUITE_SIZE) -> list[SyntheticTreeConfig]:
    """Deterministic enumeration of the default verification trees."""
    combos = [
        (w, d, correlated)
        for w in SUITE_BRANCHING
        for d in SUITE_DEPTHS
        for correlated in (True, False)
    ]
    configs = []
    for i in range(count):
        w, d, correlated = combos[i % len(combos)]
        configs.append(
            SyntheticTreeConfig(
                seed=i // len(combos),
                w=w,
                depth=d,
                increment_range=SUITE_INCREMENT_RANGE,
                correlated=correlated,
            )
        )
    return configs


def small_tree_configs(
    seeds: int = 20, increment_range: int = 6
) -> list[SyntheticTreeConfig]:
    """Exhaustive-probe suite: every w <= 3, d <= 4 shape, both value models."""
    configs = []
    for w in (1, 2, 3):
        for d in (0, 1, 2, 3, 4):
            for correlated in (True, False):
                for seed in range(seeds):
                    configs.append(
                        SyntheticTreeConfig(
                            seed=seed,
                            w=w,
                            depth=d,
                            increment_range=increment_range,
                            correlated=correlated,
                        )
                    )
    return configs
