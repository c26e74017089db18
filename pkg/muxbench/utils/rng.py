"""
Deterministic random sub-streams derived from one master seed.
"""
from typing import List

import numpy as np


def derive_seeds(master: int, count: int) -> List[int]:
    """``count`` independent 32-bit seeds spawned from ``master``."""
    if count < 0:
        raise ValueError("Seed count must be non-negative")
    children = np.random.SeedSequence(master).spawn(count)
    return [int(child.generate_state(1)[0]) for child in children]
