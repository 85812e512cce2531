from typing import Union

import numpy as np


def spawn_generator(*entropy: int) -> np.random.Generator:
    """Random stream keyed by an entropy tuple, e.g. `(master_seed, trial)`.

    The stream only depends on the tuple, never on the order in which trials are scheduled.
    """
    assert len(entropy) > 0, "At least one entropy value is required."
    assert all(int(e) >= 0 for e in entropy), f"Entropy values must be non-negative, got {entropy}."
    return np.random.default_rng(np.random.SeedSequence([int(e) for e in entropy]))


def as_generator(rng: Union[None, int, np.random.Generator]) -> np.random.Generator:
    """Accept a seed, a Generator, or None (fresh OS entropy) and return a Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)
