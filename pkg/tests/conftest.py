import random

import pytest

from groupoid_invariants.errors import SftValidationError
from groupoid_invariants.sft import SftMatrix, validate


def random_sft(rng: random.Random, max_size: int = 4, max_entry: int = 3) -> SftMatrix:
    """Rejection-sample a valid SFT adjacency matrix."""
    while True:
        n = rng.randint(1, max_size)
        rows = [[rng.randint(0, max_entry) for _ in range(n)] for _ in range(n)]
        try:
            return validate(rows)
        except SftValidationError:
            continue


def random_factor_list(rng: random.Random, max_factors: int = 3,
                       max_size: int = 4, max_entry: int = 3) -> list[SftMatrix]:
    return [random_sft(rng, max_size, max_entry)
            for _ in range(rng.randint(1, max_factors))]


@pytest.fixture
def rng():
    return random.Random(20240811)
