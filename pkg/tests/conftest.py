import random
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from subshiftkit.shifts import Subshift, builtin, run_config, iter_points
from subshiftkit.words import EvPeriodicWord

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

EXACT_NAMES = ["even", "sft001", "golden", "full2", "markov3"]
ALL_NAMES = EXACT_NAMES + ["pow2", "ex14"]


# shared instances keep their memo tables across tests
shift = lru_cache(maxsize=None)(builtin)


@pytest.fixture(scope="session")
def shifts():
    return {name: builtin(name) for name in ALL_NAMES}


def convergent_sequence(S, rng: random.Random, max_desc: int = 5, offset: int = 8):
    """Random points agreeing with a random limit on their first ``k + offset`` letters.

    The offset keeps a short stabilization window from locking onto
    balls of points that are still far from the limit.
    """
    start = frozenset([S.machine.start])
    limit = rng.choice(list(iter_points(S, start, max_desc)))
    cache = {}

    def point(k):
        if k not in cache:
            prefix = limit.prefix(k + offset)
            config = run_config(S.machine, start, prefix)
            tails = list(iter_points(S, config, 4))
            cache[k] = rng.choice(tails).prepend(prefix)
        return cache[k]

    return limit, point
