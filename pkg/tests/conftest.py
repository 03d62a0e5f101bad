import os

from hypothesis import HealthCheck, settings

from artifact import Configuration

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

HALF = "1/2"


def interval():
    return Configuration([[1], [1]])


def knapsack(n=3):
    return Configuration([[1]] * n)


def three_vectors():
    return Configuration([[1, 0], [0, 1], [1, 1]])


def b2():
    """Tetragon configuration with the half-scaled diagonal vectors."""
    return Configuration([[1, 0], [0, 1], ["-1/2", HALF], [HALF, HALF]])


def b2_integral():
    return Configuration([[1, 0], [0, 1], [-1, 1], [1, 1]])


def hexagon():
    return Configuration(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [-1, -1, 1, 1], [1, -1, 0, 1]]
    )


def three_topes():
    return Configuration([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])


def unit_square():
    return Configuration([[1, 0], [0, 1], [1, 0], [0, 1]])


def one_two():
    return Configuration([[1], [2]])


SUITE = {
    "interval": interval,
    "knapsack3": knapsack,
    "three_vectors": three_vectors,
    "b2": b2,
    "b2_integral": b2_integral,
    "hexagon": hexagon,
    "three_topes": three_topes,
    "unit_square": unit_square,
    "one_two": one_two,
}

# configurations with d <= 3 small enough for exhaustive discrete checks
DISCRETE = ["interval", "knapsack3", "three_vectors", "b2_integral", "three_topes", "unit_square", "one_two"]

# tetragon sweep: the tope stays at the one through (1,2) while lambda walks around the origin
RENDER_STATIONS = [
    ((4, 8), {1}),
    ((8, 8), {1}),
    ((8, 4), {1, -1}),
    ((8, -4), {-1}),
    ((4, -8), {-1, 1}),
    ((-4, -8), {1}),
]
