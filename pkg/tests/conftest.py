from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from acmpoints.points import PointSet, normalize_vector

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def _raw_factor(rng: random.Random, n: int, spread: int) -> tuple[int, ...]:
    # mostly affine points with small coordinates so projections collide often
    if rng.random() < 0.1:
        v = [0] + [rng.randint(-spread, spread) for _ in range(n)]
        if not any(v):
            v[1] = 1
        return tuple(v)
    return (1,) + tuple(rng.randint(0, spread) for _ in range(n))


def random_point_set(rng: random.Random, dims, npoints: int, spread: int = 3) -> PointSet:
    seen = {}
    tries = 0
    while len(seen) < npoints and tries < 50 * npoints:
        tries += 1
        raw = tuple(_raw_factor(rng, n, spread) for n in dims)
        key = tuple(normalize_vector(f) for f in raw)
        seen.setdefault(key, raw)
    return PointSet.build(dims, list(seen.values()))


DIMS = [(1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2), (1, 1, 1)]


@st.composite
def point_sets(draw, dims_choices=DIMS, max_points: int = 7, spread: int = 3):
    dims = draw(st.sampled_from(dims_choices))
    npts = draw(st.integers(1, max_points))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_point_set(random.Random(seed), dims, npts, spread)


@pytest.fixture
def rng():
    return random.Random(20240611)


# acceptance criteria: one summary line per criterion number
_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, [title, True, 0.0])
    entry[1] = entry[1] and rep.passed
    entry[2] += rep.duration


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, secs = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  [{secs:.2f}s]")
