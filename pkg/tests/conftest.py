from datetime import datetime

import pytest

from twomedia import optics, sky, synthesis


@pytest.fixture
def paper():
    return optics.paper_interferometer()


@pytest.fixture
def site():
    return sky.obninsk()


@pytest.fixture
def paper_wind():
    return sky.WindVector.from_degrees(481_500.0, 0.0, 38.84)


@pytest.fixture
def start():
    return sky.epoch_from_local(datetime(1971, 6, 22), 3.0)


@pytest.fixture
def half_hourly(start):
    return synthesis.default_schedule(start)
