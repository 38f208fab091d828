import pathlib

import pytest

from thabound.channel import ChannelParams, decoy_state, single_photon

DATA_DIR = pathlib.Path(__file__).parent / "data"

# Reference link used throughout: 0.2 dB/km fiber, 12.5% detection
# efficiency, 1% optical error, 1e-5 dark counts, f_EC = 1.2.
REFERENCE_CHANNEL = ChannelParams(alpha_db_per_km=0.2, eta_det=0.125,
                                  e_opt=0.01, p_dark=1e-5, f_ec=1.2)


@pytest.fixture
def channel():
    return REFERENCE_CHANNEL


@pytest.fixture
def sp_source():
    return single_photon()


@pytest.fixture
def decoy_source():
    return decoy_state(0.5)
