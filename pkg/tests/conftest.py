import pytest

from susyspectra.analysis import solve_morse, solve_pt
from susyspectra.potentials import MorseParams, PTParams


@pytest.fixture(scope="session")
def morse_params():
    return MorseParams(4.5, 1.0)


@pytest.fixture(scope="session")
def pt_params():
    return PTParams(4.0, 1.0)


@pytest.fixture(scope="session")
def morse_shifted_spectrum(morse_params):
    return solve_morse(morse_params, "shifted")


@pytest.fixture(scope="session")
def morse_partner_spectrum(morse_params):
    return solve_morse(morse_params, "partner")


@pytest.fixture(scope="session")
def morse_generalized_spectrum(morse_params):
    return solve_morse(morse_params, "generalized")


@pytest.fixture(scope="session")
def pt_shifted_spectrum(pt_params):
    return solve_pt(pt_params, "shifted")


@pytest.fixture(scope="session")
def pt_partner_spectrum(pt_params):
    return solve_pt(pt_params, "partner")


@pytest.fixture(scope="session")
def pt_generalized_spectrum(pt_params):
    return solve_pt(pt_params, "generalized")
