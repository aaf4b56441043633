import pytest

from hopset.lfsr import LfsrConfig, default_polynomial, generate_m_sequence
from hopset.mapping import FrequencyPlan


def make_mseq(l, p=2, taps=None, seed=None):
    if taps is None:
        taps = default_polynomial(p, l)
    if seed is None:
        seed = (1,) + (0,) * (l - 1)
    return generate_m_sequence(LfsrConfig(p=p, taps=taps, seed=seed))


@pytest.fixture(scope="session")
def ms3():
    """Period-7 sequence 1,0,0,1,0,1,1 from x^3 + x + 1, seed (1,0,0)."""
    return make_mseq(3, taps=(1, 1, 0, 1))


@pytest.fixture(scope="session")
def ms6():
    return make_mseq(6)


@pytest.fixture(scope="session")
def plan_b2():
    return FrequencyPlan(p=2, b=2)


@pytest.fixture(scope="session")
def plan_b3():
    return FrequencyPlan(p=2, b=3)
