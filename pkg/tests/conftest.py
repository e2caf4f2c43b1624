from pathlib import Path

import pytest

from wtop.monoid import zero_semigroup_monoid
from wtop.mset import regular_act, sub_from_names
from wtop.topology import weak_ideal_topology

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def m3():
    return zero_semigroup_monoid()


@pytest.fixture
def S(m3):
    return m3.subset(["0", "s"])


@pytest.fixture
def jS(m3, S):
    return weak_ideal_topology(m3, S)


@pytest.fixture
def regular(m3):
    return regular_act(m3)


@pytest.fixture
def S_obj(regular):
    """The ideal {0, s} as an M-set in its own right."""
    return sub_from_names(regular, ["0", "s"]).as_mset()
