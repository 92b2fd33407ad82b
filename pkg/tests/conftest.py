from __future__ import annotations

import pytest

from latbool.exact_core import Pt, Region, Ring
from latbool.fixtures import hand_fixture_pairs


def square(x0: int, y0: int, x1: int, y1: int) -> Ring:
    return Ring((Pt(x0, y0), Pt(x1, y0), Pt(x1, y1), Pt(x0, y1)))


@pytest.fixture(scope="session")
def hand_pairs():
    return hand_fixture_pairs()


@pytest.fixture()
def unit_square() -> Region:
    return Region((square(0, 0, 1, 1),))


@pytest.fixture()
def e2_pair() -> tuple[Region, Region]:
    a = Region((Ring((Pt(0, 0), Pt(5, 0), Pt(0, 5))),)).canonical()
    b = Region((Ring((Pt(0, 0), Pt(5, 0), Pt(5, 5))),)).canonical()
    return a, b
