import math

import pytest

from pychen.errors import ConfigError
from pychen.unit_manager import UnitManager
from pychen.units import units


@pytest.mark.parametrize('text, expected', [
    ('0.5', 0.5),
    ('pi/4', math.pi / 4),
    ('45 deg', math.pi / 4),
    ('0.125 turn', math.pi / 4),
    ('50 gradian', math.pi / 4),
    ('0.7853981633974483 rad', math.pi / 4),
])
def test_parse_angle(text, expected):
    assert units.parse_angle(text) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize('text', ['abc', '3 furlong', '2 +'])
def test_parse_angle_rejects_non_angles(text):
    with pytest.raises(ConfigError):
        units.parse_angle(text)


def test_manager_is_a_singleton():
    assert UnitManager() is units


def test_runtime_units():
    units.safe_define('sextant = 60 * degree')
    units.safe_define('sextant = 60 * degree')
    assert units.parse_angle('1 sextant') == pytest.approx(math.pi / 3)
    angle = units.get_quantity(90, 'degree')
    assert units.to(angle, 'radian').magnitude == pytest.approx(math.pi / 2)
    assert units.check_compatibility(angle, units.force_quantity(1.0, 'turn'))
    assert units.format_quantity(units.get_quantity(2, 'degree')) == '2 degree'
