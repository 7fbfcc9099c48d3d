"""The shared angle-unit manager, loaded from ``angle_units.txt``."""

from pathlib import Path

from .unit_manager import UnitManager

ANGLE_UNIT_FILE = Path(__file__).with_name('angle_units.txt')

units = UnitManager(str(ANGLE_UNIT_FILE))
