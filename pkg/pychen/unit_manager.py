import math

import pint

from .diagnostics import say
from .errors import ConfigError

RADIAN = 'radian'


class UnitManager:
    """
    Shared pint registry for tube radii.

    The registry is built once from an angle-unit file; later
    constructions return the same manager, so units defined at runtime are
    seen everywhere.

    :param unit_definition_file: pint definition file; None uses pint's
        default registry.
    """
    _instance = None

    def __new__(cls, unit_definition_file=None):
        if cls._instance is None:
            manager = super().__new__(cls)
            manager._ready = False
            cls._instance = manager
        return cls._instance

    def __init__(self, unit_definition_file=None):
        if self._ready:
            return
        self.ureg = pint.UnitRegistry(unit_definition_file) if unit_definition_file else pint.UnitRegistry()
        self.Q_ = self.ureg.Quantity
        self._ready = True

    def define_unit(self, definition: str):
        """Adds ``definition`` (e.g. ``'sextant = 60 * degree'``) to the registry."""
        self.ureg.define(definition)

    def safe_define(self, definition: str):
        """
        Like ``define_unit``, but a unit that already exists is skipped.

        :raises ConfigError: if pint rejects the definition.
        """
        try:
            self.define_unit(definition)
        except pint.errors.RedefinitionError:
            say('UnitManager', f"already defined, skipped: {definition}")
            return
        except Exception as e:
            if 'already' in str(e):
                say('UnitManager', f"already defined, skipped: {definition}")
                return
            raise ConfigError(f"bad unit definition '{definition}': {e}")
        say('UnitManager', f"defined: {definition}")

    def batch_define(self, definitions: list):
        for definition in definitions:
            self.safe_define(definition)

    def get_quantity(self, value, unit: str = None):
        """``value`` in ``unit``; a bare value when no unit is given."""
        return value * self.ureg(unit) if unit else value

    def force_quantity(self, value, unit=RADIAN):
        """``value`` unchanged if it already carries units, else ``value`` in ``unit``."""
        return value if hasattr(value, 'magnitude') else self.get_quantity(value, unit)

    def to(self, quantity, target_unit: str):
        return quantity.to(target_unit)

    def check_compatibility(self, first, second):
        """True when both quantities have the same dimensionality."""
        return first.dimensionality == second.dimensionality

    def format_quantity(self, quantity):
        if not hasattr(quantity, 'units'):
            return str(quantity)
        return f"{quantity.magnitude} {quantity.units}"

    def parse_angle(self, text):
        """
        Reads a radius in radians from text.

        Plain numbers and dimensionless expressions are radians
        (``'0.5'``, ``'pi/4'``); anything with an angle unit is converted
        (``'45 deg'``, ``'0.125 turn'``).

        :param text: the radius expression.
        :returns: the angle in radians.
        :rtype: float
        :raises ConfigError: if the text is not an angle.
        """
        try:
            value = self.ureg.parse_expression(str(text).strip())
        except Exception as e:
            raise ConfigError(f"cannot read radius '{text}': {e}")
        quantity = self.force_quantity(value)
        if quantity.dimensionless:
            radians = float(quantity.to_base_units().magnitude)
        elif self.check_compatibility(quantity, self.Q_(1.0, RADIAN)):
            radians = float(self.to(quantity, RADIAN).magnitude)
        else:
            raise ConfigError(f"radius '{text}' is not an angle (units: {quantity.units})")
        if not math.isfinite(radians):
            raise ConfigError(f"radius '{text}' is not finite")
        return radians
