"""LED current-limiting resistor sizing."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

DEFAULT_KIT = (10.0, 100.0, 150.0, 220.0, 330.0, 470.0, 1000.0, 2000.0, 4700.0, 10000.0)

# tolerance for treating a computed value as landing exactly on a kit value
_EXACT_REL = 1e-9


class CircuitError(ValueError):
    pass


class NonPositiveDrop(CircuitError):
    pass


class NonPositiveCurrent(CircuitError):
    pass


class NonPositiveResistance(CircuitError):
    pass


class NoSuitableValue(CircuitError):
    pass


@dataclass(frozen=True)
class LedCircuit:
    supply_voltage: float
    forward_voltage: float
    target_current: float | None = None
    resistor: float | None = None

    def __post_init__(self):
        if (self.target_current is None) == (self.resistor is None):
            raise ValueError("give exactly one of target_current or resistor")
        _check_drop(self.supply_voltage, self.forward_voltage)

    @property
    def current(self) -> float:
        if self.target_current is not None:
            return self.target_current
        return led_current(self.supply_voltage, self.forward_voltage, self.resistor)

    @property
    def resistance(self) -> float:
        if self.resistor is not None:
            return self.resistor
        return series_resistor(self.supply_voltage, self.forward_voltage, self.target_current)


def _check_drop(supply: float, forward: float) -> None:
    if supply <= forward:
        raise NonPositiveDrop(f"supply {supply} V does not exceed forward voltage {forward} V")


def series_resistor(supply: float, forward: float, current: float) -> float:
    """Resistance (ohm) that sets ``current`` (A) through an LED."""
    _check_drop(supply, forward)
    if current <= 0:
        raise NonPositiveCurrent(f"current must be positive, got {current}")
    return (supply - forward) / current


def led_current(supply: float, forward: float, resistor: float) -> float:
    if resistor <= 0:
        raise NonPositiveResistance(f"resistance must be positive, got {resistor}")
    _check_drop(supply, forward)
    return (supply - forward) / resistor


def pick_kit_resistor(computed: float, kit: Sequence[float] = DEFAULT_KIT) -> float:
    """Round up to a kit resistor, stepping past an exact match for margin."""
    kit = list(kit)
    if not kit:
        raise ValueError("kit is empty")
    if any(b <= a for a, b in zip(kit, kit[1:])):
        raise ValueError("kit values must be strictly ascending")
    for i, value in enumerate(kit):
        if math.isclose(value, computed, rel_tol=_EXACT_REL):
            # an exact hit on the largest value is kept; it is not undersized
            return kit[i + 1] if i + 1 < len(kit) else value
        if value >= computed:
            return value
    raise NoSuitableValue(f"{computed} ohm exceeds every kit value")
