"""Sizing the delivery LED's series resistor from a small kit."""

from tapebot import led_current, pick_kit_resistor, series_resistor
from tapebot.electrical import DEFAULT_KIT

r = series_resistor(5.0, 2.0, 0.020)
print(f"5 V supply, 2 V LED, 20 mA -> {r:g} ohm")
# an exact hit steps up one value for margin
print("kit choice:", pick_kit_resistor(r), "ohm")
print(f"with 220 ohm the LED draws {led_current(5.0, 2.0, 220) * 1000:.1f} mA")
print(f"with 2 kohm it draws {led_current(5.0, 2.0, 2000) * 1000:.1f} mA")

for ma in (5, 10, 15, 25, 30):
    r = series_resistor(5.0, 2.0, ma / 1000)
    print(f"{ma:>3} mA: computed {r:7.1f}, kit {pick_kit_resistor(r, DEFAULT_KIT):g}")
