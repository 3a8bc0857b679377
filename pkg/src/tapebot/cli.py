"""``tapebot`` command line.

Exit status: 0 when every scenario assertion passes, 1 when one fails,
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import itertools
import sys

from .actuators import HBridgeInputs, Level, channel_mode
from .electrical import DEFAULT_KIT, CircuitError, pick_kit_resistor, series_resistor
from .ir_codec import REPEAT, NecDecodeError, PulseTrain, decode_nec, encode_nec, format_code
from .scenario_file import load_scenario
from .sim_engine import ScenarioError, run_scenario, write_trace

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tapebot", description="Line-tracking delivery robot simulator.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser("simulate", help="run a scenario and check its assertions")
    sim.add_argument("scenario")
    sim.add_argument("--trace", help="write the control-boundary trace here")
    sim.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    sim.add_argument("--max-time", type=float)
    sim.add_argument("--override", action="append", default=[], metavar="KEY=VALUE",
                     help="dotted scenario key, e.g. control.speed=120 (repeatable)")

    val = sub.add_parser("validate", help="parse a scenario without running it")
    val.add_argument("scenario")
    val.add_argument("--override", action="append", default=[], metavar="KEY=VALUE")

    sub.add_parser("truth-table", help="print the H-bridge mode for all 16 input rows")

    ir = sub.add_parser("ir", help="NEC pulse-train encode/decode")
    ir_sub = ir.add_subparsers(dest="ir_command", required=True, parser_class=_Parser)
    enc = ir_sub.add_parser("encode")
    enc.add_argument("code", help="hex code, e.g. 0x00FF6897")
    ir_sub.add_parser("decode", help="read a pulse train from stdin")

    res = sub.add_parser("resistor", help="LED series resistor and kit choice")
    res.add_argument("supply", type=float, help="V")
    res.add_argument("forward", type=float, help="LED forward voltage, V")
    res.add_argument("current_ma", type=float, help="target current, mA")
    res.add_argument("--kit", type=float, nargs="+", default=list(DEFAULT_KIT), metavar="OHM")
    return p


def _overrides(args) -> list[str]:
    extra = [f"max_time={args.max_time}"] if getattr(args, "max_time", None) is not None else []
    return list(args.override) + extra


def _simulate(args) -> int:
    scenario = load_scenario(args.scenario, _overrides(args))
    result = run_scenario(scenario)
    if args.trace:
        write_trace(result.trace, args.trace, args.format)
    for o in result.assertion_outcomes:
        print(f"{'PASS' if o.passed else 'FAIL'}  {type(o.assertion).__name__}: {o.detail}")
    p = result.final_pose
    print(f"final pose x={p.x:.4f} y={p.y:.4f} heading={p.heading:.4f}; "
          f"deliveries={len(result.deliveries)}")
    return EXIT_OK if result.passed else EXIT_FAIL


def _validate(args) -> int:
    s = load_scenario(args.scenario, _overrides(args))
    print(f"ok: {s.track.width_cells}x{s.track.height_cells} track, "
          f"{len(s.ir_events)} ir events, {len(s.assertions)} assertions")
    return EXIT_OK


def _truth_table(_args) -> int:
    print("IN1 IN2 PWM STBY  MODE")
    for in1, in2, duty, stby in itertools.product((Level.H, Level.L), (Level.H, Level.L),
                                                  (255, 0), (Level.H, Level.L)):
        mode = channel_mode(HBridgeInputs(in1, in2, duty, stby))
        pwm = "H" if duty else "L"
        print(f"{in1.name:<3} {in2.name:<3} {pwm:<3} {stby.name:<4}  {mode.value}")
    return EXIT_OK


def _ir(args) -> int:
    if args.ir_command == "encode":
        try:
            code = int(args.code, 16)
            print(encode_nec(code).to_text())
        except ValueError as exc:
            print(f"tapebot ir encode: {exc}", file=sys.stderr)
            return EXIT_INPUT
        return EXIT_OK
    try:
        result = decode_nec(PulseTrain.from_text(sys.stdin.read()))
    except (NecDecodeError, ValueError) as exc:
        print(f"tapebot ir decode: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print("REPEAT" if result is REPEAT else format_code(result))
    return EXIT_OK


def _resistor(args) -> int:
    try:
        ohms = series_resistor(args.supply, args.forward, args.current_ma / 1000)
        kit = pick_kit_resistor(ohms, args.kit)
    except (CircuitError, ValueError) as exc:
        print(f"tapebot resistor: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"computed: {ohms:g} ohm")
    print(f"kit choice: {kit:g} ohm")
    return EXIT_OK


_COMMANDS = {"simulate": _simulate, "validate": _validate, "truth-table": _truth_table,
             "ir": _ir, "resistor": _resistor}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ScenarioError, OSError) as exc:
        print(f"tapebot {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
