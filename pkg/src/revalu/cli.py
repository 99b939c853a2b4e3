"""Command-line entry point: ``revalu build|sim|verify|report|stats|invert``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or
structural errors (bad width, unparsable netlist, budget exceeded).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import alu, arith, netlist, simulator
from .errors import BudgetExceeded, StructuralError
from .netlist import CONTROL_NAMES, Circuit, ctrl

BUILDERS = {
    "adder": arith.build_adder,
    "subtractor": arith.build_subtractor,
    "alu": alu.build_alu,
}


class UsageError(Exception):
    pass


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> Circuit:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return netlist.parse_text(text)


def _build(kind: str, n: int | None) -> Circuit:
    if n is None:
        raise UsageError(f"building {kind} needs -n")
    if n < 1:
        raise UsageError(f"width must be at least 1, got {n}")
    return BUILDERS[kind](n)


def cmd_build(args) -> int:
    _write(netlist.emit_text(_build(args.kind, args.n)), args.output)
    return 0


def _parse_assignments(items: list[str]) -> dict[str, int]:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep or not val.isdigit():
            raise UsageError(f"bad assignment {item!r}, expected NAME=<decimal>")
        out[key] = int(val)
    return out


def _bits(value: int, width: int) -> str:
    return format(value, f"0{width}b")


def cmd_sim(args) -> int:
    c = _load(args.path)
    values = _parse_assignments(args.set or [])
    state = 0
    for role in ("A", "B"):
        if role not in values:
            continue
        if not c.has_register(role):
            raise UsageError(f"circuit has no {role} register")
        reg = c.register(role)
        if values[role] >= 1 << reg.width:
            raise UsageError(f"{role}={values[role]} does not fit in {reg.width} bits")
        state = reg.write(state, values.pop(role))
    carry_in = values.pop("c0", values.pop("carry_in", 0))
    if carry_in not in (0, 1):
        raise UsageError("c0 must be 0 or 1")
    if c.has_register("CARRY"):
        state |= carry_in << c.register("CARRY").lo
    if args.controls is not None:
        vec = alu.ControlVector.parse(args.controls)
        for bit, name in zip(vec, CONTROL_NAMES):
            values.setdefault(name, bit)
    for name in CONTROL_NAMES:
        if name in values:
            bit = values.pop(name)
            if c.has_register(ctrl(name)):
                state |= (bit & 1) << c.register(ctrl(name)).lo
    if values:
        raise UsageError(f"unknown assignment(s): {', '.join(sorted(values))}")
    for r in c.ancilla_registers:
        for line in r.lines:
            state |= r.constant << line

    out = simulator.run(c, state).value
    if c.has_register("A"):
        a = c.register("A")
        print(f"A={a.read(out)} bits={_bits(a.read(out), a.width)}")
    if c.has_register("B"):
        b = c.register("B")
        print(f"S={b.read(out)} bits={_bits(b.read(out), b.width)}")
    if c.has_register("CARRY"):
        cr = c.register("CARRY")
        carries = " ".join(f"c{i}={(out >> line) & 1}" for i, line in enumerate(cr.lines))
        print(f"carry={cr.read(out) >> 1} bits={_bits(cr.read(out), cr.width)} {carries}")
    for r in c.ancilla_registers:
        print("anc " + " ".join(f"{c.label(line)}={(out >> line) & 1}" for line in r.lines))
    if not c.registers:
        print(f"state={out} bits={_bits(out, c.line_count)}")
    return 0


def _oracle(c: Circuit) -> simulator.Verdict:
    names = tuple(r.role[5:] for r in c.control_registers)
    if set(names) == set(CONTROL_NAMES):
        return alu.verify_alu(c)
    if names == ("C_SUB",):
        return arith.verify_subtractor(c)
    if names == ():
        return arith.verify_adder(c)
    raise StructuralError(f"no oracle for control set {names}")


def cmd_verify(args) -> int:
    if args.target in BUILDERS:
        c = _build(args.target, args.n)
    else:
        c = _load(args.target)
    mode = args.mode or "bijective"
    try:
        if mode == "bijective":
            verdict = simulator.check_bijective(c, seed=args.seed)
        elif mode == "ancilla":
            verdict = simulator.check_ancilla_clean(c, seed=args.seed)
        else:
            verdict = _oracle(c)
    except KeyError as e:
        raise StructuralError(f"circuit lacks register {e.args[0]}") from None
    print(f"{mode} {verdict}")
    return 0 if verdict else 1


def cmd_report(args) -> int:
    if args.n is None:
        raise UsageError("report needs -n")
    report = alu.conformance_report(args.n)
    _write(report.to_text(), args.output)
    return 0 if report.matches_expected() else 1


def cmd_stats(args) -> int:
    sys.stdout.write(netlist.cost_report(_load(args.path)).to_text())
    return 0


def cmd_invert(args) -> int:
    _write(netlist.emit_text(netlist.inverse(_load(args.path))), args.output)
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="revalu", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="emit a circuit as RNL")
    b.add_argument("kind", choices=sorted(BUILDERS))
    b.add_argument("-n", type=int, required=True)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("sim", help="simulate one input state")
    s.add_argument("path")
    s.add_argument("--set", nargs="+", metavar="NAME=VALUE",
                   help="A=<v> B=<v> c0=<0|1> or a control name such as C_SUB=1")
    s.add_argument("--controls", metavar="BITS",
                   help="five bits: C_carryxor C_snot C_aANDb C_bnot C_SUB")
    s.set_defaults(func=cmd_sim)

    v = sub.add_parser("verify", help="run a reversibility or oracle check")
    v.add_argument("target", help="RNL path or one of: " + ", ".join(sorted(BUILDERS)))
    v.add_argument("-n", type=int)
    v.add_argument("--mode", choices=("bijective", "ancilla", "oracle"))
    for m in ("bijective", "ancilla", "oracle"):
        v.add_argument(f"--{m}", dest="mode", action="store_const", const=m)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="decode-table conformance report for the ALU")
    r.add_argument("-n", type=int, required=True)
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_report)

    st = sub.add_parser("stats", help="gate counts and quantum cost")
    st.add_argument("path")
    st.set_defaults(func=cmd_stats)

    i = sub.add_parser("invert", help="emit the inverse circuit")
    i.add_argument("path")
    i.add_argument("-o", "--output")
    i.set_defaults(func=cmd_invert)
    return p


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, StructuralError, BudgetExceeded, ValueError, OSError) as e:
        print(f"revalu: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
