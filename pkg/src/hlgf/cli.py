"""Command-line surface.

Every command writes a single JSON payload to stdout and human diagnostics
to stderr.  Exit codes: 0 success, 1 usage, 2 validation failure (the
report still goes to stdout), 3 numeric lift-tracking guard.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import charge as charge_mod
from . import continuum, field, globes
from . import gauge_group as gg
from .complexes import (BUILTIN_EQUATORS, BUILTIN_NAMES, ComplexError,
                        build_builtin, from_json_dict, validate)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _load_complex(spec: str):
    if spec in BUILTIN_NAMES:
        return build_builtin(spec)
    with open(spec) as fh:
        return from_json_dict(json.load(fh))


def _load_field(path: str) -> field.HLGF:
    with open(path) as fh:
        return field.field_from_json_dict(json.load(fh))


def _cmd_build(args) -> int:
    c = build_builtin(args.name)
    report = validate(c)
    if not report.ok():
        _emit(report.to_json())
        return EXIT_VALIDATION
    _emit(c.to_json_dict())
    return EXIT_OK


def _cmd_cutoff(args) -> int:
    oracle = continuum.oracle_by_name(args.oracle)
    c = _load_complex(args.complex)
    f = continuum.cutoff(oracle, c, resolution=args.resolution)
    _emit(field.field_to_json_dict(f))
    return EXIT_OK


def _cmd_charge(args) -> int:
    f = _load_field(args.field)
    if args.route == "covering":
        result = charge_mod.topological_charge(f)
    elif args.route == "facesum":
        result = charge_mod.charge_face_sum(f)
    else:
        if args.equator:
            cycle = tuple(int(v) for v in args.equator.split(","))
        else:
            cycle = BUILTIN_EQUATORS.get(f.complex.name)
            if cycle is None:
                print("no default equator for this complex; pass --equator",
                      file=sys.stderr)
                return EXIT_USAGE
        result = charge_mod.transition_winding(f, cycle)
    _emit(result.to_json())
    return EXIT_OK


def _cmd_check(args) -> int:
    f = _load_field(args.field)
    report = field.check_consistency(f)
    _emit(report.to_json())
    return EXIT_OK if report.ok() else EXIT_VALIDATION


def _cmd_gauge(args) -> int:
    f = _load_field(args.field)
    with open(args.assignment) as fh:
        data = json.load(fh)
    values = {int(v): field._element_from_json(f.backend, e)
              for v, e in data["vertices"].items()}
    out = field.gauge_transform(f, values)
    _emit(field.field_to_json_dict(out))
    return EXIT_OK


def _cmd_eval(args) -> int:
    f = _load_field(args.field)
    w = globes.parse_word(args.expr, f.complex)
    value = field.evaluate(f, w)
    if isinstance(value, gg.GroupElement):
        _emit({"kind": "element", "value": field._element_to_json(value)})
    else:
        _emit({"kind": "loop", "value": field._loop_to_json(value)})
    return EXIT_OK


def _cmd_randomize(args) -> int:
    c = _load_complex(args.complex)
    f = field.random_field(c, args.group, args.seed)
    _emit(field.field_to_json_dict(f))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hlgf",
        description="homotopy lattice gauge fields: build complexes, cut "
                    "off continuum connections, and compute charges")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="emit a built-in complex as JSON")
    b.add_argument("name", choices=BUILTIN_NAMES)
    b.set_defaults(fn=_cmd_build)

    co = sub.add_parser("cutoff", help="project a continuum connection")
    co.add_argument("--oracle", required=True,
                    help="round-sphere, monopole:<n>, or trivial")
    co.add_argument("--complex", required=True,
                    help="builtin name or complex file")
    co.add_argument("--resolution", "-r", type=int, default=256)
    co.set_defaults(fn=_cmd_cutoff)

    ch = sub.add_parser("charge", help="topological charge of a field")
    ch.add_argument("field")
    ch.add_argument("--route", choices=("covering", "facesum", "transition"),
                    default="covering")
    ch.add_argument("--equator", help="comma-separated vertex cycle")
    ch.set_defaults(fn=_cmd_charge)

    ck = sub.add_parser("check", help="run the consistency conditions")
    ck.add_argument("field")
    ck.set_defaults(fn=_cmd_check)

    ga = sub.add_parser("gauge", help="apply a gauge transformation")
    ga.add_argument("field")
    ga.add_argument("--assignment", required=True,
                    help='JSON file {"vertices": {"1": <element>, ...}}')
    ga.set_defaults(fn=_cmd_gauge)

    ev = sub.add_parser("eval", help="evaluate a globe expression")
    ev.add_argument("field")
    ev.add_argument("--expr", required=True)
    ev.set_defaults(fn=_cmd_eval)

    ra = sub.add_parser("randomize", help="draw a seeded random field")
    ra.add_argument("--seed", type=int, required=True)
    ra.add_argument("--complex", required=True)
    ra.add_argument("--group", choices=gg.BACKENDS, default="U1")
    ra.set_defaults(fn=_cmd_randomize)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except continuum.LiftAmbiguityError as exc:
        print(f"lift tracking failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (field.FieldError, charge_mod.ChargeError, ComplexError,
            globes.WordError, gg.BackendMismatchError,
            gg.EndpointMismatchError, gg.WindingError,
            continuum.OracleError) as exc:
        if isinstance(exc, charge_mod.InconsistentFieldError):
            _emit(exc.report.to_json())
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
