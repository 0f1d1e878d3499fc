"""Command-line interface: ``hermq2 <command> ...``.

Exit codes: 0 affirmative, 1 negative finding (with witness), 2 usage or
data error.  Reports go to stdout as JSON, a one-line summary to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import criteria, hermitian
from .hermitian import (
    FIXTURE_ENV,
    GENERATOR_NAMES,
    GeneratorError,
    TableError,
    ValidationError,
    construct_one_form,
    dumps_table,
    generator_set,
    load_generator_table,
    read_table,
    table_path,
    write_table,
)
from .lattice import field_from_name
from .linalg import LinAlgError
from .qexp import Kind, SeriesError, restrict
from .reports import REPORT_SCHEMA
from .ringstruct import DecompositionError, decompose
from .siegel import siegel_generators


class UsageError(Exception):
    pass


def _emit(obj: dict, summary: str) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")
    sys.stderr.write(summary + "\n")


def _field(name: str):
    try:
        return field_from_name(name)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _source(args) -> str:
    d = args.fixtures if args.fixtures is not None else hermitian.default_fixture_dir()
    return "compute" if d is None else str(d)


def _load_hermitian(path: str):
    header, f = read_table(path)
    if f.kind is not Kind.HERMITIAN:
        raise UsageError(f"{path}: a Hermitian table is required")
    return header, f


def _report(rep, label: str) -> int:
    _emit(rep.to_json(), f"{label}: {rep.verdict.value}"
          + (f" witness={tuple(rep.witness)}" if rep.witness is not None else ""))
    return 0 if rep.affirmative else 1


# --- commands --------------------------------------------------------------------

def cmd_gen(args) -> int:
    field = _field(args.field)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    gens = generator_set(field, args.trace, _source(args))
    files = []
    for name, s in zip(gens.names, gens.series):
        p = table_path(out, field, name)
        write_table(p, s, name)
        files.append(str(p))
    sg = siegel_generators(max(args.trace, 2))
    for name, s in zip(sg.names, sg.series):
        p = out / f"siegel_{name}.jsonl"
        write_table(p, s.truncate(args.trace) if args.trace >= 2 else s, name)
        files.append(str(p))
    _emit({"schema": REPORT_SCHEMA, "check": "gen", "field": field.name, "trunc": args.trace, "files": files},
          f"gen: wrote {len(files)} tables to {out}")
    return 0


def cmd_restrict(args) -> int:
    header, f = _load_hermitian(args.inp)
    g = restrict(f)
    name = f"{header['name']}|S2"
    write_table(args.out, g, name)
    _emit({"schema": REPORT_SCHEMA, "check": "restrict", "name": name, "trunc": g.trunc, "out": args.out,
           "nonzero": sum(1 for _ in g.items())}, f"restrict: wrote {args.out}")
    return 0


def cmd_check_sturm(args) -> int:
    _, f = _load_hermitian(args.inp)
    rep = criteria.check_sturm_zero(f, args.prime, n_le_m=not args.full_box)
    return _report(rep, "check-sturm")


def cmd_check_integrality(args) -> int:
    _, f = _load_hermitian(args.inp)
    rep = criteria.check_integrality(f, args.prime, mode=args.mode, n_le_m=not args.full_box)
    return _report(rep, "check-integrality")


def cmd_padic_weight(args) -> int:
    _, f = read_table(args.f)
    _, g = read_table(args.g)
    rep = criteria.padic_weight_check(f, g, args.prime, args.level)
    return _report(rep, "padic-weight")


def cmd_decompose(args) -> int:
    header, f = _load_hermitian(args.inp)
    field = _field(args.field)
    if f.field != field:
        raise UsageError(f"table is over {f.field.name}, not {field.name}")
    gens = generator_set(field, f.trunc, _source(args))
    try:
        P = decompose(f, gens)
    except DecompositionError as e:
        _emit({"schema": REPORT_SCHEMA, "check": "decompose", "verdict": "NOT_IN_RING", "error": str(e)},
              f"decompose: {e}")
        return 1
    _emit({"schema": REPORT_SCHEMA, "check": "decompose", "verdict": "DECOMPOSED", "field": field.name,
           "generators": list(gens.names), "weights": list(gens.weights), "weight": f.weight,
           "polynomial": P.to_json()}, f"decompose: {len(P.terms)} monomials")
    return 0


def cmd_one_form(args) -> int:
    field = _field(args.field)
    gens = generator_set(field, args.trace, _source(args))
    F = construct_one_form(field, args.prime, args.trace, gens)
    name = f"F{args.prime - 1}"
    if args.out:
        write_table(args.out, F, name)
        _emit({"schema": REPORT_SCHEMA, "check": "one-form", "verdict": "CONSTRUCTED", "p": args.prime,
               "field": field.name, "weight": F.weight, "trunc": F.trunc, "out": args.out},
              f"one-form: wrote {args.out}")
    else:
        sys.stdout.write(dumps_table(F, name))
        sys.stderr.write(f"one-form: {name} over {field.name}, = 1 mod {args.prime}\n")
    return 0


def cmd_validate(args) -> int:
    header, f = read_table(args.inp)
    if f.kind is not Kind.HERMITIAN:
        raise UsageError("validate needs a Hermitian generator table")
    name = header["name"]
    if name not in GENERATOR_NAMES[f.field.tag]:
        raise UsageError(f"{name!r} is not a generator name over {f.field.name}")
    try:
        load_generator_table(args.inp)
    except ValidationError as e:
        w = list(e.witness) if e.witness is not None else None
        _emit({"schema": REPORT_SCHEMA, "check": "validate", "verdict": "INVALID", "name": name,
               "identity": e.identity, "witness": w}, f"validate: {e}")
        return 1
    _emit({"schema": REPORT_SCHEMA, "check": "validate", "verdict": "VALID", "name": name, "field": f.field.name,
           "trunc": f.trunc}, f"validate: {name} passes")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hermq2", description="Fourier expansions and congruence checks for "
                                 "degree-2 Hermitian modular forms over Q(i) and Q(sqrt-3).")
    ap.add_argument("--fixtures", default=None,
                    help=f"generator table directory (default: ${FIXTURE_ENV}; unset means compute)")
    sub = ap.add_subparsers(dest="command", required=True)
    fields = ["gauss", "eisenstein"]

    p = sub.add_parser("gen", help="write validated generator tables")
    p.add_argument("--field", required=True, choices=fields)
    p.add_argument("--trace", required=True, type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("restrict", help="restrict a Hermitian table to the Siegel half-space")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("check-sturm", help="Sturm-box test mod p")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--prime", required=True, type=int)
    p.add_argument("--full-box", action="store_true", help="do not restrict the box to n <= m")
    p.set_defaults(func=cmd_check_sturm)

    p = sub.add_parser("check-integrality", help="box test for p-integrality or vanishing")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--prime", required=True, type=int)
    p.add_argument("--mode", choices=["p-integral", "zero"], default="p-integral")
    p.add_argument("--full-box", action="store_true")
    p.set_defaults(func=cmd_check_integrality)

    p = sub.add_parser("padic-weight", help="weight congruence from f = g mod p^l")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--prime", required=True, type=int)
    p.add_argument("--level", required=True, type=int)
    p.set_defaults(func=cmd_padic_weight)

    p = sub.add_parser("decompose", help="express a table as a polynomial in the generators")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--field", required=True, choices=fields)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("one-form", help="a weight p-1 form = 1 mod p")
    p.add_argument("--prime", required=True, type=int)
    p.add_argument("--field", required=True, choices=fields)
    p.add_argument("--trace", type=int, default=6)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_one_form)

    p = sub.add_parser("validate", help="run the generator validation contract on a table")
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, TableError, GeneratorError, SeriesError, LinAlgError, ValueError, OSError) as e:
        _emit({"schema": REPORT_SCHEMA, "check": args.command, "verdict": "ERROR", "error": str(e)},
              f"{args.command}: error: {e}")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
