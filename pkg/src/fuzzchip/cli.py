"""Command-line driver.

Exit codes: 0 success, 1 usage error, 2 input-data error (bad files,
unresolvable rules, arity), 3 capacity or target violation.
"""

from __future__ import annotations

import argparse
import socket
import sys
from pathlib import Path

from fuzzchip.codegen import (
    CapacityError,
    TargetError,
    emit_table,
    emit_table_binary,
    gen_table,
    write_rule_image,
)
from fuzzchip.core import (
    DictionaryError,
    FuzzyDictionary,
    load_dictionary,
    make_normal,
    make_triangle,
    upsert_definition,
    NAME_RE,
)
from fuzzchip.engine import ChipType, assert_input, create_chip
from fuzzchip.network import NetworkError
from fuzzchip.rules import RuleError, normalize, parse, resolve

_CHIP_TYPES = {
    "minmax": ChipType.MINMAX,
    "mult": ChipType.MULTIPLICATIVE,
    "multiplicative": ChipType.MULTIPLICATIVE,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fail(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _chip_name(rulefile: str) -> str:
    stem = Path(rulefile).stem
    return stem.upper() if NAME_RE.match(stem) else "CHIP"


def _build_chip(rulefile: str, dictfile: str, type_name: str):
    dictionary = load_dictionary(dictfile)
    text = Path(rulefile).read_text(encoding="utf-8")
    ruleset = parse(text, source=Path(rulefile).name)
    normalized = normalize(ruleset)
    compiled = resolve(normalized, dictionary)
    chip = create_chip(_chip_name(rulefile), _CHIP_TYPES[type_name], compiled)
    return chip, ruleset, normalized


def _format_value(v) -> str:
    return "NO-ACTIVATION" if v is None else repr(float(v))


def cmd_check(args) -> int:
    chip, ruleset, normalized = _build_chip(args.rulefile, args.dictfile, args.type)
    print(
        f"{Path(args.rulefile).name}: "
        f"{len(normalized.inputs)} inputs, {len(normalized.outputs)} outputs"
    )
    print(f"{len(ruleset.rules)} rules ({len(normalized.rules)} after normalization)")
    for i, rule in enumerate(normalized.rules, start=1):
        by_signal = {c.signal: str(c) for c in rule.disjuncts[0]}
        ins = " AND ".join(
            by_signal.get(d.name, f"{d.name} IS ANY") for d in normalized.inputs
        )
        by_signal = {c.signal: str(c) for c in rule.consequent}
        outs = " AND ".join(
            by_signal.get(d.name, f"{d.name} IS NULL") for d in normalized.outputs
        )
        print(f"rule {i}: IF {ins} THEN {outs}")
    return 0


def _read_batch(path: str) -> list[list[float]]:
    vectors = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            vectors.append([float(f) for f in line.split(",")])
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return vectors


def cmd_simulate(args) -> int:
    if (args.input is None) == (args.batch is None):
        raise _UsageError("exactly one of --input or --batch is required")
    chip, _, _ = _build_chip(args.rulefile, args.dictfile, args.type)
    if args.input is not None:
        vectors = [[float(f) for f in args.input.split(",")]]
    else:
        vectors = _read_batch(args.batch)
    for xs in vectors:
        result = assert_input(chip, xs)
        print(" ".join(_format_value(v) for v in result.outputs))
        if args.show_alpha:
            print("  alpha: " + " ".join(repr(float(a)) for a in result.activations))
        if args.show_membership:
            for o, vec in enumerate(result.memberships):
                rendered = " ".join(
                    str(v) if isinstance(v, int) else repr(float(v)) for v in vec
                )
                print(f"  membership[{o}]: {rendered}")
    return 0


def cmd_compile(args) -> int:
    chip, _, _ = _build_chip(args.rulefile, args.dictfile, args.type)
    base = args.out or str(Path(args.rulefile).with_suffix(""))
    if base.endswith((".fzc", ".tbl", ".bin")):
        base = base[:-4]
    if args.target == "inference-chip":
        image = write_rule_image(chip)
        path = Path(base + ".fzc")
        path.write_bytes(image)
        print(f"wrote {path} ({len(image)} bytes)")
        return 0
    table = gen_table(chip, args.bytesize)
    path = Path(base + ".tbl")
    path.write_text(emit_table(table), encoding="utf-8")
    print(f"wrote {path} ({table.addresses} rows)")
    print(f"NO-ACTIVATION addresses: {len(table.no_activation)}")
    if args.bytesize >= 1:
        blob = emit_table_binary(table)
        bin_path = Path(base + ".bin")
        bin_path.write_bytes(blob)
        print(f"wrote {bin_path} ({len(blob)} bytes)")
    return 0


def _load_defs_dict(path: str) -> FuzzyDictionary:
    if not Path(path).exists():
        raise DictionaryError(f"dictionary file {path} not found")
    return load_dictionary(path)


def cmd_defs(args) -> int:
    if args.defs_command == "list":
        for name in _load_defs_dict(args.dict).names():
            print(name)
        return 0
    if args.defs_command == "show":
        d = _load_defs_dict(args.dict)
        try:
            mf = d.get(args.name)
        except KeyError:
            raise DictionaryError(f"no definition named {args.name}") from None
        print(args.name.upper())
        for i, v in enumerate(mf.levels):
            print(f"{i:3d} | {'#' * v:<15} {v:2d}")
        return 0
    generator = make_normal if args.defs_command == "make-normal" else make_triangle
    mf = generator(args.center, args.tail)
    upsert_definition(args.dict, args.name, mf)
    print(f"{args.name.upper()} = ({' '.join(str(v) for v in mf.levels)})")
    return 0


def cmd_serve(args) -> int:
    probe = socket.socket()
    try:
        probe.bind((args.host, args.port))
    except OSError:
        _fail(f"port {args.port} is already in use")
        return 1
    finally:
        probe.close()

    import uvicorn

    from fuzzchip.service import WorkbenchSession, create_app

    session = WorkbenchSession(args.dict, rules_dir=args.rules)
    app = create_app(session, static_dir=args.static)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except KeyboardInterrupt:  # pragma: no cover - interactive path
        pass
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="fuzzchip", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="parse, normalize, and resolve a rule file")
    check.add_argument("rulefile")
    check.add_argument("dictfile")
    check.add_argument("--type", choices=sorted(_CHIP_TYPES), default="minmax")
    check.set_defaults(func=cmd_check)

    simulate = sub.add_parser("simulate", help="assert inputs against a chip")
    simulate.add_argument("rulefile")
    simulate.add_argument("dictfile")
    simulate.add_argument("--type", choices=sorted(_CHIP_TYPES), default="minmax")
    simulate.add_argument("--input", help="comma-separated input vector")
    simulate.add_argument("--batch", help="CSV file, one input vector per line")
    simulate.add_argument("--show-membership", action="store_true")
    simulate.add_argument("--show-alpha", action="store_true")
    simulate.set_defaults(func=cmd_simulate)

    compile_ = sub.add_parser("compile", help="emit a hardware artifact")
    compile_.add_argument("rulefile")
    compile_.add_argument("dictfile")
    compile_.add_argument("--type", choices=sorted(_CHIP_TYPES), default="minmax")
    compile_.add_argument(
        "--target", choices=["inference-chip", "memory-chip"], required=True
    )
    compile_.add_argument("--bytesize", type=int, default=0)
    compile_.add_argument("--out", help="output path base (extension added)")
    compile_.set_defaults(func=cmd_compile)

    defs = sub.add_parser("defs", help="manage the definition dictionary")
    defs_sub = defs.add_subparsers(dest="defs_command", required=True)
    defs_list = defs_sub.add_parser("list")
    defs_list.add_argument("--dict", required=True)
    defs_show = defs_sub.add_parser("show")
    defs_show.add_argument("name")
    defs_show.add_argument("--dict", required=True)
    for verb in ("make-normal", "make-triangle"):
        maker = defs_sub.add_parser(verb)
        maker.add_argument("--dict", required=True)
        maker.add_argument("--name", required=True)
        maker.add_argument("--center", type=int, required=True)
        maker.add_argument("--tail", type=int, required=True)
    defs.set_defaults(func=cmd_defs)

    serve = sub.add_parser("serve", help="run the workbench HTTP service")
    serve.add_argument("--dict", required=True)
    serve.add_argument("--rules", help="directory of rule files to preload as chips")
    serve.add_argument("--static", help="directory of web UI files to serve at /")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8040)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        _fail(str(exc))
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        _fail(str(exc))
        return 1
    except (CapacityError, TargetError) as exc:
        _fail(str(exc))
        return 3
    except (RuleError, DictionaryError, NetworkError) as exc:
        _fail(str(exc))
        return 2
    except (ValueError, OSError, KeyError) as exc:
        _fail(str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
